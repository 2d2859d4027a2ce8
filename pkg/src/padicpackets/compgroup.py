"""Component groups of discrete parameters and their characters.

For a Jordan set J the centralizer of the parameter is (Z/2)^J.  The
component group is

* Sp series:  the subgroup of subsets of even total dimension
  (determinant-one elements in the full orthogonal group);
* SO series:  the quotient of (Z/2)^J by the full product, whose characters
  are the sign functions on J with product +1.

Characters are represented by a sign function J -> {+1, -1}.  For the SO
series the function is the character; for the Sp series it is a coset
representative: two functions give the same character exactly when they
differ by the dimension-parity functional, and a canonical representative is
fixed below.  Only the even-dimensional elements named by the theory (a
length-two block, or a same-line pair) are ever evaluated by callers; those
values do not depend on the representative.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping, Optional, Sequence

from .core import (
    FamilyKind,
    GroupFamily,
    InvalidJordanSet,
    JordanBlock,
    JordanSet,
    a_minus,
    has_gaps,
    require_valid,
)


class MembershipError(ValueError):
    """Evaluation requested at an element outside the component group."""


Element = tuple[JordanBlock, ...]


def _norm_element(jord: JordanSet, blocks: Iterable[JordanBlock]) -> Element:
    chosen = tuple(sorted(set(blocks), key=lambda b: b.sort_key))
    for b in chosen:
        if b not in jord:
            raise MembershipError(f"{b} is not a block of the Jordan set")
    return chosen


@dataclass(frozen=True)
class ComponentGroup:
    family: GroupFamily
    jord: JordanSet
    basis: tuple[Element, ...]

    @property
    def order(self) -> int:
        return 2 ** len(self.basis)

    def is_member(self, blocks: Iterable[JordanBlock]) -> bool:
        """Membership of a subset of J in the component group.

        For SO every subset represents an element of the quotient; for Sp the
        subset must have even total dimension.
        """
        element = _norm_element(self.jord, blocks)
        if self.family.kind is FamilyKind.SO_ODD:
            return True
        return sum(b.dim for b in element) % 2 == 0

    def describe_basis(self) -> list[str]:
        return ["*".join(str(b) for b in e) if e else "1" for e in self.basis]


def _canonical_basis(family: GroupFamily, jord: JordanSet) -> tuple[Element, ...]:
    blocks = jord.blocks
    if family.kind is FamilyKind.SO_ODD:
        # quotient by the full product: singletons of all blocks but the last
        return tuple((b,) for b in blocks[:-1])
    odd = [b for b in blocks if b.dim % 2 == 1]
    even = [b for b in blocks if b.dim % 2 == 0]
    pairs: list[Element] = [(a, b) for a, b in zip(odd, odd[1:])]
    return tuple(pairs) + tuple((b,) for b in even)


def component_group(fam: GroupFamily, jord: JordanSet) -> ComponentGroup:
    """The component group of a valid Jordan set, with its canonical basis.

    The basis is deterministic in the block order (sorted by line id, then
    length): consecutive pairs of odd-dimensional blocks followed by
    singletons of even-dimensional blocks for Sp; singletons of all blocks
    but the last for SO.
    """
    require_valid(fam, jord)
    return ComponentGroup(fam, jord, _canonical_basis(fam, jord))


# ---------------------------------------------------------------------------
# characters


def _normalization_block(jord: JordanSet) -> Optional[JordanBlock]:
    """The Sp coset is pinned by forcing +1 at this block: the lowest block
    of the trivial-character line when that line carries odd-dimensional
    blocks, else the first odd-dimensional block."""
    odd = [b for b in jord if b.dim % 2 == 1]
    if not odd:
        return None
    trivial_line = [b for b in odd if b.rho.is_trivial_character]
    if trivial_line:
        return min(trivial_line, key=lambda b: b.m)
    return odd[0]


def canonical_signs(
    family_kind: FamilyKind, jord: JordanSet, signs: Mapping[JordanBlock, int]
) -> dict[JordanBlock, int]:
    """Canonical representative of the character given by a sign function."""
    out = {b: signs[b] for b in jord}
    if any(v not in (1, -1) for v in out.values()):
        raise ValueError("signs must be +1 or -1")
    if family_kind is FamilyKind.SO_ODD:
        prod = 1
        for v in out.values():
            prod *= v
        if prod != 1:
            raise ValueError("SO sign functions must have product +1")
        return out
    norm = _normalization_block(jord)
    if norm is not None and out[norm] == -1:
        # multiply by the dimension-parity functional
        out = {b: (v if b.dim % 2 == 0 else -v) for b, v in out.items()}
    return out


@dataclass(frozen=True)
class ComponentCharacter:
    group: ComponentGroup
    signs: tuple[int, ...]  # canonical, indexed like group.jord.blocks

    def sign(self, block: JordanBlock) -> int:
        """Value of the stored representative at a single block.  This is a
        representative-dependent convention for Sp on odd-dimensional blocks;
        use evaluate() for honest component-group elements."""
        try:
            i = self.group.jord.blocks.index(block)
        except ValueError:
            raise MembershipError(f"{block} is not a block of the Jordan set")
        return self.signs[i]

    def evaluate(self, blocks: Iterable[JordanBlock]) -> int:
        """Evaluate the character at an element of the component group."""
        element = _norm_element(self.group.jord, blocks)
        if not self.group.is_member(element):
            raise MembershipError(
                "not a component-group element: {"
                + ", ".join(map(str, element))
                + "} has odd total dimension"
            )
        v = 1
        for b in element:
            v *= self.sign(b)
        return v

    @property
    def values_on_basis(self) -> tuple[int, ...]:
        return tuple(self.evaluate(e) for e in self.group.basis)

    @property
    def name(self) -> str:
        return "phi[" + "".join("+" if v == 1 else "-" for v in self.values_on_basis) + "]"

    def sign_map(self) -> dict[JordanBlock, int]:
        return dict(zip(self.group.jord.blocks, self.signs))

    def __str__(self) -> str:
        return self.name


def character_from_signs(
    group: ComponentGroup, signs: Mapping[JordanBlock, int]
) -> ComponentCharacter:
    canon = canonical_signs(group.family.kind, group.jord, signs)
    return ComponentCharacter(group, tuple(canon[b] for b in group.jord.blocks))


def character_from_basis_values(
    group: ComponentGroup, values: Sequence[int]
) -> ComponentCharacter:
    """The character taking the given +-1 values on the canonical basis."""
    if len(values) != len(group.basis):
        raise ValueError("one value per basis element expected")
    if any(v not in (1, -1) for v in values):
        raise ValueError("values must be +1 or -1")
    blocks = group.jord.blocks
    signs: dict[JordanBlock, int] = {}
    if group.family.kind is FamilyKind.SO_ODD:
        prod = 1
        for b, v in zip(blocks[:-1], values):
            signs[b] = v
            prod *= v
        if blocks:
            signs[blocks[-1]] = prod
    else:
        odd = [b for b in blocks if b.dim % 2 == 1]
        npairs = max(len(odd) - 1, 0)
        if odd:
            signs[odd[0]] = 1
            for i in range(npairs):
                signs[odd[i + 1]] = signs[odd[i]] * values[i]
        even = [b for b in blocks if b.dim % 2 == 0]
        for b, v in zip(even, values[npairs:]):
            signs[b] = v
    return character_from_signs(group, signs)


def characters(group: ComponentGroup) -> list[ComponentCharacter]:
    """All characters, in the deterministic order given by running through
    +-1 vectors on the canonical basis with + before -."""
    out = []
    for vec in product((1, -1), repeat=len(group.basis)):
        out.append(character_from_basis_values(group, vec))
    return out


def character_from_element_values(
    group: ComponentGroup,
    elements: Sequence[Iterable[JordanBlock]],
    values: Sequence[int],
) -> ComponentCharacter:
    """Solve for the unique character taking prescribed values on the given
    component-group elements (a GF(2) linear system over the blocks).

    Example fixtures pin characters down through the bases chosen in the
    source examples, which need not be the canonical one.
    """
    if len(elements) != len(values):
        raise ValueError("one value per element expected")
    blocks = group.jord.blocks
    n = len(blocks)
    index = {b: i for i, b in enumerate(blocks)}
    rows: list[int] = []
    rhs: list[int] = []
    for element, v in zip(elements, values):
        norm = _norm_element(group.jord, element)
        if not group.is_member(norm):
            raise MembershipError("element outside the component group")
        mask = 0
        for b in norm:
            mask |= 1 << index[b]
        rows.append(mask)
        rhs.append(0 if v == 1 else 1)
    if group.family.kind is FamilyKind.SO_ODD and n:
        rows.append((1 << n) - 1)  # trivial on the full product
        rhs.append(0)

    # Gaussian elimination over GF(2) on (mask, bit) pairs.
    pivots: dict[int, tuple[int, int]] = {}
    for mask, bit in zip(rows, rhs):
        for col, (pmask, pbit) in pivots.items():
            if (mask >> col) & 1:
                mask ^= pmask
                bit ^= pbit
        if mask == 0:
            if bit:
                raise ValueError("inconsistent character values")
            continue
        col = mask.bit_length() - 1
        pivots[col] = (mask, bit)

    # Back substitution, ascending: a pivot's mask only has lower bits besides
    # its own column, and free variables stay 0.
    solution = 0
    for col in sorted(pivots):
        pmask, pbit = pivots[col]
        acc = pbit
        rest = pmask & ~(1 << col)
        while rest:
            c = rest & -rest
            if (solution >> (c.bit_length() - 1)) & 1:
                acc ^= 1
            rest ^= c
        if acc:
            solution |= 1 << col

    # Uniqueness: the homogeneous kernel may only contain the Sp coset flip.
    free = n - len(pivots)
    if group.family.kind is FamilyKind.SP:
        parity_mask = 0
        for i, b in enumerate(blocks):
            if b.dim % 2 == 1:
                parity_mask |= 1 << i
        kernel_ok = free == 0 or (
            free == 1 and parity_mask and _in_kernel(parity_mask, pivots)
        )
    else:
        kernel_ok = free == 0
    if not kernel_ok:
        raise ValueError("elements do not determine a unique character")

    signs = {b: (-1 if (solution >> i) & 1 else 1) for i, b in enumerate(blocks)}
    char = character_from_signs(group, signs)
    for element, v in zip(elements, values):
        if char.evaluate(element) != v:
            raise AssertionError("solver produced wrong character")
    return char


def _in_kernel(vec: int, pivots: dict[int, tuple[int, int]]) -> bool:
    mask = vec
    for col, (pmask, _) in pivots.items():
        if (mask >> col) & 1:
            mask ^= pmask
    return mask == 0


# ---------------------------------------------------------------------------
# the cuspidality criterion


def cuspidal_signs_ok(jord: JordanSet, sign_of: Mapping[JordanBlock, int]) -> bool:
    """The three defining conditions, on a raw sign function:

    1. the Jordan set has no gaps;
    2. every length-two block gets -1;
    3. every same-line consecutive pair multiplies to -1.
    """
    if has_gaps(jord):
        return False
    for b in jord:
        if b.m == 2 and sign_of[b] != -1:
            return False
    for rho, ms in jord.lines().items():
        for lower, upper in zip(ms, ms[1:]):
            if sign_of[jord.find(rho, upper)] * sign_of[jord.find(rho, lower)] != -1:
                return False
    return True


def is_cuspidal_character(jord: JordanSet, char: ComponentCharacter) -> bool:
    """Whether the packet member indexed by char is cuspidal.

    All conditions involve only even-dimensional elements, so the answer does
    not depend on the Sp coset representative.
    """
    if char.group.jord != jord:
        raise ValueError("character does not belong to this Jordan set")
    return cuspidal_signs_ok(jord, char.sign_map())


def count_cuspidal_characters(fam: GroupFamily, jord: JordanSet) -> int:
    group = component_group(fam, jord)
    return sum(1 for c in characters(group) if is_cuspidal_character(jord, c))


def character_to_json(char: ComponentCharacter) -> dict:
    return {
        "basis": char.group.describe_basis(),
        "values": "".join("+" if v == 1 else "-" for v in char.values_on_basis),
        "signs": {str(b): v for b, v in char.sign_map().items()},
    }
