"""Exact primitives: half-integers, cuspidal-line labels, Jordan blocks and
Jordan sets for the two series of split classical groups Sp(2n) and SO(2n+1).

Everything here is an immutable value and every operation is a pure function.
Exponents live in (1/2)Z and are stored as doubled integers; no floats appear
anywhere.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from functools import total_ordering
from typing import Iterable, Iterator, Mapping, Optional, Sequence


class GrammarError(ValueError):
    """Malformed textual input for a Jordan set."""


class JordanSetError(ValueError):
    """Structurally broken Jordan set (duplicate blocks, bad ranks, ...)."""


class InvalidJordanSet(ValueError):
    """Jordan set rejected by the dual-group constraints."""

    def __init__(self, report: "ValidationReport"):
        self.report = report
        super().__init__("; ".join(v.message for v in report.violations))


# ---------------------------------------------------------------------------
# half-integers


@total_ordering
@dataclass(frozen=True)
class HalfInt:
    """An element of (1/2)Z, stored as twice its value."""

    doubled: int

    @classmethod
    def of(cls, n: int) -> "HalfInt":
        return cls(2 * n)

    @classmethod
    def half_of(cls, n: int) -> "HalfInt":
        """The half-integer n/2."""
        return cls(n)

    @classmethod
    def parse(cls, text: str) -> "HalfInt":
        text = text.strip()
        if "/" in text:
            num, den = text.split("/")
            if den.strip() != "2":
                raise ValueError(f"not a half-integer literal: {text!r}")
            return cls(int(num))
        return cls.of(int(text))

    @property
    def is_integer(self) -> bool:
        return self.doubled % 2 == 0

    def as_int(self) -> int:
        if not self.is_integer:
            raise ValueError(f"{self} is not an integer")
        return self.doubled // 2

    def __add__(self, other: "HalfInt | int") -> "HalfInt":
        if isinstance(other, int):
            other = HalfInt.of(other)
        return HalfInt(self.doubled + other.doubled)

    __radd__ = __add__

    def __sub__(self, other: "HalfInt | int") -> "HalfInt":
        if isinstance(other, int):
            other = HalfInt.of(other)
        return HalfInt(self.doubled - other.doubled)

    def __rsub__(self, other: int) -> "HalfInt":
        return HalfInt.of(other) - self

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.doubled)

    def __mul__(self, k: int) -> "HalfInt":
        return HalfInt(self.doubled * k)

    __rmul__ = __mul__

    def __lt__(self, other: "HalfInt | int") -> bool:
        if isinstance(other, int):
            other = HalfInt.of(other)
        return self.doubled < other.doubled

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = HalfInt.of(other)
        if not isinstance(other, HalfInt):
            return NotImplemented
        return self.doubled == other.doubled

    def __hash__(self) -> int:
        return hash(("HalfInt", self.doubled))

    def __str__(self) -> str:
        if self.is_integer:
            return str(self.doubled // 2)
        return f"{self.doubled}/2"

    def __repr__(self) -> str:
        return f"HalfInt.parse({str(self)!r})"


def half(n: int) -> HalfInt:
    """Shorthand for the half-integer n/2."""
    return HalfInt(n)


# ---------------------------------------------------------------------------
# enums and the two group series


class PhiType(Enum):
    ORTHOGONAL = "orthogonal"
    SYMPLECTIC = "symplectic"

    def other(self) -> "PhiType":
        return PhiType.SYMPLECTIC if self is PhiType.ORTHOGONAL else PhiType.ORTHOGONAL


class Parity(Enum):
    EVEN = "even"
    ODD = "odd"

    @classmethod
    def of(cls, n: int) -> "Parity":
        return cls.EVEN if n % 2 == 0 else cls.ODD


class FamilyKind(Enum):
    SP = "Sp"
    SO_ODD = "SO"


@dataclass(frozen=True)
class GroupFamily:
    """Sp(2n, F) or split SO(2n+1, F)."""

    kind: FamilyKind
    rank: int

    def __post_init__(self) -> None:
        if self.rank < 0:
            raise ValueError("rank must be non-negative")

    @property
    def dual_dimension(self) -> int:
        # dual groups are SO(2n+1, C) and Sp(2n, C)
        return 2 * self.rank + 1 if self.kind is FamilyKind.SP else 2 * self.rank

    @property
    def required_block_type(self) -> PhiType:
        return PhiType.ORTHOGONAL if self.kind is FamilyKind.SP else PhiType.SYMPLECTIC

    def __str__(self) -> str:
        return f"{self.kind.value}{self.rank}"


def sl2_rep_type(m: int) -> PhiType:
    """Type of the m-dimensional irreducible algebraic SL(2, C) representation."""
    return PhiType.ORTHOGONAL if m % 2 == 1 else PhiType.SYMPLECTIC


# ---------------------------------------------------------------------------
# quadratic characters of F^x


@dataclass(frozen=True)
class QuadChar:
    """An order <= 2 character of F^x, as an element of (Z/2)^q."""

    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("bits must be 0/1")

    @property
    def is_trivial(self) -> bool:
        return not any(self.bits)

    def __mul__(self, other: "QuadChar") -> "QuadChar":
        if len(self.bits) != len(other.bits):
            raise ValueError("characters from different spaces")
        return QuadChar(tuple(a ^ b for a, b in zip(self.bits, other.bits)))

    def __str__(self) -> str:
        return "".join(map(str, self.bits))

    @classmethod
    def parse(cls, text: str) -> "QuadChar":
        return cls(tuple(int(c) for c in text.strip()))


@dataclass(frozen=True)
class QuadCharSpace:
    """The group of quadratic characters of F^x, of order 2^dim.

    dim = 2 is the odd-residual-characteristic case (four characters).
    """

    dim: int = 2

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError("dim must be positive")

    def trivial(self) -> QuadChar:
        return QuadChar((0,) * self.dim)

    def characters(self) -> list[QuadChar]:
        out = []
        for v in range(2 ** self.dim):
            bits = tuple((v >> i) & 1 for i in range(self.dim - 1, -1, -1))
            out.append(QuadChar(bits))
        return out

    def __len__(self) -> int:
        return 2 ** self.dim


# ---------------------------------------------------------------------------
# cuspidal labels and Jordan blocks


@dataclass(frozen=True, eq=False)
class CuspidalLabel:
    """A self-dual irreducible cuspidal representation of some GL(d, F),
    known only through registry data.

    base_parity is the parity of m for which induction of the length-m
    square-integrable on this line against the rank-zero representation
    reduces when the line is absent from the Jordan set; it is analytic
    input and is carried as declared data.
    """

    uid: str
    gl_rank: int
    phi_type: PhiType
    central_char: QuadChar
    base_parity: Parity

    def __post_init__(self) -> None:
        if self.gl_rank < 1:
            raise ValueError("gl_rank must be positive")
        if self.gl_rank == 1 and self.phi_type is not PhiType.ORTHOGONAL:
            raise ValueError("rank-one lines are characters, hence orthogonal")

    # labels with distinct uids are inequivalent cuspidals; equality is by uid
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CuspidalLabel):
            return NotImplemented
        return self.uid == other.uid

    def __hash__(self) -> int:
        return hash(("CuspidalLabel", self.uid))

    @property
    def is_trivial_character(self) -> bool:
        return self.gl_rank == 1 and self.central_char.is_trivial

    def __str__(self) -> str:
        return self.uid


@dataclass(frozen=True)
class JordanBlock:
    """delta(rho, m): the length-m self-dual square-integrable on the line rho."""

    rho: CuspidalLabel
    m: int

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError("m must be positive")

    @property
    def dim(self) -> int:
        return self.rho.gl_rank * self.m

    @property
    def phi_type(self) -> PhiType:
        return block_phi_type(self)

    @property
    def sort_key(self) -> tuple[str, int]:
        return (self.rho.uid, self.m)

    def __str__(self) -> str:
        return f"{self.rho.uid}:{self.m}"


def block_phi_type(block: JordanBlock) -> PhiType:
    """Type of the parameter of a block: a tensor product of two self-dual
    factors is orthogonal exactly when the factors have equal type."""
    if block.rho.phi_type is sl2_rep_type(block.m):
        return PhiType.ORTHOGONAL
    return PhiType.SYMPLECTIC


@dataclass(frozen=True)
class JordanSet:
    """A finite set of Jordan blocks, at most one per (line, length)."""

    blocks: tuple[JordanBlock, ...]

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.blocks, key=lambda b: b.sort_key))
        for a, b in zip(ordered, ordered[1:]):
            if a == b:
                raise JordanSetError(f"duplicate block {a}")
        object.__setattr__(self, "blocks", ordered)

    @classmethod
    def of(cls, blocks: Iterable[JordanBlock]) -> "JordanSet":
        return cls(tuple(blocks))

    def __iter__(self) -> Iterator[JordanBlock]:
        return iter(self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def __contains__(self, block: JordanBlock) -> bool:
        return block in self.blocks

    @property
    def is_empty(self) -> bool:
        return not self.blocks

    @property
    def total_dim(self) -> int:
        return sum(b.dim for b in self.blocks)

    @property
    def total_length(self) -> int:
        """Sum of the m's; the termination measure of the packet recursion."""
        return sum(b.m for b in self.blocks)

    def line(self, rho: CuspidalLabel) -> tuple[int, ...]:
        """Ascending list of lengths present on the line rho."""
        return tuple(sorted(b.m for b in self.blocks if b.rho == rho))

    def lines(self) -> dict[CuspidalLabel, tuple[int, ...]]:
        out: dict[CuspidalLabel, list[int]] = {}
        for b in self.blocks:
            out.setdefault(b.rho, []).append(b.m)
        return {rho: tuple(sorted(ms)) for rho, ms in out.items()}

    def find(self, rho: CuspidalLabel, m: int) -> Optional[JordanBlock]:
        for b in self.blocks:
            if b.rho == rho and b.m == m:
                return b
        return None

    def without(self, *removed: JordanBlock) -> "JordanSet":
        gone = set(removed)
        missing = gone - set(self.blocks)
        if missing:
            raise JordanSetError(f"blocks not present: {sorted(map(str, missing))}")
        return JordanSet(tuple(b for b in self.blocks if b not in gone))

    def with_added(self, *added: JordanBlock) -> "JordanSet":
        return JordanSet(self.blocks + tuple(added))

    def __str__(self) -> str:
        return ", ".join(str(b) for b in self.blocks)


# ---------------------------------------------------------------------------
# validity against the dual-group constraints


@dataclass(frozen=True)
class Violation:
    clause: str
    message: str
    blocks: tuple[JordanBlock, ...] = ()


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[Violation, ...] = ()


def validate_jordan_set(fam: GroupFamily, jord: JordanSet) -> ValidationReport:
    """Check that jord is the Jordan set of a discrete parameter for fam.

    (a) every block must have the type the dual group requires;
    (b) the dimensions must fill the dual group exactly;
    (c) for Sp only, the product of the central characters over the blocks
        whose line is orthogonal must be trivial, so the parameter lands in
        the special orthogonal group.
    """
    violations: list[Violation] = []
    need = fam.required_block_type
    bad_type = tuple(b for b in jord if block_phi_type(b) is not need)
    if bad_type:
        violations.append(
            Violation(
                "block-type",
                f"blocks of wrong type for {fam} (need {need.value}): "
                + ", ".join(map(str, bad_type)),
                bad_type,
            )
        )
    total = jord.total_dim
    if total != fam.dual_dimension:
        violations.append(
            Violation(
                "dimension",
                f"total dimension {total} != dual dimension {fam.dual_dimension} of {fam}",
            )
        )
    if fam.kind is FamilyKind.SP:
        orth = [b for b in jord if b.rho.phi_type is PhiType.ORTHOGONAL]
        if orth:
            prod = orth[0].rho.central_char
            for b in orth[1:]:
                prod = prod * b.rho.central_char
            if not prod.is_trivial:
                violations.append(
                    Violation(
                        "central-character",
                        "product of central characters over orthogonal lines is "
                        f"{prod}, not trivial",
                        tuple(orth),
                    )
                )
    return ValidationReport(not violations, tuple(violations))


def require_valid(fam: GroupFamily, jord: JordanSet) -> None:
    report = validate_jordan_set(fam, jord)
    if not report.ok:
        raise InvalidJordanSet(report)


def family_for_jordan(kind: FamilyKind, jord: JordanSet) -> GroupFamily:
    """The unique family of the given kind whose dual the set fills."""
    total = jord.total_dim
    if kind is FamilyKind.SP:
        if total % 2 == 0:
            raise JordanSetError(f"even total dimension {total} cannot be Sp dual")
        return GroupFamily(kind, (total - 1) // 2)
    if total % 2 == 1:
        raise JordanSetError(f"odd total dimension {total} cannot be SO dual")
    return GroupFamily(kind, total // 2)


# ---------------------------------------------------------------------------
# the combinatorial operations every other module leans on


def a_minus(jord: JordanSet, rho: CuspidalLabel, a: int) -> Optional[int]:
    """max { b < a : delta(rho, b) in jord }, or None when no smaller block
    exists.  It is an error to ask at a block that is not in the set."""
    if jord.find(rho, a) is None:
        raise ValueError(f"{rho.uid}:{a} is not in the Jordan set")
    below = [m for m in jord.line(rho) if m < a]
    return max(below) if below else None


def has_gaps(jord: JordanSet) -> bool:
    """True when some block of length >= 3 misses its predecessor of length
    two less on the same line."""
    for b in jord:
        if b.m >= 3 and jord.find(b.rho, b.m - 2) is None:
            return True
    return False


def is_isolated_gl_speh(l: int, m: int) -> bool:
    """Whether the unitary GL representation built from a length-l
    square-integrable in m shifted copies is isolated modulo center."""
    if l < 1 or m < 1:
        raise ValueError("l and m must be positive")
    return l != 2 and m != 2


# ---------------------------------------------------------------------------
# segments


@dataclass(frozen=True)
class Segment:
    """[lo, hi] on a cuspidal line: the chain of twists lo, lo+1, ..., hi."""

    rho: CuspidalLabel
    lo: HalfInt
    hi: HalfInt

    def __post_init__(self) -> None:
        d = self.hi.doubled - self.lo.doubled
        if d < 0 or d % 2 != 0:
            raise ValueError(f"[{self.lo},{self.hi}] is not a segment")

    @classmethod
    def centered(cls, rho: CuspidalLabel, m: int) -> "Segment":
        """The segment of delta(rho, m): [-(m-1)/2, (m-1)/2]."""
        if m < 1:
            raise ValueError("m must be positive")
        return cls(rho, HalfInt(-(m - 1)), HalfInt(m - 1))

    @property
    def length(self) -> int:
        return (self.hi.doubled - self.lo.doubled) // 2 + 1

    def exponents(self) -> Iterator[HalfInt]:
        for d in range(self.lo.doubled, self.hi.doubled + 1, 2):
            yield HalfInt(d)

    def contains_exponent(self, x: HalfInt) -> bool:
        if (x.doubled - self.lo.doubled) % 2 != 0:
            return False
        return self.lo.doubled <= x.doubled <= self.hi.doubled

    def contragredient(self) -> "Segment":
        return Segment(self.rho, -self.hi, -self.lo)

    def __str__(self) -> str:
        return f"[{self.lo},{self.hi}]_{self.rho.uid}"


# ---------------------------------------------------------------------------
# textual grammar:  "<family><rank>: <rho>:<m>[, ...]"

_HEAD_RE = re.compile(r"^\s*(Sp|SO)\s*(\d+)\s*:\s*(.*)$", re.S)
_BLOCK_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\s*:\s*(\d+)$")


def parse_jordan_set(
    text: str, labels: Mapping[str, CuspidalLabel]
) -> tuple[GroupFamily, JordanSet]:
    """Parse e.g. ``Sp4: triv:1, triv:3, triv:5`` against a label registry."""
    m = _HEAD_RE.match(text)
    if not m:
        raise GrammarError(
            f"cannot parse {text!r}; expected '<Sp|SO><rank>: rho:m, ...'"
        )
    kind = FamilyKind.SP if m.group(1) == "Sp" else FamilyKind.SO_ODD
    fam = GroupFamily(kind, int(m.group(2)))
    body = m.group(3).strip()
    blocks: list[JordanBlock] = []
    if body:
        for piece in body.split(","):
            piece = piece.strip()
            bm = _BLOCK_RE.match(piece)
            if not bm:
                raise GrammarError(f"cannot parse block {piece!r}")
            uid, length = bm.group(1), int(bm.group(2))
            if uid not in labels:
                raise GrammarError(f"unknown cuspidal label {uid!r}")
            blocks.append(JordanBlock(labels[uid], length))
    return fam, JordanSet.of(blocks)


def format_jordan_set(fam: GroupFamily, jord: JordanSet) -> str:
    return f"{fam}: {jord}" if not jord.is_empty else f"{fam}:"
