"""Tempered-reducibility rules driven by a Jordan set, and the two-way
conversion between a cuspidal line's blocks and its reducibility exponent.

Reducibility points of cuspidal pairs are analytic input; they enter as
registry data and are never computed here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import (
    CuspidalLabel,
    FamilyKind,
    HalfInt,
    JordanBlock,
    JordanSet,
    Parity,
    Segment,
)


@dataclass(frozen=True)
class CuspidalReducibilityData:
    """The non-negative exponents x for which twisting a cuspidal line by
    |det|^x and inducing against a fixed cuspidal pi reduces."""

    rho: CuspidalLabel
    pi_tag: str
    points: tuple[HalfInt, ...]

    def __post_init__(self) -> None:
        pts = tuple(sorted(set(self.points), key=lambda p: p.doubled))
        if any(p.doubled < 0 for p in pts):
            raise ValueError("reducibility points are recorded as x >= 0")
        object.__setattr__(self, "points", pts)


def segment_induction_reducible(seg: Segment, data: CuspidalReducibilityData) -> bool:
    """Induction of the square-integrable of a segment against the cuspidal
    behind `data` reduces exactly when the segment meets a reducibility
    exponent (in either sign)."""
    if data.rho != seg.rho:
        raise ValueError("reducibility data is for a different cuspidal line")
    return any(
        seg.contains_exponent(x) or seg.contains_exponent(-x) for x in data.points
    )


def is_reducible_tempered(jord: JordanSet, block: JordanBlock) -> bool:
    """Reducibility of tempered induction of delta(rho, m) against the
    square-integrable representation with Jordan set `jord`.

    On a line meeting the set: reducible exactly in the parity of the line,
    minus the blocks of the set itself.  On a line missing from the set:
    reducible exactly in the line's declared base parity.
    """
    line = jord.line(block.rho)
    if line:
        if block.m % 2 != line[0] % 2:
            return False
        return jord.find(block.rho, block.m) is None
    return Parity.of(block.m) is block.rho.base_parity


def reducibility_table(jord: JordanSet, rho: CuspidalLabel, m_max: int) -> list[bool]:
    """Reducible / irreducible for m = 1 .. m_max."""
    return [is_reducible_tempered(jord, JordanBlock(rho, m)) for m in range(1, m_max + 1)]


def jord_line_from_reducibility(rho: CuspidalLabel, x: HalfInt) -> list[JordanBlock]:
    """Blocks forced on the line by a cuspidal reducibility exponent x >= 1:
    lengths 2x-1, 2x-3, ..., down to 1 (x integral) or 2 (x half-integral).
    These are the only blocks of the line.  Returned ascending."""
    if x.doubled < 2:
        raise ValueError("needs an exponent x >= 1")
    top = x.doubled - 1  # 2x - 1, an integer either way
    eps = 1 if x.is_integer else 2
    return [JordanBlock(rho, m) for m in range(eps, top + 1, 2)]


def reducibility_from_jord_line(jord: JordanSet, rho: CuspidalLabel) -> Optional[HalfInt]:
    """The cuspidal reducibility exponent (max length + 1)/2 encoded by a
    nonempty line, or None when the line is empty."""
    line = jord.line(rho)
    if not line:
        return None
    return HalfInt(max(line) + 1)


def equivalent_formulation_check(
    family_kind: FamilyKind,
    jord: JordanSet,
    block: JordanBlock,
    base: JordanSet,
) -> bool:
    """Restate tempered reducibility through the rank-zero representation:
    reducible iff reducible against the rank-zero one and the block is not in
    the Jordan set.

    `base` is the Jordan set of the rank-zero representation of the series.
    The restatement is asserted against the direct rule, except on the
    trivial GL(1) line of the symplectic series where the rank-zero set
    itself supplies the length-one exception and the formula is exempt.
    """
    formula = is_reducible_tempered(base, block) and jord.find(block.rho, block.m) is None
    exempt = (
        family_kind is FamilyKind.SP and block.rho.is_trivial_character
    )
    if not exempt:
        direct = is_reducible_tempered(jord, block)
        if formula != direct:
            raise AssertionError(
                f"restated rule disagrees with the direct rule at {block}: "
                f"{formula} vs {direct}"
            )
    return formula
