"""Lefschetz numbers of n-valued circle maps.

For a circle map of total degree D the Lefschetz number is ``n - D``.  This
is computed from strand data only, never from fixed points, so comparing it
with the index is a real check.
"""
from __future__ import annotations

from dataclasses import dataclass

from .index import index_crossing, index_schirmer
from .nmap import NValuedCircleMap, is_split, split, total_degree
from .regions import OpenArcSet


@dataclass(frozen=True)
class LefschetzValue:
    value: int
    method: str = "degree_formula"
    split_sum: int | None = None


def lefschetz(fmap: NValuedCircleMap) -> LefschetzValue:
    value = fmap.n - total_degree(fmap)
    if not is_split(fmap):
        return LefschetzValue(value)
    # classical L(f_i) = 1 - deg f_i for each selection
    ssum = sum(1 - total_degree(f) for f in split(fmap))
    if ssum != value:
        raise AssertionError(f"split sum {ssum} disagrees with degree formula {value}")
    return LefschetzValue(value, "degree_formula", ssum)


@dataclass(frozen=True)
class CrabbReport:
    lefschetz: int
    schirmer: int
    crossing: int

    @property
    def passed(self) -> bool:
        return self.lefschetz == self.schirmer == self.crossing


def verify_crabb(fmap: NValuedCircleMap) -> CrabbReport:
    """Compare L(f) with the index over the whole circle."""
    whole = OpenArcSet.whole()
    return CrabbReport(lefschetz(fmap).value, index_schirmer(fmap, whole), index_crossing(fmap, whole))
