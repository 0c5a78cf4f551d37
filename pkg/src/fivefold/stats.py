"""Tile-count statistics: substitution counts, tau-power ratio reports,
and the alloy-composition comparison."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

from .exact import GoldenInt, PHI

__all__ = [
    "substitution_counts",
    "nearest_tau_power",
    "RatioEntry",
    "RatioReport",
    "ratio_report",
    "alloy_check",
    "tau_power_table",
]

_K_RANGE = range(-8, 9)
_LOG_PHI = math.log(PHI)


def tau_power_table() -> dict[int, float]:
    """tau^k for k in [-8, 8], computed through exact golden powers."""
    tau = GoldenInt(0, 1)
    return {k: (tau ** k).embed() for k in _K_RANGE}


_TAU_POWERS = tau_power_table()


def substitution_counts(seed: tuple[int, int], generations: int) -> list[tuple[int, int]]:
    """Iterate (acute, obtuse) -> (acute + obtuse, acute + 2*obtuse).

    This is the exact census evolution of one deflation round: each acute
    contributes one child of either kind, each obtuse adds a second obtuse.
    """
    acute, obtuse = seed
    if acute < 0 or obtuse < 0:
        raise ValueError("seed counts must be nonnegative")
    if generations < 0:
        raise ValueError("generations must be >= 0")
    out = [(acute, obtuse)]
    for _ in range(generations):
        acute, obtuse = acute + obtuse, acute + 2 * obtuse
        out.append((acute, obtuse))
    return out


def nearest_tau_power(ratio: float) -> tuple[int, float]:
    """Nearest k in [-8, 8] under |log(ratio) - k*log(tau)| and the
    relative deviation of the ratio from tau^k."""
    if ratio <= 0:
        raise ValueError("ratio must be positive")
    log_r = math.log(ratio)
    k = min(_K_RANGE, key=lambda n: abs(log_r - n * _LOG_PHI))
    power = _TAU_POWERS[k]
    return k, abs(ratio - power) / power


@dataclass(frozen=True, slots=True)
class RatioEntry:
    label: str
    ratio: float
    power: int
    deviation: float


@dataclass(frozen=True, slots=True)
class RatioReport:
    entries: tuple[RatioEntry, ...]

    def find(self, label: str) -> RatioEntry | None:
        return next((e for e in self.entries if e.label == label), None)


def _entry(label: str, ratio: float) -> RatioEntry:
    k, dev = nearest_tau_power(ratio)
    return RatioEntry(label, ratio, k, dev)


def ratio_report(counts: Mapping[str, int]) -> RatioReport:
    """Classify pairwise count ratios against powers of tau.

    Pairs run over kinds present with nonzero counts, in sorted label
    order, each unordered pair once.  When both rhomb kinds are present
    the combined ratios (thick+thin)/thick and (thick+thin)/thin are
    appended; in the substitution limit they approach tau and tau^2.
    """
    if any(v < 0 for v in counts.values()):
        raise ValueError("counts must be nonnegative")
    present = sorted(k for k, v in counts.items() if v > 0)
    entries = []
    for i, ka in enumerate(present):
        for kb in present[i + 1:]:
            entries.append(_entry(f"{ka}/{kb}", counts[ka] / counts[kb]))
    thick = counts.get("ThickRhomb", 0)
    thin = counts.get("ThinRhomb", 0)
    if thick > 0 and thin > 0:
        entries.append(_entry("(thick+thin)/thick", (thick + thin) / thick))
        entries.append(_entry("(thick+thin)/thin", (thick + thin) / thin))
    return RatioReport(tuple(entries))


def alloy_check(parts_a: int, parts_b: int) -> tuple[float, int, float]:
    """Component ratio of a two-part composition against tau powers."""
    if parts_b <= 0:
        raise ValueError("parts_b must be positive")
    if parts_a <= 0:
        raise ValueError("parts_a must be positive")
    ratio = parts_a / parts_b
    k, dev = nearest_tau_power(ratio)
    return ratio, k, dev
