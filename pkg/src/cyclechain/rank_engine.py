"""Ranks, gonality sequences, Clifford index and divisorial completeness on
chains of cycles, all decided by displacement-tableau existence.

A divisor of degree d has rank >= r exactly when a compatible tableau exists on
[(g - d + r) x (r + 1)]; a shape with no columns counts as success.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .chain_model import (
    GENERIC,
    DiscreteChain,
    IntegerClass,
    RepresentingDivisor,
    TorsionProfile,
    representing_divisor_discrete,
    torsion_of_discrete,
)
from .finite_graph_oracle import VertexDivisor
from .tableau_engine import (
    DisplacementTableau,
    GridShape,
    empty_tableau,
    enumerate_tableaux,
    exists_compatible_tableau,
    tableau_exists,
)


@dataclass(frozen=True)
class RankResult:
    rank: int
    witness: Optional[DisplacementTableau] = None

    def to_json(self) -> dict:
        return {"rank": self.rank, "witness": None if self.witness is None else self.witness.to_json()}


@dataclass(frozen=True)
class GonalityReport:
    genus: int
    sequence: dict[int, int]

    def __post_init__(self):
        vals = [self.sequence[r] for r in sorted(self.sequence)]
        if any(a >= b for a, b in zip(vals, vals[1:])):
            raise AssertionError(f"gonality sequence not strictly increasing: {vals}")

    @property
    def gonality(self) -> int:
        return self.sequence[1]

    @property
    def clifford(self) -> int:
        return self.gonality - 2

    def to_json(self) -> dict:
        return {
            "genus": self.genus,
            "gonality": self.gonality,
            "clifford": self.clifford,
            "sequence": [{"r": r, "g_r": self.sequence[r]} for r in sorted(self.sequence)],
        }


def rank_shape(g: int, d: int, r: int) -> GridShape:
    """[(g - d + r) x (r + 1)], with non-positive widths collapsed to the empty shape."""
    return GridShape(max(0, g - d + r), r + 1)


def rank_metric(p: TorsionProfile, D: RepresentingDivisor) -> RankResult:
    if D.genus != p.genus:
        raise ValueError(f"divisor has {D.genus} cycles, profile has genus {p.genus}")
    g, d = p.genus, D.degree
    if d < 0:
        return RankResult(-1)
    best, witness = -1, None
    r = max(0, d - g)
    if r > 0:
        # Riemann-Roch floor: the shape for d - g has no columns.
        best, witness = r, empty_tableau(rank_shape(g, d, r))
        r += 1
    limit = max(d - g, d // 2)
    while r <= limit:
        t = exists_compatible_tableau(p, D, rank_shape(g, d, r))
        if t is None:
            break
        best, witness = r, t
        r += 1
    return RankResult(best, witness)


def rank_discrete(chain: DiscreteChain, D: VertexDivisor) -> RankResult:
    return rank_metric(torsion_of_discrete(chain), representing_divisor_discrete(chain, D))


def min_degree_for_rank(p: TorsionProfile, r: int, start: int = 0) -> int:
    """g_r: the least d admitting some tableau on the rank-r shape."""
    g = p.genus
    if r >= g:
        return g + r
    d = max(start, 2 * r)
    while not tableau_exists(p, rank_shape(g, d, r)):
        d += 1
    return d


def gonality_sequence(p: TorsionProfile, r_max: int) -> GonalityReport:
    if r_max < 1:
        raise ValueError("r_max must be >= 1")
    seq: dict[int, int] = {}
    prev = 0
    for r in range(1, r_max + 1):
        prev = min_degree_for_rank(p, r, start=prev + 1)
        seq[r] = prev
    return GonalityReport(p.genus, seq)


class CliffordMismatch(AssertionError):
    pass


def clifford_index(p: TorsionProfile) -> int:
    """min d - 2r over degree-d, rank >= r divisors with r >= 1 and d <= g + r - 2.

    Computed by sweeping (d, r) directly and cross-checked against gonality - 2.
    """
    g = p.genus
    best = None
    for r in range(1, g):
        for d in range(2 * r, g + r - 1):
            if tableau_exists(p, rank_shape(g, d, r)):
                if best is None or d - 2 * r < best:
                    best = d - 2 * r
                break
    if best is None:
        raise ValueError(f"no divisor with r >= 1 and g - d + r - 1 >= 1 exists; Clifford index undefined (g={g})")
    gon = min_degree_for_rank(p, 1)
    if best != gon - 2:
        raise CliffordMismatch(f"definitional Clifford index {best} != gonality - 2 = {gon - 2}")
    return best


def lemma_e1_bounds(p: TorsionProfile, r_max: Optional[int] = None) -> bool:
    g = p.genus
    r_max = r_max if r_max is not None else g + 2
    seq = gonality_sequence(p, r_max).sequence
    g1 = seq[1]
    for r, gr in seq.items():
        if r >= g:
            ok = gr == g + r
        elif r >= g - g1 + 1:
            ok = gr == g - 1 + r
        else:
            ok = g1 + 2 * r - 2 <= gr <= g - 1 + r
        if not ok:
            return False
    return True


def divisor_from_tableau(p: TorsionProfile, t: DisplacementTableau, d: int) -> RepresentingDivisor:
    """Positions pinned by ``t`` on the cycles it uses, generic everywhere else."""
    positions = [GENERIC] * p.genus
    for (x, y), v in t.items():
        m = p.torsion(v)
        positions[v - 1] = IntegerClass((x - y) % m if m else x - y)
    return RepresentingDivisor(d, tuple(positions))


def exists_rank_exactly(p: TorsionProfile, d: int, r: int) -> Optional[RepresentingDivisor]:
    """A divisor of degree d and rank exactly r, or None.

    Any such divisor is compatible with some tableau t on the rank-r shape; the
    divisor that agrees with it on im(t) and is generic elsewhere is compatible
    with fewer tableaux, so it has rank exactly r as well.  Scanning the r-shape
    tableaux therefore decides the question.
    """
    g = p.genus
    if r < -1:
        return None
    if r == -1:
        return RepresentingDivisor(d, (GENERIC,) * g) if d < 0 else None
    if d < 0:
        return None
    shape = rank_shape(g, d, r)
    if not shape.is_empty and not tableau_exists(p, shape):
        return None
    upper = rank_shape(g, d, r + 1)
    seen = set()
    for t in enumerate_tableaux(p, shape):
        D = divisor_from_tableau(p, t, d)
        if D in seen:
            continue
        seen.add(D)
        if not upper.is_empty and exists_compatible_tableau(p, D, upper) is None:
            return D
    return None


@dataclass
class DivisorialCell:
    degree: int
    rank: int
    allowed: bool
    realized: bool
    witness: Optional[RepresentingDivisor] = None

    @property
    def passed(self) -> bool:
        return self.allowed == self.realized

    def to_json(self) -> dict:
        return {
            "d": self.degree, "r": self.rank, "allowed": self.allowed, "realized": self.realized,
            "passed": self.passed, "witness": None if self.witness is None else self.witness.to_json(),
        }


@dataclass
class DivisorialReport:
    genus: int
    clifford: int
    cells: list[DivisorialCell] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cells)

    def failures(self) -> list[DivisorialCell]:
        return [c for c in self.cells if not c.passed]

    def to_json(self) -> dict:
        return {"genus": self.genus, "clifford": self.clifford, "passed": self.passed,
                "cells": [c.to_json() for c in self.cells]}


def allowed_by_riemann_roch_and_clifford(g: int, c: int, d: int, r: int) -> bool:
    return (
        (d >= g and r == d - g)
        or (0 <= d <= g and r == 0)
        or (g <= d <= 2 * g - 2 and r == d - g + 1)
        or (r >= 1 and c + 2 * r <= d <= g + r - 2)
    )


def divisorial_complete_report(p: TorsionProfile) -> DivisorialReport:
    """Check every (d, r) with 0 <= d <= 2g - 2, 0 <= r <= d: realizable iff allowed."""
    g = p.genus
    c = clifford_index(p)
    report = DivisorialReport(g, c)
    for d in range(0, 2 * g - 1):
        for r in range(0, d + 1):
            w = exists_rank_exactly(p, d, r)
            report.cells.append(DivisorialCell(d, r, allowed_by_riemann_roch_and_clifford(g, c, d, r),
                                               w is not None, w))
    return report
