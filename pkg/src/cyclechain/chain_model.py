"""Chains of cycles: torsion profiles, Martens-special families, discrete chains,
and the per-cycle normal form of a divisor.

A metric chain of cycles is modelled only by its torsion profile
``(m_2, ..., m_g)``: rank does not see edge lengths beyond it.  Torsion ``0``
stands for infinite order, and "congruent mod 0" means equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence, Union

from .finite_graph_oracle import FiniteGraph, VertexDivisor


@dataclass(frozen=True)
class TorsionProfile:
    genus: int
    torsions: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "torsions", tuple(int(m) for m in self.torsions))
        if self.genus < 1:
            raise ValueError(f"genus must be positive, got {self.genus}")
        if len(self.torsions) != self.genus - 1:
            raise ValueError(
                f"genus {self.genus} needs {self.genus - 1} torsions (m_2..m_g), got {len(self.torsions)}"
            )
        if any(m < 0 for m in self.torsions):
            raise ValueError("torsions must be non-negative (0 encodes infinite torsion)")

    def torsion(self, i: int) -> int:
        """m_i for cycle ``i`` (1-based).  Cycle 1 carries no torsion and compares exactly."""
        if not 1 <= i <= self.genus:
            raise IndexError(f"cycle {i} outside 1..{self.genus}")
        return 0 if i == 1 else self.torsions[i - 2]

    def to_json(self) -> dict:
        return {"genus": self.genus, "torsions": list(self.torsions)}

    @classmethod
    def from_json(cls, data: dict) -> "TorsionProfile":
        return cls(int(data["genus"]), tuple(int(m) for m in data["torsions"]))


@dataclass(frozen=True)
class Generic:
    """A point matching no integer class (a general point of the cycle)."""

    def __repr__(self):
        return "GENERIC"


GENERIC = Generic()


@dataclass(frozen=True)
class IntegerClass:
    value: int


PointPosition = Union[Generic, IntegerClass]


def congruent(a: int, b: int, m: int) -> bool:
    return a == b if m == 0 else (a - b) % m == 0


def position_to_json(pos: PointPosition):
    return "generic" if isinstance(pos, Generic) else {"class": pos.value}


def position_from_json(data) -> PointPosition:
    if data == "generic":
        return GENERIC
    if isinstance(data, dict) and "class" in data:
        return IntegerClass(int(data["class"]))
    raise ValueError(f'position must be "generic" or {{"class": n}}, got {data!r}')


@dataclass(frozen=True)
class RepresentingDivisor:
    """sum_i <xi_i>_i + (d - g) w_g, one position per cycle."""

    degree: int
    positions: tuple[PointPosition, ...]

    def __post_init__(self):
        object.__setattr__(self, "positions", tuple(self.positions))
        if not self.positions:
            raise ValueError("a representing divisor needs at least one cycle")
        for p in self.positions:
            if not isinstance(p, (Generic, IntegerClass)):
                raise TypeError(f"bad position {p!r}")

    @property
    def genus(self) -> int:
        return len(self.positions)

    @property
    def tail(self) -> int:
        return self.degree - self.genus

    def reduced(self, profile: TorsionProfile) -> "RepresentingDivisor":
        """Same divisor with every integer class reduced mod its torsion."""
        if profile.genus != self.genus:
            raise ValueError("profile and divisor disagree on the genus")
        out = []
        for i, pos in enumerate(self.positions, start=1):
            m = profile.torsion(i)
            if isinstance(pos, IntegerClass) and m > 0:
                pos = IntegerClass(pos.value % m)
            out.append(pos)
        return RepresentingDivisor(self.degree, tuple(out))

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "positions": [position_to_json(p) for p in self.positions],
            "tail": self.tail,
        }

    @classmethod
    def from_json(cls, data: dict) -> "RepresentingDivisor":
        D = cls(int(data["degree"]), tuple(position_from_json(p) for p in data["positions"]))
        if "tail" in data and int(data["tail"]) != D.tail:
            raise ValueError(f"tail must equal degree - genus = {D.tail}, got {data['tail']}")
        return D


@dataclass(frozen=True)
class MartensSpec:
    genus: int
    positions: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "positions", tuple(int(j) for j in self.positions))
        js, g = self.positions, self.genus
        if not js:
            raise ValueError("type k must be at least 1")
        if js[0] < 3:
            raise ValueError(f"need 3 <= j_1, got j_1 = {js[0]}")
        for a, b in zip(js, js[1:]):
            if b - a < 2:
                raise ValueError(f"need j_(i+1) - j_i >= 2, got {a}, {b}")
        if js[-1] > g - 2:
            raise ValueError(f"need j_k <= g - 2 = {g - 2}, got j_k = {js[-1]}")

    @property
    def k(self) -> int:
        return len(self.positions)

    def label(self) -> str:
        return f"g={self.genus},k={self.k},j=({','.join(map(str, self.positions))})"

    def to_json(self) -> dict:
        return {"genus": self.genus, "type": self.k, "positions": list(self.positions)}


@dataclass(frozen=True)
class Cycle:
    size: int
    attach: int

    def __post_init__(self):
        if self.size < 2:
            raise ValueError(f"cycle size must be >= 2, got {self.size}")
        if not 2 <= self.attach <= self.size:
            raise ValueError(f"attach must lie in 2..size={self.size}, got {self.attach}")

    @property
    def torsion(self) -> int:
        return self.size // gcd(self.size, self.attach - 1)


@dataclass(frozen=True)
class DiscreteChain:
    """Cycles G_1..G_g with vertices v_{i,1..k_i}; v_{i,j_i} is joined to v_{i+1,1}."""

    cycles: tuple[Cycle, ...]

    def __post_init__(self):
        object.__setattr__(self, "cycles", tuple(self.cycles))
        if not self.cycles:
            raise ValueError("a chain needs at least one cycle")

    @property
    def genus(self) -> int:
        return len(self.cycles)

    @property
    def n_vertices(self) -> int:
        return sum(c.size for c in self.cycles)

    def vertex(self, i: int, j: int) -> int:
        """Global 0-based index of v_{i,j} (both 1-based)."""
        if not 1 <= i <= self.genus:
            raise IndexError(f"cycle {i} outside 1..{self.genus}")
        if not 1 <= j <= self.cycles[i - 1].size:
            raise IndexError(f"vertex {j} outside 1..{self.cycles[i - 1].size} on cycle {i}")
        return sum(c.size for c in self.cycles[: i - 1]) + j - 1

    def locate(self, v: int) -> tuple[int, int]:
        """Inverse of :meth:`vertex`."""
        for i, c in enumerate(self.cycles, start=1):
            if v < c.size:
                return i, v + 1
            v -= c.size
        raise IndexError("vertex index out of range")

    def graph(self) -> FiniteGraph:
        edges = []
        for i, c in enumerate(self.cycles, start=1):
            for j in range(1, c.size):
                edges.append((self.vertex(i, j), self.vertex(i, j + 1)))
            edges.append((self.vertex(i, c.size), self.vertex(i, 1)))
            if i < self.genus:
                edges.append((self.vertex(i, c.attach), self.vertex(i + 1, 1)))
        return FiniteGraph(self.n_vertices, tuple(edges))

    def divisor(self, entries: Sequence[tuple[int, int, int]]) -> VertexDivisor:
        """Build a vertex divisor from ``(cycle, vertex, mult)`` triples."""
        coeffs = [0] * self.n_vertices
        for i, j, n in entries:
            coeffs[self.vertex(i, j)] += n
        return VertexDivisor(tuple(coeffs))

    def divisor_entries(self, D: VertexDivisor) -> list[tuple[int, int, int]]:
        return [(*self.locate(v), c) for v, c in enumerate(D.coefficients) if c]

    def to_json(self) -> dict:
        return {"cycles": [{"size": c.size, "attach": c.attach} for c in self.cycles]}

    @classmethod
    def from_json(cls, data: dict) -> "DiscreteChain":
        return cls(tuple(Cycle(int(c["size"]), int(c["attach"])) for c in data["cycles"]))


def divisor_from_json(chain: DiscreteChain, data: dict) -> VertexDivisor:
    if "entries" in data:
        return chain.divisor([(int(e["cycle"]), int(e["vertex"]), int(e["mult"])) for e in data["entries"]])
    D = VertexDivisor.from_json(data)
    if len(D) != chain.n_vertices:
        raise ValueError(f"divisor has {len(D)} coefficients, chain has {chain.n_vertices} vertices")
    return D


def divisor_to_json(chain: DiscreteChain, D: VertexDivisor) -> dict:
    return {"entries": [{"cycle": i, "vertex": j, "mult": n} for i, j, n in chain.divisor_entries(D)]}


def martens_special_profile(spec: MartensSpec, kind: str = "metric") -> TorsionProfile:
    """Torsion profile of the general Martens-special chain of the given spec.

    ``kind="metric"`` puts infinite torsion (0) at each j_i; ``kind="discrete"``
    puts g + 1, the smallest value exceeding g.
    """
    g = spec.genus
    if kind == "metric":
        special = 0
    elif kind == "discrete":
        special = g + 1
    else:
        raise ValueError(f"kind must be 'metric' or 'discrete', got {kind!r}")
    js = set(spec.positions)
    return TorsionProfile(g, tuple(special if i in js else 2 for i in range(2, g + 1)))


def torsion_of_discrete(chain: DiscreteChain) -> TorsionProfile:
    return TorsionProfile(chain.genus, tuple(c.torsion for c in chain.cycles[1:]))


def realize_discrete_chain(profile: TorsionProfile) -> DiscreteChain:
    """Smallest discrete chain with the given profile: k_i = m_i, j_i = 2, and k_1 = 2."""
    for i, m in enumerate(profile.torsions, start=2):
        if m < 2:
            raise ValueError(f"m_{i} = {m} cannot be realized by a discrete chain (need m_i >= 2)")
    return DiscreteChain((Cycle(2, 2),) + tuple(Cycle(m, 2) for m in profile.torsions))


def vertex_of_class(chain: DiscreteChain, i: int, xi: int) -> int:
    """The j in 1..k_i with (j_i - 1) xi + j_i = j mod k_i."""
    c = chain.cycles[i - 1]
    return ((c.attach - 1) * xi + c.attach - 1) % c.size + 1


def class_of_vertex(chain: DiscreteChain, i: int, j: int) -> PointPosition:
    """Integer class xi (reduced mod the cycle torsion) naming v_{i,j}, or GENERIC if none does."""
    c = chain.cycles[i - 1]
    a = c.attach - 1
    step = gcd(a, c.size)
    diff = j - c.attach
    if diff % step:
        return GENERIC
    m = c.size // step
    return IntegerClass((diff // step) * pow(a // step, -1, m) % m)


def normal_form_vertices(chain: DiscreteChain, D: VertexDivisor) -> tuple[tuple[int, ...], int]:
    """Vertices j'_1..j'_g and tail d - g with D ~ sum v_{i,j'_i} + (d - g) v_{g,j_g}.

    Degree is pushed rightwards across the bridges until each cycle has degree one
    (the tail sits at v_{g,j_g}); a degree-one divisor on a k-cycle is equivalent
    to the vertex v_j with j = sum_p c_p * p mod k.
    """
    if len(D) != chain.n_vertices:
        raise ValueError(f"divisor has {len(D)} coefficients, chain has {chain.n_vertices} vertices")
    g = chain.genus
    per_cycle = []
    for i, c in enumerate(chain.cycles, start=1):
        start = chain.vertex(i, 1)
        per_cycle.append(list(D.coefficients[start:start + c.size]))
    tail = D.degree - g
    for i in range(g):
        c = chain.cycles[i]
        excess = sum(per_cycle[i]) - 1
        if i == g - 1:
            assert excess == tail
        else:
            per_cycle[i + 1][0] += excess
        per_cycle[i][c.attach - 1] -= excess
    verts = []
    for c, coeffs in zip(chain.cycles, per_cycle):
        s = sum(n * p for p, n in enumerate(coeffs, start=1))
        verts.append((s - 1) % c.size + 1)
    return tuple(verts), tail


def normal_form_divisor(chain: DiscreteChain, D: VertexDivisor) -> VertexDivisor:
    verts, tail = normal_form_vertices(chain, D)
    entries = [(i, j, 1) for i, j in enumerate(verts, start=1)]
    entries.append((chain.genus, chain.cycles[-1].attach, tail))
    return chain.divisor(entries)


def representing_divisor_discrete(chain: DiscreteChain, D: VertexDivisor) -> RepresentingDivisor:
    verts, _ = normal_form_vertices(chain, D)
    positions = tuple(class_of_vertex(chain, i, j) for i, j in enumerate(verts, start=1))
    return RepresentingDivisor(D.degree, positions)
