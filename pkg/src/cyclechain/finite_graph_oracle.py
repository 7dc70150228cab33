"""Chip-firing divisor theory on finite multigraphs.

Deliberately brute force: q-reduction by Dhar's burning algorithm, Baker-Norine
rank by enumerating effective divisors, Brill-Noether numbers by double
enumeration.  Nothing here knows about tableaux; it is the ground truth the
tableau engine is checked against.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations_with_replacement
from typing import Iterable, Iterator, Sequence


@dataclass(frozen=True)
class FiniteGraph:
    """Connected multigraph on vertices ``0..n_vertices-1``.

    ``edges`` is a multiset of unordered pairs; repeating a pair gives parallel
    edges.  Self-loops are rejected.
    """

    n_vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n_vertices < 1:
            raise ValueError("a graph needs at least one vertex")
        normalized = []
        for e in self.edges:
            u, v = e
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise ValueError(f"edge {e} references a vertex outside 0..{self.n_vertices - 1}")
            if u == v:
                raise ValueError(f"edge {e} is a self-loop")
            normalized.append((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", tuple(normalized))
        if not self._connected():
            raise ValueError("graph is not connected")

    def _connected(self) -> bool:
        seen = {0}
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for w, _ in self.adjacency[u]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == self.n_vertices

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per vertex, the tuple of ``(neighbor, edge multiplicity)``."""
        mult: list[dict[int, int]] = [{} for _ in range(self.n_vertices)]
        for u, v in self.edges:
            mult[u][v] = mult[u].get(v, 0) + 1
            mult[v][u] = mult[v].get(u, 0) + 1
        return tuple(tuple(sorted(m.items())) for m in mult)

    @cached_property
    def valence(self) -> tuple[int, ...]:
        return tuple(sum(m for _, m in nbrs) for nbrs in self.adjacency)

    @property
    def genus(self) -> int:
        """Cyclomatic number |E| - |V| + 1."""
        return len(self.edges) - self.n_vertices + 1

    def to_json(self) -> dict:
        return {"vertices": self.n_vertices, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, data: dict) -> "FiniteGraph":
        return cls(int(data["vertices"]), tuple((int(u), int(v)) for u, v in data["edges"]))


@dataclass(frozen=True)
class VertexDivisor:
    coefficients: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(int(c) for c in self.coefficients))

    @property
    def degree(self) -> int:
        return sum(self.coefficients)

    def is_effective(self) -> bool:
        return all(c >= 0 for c in self.coefficients)

    def __add__(self, other: "VertexDivisor") -> "VertexDivisor":
        return VertexDivisor(tuple(a + b for a, b in zip(self.coefficients, other.coefficients, strict=True)))

    def __sub__(self, other: "VertexDivisor") -> "VertexDivisor":
        return VertexDivisor(tuple(a - b for a, b in zip(self.coefficients, other.coefficients, strict=True)))

    def __len__(self):
        return len(self.coefficients)

    @classmethod
    def zero(cls, n: int) -> "VertexDivisor":
        return cls((0,) * n)

    @classmethod
    def from_vertices(cls, n: int, vertices: Iterable[int]) -> "VertexDivisor":
        """Effective divisor with one chip per listed vertex (repeats add up)."""
        coeffs = [0] * n
        for v in vertices:
            coeffs[v] += 1
        return cls(tuple(coeffs))

    def to_json(self) -> dict:
        return {"coefficients": list(self.coefficients)}

    @classmethod
    def from_json(cls, data: dict) -> "VertexDivisor":
        return cls(tuple(int(c) for c in data["coefficients"]))


def _check_size(G: FiniteGraph, D: VertexDivisor):
    if len(D.coefficients) != G.n_vertices:
        raise ValueError(
            f"divisor has {len(D.coefficients)} coefficients but the graph has {G.n_vertices} vertices"
        )


def canonical_divisor(G: FiniteGraph) -> VertexDivisor:
    return VertexDivisor(tuple(k - 2 for k in G.valence))


def principal_divisor(G: FiniteGraph, f: Sequence[int]) -> VertexDivisor:
    """div(f)(v) = sum over edges e at v of f(v) - f(other end of e)."""
    if len(f) != G.n_vertices:
        raise ValueError("f must assign an integer to every vertex")
    out = [0] * G.n_vertices
    for u, v in G.edges:
        out[u] += f[u] - f[v]
        out[v] += f[v] - f[u]
    return VertexDivisor(tuple(out))


def burnt_set(G: FiniteGraph, coeffs: Sequence[int], q: int) -> list[bool]:
    """Run Dhar's fire from ``q``; a vertex survives while its chips cover the burnt edges reaching it."""
    adj = G.adjacency
    burnt = [False] * G.n_vertices
    burnt[q] = True
    hits = [0] * G.n_vertices
    stack = [q]
    while stack:
        u = stack.pop()
        for w, m in adj[u]:
            if not burnt[w]:
                hits[w] += m
                if hits[w] > coeffs[w]:
                    burnt[w] = True
                    stack.append(w)
    return burnt


def is_reduced(G: FiniteGraph, D: VertexDivisor, q: int) -> bool:
    _check_size(G, D)
    coeffs = D.coefficients
    if any(c < 0 for v, c in enumerate(coeffs) if v != q):
        return False
    return all(burnt_set(G, coeffs, q))


def _distances(G: FiniteGraph, q: int) -> list[int]:
    dist = [-1] * G.n_vertices
    dist[q] = 0
    queue = deque([q])
    while queue:
        u = queue.popleft()
        for w, _ in G.adjacency[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def _reduce_coeffs(G: FiniteGraph, coeffs: list[int], q: int) -> list[int]:
    adj = G.adjacency
    n = G.n_vertices

    # Stage 1: clear debt off q.  The far set A_k = {dist >= k} borrows from its
    # complement; every vertex at distance exactly k gains, nothing farther moves.
    dist = _distances(G, q)
    for k in range(max(dist), 0, -1):
        layer = [v for v in range(n) if dist[v] == k]
        gain = {v: sum(m for w, m in adj[v] if dist[w] == k - 1) for v in layer}
        need = max((-(coeffs[v] // gain[v]) for v in layer if coeffs[v] < 0), default=0)
        if need:
            for v in range(n):
                if dist[v] >= k:
                    continue
                for w, m in adj[v]:
                    if dist[w] >= k:
                        coeffs[v] -= need * m
                        coeffs[w] += need * m

    # Stage 2: fire the unburnt set until the fire consumes everything.
    while True:
        burnt = burnt_set(G, coeffs, q)
        if all(burnt):
            return coeffs
        unburnt = [v for v in range(n) if not burnt[v]]
        out = {v: sum(m for w, m in adj[v] if burnt[w]) for v in unburnt}
        times = min(coeffs[v] // out[v] for v in unburnt if out[v])
        for v in unburnt:
            if out[v]:
                for w, m in adj[v]:
                    if burnt[w]:
                        coeffs[v] -= times * m
                        coeffs[w] += times * m


def dhar_reduce(G: FiniteGraph, D: VertexDivisor, q: int) -> VertexDivisor:
    """The unique q-reduced divisor linearly equivalent to ``D``."""
    _check_size(G, D)
    if not 0 <= q < G.n_vertices:
        raise ValueError(f"base vertex {q} out of range")
    return VertexDivisor(tuple(_reduce_coeffs(G, list(D.coefficients), q)))


def linear_equivalent(G: FiniteGraph, D1: VertexDivisor, D2: VertexDivisor, q: int = 0) -> bool:
    if D1.degree != D2.degree:
        return False
    return dhar_reduce(G, D1, q) == dhar_reduce(G, D2, q)


def equivalent_to_effective(G: FiniteGraph, D: VertexDivisor, q: int = 0) -> bool:
    return dhar_reduce(G, D, q).coefficients[q] >= 0


def effective_divisors(n_vertices: int, degree: int) -> Iterator[VertexDivisor]:
    """All effective divisors of the given degree, as vertex multisets in lex order."""
    if degree < 0:
        return
    for combo in combinations_with_replacement(range(n_vertices), degree):
        yield VertexDivisor.from_vertices(n_vertices, combo)


def rank_baker_norine(G: FiniteGraph, D: VertexDivisor, q: int = 0) -> int:
    """Largest r such that D - E is equivalent to an effective divisor for every effective E of degree r."""
    _check_size(G, D)
    if D.degree < 0:
        return -1
    base = _reduce_coeffs(G, list(D.coefficients), q)
    if base[q] < 0:
        return -1
    n = G.n_vertices
    r = 0
    while r < D.degree:
        for combo in combinations_with_replacement(range(n), r + 1):
            trial = list(base)
            for v in combo:
                trial[v] -= 1
            if _reduce_coeffs(G, trial, q)[q] < 0:
                return r
        r += 1
    return r


def _effective_classes(G: FiniteGraph, degree: int, q: int) -> dict[tuple[int, ...], VertexDivisor]:
    """Reduced key -> first effective representative, over all effective divisors of ``degree``."""
    classes: dict[tuple[int, ...], VertexDivisor] = {}
    for D in effective_divisors(G.n_vertices, degree):
        key = tuple(_reduce_coeffs(G, list(D.coefficients), q))
        classes.setdefault(key, D)
    return classes


def divisor_classes_with_rank(G: FiniteGraph, degree: int, r: int, q: int = 0) -> list[VertexDivisor]:
    """One effective representative per class of degree ``degree`` and rank >= r."""
    if r < 0:
        raise ValueError("r must be non-negative")
    out = []
    for D in _effective_classes(G, degree, q).values():
        if rank_baker_norine(G, D, q) >= r:
            out.append(D)
    return out


def wrd_discrete(G: FiniteGraph, r: int, d: int, q: int = 0) -> int:
    """Brill-Noether number w^r_d of a finite graph by brute force."""
    if r < 0 or d < 0:
        raise ValueError("r and d must be non-negative")
    if d < r:
        return -1
    good = {
        tuple(_reduce_coeffs(G, list(D.coefficients), q))
        for D in divisor_classes_with_rank(G, d, r, q)
    }
    if not good:
        return -1
    n = G.n_vertices
    w = 0
    while w + 1 + r <= d:
        trial_w = w + 1
        for E in combinations_with_replacement(range(n), trial_w + r):
            base = [0] * n
            for v in E:
                base[v] += 1
            found = False
            for F in combinations_with_replacement(range(n), d - trial_w - r):
                c = list(base)
                for v in F:
                    c[v] += 1
                if tuple(_reduce_coeffs(G, c, q)) in good:
                    found = True
                    break
            if not found:
                return w
        w = trial_w
    return w
