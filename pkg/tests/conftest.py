import itertools
from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from cyclechain.chain_model import Cycle, DiscreteChain, TorsionProfile
from cyclechain.finite_graph_oracle import FiniteGraph, VertexDivisor
from cyclechain.tableau_engine import DisplacementTableau, GridShape, is_valid_tableau

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


CYCLE_OPTIONS = [Cycle(k, j) for k in range(2, 5) for j in range(2, k + 1)]


def small_chains(max_genus=3):
    """Every discrete chain with g <= max_genus and cycle sizes <= 4."""
    for g in range(1, max_genus + 1):
        for cycles in itertools.product(CYCLE_OPTIONS, repeat=g):
            yield DiscreteChain(cycles)


def bounded_divisors(n, max_degree, max_coeff=3):
    """Coefficient vectors in {0..max_coeff}^n with total degree <= max_degree."""
    def rec(i, left):
        if i == n:
            yield ()
            return
        for c in range(min(max_coeff, left) + 1):
            for rest in rec(i + 1, left - c):
                yield (c,) + rest
    for coeffs in rec(0, max_degree):
        yield VertexDivisor(coeffs)


def brute_tableaux(p: TorsionProfile, shape: GridShape):
    """All valid tableaux by trying every filling; only for tiny shapes."""
    cells = shape.cells()
    out = []
    for vals in itertools.product(range(1, p.genus + 1), repeat=len(cells)):
        t = DisplacementTableau.from_cells(shape, dict(zip(cells, vals)))
        if is_valid_tableau(t, p):
            out.append(t)
    return out


def is_principal(G: FiniteGraph, D: VertexDivisor) -> bool:
    """Solve L f = D over the rationals (with f(0) = 0) and test integrality."""
    n = G.n_vertices
    if D.degree != 0:
        return False
    if n == 1:
        return True
    L = [[Fraction(0)] * n for _ in range(n)]
    for u, v in G.edges:
        L[u][u] += 1
        L[v][v] += 1
        L[u][v] -= 1
        L[v][u] -= 1
    # drop vertex 0 (f(0) = 0, and its row is implied by degree 0)
    A = [row[1:] + [Fraction(D.coefficients[i])] for i, row in enumerate(L) if i]
    m = n - 1
    for col in range(m):
        piv = next(r for r in range(col, m) if A[r][col] != 0)
        A[col], A[piv] = A[piv], A[col]
        for r in range(m):
            if r != col and A[r][col] != 0:
                f = A[r][col] / A[col][col]
                A[r] = [a - f * b for a, b in zip(A[r], A[col])]
    return all((A[i][m] / A[i][i]).denominator == 1 for i in range(m))


def is_reduced_by_subsets(G: FiniteGraph, D: VertexDivisor, q: int) -> bool:
    """q-reduced straight from the definition: no nonempty S avoiding q can fire legally."""
    c = D.coefficients
    others = [v for v in range(G.n_vertices) if v != q]
    if any(c[v] < 0 for v in others):
        return False
    for size in range(1, len(others) + 1):
        for S in itertools.combinations(others, size):
            s = set(S)
            if all(c[v] >= sum(m for w, m in G.adjacency[v] if w not in s) for v in S):
                return False
    return True


@st.composite
def multigraphs(draw, max_vertices=5, max_edges=7):
    n = draw(st.integers(1, max_vertices))
    # spanning tree first, then extra (possibly parallel) edges
    edges = [(draw(st.integers(0, v - 1)), v) for v in range(1, n)]
    if n > 1:
        extra = draw(st.integers(0, max_edges - len(edges)))
        for _ in range(extra):
            u = draw(st.integers(0, n - 1))
            v = draw(st.integers(0, n - 1).filter(lambda x: x != u))
            edges.append((u, v))
    return FiniteGraph(n, tuple(edges))


@st.composite
def graph_and_divisor(draw, lo=-2, hi=3):
    G = draw(multigraphs())
    coeffs = draw(st.lists(st.integers(lo, hi), min_size=G.n_vertices, max_size=G.n_vertices))
    return G, VertexDivisor(tuple(coeffs))


@st.composite
def torsion_profiles(draw, min_genus=2, max_genus=8, allow_zero=True):
    g = draw(st.integers(min_genus, max_genus))
    lo = 0 if allow_zero else 2
    ms = draw(st.lists(st.sampled_from([m for m in [0, 1, 2, 3, 4, 5, g + 1] if m >= lo]),
                       min_size=g - 1, max_size=g - 1))
    return TorsionProfile(g, tuple(ms))
