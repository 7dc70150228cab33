import itertools
import random

import pytest
from hypothesis import given

from cyclechain.chain_model import (
    GENERIC,
    Cycle,
    DiscreteChain,
    IntegerClass,
    MartensSpec,
    RepresentingDivisor,
    TorsionProfile,
    martens_special_profile,
    realize_discrete_chain,
)
from cyclechain.finite_graph_oracle import VertexDivisor, canonical_divisor, divisor_classes_with_rank, rank_baker_norine
from cyclechain.rank_engine import (
    GonalityReport,
    allowed_by_riemann_roch_and_clifford,
    clifford_index,
    divisorial_complete_report,
    exists_rank_exactly,
    gonality_sequence,
    lemma_e1_bounds,
    rank_discrete,
    rank_metric,
)
from cyclechain.tableau_engine import compatible, is_valid_tableau

from conftest import torsion_profiles


def hyper(g):
    return TorsionProfile(g, (2,) * (g - 1))


def metric(g, js):
    return martens_special_profile(MartensSpec(g, js), "metric")


def test_rank_metric_examples():
    assert rank_metric(TorsionProfile(1, ()), RepresentingDivisor(2, (IntegerClass(5),))).rank == 1
    assert rank_metric(TorsionProfile(1, ()), RepresentingDivisor(2, (GENERIC,))).rank == 1
    p = hyper(2)
    res = rank_metric(p, RepresentingDivisor(2, (IntegerClass(0), IntegerClass(1))))
    assert res.rank == 1 and is_valid_tableau(res.witness, p)
    assert compatible(res.witness, p, RepresentingDivisor(2, (IntegerClass(0), IntegerClass(1))))
    assert rank_metric(p, RepresentingDivisor(2, (IntegerClass(0), IntegerClass(0)))).rank == 0
    assert rank_metric(p, RepresentingDivisor(-1, (GENERIC, GENERIC))).rank == -1
    with pytest.raises(ValueError):
        rank_metric(p, RepresentingDivisor(2, (GENERIC,)))


def test_rank_discrete_examples():
    chain = DiscreteChain((Cycle(3, 2), Cycle(4, 3), Cycle(2, 2)))
    G = chain.graph()
    K = canonical_divisor(G)
    assert K.degree == 2 * chain.genus - 2
    assert rank_discrete(chain, K).rank == chain.genus - 1
    assert rank_discrete(chain, VertexDivisor.zero(G.n_vertices)).rank == 0
    assert rank_discrete(chain, chain.divisor([(2, 3, 1)])).rank == 0


def random_chain(rng, g):
    return DiscreteChain(tuple(
        Cycle(k, rng.randint(2, k)) for k in (rng.randint(2, 5) for _ in range(g))
    ))


@pytest.mark.parametrize("g", [4, 5])
def test_rank_discrete_against_oracle_random(g):
    rng = random.Random(1000 + g)
    for _ in range(100):
        chain = random_chain(rng, g)
        n = chain.n_vertices
        d = rng.randint(0, 2 * g - 2)
        coeffs = [0] * n
        for _ in range(d):
            coeffs[rng.randrange(n)] += 1
        D = VertexDivisor(tuple(coeffs))
        assert rank_discrete(chain, D).rank == rank_baker_norine(chain.graph(), D), (chain, D)


def test_rank_on_martens_special_chain_against_oracle():
    chain = realize_discrete_chain(martens_special_profile(MartensSpec(5, (3,)), "discrete"))
    G = chain.graph()
    for d in range(0, 5):
        for D in divisor_classes_with_rank(G, d, 0):
            assert rank_discrete(chain, D).rank == rank_baker_norine(G, D)


def test_hyperelliptic_sequence():
    seq = gonality_sequence(hyper(6), 7).sequence
    assert [seq[r] for r in range(1, 8)] == [2, 4, 6, 8, 10, 12, 13]
    G = realize_discrete_chain(hyper(6)).graph()
    for r in (1, 2, 3):
        assert divisor_classes_with_rank(G, seq[r], r)
        assert not divisor_classes_with_rank(G, seq[r] - 1, r)


def test_sequence_examples():
    seq = gonality_sequence(metric(10, (3, 5)), 12).sequence
    assert [seq[r] for r in range(1, 13)] == [4, 6, 8, 10, 12, 14, 16, 17, 18, 20, 21, 22]
    with pytest.raises(ValueError):
        gonality_sequence(hyper(3), 0)


def test_report_must_increase():
    with pytest.raises(AssertionError):
        GonalityReport(3, {1: 2, 2: 2})
    rep = gonality_sequence(metric(5, (3,)), 3)
    assert rep.gonality == 3 and rep.clifford == 1
    assert rep.to_json()["sequence"][2] == {"r": 3, "g_r": 7}


def test_clifford_examples():
    assert clifford_index(hyper(5)) == 0
    assert clifford_index(metric(5, (3,))) == 1
    assert clifford_index(metric(10, (3, 5))) == 2
    assert clifford_index(metric(12, (3, 5, 7))) == 3
    with pytest.raises(ValueError):
        clifford_index(TorsionProfile(3, (0, 0)))


def test_e1_examples():
    assert lemma_e1_bounds(hyper(6))
    p = metric(10, (3, 5))
    assert lemma_e1_bounds(p)
    seq = gonality_sequence(p, 7).sequence
    assert all(seq[r] == seq[1] + 2 * r - 2 for r in range(1, 8))


@given(torsion_profiles(min_genus=2, max_genus=8, allow_zero=False))
def test_e1_random(p):
    assert lemma_e1_bounds(p)


def candidate_ranks(p, d, window=5):
    """Ranks realized at degree d, scanning every position up to torsion plus a window on torsion-free cycles."""
    options = []
    for i in range(1, p.genus + 1):
        m = p.torsion(i)
        xs = range(m) if m else range(-window, window + 1)
        options.append([GENERIC] + [IntegerClass(x) for x in xs])
    return {rank_metric(p, RepresentingDivisor(d, pos)).rank for pos in itertools.product(*options)}


def test_rank_exactly_against_candidate_scan():
    p = metric(5, (3,))
    for d in range(0, 9):
        realized = candidate_ranks(p, d) - {-1}
        for r in range(0, d + 1):
            w = exists_rank_exactly(p, d, r)
            assert (w is not None) == (r in realized), (d, r)
            if w is not None:
                assert rank_metric(p, w).rank == r


def test_rank_exactly_examples():
    p = metric(10, (3, 5))
    g, k = 10, 2
    assert exists_rank_exactly(p, 2 * g - 2, g - 1) is not None
    for r in range(1, g - k):
        for d in (k + 2 * r, g + r - 2):
            if k + 2 * r <= d <= g + r - 2:
                assert exists_rank_exactly(p, d, r) is not None, (d, r)
        assert exists_rank_exactly(p, k + 2 * r - 1, r) is None
    assert exists_rank_exactly(p, -2, -1) is not None
    assert exists_rank_exactly(p, 3, -1) is None


def test_allowed_cells():
    # g = 5, Clifford index 1
    assert allowed_by_riemann_roch_and_clifford(5, 1, 3, 1)
    assert not allowed_by_riemann_roch_and_clifford(5, 1, 2, 1)
    assert allowed_by_riemann_roch_and_clifford(5, 1, 8, 4)
    assert allowed_by_riemann_roch_and_clifford(5, 1, 4, 0)
    assert not allowed_by_riemann_roch_and_clifford(5, 1, 6, 0)


@pytest.mark.parametrize("p, c", [(metric(5, (3,)), 1), (hyper(4), 0)])
def test_divisorial_complete_examples(p, c):
    rep = divisorial_complete_report(p)
    assert rep.clifford == c
    assert rep.passed, [cell.to_json() for cell in rep.failures()]
    assert len(rep.cells) == sum(d + 1 for d in range(2 * p.genus - 1))


def test_riemann_roch_on_tableau_ranks():
    rng = random.Random(7)
    for _ in range(40):
        chain = random_chain(rng, rng.randint(2, 4))
        G = chain.graph()
        K = canonical_divisor(G)
        coeffs = [rng.randint(0, 2) for _ in range(G.n_vertices)]
        D = VertexDivisor(tuple(coeffs))
        assert rank_discrete(chain, D).rank - rank_discrete(chain, K - D).rank == D.degree - chain.genus + 1
