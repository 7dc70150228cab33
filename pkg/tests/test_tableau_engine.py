import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cyclechain.chain_model import GENERIC, IntegerClass, MartensSpec, RepresentingDivisor, TorsionProfile, martens_special_profile
from cyclechain.tableau_engine import (
    DisplacementTableau,
    GridShape,
    compatible,
    empty_tableau,
    enumerate_tableaux,
    exists_compatible_tableau,
    find_tableau,
    hyperelliptic_tableau,
    is_valid_tableau,
    row_deletions,
    tableau_exists,
    two_row_by_deletion,
)

from conftest import brute_tableaux, torsion_profiles


def hyper(g):
    return TorsionProfile(g, (2,) * (g - 1))


def T(*rows):
    return DisplacementTableau(GridShape(len(rows[0]), len(rows)), rows)


def test_validity_examples():
    assert is_valid_tableau(hyperelliptic_tableau(6), hyper(6))
    assert not is_valid_tableau(T((3,), (3,)), hyper(4))
    assert not is_valid_tableau(T((1,), (1,)), hyper(2))
    assert not is_valid_tableau(T((1, 3), (2, 3)), hyper(3))  # 3 at x-y = 1 and 0, m_3 = 2
    assert not is_valid_tableau(T((1, 5)), hyper(4))  # out of range
    # m = 0: a value may appear only once
    assert not is_valid_tableau(T((1, 2), (2, 3)), TorsionProfile(3, (0, 2)))
    assert is_valid_tableau(T((1, 2), (2, 3)), TorsionProfile(3, (2, 2)))


def test_hyperelliptic_rows():
    assert hyperelliptic_tableau(3).rows == ((1, 2), (2, 3))
    assert hyperelliptic_tableau(2).rows == ((1,), (2,))
    with pytest.raises(ValueError):
        hyperelliptic_tableau(1)


def test_empty_shape():
    shape = GridShape(0, 3)
    assert list(enumerate_tableaux(hyper(3), shape)) == [empty_tableau(shape)]
    assert tableau_exists(TorsionProfile(2, (0,)), shape)
    D = RepresentingDivisor(1, (GENERIC, GENERIC))
    assert exists_compatible_tableau(hyper(2), D, shape) == empty_tableau(shape)


def test_unique_2x2_on_hyperelliptic_g3():
    assert list(enumerate_tableaux(hyper(3), GridShape(2, 2))) == [hyperelliptic_tableau(3)]


def test_compatible_examples():
    p = hyper(2)
    shape = GridShape(1, 2)
    assert exists_compatible_tableau(p, RepresentingDivisor(2, (IntegerClass(0), IntegerClass(0))), shape) is None
    w = exists_compatible_tableau(p, RepresentingDivisor(2, (IntegerClass(0), IntegerClass(1))), shape)
    assert w == T((1,), (2,))


SMALL_SHAPES = [GridShape(c, r) for c in range(1, 4) for r in range(1, 4) if c * r <= 6]


@pytest.mark.parametrize("p", [hyper(3), hyper(4), TorsionProfile(4, (0, 0, 0)), TorsionProfile(4, (3, 0, 2)),
                               TorsionProfile(5, (2, 0, 2, 2)), TorsionProfile(4, (1, 1, 1))])
def test_enumeration_against_brute_force(p):
    for shape in SMALL_SHAPES:
        if p.genus ** len(shape.cells()) > 20000:
            continue
        brute = brute_tableaux(p, shape)
        assert list(enumerate_tableaux(p, shape)) == sorted(
            brute, key=lambda t: [t(x, y) for x, y in shape.cells()])
        assert tableau_exists(p, shape) == bool(brute)


@given(torsion_profiles(max_genus=9), st.integers(1, 5), st.integers(1, 3))
def test_dp_existence_matches_enumeration(p, cols, rows):
    shape = GridShape(cols, rows)
    first = next(iter(enumerate_tableaux(p, shape)), None)
    found = find_tableau(p, shape)
    assert (first is None) == (found is None)
    if found is not None:
        assert found.shape == shape and is_valid_tableau(found, p)


@given(torsion_profiles(max_genus=10), st.data())
def test_deletion_completeness(p, data):
    """Two-row tableaux are exactly the hyperelliptic rows with l values deleted from each."""
    l = data.draw(st.integers(0, min(4, p.genus - 2)))
    shape = GridShape(p.genus - l - 1, 2)
    direct = set(enumerate_tableaux(p, shape))
    assert set(two_row_by_deletion(p, l)) == direct
    for t in direct:
        top, bottom = row_deletions(t, p.genus)
        assert len(top) == len(bottom) == l


def test_deletion_zero_is_hyperelliptic():
    for g in range(2, 8):
        assert list(two_row_by_deletion(hyper(g), 0)) == [hyperelliptic_tableau(g)]


def test_deletions_around_torsion_free_cycle():
    p = martens_special_profile(MartensSpec(5, (3,)), "metric")
    tabs = list(two_row_by_deletion(p, 1))
    assert tabs
    patterns = {row_deletions(t, 5) for t in tabs}
    for top, bottom in patterns:
        assert 3 in top + bottom
        assert set(top + bottom) <= {2, 3, 4}
    assert ((3,), (3,)) in patterns


def test_single_column_pairs():
    p = TorsionProfile(4, (2, 3, 0))
    expected = {T((a,), (b,)) for a, b in itertools.combinations(range(1, 5), 2)}
    assert set(two_row_by_deletion(p, 2)) == expected


@given(torsion_profiles(max_genus=6), st.data())
def test_witness_is_compatible(p, data):
    positions = tuple(
        data.draw(st.one_of(st.just(GENERIC), st.integers(-3, 3).map(IntegerClass))) for _ in range(p.genus)
    )
    D = RepresentingDivisor(p.genus, positions)
    shape = GridShape(data.draw(st.integers(1, 3)), data.draw(st.integers(1, 3)))
    w = exists_compatible_tableau(p, D, shape)
    brute = [t for t in enumerate_tableaux(p, shape) if compatible(t, p, D)]
    assert (w is None) == (not brute)
    if w is not None:
        assert is_valid_tableau(w, p) and compatible(w, p, D)


@given(torsion_profiles(max_genus=8), st.integers(1, 4), st.integers(1, 3))
def test_monotone_in_shape(p, cols, rows):
    # a tableau on a bigger shape restricts to one on a smaller shape
    if tableau_exists(p, GridShape(cols, rows)):
        assert tableau_exists(p, GridShape(cols - 1, rows)) if cols > 1 else True
        assert tableau_exists(p, GridShape(cols, rows - 1)) if rows > 1 else True


def test_tableau_json_round_trip():
    t = hyperelliptic_tableau(5)
    assert DisplacementTableau.from_json(t.to_json()) == t
    with pytest.raises(ValueError):
        DisplacementTableau(GridShape(2, 2), ((1, 2),))


def test_first_and_last_values_appear():
    # with the middle cycle free of torsion, every [3 x 2] tableau on g=5 still uses 1 and 5
    p = martens_special_profile(MartensSpec(5, (3,)), "metric")
    for t in enumerate_tableaux(p, GridShape(3, 2)):
        assert {1, 5} <= t.image()
