import csv
import io
import random

import pytest

from facelat import lattice as lat
from facelat.bounds import (
    CSV_HEADER,
    BoundDomainError,
    EqualityClass,
    PreconditionError,
    _phi_unchecked,
    binomial,
    check_lower_bound,
    classify_equality,
    closed_fk_tdsm,
    count_kfaces_containing,
    facet_profile_check,
    phi,
    phi_table,
    prop_lower_sum,
    witness_sequence,
)
from facelat.lattice import members
from facelat.oracle import lattice_from_points, random_polytope

from conftest import SQUARE_PYRAMID_POINTS, TRIANGLE_BIPYRAMID_POINTS, corpus, points


def pascal(rows):
    tri = [[1]]
    for n in range(1, rows):
        prev = tri[-1]
        tri.append([1] + [prev[i - 1] + prev[i] for i in range(1, n)] + [1])
    return tri


PASCAL = pascal(40)


def test_binomial_examples():
    assert binomial(4, 2) == 6
    assert binomial(2, 3) == 0
    assert binomial(0, 0) == 1
    assert binomial(5, -1) == 0
    with pytest.raises(ValueError):
        binomial(-1, 0)


def test_binomial_matches_pascal():
    for n, row in enumerate(PASCAL):
        for k in range(-2, n + 3):
            expected = row[k] if 0 <= k <= n else 0
            assert binomial(n, k) == expected


def test_binomial_big():
    assert binomial(200, 100) == pascal(201)[200][100]


def test_phi_examples(square_pyramid):
    assert phi(2, 5, 3) == 5
    assert phi(2, 6, 5) == 20
    # edge count of the square pyramid, from the oracle
    geo = lattice_from_points(points(SQUARE_PYRAMID_POINTS))
    assert phi(1, 5, 3) == geo.f_vector()[1] == 8


def test_phi_facets_is_d_plus_2():
    for d in range(2, 13):
        for s in range(2, d + 1):
            assert phi(d - 1, d + s, d) == d + 2


def test_phi_domain():
    for args in [(0, 3, 3), (0, 7, 3), (3, 5, 3), (-1, 5, 3), (0, 1, 0)]:
        with pytest.raises(BoundDomainError):
            phi(*args)


def test_phi_vertices():
    for d in range(1, 13):
        for s in range(1, d + 1):
            assert phi(0, d + s, d) == d + s


def test_closed_fk_examples():
    assert closed_fk_tdsm(3, 4, 4, 2) == 9
    geo = lattice_from_points(points(TRIANGLE_BIPYRAMID_POINTS))
    assert closed_fk_tdsm(1, 3, 3, 1) == geo.f_vector()[1] == 9
    for d in range(2, 12):
        for m in range(1, d):
            assert closed_fk_tdsm(d - 1, d, d, m) == d + 1 + m * (d - m)
    with pytest.raises(ValueError):
        closed_fk_tdsm(0, 3, 1, 1)


@pytest.mark.parametrize("d", range(2, 7))
def test_closed_fk_matches_lattice(d):
    for a in range(2, d + 1):
        for m in range(1, a):
            f = lat.t_dsm(d, a, m).f_vector()
            assert tuple(closed_fk_tdsm(k, d, a, m) for k in range(d)) == f


# identities


def test_identity_differences():
    for d in range(1, 13):
        for k in range(d):
            for a in range(1, d + 1):
                for b in range(0, a):
                    lhs = _phi_unchecked(k, d + a, d) - _phi_unchecked(k, d + b, d)
                    mid = binomial(d + 1 - b, k + 1) - binomial(d + 1 - a, k + 1)
                    rhs = sum(binomial(d + 1 - b - i, k) for i in range(1, a - b + 1))
                    assert lhs == mid == rhs
                    if b >= 1:
                        assert phi(k, d + a, d) - phi(k, d + b, d) == rhs


def test_identity_simplex():
    for d in range(1, 13):
        for k in range(d):
            assert phi(k, d + 1, d) == binomial(d + 1, k + 1)


def test_identity_two_step():
    assert phi(1, 6, 3) + binomial(3, 1) + binomial(4, 1) == 16 == phi(1, 8, 4)
    checked = 0
    for d in range(2, 13):
        for s in range(1, d - 1):
            for k in range(d - 1):
                lhs = phi(k, d + s, d - 1) + binomial(d - 1, k) + binomial(d, k)
                assert lhs == phi(k, d + s + 2, d)
                checked += 1
    assert checked > 100


# counting and witness sequences


def test_count_kfaces_examples(square_pyramid):
    T3 = lat.simplex(3)
    for k in range(4):
        assert count_kfaces_containing(T3, {0}, k) == binomial(3, k)
    assert count_kfaces_containing(square_pyramid, {4}, 1) == 4
    for k in range(3):
        assert count_kfaces_containing(square_pyramid, range(5), k) == square_pyramid.f_vector()[k]
    with pytest.raises(ValueError):
        count_kfaces_containing(square_pyramid, set(), 1)
    with pytest.raises(ValueError):
        count_kfaces_containing(square_pyramid, {0}, 7)


def test_witness_examples():
    T3 = lat.simplex(3)
    assert witness_sequence(T3, [2]).faces == (T3.top,)
    w = witness_sequence(T3, [0, 1])
    assert w.face_sets() == [(0, 1, 2, 3), (1, 2, 3)]
    assert w.violations(T3) == []


def test_witness_errors(square_pyramid):
    with pytest.raises(ValueError):
        witness_sequence(square_pyramid, [0, 1, 2, 3])
    with pytest.raises(ValueError):
        witness_sequence(square_pyramid, [0, 0])
    with pytest.raises(ValueError):
        witness_sequence(square_pyramid, [])


def test_witness_deterministic(square_pyramid):
    a = witness_sequence(square_pyramid, [4, 0, 2])
    b = witness_sequence(square_pyramid, [4, 0, 2])
    assert a == b
    assert a.violations(square_pyramid) == []


@pytest.mark.parametrize("name", sorted(n for n in corpus() if corpus()[n].dim >= 2))
def test_witness_and_prop_bound_on_corpus(name):
    P = corpus()[name]
    rng = random.Random(name)
    for _ in range(5):
        m = rng.randint(1, min(P.dim, P.num_vertices))
        verts = rng.sample(range(P.num_vertices), m)
        w = witness_sequence(P, verts)
        assert w.violations(P) == []
        for k in range(P.dim + 1):
            assert count_kfaces_containing(P, verts, k) >= prop_lower_sum(P.dim, m, k)


# reports


def test_check_square_pyramid(square_pyramid):
    r = check_lower_bound(square_pyramid)
    assert r.slacks() == (0, 0, 0)
    assert r.equality_ks == {1}
    assert r.verdict == "Holds"
    assert r.equality_class is EqualityClass.TIGHT_ISOMORPHIC
    assert r.facet_profile is True


def test_check_octahedron(octahedron):
    r = check_lower_bound(octahedron)
    assert [row.phi_k for row in r.per_k] == [6, 9, 5]
    assert r.slacks() == (0, 3, 3)
    assert r.equality_class is EqualityClass.NOT_TIGHT
    assert r.facet_profile is None


def test_check_prism(prism):
    r = check_lower_bound(prism)
    assert prism.f_vector() == (6, 9, 5)
    assert r.slacks() == (0, 0, 0)
    assert r.equality_class is EqualityClass.TIGHT_ISOMORPHIC


def test_check_refuses_cube(cube):
    with pytest.raises(BoundDomainError):
        check_lower_bound(cube)


def test_check_simplex_has_no_class():
    r = check_lower_bound(lat.simplex(4))
    assert r.s == 1
    assert r.verdict == "Holds"
    assert r.equality_class is None


def test_violation_is_reported():
    # a fake lattice with too few edges must surface as ViolationAt, not pass
    from facelat.bounds import BoundReport, KRow

    r = BoundReport(3, 2, [KRow(0, 5, 5), KRow(1, 7, 8), KRow(2, 5, 5)])
    assert r.verdict == "ViolationAt(1)"
    assert not r.ok


def test_classify_examples(square_pyramid, prism, octahedron):
    assert classify_equality(square_pyramid) is EqualityClass.TIGHT_ISOMORPHIC
    assert classify_equality(prism) is EqualityClass.TIGHT_ISOMORPHIC
    assert classify_equality(octahedron) is EqualityClass.NOT_TIGHT
    with pytest.raises(BoundDomainError):
        classify_equality(lat.simplex(3))


def test_facet_profile(square_pyramid, prism, octahedron):
    assert sorted(len(members(G)) for G in square_pyramid.facets) == [3, 3, 3, 3, 4]
    assert facet_profile_check(square_pyramid)
    assert sorted(len(members(G)) for G in prism.facets) == [3, 3, 4, 4, 4]
    assert facet_profile_check(prism)
    with pytest.raises(PreconditionError):
        facet_profile_check(octahedron)


def test_report_csv(octahedron):
    text = check_lower_bound(octahedron).to_csv()
    rows = list(csv.reader(io.StringIO(text)))
    assert tuple(rows[0]) == CSV_HEADER
    assert rows[1:] == [["3", "3", "0", "6", "6", "0"], ["3", "3", "1", "12", "9", "3"], ["3", "3", "2", "8", "5", "3"]]


def test_report_json(square_pyramid):
    doc = check_lower_bound(square_pyramid).to_dict()
    assert doc["verdict"] == "Holds"
    assert doc["equality_class"] == "TightAndIsomorphicToDual_T1"
    assert doc["equality_ks"] == [1]


def test_phi_table_rows():
    rows = phi_table(5)
    assert (3, 2, 1, 8) in rows
    assert (3, 2, 2, 5) in rows
    assert (5, 1, 2, 20) in rows
    assert len(rows) == sum(d * d for d in range(1, 6))
    with pytest.raises(ValueError):
        phi_table(17)


@pytest.mark.parametrize("d, s", [(d, s) for d in range(2, 6) for s in range(2, d + 1)])
def test_random_samples_hold(d, s):
    for seed in range(10):
        r = check_lower_bound(lattice_from_points(random_polytope(d, d + s, seed)))
        assert r.ok, r.to_dict()
