from itertools import permutations

import pytest

from facelat import lattice as lat
from facelat.lattice import members
from facelat.oracle import PointConfig, lattice_from_points, random_polytope

SQUARE_PYRAMID_POINTS = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0), ("1/2", "1/2", 1)]
PRISM_POINTS = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 0, 1), (0, 1, 1)]
CUBE_POINTS = [(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)]
OCTAHEDRON_POINTS = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
TRIANGLE_BIPYRAMID_POINTS = [(0, 0, 0), (1, 0, 0), (0, 1, 0), ("1/3", "1/3", 1), ("1/3", "1/3", -1)]


def points(pts):
    return PointConfig.of(pts)


def brute_force_isomorphic(P, Q):
    """Try every vertex permutation; only usable for tiny n."""
    if (P.dim, P.num_vertices) != (Q.dim, Q.num_vertices):
        return False
    target = set(Q.facets)
    for perm in permutations(range(P.num_vertices)):
        image = {sum(1 << perm[v] for v in members(G)) for G in P.facets}
        if image == target:
            return True
    return False


def build_corpus():
    c = {}
    for s in range(0, 7):
        c[f"simplex({s})"] = lat.simplex(s)
    for d in range(2, 7):
        for s in range(2, d + 1):
            for m in range(1, s):
                T = lat.t_dsm(d, s, m)
                c[f"tdsm({d},{s},{m})"] = T
                c[f"dual(tdsm({d},{s},{m}))"] = lat.dual(T)
    for s in range(1, 5):
        c[f"bipyr(simplex({s}))"] = lat.bipyramid(lat.simplex(s))
    square = lat.direct_sum_simplices(1, 1)
    octa = lat.bipyramid(square)
    c["octahedron"] = octa
    c["cube"] = lat.dual(octa)
    c["cross4"] = lat.bipyramid(octa)
    c["pyr(cube)"] = lat.pyramid(lat.dual(octa))
    c["bipyr(tdsm(3,2,1))"] = lat.bipyramid(lat.t_dsm(3, 2, 1))
    c["dsum(2,2)"] = lat.direct_sum_simplices(2, 2)
    c["prism"] = lattice_from_points(points(PRISM_POINTS))
    for d in range(2, 6):
        for s in range(1, d + 1):
            for seed in range(3):
                c[f"random({d},{d + s},{seed})"] = lattice_from_points(random_polytope(d, d + s, seed))
    return c


_CORPUS = None


def corpus():
    global _CORPUS
    if _CORPUS is None:
        _CORPUS = build_corpus()
    return _CORPUS


@pytest.fixture(scope="session")
def lattice_corpus():
    return corpus()


@pytest.fixture
def square_pyramid():
    return lat.build_from_incidence([[0, 1, 2, 3], [0, 1, 4], [1, 2, 4], [2, 3, 4], [0, 3, 4]], 3, 5)


@pytest.fixture
def octahedron():
    return lattice_from_points(points(OCTAHEDRON_POINTS))


@pytest.fixture
def prism():
    return lattice_from_points(points(PRISM_POINTS))


@pytest.fixture
def cube():
    return lattice_from_points(points(CUBE_POINTS))


# one line per acceptance criterion, repeated in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
