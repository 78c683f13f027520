import random

import pytest

from leray.exactlinalg import FgAbGroup, IntMatrix, cokernel_group, kernel
from leray.cohomology import (
    build,
    cohomology,
    cohomology_groups,
    convention_compare,
)
from leray.local_systems import (
    FlatnessError,
    LocalSystem,
    coinvariants,
    from_monodromy,
    invariants,
)
from leray.simplicial import circle, genus_surface, simplex, sphere2, torus2

from oracles import random_commuting_pair, random_unimodular


K2 = IntMatrix([[1, 2], [0, 1]])
K4 = IntMatrix([[1, 4], [0, 1]])


def gauge_twist(system, rng):
    """Conjugate a flat system by random unimodular gauges per vertex;
    holonomy, hence cohomology, is unchanged."""
    base = system.base
    m = system.fiber_rank
    g = {v: random_unimodular(rng, m) for v in range(base.vertex_count)}
    transports = {}
    for (u, v) in base.simplices(1):
        transports[(u, v)] = g[v] * system.transport(u, v) * \
            g[u].inverse_unimodular()
    return LocalSystem(base, m, transports)


def test_circle_constant():
    groups = cohomology_groups(circle(3), LocalSystem.constant(circle(3), 1))
    assert groups == [FgAbGroup(1, ()), FgAbGroup(1, ())]


@pytest.mark.parametrize("mat", [
    IntMatrix([[0, 1], [1, 0]]),
    IntMatrix([[1, 1], [0, 1]]),
    IntMatrix([[1, 0], [0, 1]]),
    IntMatrix([[0, -1], [1, 0]]),
])
def test_circle_is_mapping_torus(mat):
    x = circle(3)
    sys = from_monodromy(x, [mat])
    h0, h1 = cohomology_groups(x, sys)
    ident = IntMatrix.identity(2)
    assert h0 == FgAbGroup(kernel(mat - ident).ncols, ())
    assert h1 == cokernel_group(mat - ident)


def test_simplex_contractible():
    x = simplex(2)
    for m in (1, 2):
        groups = cohomology_groups(x, LocalSystem.constant(x, m))
        assert groups == [FgAbGroup(m, ()), FgAbGroup(0, ()), FgAbGroup(0, ())]


def test_torus_constant():
    groups = cohomology_groups(torus2(), LocalSystem.constant(torus2(), 1))
    assert groups == [FgAbGroup(1, ()), FgAbGroup(2, ()), FgAbGroup(1, ())]


def test_torus_paper_system():
    x = torus2()
    sys = from_monodromy(x, [K2, K4])
    h0, h1, h2 = cohomology_groups(x, sys)
    assert h0 == FgAbGroup(1, ())          # invariants: the class of the unit
    assert h2 == FgAbGroup(1, (2,))        # coinvariants: Z/2 (+) Z
    assert h1 == FgAbGroup(2, (2,))        # cross-checked by the Koszul oracle


def test_genus2_constant():
    x = genus_surface(2)
    groups = cohomology_groups(x, LocalSystem.constant(x, 1))
    assert groups == [FgAbGroup(1, ()), FgAbGroup(4, ()), FgAbGroup(1, ())]


def test_sphere_constant():
    groups = cohomology_groups(sphere2(), LocalSystem.constant(sphere2(), 2))
    assert groups == [FgAbGroup(2, ()), FgAbGroup(0, ()), FgAbGroup(2, ())]


def test_h0_equals_invariants_h_top_equals_coinvariants():
    rng = random.Random(23)
    for base_fn, n_gens in [(torus2, 2), (lambda: genus_surface(2), 4)]:
        x = base_fn()
        for _ in range(3):
            a, b = random_commuting_pair(rng, 2)
            mats = [a, b] if n_gens == 2 else \
                [a, b, a.power(rng.randint(-1, 1)), b.power(rng.randint(-1, 1))]
            sys = from_monodromy(x, mats)
            groups = cohomology_groups(x, sys)
            assert groups[0] == invariants(mats, 2).group
            assert groups[-1] == coinvariants(mats, 2).quotient


def test_constant_system_is_m_fold_integral_cohomology():
    x = torus2()
    groups = cohomology_groups(x, LocalSystem.constant(x, 3))
    assert groups == [FgAbGroup(3, ()), FgAbGroup(6, ()), FgAbGroup(3, ())]


def test_euler_characteristic_identity():
    rng = random.Random(31)
    cases = [
        (torus2(), 2), (sphere2(), 0), (genus_surface(2), 4), (circle(4), 1),
    ]
    for x, n_gens in cases:
        m = rng.randint(1, 3)
        if n_gens == 0:
            sys = LocalSystem.constant(x, m)
        elif n_gens == 1:
            sys = from_monodromy(x, [random_unimodular(rng, m)])
        else:
            a, b = random_commuting_pair(rng, m)
            mats = [a, b][:n_gens] + [a.power(-1), b][:max(0, n_gens - 2)]
            sys = from_monodromy(x, mats)
        groups = cohomology_groups(x, sys)
        total = sum((-1) ** p * g.free_rank for p, g in enumerate(groups))
        assert total == x.euler_characteristic() * m


def test_gauge_twist_invariance():
    rng = random.Random(17)
    x = torus2()
    sys = from_monodromy(x, [K2, K4])
    twisted = gauge_twist(sys, rng)
    assert cohomology_groups(x, twisted) == cohomology_groups(x, sys)


def test_convention_compare():
    rng = random.Random(41)
    x = torus2()
    cmp1 = convention_compare(x, LocalSystem.constant(x, 1))
    assert cmp1.isomorphic

    g2 = genus_surface(2)
    a, b = random_commuting_pair(rng, 2)
    sys = from_monodromy(g2, [a, b, a * b, b.power(-1)])
    assert convention_compare(g2, sys).isomorphic

    c4 = circle(4)
    sys = from_monodromy(c4, [IntMatrix([[1, 1], [0, 1]])])
    assert convention_compare(c4, sys).isomorphic


def test_differentials_square_to_zero_randomized():
    rng = random.Random(12)
    for x in [torus2(), sphere2(), genus_surface(2)]:
        n = 2 if x.n_simplices(0) == 7 else \
            (0 if x.n_simplices(0) == 4 else 4)
        if n:
            a, b = random_commuting_pair(rng, 2)
            mats = [a, b] * (n // 2)
            sys = from_monodromy(x, mats[:n])
        else:
            sys = LocalSystem.constant(x, 2)
        sys = gauge_twist(sys, rng)
        c = build(x, sys)
        for p in range(x.dimension):
            assert (c.differential(p + 1) * c.differential(p)).is_zero()


def test_build_rejects_nonflat():
    x = torus2()
    sys = from_monodromy(x, [K2, K4])
    edges = {(u, v): sys.transport(u, v) for (u, v) in x.simplices(1)}
    edges[(0, 1)] = edges[(0, 1)] * IntMatrix([[1, 1], [0, 1]])
    broken = LocalSystem(x, 2, edges)
    with pytest.raises(FlatnessError):
        build(x, broken)


def test_cohomology_lift_project_roundtrip():
    x = torus2()
    sys = from_monodromy(x, [K2, K4])
    for h in cohomology(build(x, sys)):
        n = h.quotient.ngens
        for j in range(n):
            coords = tuple(1 if i == j else 0 for i in range(n))
            assert h.project(h.lift(coords)) == coords
