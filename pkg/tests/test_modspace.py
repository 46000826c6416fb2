import random
from fractions import Fraction as F

import pytest

from hurwitz_scrambler.exactmath import CUSPS, ConstantFunction, Cusp, Polynomial, RationalFunction, parse_rational_function
from hurwitz_scrambler.jsr import Obstructed, decide_contraction
from hurwitz_scrambler.modspace import INFINITY, CuspLabelMap, build_scrambler, cusp_fiber_table, parse_labels
from hurwitz_scrambler.scrambler import EMPTY, ZERO

x = Polynomial.x()
DENDRITE_PHI = "(1-2/w)^2"
CUBIC_PHI = "(1+t)*(-1+3*t)^3/(16*t)"
CUBIC_RHO = "(-1+2*t+3*t^2)/(4*t)"


def edge_set(s):
    return {(e.src, e.dst, e.weight, e.count) for e in s.edges}


def random_function(rng, max_deg=6):
    while True:
        num = Polynomial([rng.randint(-4, 4) for _ in range(rng.randint(1, max_deg + 1))])
        den = Polynomial([rng.randint(-4, 4) for _ in range(rng.randint(1, max_deg + 1))])
        if num.is_zero() or den.is_zero():
            continue
        f = RationalFunction(num, den)
        if not f.is_constant():
            return f


def test_dendrite_table():
    phi = parse_rational_function(DENDRITE_PHI, "w")
    table = cusp_fiber_table(phi, RationalFunction.identity())
    got = {(c.source, c.target, c.phi_mult, c.rho_mult, str(c.factor)) for c in table}
    assert got == {
        (Cusp.INF, Cusp.ZERO, 2, 1, "x"),
        (Cusp.ZERO, None, 2, 0, "x - 2"),
        (Cusp.ONE, Cusp.ONE, 1, 1, "x - 1"),
        (Cusp.ONE, Cusp.INF, 1, 1, INFINITY),
    }


def test_fixed_cubic_table():
    phi = parse_rational_function(CUBIC_PHI, "t")
    rho = parse_rational_function(CUBIC_RHO, "t")
    table = cusp_fiber_table(phi, rho)
    for t in CUSPS:
        mine = [c for c in table if c.source == t]
        assert sorted((c.phi_mult, c.rho_mult) for c in mine) == [(1, 1), (3, 1)]
        assert all(c.target == t for c in mine)


def test_identity_table():
    table = cusp_fiber_table(RationalFunction.identity(), RationalFunction.identity())
    assert sorted((c.source.value, c.target.value, c.phi_mult, c.rho_mult) for c in table) == [
        ("0", "0", 1, 1),
        ("1", "1", 1, 1),
        ("inf", "inf", 1, 1),
    ]


def test_dendrite_build():
    phi = parse_rational_function(DENDRITE_PHI, "w")
    s = build_scrambler(phi, RationalFunction.identity(), {"0": "a", "inf": "b", "1": "c"})
    assert {(e.src, e.dst, e.weight) for e in s.edges} == {
        ("c", "c", ((F(1),),)),
        ("c", "b", ((F(1),),)),
        ("b", "a", ((F(1, 2),),)),
        ("a", EMPTY, ZERO),
    }
    assert isinstance(decide_contraction(s), Obstructed)


def test_fixed_cubic_build():
    phi = parse_rational_function(CUBIC_PHI, "t")
    rho = parse_rational_function(CUBIC_RHO, "t")
    s = build_scrambler(phi, rho, parse_labels("0=a,1=b,inf=c"))
    for v in "abc":
        assert {e.weight for e in s.edges if e.src == v} == {((F(1),),), ((F(1, 3),),)}
    assert all(e.src == e.dst for e in s.edges)
    assert len(s.edges) == 6


def test_identity_build():
    s = build_scrambler(RationalFunction.identity(), RationalFunction.identity(), parse_labels("0=p,1=q,inf=r"))
    assert edge_set(s) == {(v, v, ((F(1),),), 1) for v in "pqr"}


def test_labels():
    with pytest.raises(ValueError):
        parse_labels("0=a,1=a,inf=b")
    with pytest.raises(ValueError):
        parse_labels("0=a,1=b")
    with pytest.raises(ValueError):
        parse_labels("0=a,1=b,inf=empty")
    assert CuspLabelMap({"infinity": "z", "0": "x", "1": "y"})[Cusp.INF] == "z"


def test_constant_rejected():
    with pytest.raises(ConstantFunction):
        cusp_fiber_table(RationalFunction.constant(2), RationalFunction.identity())


def test_fiber_count_random():
    rng = random.Random(17)
    for _ in range(100):
        phi, rho = random_function(rng), random_function(rng)
        table = cusp_fiber_table(phi, rho)
        for t in CUSPS:
            assert sum(c.phi_mult * c.count for c in table if c.source == t) == phi.degree


def test_mobius_precomposition():
    rng = random.Random(23)
    phi = parse_rational_function(CUBIC_PHI, "t")
    rho = parse_rational_function(CUBIC_RHO, "t")
    labels = parse_labels("0=a,1=b,inf=c")
    ref = build_scrambler(phi, rho, labels)
    done = 0
    while done < 50:
        a, b, c, d = (F(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(4))
        if a * d - b * c == 0:
            continue
        m = RationalFunction.mobius(a, b, c, d)
        assert build_scrambler(phi.compose(m), rho.compose(m), labels) == ref
        done += 1


def test_postcomposition_relabels():
    swap = RationalFunction(1 - x)  # exchanges cusps 0 and 1
    phi = parse_rational_function(DENDRITE_PHI, "w")
    rho = RationalFunction.identity()
    labels = parse_labels("0=a,1=c,inf=b")
    ref = build_scrambler(phi, rho, labels)
    rename = {"a": "c", "c": "a"}
    got = build_scrambler(swap.compose(phi), rho, labels)
    assert edge_set(got) == {(rename.get(s, s), d, w, n) for s, d, w, n in edge_set(ref)}
    got = build_scrambler(phi, swap.compose(rho), labels)
    assert edge_set(got) == {(s, rename.get(d, d), w, n) for s, d, w, n in edge_set(ref)}
