"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line shown in the terminal summary; run
``pytest tests/test_acceptance.py -s`` to see them inline as well.
"""

import random
import sys
import time
from fractions import Fraction as F

import numpy as np
import pytest

from hurwitz_scrambler import load_portrait, load_scrambler
from hurwitz_scrambler.cli import main
from hurwitz_scrambler.exactmath import CUSPS, Polynomial, RationalFunction, parse_rational_function
from hurwitz_scrambler.exactmath.matrix import as_matrix, is_zero_matrix, matmul
from hurwitz_scrambler.jsr import (
    AllUnobstructed,
    Contracting,
    Obstructed,
    ObstructedWitness,
    cycle_spectra,
    decide_contraction,
    jsr_bounds,
    rationality_by_level,
)
from hurwitz_scrambler.modspace import build_scrambler, cusp_fiber_table, parse_labels
from hurwitz_scrambler.portrait import CaseKind, check_invariant_matrix, classify, iterate
from hurwitz_scrambler.scrambler import (
    ZERO,
    compose_along_path,
    compose_weights,
    elementary_cycles,
    iter_walks,
    parse_scrambler,
)
from hurwitz_scrambler.spectral import is_nilpotent, rho_enclosure, rho_less_than

FIXTURES = ("rabbit", "dendrite", "fixed_cubic", "twisted_cubic", "cubic5")
ONE = ((F(1),),)
THIRD = ((F(1, 3),),)


def cli_build(*argv):
    import io

    out = io.StringIO()
    code = main(["build", *argv], out=out)
    return code, parse_scrambler(out.getvalue())


def test_c1_dendrite_builder(criterion):
    criterion("1 dendrite builder emits c->c [1], c->b [1], b->a [1/2], a->empty 0")
    t0 = time.perf_counter()
    code, s = cli_build("--phi", "(1-2/w)^2", "--rho", "w", "--labels", "0=a,inf=b,1=c")
    elapsed = time.perf_counter() - t0
    assert code == 0
    assert sorted((e.src, e.dst, e.weight) for e in s.edges) == sorted(
        [("c", "c", ONE), ("c", "b", ONE), ("b", "a", ((F(1, 2),),)), ("a", "empty", ZERO)]
    )
    assert elapsed < 1


def test_c2_fixed_cubic_builder(criterion):
    criterion("2 fixed-cubic builder emits loops {[1], [1/3]} at each cusp vertex only")
    t0 = time.perf_counter()
    code, s = cli_build(
        "--phi", "(1+t)*(-1+3*t)^3/(16*t)", "--rho", "(-1+2*t+3*t^2)/(4*t)", "--labels", "0=a,1=b,inf=c"
    )
    elapsed = time.perf_counter() - t0
    assert code == 0
    assert len(s.edges) == 6
    for v in "abc":
        loops = [e for e in s.edges if e.src == v]
        assert all(e.dst == v for e in loops)
        assert {e.weight for e in loops} == {ONE, THIRD}
    assert elapsed < 1


def test_c3_rabbit(criterion):
    criterion("3 rabbit: Contracting(3), JSR bounds (1/4, root 3) both sides, hint 0.62996")
    t0 = time.perf_counter()
    s = load_scrambler("rabbit")
    verdict = decide_contraction(s)
    est = jsr_bounds(s)
    elapsed = time.perf_counter() - t0
    assert isinstance(verdict, Contracting) and verdict.level == 3
    assert (est.lower.base, est.lower.root) == (F(1, 4), 3)
    assert (est.upper.base, est.upper.root) == (F(1, 4), 3)
    assert abs(est.float_hint_lower - 0.62996) <= 1e-4
    assert abs(est.float_hint_upper - 0.62996) <= 1e-4
    assert elapsed < 1


def test_c4_dendrite(criterion):
    criterion("4 dendrite: Obstructed by the loop at c, sigma < 1 is false")
    s = load_scrambler("dendrite")
    v = decide_contraction(s)
    assert isinstance(v, Obstructed)
    assert v.witness.length == 1 and v.witness.vertices == ("c", "c")
    assert rho_less_than(v.product, 1) is False


def test_c5_cubic5(criterion):
    criterion("5 cubic #P=5: even cycles, odd levels unobstructed, level 2 witness with sigma >= 1")
    t0 = time.perf_counter()
    s = load_scrambler("cubic5")
    cycles = elementary_cycles(s, 12)
    assert cycles and all(c.length % 2 == 0 for c in cycles)
    for n in (1, 3, 5):
        assert isinstance(rationality_by_level(s, n), AllUnobstructed)
    w = rationality_by_level(s, 2)
    assert isinstance(w, ObstructedWitness)
    assert w.path.is_closed and w.path.length == 2
    assert not rho_less_than(w.product, 1)
    decide_contraction(s)
    assert time.perf_counter() - t0 < 5


def test_c6_twisted_cubic(criterion):
    criterion("6 twisted cubic: levels 1, 2 unobstructed; level 3 witness with sigma exactly 1")
    s = load_scrambler("twisted_cubic")
    assert isinstance(rationality_by_level(s, 1), AllUnobstructed)
    assert isinstance(rationality_by_level(s, 2), AllUnobstructed)
    w = rationality_by_level(s, 3)
    assert isinstance(w, ObstructedWitness)
    assert rho_less_than(w.product, 1) is False
    assert rho_less_than(w.product, 1 + F(1, 1024)) is True


def test_c7_portraits(criterion):
    criterion("7 portraits: cubic Case4(2,2), its square NotCovered, rabbit Case2 for n<=6, dendrite NotCovered")
    cubic = load_portrait("cubic5")
    case = classify(cubic)
    assert case.kind is CaseKind.CASE4 and (case.p, case.k) == (2, 2)
    assert classify(iterate(cubic, 2)).kind is CaseKind.NOT_COVERED
    rabbit = load_portrait("rabbit")
    for n in range(1, 7):
        assert classify(iterate(rabbit, n)).kind is CaseKind.CASE2
    assert classify(load_portrait("dendrite")).kind is CaseKind.NOT_COVERED


def _power_iteration(a: np.ndarray, iters: int = 20000, tol: float = 1e-13) -> float:
    # shift by I so the dominant eigenvalue is unique in modulus
    m = a + np.eye(len(a))
    v = np.ones(len(a))
    lam = 0.0
    for _ in range(iters):
        w = m @ v
        new = np.linalg.norm(w, np.inf)
        v = w / new
        if abs(new - lam) < tol:
            break
        lam = new
    return new - 1.0


def test_c8_spectral_oracle(criterion):
    criterion("8 spectral oracle: 500 random matrices vs power iteration, 50 theta each")
    rng = random.Random(2024)
    width = F(1, 2**20)
    t0 = time.perf_counter()
    for _ in range(500):
        n = rng.randint(1, 6)
        a = tuple(tuple(F(rng.randint(0, 20), rng.randint(1, 20)) for _ in range(n)) for _ in range(n))
        enc = rho_enclosure(a, width)
        oracle = _power_iteration(np.array(a, dtype=float))
        tol = 1e-6 + float(enc.width)
        assert float(enc.lo) - tol <= oracle <= float(enc.hi) + tol
        top = 2 * enc.hi + 1
        for k in range(50):
            if k % 5 == 0 and enc.hi > 0:
                theta = enc.lo + (enc.hi - enc.lo) * F(rng.randint(1, 9), 10)
            else:
                theta = top * F(rng.randint(1, 1000), 1000)
            less = rho_less_than(a, theta)
            if theta > enc.hi:
                assert less
            elif theta <= enc.lo:
                assert not less
    assert time.perf_counter() - t0 < 60


def _random_function(rng: random.Random) -> RationalFunction:
    while True:
        num = Polynomial([rng.randint(-5, 5) for _ in range(rng.randint(1, 7))])
        den = Polynomial([rng.randint(-5, 5) for _ in range(rng.randint(1, 7))])
        if num.is_zero() or den.is_zero():
            continue
        f = RationalFunction(num, den)
        if not f.is_constant():
            return f


def test_c9_invariants(criterion):
    criterion("9 invariants: associativity, zero absorption, nilpotency, fiber count, Moebius, exclusion")
    rng = random.Random(9)
    scramblers = {name: load_scrambler(name) for name in FIXTURES}

    for s in scramblers.values():
        for n in range(1, 5):
            for walk in list(iter_walks(s, n))[:300]:
                whole = compose_along_path(s, walk)
                for cut in range(1, n):
                    assert compose_weights(compose_along_path(s, walk[cut:]), compose_along_path(s, walk[:cut])) == whole
                if whole is ZERO:
                    continue
                src, dst = s.edges[walk[0]].src, s.edges[walk[-1]].dst
                e = s.embed(whole, src, dst)
                if src == dst:
                    assert not is_nilpotent(e)
                else:
                    assert is_zero_matrix(matmul(e, e))
        for k, e in enumerate(s.edges):
            for j, f in enumerate(s.edges):
                if e.dst != f.src:
                    assert compose_along_path(s, [k, j]) is ZERO
            assert compose_weights(ZERO, e.weight) is ZERO and compose_weights(e.weight, ZERO) is ZERO

    for _ in range(100):
        phi, rho = _random_function(rng), _random_function(rng)
        table = cusp_fiber_table(phi, rho)
        for t in CUSPS:
            assert sum(c.phi_mult * c.count for c in table if c.source == t) == phi.degree

    phi = parse_rational_function("(1+t)*(-1+3*t)^3/(16*t)", "t")
    rho = parse_rational_function("(-1+2*t+3*t^2)/(4*t)", "t")
    labels = parse_labels("0=a,1=b,inf=c")
    ref = build_scrambler(phi, rho, labels)
    done = 0
    while done < 50:
        a, b, c, d = (F(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(4))
        if a * d == b * c:
            continue
        m = RationalFunction.mobius(a, b, c, d)
        assert build_scrambler(phi.compose(m), rho.compose(m), labels) == ref
        done += 1

    for s in scramblers.values():
        v = decide_contraction(s)
        obstructed = any(not cs.below_one for cs in cycle_spectra(s, 12))
        if isinstance(v, Contracting):
            assert not obstructed
        if obstructed:
            assert isinstance(v, Obstructed)


def test_c10_levy_bound(criterion):
    criterion("10 invariant-matrix check: [1/4] meets sigma^4 < 1/2, [1] sits on the Levy boundary")
    r = check_invariant_matrix(as_matrix([["1/4"]]), 4)
    assert r.entry_form_ok and r.bound_ok
    r = check_invariant_matrix(as_matrix([[1]]), 4)
    assert r.entry_form_ok and not r.sigma_below_one and not r.bound_ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
