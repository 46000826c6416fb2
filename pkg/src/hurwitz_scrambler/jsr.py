"""Joint-spectral-radius analysis of a scrambler's matrix family.

Bounds are exact rationals paired with a root: ``(base, root)`` stands for
``base ** (1/root)``.  Lower bounds come from the spectral radii of cycle
products, upper bounds from the largest max-norm of products of a fixed
length.  Products of a given length are enumerated level by level,
merging walks that share endpoints and product matrix since their
extensions are identical; this keeps the search exact while the number of
distinct products stays small for desk-scale graphs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .exactmath.matrix import Matrix, inf_norm
from .scrambler import (
    ZERO,
    BudgetExceeded,
    Cycle,
    Path,
    Scrambler,
    Weight,
    compose_along_path,
    compose_weights,
    elementary_cycles,
)
from .spectral import SpectralEnclosure, exact_spectral_radius, rho_enclosure, rho_less_than

__all__ = [
    "AllUnobstructed",
    "Budget",
    "Contracting",
    "CycleSpectrum",
    "JsrEstimate",
    "Obstructed",
    "ObstructedWitness",
    "RootBound",
    "Undecided",
    "cycle_spectra",
    "decide_contraction",
    "jsr_bounds",
    "level_max_norm",
    "rationality_by_level",
]


@dataclass(frozen=True)
class Budget:
    max_cycle_len: int = 12
    max_product_len: int = 16
    max_products: int = 1_000_000
    max_cycles: int = 100_000
    enclosure_width: Fraction = Fraction(1, 1024)
    # Certify contraction once every product of some length n has norm
    # below this.  Any value <= 1 is sound; 1/2 matches the classical
    # "eventually below 1/2" formulation of the joint spectral radius < 1.
    certificate_threshold: Fraction = Fraction(1, 2)

    def __post_init__(self):
        for name in ("max_cycle_len", "max_product_len", "max_products", "max_cycles"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.enclosure_width <= 0:
            raise ValueError("enclosure_width must be positive")
        if not 0 < self.certificate_threshold <= 1:
            raise ValueError("certificate_threshold must lie in (0, 1]")


@dataclass(frozen=True, order=False)
class RootBound:
    """The nonnegative real number ``base ** (1/root)``."""

    base: Fraction
    root: int

    def __post_init__(self):
        if self.base < 0 or self.root < 1:
            raise ValueError("RootBound needs base >= 0 and root >= 1")

    @property
    def approx(self) -> float:
        return float(self.base) ** (1.0 / self.root)

    def __le__(self, other: RootBound) -> bool:
        # a^(1/m) <= b^(1/n)  <=>  a^n <= b^m
        return self.base**other.root <= other.base**self.root

    def __lt__(self, other: RootBound) -> bool:
        return self.base**other.root < other.base**self.root

    def value_equal(self, other: RootBound) -> bool:
        return self.base**other.root == other.base**self.root

    def to_dict(self) -> dict:
        return {"base": str(self.base), "root": self.root, "approx": self.approx}


@dataclass(frozen=True)
class CycleSpectrum:
    cycle: Cycle
    product: Weight
    below_one: bool
    enclosure: SpectralEnclosure


@dataclass(frozen=True)
class JsrEstimate:
    lower: RootBound
    lower_witness: Cycle | None
    upper: RootBound
    levels_completed: int

    def __post_init__(self):
        if not self.lower <= self.upper:
            raise ValueError("lower bound exceeds upper bound")

    @property
    def upper_length(self) -> int:
        return self.upper.root

    @property
    def float_hint_lower(self) -> float:
        return self.lower.approx

    @property
    def float_hint_upper(self) -> float:
        return self.upper.approx

    def to_dict(self) -> dict:
        return {
            "lower": self.lower.to_dict(),
            "lower_witness": list(self.lower_witness.edges) if self.lower_witness else None,
            "upper": self.upper.to_dict(),
            "levels_completed": self.levels_completed,
        }


@dataclass(frozen=True)
class Contracting:
    level: int
    max_norm: Fraction

    exit_code = 0
    name = "Contracting"


@dataclass(frozen=True)
class Obstructed:
    witness: Cycle
    level: int
    product: Weight
    enclosure: SpectralEnclosure

    exit_code = 10
    name = "Obstructed"


@dataclass(frozen=True)
class Undecided:
    best: JsrEstimate | None
    report: str

    exit_code = 20
    name = "Undecided"


Verdict = Union[Contracting, Obstructed, Undecided]


@dataclass(frozen=True)
class AllUnobstructed:
    level: int
    closed_paths: int


@dataclass(frozen=True)
class ObstructedWitness:
    level: int
    path: Path
    product: Matrix


# -- spectra of cycles ---------------------------------------------------


def _product_enclosure(w: Weight, width: Fraction) -> SpectralEnclosure:
    if w is ZERO:
        return SpectralEnclosure(Fraction(0), Fraction(0), width, exact=True)
    return rho_enclosure(w, width, snap=True)


def _below_one(w: Weight) -> bool:
    return w is ZERO or rho_less_than(w, 1)


def cycle_spectra(
    s: Scrambler,
    max_len: int,
    width: Fraction = Fraction(1, 1024),
    max_cycles: int = 100_000,
) -> list[CycleSpectrum]:
    """Exact ``rho < 1`` decision and an enclosure for every elementary cycle."""
    out = []
    for cyc in elementary_cycles(s, max_len, max_cycles):
        w = compose_along_path(s, cyc.edges)
        out.append(CycleSpectrum(cyc, w, _below_one(w), _product_enclosure(w, width)))
    return out


# -- level-by-level product enumeration ---------------------------------


@dataclass
class _Level:
    n: int
    # (start vertex or None, current vertex, product) -> first edge sequence
    states: dict = field(default_factory=dict)
    walks: int = 0


def _first_level(s: Scrambler, keep_start: bool) -> _Level:
    lvl = _Level(1)
    for k, e in enumerate(s.edges):
        lvl.walks += 1
        if e.weight is ZERO:
            continue
        key = (e.src if keep_start else None, e.dst, e.weight)
        lvl.states.setdefault(key, (k,))
    return lvl


def _next_level(s: Scrambler, lvl: _Level, succ: dict[str, list[int]], cap: int) -> _Level:
    nxt = _Level(lvl.n + 1)
    for (start, cur, w), path in lvl.states.items():
        for k in succ[cur]:
            e = s.edges[k]
            nxt.walks += 1
            if e.weight is ZERO:
                continue
            key = (start, e.dst, compose_weights(e.weight, w))
            if key not in nxt.states:
                nxt.states[key] = path + (k,)
                if len(nxt.states) > cap:
                    raise BudgetExceeded(f"more than {cap} distinct products of length {nxt.n}")
    return nxt


def _levels(s: Scrambler, keep_start: bool, cap: int):
    succ = s.successors()
    lvl = _first_level(s, keep_start)
    if len(lvl.states) > cap:
        raise BudgetExceeded(f"more than {cap} distinct products of length 1")
    while True:
        yield lvl
        lvl = _next_level(s, lvl, succ, cap)


def level_max_norm(s: Scrambler, n: int, max_products: int = 1_000_000) -> Fraction:
    """Largest max-norm over all composable products of exactly ``n`` edges."""
    for lvl in _levels(s, False, max_products):
        if lvl.n == n:
            return max((inf_norm(w) for (_, _, w) in lvl.states), default=Fraction(0))
    raise AssertionError("unreachable")


def rationality_by_level(s: Scrambler, n: int, max_products: int = 1_000_000) -> AllUnobstructed | ObstructedWitness:
    """Search the closed edge-paths of length exactly ``n`` for ``rho >= 1``.

    Closed paths need not be elementary; repetitions of shorter cycles are
    included.  Among witnesses the lexicographically least edge sequence is
    returned, so the answer does not depend on enumeration details.
    """
    if n < 1:
        raise ValueError("n must be positive")
    for lvl in _levels(s, True, max_products):
        if lvl.n < n:
            continue
        closed = 0
        witnesses = []
        for (start, cur, w), path in lvl.states.items():
            if start != cur:
                continue
            closed += 1
            if not rho_less_than(w, 1):
                witnesses.append(path)
        if witnesses:
            best = min(witnesses)
            w = compose_along_path(s, best)
            return ObstructedWitness(n, Path.from_edges(s, best), w)
        return AllUnobstructed(n, closed)
    raise AssertionError("unreachable")


# -- bounds and verdict --------------------------------------------------


def _cycle_lower_bounds(s: Scrambler, budget: Budget) -> tuple[RootBound, Cycle | None]:
    best, witness = RootBound(Fraction(0), 1), None
    for cs in cycle_spectra(s, budget.max_cycle_len, budget.enclosure_width, budget.max_cycles):
        if cs.product is ZERO:
            continue
        exact = cs.enclosure.lo if cs.enclosure.exact else exact_spectral_radius(cs.product, cs.enclosure)
        base = exact if exact is not None else cs.enclosure.lo
        cand = RootBound(base, cs.cycle.length)
        if best < cand or (witness is not None and cand.value_equal(best) and cand.root < best.root):
            best, witness = cand, cs.cycle
    return best, witness


def jsr_bounds(s: Scrambler, budget: Budget = Budget()) -> JsrEstimate:
    """Certified ``lower <= jsr <= upper``.

    The upper bound is the best ``max_norm(n) ** (1/n)`` over the levels
    that could be enumerated within ``budget.max_products``; if not even
    the first level fits, ``BudgetExceeded`` propagates.
    """
    lower, witness = _cycle_lower_bounds(s, budget)
    upper: RootBound | None = None
    completed = 0
    try:
        for lvl in _levels(s, False, budget.max_products):
            if lvl.n > budget.max_product_len:
                break
            completed = lvl.n
            norm = max((inf_norm(w) for (_, _, w) in lvl.states), default=Fraction(0))
            cand = RootBound(norm, lvl.n)
            if upper is None or cand < upper:
                upper = cand
            if not lvl.states:
                break  # every longer product vanishes as well
    except BudgetExceeded:
        if upper is None:
            raise
    return JsrEstimate(lower, witness, upper, completed)


def decide_contraction(s: Scrambler, budget: Budget = Budget()) -> Verdict:
    """Three-valued verdict on whether the joint spectral radius is below 1.

    Obstructed: some elementary cycle has product with ``rho >= 1``; the
    shortest such cycle is reported.  Contracting(n): every product of
    ``n`` edges has max-norm below ``budget.certificate_threshold``, which
    bounds the joint spectral radius by ``threshold ** (1/n) < 1``.
    Undecided otherwise, including budget exhaustion.
    """
    notes = []
    try:
        spectra = cycle_spectra(s, budget.max_cycle_len, budget.enclosure_width, budget.max_cycles)
    except BudgetExceeded as exc:
        spectra = None
        notes.append(f"cycle enumeration: {exc}")
    if spectra is not None:
        bad = [cs for cs in spectra if not cs.below_one]
        if bad:
            cs = min(bad, key=lambda c: c.cycle.length)
            return Obstructed(cs.cycle, cs.cycle.length, cs.product, cs.enclosure)

    try:
        for lvl in _levels(s, False, budget.max_products):
            if lvl.n > budget.max_product_len:
                notes.append(f"no certificate up to length {budget.max_product_len}")
                break
            norm = max((inf_norm(w) for (_, _, w) in lvl.states), default=Fraction(0))
            if norm < budget.certificate_threshold:
                return Contracting(lvl.n, norm)
    except BudgetExceeded as exc:
        notes.append(f"product enumeration: {exc}")

    try:
        best = jsr_bounds(s, budget)
    except BudgetExceeded as exc:
        best = None
        notes.append(f"bounds: {exc}")
    return Undecided(best, "; ".join(notes))
