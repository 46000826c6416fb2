"""Critical-orbit portraits of topological polynomials.

A portrait records a map ``tau`` on a finite vertex set containing the
critical points and the postcritical set, with the local degree at each
vertex.  ``classify`` decides the four sufficient and necessary
conditions under which every topological polynomial with the portrait is
unobstructed; ``check_invariant_matrix`` tests the structural facts about
Thurston matrices of completely invariant multicurves for polynomials.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .exactmath.matrix import Matrix, NegativeEntry, check_square
from .spectral import exact_spectral_radius, rho_less_than, rho_power_less_than

__all__ = [
    "INF",
    "CaseKind",
    "InvariantMatrixReport",
    "NonFunctionalMap",
    "Portrait",
    "PortraitCase",
    "PortraitError",
    "PortraitSyntaxError",
    "RiemannHurwitzViolation",
    "SigmaClass",
    "check_invariant_matrix",
    "classify",
    "iterate",
    "parse_portrait",
    "serialize_portrait",
]

INF = "inf"


class PortraitError(ValueError):
    pass


class PortraitSyntaxError(PortraitError, SyntaxError):
    pass


class RiemannHurwitzViolation(PortraitError):
    pass


class NonFunctionalMap(PortraitError):
    pass


def _orbit(tau: Mapping[str, str], v: str) -> list[str]:
    seen, out = set(), []
    while v not in seen:
        seen.add(v)
        out.append(v)
        v = tau[v]
    return out


@dataclass(frozen=True)
class Portrait:
    """A polynomial portrait; ``inf`` is the fixed critical point of full degree.

    ``postcritical`` and ``critical_values`` are derived from ``tau`` for a
    portrait read from a file.  Iterates carry them over explicitly: the
    postcritical set of ``f**n`` equals that of ``f``, while critical
    points of ``f**n`` outside the vertex set are not materialized.
    """

    degree: int
    tau: Mapping[str, str]
    local_degree: Mapping[str, int]
    order: tuple[str, ...] = ()
    postcritical: frozenset = field(default=None)
    critical_values: frozenset = field(default=None)

    def __post_init__(self):
        order = self.order or tuple(self.tau)
        object.__setattr__(self, "order", tuple(order))
        object.__setattr__(self, "tau", dict(self.tau))
        object.__setattr__(self, "local_degree", dict(self.local_degree))
        if set(order) != set(self.tau) or len(order) != len(self.tau):
            raise NonFunctionalMap("vertex order does not match the domain of tau")
        for v, w in self.tau.items():
            if w not in self.tau:
                raise NonFunctionalMap(f"{v} maps to unknown vertex {w!r}")
        if self.tau.get(INF) != INF:
            raise NonFunctionalMap("inf must be a fixed vertex")
        if self.local_degree.get(INF) != self.degree:
            raise PortraitError(f"inf must have local degree {self.degree}")
        if self.postcritical is None:
            post = set()
            for c in self.critical:
                post.update(_orbit(self.tau, self.tau[c]))
            object.__setattr__(self, "postcritical", frozenset(post))
        if self.critical_values is None:
            values = {self.tau[c] for c in self.critical if c != INF}
            object.__setattr__(self, "critical_values", frozenset(values))

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.order

    @property
    def critical(self) -> tuple[str, ...]:
        return tuple(v for v in self.order if self.local_degree[v] >= 2)

    def is_critical(self, v: str) -> bool:
        return self.local_degree[v] >= 2

    def check(self) -> None:
        """Riemann-Hurwitz count and absence of superfluous vertices."""
        excess = sum(self.local_degree[v] - 1 for v in self.order if v != INF)
        if excess != self.degree - 1:
            raise RiemannHurwitzViolation(
                f"finite critical multiplicities sum to {excess}, expected degree - 1 = {self.degree - 1}"
            )
        for v in self.order:
            if v not in self.postcritical and not self.is_critical(v):
                raise PortraitError(f"vertex {v!r} is neither critical nor postcritical")

    def cycles(self) -> list[tuple[str, ...]]:
        """Periodic cycles inside the postcritical set, each starting at its first declared vertex."""
        rank = {v: k for k, v in enumerate(self.order)}
        found = []
        seen: set[str] = set()
        for v in self.order:
            if v not in self.postcritical or v in seen:
                continue
            orb = _orbit(self.tau, v)
            start = self.tau[orb[-1]]
            cyc = orb[orb.index(start) :]
            seen.update(orb)
            if not any(set(cyc) == set(c) for c in found):
                k = min(range(len(cyc)), key=lambda i: rank[cyc[i]])
                found.append(tuple(cyc[k:] + cyc[:k]))
        return found

    def is_attractor(self, cycle: tuple[str, ...]) -> bool:
        return any(self.is_critical(v) for v in cycle)


# -- file format --------------------------------------------------------

_NAME = r"[^\s#]+"
_HEADER_RE = re.compile(r"^portrait\s+v1\s+degree\s+(\d+)$")
_VERTEX_RE = re.compile(rf"^vertex\s+({_NAME})(?:\s+deg\s+(\d+))?$")
_MAP_RE = re.compile(rf"^map\s+({_NAME})\s*->\s*({_NAME})$")


def parse_portrait(text: str) -> Portrait:
    degree = None
    local: dict[str, int] = {}
    tau: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if degree is None:
            m = _HEADER_RE.match(line)
            if not m:
                raise PortraitSyntaxError(f"line {lineno}: expected header 'portrait v1 degree D'")
            degree = int(m.group(1))
            if degree < 2:
                raise PortraitError("degree must be at least 2")
            continue
        if m := _VERTEX_RE.match(line):
            name, deg = m.group(1), int(m.group(2) or 1)
            if name in local:
                raise PortraitSyntaxError(f"line {lineno}: duplicate vertex {name!r}")
            if deg < 1:
                raise PortraitError(f"line {lineno}: local degree must be positive")
            local[name] = deg
        elif m := _MAP_RE.match(line):
            src, dst = m.group(1), m.group(2)
            if src in tau:
                raise NonFunctionalMap(f"line {lineno}: {src!r} is mapped twice")
            tau[src] = dst
        else:
            raise PortraitSyntaxError(f"line {lineno}: unrecognized line {line!r}")
    if degree is None:
        raise PortraitSyntaxError("missing header 'portrait v1 degree D'")
    local.setdefault(INF, degree)
    tau.setdefault(INF, INF)
    for v in tau:
        if v not in local:
            raise NonFunctionalMap(f"map from undeclared vertex {v!r}")
    missing = [v for v in local if v not in tau]
    if missing:
        raise NonFunctionalMap(f"no image given for {', '.join(missing)}")
    order = tuple(local)
    p = Portrait(degree, {v: tau[v] for v in order}, local, order)
    p.check()
    return p


def serialize_portrait(p: Portrait) -> str:
    lines = [f"portrait v1 degree {p.degree}"]
    for v in p.order:
        k = p.local_degree[v]
        lines.append(f"vertex {v}" + (f" deg {k}" if k != 1 else ""))
    for v in p.order:
        lines.append(f"map {v} -> {p.tau[v]}")
    return "\n".join(lines) + "\n"


# -- iteration ----------------------------------------------------------


def iterate(p: Portrait, n: int) -> Portrait:
    """The portrait of ``f**n`` on the same vertex set."""
    if n < 1:
        raise ValueError("n must be positive")
    tau_n, deg_n = {}, {}
    for v in p.order:
        w, d = v, 1
        for _ in range(n):
            d *= p.local_degree[w]
            w = p.tau[w]
        tau_n[v], deg_n[v] = w, d
    # critical values of f**n are f**m(C_f) for 1 <= m <= n
    values = set()
    for c in p.critical:
        if c == INF:
            continue
        w = c
        for _ in range(n):
            w = p.tau[w]
            values.add(w)
    return Portrait(p.degree**n, tau_n, deg_n, p.order, p.postcritical, frozenset(values))


# -- classification -----------------------------------------------------


class CaseKind(enum.Enum):
    CASE1 = "Case1"
    CASE2 = "Case2"
    CASE3 = "Case3"
    CASE4 = "Case4"
    NOT_COVERED = "NotCovered"


@dataclass(frozen=True)
class PortraitCase:
    kind: CaseKind
    p: int | None = None
    k: int | None = None
    enumeration: tuple[str, ...] = ()
    detail: str = ""

    @property
    def covered(self) -> bool:
        return self.kind is not CaseKind.NOT_COVERED

    def __str__(self) -> str:
        if self.kind is CaseKind.CASE4:
            return f"Case4(p={self.p}, k={self.k}, enumeration={' '.join(self.enumeration)})"
        return self.kind.value


def _prime_power(n: int) -> tuple[int, int] | None:
    if n < 2:
        return None
    p = next(q for q in range(2, n + 1) if n % q == 0)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return (p, k) if n == 1 else None


def classify(p: Portrait) -> PortraitCase:
    """First matching case in the order 1, 2, 3, 4, else NotCovered."""
    post = p.postcritical
    if len(post) <= 3:
        return PortraitCase(CaseKind.CASE1, detail=f"{len(post)} postcritical vertices")
    cycles = p.cycles()
    repelling = [c for c in cycles if not p.is_attractor(c)]
    if not repelling:
        return PortraitCase(CaseKind.CASE2, detail="every cycle contains a critical point")
    if len(repelling) == 1 and len(repelling[0]) == 1:
        return PortraitCase(CaseKind.CASE3, detail=f"single non-attractor cycle is the fixed point {repelling[0][0]}")
    finite_post = {v for v in post if v != INF}
    if len(repelling) == 1 and set(repelling[0]) == finite_post:
        cyc = repelling[0]
        pk = _prime_power(len(cyc))
        if pk is not None:
            prime, k = pk
            step = prime ** (k - 1)
            values = p.critical_values & finite_post
            for r in range(len(cyc)):
                enum_ = cyc[r:] + cyc[:r]
                if all(enum_.index(v) % step == 0 for v in values):
                    return PortraitCase(CaseKind.CASE4, prime, k, enum_)
    reasons = [f"non-attractor cycles: {', '.join('(' + ' '.join(c) + ')' for c in repelling)}"]
    return PortraitCase(CaseKind.NOT_COVERED, detail="; ".join(reasons))


# -- Thurston matrices of completely invariant multicurves ---------------


class SigmaClass(enum.Enum):
    BELOW_ONE = "sigma<1"
    ONE_POSSIBLE = "sigma=1 possible"
    ABOVE_ONE = "sigma>1"


@dataclass(frozen=True)
class InvariantMatrixReport:
    entry_form_ok: bool
    bad_entries: tuple[tuple[int, int, Fraction], ...]
    sigma_class: SigmaClass
    exact_sigma: Fraction | None
    bound_ok: bool  # sigma ** p_count < 1/2
    p_count: int

    @property
    def sigma_below_one(self) -> bool:
        return self.sigma_class is SigmaClass.BELOW_ONE


def check_invariant_matrix(m: Matrix, p_count: int, eps: Fraction = Fraction(1, 1024)) -> InvariantMatrixReport:
    """Entry form (0 or 1/k), position of sigma relative to 1, and sigma**p_count < 1/2."""
    check_square(m)
    if p_count < 4:
        raise ValueError("p_count must be at least 4")
    bad = tuple(
        (i, j, x)
        for i, row in enumerate(m)
        for j, x in enumerate(row)
        if not (x == 0 or (x > 0 and x.numerator == 1))
    )
    if any(x < 0 for _, _, x in bad):
        raise NegativeEntry("Thurston matrices are nonnegative")
    if rho_less_than(m, 1):
        cls = SigmaClass.BELOW_ONE
    elif rho_less_than(m, 1 + eps):
        cls = SigmaClass.ONE_POSSIBLE
    else:
        cls = SigmaClass.ABOVE_ONE
    return InvariantMatrixReport(
        entry_form_ok=not bad,
        bad_entries=bad,
        sigma_class=cls,
        exact_sigma=exact_spectral_radius(m),
        bound_ok=rho_power_less_than(m, p_count, Fraction(1, 2)),
        p_count=p_count,
    )
