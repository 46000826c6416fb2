"""Scramblers of #P = 4 Hurwitz bisets from a correspondence on moduli space.

The correspondence is a pair of rational maps ``phi, rho: W -> M`` with
``M`` the sphere minus the cusps 0, 1, inf.  A point ``w`` of ``W`` over
the cusp ``t = phi(w)`` stands for a curve class; if ``rho(w)`` is the cusp
``t'`` that curve pulls back to the class of ``t'`` with multiplier

    m = (local degree of rho at w) / (local degree of phi at w),

and if ``rho(w)`` is not a cusp the pulled-back curve is trivial.

Local degrees are read off the fibers of ``phi`` and ``rho`` over the cusps
as binary forms.  Points of ``W`` are never located numerically: points
with the same multiplicities are grouped by gcds of squarefree factors,
so irrational cusps of ``W`` are handled exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .exactmath import (
    CUSPS,
    ConstantFunction,
    Cusp,
    Polynomial,
    RationalFunction,
    fiber_form,
    poly_gcd,
    squarefree_decompose,
)
from .scrambler import EMPTY, ZERO, Edge, Scrambler, Vertex, validate

__all__ = ["INFINITY", "CuspLabelMap", "FiberPointClass", "build_scrambler", "cusp_fiber_table", "parse_labels"]

INFINITY = "inf"  # marks the point at infinity of W


@dataclass(frozen=True)
class FiberPointClass:
    """Points of W over ``source`` sharing target cusp and multiplicities."""

    source: Cusp
    target: Cusp | None
    phi_mult: int
    rho_mult: int
    count: int
    factor: Polynomial | str  # defining polynomial, or INFINITY

    @property
    def multiplier(self) -> Fraction | None:
        if self.target is None:
            return None
        return Fraction(self.rho_mult, self.phi_mult)

    def describe(self, var: str = "w") -> str:
        where = f"{var} = inf" if self.factor == INFINITY else f"{self.factor.to_str(var)} = 0"
        tgt = "none" if self.target is None else str(self.target)
        mult = "-" if self.multiplier is None else str(self.multiplier)
        return f"{self.source} -> {tgt}  at {where}  i={self.phi_mult} j={self.rho_mult} m={mult} count={self.count}"


class CuspLabelMap(dict):
    """Vertex name for each of the three cusps."""

    def __init__(self, mapping: Mapping[Cusp | str, str]):
        super().__init__({(c if isinstance(c, Cusp) else Cusp.parse(c)): str(v) for c, v in mapping.items()})
        if set(self) != set(CUSPS):
            raise ValueError("labels must name exactly the cusps 0, 1 and inf")
        names = list(self.values())
        if len(set(names)) != 3:
            raise ValueError("cusp labels must be distinct")
        if EMPTY in names:
            raise ValueError(f"{EMPTY!r} is reserved")


def parse_labels(text: str) -> CuspLabelMap:
    """Parse ``0=a,1=b,inf=c``."""
    pairs = {}
    for item in text.split(","):
        key, sep, value = item.partition("=")
        if not sep or not value.strip():
            raise ValueError(f"malformed label {item!r}; expected CUSP=NAME")
        pairs[Cusp.parse(key)] = value.strip()
    return CuspLabelMap(pairs)


def _rho_fibers(rho: RationalFunction):
    fibers = {}
    for t in CUSPS:
        form = fiber_form(rho, t)
        fibers[t] = (form, squarefree_decompose(form.affine_part) if form.affine_part.degree > 0 else [])
    return fibers


def cusp_fiber_table(phi: RationalFunction, rho: RationalFunction) -> list[FiberPointClass]:
    if phi.is_constant() or rho.is_constant():
        raise ConstantFunction("phi and rho must both be nonconstant")
    rho_fibers = _rho_fibers(rho)
    table: list[FiberPointClass] = []
    for t in CUSPS:
        form = fiber_form(phi, t)
        if form.affine_part.degree > 0:
            for a_i, i in squarefree_decompose(form.affine_part):
                residual = a_i
                for t2 in CUSPS:
                    for b_j, j in rho_fibers[t2][1]:
                        h = poly_gcd(a_i, b_j)
                        if h.degree > 0:
                            table.append(FiberPointClass(t, t2, i, j, h.degree, h))
                            residual = residual.exact_div(h)
                if residual.degree > 0:
                    table.append(FiberPointClass(t, None, i, 0, residual.degree, residual.monic()))
        if form.inf_multiplicity > 0:
            target, j = None, 0
            for t2 in CUSPS:
                m = rho_fibers[t2][0].inf_multiplicity
                if m > 0:
                    target, j = t2, m
            table.append(FiberPointClass(t, target, form.inf_multiplicity, j, 1, INFINITY))
    return table


def build_scrambler(
    phi: RationalFunction,
    rho: RationalFunction,
    labels: CuspLabelMap | Mapping,
    table: list[FiberPointClass] | None = None,
) -> Scrambler:
    """One dim-1 vertex per cusp plus ``empty``; an edge per multiplier.

    Parallel edges with equal weight are merged and their counts summed.
    Edges are ordered by source cusp (0, 1, inf), then target cusp with
    ``empty`` last, then decreasing weight.
    """
    if not isinstance(labels, CuspLabelMap):
        labels = CuspLabelMap(labels)
    if table is None:
        table = cusp_fiber_table(phi, rho)
    order = {t: k for k, t in enumerate(CUSPS)}
    merged: dict[tuple, int] = {}
    for cls in table:
        if cls.target is None:
            key = (order[cls.source], len(CUSPS), Fraction(0))
        else:
            key = (order[cls.source], order[cls.target], cls.multiplier)
        merged[key] = merged.get(key, 0) + cls.count
    edges = []
    for (src, dst, m), count in sorted(merged.items(), key=lambda kv: (kv[0][0], kv[0][1], -kv[0][2])):
        src_name = labels[CUSPS[src]]
        if dst == len(CUSPS):
            edges.append(Edge(src_name, EMPTY, ZERO, count))
        else:
            edges.append(Edge(src_name, labels[CUSPS[dst]], ((m,),), count))
    vertices = tuple(Vertex(labels[t], 1) for t in CUSPS) + (Vertex(EMPTY, 0),)
    s = Scrambler(vertices, tuple(edges))
    problems = validate(s)
    if problems:
        raise AssertionError("builder produced an invalid scrambler: " + "; ".join(map(str, problems)))
    return s
