"""Command-line front end: analyze, build, classify, dot.

Exit codes: 0 Contracting (analyze) or covered portrait (classify),
10 Obstructed, 20 Undecided, 30 portrait not covered, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path as FsPath

from .exactmath import ConstantFunction, DivisionByZeroFunction, parse_rational_function
from .exactmath.matrix import format_matrix
from .jsr import (
    AllUnobstructed,
    Budget,
    Contracting,
    Obstructed,
    RootBound,
    cycle_spectra,
    decide_contraction,
    jsr_bounds,
    rationality_by_level,
)
from .modspace import build_scrambler, cusp_fiber_table, parse_labels
from .portrait import PortraitError, classify, iterate, parse_portrait
from .scrambler import (
    BudgetExceeded,
    ScramblerError,
    Scrambler,
    export_dot,
    format_weight,
    parse_scrambler,
    serialize_scrambler,
    validate,
)

EXIT_INVALID = 2
EXIT_NOT_COVERED = 30
ENV_PRODUCTS = "SCRAMBLER_BUDGET_PRODUCTS"
DEFAULT_LABELS = "0=t0,1=t1,inf=tinf"


class InvalidInput(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    inputs: tuple[str, ...]
    max_cycle_len: int = 12
    max_product_len: int = 16
    max_products: int = 1_000_000
    enclosure_width: Fraction = Fraction(1, 1024)
    output_format: str = "text"

    def __post_init__(self):
        for name in ("max_cycle_len", "max_product_len", "max_products"):
            if getattr(self, name) < 1:
                raise InvalidInput(f"{name} must be positive")
        if self.enclosure_width <= 0:
            raise InvalidInput("width must be positive")
        if self.output_format not in ("text", "dot"):
            raise InvalidInput(f"unknown format {self.output_format!r}")

    @property
    def budget(self) -> Budget:
        return Budget(
            max_cycle_len=self.max_cycle_len,
            max_product_len=self.max_product_len,
            max_products=self.max_products,
            enclosure_width=self.enclosure_width,
        )


def _positive_fraction(text: str) -> Fraction:
    try:
        x = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")
    if x <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return x


def _read(path: str) -> str:
    try:
        return FsPath(path).read_text()
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror or exc}")


def _load_scrambler(path: str) -> Scrambler:
    try:
        return parse_scrambler(_read(path))
    except (ScramblerError, SyntaxError, ValueError) as exc:
        raise InvalidInput(f"{path}: {exc}")


def _bound_str(b: RootBound) -> str:
    return f"({b.base})^(1/{b.root}) ~ {b.approx:.6f}"


def _verdict_str(v) -> str:
    if isinstance(v, Contracting):
        return f"Contracting({v.level}) max_norm={v.max_norm}"
    if isinstance(v, Obstructed):
        return f"Obstructed witness={v.witness.describe()} length={v.level}"
    return f"Undecided ({v.report or 'no certificate'})"


# -- analyze ------------------------------------------------------------


def cmd_analyze(cfg: RunConfig, levels: int, as_json: bool, out) -> int:
    s = _load_scrambler(cfg.inputs[0])
    budget = cfg.budget
    verdict = decide_contraction(s, budget)
    if cfg.output_format == "dot":
        out.write(export_dot(s))
        return verdict.exit_code

    flat: dict[str, object] = {"input": cfg.inputs[0], "vertices": len(s.vertices), "edges": len(s.edges)}
    lines = [f"scrambler: {cfg.inputs[0]}", f"vertices: {len(s.vertices)}  edges: {len(s.edges)}"]

    diags = validate(s)
    flat["diagnostics"] = len(diags)
    lines.append("diagnostics: " + ("none" if not diags else str(len(diags))))
    lines += [f"  {d}" for d in diags]

    try:
        spectra = cycle_spectra(s, budget.max_cycle_len, budget.enclosure_width, budget.max_cycles)
    except BudgetExceeded as exc:
        spectra = []
        lines.append(f"cycles: budget exceeded ({exc})")
    else:
        lines.append(f"cycles (length <= {budget.max_cycle_len}): {len(spectra)}")
    flat["cycles"] = len(spectra)
    for k, cs in enumerate(spectra):
        enc = cs.enclosure
        span = str(enc.lo) if enc.exact else f"[{enc.lo}, {enc.hi}]"
        edges = ",".join(map(str, cs.cycle.edges))
        lines.append(
            f"  {cs.cycle.describe()}  edges={edges}  len={cs.cycle.length}"
            f"  product={format_weight(cs.product, True)}"
            f"  sigma<1={'yes' if cs.below_one else 'no'}  sigma={span}"
        )
        flat[f"cycle.{k}.path"] = cs.cycle.describe()
        flat[f"cycle.{k}.sigma_below_one"] = cs.below_one

    if levels:
        lines.append("rationality by level:")
    for n in range(1, levels + 1):
        try:
            r = rationality_by_level(s, n, budget.max_products)
        except BudgetExceeded as exc:
            lines.append(f"  n={n}: budget exceeded ({exc})")
            flat[f"level.{n}"] = "BudgetExceeded"
            continue
        if isinstance(r, AllUnobstructed):
            lines.append(f"  n={n}: AllUnobstructed closed_products={r.closed_paths}")
            flat[f"level.{n}"] = "AllUnobstructed"
        else:
            lines.append(f"  n={n}: ObstructedWitness {r.path.describe()} product={format_matrix(r.product)}")
            flat[f"level.{n}"] = "ObstructedWitness"
            flat[f"level.{n}.witness"] = r.path.describe()

    try:
        est = jsr_bounds(s, budget)
    except BudgetExceeded as exc:
        lines.append(f"jsr: budget exceeded ({exc})")
    else:
        wit = est.lower_witness.describe() if est.lower_witness else "none"
        lines.append(f"jsr lower: {_bound_str(est.lower)}  witness={wit}")
        lines.append(f"jsr upper: {_bound_str(est.upper)}  levels={est.levels_completed}")
        flat.update({
            "jsr.lower.base": str(est.lower.base),
            "jsr.lower.root": est.lower.root,
            "jsr.upper.base": str(est.upper.base),
            "jsr.upper.root": est.upper.root,
        })

    lines.append(f"verdict: {_verdict_str(verdict)}")
    flat["verdict"] = verdict.name
    flat["exit_code"] = verdict.exit_code
    if isinstance(verdict, Contracting):
        flat["verdict.level"] = verdict.level
    elif isinstance(verdict, Obstructed):
        flat["verdict.witness"] = verdict.witness.describe()

    if as_json:
        out.write(json.dumps(flat, indent=1) + "\n")
    else:
        out.write("\n".join(lines) + "\n")
    return verdict.exit_code


# -- build --------------------------------------------------------------


def _guess_var(*exprs: str) -> str:
    names = set()
    for e in exprs:
        names.update(re.findall(r"[A-Za-z_]\w*", e))
    return names.pop() if len(names) == 1 else "w"


def cmd_build(phi_text: str, rho_text: str, var: str | None, labels_text: str, out) -> int:
    var = var or _guess_var(phi_text, rho_text)
    try:
        phi = parse_rational_function(phi_text, var)
        rho = parse_rational_function(rho_text, var)
        labels = parse_labels(labels_text)
        table = cusp_fiber_table(phi, rho)
        s = build_scrambler(phi, rho, labels, table)
    except (SyntaxError, ValueError, DivisionByZeroFunction, ConstantFunction) as exc:
        raise InvalidInput(str(exc))
    text = serialize_scrambler(s)
    header, _, body = text.partition("\n")
    comment = [
        f"# phi = {phi.to_str(var)}",
        f"# rho = {rho.to_str(var)}",
        f"# fiber table ({var}):",
    ] + [f"#   {cls.describe(var)}" for cls in table]
    out.write(header + "\n" + "\n".join(comment) + "\n" + body)
    return 0


# -- classify -----------------------------------------------------------


def cmd_classify(path: str, n: int | None, out) -> int:
    try:
        p = parse_portrait(_read(path))
    except (PortraitError, SyntaxError) as exc:
        raise InvalidInput(f"{path}: {exc}")
    if n is not None:
        if n < 1:
            raise InvalidInput("--iterate must be positive")
        p = iterate(p, n)
    case = classify(p)
    lines = [
        f"portrait: {path}" + (f" (iterate {n})" if n else ""),
        f"degree: {p.degree}",
        f"postcritical: {' '.join(v for v in p.order if v in p.postcritical)}",
        "cycles: " + ", ".join(
            "(" + " ".join(c) + ")" + (" attractor" if p.is_attractor(c) else "") for c in p.cycles()
        ),
        f"case: {case}",
    ]
    if case.detail:
        lines.append(f"detail: {case.detail}")
    out.write("\n".join(lines) + "\n")
    return 0 if case.covered else EXIT_NOT_COVERED


# -- dot ----------------------------------------------------------------


def cmd_export_dot(path: str, out) -> int:
    out.write(export_dot(_load_scrambler(path)))
    return 0


# -- entry point --------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hurwitz-scrambler", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="subcommand", required=True)

    an = sub.add_parser("analyze", help="cycles, rationality by level, JSR bounds and verdict")
    an.add_argument("input")
    an.add_argument("--levels", type=int, default=4, help="rationality levels 1..N (default 4)")
    an.add_argument("--max-cycle-len", type=int, default=12)
    an.add_argument("--max-product-len", type=int, default=16)
    an.add_argument("--max-products", type=int, default=None, help=f"default 10^6, or ${ENV_PRODUCTS}")
    an.add_argument("--width", type=_positive_fraction, default=Fraction(1, 1024))
    an.add_argument("--format", choices=("text", "dot"), default="text")
    an.add_argument("--json", action="store_true", help="flat key/value JSON report")

    bd = sub.add_parser("build", help="scrambler from a moduli-space correspondence")
    bd.add_argument("--phi", required=True)
    bd.add_argument("--rho", required=True)
    bd.add_argument("--var", default=None, help="variable name (inferred when unambiguous)")
    bd.add_argument("--labels", default=DEFAULT_LABELS, help=f"cusp names (default {DEFAULT_LABELS})")

    cl = sub.add_parser("classify", help="classify a polynomial portrait")
    cl.add_argument("input")
    cl.add_argument("--iterate", type=int, default=None, metavar="N")

    dt = sub.add_parser("dot", help="Graphviz export of a scrambler")
    dt.add_argument("input")
    return ap


def _max_products(arg: int | None) -> int:
    if arg is not None:
        return arg
    env = os.environ.get(ENV_PRODUCTS)
    if env:
        try:
            return int(env)
        except ValueError:
            raise InvalidInput(f"{ENV_PRODUCTS} must be an integer, got {env!r}")
    return 1_000_000


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else 0
    try:
        if args.subcommand == "analyze":
            if args.levels < 0:
                raise InvalidInput("--levels must be nonnegative")
            cfg = RunConfig(
                "analyze",
                (args.input,),
                args.max_cycle_len,
                args.max_product_len,
                _max_products(args.max_products),
                args.width,
                args.format,
            )
            return cmd_analyze(cfg, args.levels, args.json, out)
        if args.subcommand == "build":
            return cmd_build(args.phi, args.rho, args.var, args.labels, out)
        if args.subcommand == "classify":
            return cmd_classify(args.input, args.iterate, out)
        return cmd_export_dot(args.input, out)
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def run() -> None:
    sys.exit(main())
