"""Exact finite analysis of Hurwitz bisets through their strata scramblers.

Subpackages and modules:

- ``exactmath``: polynomials, rational functions and matrices over Q
- ``scrambler``: the weighted graph, its file format and DOT export
- ``spectral``: exact decisions about Perron-Frobenius roots
- ``jsr``: cycle spectra, rationality by level, joint-spectral-radius bounds
- ``modspace``: scramblers of #P = 4 bisets from a moduli-space correspondence
- ``portrait``: classification of polynomial critical-orbit portraits
"""

from importlib.resources import files

from .jsr import Budget, Contracting, Obstructed, Undecided, decide_contraction, jsr_bounds, rationality_by_level
from .modspace import build_scrambler, parse_labels
from .portrait import classify, iterate, parse_portrait
from .scrambler import Scrambler, export_dot, parse_scrambler, serialize_scrambler
from .spectral import rho_enclosure, rho_less_than

__version__ = "0.1.0"

__all__ = [
    "Budget",
    "Contracting",
    "Obstructed",
    "Scrambler",
    "Undecided",
    "build_scrambler",
    "classify",
    "decide_contraction",
    "export_dot",
    "fixture_path",
    "iterate",
    "jsr_bounds",
    "load_portrait",
    "load_scrambler",
    "parse_labels",
    "parse_portrait",
    "parse_scrambler",
    "rationality_by_level",
    "rho_enclosure",
    "rho_less_than",
    "serialize_scrambler",
]


def fixture_path(name: str):
    """Path of a bundled fixture such as ``"rabbit.scr"``."""
    return files(__name__).joinpath("data", name)


def load_scrambler(name: str) -> Scrambler:
    return parse_scrambler(fixture_path(name + ".scr" if "." not in name else name).read_text())


def load_portrait(name: str):
    return parse_portrait(fixture_path(name + ".por" if "." not in name else name).read_text())
