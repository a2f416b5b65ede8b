"""V-polyhedral disjunctive cuts, Farkas certificates and monoidal strengthening.

Documents are plain dicts with the same layout as the command line JSON
output; cuts and bound changes are in the variable space of the instance.
"""
import json
import os

from . import _core
from ._core import Instance, Report, VpcForgeError, gmi_coefficients, solve_monoid

__version__ = _core.__version__

__all__ = [
    "Instance",
    "Report",
    "VpcForgeError",
    "load",
    "solve",
    "cuts",
    "certify",
    "strengthen",
    "evaluate",
    "solve_monoid",
    "gmi_coefficients",
]


def _text(doc):
    if doc is None:
        return ""
    return doc if isinstance(doc, str) else json.dumps(doc)


def _instance(inst):
    return inst if isinstance(inst, Instance) else Instance.load(os.fspath(inst))


def load(path):
    """Read a native .json or an .mps instance."""
    return Instance.load(os.fspath(path))


def solve(instance, ip=False):
    """LP relaxation in the raw space; with ip=True also the integer optimum."""
    return json.loads(_core.solve(_instance(instance), ip))


def cuts(instance, leaves=2, strengthen=False, **options):
    """VPCs from a partial tree with the given leaf count, plus root GMICs."""
    return json.loads(_core.cuts(_instance(instance), leaves, strengthen, **options))


def certify(instance, cuts, disjunction=None, leaves=2, **options):
    """Per-term Farkas certificates for a cuts document or a single cut."""
    return json.loads(_core.certify(_instance(instance), _text(cuts), _text(disjunction), leaves, **options))


def strengthen(instance, cuts, disjunction=None, leaves=2, **options):
    """Monoidal strengthening of a cuts document."""
    return json.loads(_core.strengthen(_instance(instance), _text(cuts), _text(disjunction), leaves, **options))


def evaluate(paths, leaves=(2, 4, 8, 16, 32, 64), strengthen=False, jobs=1, **options):
    """Gap-closed sweep; returns a Report with table(), csv() and json()."""
    return _core.evaluate([os.fspath(p) for p in paths], list(leaves), strengthen, jobs, **options)
