"""Exact SL(2) representation constructions and bounded certificates.

The compiled core speaks JSON; these wrappers decode documents into dicts.
"""

import json

from . import _sl2cert
from ._sl2cert import Error, Word, reverify as _reverify, run_cli, trace_poly

__all__ = [
    "Error",
    "Word",
    "run_cli",
    "trace_poly",
    "figure8_family",
    "figure8_discrete",
    "torus_bundle",
    "bs1m",
    "generic_free",
    "minsky",
    "check_relations",
    "trace_pm2_scan",
    "gluing_obstruction",
    "triple_hnn_obstruction",
    "commutator_equation_search",
    "lyndon_equation_scan",
    "reverify",
    "error_kind",
]


def _doc(text):
    return json.loads(text)


def figure8_family():
    return _doc(_sl2cert.figure8_family())


def figure8_discrete(minus=False):
    return _doc(_sl2cert.figure8_discrete(minus))


def torus_bundle(i, j, k, l):
    return _doc(_sl2cert.torus_bundle(i, j, k, l))


def bs1m(m):
    return _doc(_sl2cert.bs1m(m))


def generic_free():
    return _doc(_sl2cert.generic_free())


def minsky(bound=6):
    return _doc(_sl2cert.minsky(bound))


def check_relations(rep):
    """`rep` is a MarkedRep document (dict) as returned by the constructors."""
    return _doc(_sl2cert.check_relations(json.dumps(rep)))


def trace_pm2_scan(rep, bound):
    return _doc(_sl2cert.trace_pm2_scan(json.dumps(rep), bound))


def gluing_obstruction(lo=-5, hi=5):
    return _doc(_sl2cert.gluing_obstruction(lo, hi))


def triple_hnn_obstruction():
    return _doc(_sl2cert.triple_hnn_obstruction())


def commutator_equation_search(m, n, bound):
    return _doc(_sl2cert.commutator_equation_search(m, n, bound))


def lyndon_equation_scan(bound):
    return _doc(_sl2cert.lyndon_equation_scan(bound))


def reverify(report):
    """Recheck every witness of a Report document."""
    return _reverify(json.dumps(report))


def error_kind(exc):
    """Machine-readable error name, e.g. 'DegenerateParameter'."""
    return str(exc).split(":", 1)[0]
