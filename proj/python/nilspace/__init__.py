"""Nilpotent matrix subspaces over division rings.

Towers, subspaces, matrices, traces and reports use the same JSON documents
as the command-line tool; this module accepts and returns them as Python
dicts and lists.
"""

import json

from . import _nilspace
from ._nilspace import NilspaceError

__all__ = [
    "NilspaceError",
    "bound_certificate",
    "canonicalize",
    "check_c2_identity",
    "check_trace_orthogonality",
    "conjugate",
    "enumerate_maximal",
    "find_adapted",
    "find_similarity",
    "is_nilpotent_space",
    "run_cli",
    "selftest",
    "strictly_upper",
    "triangularize",
]

NilspaceError.kind = property(lambda self: self.args[0])
NilspaceError.step = property(lambda self: self.args[1])
NilspaceError.message = property(lambda self: self.args[2])


def _dumps(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def canonicalize(subspace):
    return json.loads(_nilspace.canonicalize(_dumps(subspace)))


def conjugate(subspace, p):
    return json.loads(_nilspace.conjugate(_dumps(subspace), _dumps(p)))


def strictly_upper(tower, n):
    return json.loads(_nilspace.strictly_upper(_dumps(tower), n))


def is_nilpotent_space(subspace, samples=0, seed=42, cap=1 << 20):
    """Exhaustive when samples == 0, sampled otherwise."""
    return json.loads(_nilspace.is_nilpotent_space(_dumps(subspace), samples, seed, cap))


def find_adapted(subspace):
    return _nilspace.find_adapted(_dumps(subspace))


def bound_certificate(subspace, verify=True, cap=1 << 20):
    return json.loads(_nilspace.bound_certificate(_dumps(subspace), verify, cap))


def triangularize(subspace, verify=True, cap=1 << 20):
    return json.loads(_nilspace.triangularize(_dumps(subspace), verify, cap))


def enumerate_maximal(p, n, cap=1 << 24, timing=False):
    return json.loads(_nilspace.enumerate_maximal(p, n, cap, timing))


def find_similarity(v, w, cap=1 << 24):
    result = _nilspace.find_similarity(_dumps(v), _dumps(w), cap)
    return None if result is None else json.loads(result)


def check_trace_orthogonality(tower, n, samples=0, seed=42):
    return json.loads(_nilspace.check_trace_orthogonality(_dumps(tower), n, samples, seed))


def check_c2_identity(tower, n, samples=1000, seed=42):
    return json.loads(_nilspace.check_c2_identity(_dumps(tower), n, samples, seed))


def selftest(samples=5, seed=42):
    return _nilspace.selftest(samples, seed)


def run_cli(args):
    """Returns (exit_code, stdout_text, stderr_text)."""
    return _nilspace.run_cli(list(args))
