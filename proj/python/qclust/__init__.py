"""Exact arithmetic in the quantum cluster algebra A_q(1,4).

Elements are `Torus` values: Laurent polynomials in the frame generators with
coefficients in Z[q^{+-1/2}]. Verifiers return decoded JSON reports.
"""

import json

from ._qclust import (
    DomainError,
    PreconditionError,
    StructuralViolation,
    Torus,
    chebyshev,
    cluster_var,
    evaluate,
    run_cli,
    x_delta,
)
from . import _qclust

__all__ = [
    "DomainError",
    "PreconditionError",
    "StructuralViolation",
    "Torus",
    "chebyshev",
    "cluster_var",
    "evaluate",
    "expand_in_basis",
    "run_cli",
    "triangular",
    "verify_cluster_relations",
    "verify_coefficient_identities",
    "verify_theorem2",
    "x_delta",
]


def expand_in_basis(x, family="B", frame=1, m_range=(-10, 12), max_degree=8, max_n=10):
    """Coefficients of x in basis B, S or D as a list of {"label", "coef"} dicts."""
    if isinstance(x, str):
        x = evaluate(x, frame)
    return json.loads(_qclust.expand_in_basis(x, family, frame, m_range[0], m_range[1], max_degree, max_n))


def triangular(a, b, frame=1):
    """(C_(a,b) as a Torus, its E-expansion as a list of {"a", "b", "coef"})."""
    value, expansion = _qclust.triangular(a, b, frame)
    return value, json.loads(expansion)


def verify_theorem2(m_range=(-6, 8), n_range=(1, 8), frames=(1, 2)):
    return json.loads(_qclust.verify_theorem2(m_range[0], m_range[1], n_range[0], n_range[1], list(frames)))


def verify_cluster_relations(lo=-8, hi=10, frames=(1, 2)):
    return json.loads(_qclust.verify_cluster_relations(lo, hi, list(frames)))


def verify_coefficient_identities(n_lo=2, n_hi=8):
    return json.loads(_qclust.verify_coefficient_identities(n_lo, n_hi))
