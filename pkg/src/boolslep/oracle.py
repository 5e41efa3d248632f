"""Dense brute-force operators on the full 2**n vertex space.

Everything here is built literally from definitions (characters, adjacency
by bit flips, diagonal limits), independent of the sphere-harmonic
machinery it is used to check. Matrices are in natural binary order;
:meth:`DenseOperator.dyadic` permutes them for display.
"""

import json
from dataclasses import asdict, dataclass, field

import numpy as np

from .coeff import HBDOParams, lagrange_p
from .cube import check_n, dyadic_permutation, weights
from .errors import InvalidInputError, OracleCapError

ORACLE_MAX_N = 12
MATCH_TOL = 1e-7
LABELS = ("A", "L", "H", "T", "D", "Q", "P", "QPQ", "PQP", "HBDO", "BDO")


@dataclass(frozen=True)
class DenseOperator:
    n: int
    label: str
    entries: np.ndarray = field(repr=False)

    def dyadic(self):
        perm = dyadic_permutation(self.n)
        return self.entries[np.ix_(perm, perm)]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)


def _adjacency(n):
    idx = np.arange(1 << n)
    a = np.zeros((1 << n, 1 << n))
    for b in range(n):
        a[idx, idx ^ (1 << b)] = 1.0
    return a


def _hbar(n):
    idx = np.arange(1 << n, dtype=np.int64)
    parity = np.bitwise_count(idx[:, None] & idx[None, :]) & 1
    return (1.0 - 2.0 * parity) * 2.0 ** (-n / 2)


def build(label, n, k_band=None, params=None):
    """Materialize one of A, L, H (normalized), T, D, Q, P, QPQ, PQP, HBDO, BDO."""
    n = check_n(n)
    if n > ORACLE_MAX_N:
        raise OracleCapError(f"dense oracle refuses n={n} (cap {ORACLE_MAX_N})")
    if label not in LABELS:
        raise InvalidInputError(f"unknown operator {label!r}; choose from {LABELS}")
    if label in ("Q", "P", "QPQ", "PQP") and k_band is None:
        raise InvalidInputError(f"{label} needs k_band")
    if label in ("HBDO", "BDO") and params is None:
        if k_band is None:
            raise InvalidInputError(f"{label} needs params or k_band")
        params = HBDOParams.commuting(k_band)

    w = weights(n)
    eye = np.eye(1 << n)
    if label == "A":
        m = _adjacency(n)
    elif label == "L":
        m = n * eye - _adjacency(n)
    elif label == "H":
        m = _hbar(n)
    elif label == "T":
        m = np.diag(np.sqrt(2.0 * w))
    elif label == "D":
        h = _hbar(n)
        m = h @ np.diag(np.sqrt(2.0 * w)) @ h
    elif label == "Q":
        m = np.diag((w <= k_band).astype(float))
    elif label == "P":
        h = _hbar(n)
        m = h @ np.diag((w <= k_band).astype(float)) @ h
    elif label in ("QPQ", "PQP"):
        q = build("Q", n, k_band).entries
        p = build("P", n, k_band).entries
        m = q @ p @ q if label == "QPQ" else p @ q @ p
    elif label == "HBDO":
        t = np.diag(np.sqrt(2.0 * w))
        lap = n * eye - _adjacency(n)
        m = t @ (params.alpha * eye - lap) @ t + params.beta * lap
    else:  # BDO
        h = _hbar(n)
        t2 = np.diag(2.0 * w)
        d = h @ np.diag(np.sqrt(2.0 * w)) @ h
        m = d @ (params.alpha * eye - t2) @ d + params.beta * t2
    return DenseOperator(n, label, m)


def band_limit_via_polynomial(n, k_band, literal=False):
    """P_K as p(A) from the Lagrange form.

    ``literal=False`` applies p to the eigenvalues n - 2|S| of A in the
    Hadamard basis; ``literal=True`` multiplies out the matrix product in A.
    """
    n = check_n(n, ORACLE_MAX_N)
    if literal:
        a = _adjacency(n)
        eye = np.eye(1 << n)
        total = np.zeros_like(a)
        for k in range(k_band + 1):
            term = eye
            for j in range(n + 1):
                if j != k:
                    term = term @ (a - (n - 2 * j) * eye) / (2.0 * (j - k))
            total += term
        return total
    h = _hbar(n)
    return h @ np.diag(lagrange_p(n, k_band, n - 2.0 * weights(n))) @ h


def dense_spectrum(op, vectors=False):
    """Ascending eigenvalues (and eigenvectors) of a symmetric operator."""
    a = np.asarray(op, dtype=float)
    if np.abs(a - a.T).max(initial=0.0) > 1e-12 * max(1.0, np.abs(a).max(initial=0.0)):
        raise InvalidInputError("dense_spectrum only accepts symmetric operators")
    a = 0.5 * (a + a.T)
    if vectors:
        return np.linalg.eigh(a)
    return np.linalg.eigvalsh(a)


@dataclass
class ComparisonReport:
    n: int
    k_band: int
    n_structured: int
    n_dense: int
    max_deviation: float
    multiplicity_mismatches: list
    max_residual: float = 0.0
    tol: float = MATCH_TOL

    @property
    def passed(self):
        return (
            self.n_structured == self.n_dense
            and self.max_deviation <= self.tol
            and not self.multiplicity_mismatches
        )

    def to_dict(self):
        d = asdict(self)
        d["passed"] = self.passed
        return d

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)


def _clusters(values, tol):
    groups = []
    for v in np.sort(values):
        if groups and v - groups[-1][-1] <= tol:
            groups[-1].append(v)
        else:
            groups.append([v])
    return groups


def compare(report, spectrum, operator=None, tol=MATCH_TOL):
    """Match the structured multiset (plus structural zeros) against a dense spectrum.

    With ``operator`` given (dense QPQ), every lifted eigenvector's residual
    ||QPQ V - lambda V|| / ||V|| is also reported.
    """
    dense = np.sort(np.asarray(spectrum, dtype=float))
    if report is None:
        structured = np.zeros(0)
        n, k_band = 0, 0
    else:
        structured = report.eigenvalue_multiset(with_structural_zeros=True)
        n, k_band = report.n, report.k_band
    if len(structured) == len(dense):
        dev = float(np.abs(structured - dense).max(initial=0.0))
    else:
        dev = float("inf")

    mismatches = []
    for group in _clusters(structured, tol):
        centre = group[0]
        count = int(np.sum(np.abs(dense - centre) <= tol + (group[-1] - group[0])))
        if count != len(group):
            mismatches.append({"lambda": float(centre), "structured": len(group), "dense": count})

    max_res = 0.0
    if operator is not None and report is not None:
        from .eigen import qpq_eigenvectors

        a = np.asarray(operator, dtype=float)
        for space in qpq_eigenvectors(report):
            v = space.vectors
            res = np.linalg.norm(v @ a.T - space.lam * v, axis=-1) / np.linalg.norm(v, axis=-1)
            max_res = max(max_res, float(res.max(initial=0.0)))
    return ComparisonReport(n, k_band, len(structured), len(dense), dev, mismatches, max_res, tol)


@dataclass(frozen=True)
class Witness:
    bdo_pqp: float
    hbdo_q: float


def noncommutation_witness(n, k_band, params):
    """Frobenius norms of [BDO, PQP] and [HBDO, Q_K]."""
    n = check_n(n, 10)
    bdo = build("BDO", n, k_band, params).entries
    pqp = build("PQP", n, k_band).entries
    hbdo = build("HBDO", n, k_band, params).entries
    q = build("Q", n, k_band).entries
    return Witness(
        float(np.linalg.norm(bdo @ pqp - pqp @ bdo)),
        float(np.linalg.norm(hbdo @ q - q @ hbdo)),
    )
