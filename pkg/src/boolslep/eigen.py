"""Eigenspaces of HBDO, QPQ and PQP assembled level by level.

Each level r contributes the eigenvectors of a small coefficient matrix,
lifted over an orthonormal basis of W_r. Every eigenvalue found at level r
has multiplicity dim W_r = C(n,r) - C(n,r-1).
"""

import json
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .coeff import CoeffMatrix, Route, coeff_p, hbdo_matrix, principal_minor
from .cube import ball_size, check_n
from .errors import EigenSolveError, InvalidInputError, PreconditionError
from .hadamard import hadamard_apply, wht
from .harmonics import lift, plus_power_norms, vr_dim, wr_basis, wr_dim

DEGENERACY_GAP = 1e-9
COINCIDENCE_TOL = 1e-9
IMAG_TOL = 1e-10


@dataclass(frozen=True)
class EigenPair:
    lam: float
    coeffs: np.ndarray = field(repr=False)
    residual: float
    degenerate: bool = False


def _dump(a):
    return np.array2string(np.asarray(a), precision=17, max_line_width=200)


def eig_small(m, weights=None):
    """All eigenpairs of a small real matrix, sorted by descending eigenvalue.

    ``weights`` is a diagonal similarity d with D M D^-1 symmetric (the norms
    of A_+^k W for a self-adjoint operator on V_r). When given, the symmetric
    problem is solved and eigenvectors come back as D^-1 u, which makes each
    lifted vector unit-norm for unit W. Otherwise a general real solve is
    used and a non-real spectrum is an error.
    """
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidInputError(f"expected a square matrix, got shape {a.shape}")
    try:
        if weights is not None:
            d = np.asarray(weights, dtype=float)[: a.shape[0]]
            j = d[:, None] * a / d[None, :]
            lam, u = np.linalg.eigh(0.5 * (j + j.T))
            vecs = u / d[:, None]
        else:
            lam, vecs = np.linalg.eig(a)
            scale = max(1.0, np.abs(a).max(initial=0.0))
            if np.abs(lam.imag).max(initial=0.0) > IMAG_TOL * scale:
                raise EigenSolveError(f"spectrum is not real for matrix\n{_dump(a)}")
            lam, vecs = lam.real, vecs.real
            vecs = vecs / np.linalg.norm(vecs, axis=0)
    except np.linalg.LinAlgError as exc:
        raise EigenSolveError(f"eigensolver failed ({exc}) for matrix\n{_dump(a)}") from exc

    order = np.argsort(-lam, kind="stable")
    lam, vecs = lam[order], vecs[:, order]
    gaps = np.abs(np.diff(lam)) < DEGENERACY_GAP * np.maximum(1.0, np.abs(lam[1:]))
    flagged = np.zeros(len(lam), dtype=bool)
    flagged[:-1] |= gaps
    flagged[1:] |= gaps
    pairs = []
    for i, value in enumerate(lam):
        c = vecs[:, i]
        res = float(np.linalg.norm(a @ c - value * c))
        pairs.append(EigenPair(float(value), c, res, bool(flagged[i])))
    return pairs


def lift_unit(n, r, coeffs, w_cube):
    """sum_k c_k A_+^k W normalized by the norm-propagation formula."""
    d = plus_power_norms(n, r, len(coeffs))
    return lift(n, r, coeffs, w_cube) / np.linalg.norm(d * coeffs)


# -- HBDO ----------------------------------------------------------------------

@dataclass
class HBDOLevel:
    n: int
    r: int
    matrix: CoeffMatrix
    pairs: list
    vectors: list = field(default_factory=list, repr=False)  # per pair: (dim W_r, 2**n)

    @property
    def multiplicity(self):
        return wr_dim(self.n, self.r)

    @property
    def degenerate(self):
        return any(p.degenerate for p in self.pairs)


def hbdo_eigenspaces(n, params, r, lifted=True):
    """Eigenpairs of HBDO on V_r from the determinate block of its matrix.

    The block has size n - 2r + 1 (the full matrix carries n - r + 1 rows,
    the rest act on vanishing A_+^k W).
    """
    n = check_n(n)
    if wr_dim(n, r) <= 0:
        raise PreconditionError(f"W_{r} is trivial for n={n}")
    full = hbdo_matrix(n, r, params)
    size = vr_dim(n, r)
    pairs = eig_small(full.entries[:size, :size], plus_power_norms(n, r, size))
    level = HBDOLevel(n, r, full, pairs)
    if lifted:
        w = wr_basis(n, r).as_cube()
        level.vectors = [lift_unit(n, r, p.coeffs, w) for p in pairs]
    return level


# -- QPQ / PQP -----------------------------------------------------------------

@dataclass
class LevelSpectrum:
    r: int
    multiplicity: int
    minor: CoeffMatrix
    pairs: list

    @property
    def eigenvalues(self):
        return [p.lam for p in self.pairs]


@dataclass
class EigenspaceReport:
    n: int
    k_band: int
    route: str
    levels: list

    @property
    def dim_k(self):
        return ball_size(self.n, self.k_band)

    @property
    def counted(self):
        return sum(len(lv.pairs) * lv.multiplicity for lv in self.levels)

    def eigenvalue_multiset(self, with_structural_zeros=False):
        vals = [p.lam for lv in self.levels for p in lv.pairs for _ in range(lv.multiplicity)]
        if with_structural_zeros:
            vals += [0.0] * ((1 << self.n) - self.counted)
        return np.sort(np.array(vals, dtype=float))

    @cached_property
    def coincidences(self):
        """Eigenvalues shared (within tolerance) by two different levels."""
        out = []
        for i, a in enumerate(self.levels):
            for b in self.levels[i + 1:]:
                for p in a.pairs:
                    for q in b.pairs:
                        if abs(p.lam - q.lam) <= COINCIDENCE_TOL:
                            out.append({"r1": a.r, "r2": b.r, "lambda": p.lam})
        return out

    def to_dict(self):
        return {
            "n": self.n,
            "K": self.k_band,
            "route": self.route,
            "levels": [
                {
                    "r": lv.r,
                    "multiplicity": lv.multiplicity,
                    "eigenvalues": lv.eigenvalues,
                    "coeff_vectors": [p.coeffs.tolist() for p in lv.pairs],
                    "residuals": [p.residual for p in lv.pairs],
                }
                for lv in self.levels
            ],
            "identities": {"dimK": self.dim_k, "counted": self.counted},
            "coincidences": self.coincidences,
        }

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)


def qpq_eigenspaces(n, k_band, route=Route.SPECTRAL):
    """Spectral report of QPQ on the range of Q_K, one level per r <= K.

    At level r the eigenproblem is the leading principal minor of M_{P,r} of
    size min(K, n - r) - r + 1: Q_K keeps spheres up to K and V_r has no
    component past sphere n - r.
    """
    n = check_n(n)
    if not 0 <= k_band <= n:
        raise InvalidInputError(f"band K={k_band} outside [0, {n}]")
    levels = []
    for r in range(0, min(k_band, n // 2) + 1):
        size = min(k_band, n - r) - r + 1
        minor = principal_minor(coeff_p(n, k_band, r, route), size)
        pairs = eig_small(minor, plus_power_norms(n, r, size))
        levels.append(LevelSpectrum(r, wr_dim(n, r), minor, pairs))
    return EigenspaceReport(n, k_band, Route(route).value, levels)


@dataclass
class LiftedEigenspace:
    r: int
    lam: float
    vectors: np.ndarray = field(repr=False)  # (multiplicity, 2**n)


def qpq_eigenvectors(report):
    out = []
    for lv in report.levels:
        w = wr_basis(report.n, lv.r).as_cube()
        for p in lv.pairs:
            out.append(LiftedEigenspace(lv.r, p.lam, lift_unit(report.n, lv.r, p.coeffs, w)))
    return out


def pqp_eigenvectors(report, normalized=False):
    """Hadamard images H V (or H_bar V) of the QPQ eigenvectors."""
    transform = wht if normalized else hadamard_apply
    return [LiftedEigenspace(e.r, e.lam, transform(e.vectors)) for e in qpq_eigenvectors(report)]
