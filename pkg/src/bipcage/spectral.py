"""Exact matrix identities on concrete graphs and a floating-point spectrum cross-check.

Integer matrices are numpy arrays. Products run in int64 when a magnitude
bound proves they cannot overflow and fall back to Python ints (object
dtype) otherwise, so every verdict here is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import graphcore
from .graphcore import Graph, GraphError
from .polycore import (
    IntPolynomial,
    cycle_charpoly,
    dickson,
    dickson_H,
    divisors,
    half_trace,
)

HOLDS = "HOLDS"
FAILS = "FAILS"
NOT_APPLICABLE = "NOT_APPLICABLE"

DEFAULT_TOL = 1e-8
_INT64_SAFE = 2**62


class SpectralError(ArithmeticError):
    pass


def _maxabs(m: np.ndarray) -> int:
    if m.size == 0:
        return 0
    return int(max(abs(int(m.max())), abs(int(m.min()))))


def _as_object(m: np.ndarray) -> np.ndarray:
    return m if m.dtype == object else m.astype(object)


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise SpectralError(f"dimension mismatch {a.shape} @ {b.shape}")
    if a.dtype != object and b.dtype != object:
        if a.shape[1] * _maxabs(a) * _maxabs(b) < _INT64_SAFE:
            return a @ b
    return _narrow(_as_object(a) @ _as_object(b))


def _narrow(m: np.ndarray) -> np.ndarray:
    if m.dtype == object and _maxabs(m) < _INT64_SAFE:
        return m.astype(np.int64)
    return m


def _add(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.dtype != object and b.dtype != object and _maxabs(a) + _maxabs(b) < _INT64_SAFE:
        return a + b
    return _narrow(_as_object(a) + _as_object(b))


def _scale(c: int, m: np.ndarray) -> np.ndarray:
    if m.dtype != object and abs(c) * _maxabs(m) < _INT64_SAFE:
        return c * m
    return _narrow(c * _as_object(m))


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def poly_at_matrix(p: IntPolynomial, m: np.ndarray) -> np.ndarray:
    """Exact Horner evaluation of p at the square integer matrix m."""
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise SpectralError(f"poly_at_matrix needs a square matrix, got shape {m.shape}")
    n = m.shape[0]
    acc = np.zeros((n, n), dtype=np.int64)
    eye = identity(n)
    for c in reversed(p.coeffs):
        acc = _add(matmul(acc, m), _scale(c, eye))
    return acc


@dataclass
class IdentityReport:
    identity: str
    status: str
    first_discrepancy: tuple[int, int, int, int] | None = None
    reason: str | None = None
    details: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.status == HOLDS

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "status": self.status,
            "holds": self.holds,
            "first_discrepancy": list(self.first_discrepancy) if self.first_discrepancy else None,
            "reason": self.reason,
            "details": self.details,
        }


def _compare(name: str, lhs: np.ndarray, rhs: np.ndarray, details: dict) -> IdentityReport:
    diff = np.argwhere(_as_object(lhs) != _as_object(rhs))
    if len(diff) == 0:
        return IdentityReport(name, HOLDS, details=details)
    i, j = (int(t) for t in diff[0])
    return IdentityReport(name, FAILS, (i, j, int(lhs[i, j]), int(rhs[i, j])), details=details)


@dataclass
class _Shape:
    k: int
    d: int
    n: int
    A: np.ndarray
    decomposition: graphcore.DistanceDecomposition


def _shape_gate(g: Graph) -> _Shape | str:
    """The even-girth shape every verifier needs, or the reason it is missing."""
    try:
        prof = graphcore.profile(g)
    except GraphError as exc:
        return str(exc)
    if prof.k is None:
        return "graph is not regular"
    if prof.k < 3:
        return f"valency k={prof.k} is below scope (k >= 3)"
    if prof.girth is None or prof.girth % 2:
        return f"girth {prof.girth} is not even"
    d = prof.girth // 2
    if prof.diameter > d + 1:
        return f"diameter {prof.diameter} exceeds d+1 = {d + 1}"
    dec = graphcore.distance_decomposition(g, d)
    return _Shape(prof.k, d, g.n, g.adjacency_matrix(), dec)


def verify_path_identity(g: Graph) -> IdentityReport:
    """F_d(A) == k A_d - A E."""
    name = "path_identity"
    shape = _shape_gate(g)
    if isinstance(shape, str):
        return IdentityReport(name, NOT_APPLICABLE, reason=shape)
    k, d, A = shape.k, shape.d, shape.A
    lhs = poly_at_matrix(dickson("F", k, d), A)
    rhs = _add(_scale(k, shape.decomposition.A(d)), _scale(-1, matmul(A, shape.decomposition.E)))
    return _compare(name, lhs, rhs, {"k": k, "d": d})


def verify_quotient_identity(g: Graph) -> IdentityReport:
    """k J == (A + kI)(H_{d-1}(A) + E)."""
    name = "quotient_identity"
    shape = _shape_gate(g)
    if isinstance(shape, str):
        return IdentityReport(name, NOT_APPLICABLE, reason=shape)
    k, d, A, n = shape.k, shape.d, shape.A, shape.n
    inner = _add(poly_at_matrix(dickson_H(k, d - 1), A), shape.decomposition.E)
    rhs = matmul(_add(A, _scale(k, identity(n))), inner)
    lhs = np.full((n, n), k, dtype=np.int64)
    return _compare(name, lhs, rhs, {"k": k, "d": d})


def verify_partition_identity(g: Graph) -> IdentityReport:
    """sum_{i<=d} A_i + E == J."""
    name = "partition_identity"
    shape = _shape_gate(g)
    if isinstance(shape, str):
        return IdentityReport(name, NOT_APPLICABLE, reason=shape)
    dec = shape.decomposition
    total = sum(dec.matrices)
    return _compare(name, total, np.ones_like(total), {"k": shape.k, "d": shape.d})


# annihilators

@dataclass
class Annihilator:
    poly: IntPolynomial
    cyclic_form: IntPolynomial | None = None  # (-H+2) prod f_l(-H)^2 for a single cycle


def _neg_H(k: int, d: int) -> IntPolynomial:
    return -dickson_H(k, d - 1)


def build_annihilator(k: int, d: int, profile: graphcore.ExcessProfile) -> Annihilator:
    """(x-k)(x+k) prod_i (-1)^{l_i} chi(C_{l_i}, -H_{d-1}(x)) over the cycles of the excess graph."""
    if profile.classification not in (graphcore.CYCLIC, graphcore.BICYCLIC, graphcore.POLYCYCLIC, graphcore.EMPTY):
        raise SpectralError(f"annihilator needs a 2-regular excess graph, got {profile.classification}")
    y = _neg_H(k, d)
    poly = IntPolynomial((-k * k, 0, 1))
    for l in profile.cycle_lengths:
        q = cycle_charpoly(l).compose(y)
        poly = poly * (q if l % 2 == 0 else -q)
    cyclic_form = None
    if profile.classification == graphcore.CYCLIC:
        n = profile.cycle_lengths[0]
        cyclic_form = y + 2
        for l in divisors(n):
            if l >= 3:
                cyclic_form = cyclic_form * half_trace(l).compose(y) ** 2
    return Annihilator(poly, cyclic_form)


def _min_poly_2cos(m: int) -> IntPolynomial:
    """Minimal polynomial of 2cos(2*pi/m)."""
    if m == 1:
        return IntPolynomial((-2, 1))
    if m == 2:
        return IntPolynomial((2, 1))
    return half_trace(m)


def reduced_annihilator(k: int, d: int, profile: graphcore.ExcessProfile) -> IntPolynomial:
    """Squarefree counterpart of build_annihilator: same root set, far lower degree.

    Each distinct eigenvalue of the excess graph contributes its minimal
    polynomial composed with -H_{d-1}. An empty excess graph (E = 0) has the
    single eigenvalue 0, contributing H_{d-1} itself.
    """
    y = _neg_H(k, d)
    poly = IntPolynomial((-k * k, 0, 1))
    if profile.classification == graphcore.EMPTY:
        return poly * y
    if not profile.is_2_regular:
        raise SpectralError(f"annihilator needs a 2-regular excess graph, got {profile.classification}")
    orders = sorted({m for l in profile.cycle_lengths for m in divisors(l)})
    for m in orders:
        poly = poly * _min_poly_2cos(m).compose(y)
    return poly


def annihilator_check(g: Graph) -> IdentityReport:
    """M(A)(nI - J) == 0 for the reduced annihilator M of the graph's excess profile."""
    name = "annihilator"
    shape = _shape_gate(g)
    if isinstance(shape, str):
        return IdentityReport(name, NOT_APPLICABLE, reason=shape)
    ep = graphcore.excess_graph(g)
    if not (ep.is_2_regular or ep.classification == graphcore.EMPTY):
        raise SpectralError(f"excess graph is {ep.classification}; annihilator check needs 2-regular E")
    k, d, n = shape.k, shape.d, shape.n
    m = reduced_annihilator(k, d, ep)
    full_degree = build_annihilator(k, d, ep).poly.degree
    proj = _add(_scale(n, identity(n)), _scale(-1, np.ones((n, n), dtype=np.int64)))
    lhs = matmul(poly_at_matrix(m, shape.A), proj)
    return _compare(
        name,
        lhs,
        np.zeros((n, n), dtype=np.int64),
        {"k": k, "d": d, "reduced_degree": m.degree, "full_degree": full_degree},
    )


# floating-point cross-check

@dataclass
class SpectralReport:
    tolerance: float
    mu: list[float]
    lam: list[float]
    pairs: list[dict]
    max_residual: float | None
    ok: bool
    tallies: dict = field(default_factory=dict)
    reason: str | None = None

    def to_dict(self) -> dict:
        return {
            "tolerance": self.tolerance,
            "mu": self.mu,
            "lambda": self.lam,
            "pairs": self.pairs,
            "max_residual": self.max_residual,
            "ok": self.ok,
            "tallies": self.tallies,
            "reason": self.reason,
        }


def _cluster(values, tol=1e-6):
    """Group sorted eigenvalues into (value, multiplicity)."""
    out = []
    for v in sorted(values):
        if out and abs(v - out[-1][0]) <= tol:
            val, mult = out[-1]
            out[-1] = ((val * mult + v) / (mult + 1), mult + 1)
        else:
            out.append((v, 1))
    return out


def spectrum_crosscheck(g: Graph, tol: float = DEFAULT_TOL) -> SpectralReport:
    """Pair every eigenvalue mu != +-k of A with an eigenvalue lambda of E via H_{d-1}(mu) = -lambda."""
    if not tol > 0:
        raise ValueError("tolerance must be positive")
    shape = _shape_gate(g)
    if isinstance(shape, str):
        return SpectralReport(tol, [], [], [], None, False, reason=shape)
    k, d = shape.k, shape.d
    A = shape.A.astype(float)
    E = shape.decomposition.E.astype(float)
    try:
        mu = np.linalg.eigvalsh(A)
        lam = np.linalg.eigvalsh(E)
    except np.linalg.LinAlgError as exc:
        raise SpectralError(f"eigensolver failed: {exc}") from exc
    H = dickson_H(k, d - 1)
    pairs = []
    worst = 0.0
    for value, mult in _cluster(mu):
        if abs(value - k) <= 1e-6 or abs(value + k) <= 1e-6:
            continue
        h = float(H(value))
        j = int(np.argmin(np.abs(lam + h)))
        residual = abs(h + float(lam[j]))
        worst = max(worst, residual)
        pairs.append(
            {"mu": value, "multiplicity": mult, "H(mu)": h, "lambda": float(lam[j]), "residual": residual}
        )
    tallies = {
        "H=-2": sum(p["multiplicity"] for p in pairs if abs(p["lambda"] - 2) <= 1e-6),
        "H=+2": sum(p["multiplicity"] for p in pairs if abs(p["lambda"] + 2) <= 1e-6),
        "lambda_multiplicities": [
            {"lambda": v, "multiplicity": m} for v, m in _cluster(lam)
        ],
    }
    return SpectralReport(
        tol,
        [float(v) for v in mu],
        [float(v) for v in lam],
        pairs,
        worst,
        worst <= tol,
        tallies,
    )
