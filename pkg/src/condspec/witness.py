"""Constructive membership certificates for the condition spectrum.

Membership of z can be stated three equivalent ways: the condition number
of z*I - A reaches 1/eps; a unit vector u exists with
||(z - A)u|| <= eps*||z - A||; or z is an eigenvalue of A + E for some
perturbation with ||E|| <= eps*||z - A||.  This module builds the vector
and the rank-one perturbation explicitly, validates third-party
certificates, and cross-checks all three routes.

In the spectral norm the dual vector w with w* u = 1 and ||w|| = 1 is
simply u itself, so the perturbation is E = -eps_hat * v u* where
eps_hat * v is the residual (A - z)u.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotAMemberError
from .numkernel import (
    ComplexMatrix,
    as_matrix,
    singularity_threshold,
    spectral_norm,
)
from .report import TheoremReport
from .spectra import eps_value, in_condition_spectrum

# Relative half-width of the band around ratio = 1/eps inside which the
# three routes are allowed to disagree (they differ only by rounding).
BOUNDARY_BAND = 1e-9

# Eigen-membership tolerance used by certificates: sigma_min((A+E) - z).
_CERT_EIG_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class Witness:
    """Certificate quadruple: near-null u, residual direction v, dual w,
    residual norm eps_hat, and the rank-one perturbation making z an
    eigenvalue of A + E."""

    z: complex
    u: np.ndarray
    v: np.ndarray
    w: np.ndarray
    eps_hat: float
    E: ComplexMatrix

    def to_json_obj(self) -> dict:
        return {
            "z": complex(self.z),
            "eps_hat": float(self.eps_hat),
            "u": self.u.astype(np.complex128),
            "v": self.v.astype(np.complex128),
            "w": self.w.astype(np.complex128),
            "E": self.E.entries,
        }


def witness_from_json_obj(obj: dict) -> Witness:
    def vec(pairs):
        a = np.asarray(pairs, dtype=np.float64)
        return a[:, 0] + 1j * a[:, 1]

    e = np.asarray(obj["E"], dtype=np.float64)
    return Witness(
        z=complex(obj["z"][0], obj["z"][1]),
        u=vec(obj["u"]),
        v=vec(obj["v"]),
        w=vec(obj["w"]),
        eps_hat=float(obj["eps_hat"]),
        E=ComplexMatrix(e[..., 0] + 1j * e[..., 1]),
    )


def _fix_phase(u: np.ndarray) -> np.ndarray:
    """Rotate the global phase so the largest-magnitude entry is real
    positive (first maximum wins; deterministic output)."""
    k = int(np.argmax(np.abs(u)))
    pivot = u[k]
    if pivot == 0:
        return u
    return u * (pivot.conjugate() / abs(pivot))


def _smallest_right_singular_vector(shifted: np.ndarray) -> tuple[np.ndarray, float, float]:
    u_, s, vh = np.linalg.svd(shifted)
    vec = _fix_phase(vh[-1].conj())
    return vec, float(s[-1]), float(s[0])


def witness_vector(A, z: complex, eps) -> np.ndarray:
    """Unit u with ||(z - A)u|| <= eps*||z - A||: the right singular vector
    of the smallest singular value of z*I - A.  At an eigenvalue this is a
    normalized eigenvector and the residual is zero."""
    e = eps_value(eps)
    m = as_matrix(A)
    if not in_condition_spectrum(m, z, e):
        raise NotAMemberError(f"z = {z} is not in the {e}-condition spectrum")
    vec, _, _ = _smallest_right_singular_vector(m.shifted(z))
    return vec


def witness_perturbation(A, z: complex, eps) -> Witness:
    """Rank-one E with ||E|| <= eps*||z - A|| and z an eigenvalue of A + E.

    The residual (A - z)u = eps_hat * v fixes v and eps_hat; w = u in the
    spectral norm, giving E = -eps_hat * v u*.  When z is (numerically) an
    exact eigenvalue the residual is below the rank threshold and E = 0.
    """
    e = eps_value(eps)
    m = as_matrix(A)
    if not in_condition_spectrum(m, z, e):
        raise NotAMemberError(f"z = {z} is not in the {e}-condition spectrum")
    return _build_witness(m, z)


def _build_witness(m: ComplexMatrix, z: complex) -> Witness:
    u, smin, smax = _smallest_right_singular_vector(m.shifted(z))
    residual = m.entries @ u - z * u
    eps_hat = float(np.linalg.norm(residual))
    if eps_hat <= singularity_threshold(m.n, smax):
        v = np.zeros(m.n, dtype=np.complex128)
        v[0] = 1.0
        return Witness(z, u, v, u, 0.0, ComplexMatrix(np.zeros((m.n, m.n))))
    v = residual / eps_hat
    E = ComplexMatrix(-eps_hat * np.outer(v, u.conj()))
    return Witness(z, u, v, u, eps_hat, E)


def membership_from_perturbation(A, z: complex, E, eps) -> bool:
    """Validate a third-party certificate: accept iff ||E|| <= eps*||z - A||
    (1e-12 relative slack) and z is an eigenvalue of A + E.  Acceptance
    guarantees condition-spectrum membership of z."""
    e = eps_value(eps)
    m = as_matrix(A)
    pert = as_matrix(E)
    s = np.linalg.svd(m.shifted(z), compute_uv=False)
    if spectral_norm(pert) > e * float(s[0]) * (1.0 + 1e-12):
        return False
    shifted_sum = (m.entries + pert.entries) - z * np.eye(m.n)
    smin = float(np.linalg.svd(shifted_sum, compute_uv=False)[-1])
    return smin <= _CERT_EIG_TOL * (1.0 + spectral_norm(m))


def check_equivalence(A, z: complex, eps) -> TheoremReport:
    """Evaluate membership by all three routes and report agreement.

    Points whose ratio lies within 1e-9 (relative) of the level 1/eps are
    flagged boundary-indeterminate: the routes differ there only by
    rounding, so they are excluded from hard agreement.
    """
    e = eps_value(eps)
    m = as_matrix(A)
    u, smin, smax = _smallest_right_singular_vector(m.shifted(z))

    threshold = singularity_threshold(m.n, smax)
    ratio = float("inf") if smin <= threshold else smax / smin
    route_ratio = ratio >= 1.0 / e

    residual = float(np.linalg.norm(m.entries @ u - z * u))
    route_vector = residual <= e * smax

    w = _build_witness(m, z)
    route_certificate = membership_from_perturbation(m, z, w.E, e)

    boundary = np.isfinite(ratio) and abs(ratio * e - 1.0) <= BOUNDARY_BAND
    agree = route_ratio == route_vector == route_certificate
    return TheoremReport(
        theorem_id="EQ",
        passed=bool(agree or boundary),
        lhs=ratio if np.isfinite(ratio) else float("inf"),
        rhs=1.0 / e,
        slack_used=BOUNDARY_BAND,
        details={
            "z": [float(np.real(z)), float(np.imag(z))],
            "ratio_route": bool(route_ratio),
            "vector_route": bool(route_vector),
            "certificate_route": bool(route_certificate),
            "boundary_indeterminate": bool(boundary),
            "eps_hat": w.eps_hat,
        },
    )
