"""Spin squeezing parameter xi = (4/3) min transverse variance of S = sum(sigma)/2.

Three routes: the closed-form trigonometric quadratic in the transverse angle
(coefficients A, B, C), the special-slice formulas, and a direct oracle that
diagonalizes the spin covariance of the qubit expansion.

Angle convention: the closed-form quadratic

    A cos^2(theta) + B cos(theta) sin(theta) + C

equals (4/3) Var(S . n) along ``n = xhat sin(theta) + yhat cos(theta)``, i.e.
with theta measured from ``yhat``.  Along ``xhat cos(theta) + yhat sin(theta)``
the variance is ``A sin^2 + B cos sin + C`` instead.  Both have the same
minimum, so xi is unaffected.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache, reduce

import numpy as np

from .canonical import CLASS_EPS, ParamPoint
from .errors import DegenerateFrame, NotDegenerate, OutOfRange
from .state import ThreeBosonState, to_qubit_expansion


class Method(enum.Enum):
    CLOSED_FORM = "ClosedForm"
    SPECIAL_CASE = "SpecialCase"
    DIRECT_ORACLE = "DirectOracle"
    FULL_SPHERE_FALLBACK = "FullSphereFallback"


class SqueezingSlice(enum.Enum):
    S_EQUALS_ZERO = "s=0"
    T_EQUALS_ZERO = "t=0"
    R_EQUALS_ZERO = "r=0"


@dataclass(frozen=True)
class SpinVector:
    x: float
    y: float
    z: float

    @property
    def array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    @property
    def length(self) -> float:
        return float(np.linalg.norm(self.array))


@dataclass(frozen=True)
class Frame:
    xhat: np.ndarray
    yhat: np.ndarray
    zhat: np.ndarray
    degenerate: bool = False


@dataclass(frozen=True)
class AbcCoefficients:
    A: float
    B: float
    c_coef: float
    u: float


@dataclass(frozen=True)
class SqueezingResult:
    xi: float
    theta_star: float
    mean_spin: SpinVector
    frame: Frame
    method: Method
    degenerate: bool
    direction: np.ndarray  # unit vector of least variance


_FIXED_FRAME = Frame(np.eye(3)[0], np.eye(3)[1], np.eye(3)[2], degenerate=True)


@lru_cache(maxsize=None)
def spin_operators() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Collective (Sx, Sy, Sz) on three qubits."""
    paulis = (np.array([[0, 1], [1, 0]], dtype=complex),
              np.array([[0, -1j], [1j, 0]]),
              np.array([[1, 0], [0, -1]], dtype=complex))
    eye = np.eye(2)
    ops = []
    for p in paulis:
        terms = [reduce(np.kron, [p if k == j else eye for k in range(3)]) for j in range(3)]
        ops.append(sum(terms) / 2)
    return tuple(ops)


def spin_moments(state: ThreeBosonState) -> tuple[np.ndarray, np.ndarray]:
    """Mean spin <S_i> and symmetrized covariance <{S_i, S_j}>/2 - <S_i><S_j>."""
    v = to_qubit_expansion(state)
    sv = [op @ v for op in spin_operators()]
    mean = np.array([np.vdot(v, x).real for x in sv])
    second = np.array([[np.vdot(x, y).real for y in sv] for x in sv])
    return mean, second - np.outer(mean, mean)


def mean_spin(p: ParamPoint) -> SpinVector:
    p.require_normalized()
    r, s, t, phi = p.r, p.s, p.t, p.phi
    return SpinVector(float(3 * r * s * np.cos(phi)), float(3 * r * s * np.sin(phi)),
                      float(1.5 * (r**2 + s**2 - t**2)))


def mean_spin_oracle(state: ThreeBosonState) -> SpinVector:
    return SpinVector(*map(float, spin_moments(state)[0]))


def build_frame(p: ParamPoint, epsilon: float = CLASS_EPS) -> Frame:
    m = mean_spin(p)
    if m.length <= epsilon:
        return _FIXED_FRAME
    r, s, t, phi = p.r, p.s, p.t, p.phi
    D = r**2 + s**2 - t**2
    u = 1.0 / np.sqrt(D**2 + 4 * r**2 * s**2)
    xhat = np.array([np.sin(phi), -np.cos(phi), 0.0])
    yhat = u * np.array([np.cos(phi) * D, np.sin(phi) * D, -2 * r * s])
    return Frame(xhat, yhat, m.array / m.length, degenerate=False)


def abc_coefficients(p: ParamPoint, epsilon: float = CLASS_EPS) -> AbcCoefficients:
    """Coefficients of the transverse-variance quadratic.

    Evaluated in a factored form that is algebraically identical to the
    expanded polynomials (see :func:`abc_coefficients_expanded`) but keeps
    u^2 only in the bounded combination u^2 r^2 s^2 <= 1/4, so nothing blows
    up as the mean spin shrinks.
    """
    p.require_normalized()
    r, s, t, phi = p.r, p.s, p.t, p.phi
    D = r**2 + s**2 - t**2
    inv_u = np.sqrt(D**2 + 4 * r**2 * s**2)
    if inv_u < epsilon:
        raise DegenerateFrame("mean spin vanishes; A, B, C are undefined")
    u = 1.0 / inv_u
    c3, s3 = np.cos(3 * phi), np.sin(3 * phi)
    rsu2 = (r * s * u) ** 2
    A = 8 * s * t * c3 - 8 * rsu2 * (2 * s * t * c3 + r**2 + 5 * s**2 - 3 * t**2)
    B = 8 * s * t * s3 * (D * u)
    C = 1 + 4 * s**2 - 4 * s * t * c3
    return AbcCoefficients(float(A), float(B), float(C), float(u))


def abc_coefficients_expanded(p: ParamPoint) -> AbcCoefficients:
    """The same coefficients from the fully expanded polynomials in cos(phi), sin(phi)."""
    p.require_normalized()
    r, s, t, phi = p.r, p.s, p.t, p.phi
    u = 1.0 / np.sqrt((r**2 + s**2 - t**2) ** 2 + 4 * r**2 * s**2)
    c, sn = np.cos(phi), np.sin(phi)
    u2 = u * u
    A = u2 * (128 * s**3 * r**2 * t * c**3 - 96 * s**3 * r**2 * t * c - 40 * s**4 * r**2
              - 64 * s * t**3 * r**2 * c**3 - 24 * s * t**5 * c + 48 * s**3 * t**3 * c
              - 24 * s**5 * t * c - 64 * s**3 * t**3 * c**3 + 32 * s**5 * t * c**3
              + 32 * s * t**5 * c**3 + 24 * s**2 * r**2 * t**2 + 48 * s * t**3 * r**2 * c
              - 24 * s * r**4 * t * c + 32 * s * r**4 * t * c**3 - 8 * s**2 * r**4)
    B = u * (-32 * t**3 * s * c**2 * sn + 32 * s**3 * t * c**2 * sn
             + 32 * r**2 * s * t * c**2 * sn - 8 * r**2 * s * t * sn
             - 8 * s**3 * t * sn + 8 * t**3 * s * sn)
    C = 1 + 4 * s**2 + 12 * s * t * c - 16 * s * t * c**3
    return AbcCoefficients(float(A), float(B), float(C), float(u))


def variance_at_theta(p: ParamPoint, theta: float) -> float:
    """(4/3) Delta S_perp from the closed-form quadratic in theta."""
    k = abc_coefficients(p)
    return k.A * np.cos(theta) ** 2 + k.B * np.cos(theta) * np.sin(theta) + k.c_coef


def transverse_variance(p: ParamPoint, direction) -> float:
    """(4/3) Var(S . n) of the state at ``p`` along a unit vector ``n``."""
    _, cov = spin_moments(p.to_state())
    n = np.asarray(direction, dtype=float)
    return float(4 / 3 * n @ cov @ n)


def transverse_variance_oracle(p: ParamPoint, theta: float, from_yhat: bool = False) -> float:
    """Direct (4/3) Var(S . n_perp) with n_perp = xhat cos(theta) + yhat sin(theta).

    ``from_yhat=True`` measures theta from yhat instead, the convention under
    which the closed-form quadratic holds.
    """
    f = build_frame(p)
    if f.degenerate:
        raise DegenerateFrame("mean spin vanishes; transverse plane is undefined")
    if from_yhat:
        n = f.xhat * np.sin(theta) + f.yhat * np.cos(theta)
    else:
        n = f.xhat * np.cos(theta) + f.yhat * np.sin(theta)
    return transverse_variance(p, n)


def xi_closed(p: ParamPoint, epsilon: float = CLASS_EPS) -> SqueezingResult:
    p.require_normalized()
    m = mean_spin(p)
    if m.length <= epsilon:
        return full_sphere_min(p.to_state(), epsilon)
    frame = build_frame(p, epsilon)
    k = abc_coefficients(p, epsilon)
    xi = k.A / 2 + k.c_coef - np.hypot(k.A, k.B) / 2
    theta = (0.5 * np.arctan2(-k.B, -k.A)) % np.pi
    direction = frame.xhat * np.sin(theta) + frame.yhat * np.cos(theta)
    return SqueezingResult(float(xi), float(theta), m, frame, Method.CLOSED_FORM, False, direction)


def xi_special(slice_: SqueezingSlice, s: float) -> float:
    slice_ = SqueezingSlice(slice_)
    if slice_ is SqueezingSlice.S_EQUALS_ZERO:
        return 1.0
    smax = 1 / np.sqrt(3)
    if not (-1e-12 <= s <= smax + 1e-12):
        raise OutOfRange(f"s = {s!r} outside [0, 1/sqrt(3)]")
    s = min(max(s, 0.0), smax)
    if slice_ is SqueezingSlice.T_EQUALS_ZERO:
        return (1 - 4 * s**2 + 16 * s**6) / (1 - 8 * s**4)
    return 1 + 4 * s**2 - 4 * np.sqrt(max(s**2 - 3 * s**4, 0.0))


def _perp_frame(zhat: np.ndarray) -> Frame:
    ref = np.array([0.0, 0.0, 1.0]) if abs(zhat[2]) < 0.9 else np.array([1.0, 0.0, 0.0])
    xhat = np.cross(ref, zhat)
    xhat /= np.linalg.norm(xhat)
    return Frame(xhat, np.cross(zhat, xhat), zhat, degenerate=False)


def xi_direct(state: ThreeBosonState, epsilon: float = CLASS_EPS) -> SqueezingResult:
    """Basis-independent oracle: smallest eigenvalue of the transverse covariance block."""
    mean, cov = spin_moments(state)
    norm = np.linalg.norm(mean)
    if norm <= epsilon:
        return full_sphere_min(state, epsilon)
    frame = _perp_frame(mean / norm)
    basis = np.stack([frame.xhat, frame.yhat], axis=1)
    vals, vecs = np.linalg.eigh(basis.T @ cov @ basis)
    theta = float(np.arctan2(vecs[1, 0], vecs[0, 0]) % np.pi)
    direction = basis @ vecs[:, 0]
    return SqueezingResult(float(4 / 3 * vals[0]), theta, SpinVector(*map(float, mean)), frame,
                           Method.DIRECT_ORACLE, False, direction)


def full_sphere_min(state: ThreeBosonState, epsilon: float = CLASS_EPS) -> SqueezingResult:
    """Degenerate mean spin: minimize (4/3) Var(S . n) over the whole sphere."""
    mean, cov = spin_moments(state)
    if np.linalg.norm(mean) > epsilon:
        raise NotDegenerate("mean spin is nonzero; use the transverse frame")
    vals, vecs = np.linalg.eigh(cov)
    return SqueezingResult(float(4 / 3 * vals[0]), 0.0, SpinVector(*map(float, mean)), _FIXED_FRAME,
                           Method.FULL_SPHERE_FALLBACK, True, vecs[:, 0])
