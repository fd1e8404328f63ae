"""Pairwise concurrence and the three-tangle, by closed form and by oracle."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .canonical import (
    CLASS_EPS,
    CanonicalForm,
    EntanglementClass,
    ParamPoint,
    canonicalize,
    classify,
)
from .errors import ConsistencyError
from .state import (
    ThreeBosonState,
    reduced_density_two,
    to_qubit_expansion,
)

CLAMP_TOL = 1e-10
MISMATCH_TOL = 1e-6

_SY = np.array([[0, -1j], [1j, 0]])
_YY = np.kron(_SY, _SY)


def _clamp(x: float, what: str) -> float:
    if x < 0:
        if x < -CLAMP_TOL:
            raise ConsistencyError(f"{what} = {x!r} is negative beyond rounding")
        return 0.0
    return x


def _flip_singular_values(W: np.ndarray) -> np.ndarray:
    """Descending lambdas for rho = W W^dag: singular values of W^T (Y(x)Y) W."""
    sv = np.linalg.svd(W.T @ _YY @ W, compute_uv=False)
    return np.concatenate([sv, np.zeros(4 - len(sv))])


def wootters_spectrum(rho: np.ndarray) -> np.ndarray:
    """Descending square roots of the eigenvalues of rho (Y(x)Y) rho* (Y(x)Y).

    Computed as singular values of W^T (Y(x)Y) W with rho = W W^dag, which
    avoids square roots of eigenvalues that are zero up to rounding.
    """
    vals, vecs = np.linalg.eigh(rho)
    vals = np.array([_clamp(v, "density eigenvalue") for v in vals])
    return _flip_singular_values(vecs * np.sqrt(vals))


def concurrence_wootters(state: ThreeBosonState) -> tuple[float, np.ndarray]:
    """Concurrence of any particle pair (all three pairs coincide)."""
    # rho_AB = psi psi^dag with psi the 4x2 reshaped amplitudes: an exact factor
    lam = _flip_singular_values(to_qubit_expansion(state).reshape(4, 2))
    return max(lam[0] - lam[1] - lam[2] - lam[3], 0.0), lam


def concurrence_closed(p: ParamPoint) -> float:
    """The printed two-radical concurrence expression in (r, s, t, phi)."""
    p.require_normalized()
    r, s, t, phi = p.r, p.s, p.t, p.phi
    inner = (t**4 * s**4 + t**4 * r**2 * s**2 - 2 * s**6 * t**2 + s**4 * t**2 * r**2
             + s**8 + 2 * r**2 * s**3 * t**3 * np.cos(3 * phi))
    root = np.sqrt(_clamp(inner, "inner radicand"))
    base = 4 * t**2 * s**2 + 2 * t**2 * r**2 + 4 * s**4
    plus = _clamp(base + 2 * root, "outer radicand")
    minus = _clamp(base - 2 * root, "outer radicand")
    return float(np.sqrt(plus) - np.sqrt(minus))


def bipartite_concurrence(state: ThreeBosonState) -> float:
    """Concurrence of the cut A|(BC) for the pure state: 2 sqrt(det rho_A)."""
    # det rho_A is the squared product of the Schmidt coefficients
    sv = np.linalg.svd(to_qubit_expansion(state).reshape(2, 4), compute_uv=False)
    return float(2 * sv[0] * sv[1])


def tau_closed(p: ParamPoint) -> float:
    p.require_normalized()
    r, s, t = p.r, p.s, p.t
    return float(4 * abs(r**2 * t**2 + 4 * t * s**3 * np.exp(3j * p.phi)))


def hyperdeterminant(vec) -> complex:
    """Cayley hyperdeterminant of a 2x2x2 amplitude array (bit-string order)."""
    x = np.asarray(vec, dtype=complex).reshape(2, 2, 2)
    a000, a001, a010, a011 = x[0, 0, 0], x[0, 0, 1], x[0, 1, 0], x[0, 1, 1]
    a100, a101, a110, a111 = x[1, 0, 0], x[1, 0, 1], x[1, 1, 0], x[1, 1, 1]
    d1 = a000**2 * a111**2 + a001**2 * a110**2 + a010**2 * a101**2 + a100**2 * a011**2
    d2 = (a000 * a111 * a011 * a100 + a000 * a111 * a101 * a010
          + a000 * a111 * a110 * a001 + a011 * a100 * a101 * a010
          + a011 * a100 * a110 * a001 + a101 * a010 * a110 * a001)
    d3 = a000 * a110 * a101 * a011 + a111 * a001 * a010 * a100
    return d1 - 2 * d2 + 4 * d3


def tau_hyperdeterminant(state: ThreeBosonState) -> float:
    return float(4 * abs(hyperdeterminant(to_qubit_expansion(state))))


def tau_ckw(state: ThreeBosonState, clamp: bool = True) -> float:
    """C^2_{A(BC)} - C^2_{AB} - C^2_{AC} with oracle concurrences.

    ``clamp=False`` returns the raw difference, which may dip below zero by
    rounding.
    """
    c_ab, _ = concurrence_wootters(state)
    raw = bipartite_concurrence(state) ** 2 - 2 * c_ab**2
    return max(raw, 0.0) if clamp else raw


@dataclass
class EntanglementReport:
    canonical: CanonicalForm
    entanglement_class: EntanglementClass
    concurrence_closed: float
    concurrence_oracle: float
    tau_closed: float
    tau_oracle: float
    bipartite_concurrence: float
    ckw_residual_oracle: float
    ckw_residual_closed: float
    flags: list[str] = field(default_factory=list)


def report(state: ThreeBosonState, epsilon: float = CLASS_EPS) -> EntanglementReport:
    form = canonicalize(state)
    point = form.point
    c_closed = concurrence_closed(point)
    c_oracle, _ = concurrence_wootters(state)
    t_closed = tau_closed(point)
    t_oracle = tau_hyperdeterminant(state)
    bip = bipartite_concurrence(state)
    ckw_oracle = abs(tau_ckw(state, clamp=False) - t_oracle)
    ckw_closed = abs(t_closed - (bip**2 - 2 * c_closed**2))
    flags = []
    if abs(c_closed - c_oracle) > MISMATCH_TOL:
        flags.append("CLOSED_FORM_CONCURRENCE_MISMATCH")
    if ckw_closed > MISMATCH_TOL:
        flags.append("CKW_CLOSED_VIOLATION")
    return EntanglementReport(
        canonical=form,
        entanglement_class=classify(form, epsilon),
        concurrence_closed=c_closed,
        concurrence_oracle=float(c_oracle),
        tau_closed=t_closed,
        tau_oracle=t_oracle,
        bipartite_concurrence=bip,
        ckw_residual_oracle=float(ckw_oracle),
        ckw_residual_closed=float(ckw_closed),
        flags=flags,
    )
