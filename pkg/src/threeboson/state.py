"""Pure states of three identical bosons in two modes.

A state is stored through its four symmetric amplitudes ``(a, b, c, d)``
multiplying the *unnormalized* permutation sums

    a |000> + b (|100> + |010> + |001>) + c (|011> + |101> + |110>) + d |111>

so that the norm is ``|a|^2 + 3|b|^2 + 3|c|^2 + |d|^2``.  All factors of
``sqrt(3)`` live in the Fock-space bridge (:class:`FockAmplitudes`).

Qubit expansions are length-8 complex arrays indexed by the bit string of the
three particles, particle A being the most significant bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import NonUnitary, NotNormalized, ThreeBosonError, ZeroState

SQRT3 = np.sqrt(3.0)
NORM_TOL = 1e-10
UNITARY_TOL = 1e-10

# bit-string indices of the symmetric families
IDX_000 = (0,)
IDX_ONE = (4, 2, 1)  # 100, 010, 001
IDX_TWO = (3, 5, 6)  # 011, 101, 110
IDX_111 = (7,)


def _weighted_norm2(a, b, c, d):
    return abs(a) ** 2 + 3 * abs(b) ** 2 + 3 * abs(c) ** 2 + abs(d) ** 2


@dataclass(frozen=True)
class ThreeBosonState:
    """Symmetric amplitudes ``(a, b, c, d)`` of a normalized three-boson state.

    Use :func:`make_state` to build one from unnormalized input.
    """

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, complex(getattr(self, name)))
        n2 = _weighted_norm2(self.a, self.b, self.c, self.d)
        if abs(n2 - 1.0) > NORM_TOL:
            raise NotNormalized(f"weighted norm^2 = {n2!r}, expected 1")

    @property
    def amplitudes(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c, self.d], dtype=complex)

    def to_fock(self) -> FockAmplitudes:
        return FockAmplitudes(self.a, SQRT3 * self.b, SQRT3 * self.c, self.d)


@dataclass(frozen=True)
class FockAmplitudes:
    """Amplitudes of |3,0>, |2,1>, |1,2>, |0,3> (n0 bosons in mode 0, n1 in mode 1)."""

    f0: complex
    f1: complex
    f2: complex
    f3: complex

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.f0, self.f1, self.f2, self.f3], dtype=complex)

    def to_state(self) -> ThreeBosonState:
        return ThreeBosonState(self.f0, self.f1 / SQRT3, self.f2 / SQRT3, self.f3)


@dataclass(frozen=True)
class ModeTransform:
    """A 2x2 matrix acting identically on every particle's single-particle space.

    Column ``j`` is the image of mode ``|j>``, so the transformed state is
    ``U (x) U (x) U |psi>``.
    """

    u00: complex
    u01: complex
    u10: complex
    u11: complex

    def __post_init__(self):
        for name in ("u00", "u01", "u10", "u11"):
            object.__setattr__(self, name, complex(getattr(self, name)))

    @classmethod
    def from_matrix(cls, m) -> ModeTransform:
        m = np.asarray(m, dtype=complex)
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    @classmethod
    def from_alpha_beta(cls, alpha, beta) -> ModeTransform:
        """|0> -> alpha|0> + beta|1>,  |1> -> -conj(beta)|0> + conj(alpha)|1>."""
        alpha, beta = complex(alpha), complex(beta)
        return cls(alpha, -beta.conjugate(), beta, alpha.conjugate())

    @classmethod
    def identity(cls) -> ModeTransform:
        return cls(1, 0, 0, 1)

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.u00, self.u01], [self.u10, self.u11]], dtype=complex)

    def unitarity_error(self) -> float:
        u00, u01, u10, u11 = self.u00, self.u01, self.u10, self.u11
        d0 = abs(u00) ** 2 + abs(u10) ** 2 - 1
        d1 = abs(u01) ** 2 + abs(u11) ** 2 - 1
        off = u00.conjugate() * u01 + u10.conjugate() * u11
        return max(abs(d0), abs(d1), abs(off))

    def inverse(self) -> ModeTransform:
        return ModeTransform.from_matrix(self.matrix.conj().T)

    def __matmul__(self, other: ModeTransform) -> ModeTransform:
        """``(V @ U)`` applies ``U`` first, then ``V``."""
        return ModeTransform.from_matrix(self.matrix @ other.matrix)


def make_state(a, b, c, d) -> ThreeBosonState:
    """Build a state from arbitrary amplitudes, rescaling to unit weighted norm."""
    n2 = _weighted_norm2(a, b, c, d)
    if not n2 > 1e-14:
        raise ZeroState(f"weighted norm^2 = {n2!r} is too small to normalize")
    k = 1.0 / np.sqrt(n2)
    return ThreeBosonState(a * k, b * k, c * k, d * k)


def to_qubit_expansion(state: ThreeBosonState) -> np.ndarray:
    a, b, c, d = state.a, state.b, state.c, state.d
    # index = 4*A + 2*B + C
    return np.array([a, b, b, c, b, c, c, d], dtype=complex)


def from_qubit_expansion(vec, atol: float = 1e-10) -> ThreeBosonState:
    """Inverse of :func:`to_qubit_expansion`; rejects non-symmetric input."""
    v = np.asarray(vec, dtype=complex).reshape(8)
    one, two = v[list(IDX_ONE)], v[list(IDX_TWO)]
    if np.ptp(one.real) > atol or np.ptp(one.imag) > atol or np.ptp(two.real) > atol or np.ptp(two.imag) > atol:
        raise ThreeBosonError("qubit expansion is not permutation symmetric")
    return ThreeBosonState(v[0], one.mean(), two.mean(), v[7])


def apply_mode_transform(state: ThreeBosonState, U: ModeTransform) -> ThreeBosonState:
    """Express ``state`` in the single-particle basis rotated by ``U``.

    Ground-truth route: apply ``U (x) U (x) U`` to the eight qubit amplitudes.
    """
    if U.unitarity_error() > UNITARY_TOL:
        raise NonUnitary(f"U^dag U deviates from identity by {U.unitarity_error():.3g}")
    m = U.matrix
    psi = to_qubit_expansion(state).reshape(2, 2, 2)
    out = np.einsum("ia,jb,kc,abc->ijk", m, m, m, psi)
    n2 = _weighted_norm2(out[0, 0, 0], out[1, 0, 0], out[0, 1, 1], out[1, 1, 1])
    # renormalize away rounding so the result passes the norm invariant exactly
    k = 1.0 / np.sqrt(n2)
    return ThreeBosonState(out[0, 0, 0] * k, out[1, 0, 0] * k, out[0, 1, 1] * k, out[1, 1, 1] * k)


def printed_transform_coefficients(state: ThreeBosonState, alpha, beta) -> dict:
    """The four transformed coefficients as written in closed form in the source.

    Kept only as an audit route against :func:`apply_mode_transform`; the
    ``"011"`` entry reproduces the printed ``d``-term verbatim.
    """
    a, b, c, d = state.amplitudes
    al, be = complex(alpha), complex(beta)
    alc, bec = al.conjugate(), be.conjugate()
    return {
        "000": a * al**3 - d * bec**3 - 3 * b * bec * al**2 + 3 * c * al * bec**2,
        "111": a * be**3 + d * alc**3 + 3 * b * alc * be**2 + 3 * c * be * alc**2,
        "011": (a * al * be**2 - d * alc * bec**2 - b * bec * be**2 + c * al * alc**2
                + 2 * b * al * alc * be - 2 * c * be * bec * alc),
        "100": (a * be * al**2 + d * alc * bec**2 + b * alc * al**2 + c * be * bec**2
                - 2 * b * be * bec * al - 2 * c * alc * al * bec),
    }


def _hermitize(rho: np.ndarray) -> np.ndarray:
    return 0.5 * (rho + rho.conj().T)


def reduced_density_two(state: ThreeBosonState) -> np.ndarray:
    """4x4 density matrix of particles A,B (basis 00, 01, 10, 11), tracing out C."""
    psi = to_qubit_expansion(state).reshape(4, 2)
    return _hermitize(psi @ psi.conj().T)


def reduced_density_one(state: ThreeBosonState) -> np.ndarray:
    """2x2 density matrix of particle A."""
    psi = to_qubit_expansion(state).reshape(2, 4)
    return _hermitize(psi @ psi.conj().T)


@lru_cache(maxsize=None)
def _mode_lowering():
    # two modes, each truncated at n = 3; index = 4*n0 + n1
    a = np.diag(np.sqrt(np.arange(1.0, 4.0)), k=1)
    eye = np.eye(4)
    return np.kron(a, eye), np.kron(eye, a)


def _fock_embed(state: ThreeBosonState) -> np.ndarray:
    f = state.to_fock().vector
    v = np.zeros(16, dtype=complex)
    v[[4 * 3 + 0, 4 * 2 + 1, 4 * 1 + 2, 4 * 0 + 3]] = f
    return v


def two_body_density(state: ThreeBosonState) -> np.ndarray:
    """rho2[i, j, k, l] = <a_i^dag a_j^dag a_k a_l> / 2! from mode operators."""
    low = _mode_lowering()
    v = _fock_embed(state)
    pairs = {(k, l): low[k] @ (low[l] @ v) for k in range(2) for l in range(2)}
    rho2 = np.empty((2, 2, 2, 2), dtype=complex)
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l in range(2):
                    # <a_i^dag a_j^dag a_k a_l> = (a_j a_i psi)^dag (a_k a_l psi)
                    rho2[i, j, k, l] = np.vdot(pairs[(j, i)], pairs[(k, l)]) / 2
    return rho2


def reduced_density_two_modes(state: ThreeBosonState) -> np.ndarray:
    """Second route to :func:`reduced_density_two` via ``rho2 / (N(N-1)/2)``."""
    rho2 = two_body_density(state) / 3.0
    # <ij| rho_AB |kl> = <a_k^dag a_l^dag a_j a_i> / N(N-1)
    return np.einsum("klji->ijkl", rho2).reshape(4, 4)


def reduced_density_one_modes(state: ThreeBosonState) -> np.ndarray:
    low = _mode_lowering()
    v = _fock_embed(state)
    lv = [low[i] @ v for i in range(2)]
    return np.array([[np.vdot(lv[j], lv[i]) for j in range(2)] for i in range(2)]) / 3.0


def random_state(seed=None) -> ThreeBosonState:
    """Uniform on the unit sphere of the weighted norm (Gaussian Fock amplitudes)."""
    rng = np.random.default_rng(seed)
    f = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    f /= np.linalg.norm(f)
    return FockAmplitudes(*f).to_state()


def random_mode_transform(seed=None) -> ModeTransform:
    """Haar-distributed element of the alpha/beta family (|alpha|^2 ~ U[0, 1])."""
    rng = np.random.default_rng(seed)
    p = rng.uniform()
    phi1, phi2 = rng.uniform(0.0, 2 * np.pi, size=2)
    alpha = np.sqrt(p) * np.exp(1j * phi1)
    beta = np.sqrt(1.0 - p) * np.exp(1j * phi2)
    return ModeTransform.from_alpha_beta(alpha, beta)
