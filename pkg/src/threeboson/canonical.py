"""Standard form r|000> + s e^{i phi} W + t|111>, GHZ/W classification and
explicit two-vector decompositions.

Roots of the elimination problems are expressed in the variable
``w = conj(beta) / alpha`` of the transform

    |0> -> alpha|0> + beta|1>,   |1> -> -conj(beta)|0> + conj(alpha)|1>,

so ``w = 0`` is the identity and ``w = inf`` is the mode swap.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from .errors import NoRootFound, NotNormalized, WrongClass
from .state import (
    ModeTransform,
    ThreeBosonState,
    apply_mode_transform,
    reduced_density_one,
    to_qubit_expansion,
)

ROOT_TOL = 1e-12
DEDUP_TOL = 1e-8
CLASS_EPS = 1e-9
TWO_PI_3 = 2 * np.pi / 3

_SWAP = ModeTransform(0, 1, 1, 0)


class EliminationTarget(enum.Enum):
    COEFF_000 = "000"
    COEFF_111 = "111"
    COEFF_011 = "011"
    COEFF_100 = "100"


class EntanglementClass(enum.Enum):
    UNENTANGLED = "Unentangled"
    W = "W"
    GHZ = "GHZ"


@dataclass(frozen=True)
class SolverRoot:
    z: complex
    residual: float
    transform: ModeTransform


@dataclass(frozen=True)
class ParamPoint:
    """Raw (r, s, t, phi) evaluation point; ``t`` may carry either sign."""

    r: float
    s: float
    t: float
    phi: float = 0.0

    @property
    def norm_error(self) -> float:
        return abs(self.r**2 + 3 * self.s**2 + self.t**2 - 1.0)

    @property
    def normalized(self) -> bool:
        return self.norm_error <= 1e-10

    def require_normalized(self, tol: float = 1e-10) -> ParamPoint:
        if self.norm_error > tol:
            raise NotNormalized(f"r^2 + 3 s^2 + t^2 - 1 = {self.norm_error:.3g}")
        return self

    def to_state(self) -> ThreeBosonState:
        self.require_normalized()
        return ThreeBosonState(self.r, self.s * np.exp(1j * self.phi), 0.0, self.t)


@dataclass(frozen=True)
class CanonicalForm:
    r: float
    s: float
    t: float
    phi: float
    transform: ModeTransform = field(default_factory=ModeTransform.identity)
    residual: float = 0.0

    @property
    def s_complex(self) -> complex:
        return self.s * np.exp(1j * self.phi)

    @property
    def point(self) -> ParamPoint:
        return ParamPoint(self.r, self.s, self.t, self.phi)

    def to_state(self) -> ThreeBosonState:
        """The canonical representative itself."""
        return ThreeBosonState(self.r, self.s_complex, 0.0, self.t)

    def reconstruct(self) -> ThreeBosonState:
        """Map the canonical representative back to the input basis."""
        return apply_mode_transform(self.to_state(), self.transform.inverse())


@dataclass(frozen=True)
class DecompositionPair:
    alpha: np.ndarray
    beta: np.ndarray
    kind: EntanglementClass
    reconstruction_error: float
    suspect_formula: bool = False

    @property
    def determinant(self) -> complex:
        return self.alpha[0] * self.beta[1] - self.alpha[1] * self.beta[0]


def _coefficient(state: ThreeBosonState, target: EliminationTarget) -> complex:
    return {
        EliminationTarget.COEFF_000: state.a,
        EliminationTarget.COEFF_100: state.b,
        EliminationTarget.COEFF_011: state.c,
        EliminationTarget.COEFF_111: state.d,
    }[target]


def _transform_from_w(w: complex) -> ModeTransform:
    if np.isinf(w):
        return ModeTransform.from_alpha_beta(0.0, 1.0)
    n = np.hypot(1.0, abs(w))
    return ModeTransform.from_alpha_beta(1.0 / n, np.conj(w) / n)


# -- cubic targets ----------------------------------------------------------


def _cubic_candidates(state: ThreeBosonState) -> list[complex]:
    """Roots w of the transformed |000> coefficient divided by alpha^3.

    a' = alpha^3 (a - 3b w + 3c w^2 - d w^3).
    """
    a, b, c, d = state.amplitudes
    coeffs = np.array([-d, 3 * c, -3 * b, a])
    scale = np.abs(coeffs).max()
    nz = np.flatnonzero(np.abs(coeffs) > 1e-14 * scale)
    roots = list(np.roots(coeffs[nz[0]:])) if nz[0] < 3 else []
    if nz[0] > 0:
        # degree dropped: alpha = 0 is a root
        roots.append(complex(np.inf))
    return roots


def _polish_cubic(state, w, iters=3):
    if np.isinf(w):
        return w
    a, b, c, d = state.amplitudes
    for _ in range(iters):
        f = a - 3 * b * w + 3 * c * w**2 - d * w**3
        df = -3 * b + 6 * c * w - 3 * d * w**2
        if df == 0:
            break
        w = w - f / df
    return w


# -- mixed targets: (a - b w) conj(w)^2 + 2(b - c w) conj(w) + (c - d w) = 0 --


def mixed_residual(a, b, c, d, w):
    wb = np.conj(w)
    return (a - b * w) * wb**2 + 2 * (b - c * w) * wb + (c - d * w)


def _newton_mixed(a, b, c, d, w, iters=60):
    """Vectorized Newton on the real 2-D system, using Wirtinger derivatives."""
    w = np.array(w, dtype=complex, copy=True)
    with np.errstate(all="ignore"):
        for _ in range(iters):
            wb = np.conj(w)
            g = (a - b * w) * wb**2 + 2 * (b - c * w) * wb + (c - d * w)
            gw = -b * wb**2 - 2 * c * wb - d
            gwb = 2 * (a - b * w) * wb + 2 * (b - c * w)
            den = np.abs(gw) ** 2 - np.abs(gwb) ** 2
            step = (np.conj(g) * gwb - g * np.conj(gw)) / den
            bad = ~np.isfinite(step)
            step[bad] = 0.0
            # trust region: keep each step proportionate to the iterate
            lim = 1.0 + np.abs(w)
            big = np.abs(step) > lim
            step[big] *= lim[big] / np.abs(step[big])
            w = w + step
            if np.all(np.abs(step) <= 1e-15 * (1.0 + np.abs(w))):
                break
    return w


def _resultant_poly(a, b, c, d):
    """Degree-5 polynomial in w obtained by eliminating conj(w).

    The conjugated equation is linear in y = conj(w): y = N(w) / D(w).
    """
    ac, bc, cc, dc = np.conj([a, b, c, d])
    N = np.array([ac, 2 * bc, cc])
    D = np.array([bc, 2 * cc, dc])
    P = (np.convolve([-b, a], np.convolve(N, N))
         + 2 * np.convolve([-c, b], np.convolve(N, D))
         + np.convolve([-d, c], np.convolve(D, D)))
    return P


def _chart_seeds(a, b, c, d, radius=1.5):
    """Newton-polished resultant roots with |w| <= radius, or None if P vanishes."""
    P = _resultant_poly(a, b, c, d)
    scale = np.abs(P).max()
    if scale < 1e-12:
        return None  # identically zero: continuous family of solutions
    nz = np.flatnonzero(np.abs(P) > 1e-13 * scale)
    if nz[0] >= len(P) - 1:
        return np.zeros(0, dtype=complex)
    seeds = np.roots(P[nz[0]:])
    seeds = seeds[np.abs(seeds) <= radius]
    # complex roots of P that are not solutions of the real system are dropped
    seeds = seeds[np.abs(mixed_residual(a, b, c, d, seeds)) < 1e-4]
    return _newton_mixed(a, b, c, d, seeds, iters=60)


def _mixed_resultant_candidates(state) -> list[complex] | None:
    # roots near w = infinity are found as small roots of the reciprocal chart
    a, b, c, d = state.amplitudes
    ws = _chart_seeds(a, b, c, d)
    zs = _chart_seeds(d, c, b, a)
    if ws is None or zs is None:
        return None
    with np.errstate(all="ignore"):
        far = np.where(zs == 0, np.inf, 1.0 / zs)
    return list(ws) + list(far)


def _structured_starts(n_radii=12, n_angles=18, r_max=10.0):
    radii = np.geomspace(0.05, r_max, n_radii)
    angles = np.linspace(0, 2 * np.pi, n_angles, endpoint=False) + 0.1
    grid = (radii[:, None] * np.exp(1j * angles)[None, :]).ravel()
    return np.concatenate([[0.0], grid])


def solve_mixed_newton(state: ThreeBosonState, n_random: int = 100, seed: int = 0) -> list[complex]:
    """Multi-start Newton: a polar grid on |w| <= 10 plus seeded random starts.

    The same starts are also run in the reciprocal chart z = 1/w (where the
    equation keeps its form with (a, b, c, d) reversed), so roots with
    |w| > 10 are reached as well.
    """
    a, b, c, d = state.amplitudes
    rng = np.random.default_rng(seed)
    rand = 10.0 * np.sqrt(rng.uniform(size=n_random)) * np.exp(2j * np.pi * rng.uniform(size=n_random))
    starts = np.concatenate([_structured_starts(), rand])
    ws = _newton_mixed(a, b, c, d, starts, iters=80)
    zs = _newton_mixed(d, c, b, a, starts, iters=80)
    ws = ws[np.abs(mixed_residual(a, b, c, d, ws)) < 1e-10 * (1 + np.abs(ws)) ** 3]
    zs = zs[np.abs(mixed_residual(d, c, b, a, zs)) < 1e-10 * (1 + np.abs(zs)) ** 3]
    with np.errstate(all="ignore"):
        ws_from_z = np.where(zs == 0, np.inf, 1.0 / zs)
    out = np.concatenate([ws, ws_from_z])
    # coarse pre-clustering; exact deduplication happens on the transforms
    _, idx = np.unique(np.round(out, 6), return_index=True)
    return list(out[np.sort(idx)])


def _dedup(roots: list[SolverRoot]) -> list[SolverRoot]:
    roots = sorted(roots, key=lambda r: (r.residual, abs(r.z), np.angle(r.z)))
    kept: list[SolverRoot] = []
    for r in roots:
        m = r.transform.matrix
        if all(np.abs(m - k.transform.matrix).max() > DEDUP_TOL for k in kept):
            kept.append(r)
    return kept


def eliminate_coefficient(state: ThreeBosonState, target: EliminationTarget,
                          method: str = "auto") -> list[SolverRoot]:
    """All transforms found that zero one transformed coefficient.

    ``method`` selects the route for the mixed targets: ``"resultant"`` (root
    seeds from the degree-5 resultant, Newton-polished), ``"newton"``
    (multi-start Newton only) or ``"auto"`` (resultant, falling back to
    multi-start when the resultant is degenerate or yields nothing).
    """
    target = EliminationTarget(target)
    # the 111 and 100 problems are the 000 and 011 problems after a mode swap
    swapped = target in (EliminationTarget.COEFF_111, EliminationTarget.COEFF_100)
    base = {EliminationTarget.COEFF_111: EliminationTarget.COEFF_000,
            EliminationTarget.COEFF_100: EliminationTarget.COEFF_011}.get(target, target)

    if base is EliminationTarget.COEFF_000:
        ws = [_polish_cubic(state, w) for w in _cubic_candidates(state)]
    else:
        ws = None
        if method in ("auto", "resultant"):
            ws = _mixed_resultant_candidates(state)
        if method == "newton" or (method == "auto" and not _admissible(state, ws or [], base)):
            ws = solve_mixed_newton(state)
        ws = list(ws or []) + [0.0, complex(np.inf)]

    roots = []
    for w in ws:
        if not (np.isfinite(w) or np.isinf(w)):
            continue
        V = _transform_from_w(w)
        U = _SWAP @ V if swapped else V
        res = abs(_coefficient(apply_mode_transform(state, U), target))
        if res <= ROOT_TOL:
            roots.append(SolverRoot(complex(w), float(res), U))
    roots = _dedup(roots)
    if not roots:
        raise NoRootFound(f"no transform zeroes coefficient {target.value}")
    return roots


def _admissible(state, ws, base) -> bool:
    for w in ws:
        if np.isfinite(w):
            V = _transform_from_w(w)
            if abs(_coefficient(apply_mode_transform(state, V), base)) <= ROOT_TOL:
                return True
    return False


# -- canonical form -----------------------------------------------------------


def _phase_fix(state: ThreeBosonState, U: ModeTransform, zero_tol=1e-10) -> CanonicalForm:
    """Diagonal mode phases making r, t real nonnegative and phi in [0, 2pi/3)."""
    st = apply_mode_transform(state, U)
    ar, br, dr = np.angle(st.a), np.angle(st.b), np.angle(st.d)
    r0, t0 = abs(st.a) < zero_tol, abs(st.d) < zero_tol
    if r0 and t0:
        chi1 = 0.0
        chi0 = -br / 2
    elif r0:
        chi1 = -dr / 3
        chi0 = -(br + chi1) / 2
    elif t0:
        chi0 = -ar / 3
        chi1 = -br - 2 * chi0
    else:
        chi0, chi1 = -ar / 3, -dr / 3
        # b picks up 2*chi0 + chi1; shifting chi1 by 2pi/3 moves phi by 2pi/3
        phi = br + 2 * chi0 + chi1
        chi1 -= TWO_PI_3 * np.floor(phi / TWO_PI_3)
    T = ModeTransform(np.exp(1j * chi0), 0, 0, np.exp(1j * chi1)) @ U
    fin = apply_mode_transform(state, T)
    r, s, t = abs(fin.a), abs(fin.b), abs(fin.d)
    phi = float(np.angle(fin.b)) if s > zero_tol else 0.0
    phi = phi % TWO_PI_3
    if TWO_PI_3 - phi < 1e-13:
        phi = 0.0
    return CanonicalForm(float(r), float(s), float(t), float(phi), T, float(abs(fin.c)))


def _form_tau(c: CanonicalForm) -> float:
    return 4 * abs(c.r**2 * c.t**2 + 4 * c.t * c.s**3 * np.exp(3j * c.phi))


def _pick(cands: list[CanonicalForm], tol=1e-9) -> CanonicalForm:
    # a W-class state can also sit in a form with r, s, t all nonzero (where
    # r^2 t = 4 s^3 and phi = pi/3); its t = 0 representative wins.  The
    # three-tangle of a form is LU invariant, so it decides W-ness.
    if min(_form_tau(c) for c in cands) < CLASS_EPS:
        least_t = min(c.t for c in cands)
        cands = [c for c in cands if c.t <= least_t + tol]
    best_r = max(c.r for c in cands)
    cands = [c for c in cands if c.r >= best_r - tol]
    best_t = max(c.t for c in cands)
    cands = [c for c in cands if c.t >= best_t - tol]
    return min(cands, key=lambda c: (c.phi, c.residual))


def canonicalize(state: ThreeBosonState, method: str = "auto") -> CanonicalForm:
    """Reduce ``state`` to r|000> + s e^{i phi}(|100>+|010>+|001>) + t|111>.

    Among all roots eliminating the |011> family the candidate with the
    largest r (then largest t, then smallest phi) is returned.
    """
    roots = eliminate_coefficient(state, EliminationTarget.COEFF_011, method=method)
    cands = [_phase_fix(state, root.transform) for root in roots]
    cands += _product_candidates(state)
    return _pick(cands)


def _product_candidates(state: ThreeBosonState, tol=1e-12) -> list[CanonicalForm]:
    """Near-product states: align mode 0 with the dominant eigenvector of rho_A.

    There the elimination root is double and Newton only locates it to about
    sqrt(machine eps); the eigenvector route is accurate to full precision.
    """
    rho = reduced_density_one(state)
    vals, vecs = np.linalg.eigh(rho)
    if vals[0] > 1e-12:
        return []
    v = vecs[:, 1]
    U = ModeTransform.from_matrix(np.array([[v[0], v[1]], [-np.conj(v[1]), np.conj(v[0])]]).conj())
    form = _phase_fix(state, U)
    return [form] if form.residual <= tol else []


def classify(form: CanonicalForm | ParamPoint, epsilon: float = CLASS_EPS) -> EntanglementClass:
    """Unentangled, W or GHZ from the zero pattern of (r, s, t).

    Forms with r, s, t all nonzero are GHZ unless r^2 t^2 + 4 t s^3 e^{3i phi}
    vanishes, in which case the state has no three-way entanglement and is W.
    """
    r, s, t = form.r, form.s, abs(form.t)
    if s < epsilon and (r < epsilon or t < epsilon):
        return EntanglementClass.UNENTANGLED
    if t < epsilon:
        return EntanglementClass.W
    if r >= epsilon and s >= epsilon and abs(r**2 * t**2 + 4 * t * s**3 * np.exp(3j * form.phi)) < epsilon:
        return EntanglementClass.W
    return EntanglementClass.GHZ


# -- explicit decompositions ------------------------------------------------------


def _cube(v):
    return reduce(np.kron, [v, v, v])


def _ghz_error(form, alpha, beta):
    target = to_qubit_expansion(form.to_state())
    with np.errstate(all="ignore"):
        err = np.linalg.norm(_cube(alpha) + _cube(beta) - target)
    return float(err) if np.isfinite(err) else np.inf


def _w_error(form, alpha, beta):
    target = to_qubit_expansion(form.to_state())
    got = (reduce(np.kron, [alpha, beta, beta]) + reduce(np.kron, [beta, alpha, beta])
           + reduce(np.kron, [beta, beta, alpha]))
    return float(np.linalg.norm(got - target))


def _cube_roots(x):
    base = complex(x) ** (1 / 3)
    return [base * np.exp(2j * np.pi * k / 3) for k in range(3)]


def decompose_ghz(form: CanonicalForm, epsilon: float = CLASS_EPS) -> DecompositionPair:
    """Vectors alpha, beta with |aaa> + |bbb> equal to the canonical state."""
    if classify(form, epsilon) is not EntanglementClass.GHZ:
        raise WrongClass(f"form is {classify(form, epsilon).value}, not GHZ")
    r, t, s = form.r, form.t, form.s_complex

    if form.s < epsilon:
        alpha = np.array([r ** (1 / 3), 0], dtype=complex)
        beta = np.array([0, t ** (1 / 3)], dtype=complex)
        branches = [(alpha, beta)]
    elif r < epsilon:
        w = (s**3 / (4 * t)) ** (1 / 6)
        y = s / (2 * w**2)
        branches = [(np.array([-w, y]), np.array([w, y]))]
    else:
        # u^3 solves a quadratic; v^3 = t - u^3; all cube-root branches are tried
        lead = t * r**2 + 4 * s**3
        branches = []
        with np.errstate(all="ignore"):
            for u3 in np.roots([lead, -(t**2 * r**2 + 4 * t * s**3), t**2 * s**3]):
                for u in _cube_roots(u3):
                    for v in _cube_roots(t - u**3):
                        a = t**2 * s**2 * r / (lead * (-t + 2 * u**3) * v**2)
                        c = r * u * (u**3 - t) / (s * (2 * u**3 - t))
                        branches.append((np.array([a, v]), np.array([c, u])))

    if not branches:
        alpha = beta = np.full(2, np.nan, dtype=complex)
        return DecompositionPair(alpha, beta, EntanglementClass.GHZ, np.inf, True)
    errs = [_ghz_error(form, al, be) for al, be in branches]
    k = int(np.argmin(errs))
    alpha, beta = (np.asarray(v, dtype=complex) for v in branches[k])
    return DecompositionPair(alpha, beta, EntanglementClass.GHZ, errs[k], bool(errs[k] > 1e-8))


def decompose_w(form: CanonicalForm, epsilon: float = CLASS_EPS) -> DecompositionPair:
    """Vectors alpha, beta with |abb> + |bab> + |bba> equal to the canonical state."""
    if form.t >= epsilon or classify(form, epsilon) is not EntanglementClass.W:
        raise WrongClass(f"form is {classify(form, epsilon).value}, not W")
    alpha = np.array([form.r / 3, form.s_complex], dtype=complex)
    beta = np.array([1, 0], dtype=complex)
    err = _w_error(form, alpha, beta)
    return DecompositionPair(alpha, beta, EntanglementClass.W, err, bool(err > 1e-8))
