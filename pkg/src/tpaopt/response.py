"""Matter response of a lossy three-level ladder driven by two photons.

A ladder |g> -> |e> -> |f> with decay rates gamma_e, gamma_f responds to a
photon pair through a second-order amplitude kernel T(w1, w2).  This module
evaluates the Lorentzian line shapes, the infinite-time and finite-time
kernels, the one-sided (asymmetric) kernel, the closed-form normalization
N = integral of |T|^2, and the closed-form frequency marginals of the
normalized optimal pair amplitude Phi = conj(T)/sqrt(N).

Internal unit system: gamma_e = 1, omega_e = 0, prefactor kappa = 1 by
default.  Every normalized observable (Schmidt coefficients, entropies,
enhancement and optimization ratios) is invariant under these choices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "LevelSystem",
    "ResponseOptions",
    "lineshape",
    "response_infinite",
    "response_finite",
    "response_asymmetric",
    "normalization",
    "marginal_sum",
    "marginal_single",
]


@dataclass(frozen=True)
class LevelSystem:
    """Three-level ladder parametrized by detuning and deviation.

    Attributes
    ----------
    gamma_e : float
        Decay rate of the intermediate level, > 0.  Sets the frequency unit.
    delta_detuning : float
        Dimensionless detuning  Delta = (omega_f - 2 omega_e) / gamma_e.
    delta_deviation : float
        Dimensionless deviation  delta = gamma_f / gamma_e - 2, in (-2, inf).
        delta = -2 (a pole on the real axis) is rejected.
    omega_e : float
        Frequency of the intermediate level (origin of the frequency axis).
    intermediate_levels : tuple of (omega, gamma, weight) or None
        Optional replacement set of intermediate levels for the additive
        multi-level kernel.  Weights multiply the line shapes linearly and
        default to 1 when unknown.
    prefactor : float
        Combined coupling constant kappa > 0.  Only the product of the two
        line-shape strengths is physical; both carry sqrt(kappa).
    """

    gamma_e: float = 1.0
    delta_detuning: float = 0.0
    delta_deviation: float = 0.0
    omega_e: float = 0.0
    intermediate_levels: tuple[tuple[float, float, float], ...] | None = None
    prefactor: float = 1.0

    def __post_init__(self):
        if not self.gamma_e > 0:
            raise ValueError(f"gamma_e must be > 0, got {self.gamma_e}")
        if not self.delta_deviation > -2:
            raise ValueError(
                "delta_deviation must be > -2 (gamma_f = 0 puts the final-state "
                f"pole on the real axis), got {self.delta_deviation}"
            )
        if not self.prefactor > 0:
            raise ValueError(f"prefactor must be > 0, got {self.prefactor}")
        if self.intermediate_levels is not None:
            levels = tuple(tuple(float(x) for x in lv) for lv in self.intermediate_levels)
            if not levels:
                raise ValueError("intermediate_levels may not be an empty sequence")
            for _, g, _ in levels:
                if not g > 0:
                    raise ValueError(f"intermediate level decay rates must be > 0, got {g}")
            object.__setattr__(self, "intermediate_levels", levels)

    @property
    def gamma_f(self) -> float:
        """Decay rate of the final level, (2 + delta) * gamma_e."""
        return (2.0 + self.delta_deviation) * self.gamma_e

    @property
    def omega_f(self) -> float:
        """Frequency of the final level, 2 omega_e + Delta * gamma_e (derived)."""
        return 2.0 * self.omega_e + self.delta_detuning * self.gamma_e

    @property
    def coupling_e(self) -> float:
        """Line-shape strength c_e = sqrt(kappa) of the g -> e transition."""
        return float(np.sqrt(self.prefactor))

    @property
    def coupling_f(self) -> float:
        """Line-shape strength c_f = sqrt(kappa) of the e -> f transition."""
        return float(np.sqrt(self.prefactor))

    def effective_intermediate_levels(self) -> tuple[tuple[float, float, float], ...]:
        """The (omega, gamma, weight) set entering the additive kernel sum."""
        if self.intermediate_levels is None:
            return ((self.omega_e, self.gamma_e, 1.0),)
        return self.intermediate_levels

    @property
    def is_single_level(self) -> bool:
        return self.intermediate_levels is None


@dataclass(frozen=True)
class ResponseOptions:
    """Evaluation options for the response kernels.

    t_minus_t0 is the elapsed interaction time (finite-time kernel only).
    drop_global_phase removes the separable phase exp(-i (w1+w2) (t-t0)),
    which carries no physical significance; for the finite-time kernel the
    remaining time dependence is kept because it is not separable.
    """

    t_minus_t0: float = 0.0
    drop_global_phase: bool = True

    def __post_init__(self):
        if self.t_minus_t0 < 0:
            raise ValueError(f"t_minus_t0 must be >= 0, got {self.t_minus_t0}")


_DEFAULT_OPTS = ResponseOptions()


def lineshape(sys: LevelSystem, level: str, omega):
    """Complex Lorentzian line shape i c_s / (omega - omega_s + i gamma_s).

    Parameters
    ----------
    sys : LevelSystem
    level : {"e", "f"}
        For "e" with several intermediate levels the weighted sum over the
        level set is returned.
    omega : array_like
        Frequency argument(s).

    Returns
    -------
    complex ndarray or scalar
    """
    omega = np.asarray(omega)
    if level == "f":
        return 1j * sys.coupling_f / (omega - sys.omega_f + 1j * sys.gamma_f)
    if level == "e":
        c = sys.coupling_e
        out = 0j
        for w0, g, wt in sys.effective_intermediate_levels():
            out = out + wt * 1j * c / (omega - w0 + 1j * g)
        return out
    raise ValueError(f"level must be 'e' or 'f', got {level!r}")


def _global_phase(sys, opts, w1, w2):
    if opts.drop_global_phase:
        return 1.0
    return np.exp(-1j * (np.asarray(w1) + np.asarray(w2)) * opts.t_minus_t0)


def response_asymmetric(sys: LevelSystem, omega1, omega2, opts: ResponseOptions = _DEFAULT_OPTS):
    """One-sided kernel Q(w1, w2) = L_e(w1) L_f(w1 + w2).

    Photon 1 opens the transition, photon 2 completes it.  The symmetrized
    identity Q(a, b) + Q(b, a) == response_infinite(a, b) holds exactly.
    """
    w1 = np.asarray(omega1)
    w2 = np.asarray(omega2)
    return _global_phase(sys, opts, w1, w2) * lineshape(sys, "e", w1) * lineshape(sys, "f", w1 + w2)


def response_infinite(sys: LevelSystem, omega1, omega2, opts: ResponseOptions = _DEFAULT_OPTS):
    """Infinite-interaction-time kernel [L_e(w1) + L_e(w2)] L_f(w1 + w2).

    Built as Q(w1, w2) + Q(w2, w1) so both the exchange symmetry and the
    composition identity with `response_asymmetric` are bit-exact.
    """
    return response_asymmetric(sys, omega1, omega2, opts) + response_asymmetric(sys, omega2, omega1, opts)


def response_finite(sys: LevelSystem, opts: ResponseOptions, omega1, omega2):
    """Finite-interaction-time kernel, switched on at t0 and read out at t.

    Evaluates the two-term bracket plus its (w1 <-> w2) image; vanishes
    identically at t = t0 and converges to `response_infinite` once
    gamma_e (t - t0) and gamma_f (t - t0) are large.  When
    opts.drop_global_phase is set, the separable phase exp(-i (w1+w2) tau)
    is removed so the large-tau limit matches the phase-dropped
    infinite-time kernel.
    """
    tau = opts.t_minus_t0
    w1 = np.asarray(omega1, dtype=complex)
    w2 = np.asarray(omega2, dtype=complex)
    gf, wf, cf = sys.gamma_f, sys.omega_f, sys.coupling_f
    decay_f = np.exp(-1j * (wf - 1j * gf) * tau)

    def lf(w):
        return 1j * cf / (w - wf + 1j * gf)

    def one_sided(a, b):
        out = 0j
        for w0, g, wt in sys.effective_intermediate_levels():
            le_a = wt * 1j * sys.coupling_e / (a - w0 + 1j * g)
            phase_ab = np.exp(-1j * (a + b) * tau)
            decay_e = np.exp(-1j * (b + w0 - 1j * g) * tau)
            out = out + le_a * ((phase_ab - decay_f) * lf(a + b) - (decay_e - decay_f) * lf(b + w0))
        return out

    total = one_sided(w1, w2) + one_sided(w2, w1)
    if opts.drop_global_phase:
        total = total * np.exp(1j * (w1 + w2) * tau)
    return total


def normalization(sys: LevelSystem) -> float:
    """Closed-form N = integral of |T|^2 = 2 pi^2 kappa^2 / (gamma_e gamma_f).

    This is the maximal final-state population, reached by the optimal pair
    amplitude Phi = conj(T)/sqrt(N).  The reduced constant follows from the
    line-shape convention of `lineshape` (per-line factor 1/sqrt(2 pi) folded
    into kappa) and is validated by quadrature in the test suite; it is
    independent of the detuning.  Only the single-intermediate-level closed
    form exists; multi-level systems must be integrated numerically.
    """
    if not sys.is_single_level:
        raise NotImplementedError(
            "closed form unavailable for multiple intermediate levels; "
            "integrate |response_infinite|^2 numerically instead"
        )
    kappa = sys.coupling_e * sys.coupling_f
    return 2.0 * np.pi**2 * kappa**2 / (sys.gamma_e * sys.gamma_f)


def marginal_sum(sys: LevelSystem, omega_plus):
    """Frequency-sum density of |Phi|^2: Lorentzian of width gamma_f at omega_f."""
    w = np.asarray(omega_plus)
    gf = sys.gamma_f
    return (gf / np.pi) / ((w - sys.omega_f) ** 2 + gf**2)


def marginal_single(sys: LevelSystem, omega):
    """Single-photon density of |Phi|^2 (closed form, single intermediate level).

    Two peaks sit near omega_e and omega_f - omega_e with widths gamma_e and
    gamma_e + gamma_f; at Delta = delta = 0 the expression collapses to a
    single Lorentzian of width gamma_e.
    """
    if not sys.is_single_level:
        raise NotImplementedError(
            "closed form unavailable for multiple intermediate levels; "
            "marginalize |response_infinite|^2 numerically instead"
        )
    w = np.asarray(omega)
    ge, gf = sys.gamma_e, sys.gamma_f
    we, wf = sys.omega_e, sys.omega_f
    num = ge * (ge + gf) * (4 * ge + gf) + ge * (wf - 2 * we) ** 2 + gf * (w - we) ** 2
    den = 2 * np.pi * ((w - we) ** 2 + ge**2) * ((w - wf + we) ** 2 + (ge + gf) ** 2)
    return num / den
