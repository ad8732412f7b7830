"""Pure-imaginary pole analysis: finding and designing bound states in the continuum.

A pure-imaginary Laplace pole s = -i*w (w in the rotating frame) exists only
when |gamma| = Gamma, at the dressed frequencies w = -delta/2 +/- Delta_n,
provided the accumulated phase obeys

    (w + w_e) * tau = (2q+1)*pi   for Gamma = +gamma,
    (w + w_e) * tau = 2q*pi       for Gamma = -gamma,

with integer q. Each surviving pole traps a residue amplitude in the
emitter/cavity sector; two surviving poles in one subspace beat at the
dressed splitting 2*Delta_n.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

from .dde import InitialCondition
from .model import SystemParams, derive_rates, subspace_params

__all__ = [
    "BicSolution",
    "find_bics",
    "design_double_bic",
    "longtime_amplitude",
    "coexistence_distance",
    "oscillation_ratio_check",
]

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class BicSolution:
    """One pure-imaginary pole of the emitter amplitude in subspace n.

    omega is the rotating-frame pole frequency; q the integer solving the
    phase condition; residue_e the long-time coefficient of U_ne for the
    default initial condition u_e(0) = 1, u_s(0) = 0.
    """

    n: int
    branch: str
    omega: float
    q: int
    residue_e: complex
    phase_residual: float


def _phase_residual(phase: float, odd: bool):
    """Distance of `phase` from the nearest allowed multiple of pi, and its q."""
    if odd:
        q = round((phase / math.pi - 1.0) / 2.0)
        return abs(phase - (2 * q + 1) * math.pi), int(q)
    q = round(phase / (2.0 * math.pi))
    return abs(phase - 2 * q * math.pi), int(q)


def _branch_residue(
    p: SystemParams, n: int, branch: str, init: InitialCondition
) -> complex:
    """Long-time coefficient of U_ne contributed by one dressed branch."""
    rates = derive_rates(p)
    sub = subspace_params(p, n)
    gt = rates.gamma_coll * rates.tau
    if sub.g_n == 0:
        # Degenerate two-level-giant-atom sector: single pole at s = 0.
        return 2.0 / (2.0 + gt) * complex(init.u_e0)
    cos2 = math.cos(sub.theta_n) ** 2
    sin2 = math.sin(sub.theta_n) ** 2
    if branch == "+":
        weight = 2.0 * cos2 / (gt * cos2 + 2.0)
        denom = rates.delta + 2.0 * sub.delta_n
    elif branch == "-":
        weight = 2.0 * sin2 / (gt * sin2 + 2.0)
        denom = rates.delta - 2.0 * sub.delta_n
    else:
        raise ValueError("branch must be '+' or '-'")
    if denom == 0:
        raise ValueError("degenerate dressed splitting: delta +/- 2*Delta_n = 0")
    return weight * (complex(init.u_e0) + 2.0 * sub.g_n * complex(init.u_s0) / denom)


def find_bics(
    p: SystemParams,
    n: int,
    tol: float = DEFAULT_TOL,
    init: InitialCondition | None = None,
) -> list[BicSolution]:
    """Return the pure-imaginary poles of subspace n (0, 1, or 2 of them).

    Requires |gamma| = Gamma within tol*Gamma, otherwise no pure-imaginary
    pole exists and the list is empty. Near misses (phase residual between
    tol and 10*tol) are reported as warnings, not results.
    """
    if init is None:
        init = InitialCondition()
    rates = derive_rates(p)
    sub = subspace_params(p, n)
    gam, gcol = rates.gamma_total, rates.gamma_coll
    if gam <= 0 or gcol == 0:
        return []
    if abs(gam - abs(gcol)) > tol * gam:
        return []
    odd = gcol > 0  # Gamma = +gamma -> odd multiples of pi; Gamma = -gamma -> even.
    tau = rates.tau

    if sub.g_n == 0:
        # g = 0 decouples U_ns; the only candidate pole of U_ne sits at w = 0.
        candidates = [("+", 0.0)]
    else:
        candidates = [
            ("+", sub.omega_plus - p.omega_e),
            ("-", sub.omega_minus - p.omega_e),
        ]

    out: list[BicSolution] = []
    for branch, omega in candidates:
        omega_lab = omega + p.omega_e
        if omega_lab <= 0:
            # Wavelength conditions presuppose a positive dressed frequency.
            continue
        residual, q = _phase_residual(omega_lab * tau, odd)
        if residual < tol:
            out.append(
                BicSolution(
                    n=n,
                    branch=branch,
                    omega=omega,
                    q=q,
                    residue_e=_branch_residue(p, n, branch, init),
                    phase_residual=residual,
                )
            )
        elif residual < 10.0 * tol:
            warnings.warn(
                "near-miss bound-state condition in subspace n=%d branch %s: "
                "phase residual %.3e" % (n, branch, residual),
                stacklevel=2,
            )
    return out


def design_double_bic(
    omega_e_target: float, tau: float, q_plus: int, q_minus: int
) -> tuple[float, float]:
    """Parameters hosting two bound states at once (resonant design point).

    Returns (omega_e, g_n) with omega_e = (q_plus + q_minus + 1)*pi/tau and
    g_n = (q_plus - q_minus)*pi/tau, so that (omega_e +/- g_n)*tau are both
    odd multiples of pi. omega_e_target only selects among equivalent
    designs; the q integers fix the result.
    """
    if tau <= 0:
        raise ValueError("tau must be positive")
    if not (q_plus > q_minus >= 0):
        raise ValueError("need q_plus > q_minus >= 0")
    omega_e = (q_plus + q_minus + 1) * math.pi / tau
    g_n = (q_plus - q_minus) * math.pi / tau
    return omega_e, g_n


def longtime_amplitude(
    p: SystemParams, n: int, init: InitialCondition, t: float
) -> complex:
    """Lab-frame u_ne(t) after all decaying contributions have died out.

    Sums the residue terms of the emergent bound states only; with no bound
    state the result is 0.
    """
    sols = find_bics(p, n, init=init)
    total = 0.0j
    for sol in sols:
        omega_lab = sol.omega + p.omega_e
        total += sol.residue_e * complex(math.cos(omega_lab * t), -math.sin(omega_lab * t))
    return total


def coexistence_distance(
    p: SystemParams,
    m: int,
    n: int,
    alpha: int,
    beta: int,
    q_m: int,
    q_n: int,
) -> float:
    """Candidate coupling-point distance putting one bound state in each of
    the subspaces m and n simultaneously (resonant case).

    d = 2*pi*v*(q_m - q_n) / (alpha*g_m - beta*g_n) with alpha, beta = +/-1.
    The returned d is a candidate only; confirm it by running find_bics in
    both subspaces.
    """
    if alpha not in (1, -1) or beta not in (1, -1):
        raise ValueError("alpha and beta must be +1 or -1")
    rates = derive_rates(p)
    if abs(rates.delta) > 1e-12 * max(1.0, abs(p.omega_e)):
        raise ValueError("coexistence formula applies at zero detuning only")
    g_m = p.g * math.sqrt(m + 1.0)
    g_n = p.g * math.sqrt(n + 1.0)
    denom = alpha * g_m - beta * g_n
    if abs(denom) < 1e-15:
        raise ValueError("degenerate branch pair: alpha*g_m - beta*g_n = 0")
    return 2.0 * math.pi * p.v * (q_m - q_n) / denom


def oscillation_ratio_check(
    p: SystemParams, m: int, n: int
) -> tuple[bool, tuple[int, int] | None]:
    """Can subspaces n and m sustain persistent oscillation simultaneously?

    At zero detuning the splittings obey Delta_n/Delta_m = sqrt((n+1)/(m+1));
    simultaneous double bound states require this ratio to be rational. The
    witness is the minimal integer pair (q_n^+ - q_n^-, q_m^+ - q_m^-).
    """
    rates = derive_rates(p)
    if abs(rates.delta) > 1e-12 * max(1.0, abs(p.omega_e)):
        raise ValueError("ratio condition applies at zero detuning only")
    frac = Fraction(n + 1, m + 1)
    a, b = frac.numerator, frac.denominator
    ra, rb = math.isqrt(a), math.isqrt(b)
    if ra * ra == a and rb * rb == b:
        return True, (ra, rb)
    return False, None
