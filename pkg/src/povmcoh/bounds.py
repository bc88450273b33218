"""Upper bounds on the l1 coherence measure.

Two factorized Hölder-pair bounds over general POVMs, a sorted/uniform pair of
trace-norm bounds, and three basis-specific bounds for rank-one projective
measurements.  Every report carries the measure value it certifies, and
construction rejects a "bound" below the value it is supposed to dominate.

The two single-parameter state families behind the CLI's figure replays are
also defined here, together with the literature closed forms for their bound
curves.  Note the b1 reference curve for family 2 is the unsorted evaluation
12x, which stops agreeing with the (sorted, tighter) b1 operation past
x = 1/sqrt(33); see README.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import linalg, measures
from .errors import InvalidExponentsError, NumericError, XOutOfRangeError, ZOutOfRangeError
from .objects import DensityMatrix, Povm, projective_povm, require_same_dim

EXPONENT_TOL = 1e-12
BOUND_SLACK = 1e-8

X_MAX = 1.0 / math.sqrt(17.0)


@dataclass(frozen=True)
class BoundReport:
    """A certified upper bound on the l1 measure."""

    c_l1_value: float
    bound_value: float
    bound_id: str
    parameters: tuple | None = None

    def __post_init__(self):
        if self.bound_value < self.c_l1_value - BOUND_SLACK:
            raise NumericError(
                f"{self.bound_id} bound {self.bound_value:.12e} fell below "
                f"the l1 value {self.c_l1_value:.12e}"
            )


def check_exponents(p: float, q: float) -> tuple[float, float]:
    """Conjugate Hölder pair: p, q > 1 with 1/p + 1/q = 1."""
    p, q = float(p), float(q)
    if not (p > 1.0 and q > 1.0):
        raise InvalidExponentsError(f"exponents must exceed 1, got p={p}, q={q}")
    if abs(1.0 / p + 1.0 / q - 1.0) > EXPONENT_TOL:
        raise InvalidExponentsError(f"1/p + 1/q = {1.0 / p + 1.0 / q} != 1")
    return p, q


def holder_bound(rho: DensityMatrix, povm: Povm, p: float, q: float) -> BoundReport:
    """Factorized bound sum_{j!=k} ||E_j^(p/2) rho||^(1/p) ||E_k^(q/2) rho||^(1/q)."""
    p, q = check_exponents(p, q)
    require_same_dim(rho.dim, povm.dim)
    a = np.array([linalg.trace_norm(linalg.power_psd(e, p / 2.0) @ rho.mat) ** (1.0 / p)
                  for e in povm.elements])
    b = np.array([linalg.trace_norm(linalg.power_psd(e, q / 2.0) @ rho.mat) ** (1.0 / q)
                  for e in povm.elements])
    value = float(a.sum() * b.sum() - np.dot(a, b))
    c_l1 = measures.l1_coherence(rho, povm).value
    return BoundReport(c_l1, value, "thm1", (p, q))


def holder_bound_22(rho: DensityMatrix, povm: Povm) -> BoundReport:
    """p = q = 2 closed form: (sum_j ||E_j rho||^(1/2))^2 - sum_j ||E_j rho||."""
    require_same_dim(rho.dim, povm.dim)
    t = np.array([linalg.trace_norm(e @ rho.mat) for e in povm.elements])
    value = float(np.sum(np.sqrt(t)) ** 2 - np.sum(t))
    c_l1 = measures.l1_coherence(rho, povm).value
    return BoundReport(c_l1, value, "thm1_p2q2", (2.0, 2.0))


def pair_bounds(rho: DensityMatrix, povm: Povm) -> tuple[BoundReport, BoundReport]:
    """Sorted and uniform pair bounds from t_j = ||sqrt(E_j) rho||_tr.

    sorted:  2 sum_j (n - j) t_(j)  with t_(1) <= ... <= t_(n)
    uniform: (n - 1) sum_j t_j
    """
    require_same_dim(rho.dim, povm.dim)
    n = povm.outcomes
    t = np.array([linalg.trace_norm(root @ rho.mat) for root in povm.sqrt_elements])
    t_sorted = np.sort(t)
    coeff = n - 1.0 - np.arange(n)
    ordered_value = float(2.0 * np.dot(coeff, t_sorted))
    uniform_value = float((n - 1.0) * t.sum())
    c_l1 = measures.l1_coherence(rho, povm).value
    return (
        BoundReport(c_l1, ordered_value, "thm2_ordered"),
        BoundReport(c_l1, uniform_value, "thm2_uniform"),
    )


def _basis_l1(rho: DensityMatrix, basis: np.ndarray) -> tuple[float, np.ndarray, int]:
    povm = projective_povm(basis)
    require_same_dim(rho.dim, povm.dim)
    c_l1 = measures.l1_coherence(rho, povm).value
    return c_l1, np.asarray(basis, dtype=complex), rho.dim


def bound_b1(rho: DensityMatrix, basis: np.ndarray) -> BoundReport:
    """Sorted second-moment bound 2 sum_j (d - j) s_(j), s_j = sqrt(<j|rho^2|j>) nondecreasing."""
    c_l1, basis, d = _basis_l1(rho, basis)
    rho_sq = rho.mat @ rho.mat
    s = np.sqrt(np.clip(np.real(np.einsum("ij,jk,ki->i", basis.conj().T, rho_sq, basis)), 0.0, None))
    coeff = d - 1.0 - np.arange(d)
    value = float(2.0 * np.dot(coeff, np.sort(s)))
    return BoundReport(c_l1, value, "b1")


def bound_b2(rho: DensityMatrix, basis: np.ndarray) -> BoundReport:
    """Diagonal-weight bound (sum_j sqrt(<j|rho|j>))^2 - 1."""
    c_l1, basis, _ = _basis_l1(rho, basis)
    diag = np.clip(np.real(np.einsum("ij,jk,ki->i", basis.conj().T, rho.mat, basis)), 0.0, None)
    value = float(np.sum(np.sqrt(diag)) ** 2 - 1.0)
    return BoundReport(c_l1, value, "b2")


def bound_b3(rho: DensityMatrix, basis: np.ndarray) -> BoundReport:
    """Purity-gap bound sqrt( d (d-1) (tr rho^2 - sum_j <j|rho|j>^2) )."""
    c_l1, basis, d = _basis_l1(rho, basis)
    diag = np.real(np.einsum("ij,jk,ki->i", basis.conj().T, rho.mat, basis))
    gap = float(np.real(np.trace(rho.mat @ rho.mat)) - np.sum(diag**2))
    value = float(math.sqrt(max(d * (d - 1.0) * gap, 0.0)))
    return BoundReport(c_l1, value, "b3")


# --------------------------------------------------------------------------
# single-parameter state families behind the figure replays


def figure1_state(z: float) -> DensityMatrix:
    """Qubit family (1/2) [[1-z, 1/2], [1/2, 1+z]] for z in [0, 4/5]."""
    z = float(z)
    if not (0.0 <= z <= 0.8):
        raise ZOutOfRangeError(f"z must lie in [0, 0.8], got {z}")
    return DensityMatrix(0.5 * np.array([[1.0 - z, 0.5], [0.5, 1.0 + z]], dtype=complex))


def figure2_state(x: float) -> DensityMatrix:
    """Qutrit pure family x|1> + 4x|2> + sqrt(1-17x^2)|3> for x in [0, 1/sqrt(17)]."""
    x = float(x)
    if not (0.0 <= x <= X_MAX):
        raise XOutOfRangeError(f"x must lie in [0, {X_MAX!r}], got {x}")
    vec = np.array([x, 4.0 * x, math.sqrt(max(1.0 - 17.0 * x * x, 0.0))], dtype=complex)
    return DensityMatrix(np.outer(vec, vec.conj()))


def figure1_reference_bounds(z: float) -> tuple[float, float, float]:
    """Closed-form (b1, b2, b3) reference curves for the qubit family."""
    z = float(z)
    if not (0.0 <= z <= 0.8):
        raise ZOutOfRangeError(f"z must lie in [0, 0.8], got {z}")
    b1 = math.sqrt(0.25 + (1.0 - z) ** 2)
    b2 = math.sqrt(1.0 - z * z)
    b3 = 0.5
    return b1, b2, b3


def figure2_reference_bounds(x: float) -> tuple[float, float, float]:
    """Closed-form (b1, b2, b3) reference curves for the qutrit family.

    These are the literature's printed curves, which differ from the bound
    operations on two counts: b1 here is the unsorted evaluation 12x, which
    exceeds the sorted bound_b1 value past x = 1/sqrt(33); and the b3 curve's
    quartic coefficient is 17 where the definitional value of bound_b3 on this
    family has sum(c_i^4) = 1 + 256 = 257, so the curve overshoots for x > 0.
    All three still dominate the l1 measure on the family's range.
    """
    x = float(x)
    if not (0.0 <= x <= X_MAX):
        raise XOutOfRangeError(f"x must lie in [0, {X_MAX!r}], got {x}")
    tail = math.sqrt(max(1.0 - 17.0 * x * x, 0.0))
    b1 = 12.0 * x
    b2 = (5.0 * x + tail) ** 2 - 1.0
    b3 = math.sqrt(6.0 * max(1.0 - 17.0 * x**4 - (1.0 - 17.0 * x * x) ** 2, 0.0))
    return b1, b2, b3
