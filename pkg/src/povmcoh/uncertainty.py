"""Entropic-style uncertainty relation for coherence over two measurements.

For POVMs E, F with overlap constant c = max_{jk} ||sqrt(E_j) sqrt(F_k)||
(operator norm) and refined constant
c' = min( max_k ||sum_j E_j F_k E_j||, max_j ||sum_k F_k E_j F_k|| ):

    C_r(rho, E) + C_r(rho, F) >= 2 [ log2(1/c)  - S(rho) ]   (bound_c)
    C_r(rho, E) + C_r(rho, F) >=   log2(1/c') - 2 S(rho)     (bound_c_prime)

c' <= c^2 <= c, so the refined bound is never weaker.  For pure states the
left side is at least log2(1/c) with no entropy correction.
"""

import math
from dataclasses import dataclass

from . import linalg, measures
from .objects import DensityMatrix, Povm, require_same_dim


@dataclass(frozen=True)
class UncertaintyReport:
    lhs: float
    c: float
    c_prime: float
    bound_c: float
    bound_c_prime: float
    entropy_rho: float


def overlap_constant(e: Povm, f: Povm) -> float:
    """c = max_{jk} ||sqrt(E_j) sqrt(F_k)||."""
    require_same_dim(e.dim, f.dim)
    return max(
        linalg.operator_norm(re @ rf)
        for re in e.sqrt_elements
        for rf in f.sqrt_elements
    )


def refined_overlap_constant(e: Povm, f: Povm) -> float:
    """c' = min over the two sandwich directions of the largest sum norm."""
    require_same_dim(e.dim, f.dim)
    first = max(
        linalg.operator_norm(sum(ej @ fk @ ej for ej in e.elements))
        for fk in f.elements
    )
    second = max(
        linalg.operator_norm(sum(fk @ ej @ fk for fk in f.elements))
        for ej in e.elements
    )
    return min(first, second)


def uncertainty_report(rho: DensityMatrix, e: Povm, f: Povm) -> UncertaintyReport:
    """Evaluate both sides of the uncertainty relation for (rho, E, F)."""
    require_same_dim(rho.dim, e.dim, f.dim)
    lhs = (
        measures.relative_entropy_coherence(rho, e).value
        + measures.relative_entropy_coherence(rho, f).value
    )
    c = overlap_constant(e, f)
    c_prime = refined_overlap_constant(e, f)
    entropy = linalg.entropy_psd(rho.mat)
    bound_c = 2.0 * (math.log2(1.0 / c) - entropy)
    bound_c_prime = math.log2(1.0 / c_prime) - 2.0 * entropy
    return UncertaintyReport(lhs, c, c_prime, bound_c, bound_c_prime, entropy)


def pure_state_bound(c: float) -> float:
    """State-independent floor log2(1/c) valid whenever rho is pure."""
    return math.log2(1.0 / c)
