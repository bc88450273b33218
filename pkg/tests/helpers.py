"""Shared random-instance generators and independent reference oracles."""

import math

import numpy as np

from povmcoh import DensityMatrix, Povm, projective_povm


def random_unitary(rng, d):
    """Haar-distributed unitary via QR of a complex Ginibre matrix."""
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    phases = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * phases


def random_density(rng, d, cols=None):
    """Random full-rank density matrix (Wishart with `cols` columns, default 2d).

    The extra columns keep the smallest eigenvalue comfortably away from zero,
    so full-rank code paths stay full rank at fixed seeds.
    """
    cols = 2 * d if cols is None else cols
    a = rng.standard_normal((d, cols)) + 1j * rng.standard_normal((d, cols))
    w = a @ a.conj().T
    return DensityMatrix(w / np.real(np.trace(w)))


def random_pure_density(rng, d):
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    v = v / np.linalg.norm(v)
    return DensityMatrix(np.outer(v, v.conj()))


def random_ensemble(rng, d, n, cols=None):
    """Ensemble of full-rank states with weights bounded away from zero."""
    weights = 1.0 + rng.random(n)
    weights /= weights.sum()
    states = [random_density(rng, d, cols) for _ in range(n)]
    from povmcoh import Ensemble

    return Ensemble(states, weights)


def z_basis_povm():
    return projective_povm(np.eye(2, dtype=complex))


def x_basis_povm():
    h = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / np.sqrt(2.0)
    return projective_povm(h)


def plus_density():
    return DensityMatrix(np.full((2, 2), 0.5, dtype=complex))


def trine_povm():
    """Three qubit elements (2/3)|phi_j><phi_j| with Bloch vectors 120 degrees apart."""
    elements = []
    for j in range(3):
        t = math.pi * j / 3.0
        v = np.array([math.cos(t), math.sin(t)], dtype=complex)
        elements.append((2.0 / 3.0) * np.outer(v, v.conj()))
    return Povm(elements)


def block_projective_povm(d, blocks):
    """Projectors onto index blocks, e.g. blocks=[(0,1),(2,3)] for d=4."""
    elements = []
    for idx in blocks:
        e = np.zeros((d, d), dtype=complex)
        for i in idx:
            e[i, i] = 1.0
        elements.append(e)
    return Povm(elements)


def ddiff_reference(nodes, values):
    """Divided difference by the explicit kernel sum_k f(x_k) / prod_{l!=k}(x_k - x_l).

    Valid only for pairwise-distinct nodes; this is the independent oracle the
    confluent Newton-table implementation is checked against.
    """
    nodes = np.asarray(nodes, dtype=float)
    values = np.asarray(values, dtype=float)
    total = 0.0
    for k in range(nodes.size):
        denom = 1.0
        for l in range(nodes.size):
            if l != k:
                denom *= nodes[k] - nodes[l]
        total += values[k] / denom
    return total


def clamped_spectrum(element):
    w = np.linalg.eigvalsh((element + element.conj().T) / 2.0)
    return np.clip(w, 0.0, None)


def perturbed_avg_relative_entropy(povm, eps):
    """Haar average of the relative-entropy measure via distinct-node perturbation.

    Each element's spectrum is shifted by eps*(1..d) so all nodes are distinct,
    then evaluated with the explicit kernel; the eps -> 0 limit recovers the
    confluent value (Richardson-extrapolate two eps values to check that).
    """
    d = povm.dim
    shift = sum(1.0 / m for m in range(2, d + 1))
    total = 0.0
    for element in povm.elements:
        nodes = clamped_spectrum(element) + eps * np.arange(1, d + 1)
        values = nodes**d * (np.log(nodes) - shift)
        total += ddiff_reference(nodes, values)
    return -total / (d * math.log(2.0))


def perturbed_avg_tsallis(povm, alpha, eps):
    """Haar average of the Tsallis measure via distinct-node perturbation."""
    d = povm.dim
    beta = 1.0 / alpha
    prefactor = math.factorial(d - 1)
    for i in range(1, d):
        prefactor /= beta + i
    total = 0.0
    for element in povm.elements:
        nodes = clamped_spectrum(element) + eps * np.arange(1, d + 1)
        values = nodes ** (d + beta - 1.0)
        total += prefactor * ddiff_reference(nodes, values)
    return (total - 1.0) / (alpha - 1.0)


def richardson(value_eps, value_eps_tenth):
    """Extrapolate an O(eps) family to eps = 0 from values at eps and eps/10."""
    return (10.0 * value_eps_tenth - value_eps) / 9.0
