"""

The hyperquadric model of the CR 3-sphere.

Homogeneous points z = (z1, z2, z3) of CP^2 are paired by the
pseudo-Hermitian form

    <z, w> = i (conj(z1) w3 - conj(z3) w1) + conj(z2) w2  =  z^H . H . w

and the sphere is the null cone <z, z> = 0. The Heisenberg chart maps the
complement of P_inf = [0, 0, 1] onto R^3 with contact form
dz - y dx + x dy.

Matrix convention: E(a, b) has its only nonzero entry in row a, column b.

"""

import numpy as np

from legstr.contrib.errors import SingularityError

__all__ = [
    "H",
    "U",
    "U_INV",
    "L",
    "L_INV",
    "herm",
    "torus_element",
    "rotation_about_oz",
    "projective_distance",
    "heisenberg_projection",
    "heisenberg_lift",
]

_S = 1 / np.sqrt(2)

H = np.array([[0, 0, 1j],
              [0, 1, 0],
              [-1j, 0, 0]], dtype=complex)

# Pseudo-unitary, unimodular basis diagonalizing the maximal torus.
U = np.array([[_S, 0, 1j * _S],
              [0, 1, 0],
              [1j * _S, 0, _S]], dtype=complex)

U_INV = np.array([[_S, 0, -1j * _S],
                  [0, 1, 0],
                  [-1j * _S, 0, _S]], dtype=complex)

# CR automorphism of order four exchanging the two symmetry axes.
L = np.array([[0.5, -1j * _S, -0.5j],
              [-1j * _S, 0, _S],
              [0.5j, -_S, 0.5]], dtype=complex)

L_INV = L @ L @ L


def herm(z, w):
    """<z, w> along the last axis, broadcasting leading axes."""
    z = np.asarray(z)
    w = np.asarray(w)
    return (1j * (np.conj(z[..., 0]) * w[..., 2]
                  - np.conj(z[..., 2]) * w[..., 0])
            + np.conj(z[..., 1]) * w[..., 1])


def torus_element(theta, phi):
    """U diag(e^{i theta}, e^{i phi}, e^{-i(theta + phi)}) U^-1."""
    d = np.diag([np.exp(1j * theta), np.exp(1j * phi),
                 np.exp(-1j * (theta + phi))])
    return U @ d @ U_INV


def rotation_about_oz(phi):
    """Heisenberg rotation (x + iy, z) -> (e^{i phi}(x + iy), z)."""
    return np.diag([1, np.exp(1j * phi), 1]).astype(complex)


def projective_distance(z, w):
    """Fubini-Study sine distance between [z] and [w], along the last axis."""
    z = np.asarray(z)
    w = np.asarray(w)
    # residual of w off the line of z; 1 - cos^2 cancels below sqrt(eps)
    coef = (np.sum(np.conj(z) * w, axis=-1)
            / np.sum(np.abs(z) ** 2, axis=-1))
    rest = w - np.expand_dims(coef, -1) * z
    return (np.linalg.norm(rest, axis=-1)
            / np.linalg.norm(w, axis=-1))


def heisenberg_projection(z, singularity_tol=1e-12):
    """p_h([z]) = (Re(z2/z1), Im(z2/z1), Re(z3/z1)); z has last axis 3."""
    z = np.asarray(z, dtype=complex)
    norm = np.sqrt(np.sum(np.abs(z) ** 2, axis=-1))
    ratio = np.abs(z[..., 0]) / norm
    if np.any(ratio < singularity_tol):
        raise SingularityError(
            "Heisenberg projection at P_inf (|z1|/|z| = {:.3e})".format(
                float(np.min(ratio))))
    w2 = z[..., 1] / z[..., 0]
    w3 = z[..., 2] / z[..., 0]
    return np.stack([w2.real, w2.imag, w3.real], axis=-1)


def heisenberg_lift(x, y, u):
    """[1, x + iy, u + i(x^2 + y^2)/2]; the inverse of the projection."""
    x, y, u = np.broadcast_arrays(np.asarray(x, dtype=float),
                                  np.asarray(y, dtype=float),
                                  np.asarray(u, dtype=float))
    return np.stack([np.ones_like(x) + 0j, x + 1j * y,
                     u + 0.5j * (x * x + y * y)], axis=-1)
