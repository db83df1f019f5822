"""First variation of the sphere's lowest resonance under boundary deformation.

The unit sphere's first resonance sits at lam = -i with a threefold
degenerate resonant state A h(r) X_j, where

    h(r) = r^(-2) e^r (r - 1),    A = sqrt(3 / (2 pi e^2)),

and X_j are the coordinate functions restricted to the sphere.  In the
latitude coordinates used throughout this module (theta in [0, 2pi),
phi in [-pi/2, pi/2], area element cos(phi) dtheta dphi):

    X_1 = sin(phi),  X_2 = cos(phi) sin(theta),  X_3 = cos(phi) cos(theta),

so that X_1^2 + X_2^2 + X_3^2 = 1 and int_{S^2} X_j^2 = 4 pi / 3.

A normal displacement field C (outward positive) moves the degenerate
"quantum resonance" z = lam^2 = -1 at first order by the eigenvalues of

    C_ij = (3 / 2 pi) int_{S^2} C X_i X_j dvol,

and the pole itself by dlam = dz / (2 lam) = (i/2) eps mu per eigenvalue
mu of C_ij at deformation size eps.  For C <= 0 (deformations keeping the
obstacle inside the unit ball) the matrix is negative semi-definite --
strictly negative when C is not identically zero -- so the resonance moves
down, away from the real axis.

Quadrature is Gauss-Legendre in mu = sin(phi) tensored with the uniform
trapezoid rule in theta (spectrally accurate by periodicity; exact for
trigonometric polynomials of degree below the node count).  Grid-based
displacement fields are sampled on exactly these nodes, so no interpolation
is ever performed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.special import lpmv

from .identities import IdentityReport


class SignViolation(ValueError):
    """Displacement takes positive values where C <= 0 was required."""


class InvalidGrid(ValueError):
    """Grid values do not match the declared node counts."""


# ---------------------------------------------------------------------------
# real spherical harmonics (orthonormal, no Condon-Shortley sign)

def real_sph_harm(l: int, m: int, theta, phi):
    """Real orthonormal spherical harmonic of degree l, order m.

    m > 0 pairs with cos(m theta), m < 0 with sin(|m| theta); the
    Condon-Shortley (-1)^m of the associated Legendre functions is removed.
    """
    if l < 0 or abs(m) > l:
        raise ValueError("need l >= 0 and |m| <= l")
    theta = np.asarray(theta, float)
    mu = np.sin(np.asarray(phi, float))
    am = abs(m)
    norm = math.sqrt((2 * l + 1) / (4 * math.pi)
                     * math.factorial(l - am) / math.factorial(l + am))
    leg = (-1.0) ** am * lpmv(am, l, mu)
    if m == 0:
        return norm * leg
    if m > 0:
        return math.sqrt(2.0) * norm * leg * np.cos(am * theta)
    return math.sqrt(2.0) * norm * leg * np.sin(am * theta)


# ---------------------------------------------------------------------------
# displacement fields

@dataclass(frozen=True)
class NormalVariation:
    """Normal boundary displacement C(theta, phi), outward positive.

    Three representations: a plain callable (presets, tests), a real
    spherical-harmonic coefficient list, or values sampled on the quadrature
    grid of a declared size.
    """

    representation: str
    fn: Callable | None = None
    sh_coeffs: tuple[tuple[int, int, float], ...] = ()
    grid_shape: tuple[int, int] = (0, 0)   # (n_theta, n_phi)
    grid_values: tuple[float, ...] = field(default=(), repr=False)
    label: str = ""

    @staticmethod
    def from_callable(fn: Callable, label: str = "callable") -> "NormalVariation":
        return NormalVariation(representation="callable", fn=fn, label=label)

    @staticmethod
    def from_sh_coeffs(coeffs) -> "NormalVariation":
        cs = tuple((int(l), int(m), float(v)) for l, m, v in coeffs)
        for l, m, _ in cs:
            if l < 0 or abs(m) > l:
                raise ValueError(f"bad spherical-harmonic index (l={l}, m={m})")
        return NormalVariation(representation="sh", sh_coeffs=cs, label="sh")

    @staticmethod
    def from_grid(n_theta: int, n_phi: int, values) -> "NormalVariation":
        vals = tuple(float(v) for v in values)
        if n_theta < 4 or n_phi < 2:
            raise InvalidGrid("need n_theta >= 4 and n_phi >= 2")
        if len(vals) != n_theta * n_phi:
            raise InvalidGrid(
                f"expected {n_theta * n_phi} grid values, got {len(vals)}"
            )
        return NormalVariation(representation="grid", grid_shape=(n_theta, n_phi),
                               grid_values=vals, label="grid")

    def evaluate(self, theta, phi) -> np.ndarray:
        """Pointwise values; grid-based fields only on their own nodes."""
        theta = np.asarray(theta, float)
        phi = np.asarray(phi, float)
        if self.representation == "callable":
            return np.asarray(self.fn(theta, phi), float)
        if self.representation == "sh":
            out = np.zeros(np.broadcast(theta, phi).shape)
            for l, m, v in self.sh_coeffs:
                out = out + v * real_sph_harm(l, m, theta, phi)
            return out
        raise InvalidGrid("grid-based fields are evaluated on their own nodes")


def uniform_variation() -> NormalVariation:
    """C = -1: uniform shrink of the ball."""
    return NormalVariation.from_callable(
        lambda theta, phi: np.full(np.broadcast(theta, phi).shape, -1.0),
        label="uniform")


def translation_variation(axis=(0.0, 0.0, 1.0)) -> NormalVariation:
    """C = a . X: first-order rigid translation along ``axis``."""
    a = tuple(float(v) for v in axis)

    def fn(theta, phi):
        return (a[0] * np.sin(phi)
                + a[1] * np.cos(phi) * np.sin(theta)
                + a[2] * np.cos(phi) * np.cos(theta))

    return NormalVariation.from_callable(fn, label="translation")


def squash_variation() -> NormalVariation:
    """C = -X_3^2: flatten the sphere along the X_3 axis."""
    return NormalVariation.from_callable(
        lambda theta, phi: -(np.cos(phi) * np.cos(theta)) ** 2,
        label="squash")


# ---------------------------------------------------------------------------
# quadrature and the variation matrix

@lru_cache(maxsize=None)
def quadrature_nodes(n_theta: int, n_phi: int):
    """Uniform theta nodes (weight 2 pi / n_theta) x Gauss-Legendre in sin(phi)."""
    theta = 2.0 * math.pi * np.arange(n_theta) / n_theta
    w_theta = np.full(n_theta, 2.0 * math.pi / n_theta)
    mu, w_mu = np.polynomial.legendre.leggauss(n_phi)
    return theta, w_theta, mu, w_mu


def _grid_for(variation: NormalVariation, quad_order: int):
    """Quadrature nodes plus C values; grid fields fix their own nodes."""
    if variation.representation == "grid":
        n_theta, n_phi = variation.grid_shape
        theta, w_theta, mu, w_mu = quadrature_nodes(n_theta, n_phi)
        cvals = np.asarray(variation.grid_values).reshape(n_theta, n_phi)
    else:
        if quad_order < 8:
            raise ValueError("quad_order must be at least 8")
        theta, w_theta, mu, w_mu = quadrature_nodes(2 * quad_order, quad_order)
        phi = np.arcsin(mu)
        cvals = variation.evaluate(theta[:, None], phi[None, :])
    return theta, w_theta, mu, w_mu, cvals


def _coordinate_functions(theta: np.ndarray, mu: np.ndarray):
    """X_j on the tensor grid, indexed [theta, phi]."""
    cos_phi = np.sqrt(1.0 - mu**2)
    x1 = np.broadcast_to(mu, (theta.size, mu.size))
    x2 = np.sin(theta)[:, None] * cos_phi[None, :]
    x3 = np.cos(theta)[:, None] * cos_phi[None, :]
    return np.stack([x1, x2, x3])


@dataclass(frozen=True)
class VariationMatrix:
    """The symmetric 3x3 matrix governing the first-order pole motion."""

    entries: np.ndarray
    quad_order: int

    def norm(self) -> float:
        return float(np.linalg.norm(self.entries))


def variation_matrix(variation: NormalVariation,
                     quad_order: int = 64) -> VariationMatrix:
    """C_ij = (3 / 2 pi) int_{S^2} C X_i X_j dvol by tensor quadrature."""
    theta, w_theta, mu, w_mu, cvals = _grid_for(variation, quad_order)
    X = _coordinate_functions(theta, mu)
    w2 = w_theta[:, None] * w_mu[None, :]
    entries = np.empty((3, 3))
    for i in range(3):
        for j in range(i, 3):
            val = np.sum(w2 * cvals * X[i] * X[j])
            entries[i, j] = entries[j, i] = 3.0 / (2.0 * math.pi) * val
    entries = 0.5 * (entries + entries.T)
    return VariationMatrix(entries=entries, quad_order=quad_order)


def surface_integral(variation: NormalVariation, quad_order: int = 64) -> float:
    """int_{S^2} C dvol on the same nodes as the matrix assembly."""
    _, w_theta, _, w_mu, cvals = _grid_for(variation, quad_order)
    w2 = w_theta[:, None] * w_mu[None, :]
    return float(np.sum(w2 * cvals))


def eigenvalues(matrix: VariationMatrix) -> tuple[float, float, float]:
    """Ascending eigenvalues of the symmetric 3x3 matrix.

    Closed-form characteristic cubic (trigonometric method); each
    eigenvalue satisfies |det(M - mu I)| <= 1e-10 ||M||^3.
    """
    M = np.asarray(matrix.entries, float)
    if not np.allclose(M, M.T, atol=1e-12 * (1 + np.abs(M).max())):
        raise ValueError("matrix must be symmetric")
    p1 = M[0, 1] ** 2 + M[0, 2] ** 2 + M[1, 2] ** 2
    q = float(np.trace(M)) / 3.0
    if p1 == 0.0:
        return tuple(sorted(float(M[i, i]) for i in range(3)))
    p2 = sum((M[i, i] - q) ** 2 for i in range(3)) + 2.0 * p1
    p = math.sqrt(p2 / 6.0)
    B = (M - q * np.eye(3)) / p
    r = float(np.linalg.det(B)) / 2.0
    r = min(1.0, max(-1.0, r))
    angle = math.acos(r) / 3.0
    e1 = q + 2.0 * p * math.cos(angle)
    e3 = q + 2.0 * p * math.cos(angle + 2.0 * math.pi / 3.0)
    e2 = 3.0 * q - e1 - e3
    return tuple(sorted((e1, e2, e3)))


def resonance_shift(mu: float, eps: float) -> complex:
    """First-order pole motion: dlam = (i/2) eps mu at lam = -i.

    The quantum resonance z = lam^2 = -1 moves by eps*mu; the chain rule
    dz = 2 lam dlam converts.  Negative mu pushes Im(lam) down.
    """
    return 0.5j * eps * mu


def definiteness_report(variation: NormalVariation,
                        quad_order: int = 64) -> tuple[bool, bool]:
    """(negative semidefinite, strictly negative) for a displacement C <= 0.

    Raises :class:`SignViolation` if C exceeds 1e-12 anywhere on the
    quadrature grid.  "Strictly" additionally requires C not identically
    zero; fields supported on a null set of the grid may report False.
    """
    _, _, _, _, cvals = _grid_for(variation, quad_order)
    cmax = float(np.max(cvals))
    if cmax > 1e-12:
        raise SignViolation(f"C takes positive values (max {cmax:.3e})")
    matrix = variation_matrix(variation, quad_order)
    eigs = eigenvalues(matrix)
    norm = matrix.norm()
    semidefinite = eigs[-1] <= 1e-10 * norm
    nonzero = float(np.max(np.abs(cvals))) > 1e-12
    strictly = nonzero and eigs[-1] <= -1e-10 * norm
    return semidefinite, strictly


# ---------------------------------------------------------------------------
# the radial normalization constant

def radial_norm_details(n_points: int = 50) -> tuple[float, float, float]:
    """(worst pointwise antiderivative error, computed constant, 2 pi e^2 / 3).

    The pointwise check compares the exact (unsimplified) derivative of the
    antiderivative (2r)^(-1) e^(2r) (r-2) against the normalization
    integrand h(r)^2 r^2 = r^(-2) e^(2r) (r-1)^2 on 50 points of [1, 5];
    the constant is the boundary value at r = 1 times the 4 pi / 3 angular
    factor.
    """
    worst = 0.0
    for i in range(n_points):
        r = 1.0 + 4.0 * i / (n_points - 1)
        e2r = math.exp(2.0 * r)
        deriv = e2r * (2.0 * r * (r - 2.0) + r - (r - 2.0)) / (2.0 * r * r)
        integrand = e2r * (r - 1.0) ** 2 / r**2
        worst = max(worst, abs(deriv - integrand) / max(abs(integrand), 1.0))
    antideriv_at_1 = math.exp(2.0) * (1.0 - 2.0) / 2.0   # = -e^2/2
    norm_const = (4.0 * math.pi / 3.0) * (-antideriv_at_1)
    target = 2.0 * math.pi * math.e**2 / 3.0
    return worst, norm_const, target


def radial_norm_check(n_points: int = 50) -> IdentityReport:
    """Certificate for the resonant-state normalization A = sqrt(3/(2 pi e^2)).

    Passes iff the antiderivative identity holds to 1e-9 pointwise and the
    boundary value reproduces 2 pi e^2 / 3 to 1e-12 relative.
    """
    worst, norm_const, target = radial_norm_details(n_points)
    passed = worst <= 1e-9 and abs(norm_const - target) <= 1e-12 * target
    return IdentityReport(lhs=norm_const, rhs=target,
                          ratio=norm_const / target,
                          tolerance_used=1e-9, passed=passed)


def normalization_constant() -> float:
    """A = sqrt(3 / (2 pi e^2)) ~ 0.2542."""
    return math.sqrt(3.0 / (2.0 * math.pi * math.e**2))
