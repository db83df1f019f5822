"""Scattering resonances of the ball B(0, R) in odd dimension n.

For angular momentum ``ell`` the resonances of the unit ball are the zeros
of ``p_k`` with ``k = ell + (n-3)/2``; a ball of radius R scales every pole
by 1/R.  Each pole carries the multiplicity of the eigenvalue
``ell*(ell + n - 2)`` of the Laplacian on the (n-1)-sphere.

Root sets are computed once per polynomial degree and cached; radius
scaling happens on access, so ``resonances_for_ell(n, ell, R)`` is exactly
``resonances_for_ell(n, ell, 1)`` with each pole divided by R.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .bessel_poly import p_gaussian_coeffs, p_poly
from .rootfinder import RootSet, roots

MAX_DEGREE = 60


class UnsupportedDimension(ValueError):
    """Dimension must be odd and at least 3."""


class DegreeTooLarge(ValueError):
    """Polynomial degree beyond the root finder's conditioning cap."""


@dataclass(frozen=True)
class Resonance:
    """One scattering pole of the ball.

    ``lam`` has units of inverse length; ``residual`` is the scaled
    root-finder residual of ``lam * radius`` as a zero of ``p_k``.
    """

    lam: complex
    ell: int
    dim: int
    radius: float
    multiplicity: int
    residual: float


@dataclass(frozen=True)
class SpectrumSlice:
    """All resonances with ell <= ell_max, sorted by (ell, Re lam)."""

    resonances: tuple[Resonance, ...]
    ell_max: int
    dim: int
    radius: float
    highlight_ell: int | None = None

    def highlighted(self, res: Resonance) -> bool:
        return self.highlight_ell is not None and res.ell == self.highlight_ell


def _check_dimension(n: int) -> None:
    if n < 3 or n % 2 == 0:
        raise UnsupportedDimension(f"dimension must be odd and >= 3, got {n}")


@lru_cache(maxsize=None)
def _unit_rootset(k: int) -> RootSet:
    """Cached roots of p_k (unit radius), sorted by real part."""
    rs = roots(p_poly(k), exact_coeffs=p_gaussian_coeffs(k))
    order = sorted(range(k), key=lambda i: (rs.roots[i].real, rs.roots[i].imag))
    return RootSet(
        tuple(rs.roots[i] for i in order),
        tuple(rs.residuals[i] for i in order),
        rs.iterations,
    )


def multiplicity(ell: int, n: int) -> int:
    """Dimension of the ell(ell + n - 2) eigenspace on the (n-1)-sphere.

    Exact integer arithmetic: (2*ell + n - 2)/(n - 2) * C(ell + n - 3, ell).
    """
    if ell < 0:
        raise ValueError("ell must be non-negative")
    if n < 3:
        raise ValueError("n must be at least 3")
    if ell == 0:
        return 1
    num = (2 * ell + n - 2) * math.comb(ell + n - 3, ell)
    q, r = divmod(num, n - 2)
    if r != 0:
        raise AssertionError("multiplicity formula must divide exactly")
    return q


def resonances_for_ell(n: int, ell: int, radius: float = 1.0) -> list[Resonance]:
    """All resonances of B(0, radius) in dimension n at angular momentum ell."""
    _check_dimension(n)
    if ell < 0:
        raise ValueError("ell must be non-negative")
    if radius <= 0:
        raise ValueError("radius must be positive")
    k = ell + (n - 3) // 2
    if k > MAX_DEGREE:
        raise DegreeTooLarge(f"p_{k} exceeds the degree cap {MAX_DEGREE}")
    if k == 0:
        return []
    rs = _unit_rootset(k)
    mult = multiplicity(ell, n)
    return [
        Resonance(lam=r / radius, ell=ell, dim=n, radius=radius,
                  multiplicity=mult, residual=res)
        for r, res in zip(rs.roots, rs.residuals)
    ]


def min_width(n: int, ell_max: int, radius: float = 1.0) -> tuple[float, Resonance]:
    """Minimum of |Im lam| over all resonances with ell <= ell_max.

    Scans the full ell range (no assumption about where the minimum sits)
    and returns the width together with the attaining resonance.
    """
    if ell_max < 1:
        raise ValueError("ell_max must be at least 1")
    best: Resonance | None = None
    for ell in range(ell_max + 1):
        for res in resonances_for_ell(n, ell, radius):
            if best is None or abs(res.lam.imag) < abs(best.lam.imag):
                best = res
    if best is None:
        raise ValueError("no resonances found in the requested range")
    return abs(best.lam.imag), best


def figure1_data(ell_max: int, highlight_ell: int = 20) -> SpectrumSlice:
    """Unit-sphere n=3 resonances for ell <= ell_max with highlight flags."""
    out: list[Resonance] = []
    for ell in range(ell_max + 1):
        out.extend(resonances_for_ell(3, ell, 1.0))
    return SpectrumSlice(
        resonances=tuple(out),
        ell_max=ell_max,
        dim=3,
        radius=1.0,
        highlight_ell=highlight_ell,
    )
