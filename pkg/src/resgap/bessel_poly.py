"""Exact resonance polynomials for the unit ball in odd dimensions.

Two equivalent polynomial families:

* ``theta_k`` -- reverse Bessel polynomials: monic, integer coefficients,
  built from the three-term recurrence

      theta_0 = 1,  theta_1 = x + 1,
      theta_k = (2k - 1) * theta_{k-1} + x^2 * theta_{k-2}.

* ``p_k`` -- the resonance polynomials whose zeros (for ``k = ell + (n-3)/2``)
  are the scattering poles of the unit ball in odd dimension ``n``.  The
  coefficient of ``lam^(k-m)`` is ``(i/2)^m (k+m)! / (m! (k-m)!)``.

The two are related by ``p_k(lam) = i^k * theta_k(-i*lam)``, which
``p_theta_equivalence`` verifies coefficient-by-coefficient in exact
Gaussian-integer arithmetic (both sides scaled by ``2^k``).

``theta_k`` is the canonical stored object: Python integers never overflow,
so all coefficients are exact for any degree.  ``p_k`` is derived on demand;
its coefficients are assembled as exact integer fractions ``N / 2^m`` and
converted to floating complex only at the root-finding boundary (the
coefficients grow like ``(2k)!/(2^k k!)`` and leave the 64-bit range near
``k = 15``, but stay comfortably inside double range through ``k = 60``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


@dataclass(frozen=True)
class ReverseBesselPoly:
    """Monic integer polynomial theta_k, coefficients ascending in x."""

    degree: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.degree + 1:
            raise ValueError("coefficient count must be degree + 1")
        if self.coeffs[-1] != 1:
            raise ValueError("theta_k must be monic")


@dataclass(frozen=True)
class ComplexPoly:
    """Complex-coefficient polynomial, coefficients ascending in lam."""

    degree: int
    coeffs: tuple[complex, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.degree + 1:
            raise ValueError("coefficient count must be degree + 1")
        if self.coeffs[-1] == 0:
            raise ValueError("leading coefficient must be nonzero")


@lru_cache(maxsize=None)
def theta_poly(k: int) -> ReverseBesselPoly:
    """Exact integer coefficients of theta_k via the three-term recurrence."""
    if k < 0:
        raise ValueError("degree must be non-negative")
    if k == 0:
        return ReverseBesselPoly(0, (1,))
    prev, cur = [1], [1, 1]
    for n in range(2, k + 1):
        nxt = [(2 * n - 1) * c for c in cur] + [0] * (n - len(cur) + 1)
        for j, c in enumerate(prev):
            nxt[j + 2] += c
        prev, cur = cur, nxt
    return ReverseBesselPoly(k, tuple(cur))


def _p_exact_coeffs(k: int) -> list[tuple[Fraction, Fraction]]:
    """Exact (real, imag) rational coefficients of p_k, ascending."""
    out = [(Fraction(0), Fraction(0))] * (k + 1)
    for m in range(k + 1):
        num = math.factorial(k + m) // (math.factorial(m) * math.factorial(k - m))
        val = Fraction(num, 2**m)
        re, im = _IPOW[m % 4]
        out[k - m] = (re * val, im * val)
    return out


_IPOW = ((1, 0), (0, 1), (-1, 0), (0, -1))  # i^m as (re, im)


@lru_cache(maxsize=None)
def p_poly(k: int) -> ComplexPoly:
    """Resonance polynomial p_k with floating complex coefficients."""
    if k < 0:
        raise ValueError("degree must be non-negative")
    coeffs = tuple(complex(float(re), float(im)) for re, im in _p_exact_coeffs(k))
    return ComplexPoly(k, coeffs)


def p_gaussian_coeffs(k: int) -> tuple[tuple[int, int], ...]:
    """Gaussian-integer coefficients of 2^k * p_k, ascending.

    Used by the root finder's exact refinement stage; any nonzero scalar
    multiple of p_k has the same zeros.
    """
    out = []
    for j, (re, im) in enumerate(_p_exact_coeffs(k)):
        sre, sim = re * 2**k, im * 2**k
        if sre.denominator != 1 or sim.denominator != 1:
            raise AssertionError("2^k p_k must have Gaussian-integer coefficients")
        out.append((sre.numerator, sim.numerator))
    return tuple(out)


def eval_poly(p, lam):
    """Horner evaluation from the leading coefficient.

    Accepts either polynomial type.  Integer coefficients and an integer
    argument stay in exact arithmetic (``eval_poly(theta_poly(3), 1) == 37``).
    """
    acc = p.coeffs[-1]
    for c in reversed(p.coeffs[:-1]):
        acc = acc * lam + c
    return acc


def double_factorial_odd(k: int) -> int:
    """(2k-1)!! = (2k)! / (2^k k!), the constant term of theta_k."""
    return math.factorial(2 * k) // (2**k * math.factorial(k))


@dataclass(frozen=True)
class EquivalenceReport:
    """Outcome of the exact p_k vs i^k theta_k(-i lam) comparison."""

    passed: bool
    checked_up_to: int
    failing_k: int | None = None
    failing_index: int | None = None


def p_theta_equivalence(k_max: int) -> EquivalenceReport:
    """Assert coefficient-wise p_k(lam) == i^k theta_k(-i lam) for k <= k_max.

    Both sides are scaled by 2^k so every coefficient is an exact Gaussian
    integer; comparison is integer equality.  Returns the first failing
    (k, coefficient index) on mismatch.
    """
    if k_max > 30:
        raise ValueError("equivalence check supported for k_max <= 30")
    for k in range(k_max + 1):
        th = theta_poly(k).coeffs
        for j in range(k + 1):
            # 2^k * coeff of lam^j in p_k, with m = k - j
            m = k - j
            num = math.factorial(k + m) // (math.factorial(m) * math.factorial(k - m))
            ure, uim = _IPOW[m % 4]
            lhs = (ure * num * 2**j, uim * num * 2**j)
            # 2^k * coeff of lam^j in i^k theta_k(-i lam):
            # theta coefficient c_j picks up (-i)^j i^k = (-1)^j i^(k+j)
            vre, vim = _IPOW[(k + j) % 4]
            sign = -1 if j % 2 else 1
            rhs = (sign * vre * th[j] * 2**k, sign * vim * th[j] * 2**k)
            if lhs != rhs:
                return EquivalenceReport(False, k_max, failing_k=k, failing_index=j)
    return EquivalenceReport(True, k_max)
