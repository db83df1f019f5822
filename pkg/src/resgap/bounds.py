"""Lower bounds on resonance widths for star-shaped obstacles.

Three classical gap statements are evaluated and tabulated:

* Morawetz-type multiplier bound: every resonance satisfies
  ``|Im lam| > 1 / (4 diam)``.
* Ralston's bound: ``|Im lam| >= 2 / diam`` in any odd dimension,
  attained by the ball in dimensions three and five.
* The Fernandez-Lavine frequency-dependent criterion for an obstacle
  containing a ball of radius R: with
  ``beta = 1 + (e/2) sqrt(1 + 2/(kappa R))`` the criterion reads
  ``(2 beta kappa R)^2 < 3``, which holds exactly for
  ``kappa R < 0.1353...``; the high-frequency width asymptote is
  ``1 / ((2 + e) R)``.

``bounds_table`` normalizes the Morawetz/Ralston diameters as
``diam = 2 R`` (obstacle contained in B(0, R)), matching the usual
unit-ball presentation.  The full Fernandez-Lavine width curve needs
estimates outside this package's scope, so the table carries only the
validity flag and the asymptote.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class NonPositiveDiameter(ValueError):
    """Diameter must be positive."""


class NonPositiveInput(ValueError):
    """Frequency and radius must be positive."""


class BracketFailure(RuntimeError):
    """Bisection bracket did not straddle the threshold."""


@dataclass(frozen=True)
class BoundRow:
    kappa: float
    ralston: float
    morawetz: float
    fl_asymptote: float
    fl_nontrivial: bool


@dataclass(frozen=True)
class BoundCurve:
    """Sampled gap-bound values versus frequency for one radius."""

    radius: float
    samples: tuple[BoundRow, ...]


def morawetz_gap(diam: float) -> float:
    """Multiplier-method width bound 1/(4 diam)."""
    if diam <= 0:
        raise NonPositiveDiameter(f"diam must be positive, got {diam}")
    return 1.0 / (4.0 * diam)


def ralston_gap(diam: float) -> float:
    """Unconditional width bound 2/diam (sharp for the ball, n = 3, 5)."""
    if diam <= 0:
        raise NonPositiveDiameter(f"diam must be positive, got {diam}")
    return 2.0 / diam


def fl_beta(kappa: float, radius: float) -> float:
    """beta = 1 + (e/2) * sqrt(1 + 2/(kappa R))."""
    if kappa <= 0 or radius <= 0:
        raise NonPositiveInput("kappa and radius must be positive")
    return 1.0 + 0.5 * math.e * math.sqrt(1.0 + 2.0 / (kappa * radius))


def fl_nontrivial(kappa: float, radius: float) -> bool:
    """True iff (2 beta kappa R)^2 < 3."""
    s = kappa * radius
    return (2.0 * fl_beta(kappa, radius) * s) ** 2 < 3.0


def fl_threshold(radius: float) -> float:
    """The kappa where (2 beta kappa R)^2 crosses 3, by bisection on kappa*R.

    The product kappa*R at the crossing is scale-invariant (~0.1353).
    """
    if radius <= 0:
        raise NonPositiveInput("radius must be positive")

    def g(s: float) -> float:
        beta = 1.0 + 0.5 * math.e * math.sqrt(1.0 + 2.0 / s)
        return (2.0 * beta * s) ** 2 - 3.0

    lo, hi = 1e-6, 1.0
    if not (g(lo) < 0.0 < g(hi)):
        raise BracketFailure("threshold not bracketed on kappa*R in (1e-6, 1)")
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if g(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    s = 0.5 * (lo + hi)
    if abs(g(s)) > 1e-10:
        raise BracketFailure(f"bisection residual {g(s):.3e} above 1e-10")
    return s / radius


def fl_asymptote(radius: float) -> float:
    """High-frequency width bound 1/((2 + e) R)."""
    if radius <= 0:
        raise NonPositiveInput("radius must be positive")
    return 1.0 / ((2.0 + math.e) * radius)


def bounds_table(radius: float, kappa_min: float, kappa_max: float,
                 step: float) -> BoundCurve:
    """One row per kappa sample with all bound values and the FL flag."""
    if not (0 < kappa_min < kappa_max):
        raise NonPositiveInput("need 0 < kappa_min < kappa_max")
    if step <= 0:
        raise NonPositiveInput("step must be positive")
    diam = 2.0 * radius
    ral = ralston_gap(diam)
    mor = morawetz_gap(diam)
    asym = fl_asymptote(radius)
    rows: list[BoundRow] = []
    i = 0
    while True:
        kappa = kappa_min + i * step
        if kappa > kappa_max * (1 + 1e-12):
            break
        rows.append(BoundRow(
            kappa=kappa,
            ralston=ral,
            morawetz=mor,
            fl_asymptote=asym,
            fl_nontrivial=fl_nontrivial(kappa, radius),
        ))
        i += 1
    return BoundCurve(radius=radius, samples=tuple(rows))
