"""Exact closed-form metrics for the two substrate geometries.

Everything in this module is evaluated over arbitrary-precision rationals
(`fractions.Fraction`); no floating point is used at any point, so equality
checks between independently derived expressions are exact.  Lengths are in
units of the unit-cube edge, areas and volumes in its square and cube.

The two geometries, parameterised by the iteration order ``n``:

* slices -- the unit cube cut into ``rho = floor(3^n / 2) + 1`` plates of
  thickness ``L = 1 / 3^n``, separated by coolant gaps of the same thickness
  (bottom and top plates solid);
* Menger sponge -- the fractal obtained by recursively removing the 7 center
  subcubes of each 3x3x3 subdivision, leaving 20.

All functions are pure and safe to call concurrently.
"""
from __future__ import annotations

import enum
import operator
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

#: Hard cap on the iteration order for closed-form evaluation.  The values
#: stay exact at any n; the cap bounds rational bit growth and is the single
#: named constant all range checks use.
CLOSED_FORM_CAP = 12


class IterationOutOfRangeError(ValueError):
    """Iteration order outside [0, CLOSED_FORM_CAP]."""


class ModelKind(enum.Enum):
    """The two substrate geometries under comparison."""

    SLICES = "slices"
    MENGER_SPONGE = "menger"


def check_iteration(n: int, cap: int = CLOSED_FORM_CAP) -> int:
    """Validate an iteration order; returns it as a plain int."""
    try:
        n = operator.index(n)
    except TypeError:
        raise IterationOutOfRangeError(f"iteration order must be an integer, got {n!r}") from None
    if not 0 <= n <= cap:
        raise IterationOutOfRangeError(f"iteration order {n} outside [0, {cap}]")
    return n


def char_length(n: int) -> Fraction:
    """Characteristic length L = 1/3^n (slice thickness and gap width)."""
    n = check_iteration(n)
    return Fraction(1, 3**n)


def slice_count(n: int) -> int:
    """Number of plates rho = floor(3^n/2) + 1, equal to (3^n + 1)/2."""
    n = check_iteration(n)
    return 3**n // 2 + 1


def slice_volume(n: int) -> Fraction:
    """Substrate volume of the slice model, rho * L = 1/2 + 1/(2*3^n)."""
    return slice_count(n) * char_length(n)


def slice_surface(n: int) -> Fraction:
    """Surface of the slice model, rho * (2 + 4L): both plate faces plus the
    four edge strips of every plate."""
    return slice_count(n) * (2 + 4 * char_length(n))


def menger_volume(n: int) -> Fraction:
    """Volume of the level-n Menger sponge, (20/27)^n."""
    n = check_iteration(n)
    return Fraction(20, 27) ** n


def menger_surface(n: int) -> Fraction:
    """Surface of the level-n Menger sponge.

    Evaluated as the product form (1/9) * (20/9)^(n-1) * (40 + 80*(2/5)^n);
    at n = 0 the rational negative power makes this reduce exactly to 6, the
    unit cube.  Algebraically identical to ``menger_surface_simplified``,
    which the test suite checks by exact equality for every admissible n.
    """
    n = check_iteration(n)
    return Fraction(1, 9) * Fraction(20, 9) ** (n - 1) * (40 + 80 * Fraction(2, 5) ** n)


def menger_surface_simplified(n: int) -> Fraction:
    """Independent expression tree for the sponge surface: (2*20^n + 4*8^n)/9^n."""
    n = check_iteration(n)
    return Fraction(2 * 20**n + 4 * 8**n, 9**n)


def total_volume(n: int) -> Fraction:
    """Volume (1 + 2L)^3 of the wrapping cube that holds model plus coolant."""
    return (1 + 2 * char_length(n)) ** 3


def model_volume(kind: ModelKind, n: int) -> Fraction:
    """Substrate volume of either model."""
    if kind is ModelKind.SLICES:
        return slice_volume(n)
    return menger_volume(n)


def model_surface(kind: ModelKind, n: int) -> Fraction:
    """Heat-emitting surface of either model."""
    if kind is ModelKind.SLICES:
        return slice_surface(n)
    return menger_surface(n)


def coolant_volume(kind: ModelKind, n: int) -> Fraction:
    """Coolant volume: wrapping cube minus substrate.  Strictly positive for n >= 1."""
    return total_volume(n) - model_volume(kind, n)


def efficiency(kind: ModelKind, n: int) -> Fraction:
    """Coolant volume available per unit of heat-emitting surface.

    Smaller values mean a thermally harder configuration.
    """
    return coolant_volume(kind, n) / model_surface(kind, n)


class Ratios(NamedTuple):
    R_E: Fraction
    R_S: Fraction
    R_n: Fraction


def ratios(n: int) -> Ratios:
    """Efficiency ratio R_E = E_M/E_s, surface ratio R_S = S_M/S_s and the
    quality ratio R_n = R_E * R_S.

    R_n > 1 means the sponge is the thermally better configuration.  By
    construction R_n equals the coolant-volume ratio
    (V_tot - V_M)/(V_tot - V_s) exactly.
    """
    n = check_iteration(n)
    r_e = efficiency(ModelKind.MENGER_SPONGE, n) / efficiency(ModelKind.SLICES, n)
    r_s = menger_surface(n) / slice_surface(n)
    return Ratios(r_e, r_s, r_e * r_s)


@dataclass(frozen=True)
class GeometrySummary:
    """Derived geometry of one model at one iteration order.

    ``rho`` is the plate count and is None for the sponge.  Satisfies
    0 < volume <= 1 and surface >= 6 (the n = 0 unit cube is the minimum
    for both models).
    """

    kind: ModelKind
    n: int
    rho: int | None
    L: Fraction
    volume: Fraction
    surface: Fraction


def summarize(kind: ModelKind, n: int) -> GeometrySummary:
    """Bundle the derived quantities of one model at iteration order n."""
    n = check_iteration(n)
    return GeometrySummary(
        kind=kind,
        n=n,
        rho=slice_count(n) if kind is ModelKind.SLICES else None,
        L=char_length(n),
        volume=model_volume(kind, n),
        surface=model_surface(kind, n),
    )
