"""Reference-table reproduction, printed-precision formatting, efficiency
series, crossover location, and CSV/JSON emission.

Formatting conventions follow the published reference table: plain columns
carry 4 decimal places (3 once the value reaches 100, i.e. 6 significant
digits), efficiency values below 1 use the ``mantissa(-p)`` shorthand for
``mantissa * 10^-p``, and rounding is half-away-from-zero applied to the
exact rational.  Machine-readable emitters render decimals at 10 significant
digits next to the exact ``p/q`` form.
"""
from __future__ import annotations

import json
import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import BinaryIO, Sequence

from . import metrics
from .metrics import ModelKind, check_iteration

TABLE_COLUMNS = (
    "n", "rho", "L", "V_M", "V_s", "S_M", "S_s", "V_tot",
    "E_M", "E_s", "R_E", "R_S", "R_n",
)

#: Columns rendered with the scientific shorthand when below 1.
EFFICIENCY_COLUMNS = ("E_M", "E_s")

SERIES_COLUMNS = ("model", "n", "S", "E")


@dataclass(frozen=True)
class EfficiencyRow:
    """One full row of the reference table (13 columns, exact rationals)."""

    n: int
    rho: int
    L: Fraction
    V_M: Fraction
    V_s: Fraction
    S_M: Fraction
    S_s: Fraction
    V_tot: Fraction
    E_M: Fraction
    E_s: Fraction
    R_E: Fraction
    R_S: Fraction
    R_n: Fraction


def table_row(n: int) -> EfficiencyRow:
    """All 13 columns for iteration order n, populated from the closed forms."""
    n = check_iteration(n)
    v_tot = metrics.total_volume(n)
    v_m = metrics.menger_volume(n)
    v_s = metrics.slice_volume(n)
    s_m = metrics.menger_surface(n)
    s_s = metrics.slice_surface(n)
    e_m = (v_tot - v_m) / s_m
    e_s = (v_tot - v_s) / s_s
    r_e = e_m / e_s
    r_s = s_m / s_s
    return EfficiencyRow(
        n=n, rho=metrics.slice_count(n), L=metrics.char_length(n),
        V_M=v_m, V_s=v_s, S_M=s_m, S_s=s_s, V_tot=v_tot,
        E_M=e_m, E_s=e_s, R_E=r_e, R_S=r_s, R_n=r_e * r_s,
    )


def full_table(n_max: int) -> list[EfficiencyRow]:
    """Rows for n = 0..n_max in order."""
    n_max = check_iteration(n_max)
    return [table_row(n) for n in range(n_max + 1)]


# ---------------------------------------------------------------------------
# printed-precision formatting


def round_half_away(value: Fraction, decimals: int) -> str:
    """Render a rational at a fixed number of decimals, rounding halves away
    from zero (exact integer arithmetic, no float involved)."""
    sign = "-" if value < 0 else ""
    scaled = abs(value) * 10**decimals
    q, r = divmod(scaled.numerator, scaled.denominator)
    if 2 * r >= scaled.denominator:
        q += 1
    digits = str(q).rjust(decimals + 1, "0")
    if decimals == 0:
        return sign + digits
    return sign + digits[:-decimals] + "." + digits[-decimals:]


def _format_fixed(value: Fraction) -> str:
    # 4 decimals, capped to 6 significant digits for values >= 100
    mag = abs(value)
    int_digits = len(str(int(mag))) if mag >= 1 else 1
    return round_half_away(value, max(0, min(4, 6 - int_digits)))


def _format_shorthand(value: Fraction) -> str:
    # mantissa(-p) with 1 <= mantissa < 10, for 0 < value < 1
    p = 0
    mag = abs(value)
    while mag < 1:
        mag *= 10
        p += 1
    text = round_half_away(mag, 4)
    if text.startswith("10."):  # rounding carried the mantissa past 10
        text = round_half_away(mag / 10, 4)
        p -= 1
    sign = "-" if value < 0 else ""
    return f"{sign}{text}({-p})"


def _format_efficiency(value: Fraction) -> str:
    if abs(value) >= 1:
        return _format_fixed(value)
    return _format_shorthand(value)


def format_paper_precision(row: EfficiencyRow) -> dict[str, str]:
    """Render one row with the reference table's printed conventions.

    Returns one string per column, keyed and ordered by TABLE_COLUMNS.
    """
    out = {
        "n": str(row.n),
        "rho": str(row.rho),
        "L": "1" if row.L == 1 else f"1/{row.L.denominator}",
    }
    for col in TABLE_COLUMNS[3:]:
        value = getattr(row, col)
        if col in EFFICIENCY_COLUMNS:
            out[col] = _format_efficiency(value)
        else:
            out[col] = _format_fixed(value)
    return out


def decimal_string(value: Fraction, sig: int = 10) -> str:
    """Decimal rendering of a rational at ``sig`` significant digits
    (half-away-from-zero), fixed-point notation for any sane magnitude."""
    if value == 0:
        return "0." + "0" * (sig - 1)
    sign = "-" if value < 0 else ""
    mag = abs(value)
    # exponent e with 10^e <= mag < 10^(e+1)
    e = len(str(mag.numerator)) - len(str(mag.denominator))
    while mag < Fraction(10) ** e:
        e -= 1
    while mag >= Fraction(10) ** (e + 1):
        e += 1
    scaled = mag * Fraction(10) ** (sig - 1 - e)
    q, r = divmod(scaled.numerator, scaled.denominator)
    if 2 * r >= scaled.denominator:
        q += 1
    if q == 10**sig:
        q //= 10
        e += 1
    digits = str(q)
    if not -10 <= e <= 15:
        return f"{sign}{digits[0]}.{digits[1:]}e{e:+d}"
    if e >= sig - 1:
        return sign + digits + "0" * (e + 1 - sig)
    if e >= 0:
        return sign + digits[: e + 1] + "." + digits[e + 1 :]
    return sign + "0." + "0" * (-e - 1) + digits


# ---------------------------------------------------------------------------
# efficiency series and crossover


@dataclass(frozen=True)
class EfficiencySeries:
    """Ordered (surface, efficiency) samples of one model for n = 0..n_max.

    Point index equals the iteration order.  S strictly increases and E
    strictly decreases along the series.
    """

    model: ModelKind
    points: tuple[tuple[Fraction, Fraction], ...]


def efficiency_series(kind: ModelKind, n_max: int) -> EfficiencySeries:
    """(S, E) samples of one model for n = 0..n_max, exact rationals."""
    n_max = check_iteration(n_max)
    points = tuple(
        (metrics.model_surface(kind, n), metrics.efficiency(kind, n))
        for n in range(n_max + 1)
    )
    return EfficiencySeries(model=kind, points=points)


class NoCrossoverError(ValueError):
    """The two efficiency curves never cross within the shared surface range."""


@dataclass(frozen=True)
class CrossoverReport:
    """Where the sponge efficiency curve overtakes the slice curve.

    ``s_star`` is the interpolated surface size of the meets-then-exceeds
    crossing; the brackets give the (n_low, n_high) segment of each series
    containing it.
    """

    s_star: float
    menger_bracket: tuple[int, int]
    slices_bracket: tuple[int, int]
    method: str = "log-linear"


def _interp_log_linear(ts: list[float], es: list[float], t: float) -> float:
    # piecewise linear in (ln S, E); t is ln S, within [ts[0], ts[-1]]
    i = bisect_right(ts, t) - 1
    if i >= len(ts) - 1:
        return es[-1]
    w = (t - ts[i]) / (ts[i + 1] - ts[i])
    return es[i] + w * (es[i + 1] - es[i])


def find_crossover(menger: EfficiencySeries, slices: EfficiencySeries) -> CrossoverReport:
    """Locate the smallest surface size at which the sponge curve meets and
    then exceeds the slice curve.

    Both series are treated as piecewise log-linear: E interpolated linearly
    against ln S between samples.  The difference of the two interpolants is
    piecewise linear in ln S, so bracketing on the union of segment
    boundaries and solving the two-line intersection is exact for the model.
    A touch without a preceding strict undercut (e.g. the shared n = 0 cube
    point) is not a crossing.

    Raises NoCrossoverError when one curve dominates the whole shared range
    or the curves are identical.
    """
    for series in (menger, slices):
        if len(series.points) < 2:
            raise ValueError("each series needs at least 2 points")
    tm = [math.log(float(s)) for s, _ in menger.points]
    em = [float(e) for _, e in menger.points]
    ts = [math.log(float(s)) for s, _ in slices.points]
    es = [float(e) for _, e in slices.points]
    lo, hi = max(tm[0], ts[0]), min(tm[-1], ts[-1])
    if lo >= hi:
        raise ValueError("series surface ranges do not overlap")

    grid = sorted({t for t in tm + ts if lo <= t <= hi} | {lo, hi})
    diffs = [
        _interp_log_linear(tm, em, t) - _interp_log_linear(ts, es, t) for t in grid
    ]

    undercut = False
    for i, d in enumerate(diffs):
        if d < 0:
            undercut = True
            continue
        if d > 0 and undercut:
            d0 = diffs[i - 1]
            if d0 < 0:
                t_star = grid[i - 1] + (grid[i] - grid[i - 1]) * (-d0) / (d - d0)
            else:  # exact touch at the previous breakpoint
                t_star = grid[i - 1]
            s_star = math.exp(t_star)
            return CrossoverReport(
                s_star=s_star,
                menger_bracket=_bracket(tm, t_star),
                slices_bracket=_bracket(ts, t_star),
            )
    raise NoCrossoverError(
        "curves do not cross: one dominates the shared surface range"
        if any(diffs)
        else "curves do not cross: series are identical"
    )


def _bracket(ts: list[float], t: float) -> tuple[int, int]:
    i = min(max(bisect_right(ts, t) - 1, 0), len(ts) - 2)
    return (i, i + 1)


# ---------------------------------------------------------------------------
# emitters

ROWS_CSV_HEADER = ",".join(TABLE_COLUMNS)
SERIES_CSV_HEADER = ",".join(SERIES_COLUMNS)


def emit_csv(data, sink: BinaryIO) -> int:
    """Write rows or series as RFC-4180 CSV (UTF-8, LF, header line,
    decimals at 10 significant digits).  Returns the byte count."""
    if isinstance(data, EfficiencySeries):
        data = [data]
    items = list(data)
    if not items:
        raise ValueError("nothing to emit")
    lines = []
    if isinstance(items[0], EfficiencyRow):
        lines.append(ROWS_CSV_HEADER)
        for row in items:
            cells = [str(row.n), str(row.rho)]
            cells += [decimal_string(getattr(row, col)) for col in TABLE_COLUMNS[2:]]
            lines.append(",".join(cells))
    else:
        lines.append(SERIES_CSV_HEADER)
        for series in items:
            for n, (s, e) in enumerate(series.points):
                lines.append(
                    f"{series.model.value},{n},{decimal_string(s)},{decimal_string(e)}"
                )
    payload = ("\n".join(lines) + "\n").encode("utf-8")
    sink.write(payload)
    return len(payload)


_MISSING = object()


def _json_value(value: Fraction) -> dict[str, str]:
    num, den = value.numerator, value.denominator
    ratio = str(num) if den == 1 else f"{num}/{den}"
    return {"decimal": decimal_string(value), "ratio": ratio}


def emit_json(sink: BinaryIO, rows: Sequence[EfficiencyRow] | None = None,
              crossover=_MISSING) -> int:
    """Write a single JSON document with table rows and/or a crossover
    report.  Rationals carry both a 10-significant-digit decimal and the
    exact p/q string; key order is stable.  Returns the byte count."""
    doc: dict = {}
    if rows is not None:
        encoded = []
        for row in rows:
            item: dict = {"n": row.n, "rho": row.rho}
            for col in TABLE_COLUMNS[2:]:
                item[col] = _json_value(getattr(row, col))
            encoded.append(item)
        doc["rows"] = encoded
    if crossover is not _MISSING:
        if crossover is None:
            doc["crossover"] = None
        else:
            doc["crossover"] = {
                "s_star": f"{crossover.s_star:.10g}",
                "bracket": {
                    "menger": list(crossover.menger_bracket),
                    "slices": list(crossover.slices_bracket),
                },
                "method": crossover.method,
            }
    payload = (json.dumps(doc, indent=2) + "\n").encode("utf-8")
    sink.write(payload)
    return len(payload)
