"""Acceptance suite: one test per exit criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s``.  The n = 6 oracle run
(729^3 cells) is optional; enable it with SPONGEHEAT_ACCEPT_N6=1.
"""

import io
import math
import os
import time
from bisect import bisect_right
from collections import Counter
from fractions import Fraction
from pathlib import Path

import pytest

import golden
from spongeheat import analysis, mesh, metrics, voxel
from spongeheat.metrics import ModelKind

MENGER = ModelKind.MENGER_SPONGE
SLICES = ModelKind.SLICES

README = Path(__file__).resolve().parent.parent / "README.md"


def test_criterion_1_table_golden_reproduction():
    """Every printed cell of the reference table reproduced exactly, modulo
    the six documented errata (exact rational shown for each)."""
    started = time.perf_counter()
    mismatches = {}
    for n in range(7):
        strings = analysis.format_paper_precision(analysis.table_row(n))
        for col in golden.COLUMNS:
            published = golden.PUBLISHED_TABLE[n][golden.COLUMNS.index(col)]
            if strings[col] != published:
                mismatches[(n, col)] = (published, strings[col])
    elapsed = time.perf_counter() - started

    undocumented = set(mismatches) - set(golden.ERRATA)
    assert not undocumented, f"undocumented mismatches: {undocumented}"
    assert set(mismatches) == set(golden.ERRATA)
    for key, (published, computed) in sorted(mismatches.items()):
        expected_published, corrected, rational = golden.ERRATA[key]
        assert published == expected_published
        assert computed == corrected, (key, rational)
    assert elapsed < 1.0, f"table reproduction took {elapsed:.3f}s"

    print(f"\nACCEPTANCE 1 table-golden: PASS "
          f"(85/91 cells verbatim, 6 documented errata, {elapsed * 1000:.1f} ms)")
    for (n, col), (published, computed) in sorted(mismatches.items()):
        rational = golden.ERRATA[(n, col)][2]
        print(f"  erratum n={n} {col}: published {published!r}, "
              f"exact {rational} -> {computed!r}")


def test_criterion_2_oracle_equivalence():
    """Voxel-measured volume and surface equal the closed forms exactly for
    both models, n = 0..5; n = 5 within 10 s and 50 MB."""
    n5_elapsed = {}
    for kind in (MENGER, SLICES):
        for n in range(6):
            started = time.perf_counter()
            grid = voxel.build_grid(kind, n)
            measured_v = voxel.measure_volume(grid)
            measured_s = voxel.measure_surface(grid)
            elapsed = time.perf_counter() - started
            assert measured_v == metrics.model_volume(kind, n), (kind, n)
            assert measured_s == metrics.model_surface(kind, n), (kind, n)
            if n == 5:
                n5_elapsed[kind] = elapsed
                assert elapsed < 10.0, f"n=5 {kind} took {elapsed:.2f}s"
                assert grid.packed.nbytes < 50_000_000
    print(f"\nACCEPTANCE 2 oracle-equivalence: PASS "
          f"(exact rational equality, both models, n=0..5; "
          f"n=5 in {max(n5_elapsed.values()):.2f}s)")


@pytest.mark.skipif(not os.environ.get("SPONGEHEAT_ACCEPT_N6"),
                    reason="729^3 oracle run is optional; set SPONGEHEAT_ACCEPT_N6=1")
def test_criterion_2_oracle_equivalence_n6_optional():
    for kind in (MENGER, SLICES):
        started = time.perf_counter()
        grid = voxel.build_grid(kind, 6)
        assert voxel.measure_volume(grid) == metrics.model_volume(kind, 6)
        assert voxel.measure_surface(grid) == metrics.model_surface(kind, 6)
        elapsed = time.perf_counter() - started
        assert elapsed < 120.0
        print(f"\nACCEPTANCE 2b oracle n=6 {kind.value}: PASS ({elapsed:.1f}s, "
              f"{grid.packed.nbytes / 1e6:.1f} MB packed)")


def test_criterion_3_algebraic_identities():
    """Exact equality for n = 0..12 of the quality-ratio identity, the slice
    volume asymptotics, and the two sponge-surface forms."""
    for n in range(metrics.CLOSED_FORM_CAP + 1):
        r = metrics.ratios(n)
        coolant_ratio = (
            (metrics.total_volume(n) - metrics.menger_volume(n))
            / (metrics.total_volume(n) - metrics.slice_volume(n))
        )
        assert r.R_n == coolant_ratio, n
        assert metrics.slice_volume(n) - Fraction(1, 2) == Fraction(1, 2 * 3**n), n
        assert metrics.menger_surface(n) == metrics.menger_surface_simplified(n), n
    print("\nACCEPTANCE 3 algebraic-identities: PASS (three identities, n=0..12, exact)")


def _interp(ts, es, t):
    i = min(max(bisect_right(ts, t) - 1, 0), len(ts) - 2)
    w = (t - ts[i]) / (ts[i + 1] - ts[i])
    return es[i] + w * (es[i + 1] - es[i])


def test_criterion_4_crossover_property():
    """find_crossover returns s_star in [12, 52] on the reference series, and
    the sponge strictly beats the interpolated slice curve at every sponge
    sample with S >= 51.27."""
    sponge = analysis.efficiency_series(MENGER, 6)
    slabs = analysis.efficiency_series(SLICES, 6)
    report = analysis.find_crossover(sponge, slabs)
    assert 12.0 <= report.s_star <= 52.0

    # independent check of the dominance claim at the tabulated points
    ts = [math.log(float(s)) for s, _ in slabs.points]
    es = [float(e) for _, e in slabs.points]
    margins = {}
    for n, (surface, eff) in enumerate(sponge.points):
        if float(surface) >= 51.27:
            slice_eff = _interp(ts, es, math.log(float(surface)))
            assert float(eff) > slice_eff, (n, float(eff), slice_eff)
            margins[n] = float(eff) / slice_eff
    assert set(margins) == {4, 5, 6}
    print(f"\nACCEPTANCE 4 crossover: PASS (s_star={report.s_star:.6f} in [12, 52]; "
          f"sponge/slice at S>=51.27: "
          + ", ".join(f"n={n}: {m:.4f}" for n, m in sorted(margins.items())))


def test_criterion_5_threshold_reproduction():
    """Smallest n with R_n > 1 is 2, R_1 < 1, R_n strictly increasing for
    n = 1..6; the README documents the published prose discrepancy."""
    rn = [metrics.ratios(n).R_n for n in range(7)]
    assert rn[1] < 1
    assert min(n for n in range(7) if rn[n] > 1) == 2
    assert analysis.format_paper_precision(analysis.table_row(2))["R_n"] == "1.0054"
    assert all(a < b for a, b in zip(rn[1:], rn[2:]))

    text = " ".join(README.read_text(encoding="utf-8").split())
    assert "first exceeds 1 at n = 2" in text
    assert "n > 3" in text
    print("\nACCEPTANCE 5 threshold: PASS (R_1 < 1 < R_2 = 1.0054, strictly "
          "increasing to n=6; README documents the published n > 3 prose)")


def test_criterion_6_mesh_conformance():
    """STL of the n=1 sponge is exactly 7284 bytes / 144 triangles; triangle
    count is twice the exposed faces for both models n <= 4; every n <= 2
    sponge mesh edge is shared by exactly two triangles."""
    sink = io.BytesIO()
    buffer = mesh.mesh_from_grid(voxel.build_grid(MENGER, 1))
    assert buffer.triangle_count == 144
    assert mesh.write_stl_binary(buffer, sink) == 7284
    assert len(sink.getvalue()) == 7284

    for kind in (MENGER, SLICES):
        for n in range(5):
            grid = voxel.build_grid(kind, n)
            assert (mesh.mesh_from_grid(grid).triangle_count
                    == 2 * voxel.count_exposed_faces(grid)), (kind, n)

    for n in range(3):
        buffer = mesh.mesh_from_grid(voxel.build_grid(MENGER, n))
        index = {}
        counts = Counter()
        for tri in buffer.triangles:
            ids = [index.setdefault(v.tobytes(), len(index)) for v in tri]
            for a, b in ((0, 1), (1, 2), (2, 0)):
                counts[tuple(sorted((ids[a], ids[b])))] += 1
        assert set(counts.values()) == {2}, n
    print("\nACCEPTANCE 6 mesh-conformance: PASS (7284-byte n=1 STL, 144 triangles; "
          "2 triangles per exposed face for n<=4; n<=2 sponge meshes watertight)")
