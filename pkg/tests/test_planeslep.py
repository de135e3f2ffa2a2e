"""Arbitrary-region concentration on the plane plus grid export round trips."""

import numpy as np
import pytest

from slepkit import (
    ConfigurationError, GridField, GridSpec, Region, area, evaluate_g,
    evaluate_h, periodogram, read_grid, read_grid_text, shannon_2d,
    solve_region_disk, weighted_sumsq, write_grid, write_grid_text,
)


class TestGridSpec:
    def test_axes_and_points(self):
        g = GridSpec(x0=-1.0, y0=2.0, dx=0.5, dy=0.25, nx=3, ny=2)
        np.testing.assert_allclose(g.x_axis(), [-1.0, -0.5, 0.0])
        np.testing.assert_allclose(g.y_axis(), [2.0, 2.25])
        pts = g.points()
        assert pts.shape == (6, 2)
        # x varies fastest, matching row-major (ny, nx) value layout
        np.testing.assert_allclose(pts[:3, 0], [-1.0, -0.5, 0.0])
        np.testing.assert_allclose(pts[:3, 1], 2.0)

    def test_validation(self):
        with pytest.raises(ValueError):
            GridSpec(x0=0, y0=0, dx=-0.1, dy=0.1, nx=4, ny=4)
        with pytest.raises(ValueError):
            GridSpec(x0=0, y0=0, dx=0.1, dy=0.1, nx=0, ny=4)
        with pytest.raises(ValueError):
            GridField(GridSpec(x0=0, y0=0, dx=1, dy=1, nx=3, ny=3),
                      np.zeros((2, 3)))


class TestShannon2d:
    def test_values(self):
        assert shannon_2d(2.0, np.pi) == pytest.approx(1.0)
        # doubling the bandlimit quadruples the count
        assert shannon_2d(4.0, np.pi) == pytest.approx(4.0)
        with pytest.raises(ValueError):
            shannon_2d(0.0, 1.0)
        with pytest.raises(ValueError):
            shannon_2d(1.0, -2.0)

    def test_plateau_boundary(self, plateau_region):
        got = shannon_2d(0.0194, area(plateau_region))
        assert got == pytest.approx(10.0, abs=0.05)


class TestRegionSolve:
    def test_trace_matches_shannon(self, plateau_region):
        basis = solve_region_disk(plateau_region, 0.0194, n_quad=24, count=8)
        assert basis.trace == pytest.approx(basis.shannon, rel=1e-3)
        assert basis.normalization == "whole-plane-unit"

    def test_eigenvalues_bounded_and_sorted(self, disk42_nystrom):
        lam = disk42_nystrom.eigenvalues
        assert lam[0] < 1.0
        assert np.all(lam > -1e-12)
        assert np.all(np.diff(lam) <= 1e-14)

    def test_region_gram_is_diag_lambda(self, disk42_nystrom):
        b = disk42_nystrom
        s = b.node_samples[:30]
        gram = s @ (b.quadrature.weights[:, None] * s.T)
        np.testing.assert_allclose(gram, np.diag(b.eigenvalues[:30]),
                                   atol=1e-10)

    def test_matches_fixed_order_route(self, disk42_nystrom, disk42_analytic):
        # two completely independent constructions of the same spectrum
        np.testing.assert_allclose(disk42_nystrom.eigenvalues[:10],
                                   disk42_analytic.eigenvalues[:10],
                                   atol=1e-6)

    def test_validation(self, unit_disk):
        with pytest.raises(ValueError):
            solve_region_disk(unit_disk, -2.0)


@pytest.fixture(scope="module")
def small_basis(unit_disk):
    return solve_region_disk(unit_disk, 2 * np.sqrt(10.0), n_quad=24, count=12)


@pytest.fixture(scope="module")
def basis10(unit_disk):
    return solve_region_disk(unit_disk, 2 * np.sqrt(10.0), n_quad=24, count=24)


class TestEvaluation:
    def test_g_reproduces_node_samples(self, small_basis):
        b = small_basis
        nodes = b.quadrature.nodes
        grid = GridSpec(x0=0, y0=0, dx=1, dy=1, nx=len(nodes), ny=1)
        # evaluate through the extension machinery directly at the nodes
        from slepkit import nystrom_extend
        for i in (0, 3):
            vals = np.sqrt(b.eigenvalues[i]) * nystrom_extend(b.solution, i,
                                                              nodes)
            np.testing.assert_allclose(vals, b.node_samples[i], atol=1e-9)

    def test_g_whole_plane_energy(self, small_basis):
        grid = GridSpec(x0=-4.0, y0=-4.0, dx=0.05, dy=0.05, nx=161, ny=161)
        g0 = evaluate_g(small_basis, 0, grid)
        energy = np.sum(g0.values ** 2) * grid.dx * grid.dy
        assert energy == pytest.approx(1.0, abs=0.02)

    def test_g_peaks_inside_region(self, small_basis):
        grid = GridSpec(x0=-2.0, y0=-2.0, dx=0.05, dy=0.05, nx=81, ny=81)
        g0 = evaluate_g(small_basis, 0, grid)
        iy, ix = np.unravel_index(np.argmax(np.abs(g0.values)),
                                  g0.values.shape)
        x, y = grid.x_axis()[ix], grid.y_axis()[iy]
        assert np.hypot(x, y) < 1.0

    def test_h_zero_outside_and_energy_lambda(self, small_basis, unit_disk):
        grid = GridSpec(x0=-2.0, y0=-2.0, dx=0.02, dy=0.02, nx=201, ny=201)
        h0 = evaluate_h(small_basis, 0, grid)
        pts = grid.points()
        outside = np.hypot(pts[:, 0], pts[:, 1]).reshape(201, 201) > 1.0
        assert np.all(h0.values[outside] == 0.0)
        energy = np.sum(h0.values ** 2) * grid.dx * grid.dy
        assert energy == pytest.approx(small_basis.eigenvalues[0], abs=0.02)


class TestPeriodogram:
    def test_parseval_exact(self):
        rng = np.random.default_rng(11)
        grid = GridSpec(x0=-1.0, y0=-2.0, dx=0.1, dy=0.2, nx=32, ny=16)
        field = GridField(grid, rng.standard_normal((16, 32)))
        p = periodogram(field)
        lhs = np.sum(p.values) * p.grid.dx * p.grid.dy / (2 * np.pi) ** 2
        rhs = np.sum(field.values ** 2) * grid.dx * grid.dy
        assert lhs == pytest.approx(rhs, rel=1e-12)

    def test_constant_field_concentrates_at_origin(self):
        grid = GridSpec(x0=0.0, y0=0.0, dx=0.1, dy=0.1, nx=16, ny=16)
        p = periodogram(GridField(grid, np.ones((16, 16))))
        ik = np.unravel_index(np.argmax(p.values), p.values.shape)
        assert p.grid.x_axis()[ik[1]] == pytest.approx(0.0, abs=1e-12)
        assert p.grid.y_axis()[ik[0]] == pytest.approx(0.0, abs=1e-12)
        mask = p.values > 1e-9 * p.values.max()
        assert np.sum(mask) == 1

    def test_plane_wave_twin_peaks(self):
        grid = GridSpec(x0=0.0, y0=0.0, dx=0.25, dy=0.25, nx=64, ny=64)
        k0 = 3 * 2 * np.pi / (64 * 0.25)  # commensurate wavenumber
        x = grid.points()[:, 0].reshape(64, 64)
        p = periodogram(GridField(grid, np.cos(k0 * x)))
        mask = p.values > 1e-9 * p.values.max()
        assert np.sum(mask) == 2
        kxs = np.sort(np.broadcast_to(p.grid.x_axis(), (64, 64))[mask])
        np.testing.assert_allclose(kxs, [-k0, k0], atol=1e-12)

    def test_wavenumber_spacing(self):
        grid = GridSpec(x0=0.0, y0=0.0, dx=0.5, dy=0.25, nx=20, ny=40)
        p = periodogram(GridField(grid, np.zeros((40, 20))))
        assert p.grid.dx == pytest.approx(2 * np.pi / (20 * 0.5))
        assert p.grid.dy == pytest.approx(2 * np.pi / (40 * 0.25))
        assert 0.0 in np.round(p.grid.x_axis(), 12)

    def test_band_fraction_equals_lambda(self, unit_disk):
        # the space-limited twin h leaks exactly 1 - lambda of its spectral
        # energy outside the bandlimit circle
        k = 2 * np.sqrt(10.0)
        basis = solve_region_disk(unit_disk, k, n_quad=24, count=4)
        grid = GridSpec(x0=-6.0, y0=-6.0, dx=0.04, dy=0.04, nx=300, ny=300)
        h0 = evaluate_h(basis, 0, grid)
        p = periodogram(h0)
        kpts = p.grid.points()
        inband = (np.hypot(kpts[:, 0], kpts[:, 1]) <= k).reshape(300, 300)
        frac = np.sum(p.values[inband]) / np.sum(p.values)
        lam0 = basis.eigenvalues[0]
        assert frac == pytest.approx(lam0, abs=0.02 * lam0)

    def test_rejects_complex(self):
        grid = GridSpec(x0=0, y0=0, dx=1, dy=1, nx=4, ny=4)
        with pytest.raises(ValueError):
            periodogram(GridField(grid, np.zeros((4, 4), dtype=complex)))


class TestWeightedSumsq:
    def test_interior_plateau(self, basis10):
        # with ~2 N2D terms the weighted sum of squares approaches
        # shannon / area deep inside the region
        grid = GridSpec(x0=0.0, y0=0.0, dx=1.0, dy=1.0, nx=1, ny=1)
        val = weighted_sumsq(basis10, grid, 20).values[0, 0]
        plateau = basis10.shannon / area(basis10.region)
        assert val == pytest.approx(plateau, rel=0.1)

    def test_far_field_collapses(self, basis10):
        grid = GridSpec(x0=4.0, y0=4.0, dx=0.5, dy=0.5, nx=2, ny=2)
        vals = weighted_sumsq(basis10, grid, 20).values
        plateau = basis10.shannon / area(basis10.region)
        assert np.max(vals) < 0.05 * plateau

    def test_monotone_in_count(self, basis10):
        grid = GridSpec(x0=0.1, y0=-0.2, dx=1.0, dy=1.0, nx=1, ny=1)
        vals = [weighted_sumsq(basis10, grid, c).values[0, 0]
                for c in (1, 5, 10, 20)]
        assert np.all(np.diff(vals) > 0)

    def test_count_validation(self, basis10):
        grid = GridSpec(x0=0, y0=0, dx=1, dy=1, nx=1, ny=1)
        with pytest.raises(ValueError):
            weighted_sumsq(basis10, grid, 0)
        with pytest.raises(ValueError):
            weighted_sumsq(basis10, grid, 999)


class TestGridIO:
    @pytest.fixture()
    def field(self):
        rng = np.random.default_rng(3)
        grid = GridSpec(x0=-1.5, y0=0.25, dx=0.125, dy=0.5, nx=7, ny=5)
        return GridField(grid, rng.standard_normal((5, 7)))

    def test_binary_round_trip(self, field, tmp_path):
        path = tmp_path / "f.bin"
        write_grid(field, path, name="unit-test")
        back, name = read_grid(path)
        assert name == "unit-test"
        assert np.array_equal(back.values, field.values)
        assert back.grid == field.grid

    def test_sidecar_render_metadata(self, field, tmp_path):
        path = tmp_path / "f.bin"
        write_grid(field, path)
        text = (tmp_path / "f.bin.hdr").read_text()
        assert "render_floor = " in text
        assert "n_below_floor = " in text
        floor = float(next(l.split("=")[1] for l in text.splitlines()
                           if l.startswith("render_floor")))
        assert floor == pytest.approx(np.max(np.abs(field.values)) / 100.0)

    def test_size_mismatch_detected(self, field, tmp_path):
        path = tmp_path / "f.bin"
        write_grid(field, path)
        data = path.read_bytes()
        path.write_bytes(data[:-8])
        with pytest.raises(ConfigurationError):
            read_grid(path)

    def test_text_round_trip(self, field, tmp_path):
        path = tmp_path / "f.txt"
        write_grid_text(field, path)
        back = read_grid_text(path)
        assert np.array_equal(back.values, field.values)
        np.testing.assert_allclose(
            [back.grid.x0, back.grid.y0, back.grid.dx, back.grid.dy],
            [field.grid.x0, field.grid.y0, field.grid.dx, field.grid.dy],
            rtol=0, atol=0)

    def test_text_header_line(self, field, tmp_path):
        path = tmp_path / "f.txt"
        write_grid_text(field, path)
        assert path.read_text().splitlines()[0] == "# x y value"

    def test_complex_rejected(self, tmp_path):
        grid = GridSpec(x0=0, y0=0, dx=1, dy=1, nx=2, ny=2)
        f = GridField(grid, np.zeros((2, 2), dtype=complex))
        with pytest.raises(ConfigurationError):
            write_grid(f, tmp_path / "c.bin")
        with pytest.raises(ConfigurationError):
            write_grid_text(f, tmp_path / "c.txt")

    def test_malformed_text_rejected(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("# x y value\n1.0 2.0\n")
        with pytest.raises(ConfigurationError):
            read_grid_text(path)
