"""Piecewise wavefunction assembly, normalization, sampling, CSV output."""

import io
import math
import random

import numpy as np
import pytest

from doublewell import (
    BadRange,
    DomainError,
    EnergyOutOfBand,
    GridTooCoarse,
    MatchingResidualTooLarge,
    Parity,
    assemble,
    assemble_at_energy,
    closed_form_probabilities,
    derivative,
    evaluate,
    evaluate_single,
    probabilities,
    reduce,
    sample,
    single_well_model,
    solve_double_well,
    solve_wells,
    superpose,
    write_sample_csv,
)
from doublewell.wavefunc import _boundary_pairs
from genspecs import EXAMPLE_SPEC, mixed_spec_batch, random_symmetric_spec

trapezoid = getattr(np, "trapezoid", None) or np.trapz


def _models(spec):
    red = reduce(spec)
    res = solve_double_well(spec)
    return res, assemble(spec, red, res.ground), assemble(spec, red, res.excited)


def _potential(spec, x):
    if x < spec.x_m3:
        return spec.v_m4
    if x < spec.x_m1:
        return spec.v_m2
    if x < spec.x_1:
        return spec.v_0
    if x < spec.x_3:
        return spec.v_2
    return spec.v_4


class TestContinuity:
    @pytest.mark.parametrize("index", range(20))
    def test_value_and_slope_match_at_every_boundary(self, index):
        spec = mixed_spec_batch(seed=51, count=20)[index]
        _, ground, excited = _models(spec)
        for model in (ground, excited):
            value_scale = max(model.amp_m2, model.amp_2)
            slope_scale = max(model.amp_m2 * model.k_m2, model.amp_2 * model.k_2)
            for x, (v_l, s_l), (v_r, s_r) in _boundary_pairs(model):
                assert abs(v_l - v_r) <= 1e-10 * value_scale, x
                assert abs(s_l - s_r) <= 1e-10 * slope_scale, x


class TestShape:
    def test_node_counts(self, example_spec):
        _, ground, excited = _models(example_spec)
        xs = np.linspace(example_spec.x_m3, example_spec.x_3, 20001)
        for model, expected_nodes in ((ground, 0), (excited, 1)):
            vals = evaluate(model, xs)
            signs = np.sign(vals)
            signs = signs[signs != 0]
            assert int(np.sum(signs[1:] != signs[:-1])) == expected_nodes

    def test_extrema_and_barrier_node(self, example_spec):
        _, ground, excited = _models(example_spec)
        for model in (ground, excited):
            assert derivative(model, model.extremum_left) == pytest.approx(
                0.0, abs=1e-12 * model.amp_m2 * model.k_m2
            )
            assert derivative(model, model.extremum_right) == pytest.approx(
                0.0, abs=1e-12 * model.amp_2 * model.k_2
            )
        assert evaluate(excited, excited.barrier_node) == 0.0
        # the ground state instead peaks nowhere in the barrier: its hyperbolic
        # profile has zero slope at the same center point
        assert derivative(ground, ground.barrier_node) == pytest.approx(
            0.0, abs=1e-12 * ground.amp_0 * ground.kappa_0
        )

    def test_far_tails_decay_without_overflow(self):
        for spec in mixed_spec_batch(seed=52, count=6):
            _, ground, excited = _models(spec)
            for model in (ground, excited):
                far_left = spec.x_m3 - 50.0 / model.kappa_m4
                far_right = spec.x_3 + 50.0 / model.kappa_4
                for x in (far_left, far_right):
                    val = evaluate(model, x)
                    assert math.isfinite(val)
                    assert abs(val) < 1e-18 * max(model.amp_m2, model.amp_2)

    def test_derivative_consistent_with_finite_differences(self, example_spec):
        _, ground, _ = _models(example_spec)
        rng = random.Random(53)
        h = 1e-7
        for _ in range(40):
            x = rng.uniform(example_spec.x_m3 + 0.01, example_spec.x_3 - 0.01)
            fd = (evaluate(ground, x + h) - evaluate(ground, x - h)) / (2.0 * h)
            assert derivative(ground, x) == pytest.approx(
                fd, abs=1e-6 * ground.amp_m2 * ground.k_m2
            )

    def test_satisfies_schrodinger_equation_pointwise(self):
        for spec in mixed_spec_batch(seed=54, count=4):
            res, ground, excited = _models(spec)
            pref = spec.hbar**2 / (2.0 * spec.mass)
            for model in (ground, excited):
                h = 1e-4 * 2.0 * math.pi / max(model.k_m2, model.k_2)
                scale = max(model.amp_m2, model.amp_2) * max(model.k_m2, model.k_2) ** 2
                rng = random.Random(55)
                boundaries = (spec.x_m3, spec.x_m1, spec.x_1, spec.x_3)
                checked = 0
                while checked < 30:
                    x = rng.uniform(spec.x_m3 - 0.3 * spec.w_m2, spec.x_3 + 0.3 * spec.w_2)
                    if any(abs(x - b) < 2.0 * h for b in boundaries):
                        continue
                    psi = evaluate(model, x)
                    lap = (
                        evaluate(model, x + h) - 2.0 * psi + evaluate(model, x - h)
                    ) / h**2
                    residual = -pref * lap + (_potential(spec, x) - model.energy) * psi
                    assert abs(residual) < 1e-4 * pref * scale, (x, residual)
                    checked += 1


class TestNormalization:
    def test_split_masses_sum_to_one(self):
        for spec in mixed_spec_batch(seed=56, count=12):
            _, ground, excited = _models(spec)
            for model in (ground, excited):
                p_left, p_right = probabilities(model)
                assert p_left + p_right == pytest.approx(1.0, rel=1e-12)
                assert p_left > 0.0 and p_right > 0.0

    def test_quadrature_confirms_unit_norm(self, example_spec):
        _, ground, excited = _models(example_spec)
        for model in (ground, excited):
            xs = np.linspace(
                example_spec.x_m3 - 40.0 / model.kappa_m4,
                example_spec.x_3 + 40.0 / model.kappa_4,
                40001,
            )
            norm = trapezoid(evaluate(model, xs) ** 2, xs)
            assert norm == pytest.approx(1.0, abs=1e-5)

    def test_split_masses_match_solution_probabilities(self):
        for spec in mixed_spec_batch(seed=57, count=6):
            red = reduce(spec)
            res = solve_double_well(spec)
            for level in (res.ground, res.excited):
                model = assemble(spec, red, level)
                p_left, p_right = probabilities(model)
                assert p_left == pytest.approx(level.prob_left, rel=1e-6, abs=1e-9)
                assert p_right == pytest.approx(level.prob_right, rel=1e-6, abs=1e-9)

    def test_decoupled_closed_form_agrees_when_nearly_symmetric(self, example_spec):
        red = reduce(example_spec)
        res = solve_double_well(example_spec)
        left, right = solve_wells(red)
        for level in (res.ground, res.excited):
            model = assemble(example_spec, red, level)
            exact = probabilities(model)
            approx = closed_form_probabilities(model, example_spec, left, right)
            assert approx[0] == pytest.approx(exact[0], rel=1e-3)
            assert approx[1] == pytest.approx(exact[1], rel=1e-3)


class TestAssembleAtEnergy:
    def test_reproduces_pipeline_state_at_its_energy(self, example_spec):
        red = reduce(example_spec)
        res = solve_double_well(example_spec)
        for parity, level in ((Parity.GROUND, res.ground), (Parity.EXCITED, res.excited)):
            direct = assemble(example_spec, red, level)
            refit = assemble_at_energy(example_spec, red, parity, level.energy)
            assert refit.amp_m2 == pytest.approx(direct.amp_m2, rel=1e-6)
            assert refit.amp_2 == pytest.approx(direct.amp_2, rel=1e-6)
            assert refit.barrier_node == pytest.approx(direct.barrier_node, abs=1e-6)

    def test_rejects_energy_outside_band(self, example_spec):
        red = reduce(example_spec)
        floor = min(example_spec.v_m2, example_spec.v_2)
        top = example_spec.v_0
        for energy in (floor - 0.1, top + 0.1):
            with pytest.raises(EnergyOutOfBand):
                assemble_at_energy(example_spec, red, Parity.GROUND, energy)

    def test_rejects_non_eigenvalues(self, example_spec):
        red = reduce(example_spec)
        res = solve_double_well(example_spec)
        for factor in (0.9, 0.99, 1.01, 1.2):
            with pytest.raises((DomainError, MatchingResidualTooLarge)):
                assemble_at_energy(
                    example_spec, red, Parity.GROUND, res.ground.energy * factor
                )


class TestSingleWell:
    @pytest.mark.parametrize("side", ["left", "right"])
    def test_boundary_continuity_is_exact(self, side):
        rng = random.Random(58)
        for _ in range(5):
            spec = random_symmetric_spec(rng)
            state = single_well_model(spec, reduce(spec), side)
            # interior cosine against the outer decaying tail
            inner = state.amp * math.cos(state.k * (state.x_outer - state.extremum))
            assert inner == pytest.approx(state.amp_outer, rel=1e-12)
            slope_trig = -state.amp * state.k * math.sin(
                state.k * (state.x_outer - state.extremum)
            )
            tail_sign = 1.0 if side == "left" else -1.0
            assert slope_trig == pytest.approx(
                tail_sign * state.kappa_outer * state.amp_outer, rel=1e-10
            )
            # interior cosine against the barrier-side tail
            inner = state.amp * math.cos(state.k * (state.x_inner - state.extremum))
            assert inner == pytest.approx(state.amp_barrier, rel=1e-12)
            slope_trig = -state.amp * state.k * math.sin(
                state.k * (state.x_inner - state.extremum)
            )
            assert slope_trig == pytest.approx(
                -tail_sign * state.kappa_barrier * state.amp_barrier, rel=1e-10
            )

    def test_unit_norm_by_quadrature(self, example_spec):
        red = reduce(example_spec)
        for side in ("left", "right"):
            state = single_well_model(example_spec, red, side)
            xs = np.linspace(
                example_spec.x_m3 - 30.0 / state.kappa_outer,
                example_spec.x_3 + 30.0 / state.kappa_outer,
                40001,
            )
            norm = trapezoid(evaluate_single(state, xs) ** 2, xs)
            assert norm == pytest.approx(1.0, abs=1e-4)

    def test_bad_side_rejected(self, example_spec):
        with pytest.raises(DomainError):
            single_well_model(example_spec, reduce(example_spec), "middle")


class TestSuperpose:
    def test_weighted_sum_has_unit_norm(self, example_spec):
        red = reduce(example_spec)
        res = solve_double_well(example_spec)
        left = single_well_model(example_spec, red, "left")
        right = single_well_model(example_spec, red, "right")
        for parity, level in ((Parity.GROUND, res.ground), (Parity.EXCITED, res.excited)):
            fn = superpose(left, right, res.ground.prob_left, res.ground.prob_right, parity)
            xs = np.linspace(
                example_spec.x_m3 - 25.0 / left.kappa_outer,
                example_spec.x_3 + 25.0 / right.kappa_outer,
                30001,
            )
            vals = fn(xs)
            assert trapezoid(vals**2, xs) == pytest.approx(1.0, abs=0.01)
            # and it approximates the assembled eigenstate
            model = assemble(example_spec, red, level)
            direct = evaluate(model, xs)
            overlap = abs(trapezoid(vals * direct, xs))
            assert overlap == pytest.approx(1.0, abs=0.01)

    def test_coarse_grid_rejected(self, example_spec):
        red = reduce(example_spec)
        left = single_well_model(example_spec, red, "left")
        right = single_well_model(example_spec, red, "right")
        fn = superpose(left, right, 0.5, 0.5, Parity.GROUND)
        with pytest.raises(GridTooCoarse):
            fn(np.linspace(example_spec.x_m3, example_spec.x_3, 8))
        with pytest.raises(GridTooCoarse):
            fn(np.array([[0.0, 1.0], [2.0, 3.0]]))
        with pytest.raises(GridTooCoarse):
            fn(np.array([1.0]))


class TestSampleTable:
    def test_table_layout_and_endpoints(self, example_spec):
        _, ground, _ = _models(example_spec)
        table = sample(ground, -1.0, 9.0, 101)
        assert table.shape == (101, 3)
        assert table[0, 0] == -1.0
        assert table[-1, 0] == 9.0
        assert np.all(np.diff(table[:, 0]) > 0)
        xs = table[:, 0]
        assert table[:, 1] == pytest.approx(evaluate(ground, xs))
        assert table[:, 2] == pytest.approx(derivative(ground, xs))

    def test_two_point_table(self, example_spec):
        _, ground, _ = _models(example_spec)
        table = sample(ground, 0.0, 1.0, 2)
        assert table.shape == (2, 3)

    @pytest.mark.parametrize("bad_range", [
        (1.0, 1.0, 10),
        (2.0, -1.0, 10),
        (math.nan, 1.0, 10),
        (0.0, math.inf, 10),
        (0.0, 1.0, 1),
        (0.0, 1.0, 2.5),
    ])
    def test_bad_ranges_rejected(self, example_spec, bad_range):
        _, ground, _ = _models(example_spec)
        with pytest.raises(BadRange):
            sample(ground, *bad_range)

    def test_csv_roundtrip_and_line_endings(self, example_spec, tmp_path):
        _, ground, _ = _models(example_spec)
        table = sample(ground, -0.5, 8.5, 37)
        out = tmp_path / "state.csv"
        write_sample_csv(table, str(out))
        raw = out.read_bytes()
        assert b"\r" not in raw
        lines = raw.decode("ascii").split("\n")
        assert lines[0] == "x,psi,dpsi"
        assert lines[-1] == ""  # trailing newline
        rows = lines[1:-1]
        assert len(rows) == 37
        for row, (x, psi, dpsi) in zip(rows, table):
            fx, fp, fd = (float(part) for part in row.split(","))
            assert fx == x and fp == psi and fd == dpsi

    def test_csv_accepts_open_stream(self, example_spec):
        _, ground, _ = _models(example_spec)
        table = sample(ground, 0.0, 1.0, 3)
        buf = io.StringIO()
        write_sample_csv(table, buf)
        assert buf.getvalue().startswith("x,psi,dpsi\n")
        assert buf.getvalue().count("\n") == 4
