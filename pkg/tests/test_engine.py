import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from exact import exact_grid_count
from owblock.engine import (
    BlockageSample,
    SweepSpec,
    blocked_mask,
    default_sweeps,
    is_blocked,
    multi_link_blocked,
    multi_link_mask,
    percentage_blockage,
    resolve_workers,
    sweep,
)
from owblock.geometry import Point3
from owblock.oracle import sampled_blocked
from owblock.room import DiscObstacle, disc_for_receiver, grid_locations
from owblock.geometry import Segment

# exact rational enumeration over the 561-point grid (tests/exact.py)
AP1_R025_H1_D05_BLOCKED = 6


def test_is_blocked_example(aps, room):
    assert is_blocked(aps[3], Point3(1, 5, 1), DiscObstacle(0.6, 1, 0.5), room)


@pytest.mark.parametrize("R,d", [(0.5, 0.3), (0.5, 0.5), (1.0, 0.0), (0.0, 0.0)])
def test_h0_covered_receiver_blocked(aps, room, grid, R, d):
    ob = DiscObstacle(R, 0, d)
    for ap in aps:
        for p in list(grid)[::37]:
            assert is_blocked(ap, p, ob, room)


def test_disc_above_ap_never_blocks(aps, room, grid):
    ob = DiscObstacle(10, 2.5, 0.5)
    for ap in aps:
        assert not blocked_mask(ap, grid, ob, room).any()


def test_mask_matches_scalar(aps, room, grid):
    rng = np.random.default_rng(3)
    for _ in range(15):
        ob = DiscObstacle(rng.uniform(0, 2), rng.choice([0, 0.5, 1, rng.uniform(0, 2)]),
                          rng.choice([0, 0.5, rng.uniform(0, 4)]))
        ap = aps[rng.integers(8)]
        mask = blocked_mask(ap, grid, ob, room)
        assert mask.tolist() == [is_blocked(ap, p, ob, room) for p in grid]


class TestPercentage:
    def test_full(self, aps, room, grid):
        for ap in aps:
            s = percentage_blockage(ap, grid, DiscObstacle(0.5, 0, 0.3), room)
            assert s.percentage == 100.0 and s.blocked_count == s.total_count == 561

    def test_none(self, aps, room, grid):
        for ap in aps:
            assert percentage_blockage(ap, grid, DiscObstacle(0.3, 0, 0.5), room).percentage == 0.0

    def test_regression_value(self, aps, room, grid):
        assert exact_grid_count((1, 1, 3), 0.25, 1, 0.5) == (AP1_R025_H1_D05_BLOCKED, 561)
        s = percentage_blockage(aps[0], grid, DiscObstacle(0.25, 1, 0.5), room)
        assert s.blocked_count == AP1_R025_H1_D05_BLOCKED
        assert s.percentage == pytest.approx(100 * 6 / 561, rel=1e-15)

    def test_sampling_oracle_differs_only_on_rim(self, aps, room, grid):
        # the sampling oracle treats the rim as solid; three receivers have
        # beams grazing the rim exactly, all other decisions coincide
        ob = DiscObstacle(0.25, 1, 0.5)
        mask = blocked_mask(aps[0], grid, ob, room)
        sampled = np.array([sampled_blocked(Segment(aps[0].position, p),
                                            disc_for_receiver(p, ob, room)) for p in grid])
        assert np.all(mask <= sampled)
        assert int(sampled.sum() - mask.sum()) == 3

    def test_empty_grid(self, aps, room):
        with pytest.raises(ValueError):
            percentage_blockage(aps[0], np.empty((0, 3)), DiscObstacle(1, 1, 1), room)


def test_sample_validation():
    with pytest.raises(ValueError):
        BlockageSample(0.0, 1, 5, 4)
    with pytest.raises(ValueError):
        BlockageSample(0.0, 1, 0, 0)
    s = BlockageSample(0.5, (4, 6), 1, 4)
    assert (s.fraction, s.percentage, s.label) == (0.25, 25.0, "4+6")


class TestMultiLink:
    def test_singleton(self, aps, room, grid):
        ob = DiscObstacle(0.6, 1, 0.5)
        for p in list(grid)[::11]:
            assert multi_link_blocked([aps[3]], p, ob, room) == is_blocked(aps[3], p, ob, room)

    def test_all_aps_h0(self, aps, room):
        assert multi_link_blocked(aps, Point3(2, 4, 1), DiscObstacle(0.5, 0, 0.3), room)

    def test_h_above(self, aps, room, grid):
        ob = DiscObstacle(3, 2.5, 0.2)
        assert not any(multi_link_blocked(aps[:3], p, ob, room) for p in list(grid)[::7])

    def test_empty(self, room):
        with pytest.raises(ValueError):
            multi_link_blocked([], Point3(1, 1, 1), DiscObstacle(1, 1, 1), room)

    @settings(max_examples=40, deadline=None)
    @given(st.floats(0, 2), st.floats(0, 2), st.floats(0, 4),
           st.sets(st.integers(1, 8), min_size=1, max_size=4), st.integers(1, 8))
    def test_dominance(self, aps, room, grid, R, h, d, ids, extra):
        ob = DiscObstacle(R, h, d)
        members = [aps[i - 1] for i in sorted(ids)]
        mask = multi_link_mask(members, grid, ob, room)
        for ap in members:
            assert np.all(mask <= blocked_mask(ap, grid, ob, room))
        more = multi_link_mask(members + [aps[extra - 1]], grid, ob, room)
        assert more.sum() <= mask.sum()


class TestSweepSpec:
    def test_values_inclusive(self):
        spec = SweepSpec("R", 0, 2, 0.25, {"h": 1, "d": 0.5})
        assert spec.values() == [i * 0.25 for i in range(9)]

    def test_values_decimal(self):
        vals = SweepSpec("h", 0, 2, 0.05, {"R": 1, "d": 0.5}).values()
        assert len(vals) == 41 and vals[3] == 0.15 and vals[-1] == 2.0

    def test_stop_off_lattice(self):
        assert SweepSpec("d", 0, 1, 0.3, {"R": 1, "h": 1}).values() == [0, 0.3, 0.6, 0.9]

    @pytest.mark.parametrize("kwargs", [
        dict(varied="x"), dict(start=2, stop=1), dict(step=0), dict(fixed={"h": 1}),
        dict(fixed={"h": 1, "d": 1, "R": 1}), dict(ap_selection=()), dict(multi_link=((),))])
    def test_invalid(self, kwargs):
        base = dict(varied="R", start=0, stop=1, step=0.5, fixed={"h": 1, "d": 1})
        base.update(kwargs)
        with pytest.raises(ValueError):
            SweepSpec(**base)


class TestSweep:
    def test_radius_sweep_monotone(self, room, grid):
        curve = sweep(SweepSpec("R", 0, 2, 0.25, {"h": 1, "d": 0.5}, (1,)), room, grid)
        pct = curve.percentages(1)
        assert len(curve.samples) == 9
        assert pct[0] == 0.0
        assert np.all(np.diff(pct) >= 0)

    def test_h_sweep_endpoints(self, room, grid):
        curve = sweep(SweepSpec("h", 0, 2.5, 0.25, {"R": 0.3, "d": 0.5}), room, grid)
        for ap in range(1, 9):
            pct = curve.percentages(ap)
            assert pct[0] == 0.0 and pct[-1] == 0.0

    def test_h_sweep_starts_full(self, room, grid):
        curve = sweep(SweepSpec("h", 0, 2.5, 0.25, {"R": 0.8, "d": 0.5}), room, grid)
        assert all(curve.percentages(ap)[0] == 100.0 for ap in range(1, 9))

    def test_order_and_count(self, room, grid):
        spec = SweepSpec("d", 0, 1, 0.5, {"R": 0.5, "h": 1}, (3, 1))
        curve = sweep(spec, room, grid)
        assert [(s.parameter_value, s.ap_id) for s in curve.samples] == [
            (0, 3), (0, 1), (0.5, 3), (0.5, 1), (1, 3), (1, 1)]

    def test_multi_link_labels(self, room, grid):
        spec = SweepSpec("d", 0, 1, 0.5, {"R": 0.5, "h": 1}, multi_link=((4, 6), (1,)))
        curve = sweep(spec, room, grid)
        assert curve.labels() == [(4, 6), (1,)]
        assert len(curve.samples) == 6

    def test_unknown_ap(self, room, grid):
        with pytest.raises(ValueError):
            sweep(SweepSpec("d", 0, 1, 0.5, {"R": 0.5, "h": 1}, (9,)), room, grid)

    def test_thread_count_irrelevant(self, room, grid):
        spec = SweepSpec("h", 0, 2, 0.05, {"R": 0.7, "d": 1.1})
        one = sweep(spec, room, grid, workers=1).samples
        assert sweep(spec, room, grid, workers=7).samples == one

    def test_default_panels(self):
        specs = default_sweeps()
        assert len(specs) == 9
        assert [s.varied for s in specs] == ["R"] * 3 + ["h"] * 3 + ["d"] * 3
        assert specs[1].fixed == {"h": 1.0, "d": 2.0}
        assert specs[8].fixed == {"R": 2.0, "h": 2.0}
        assert len(specs[6].values()) == 81


def test_resolve_workers(monkeypatch):
    monkeypatch.setenv("OWB_THREADS", "3")
    assert resolve_workers() == 3
    assert resolve_workers(5) == 5
    monkeypatch.setenv("OWB_THREADS", "x")
    with pytest.raises(ValueError):
        resolve_workers()
    monkeypatch.delenv("OWB_THREADS")
    assert resolve_workers() >= 1


def test_interior_grid_percentage(aps, room):
    g = grid_locations(room, 0.25, include_boundary=False)
    s = percentage_blockage(aps[0], g, DiscObstacle(0.25, 1, 0.5), room)
    assert (s.blocked_count, s.total_count) == exact_grid_count((1, 1, 3), 0.25, 1, 0.5, boundary=False)
