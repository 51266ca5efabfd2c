"""Tests for the closed-form capacity/delay model.

Reference grids below are frozen from the published capacity (Mbps) and
delay (msec) tables for the default radio settings, gaps {6,20,50,100,
200,300} m and lanes {2,4,6,8}.  The interferer count is cross-checked
against a brute-force vehicle-placement counter.
"""

import math
import random

import pytest

from v2vlab.errors import ValidationError, ZeroCapacityError
from v2vlab.model import (
    DEFAULT_GAPS_M,
    DEFAULT_LANES,
    AnalyticResult,
    RadioConfig,
    RoadScenario,
    adaptive_range,
    analyze,
    capacity_gain,
    capacity_table,
    delay_table,
    interferer_count,
    per_packet_delay,
    per_vehicle_capacity,
    round_half_up,
    v2v_cellular_advantage,
)

DEFAULTS = RadioConfig()

# Published per-vehicle capacity (Mbps), rows = gaps, cols = lanes 2/4/6/8.
CAPACITY_TABLE = {
    6.0: (0.0604, 0.0302, 0.0201, 0.0151),
    20.0: (0.1992, 0.0996, 0.0664, 0.0498),
    50.0: (0.4860, 0.2430, 0.1620, 0.1215),
    100.0: (0.9346, 0.4673, 0.3115, 0.2337),
    200.0: (1.7357, 0.8679, 0.5786, 0.4339),
    300.0: (2.4300, 1.2150, 0.8100, 0.6075),
}

# Published per-packet delay (msec), same grid.
DELAY_TABLE = {
    6.0: (52.9383, 105.8765, 158.8148, 211.7531),
    20.0: (16.0658, 32.1317, 48.1975, 64.2634),
    50.0: (6.5844, 13.1687, 19.7531, 26.3374),
    100.0: (3.4239, 6.8477, 10.2716, 13.6955),
    200.0: (1.8436, 3.6872, 5.5309, 7.3745),
    300.0: (1.3169, 2.6337, 3.9506, 5.2675),
}


def count_interferers_by_placement(radio: RadioConfig, gap_m: float, lanes: int) -> int:
    """Independent oracle: place vehicles on a long road and count those
    within +-R*I of a mid-road transmitter, excluding the transmitter."""
    window = radio.transmission_range_m * radio.interference_ratio
    # Road long enough that the mid vehicle has a full window on each side.
    length = 2.0 * window + 20.0 * gap_m
    per_lane = int(length // gap_m) + 1
    positions = [k * gap_m for k in range(per_lane)]
    mid = min(positions, key=lambda x: abs(x - length / 2.0))
    count = 0
    for lane in range(lanes):
        for x in positions:
            if abs(x - mid) <= window + 1e-9:
                count += 1
    return count - 1  # exclude the transmitter itself


def road(n: int, d: float) -> RoadScenario:
    return RoadScenario(lane_count=n, inter_vehicle_gap_m=d, road_length_m=max(3000.0, d))


class TestInterfererCount:
    def test_dense_two_lane(self):
        # 3 km road, 6 m spacing, 2 lanes: 401 vehicles within +-600 m.
        assert interferer_count(DEFAULTS, road(2, 6.0)) == pytest.approx(401.0)
        assert count_interferers_by_placement(DEFAULTS, 6.0, 2) == 401

    def test_sparse_two_lane(self):
        assert interferer_count(DEFAULTS, road(2, 300.0)) == pytest.approx(9.0)
        assert count_interferers_by_placement(DEFAULTS, 300.0, 2) == 9

    def test_boundary_single_lane(self):
        # D = 2*R*I: exactly one neighbor at each side boundary, (1+1)*1 - 1 = 1.
        d = 2 * DEFAULTS.transmission_range_m * DEFAULTS.interference_ratio
        assert interferer_count(DEFAULTS, road(1, d)) == pytest.approx(1.0)

    def test_placement_oracle_full_grid(self):
        for d in DEFAULT_GAPS_M:
            for n in DEFAULT_LANES:
                formula = interferer_count(DEFAULTS, road(n, d))
                counted = count_interferers_by_placement(DEFAULTS, d, n)
                assert abs(formula - counted) <= 1.0, (d, n, formula, counted)

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValidationError):
            RoadScenario(lane_count=2, inter_vehicle_gap_m=0.0)
        with pytest.raises(ValidationError):
            RoadScenario(lane_count=0, inter_vehicle_gap_m=6.0)


class TestPerVehicleCapacity:
    def test_reference_cells(self):
        assert round_half_up(per_vehicle_capacity(DEFAULTS, road(2, 6.0))) == 0.0604
        assert round_half_up(per_vehicle_capacity(DEFAULTS, road(8, 300.0))) == 0.6075
        assert round_half_up(per_vehicle_capacity(DEFAULTS, road(4, 100.0))) == 0.4673

    def test_zero_utilization_gives_zero(self):
        idle = RadioConfig(utilization=0.0)
        assert per_vehicle_capacity(idle, road(4, 50.0)) == 0.0

    def test_rejects_invalid_radio(self):
        with pytest.raises(ValidationError):
            RadioConfig(utilization=1.5)
        with pytest.raises(ValidationError):
            RadioConfig(interference_ratio=0.5)
        with pytest.raises(ValidationError):
            RadioConfig(channel_capacity_mbps=0.0)
        with pytest.raises(ValidationError):
            RadioConfig(packet_length_bytes=0)
        with pytest.raises(ValidationError):
            RadioConfig(channel_count=0)


class TestPerPacketDelay:
    def test_reference_cells(self):
        assert round_half_up(per_packet_delay(DEFAULTS, road(2, 6.0))) == 52.9383
        assert round_half_up(per_packet_delay(DEFAULTS, road(4, 50.0))) == 13.1687
        assert round_half_up(per_packet_delay(DEFAULTS, road(2, 300.0))) == 1.3169

    def test_zero_capacity_raises_distinct_error(self):
        idle = RadioConfig(utilization=0.0)
        with pytest.raises(ZeroCapacityError):
            per_packet_delay(idle, road(2, 6.0))

    def test_analyze_bundles_all_three(self):
        result = analyze(DEFAULTS, road(2, 300.0))
        assert isinstance(result, AnalyticResult)
        assert result.interferer_count == pytest.approx(9.0)
        assert round_half_up(result.per_vehicle_capacity_mbps) == 2.4300
        assert round_half_up(result.per_packet_delay_ms) == 1.3169


class TestTables:
    def test_capacity_table_matches_reference(self):
        matrix = capacity_table(DEFAULTS)
        for i, d in enumerate(DEFAULT_GAPS_M):
            for j, _n in enumerate(DEFAULT_LANES):
                assert round_half_up(matrix[i][j]) == CAPACITY_TABLE[d][j], (d, _n)

    def test_delay_table_matches_reference(self):
        matrix = delay_table(DEFAULTS)
        for i, d in enumerate(DEFAULT_GAPS_M):
            for j, _n in enumerate(DEFAULT_LANES):
                assert round_half_up(matrix[i][j]) == DELAY_TABLE[d][j], (d, _n)

    def test_single_cell(self):
        assert round_half_up(capacity_table(DEFAULTS, [300.0], [2])[0][0]) == 2.4300
        assert round_half_up(delay_table(DEFAULTS, [6.0], [8])[0][0]) == 211.7531

    def test_empty_gap_list(self):
        assert capacity_table(DEFAULTS, [], [2, 4]) == []


class TestAdaptiveRange:
    def test_dense_example(self):
        assert adaptive_range(road(8, 6.0)) == 60.0

    def test_clamped_at_max(self):
        assert adaptive_range(road(2, 300.0), max_range_m=300.0) == 300.0

    def test_direct_product(self):
        assert adaptive_range(road(4, 20.0)) == 200.0

    def test_rejects_nonpositive_multiplier(self):
        with pytest.raises(ValidationError):
            adaptive_range(road(2, 6.0), gap_multiplier=0.0)


class TestCapacityGain:
    def test_range_reduction_factor_about_five(self):
        before = RadioConfig()
        after = RadioConfig(transmission_range_m=60.0)
        gain = capacity_gain(before, after, road(8, 6.0))
        assert gain == pytest.approx(1608.0 / 328.0, abs=1e-9)

    def test_identity(self):
        assert capacity_gain(DEFAULTS, DEFAULTS, road(4, 50.0)) == pytest.approx(1.0)

    def test_halved_range_sparse(self):
        after = RadioConfig(transmission_range_m=150.0)
        assert capacity_gain(DEFAULTS, after, road(2, 300.0)) == pytest.approx(5.0 / 3.0)

    def test_zero_baseline_rejected(self):
        idle = RadioConfig(utilization=0.0)
        with pytest.raises(ZeroCapacityError):
            capacity_gain(idle, DEFAULTS, road(2, 300.0))


class TestV2vCellularAdvantage:
    def test_typical_cell(self):
        assert v2v_cellular_advantage(3000.0, 300.0) == pytest.approx(20.0)

    def test_equal_radii(self):
        assert v2v_cellular_advantage(300.0, 300.0) == pytest.approx(2.0)

    def test_small_v2v_range(self):
        assert v2v_cellular_advantage(1000.0, 50.0) == pytest.approx(40.0)

    def test_warns_when_v2v_exceeds_cell(self):
        with pytest.warns(UserWarning):
            v2v_cellular_advantage(100.0, 300.0)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValidationError):
            v2v_cellular_advantage(0.0, 300.0)


def _random_scenario(rng: random.Random) -> tuple[RadioConfig, RoadScenario]:
    radio = RadioConfig(
        transmission_range_m=rng.uniform(10.0, 1000.0),
        interference_ratio=rng.uniform(1.0, 4.0),
        channel_capacity_mbps=rng.uniform(1.0, 100.0),
        utilization=rng.uniform(0.05, 1.0),
        packet_length_bytes=rng.randint(1, 4000),
        channel_count=rng.randint(1, 8),
    )
    d = rng.uniform(1.0, 400.0)
    scenario = RoadScenario(
        lane_count=rng.randint(1, 12), inter_vehicle_gap_m=d, road_length_m=max(3000.0, d)
    )
    return radio, scenario


class TestFormulaProperties:
    """Randomized property checks; seeded for reproducibility."""

    CASES = 1200

    def test_delay_capacity_product_is_packet_kilobits(self):
        rng = random.Random(0xC0FFEE)
        for _ in range(self.CASES):
            radio, scenario = _random_scenario(rng)
            t = per_vehicle_capacity(radio, scenario)
            d = per_packet_delay(radio, scenario)
            expected = 8.0 * radio.packet_length_bytes / 1000.0
            assert d * t == pytest.approx(expected, rel=1e-12)

    def test_capacity_monotonicity(self):
        rng = random.Random(0xBEEF)
        for _ in range(self.CASES):
            radio, scenario = _random_scenario(rng)
            base = per_vehicle_capacity(radio, scenario)
            bump = 1.0 + rng.uniform(0.01, 1.0)

            wider = RoadScenario(
                scenario.lane_count,
                scenario.inter_vehicle_gap_m * bump,
                road_length_m=scenario.road_length_m * bump + scenario.inter_vehicle_gap_m * bump,
            )
            assert per_vehicle_capacity(radio, wider) > base

            more_lanes = RoadScenario(
                scenario.lane_count + 1, scenario.inter_vehicle_gap_m, scenario.road_length_m
            )
            assert per_vehicle_capacity(radio, more_lanes) < base

            import dataclasses

            longer_r = dataclasses.replace(
                radio, transmission_range_m=radio.transmission_range_m * bump
            )
            assert per_vehicle_capacity(longer_r, scenario) < base

            higher_i = dataclasses.replace(
                radio, interference_ratio=radio.interference_ratio * bump
            )
            assert per_vehicle_capacity(higher_i, scenario) < base

            faster_c = dataclasses.replace(
                radio, channel_capacity_mbps=radio.channel_capacity_mbps * bump
            )
            assert per_vehicle_capacity(faster_c, scenario) > base

            if radio.utilization < 0.99:
                busier = dataclasses.replace(
                    radio, utilization=min(1.0, radio.utilization * bump)
                )
                if busier.utilization > radio.utilization:
                    assert per_vehicle_capacity(busier, scenario) > base

    def test_scaling_c_and_l_together_keeps_delay(self):
        import dataclasses

        rng = random.Random(0xD00D)
        for _ in range(self.CASES // 2):
            radio, scenario = _random_scenario(rng)
            factor = rng.randint(2, 10)
            scaled = dataclasses.replace(
                radio,
                channel_capacity_mbps=radio.channel_capacity_mbps * factor,
                packet_length_bytes=radio.packet_length_bytes * factor,
            )
            assert per_packet_delay(scaled, scenario) == pytest.approx(
                per_packet_delay(radio, scenario), rel=1e-12
            )

    def test_channel_count_linearity(self):
        import dataclasses

        rng = random.Random(0xFACE)
        for _ in range(self.CASES // 2):
            radio, scenario = _random_scenario(rng)
            single = dataclasses.replace(radio, channel_count=1)
            k = rng.randint(2, 16)
            multi = dataclasses.replace(radio, channel_count=k)
            assert per_vehicle_capacity(multi, scenario) == pytest.approx(
                k * per_vehicle_capacity(single, scenario), rel=1e-12
            )
            assert per_packet_delay(multi, scenario) == pytest.approx(
                per_packet_delay(single, scenario) / k, rel=1e-12
            )

    def test_capacity_bounded_by_effective_channel_rate(self):
        rng = random.Random(0xABCD)
        for _ in range(self.CASES // 2):
            radio, scenario = _random_scenario(rng)
            cap = per_vehicle_capacity(radio, scenario)
            bound = radio.channel_capacity_mbps * radio.utilization * radio.channel_count
            assert cap <= bound + 1e-12


class TestRounding:
    def test_half_up_at_boundary(self):
        assert round_half_up(0.00005, 4) == 0.0001
        assert round_half_up(1.23455, 4) == 1.2346
        assert round_half_up(2.43, 4) == 2.43

    def test_respects_places(self):
        assert round_half_up(math.pi, 2) == 3.14
