"""Closed-form V2V broadcast capacity and delay model for a straight multi-lane road.

With transmission range R (meters), interference-to-transmission-range
ratio I, inter-vehicle gap D (meters) and N lanes, the vehicles sharing
the channel around one transmitter number (2*R*I/D + 1)*N, so one of them
interferes with (2*R*I/D + 1)*N - 1 others.  A raw channel rate C (Mbps)
at utilization U yields the per-vehicle transmission capacity

    T = C * U * channels / ((2*R*I/D + 1) * N)      [Mbit/s]

and an L-byte packet then takes

    d = 8 * L / (1000 * T)                          [ms]

The interference term is kept continuous in D (no flooring): the
reference capacity/delay grids are only reproduced exactly that way.
All functions here are pure and operate on immutable value objects that
validate themselves on construction.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal

from .errors import ValidationError, ZeroCapacityError

DEFAULT_TRANSMISSION_RANGE_M = 300.0
DEFAULT_INTERFERENCE_RATIO = 2.0
DEFAULT_CHANNEL_CAPACITY_MBPS = 27.0  # max rate of 802.11p-based DSRC
DEFAULT_UTILIZATION = 0.9
DEFAULT_PACKET_LENGTH_BYTES = 400
DEFAULT_CHANNEL_COUNT = 1

DEFAULT_ADAPTIVE_GAP_MULTIPLIER = 10.0

# Study grid for the reference capacity/delay tables.
DEFAULT_GAPS_M = (6.0, 20.0, 50.0, 100.0, 200.0, 300.0)
DEFAULT_LANES = (2, 4, 6, 8)


@dataclass(frozen=True)
class RadioConfig:
    """Radio and channel parameters of the broadcast model."""

    transmission_range_m: float = DEFAULT_TRANSMISSION_RANGE_M
    interference_ratio: float = DEFAULT_INTERFERENCE_RATIO
    channel_capacity_mbps: float = DEFAULT_CHANNEL_CAPACITY_MBPS
    utilization: float = DEFAULT_UTILIZATION
    packet_length_bytes: int = DEFAULT_PACKET_LENGTH_BYTES
    channel_count: int = DEFAULT_CHANNEL_COUNT

    def __post_init__(self) -> None:
        if self.transmission_range_m <= 0:
            raise ValidationError("transmission_range_m must be > 0")
        if self.interference_ratio < 1:
            raise ValidationError("interference_ratio must be >= 1")
        if self.channel_capacity_mbps <= 0:
            raise ValidationError("channel_capacity_mbps must be > 0")
        if not 0.0 <= self.utilization <= 1.0:
            raise ValidationError("utilization must be in [0, 1]")
        if int(self.packet_length_bytes) != self.packet_length_bytes or self.packet_length_bytes < 1:
            raise ValidationError("packet_length_bytes must be an integer >= 1")
        if int(self.channel_count) != self.channel_count or self.channel_count < 1:
            raise ValidationError("channel_count must be an integer >= 1")

    @property
    def interference_range_m(self) -> float:
        return self.transmission_range_m * self.interference_ratio


@dataclass(frozen=True)
class RoadScenario:
    """Straight road: N aligned lanes, vehicles every D meters per lane."""

    lane_count: int
    inter_vehicle_gap_m: float
    road_length_m: float = 3000.0

    def __post_init__(self) -> None:
        if int(self.lane_count) != self.lane_count or self.lane_count < 1:
            raise ValidationError("lane_count must be an integer >= 1")
        if self.inter_vehicle_gap_m <= 0:
            raise ValidationError("inter_vehicle_gap_m must be > 0")
        if self.road_length_m < self.inter_vehicle_gap_m:
            raise ValidationError("road_length_m must be >= inter_vehicle_gap_m")


@dataclass(frozen=True)
class AnalyticResult:
    """Model outputs for one (radio, road) scenario.

    interferer_count is the continuous model value and is integral
    whenever D divides 2*R*I evenly.
    """

    interferer_count: float
    per_vehicle_capacity_mbps: float
    per_packet_delay_ms: float


def _sharing_factor(radio: RadioConfig, road: RoadScenario) -> float:
    """Vehicles sharing the channel in one interference neighborhood."""
    r, i, d = radio.transmission_range_m, radio.interference_ratio, road.inter_vehicle_gap_m
    return (2.0 * r * i / d + 1.0) * road.lane_count


def interferer_count(radio: RadioConfig, road: RoadScenario) -> float:
    """Number of vehicles interfering with one transmitter: (2RI/D + 1)N - 1.

    Continuous in D; callers wanting the physical count should check that
    D divides 2*R*I (the value is then an exact integer).
    """
    return _sharing_factor(radio, road) - 1.0


def per_vehicle_capacity(radio: RadioConfig, road: RoadScenario) -> float:
    """Per-vehicle transmission capacity T in Mbit/s."""
    effective = radio.channel_capacity_mbps * radio.utilization * radio.channel_count
    return effective / _sharing_factor(radio, road)


def per_packet_delay(radio: RadioConfig, road: RoadScenario) -> float:
    """Per-packet transmission delay d = 8L/(1000T) in milliseconds."""
    t = per_vehicle_capacity(radio, road)
    if t == 0.0:
        raise ZeroCapacityError(
            "per-vehicle capacity is zero (utilization 0?); delay is unbounded"
        )
    return 8.0 * radio.packet_length_bytes / (1000.0 * t)


def analyze(radio: RadioConfig, road: RoadScenario) -> AnalyticResult:
    """Bundle interferer count, capacity, and delay for one scenario."""
    return AnalyticResult(
        interferer_count=interferer_count(radio, road),
        per_vehicle_capacity_mbps=per_vehicle_capacity(radio, road),
        per_packet_delay_ms=per_packet_delay(radio, road),
    )


def capacity_table(
    radio: RadioConfig,
    gaps_m: list[float] | tuple[float, ...] = DEFAULT_GAPS_M,
    lanes: list[int] | tuple[int, ...] = DEFAULT_LANES,
) -> list[list[float]]:
    """Capacity matrix, rows indexed by gap and columns by lane count.

    Values are full precision; round with round_half_up(v, 4) to match the
    printed reference grid.
    """
    return [
        [per_vehicle_capacity(radio, RoadScenario(n, d, road_length_m=max(d, 1.0))) for n in lanes]
        for d in gaps_m
    ]


def delay_table(
    radio: RadioConfig,
    gaps_m: list[float] | tuple[float, ...] = DEFAULT_GAPS_M,
    lanes: list[int] | tuple[int, ...] = DEFAULT_LANES,
) -> list[list[float]]:
    """Delay matrix (ms), same shape as capacity_table."""
    return [
        [per_packet_delay(radio, RoadScenario(n, d, road_length_m=max(d, 1.0))) for n in lanes]
        for d in gaps_m
    ]


def adaptive_range(
    road: RoadScenario,
    gap_multiplier: float = DEFAULT_ADAPTIVE_GAP_MULTIPLIER,
    max_range_m: float = DEFAULT_TRANSMISSION_RANGE_M,
) -> float:
    """Transmission range tuned to traffic density: multiplier * D, capped.

    Dense traffic (small D) allows a short range, shrinking the
    interference neighborhood and raising per-vehicle capacity.
    """
    if gap_multiplier <= 0:
        raise ValidationError("gap_multiplier must be > 0")
    if max_range_m <= 0:
        raise ValidationError("max_range_m must be > 0")
    return min(gap_multiplier * road.inter_vehicle_gap_m, max_range_m)


def capacity_gain(
    radio_before: RadioConfig, radio_after: RadioConfig, road: RoadScenario
) -> float:
    """Capacity ratio after/before a radio reconfiguration on the same road."""
    before = per_vehicle_capacity(radio_before, road)
    if before == 0.0:
        raise ZeroCapacityError("baseline capacity is zero; gain undefined")
    return per_vehicle_capacity(radio_after, road) / before


def v2v_cellular_advantage(cell_radius_m: float, v2v_range_m: float) -> float:
    """Timeliness/per-vehicle-throughput advantage of direct V2V over cellular.

    Under equal spectrum and similar interference-to-communication-range
    ratios, contention is proportional to covered road length, so the
    advantage is about twice the cell radius over the V2V range.
    """
    if cell_radius_m <= 0 or v2v_range_m <= 0:
        raise ValidationError("cell_radius_m and v2v_range_m must be > 0")
    if v2v_range_m > cell_radius_m:
        warnings.warn(
            "v2v_range_m exceeds cell_radius_m; advantage factor below 2",
            stacklevel=2,
        )
    return 2.0 * cell_radius_m / v2v_range_m


def round_half_up(value: float, places: int = 4) -> float:
    """Round half away from zero at the given decimal place (table precision)."""
    q = Decimal(1).scaleb(-places)
    return float(Decimal(repr(value)).quantize(q, rounding=ROUND_HALF_UP))
