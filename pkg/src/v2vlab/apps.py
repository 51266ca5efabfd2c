"""Registry of 26 connected-vehicle applications and their communication needs.

Each entry records the communication links, range, messaging frequency,
and tolerable latency of one application, grouped into four categories:
active safety, fuel economy and emission control, vehicle automation,
and infotainment.  A classifier places every application on a
(spatial scale, temporal scale) grid and recommends a communication
paradigm: direct V2V, cellular, or both.

Endpoint letters: V = vehicle, I = roadside infrastructure, C = cloud,
M = mobile device.  "V2C2V" is a vehicle-to-vehicle exchange relayed
through the cloud.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from .errors import ValidationError

# Stand-in used only when a symbolic "cellular radius" must become a number
# (e.g. when feeding the V2V-vs-cellular advantage ratio); not table data.
CELLULAR_RADIUS_DEFAULT_M = 3000.0


class Endpoint(Enum):
    VEHICLE = "V"
    INFRASTRUCTURE = "I"
    CLOUD = "C"
    MOBILE = "M"
    SENSOR = "Sensor"


class Category(Enum):
    ACTIVE_SAFETY = "ActiveSafety"
    FUEL_EMISSION = "FuelEmission"
    AUTOMATION = "Automation"
    INFOTAINMENT = "Infotainment"


class Scale(Enum):
    SMALL = "Small"
    MEDIUM = "Medium"
    LARGE = "Large"

    @property
    def rank(self) -> int:
        return ("Small", "Medium", "Large").index(self.value)


class Paradigm(Enum):
    V2V = "V2V"
    CELLULAR = "Cellular"
    BOTH = "Both"


class RangeSymbol(Enum):
    CELLULAR_RADIUS = "cellular-radius"
    VEHICLE_USER_DISTANCE = "vehicle-user-distance"
    INTER_VEHICLE_GAPS = "inter-vehicle-gaps"
    CONTEXT_DEPENDENT = "context-dependent"


# Spatial scale assumed for each symbolic range: cellular radius and the
# vehicle-to-user distance are unbounded in practice, inter-vehicle gaps
# stay within a few hundred meters, and context-dependent sits between.
_SYMBOL_SCALE = {
    RangeSymbol.CELLULAR_RADIUS: Scale.LARGE,
    RangeSymbol.VEHICLE_USER_DISTANCE: Scale.LARGE,
    RangeSymbol.INTER_VEHICLE_GAPS: Scale.SMALL,
    RangeSymbol.CONTEXT_DEPENDENT: Scale.MEDIUM,
}


@dataclass(frozen=True)
class CommLink:
    """Directed link between two endpoints, optionally relayed."""

    source: Endpoint
    dest: Endpoint
    relay: Endpoint | None = None

    @classmethod
    def parse(cls, text: str) -> "CommLink":
        parts = text.split("2")
        try:
            endpoints = [Endpoint(p) for p in parts]
        except ValueError as exc:
            raise ValidationError(f"unknown endpoint in link {text!r}") from exc
        if len(endpoints) == 2:
            return cls(endpoints[0], endpoints[1])
        if len(endpoints) == 3:
            return cls(endpoints[0], endpoints[2], relay=endpoints[1])
        raise ValidationError(f"cannot parse link {text!r}")

    def __str__(self) -> str:
        if self.relay is None:
            return f"{self.source.value}2{self.dest.value}"
        return f"{self.source.value}2{self.relay.value}2{self.dest.value}"

    @property
    def endpoints(self) -> tuple[Endpoint, ...]:
        if self.relay is None:
            return (self.source, self.dest)
        return (self.source, self.relay, self.dest)


def _links(*texts: str) -> tuple[CommLink, ...]:
    return tuple(CommLink.parse(t) for t in texts)


@dataclass(frozen=True)
class RangeSpec:
    """Communication range requirement in meters.

    Any combination of a fixed value, an interval, and symbolic parts.
    open_above marks floor-only or "and beyond" requirements
    (">=1km", "10m-1km+").
    """

    fixed_m: float | None = None
    lower_m: float | None = None
    upper_m: float | None = None
    open_above: bool = False
    approximate: bool = False
    symbols: tuple[RangeSymbol, ...] = ()
    note: str | None = None

    def __post_init__(self) -> None:
        for v in (self.fixed_m, self.lower_m, self.upper_m):
            if v is not None and v <= 0:
                raise ValidationError("range bounds must be positive")
        if (self.lower_m is None) != (self.upper_m is None) and not (
            self.lower_m is not None and self.open_above
        ):
            raise ValidationError("interval needs both bounds, or a lower bound with open_above")
        if self.lower_m is not None and self.upper_m is not None and self.lower_m > self.upper_m:
            raise ValidationError("range interval lower bound exceeds upper bound")
        if self.fixed_m is None and self.lower_m is None and not self.symbols:
            raise ValidationError("range spec is empty")

    @property
    def demanding_end_m(self) -> float | None:
        """Smallest numeric range stated, if any."""
        candidates = [v for v in (self.fixed_m, self.lower_m) if v is not None]
        return min(candidates) if candidates else None

    def render(self) -> str:
        parts = []
        if self.fixed_m is not None:
            parts.append(f"{'~' if self.approximate else ''}{_fmt_m(self.fixed_m)}")
        if self.lower_m is not None and self.upper_m is not None:
            parts.append(f"{_fmt_m(self.lower_m)}-{_fmt_m(self.upper_m)}{'+' if self.open_above else ''}")
        elif self.lower_m is not None:
            parts.append(f">={_fmt_m(self.lower_m)}")
        parts.extend(s.value for s in self.symbols)
        text = ", ".join(parts)
        if self.note:
            text += f" ({self.note})"
        return text


@dataclass(frozen=True)
class FrequencySpec:
    """Messaging rate: periodic at/below/above a rate, event-driven, or both."""

    hz: float | None = None
    at_most: bool = False
    at_least: bool = False
    approximate: bool = False
    event_driven: bool = False
    example_hz: float | None = None

    def __post_init__(self) -> None:
        if self.hz is not None and self.hz <= 0:
            raise ValidationError("frequency must be positive")
        if self.example_hz is not None and self.example_hz <= 0:
            raise ValidationError("example frequency must be positive")
        if self.hz is None and not self.event_driven:
            raise ValidationError("frequency spec is empty")
        if self.at_most and self.at_least:
            raise ValidationError("frequency cannot be both at_most and at_least")

    @property
    def max_stated_hz(self) -> float:
        """Largest rate named by the spec; 0 for purely event-driven traffic."""
        return self.hz if self.hz is not None else 0.0

    def render(self) -> str:
        parts = []
        if self.event_driven:
            parts.append("event-driven")
        if self.hz is not None:
            prefix = "<=" if self.at_most else ">=" if self.at_least else "~" if self.approximate else ""
            text = f"{prefix}{_fmt_num(self.hz)}Hz"
            if self.example_hz is not None:
                text += f" (e.g. {_fmt_num(self.example_hz)}Hz)"
            parts.append(text)
        return ", ".join(parts)


@dataclass(frozen=True)
class LatencySpec:
    """Tolerable latency: a bound, an interval, best-effort, or distance-dependent.

    open_above marks floor-only tolerances (">=10sec", "100msec+"): the
    application tolerates the stated value or anything slower.
    """

    bound_ms: float | None = None
    upper_ms: float | None = None
    open_above: bool = False
    approximate: bool = False
    best_effort: bool = False
    distance_dependent: bool = False
    note: str | None = None

    def __post_init__(self) -> None:
        for v in (self.bound_ms, self.upper_ms):
            if v is not None and v <= 0:
                raise ValidationError("latency bounds must be positive")
        if self.upper_ms is not None and self.bound_ms is None:
            raise ValidationError("latency interval needs a lower bound")
        if self.bound_ms is not None and self.upper_ms is not None and self.bound_ms > self.upper_ms:
            raise ValidationError("latency interval lower bound exceeds upper bound")
        if self.bound_ms is None and not self.best_effort and not self.distance_dependent:
            raise ValidationError("latency spec is empty")

    def render(self) -> str:
        parts = []
        if self.bound_ms is not None:
            prefix = "~" if self.approximate else ""
            if self.upper_ms is not None:
                parts.append(f"{_fmt_ms(self.bound_ms)}-{_fmt_ms(self.upper_ms)}")
            elif self.open_above:
                parts.append(f"{_fmt_ms(self.bound_ms)}+")
            else:
                parts.append(f"{prefix}{_fmt_ms(self.bound_ms)}")
        if self.best_effort:
            parts.append("best-effort")
        if self.distance_dependent:
            parts.append("distance-dependent")
        text = ", ".join(parts)
        if self.note:
            text += f" ({self.note})"
        return text


@dataclass(frozen=True)
class AppRequirement:
    """Communication requirements of one application."""

    id: str
    name: str
    category: Category
    links: tuple[CommLink, ...]
    range: RangeSpec
    frequency: FrequencySpec
    latency: LatencySpec

    def __post_init__(self) -> None:
        if not self.id:
            raise ValidationError("application id must be nonempty")
        if not self.links:
            raise ValidationError(f"{self.id}: at least one link required")

    @property
    def has_direct_v2v_link(self) -> bool:
        """True when the app uses a V2V, I2V, or V2I link (no base-station relay)."""
        direct = {("V", "V"), ("I", "V"), ("V", "I")}
        return any(
            link.relay is None and (link.source.value, link.dest.value) in direct
            for link in self.links
        )

    @property
    def has_cloud_link(self) -> bool:
        return any(Endpoint.CLOUD in link.endpoints for link in self.links)


@dataclass(frozen=True)
class ClassifierThresholds:
    """Scale cutoffs for the spatiotemporal grid (inclusive upper edges)."""

    small_spatial_max_m: float = 300.0
    medium_spatial_max_m: float = 1000.0
    small_temporal_max_ms: float = 100.0
    medium_temporal_max_ms: float = 10_000.0

    def __post_init__(self) -> None:
        if not 0 < self.small_spatial_max_m < self.medium_spatial_max_m:
            raise ValidationError("need 0 < small_spatial_max_m < medium_spatial_max_m")
        if not 0 < self.small_temporal_max_ms < self.medium_temporal_max_ms:
            raise ValidationError("need 0 < small_temporal_max_ms < medium_temporal_max_ms")

    def spatial_scale(self, meters: float, above: bool = False) -> Scale:
        """Bucket for a numeric range; above=True buckets the open side of a floor."""
        return _bucket(meters, self.small_spatial_max_m, self.medium_spatial_max_m, above)

    def temporal_scale(self, ms: float, above: bool = False) -> Scale:
        return _bucket(ms, self.small_temporal_max_ms, self.medium_temporal_max_ms, above)


def _bucket(value: float, small_max: float, medium_max: float, above: bool) -> Scale:
    if above:  # bucket of value + epsilon
        if value < small_max:
            return Scale.SMALL
        if value < medium_max:
            return Scale.MEDIUM
        return Scale.LARGE
    if value <= small_max:
        return Scale.SMALL
    if value <= medium_max:
        return Scale.MEDIUM
    return Scale.LARGE


DEFAULT_THRESHOLDS = ClassifierThresholds()


@dataclass(frozen=True)
class SpatioTemporalClass:
    spatial: Scale
    temporal: Scale
    paradigm: Paradigm


@dataclass(frozen=True)
class AppClassification:
    """Demanding-end classification plus the relaxed-end reading.

    Interval and symbolic specs are classified at their most demanding
    end (smallest range, tightest latency); the relaxed end is reported
    alongside.  Point specs yield identical readings.
    """

    app_id: str
    demanding: SpatioTemporalClass
    relaxed: SpatioTemporalClass
    notes: tuple[str, ...] = field(default=())


def _recommend(spatial: Scale, temporal: Scale, has_cloud: bool) -> Paradigm:
    # Large spatial scale needs base stations; large temporal scale with a
    # cloud leg is already well served by deployed cellular networks.
    if spatial is Scale.LARGE:
        return Paradigm.CELLULAR
    if temporal is Scale.LARGE and has_cloud:
        return Paradigm.CELLULAR
    if spatial is Scale.SMALL and temporal is Scale.SMALL:
        return Paradigm.V2V
    return Paradigm.BOTH


def _spatial_scales(spec: RangeSpec, th: ClassifierThresholds) -> tuple[Scale, Scale, list[str]]:
    demanding: list[Scale] = []
    relaxed: list[Scale] = []
    notes: list[str] = []
    if spec.fixed_m is not None:
        s = th.spatial_scale(spec.fixed_m)
        demanding.append(s)
        relaxed.append(s)
    if spec.lower_m is not None and spec.upper_m is not None:
        demanding.append(th.spatial_scale(spec.lower_m))
        relaxed.append(Scale.LARGE if spec.open_above else th.spatial_scale(spec.upper_m))
    elif spec.lower_m is not None:
        # Floor-only requirement: its extent lies beyond the floor.
        demanding.append(th.spatial_scale(spec.lower_m, above=True))
        relaxed.append(Scale.LARGE)
    for sym in spec.symbols:
        s = _SYMBOL_SCALE[sym]
        demanding.append(s)
        relaxed.append(s)
        if sym is not RangeSymbol.INTER_VEHICLE_GAPS:
            notes.append(f"symbolic range '{sym.value}' read as {s.value} spatial scale")
    return min(demanding, key=lambda s: s.rank), max(relaxed, key=lambda s: s.rank), notes


def _temporal_scales(spec: LatencySpec, th: ClassifierThresholds) -> tuple[Scale, Scale, list[str]]:
    notes: list[str] = []
    if spec.distance_dependent and spec.bound_ms is None:
        notes.append("distance-dependent latency read as Medium temporal scale")
        return Scale.MEDIUM, Scale.MEDIUM, notes
    if spec.bound_ms is None:  # pure best-effort
        return Scale.LARGE, Scale.LARGE, notes
    if spec.open_above:
        demanding = th.temporal_scale(spec.bound_ms, above=True)
    else:
        demanding = th.temporal_scale(spec.bound_ms)
    if spec.best_effort or spec.open_above:
        relaxed = Scale.LARGE
    elif spec.upper_ms is not None:
        relaxed = th.temporal_scale(spec.upper_ms)
    else:
        relaxed = demanding
    return demanding, relaxed, notes


def classify(
    app: AppRequirement, thresholds: ClassifierThresholds = DEFAULT_THRESHOLDS
) -> AppClassification:
    """Place an application on the spatiotemporal grid and pick a paradigm."""
    sp_dem, sp_rel, sp_notes = _spatial_scales(app.range, thresholds)
    tp_dem, tp_rel, tp_notes = _temporal_scales(app.latency, thresholds)
    cloud = app.has_cloud_link
    return AppClassification(
        app_id=app.id,
        demanding=SpatioTemporalClass(sp_dem, tp_dem, _recommend(sp_dem, tp_dem, cloud)),
        relaxed=SpatioTemporalClass(sp_rel, tp_rel, _recommend(sp_rel, tp_rel, cloud)),
        notes=tuple(sp_notes + tp_notes),
    )


# --- The registry ----------------------------------------------------------

def _fixed(m: float, approx: bool = False) -> RangeSpec:
    return RangeSpec(fixed_m=m, approximate=approx)


def _span(lo: float, hi: float, open_above: bool = False) -> RangeSpec:
    return RangeSpec(lower_m=lo, upper_m=hi, open_above=open_above)


def _at_least_m(m: float) -> RangeSpec:
    return RangeSpec(lower_m=m, open_above=True)


def _hz(v: float) -> FrequencySpec:
    return FrequencySpec(hz=v)


def _ms(v: float, approx: bool = False) -> LatencySpec:
    return LatencySpec(bound_ms=v, approximate=approx)


_CR = RangeSymbol.CELLULAR_RADIUS
_VUD = RangeSymbol.VEHICLE_USER_DISTANCE
_IVG = RangeSymbol.INTER_VEHICLE_GAPS
_CTX = RangeSymbol.CONTEXT_DEPENDENT

_REGISTRY: tuple[AppRequirement, ...] = (
    # Active safety
    AppRequirement("PCS", "Pre-crash sensing", Category.ACTIVE_SAFETY,
                   _links("V2V"), _fixed(50.0), _hz(50.0), _ms(20.0)),
    AppRequirement("EBL", "Emergency brake lights", Category.ACTIVE_SAFETY,
                   _links("V2V"), _fixed(200.0), _hz(10.0), _ms(100.0)),
    AppRequirement("CCW", "Collaborative collision warning", Category.ACTIVE_SAFETY,
                   _links("V2V"), _fixed(150.0), _hz(10.0), _ms(100.0)),
    AppRequirement("LTA", "Left turn assistant", Category.ACTIVE_SAFETY,
                   _links("I2V", "V2I"), _fixed(300.0), _hz(10.0), _ms(100.0)),
    AppRequirement("LCW", "Lane change warning", Category.ACTIVE_SAFETY,
                   _links("V2V"), _fixed(150.0), _hz(10.0), _ms(100.0)),
    AppRequirement("TSV", "Traffic signal violation warning", Category.ACTIVE_SAFETY,
                   _links("I2V"), _fixed(250.0), _hz(10.0), _ms(100.0)),
    AppRequirement("SSV", "Stop sign violation warning", Category.ACTIVE_SAFETY,
                   _links("I2V", "V2I"), _fixed(300.0), _hz(10.0), _ms(100.0)),
    AppRequirement("CSW", "Curve speed warning", Category.ACTIVE_SAFETY,
                   _links("I2V"), _fixed(200.0), _hz(1.0), _ms(1000.0)),
    # Fuel economy and emission control
    AppRequirement("LEZ", "Low emission zone", Category.FUEL_EMISSION,
                   _links("C2V", "V2C"), _at_least_m(1000.0),
                   FrequencySpec(hz=1.0, at_most=True, example_hz=0.1),
                   LatencySpec(bound_ms=10_000.0, open_above=True)),
    AppRequirement("FEP", "Fuel-economy-oriented trip planning", Category.FUEL_EMISSION,
                   _links("C2V", "I2V", "V2V", "V2I", "V2C"), _at_least_m(300.0),
                   FrequencySpec(hz=1.0, at_least=True), _ms(1000.0, approx=True)),
    AppRequirement("PFO", "Preview-based fuel economy optimization", Category.FUEL_EMISSION,
                   _links("C2V", "I2V", "V2V", "V2I", "V2C"), _span(300.0, 13_000.0),
                   FrequencySpec(hz=1.0, at_least=True),
                   LatencySpec(distance_dependent=True)),
    AppRequirement("Stop-start", "Stop-start", Category.FUEL_EMISSION,
                   _links("V2V", "V2I", "I2V"), _fixed(50.0, approx=True),
                   FrequencySpec(hz=1.0, at_least=True), _ms(100.0, approx=True)),
    AppRequirement("Platoon", "Platoon", Category.FUEL_EMISSION,
                   _links("V2V"), _span(50.0, 300.0),
                   FrequencySpec(hz=10.0, at_least=True), _ms(100.0, approx=True)),
    # Networked vehicle automation
    AppRequirement("AVT", "Adaptive vehicle tuning", Category.AUTOMATION,
                   _links("V2V", "V2C2V"),
                   RangeSpec(fixed_m=100.0, approximate=True, symbols=(_CTX,),
                             note="speed, inter-vehicle gaps"),
                   FrequencySpec(hz=10.0, approximate=True), _ms(100.0, approx=True)),
    AppRequirement("CFEM", "Collaborative failure-mode-effect-management", Category.AUTOMATION,
                   _links("V2V", "V2I", "I2V"), _fixed(300.0, approx=True),
                   FrequencySpec(hz=10.0, approximate=True), _ms(100.0, approx=True)),
    AppRequirement("TJA", "Traffic jam assist", Category.AUTOMATION,
                   _links("V2V"), _span(10.0, 300.0),
                   FrequencySpec(hz=10.0, approximate=True), _ms(100.0, approx=True)),
    AppRequirement("SCLC", "Supercruise with opportunistic lane change", Category.AUTOMATION,
                   _links("V2V"), _span(10.0, 300.0),
                   FrequencySpec(hz=10.0, approximate=True), _ms(100.0, approx=True)),
    AppRequirement("AP", "Automated valet/street parking", Category.AUTOMATION,
                   _links("V2V", "V2C2V", "V2Sensor"), _span(10.0, 1000.0, open_above=True),
                   FrequencySpec(hz=1.0, at_most=True),
                   LatencySpec(bound_ms=1000.0, open_above=True)),
    # Vehicular infotainment
    AppRequirement("RVS", "Remote vehicle status", Category.INFOTAINMENT,
                   _links("V2C", "C2V", "C2M"), RangeSpec(symbols=(_CR, _VUD)),
                   FrequencySpec(hz=0.1, at_most=True), LatencySpec(best_effort=True)),
    AppRequirement("RVC", "Remote vehicle command", Category.INFOTAINMENT,
                   _links("M2C", "C2V", "V2C", "C2M"), RangeSpec(symbols=(_CR, _VUD)),
                   FrequencySpec(event_driven=True),
                   LatencySpec(bound_ms=5000.0)),
    AppRequirement("RTCS", "Real-time cloud services to vehicle", Category.INFOTAINMENT,
                   _links("C2V"), RangeSpec(symbols=(_CR,)),
                   FrequencySpec(hz=10.0, at_most=True),
                   LatencySpec(bound_ms=100.0, upper_ms=10_000.0)),
    AppRequirement("CSS", "Crowd-sourced sensing", Category.INFOTAINMENT,
                   _links("V2V", "V2C", "C2V", "I2V"), RangeSpec(symbols=(_CR, _IVG)),
                   FrequencySpec(hz=1.0, at_most=True, event_driven=True),
                   LatencySpec(bound_ms=1000.0, upper_ms=60_000.0)),
    AppRequirement("DID", "Delay-insensitive downloads", Category.INFOTAINMENT,
                   _links("C2V", "V2C"), RangeSpec(symbols=(_CR,)),
                   FrequencySpec(event_driven=True), LatencySpec(best_effort=True)),
    AppRequirement("GPA", "Geographic proximity applications", Category.INFOTAINMENT,
                   _links("V2V", "V2C", "V2I", "C2V", "I2V"),
                   RangeSpec(symbols=(_IVG, _CTX, _CR), note="V2I distance"),
                   FrequencySpec(hz=1.0, at_most=True, event_driven=True),
                   LatencySpec(bound_ms=100.0, open_above=True, best_effort=True)),
    AppRequirement("ESS", "Extended surrounding sensing", Category.INFOTAINMENT,
                   _links("V2V", "V2I", "I2V"), _span(100.0, 300.0),
                   FrequencySpec(hz=10.0, approximate=True), _ms(100.0, approx=True)),
    AppRequirement("CDPA", "Cloud-based diagnostics/prognostics/analytics", Category.INFOTAINMENT,
                   _links("V2C"), RangeSpec(symbols=(_CR,)),
                   FrequencySpec(hz=10.0, at_least=True, event_driven=True),
                   LatencySpec(bound_ms=300_000.0, upper_ms=600_000.0, best_effort=True,
                               note="powertrain fault report")),
)

_EXPECTED_COUNTS = {
    Category.ACTIVE_SAFETY: 8,
    Category.FUEL_EMISSION: 5,
    Category.AUTOMATION: 5,
    Category.INFOTAINMENT: 8,
}


def load_registry(path: str | Path | None = None) -> tuple[AppRequirement, ...]:
    """Built-in registry (26 entries), or a validated override file."""
    if path is None:
        return _REGISTRY
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    return registry_from_json(data)


def get_app(app_id: str, registry: tuple[AppRequirement, ...] | None = None) -> AppRequirement:
    registry = registry if registry is not None else _REGISTRY
    for app in registry:
        if app.id == app_id:
            return app
    raise KeyError(app_id)


# --- Serialization ---------------------------------------------------------

def _range_to_dict(spec: RangeSpec) -> dict:
    out: dict = {}
    if spec.fixed_m is not None:
        out["fixed_m"] = spec.fixed_m
    if spec.lower_m is not None:
        out["lower_m"] = spec.lower_m
    if spec.upper_m is not None:
        out["upper_m"] = spec.upper_m
    if spec.open_above:
        out["open_above"] = True
    if spec.approximate:
        out["approximate"] = True
    if spec.symbols:
        out["symbols"] = [s.value for s in spec.symbols]
    if spec.note:
        out["note"] = spec.note
    return out


def _range_from_dict(d: dict) -> RangeSpec:
    known = {"fixed_m", "lower_m", "upper_m", "open_above", "approximate", "symbols", "note"}
    _reject_unknown(d, known, "range")
    return RangeSpec(
        fixed_m=d.get("fixed_m"),
        lower_m=d.get("lower_m"),
        upper_m=d.get("upper_m"),
        open_above=bool(d.get("open_above", False)),
        approximate=bool(d.get("approximate", False)),
        symbols=tuple(RangeSymbol(s) for s in d.get("symbols", [])),
        note=d.get("note"),
    )


def _freq_to_dict(spec: FrequencySpec) -> dict:
    out: dict = {}
    if spec.hz is not None:
        out["hz"] = spec.hz
    for flag in ("at_most", "at_least", "approximate", "event_driven"):
        if getattr(spec, flag):
            out[flag] = True
    if spec.example_hz is not None:
        out["example_hz"] = spec.example_hz
    return out


def _freq_from_dict(d: dict) -> FrequencySpec:
    known = {"hz", "at_most", "at_least", "approximate", "event_driven", "example_hz"}
    _reject_unknown(d, known, "frequency")
    return FrequencySpec(
        hz=d.get("hz"),
        at_most=bool(d.get("at_most", False)),
        at_least=bool(d.get("at_least", False)),
        approximate=bool(d.get("approximate", False)),
        event_driven=bool(d.get("event_driven", False)),
        example_hz=d.get("example_hz"),
    )


def _latency_to_dict(spec: LatencySpec) -> dict:
    out: dict = {}
    if spec.bound_ms is not None:
        out["bound_ms"] = spec.bound_ms
    if spec.upper_ms is not None:
        out["upper_ms"] = spec.upper_ms
    for flag in ("open_above", "approximate", "best_effort", "distance_dependent"):
        if getattr(spec, flag):
            out[flag] = True
    if spec.note:
        out["note"] = spec.note
    return out


def _latency_from_dict(d: dict) -> LatencySpec:
    known = {"bound_ms", "upper_ms", "open_above", "approximate", "best_effort",
             "distance_dependent", "note"}
    _reject_unknown(d, known, "latency")
    return LatencySpec(
        bound_ms=d.get("bound_ms"),
        upper_ms=d.get("upper_ms"),
        open_above=bool(d.get("open_above", False)),
        approximate=bool(d.get("approximate", False)),
        best_effort=bool(d.get("best_effort", False)),
        distance_dependent=bool(d.get("distance_dependent", False)),
        note=d.get("note"),
    )


def _reject_unknown(d: dict, known: set[str], where: str) -> None:
    unknown = set(d) - known
    if unknown:
        raise ValidationError(f"unknown keys in {where} spec: {sorted(unknown)}")


def app_to_dict(app: AppRequirement) -> dict:
    return {
        "id": app.id,
        "name": app.name,
        "category": app.category.value,
        "links": [str(link) for link in app.links],
        "range": _range_to_dict(app.range),
        "frequency": _freq_to_dict(app.frequency),
        "latency": _latency_to_dict(app.latency),
    }


def app_from_dict(d: dict) -> AppRequirement:
    known = {"id", "name", "category", "links", "range", "frequency", "latency"}
    _reject_unknown(d, known, "application")
    try:
        category = Category(d["category"])
    except (KeyError, ValueError) as exc:
        raise ValidationError(f"bad or missing category in {d.get('id', '?')}") from exc
    return AppRequirement(
        id=d["id"],
        name=d.get("name", d["id"]),
        category=category,
        links=tuple(CommLink.parse(t) for t in d["links"]),
        range=_range_from_dict(d["range"]),
        frequency=_freq_from_dict(d["frequency"]),
        latency=_latency_from_dict(d["latency"]),
    )


def registry_to_json(registry: tuple[AppRequirement, ...] | None = None) -> dict:
    registry = registry if registry is not None else _REGISTRY
    return {"applications": [app_to_dict(app) for app in registry]}


def registry_from_json(data: dict) -> tuple[AppRequirement, ...]:
    if not isinstance(data, dict) or "applications" not in data:
        raise ValidationError("registry file must be an object with an 'applications' list")
    _reject_unknown(data, {"applications"}, "registry")
    apps = tuple(app_from_dict(entry) for entry in data["applications"])
    if not apps:
        raise ValidationError("registry override is empty")
    ids = [a.id for a in apps]
    if len(set(ids)) != len(ids):
        raise ValidationError("duplicate application ids in registry")
    return apps


def validate_builtin_registry() -> None:
    """Assert the compiled-in registry invariants (26 rows, category counts)."""
    counts: dict[Category, int] = {}
    for app in _REGISTRY:
        counts[app.category] = counts.get(app.category, 0) + 1
    if len(_REGISTRY) != 26 or counts != _EXPECTED_COUNTS:
        raise ValidationError(f"built-in registry corrupted: {counts}")


# --- Reporting -------------------------------------------------------------

REPORT_CSV_HEADER = (
    "id", "category", "links", "range", "frequency", "latency",
    "spatial", "temporal", "paradigm",
)


def registry_report(
    fmt: str = "csv",
    registry: tuple[AppRequirement, ...] | None = None,
    thresholds: ClassifierThresholds = DEFAULT_THRESHOLDS,
) -> str:
    """All entries with their classification, as CSV, JSON, or a plain table."""
    registry = registry if registry is not None else _REGISTRY
    rows = []
    for app in registry:
        cls = classify(app, thresholds)
        rows.append((
            app.id,
            app.category.value,
            "+".join(str(link) for link in app.links),
            app.range.render(),
            app.frequency.render(),
            app.latency.render(),
            cls.demanding.spatial.value,
            cls.demanding.temporal.value,
            cls.demanding.paradigm.value,
        ))
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(REPORT_CSV_HEADER)
        writer.writerows(rows)
        return buf.getvalue()
    if fmt == "json":
        out = []
        for app in registry:
            cls = classify(app, thresholds)
            entry = app_to_dict(app)
            entry["classification"] = {
                "spatial": cls.demanding.spatial.value,
                "temporal": cls.demanding.temporal.value,
                "paradigm": cls.demanding.paradigm.value,
                "relaxed_spatial": cls.relaxed.spatial.value,
                "relaxed_temporal": cls.relaxed.temporal.value,
                "relaxed_paradigm": cls.relaxed.paradigm.value,
                "notes": list(cls.notes),
            }
            out.append(entry)
        return json.dumps({"applications": out}, indent=2, sort_keys=True) + "\n"
    if fmt == "table":
        widths = [max(len(str(row[i])) for row in rows + [REPORT_CSV_HEADER])
                  for i in range(len(REPORT_CSV_HEADER))]
        lines = ["  ".join(h.ljust(w) for h, w in zip(REPORT_CSV_HEADER, widths))]
        lines.extend("  ".join(str(c).ljust(w) for c, w in zip(row, widths)) for row in rows)
        return "\n".join(lines) + "\n"
    raise ValidationError(f"unknown report format {fmt!r} (expected csv, json, or table)")


def _fmt_num(v: float) -> str:
    return str(int(v)) if float(v).is_integer() else str(v)


def _fmt_m(v: float) -> str:
    return f"{_fmt_num(v)}m"


def _fmt_ms(v: float) -> str:
    return f"{_fmt_num(v)}ms"
