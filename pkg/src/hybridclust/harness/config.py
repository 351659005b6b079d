"""Scenario configuration: YAML document <-> validated ``ScenarioConfig``."""
from dataclasses import asdict, dataclass, fields, replace

import yaml

from ..ahp import INIT_MODES, AoConfig
from ..digital import METHODS
from ..errors import ConfigError, InvalidInput
from ..metrics import PowerParams

BASE_SCHEMES = ("fhp_hac", "mkm_ahp", "ao_shp", "full_digital")
SCHEME_VARIANTS = {
    "fhp_hac": ("auto", "ls", "effective"),
    "mkm_ahp": ("specific", "random"),
    "ao_shp": ("specific", "random"),
    "full_digital": (),
}
DEFAULT_SNR_DB = (-30.0, -25.0, -20.0, -15.0, -10.0, -5.0, 0.0)


@dataclass(frozen=True)
class ArraySpec:
    w: int = 8
    v: int = 8

    @property
    def size(self):
        return self.w * self.v


@dataclass(frozen=True)
class ChannelSpec:
    clusters: int = 5
    paths: int = 10
    angular_spread_deg: float = 10.0
    offset_law: str = "uniform"
    spread_on: str = "both"


@dataclass(frozen=True)
class QuantizationSpec:
    """``bits`` is the swept grid; ``None`` in it means unquantized phase shifters."""

    bits: tuple = (None,)
    combiner: bool = True
    precoder: bool = True


@dataclass(frozen=True)
class FhpSpec:
    """``refinement="auto"`` picks the effective-channel refit for ``N_RF <= threshold``, else LS."""

    refinement: str = "auto"
    threshold: int = 10


@dataclass(frozen=True)
class ScenarioConfig:
    name: str = "default"
    bs_array: ArraySpec = ArraySpec(8, 8)
    users: int = 8
    user_array: ArraySpec = ArraySpec(2, 2)
    spacing_ratio: float = 0.5
    channel: ChannelSpec = ChannelSpec()
    n_rf: tuple = (8,)
    snr_db: tuple = DEFAULT_SNR_DB
    quantization: QuantizationSpec = QuantizationSpec()
    trials: int = 1000
    master_seed: int = 20200101
    schemes: tuple = ("fhp_hac", "mkm_ahp", "ao_shp", "full_digital")
    digital_method: str = "ZF"
    fhp: FhpSpec = FhpSpec()
    ao: AoConfig = AoConfig()
    power: PowerParams = PowerParams()
    keep_raw: bool = False

    @property
    def n_tx(self):
        return self.bs_array.size

    def with_overrides(self, **kw):
        return replace(self, **kw)

    def to_dict(self):
        d = asdict(self)
        d["n_rf"] = list(self.n_rf)
        d["snr_db"] = list(self.snr_db)
        d["schemes"] = list(self.schemes)
        d["quantization"]["bits"] = list(self.quantization.bits)
        return d


def split_scheme(label):
    base, _, variant = label.partition(":")
    return base, variant


# --- parsing -----------------------------------------------------------------

def _path(parent, key):
    return f"{parent}.{key}" if parent else str(key)


def _expect_mapping(value, where):
    if value is None:
        return {}
    if not isinstance(value, dict):
        raise ConfigError(where, f"expected a mapping, got {type(value).__name__}")
    return value


def _check_keys(doc, allowed, where):
    unknown = sorted(set(doc) - set(allowed))
    if unknown:
        raise ConfigError(_path(where, unknown[0]), "unknown field")


def _int(value, where, minimum=None):
    if isinstance(value, bool) or not isinstance(value, (int, float, str)):
        raise ConfigError(where, f"expected an integer, got {value!r}")
    try:
        out = int(value)
    except (TypeError, ValueError):
        raise ConfigError(where, f"expected an integer, got {value!r}") from None
    if isinstance(value, float) and value != out:
        raise ConfigError(where, f"expected an integer, got {value!r}")
    if minimum is not None and out < minimum:
        raise ConfigError(where, f"must be >= {minimum}, got {out}")
    return out


def _float(value, where, positive=False, nonnegative=False):
    if isinstance(value, bool):
        raise ConfigError(where, f"expected a number, got {value!r}")
    try:
        out = float(value)  # also accepts '1e-4', which YAML 1.1 reads as a string
    except (TypeError, ValueError):
        raise ConfigError(where, f"expected a number, got {value!r}") from None
    if out != out or out in (float("inf"), float("-inf")):
        raise ConfigError(where, "must be finite")
    if positive and not out > 0:
        raise ConfigError(where, f"must be positive, got {out}")
    if nonnegative and out < 0:
        raise ConfigError(where, f"must be nonnegative, got {out}")
    return out


def _bool(value, where):
    if not isinstance(value, bool):
        raise ConfigError(where, f"expected true/false, got {value!r}")
    return value


def _choice(value, choices, where, upper=False):
    s = str(value).upper() if upper else str(value)
    if s not in choices:
        raise ConfigError(where, f"must be one of {list(choices)}, got {value!r}")
    return s


def _list(value, where):
    if isinstance(value, (list, tuple)):
        if not value:
            raise ConfigError(where, "must not be empty")
        return list(value)
    return [value]


def _parse_dataclass(cls, doc, where, converters):
    doc = _expect_mapping(doc, where)
    _check_keys(doc, [f.name for f in fields(cls)], where)
    defaults = cls()
    kw = {}
    for f in fields(cls):
        if f.name in doc:
            kw[f.name] = converters[f.name](doc[f.name], _path(where, f.name))
        else:
            kw[f.name] = getattr(defaults, f.name)
    return kw


def _parse_array(doc, where, default):
    doc = _expect_mapping(doc, where)
    _check_keys(doc, ("w", "v"), where)
    return ArraySpec(
        _int(doc.get("w", default.w), _path(where, "w"), 1),
        _int(doc.get("v", default.v), _path(where, "v"), 1),
    )


def _parse_bits(value, where):
    out = []
    for i, b in enumerate(_list(value, where)):
        if b is None or (isinstance(b, str) and b.lower() in ("none", "null", "unquantized")):
            out.append(None)
        else:
            out.append(_int(b, f"{where}[{i}]", 1))
    return tuple(out)


def _parse_schemes(value, where):
    out = []
    for i, s in enumerate(_list(value, where)):
        label = str(s)
        base, variant = split_scheme(label)
        if base not in BASE_SCHEMES:
            raise ConfigError(f"{where}[{i}]", f"unknown scheme {label!r}; expected one of {list(BASE_SCHEMES)}")
        if variant and variant not in SCHEME_VARIANTS[base]:
            raise ConfigError(f"{where}[{i}]", f"unknown variant {variant!r} for {base}")
        if label in out:
            raise ConfigError(f"{where}[{i}]", f"duplicate scheme {label!r}")
        out.append(label)
    return tuple(out)


def config_from_dict(doc):
    """Validate a parsed document and fill in defaults."""
    doc = _expect_mapping(doc, "")
    _check_keys(doc, [f.name for f in fields(ScenarioConfig)], "")
    d = ScenarioConfig()
    kw = {}
    kw["name"] = str(doc.get("name", d.name))
    kw["bs_array"] = _parse_array(doc.get("bs_array"), "bs_array", d.bs_array)
    kw["users"] = _int(doc.get("users", d.users), "users", 1)
    kw["user_array"] = _parse_array(doc.get("user_array"), "user_array", d.user_array)
    kw["spacing_ratio"] = _float(doc.get("spacing_ratio", d.spacing_ratio), "spacing_ratio", positive=True)
    kw["channel"] = ChannelSpec(**_parse_dataclass(ChannelSpec, doc.get("channel"), "channel", {
        "clusters": lambda v, w: _int(v, w, 1),
        "paths": lambda v, w: _int(v, w, 1),
        "angular_spread_deg": lambda v, w: _float(v, w, nonnegative=True),
        "offset_law": lambda v, w: _choice(v, ("uniform", "laplacian"), w),
        "spread_on": lambda v, w: _choice(v, ("both", "azimuth", "elevation"), w),
    }))
    kw["n_rf"] = tuple(
        _int(v, f"n_rf[{i}]", 1) for i, v in enumerate(_list(doc.get("n_rf", list(d.n_rf)), "n_rf"))
    )
    kw["snr_db"] = tuple(
        _float(v, f"snr_db[{i}]") for i, v in enumerate(_list(doc.get("snr_db", list(d.snr_db)), "snr_db"))
    )
    kw["quantization"] = QuantizationSpec(**_parse_dataclass(QuantizationSpec, doc.get("quantization"), "quantization", {
        "bits": _parse_bits,
        "combiner": _bool,
        "precoder": _bool,
    }))
    kw["trials"] = _int(doc.get("trials", d.trials), "trials", 1)
    kw["master_seed"] = _int(doc.get("master_seed", d.master_seed), "master_seed", 0)
    if kw["master_seed"] >= 2 ** 64:
        raise ConfigError("master_seed", "must fit in 64 bits")
    kw["schemes"] = _parse_schemes(doc.get("schemes", list(d.schemes)), "schemes")
    kw["digital_method"] = _choice(doc.get("digital_method", d.digital_method), METHODS, "digital_method", upper=True)
    kw["fhp"] = FhpSpec(**_parse_dataclass(FhpSpec, doc.get("fhp"), "fhp", {
        "refinement": lambda v, w: _choice(v, ("auto", "ls", "effective"), w),
        "threshold": lambda v, w: _int(v, w, 0),
    }))
    ao_kw = _parse_dataclass(AoConfig, doc.get("ao"), "ao", {
        "epsilon": lambda v, w: _float(v, w, positive=True),
        "max_inner_iters": lambda v, w: _int(v, w, 1),
        "max_outer_iters": lambda v, w: _int(v, w, 1),
        "init_mode": lambda v, w: _choice(v, INIT_MODES, w),
        "warm_start": _bool,
    })
    kw["ao"] = AoConfig(**ao_kw)
    power_kw = _parse_dataclass(PowerParams, doc.get("power"), "power", {
        name: (lambda v, w: _float(v, w, nonnegative=True)) for name in ("P_com", "P_RF", "P_PA", "P_APS", "P_SW")
    })
    kw["power"] = PowerParams(**power_kw)
    kw["keep_raw"] = _bool(doc.get("keep_raw", d.keep_raw), "keep_raw")
    cfg = ScenarioConfig(**kw)
    validate(cfg)
    return cfg


def validate(cfg):
    """Cross-field checks that a single field parser cannot see."""
    n_t = cfg.n_tx
    k = cfg.users
    if k > n_t:
        raise ConfigError("users", f"{k} users exceed the {n_t} transmit antennas")
    bases = {split_scheme(s)[0] for s in cfg.schemes}
    hybrid = bases & {"fhp_hac", "mkm_ahp", "ao_shp"}
    for i, n_rf in enumerate(cfg.n_rf):
        if hybrid and n_rf < k:
            raise ConfigError(f"n_rf[{i}]", f"N_RF={n_rf} is below the user count K={k}")
        if bases & {"mkm_ahp", "ao_shp"} and n_t % n_rf:
            raise ConfigError(f"n_rf[{i}]", f"N_t={n_t} is not divisible by N_RF={n_rf}")
    if len(set(cfg.n_rf)) != len(cfg.n_rf):
        raise ConfigError("n_rf", "duplicate entries")
    if len(set(cfg.snr_db)) != len(cfg.snr_db):
        raise ConfigError("snr_db", "duplicate entries")
    if len(set(cfg.quantization.bits)) != len(cfg.quantization.bits):
        raise ConfigError("quantization.bits", "duplicate entries")
    return cfg


def parse_config(text):
    """Parse a YAML scenario document (empty text gives the default scenario)."""
    try:
        doc = yaml.safe_load(text) if text else None
    except yaml.YAMLError as exc:
        raise ConfigError("", f"malformed document: {exc}") from None
    try:
        return config_from_dict(doc)
    except InvalidInput as exc:  # raised by nested dataclass constructors
        raise ConfigError("", str(exc)) from None


def serialize_config(cfg):
    return yaml.safe_dump(cfg.to_dict(), sort_keys=False)


def load_config(path):
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())
