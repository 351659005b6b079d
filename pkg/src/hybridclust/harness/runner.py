"""Seeded Monte Carlo execution of a scenario."""
import datetime as _dt
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .. import __version__, kernels
from ..ahp import mkm_ahp, ao_shp
from ..channel import ArrayGeometry, ChannelParams, design_combiners, generate_channels
from ..digital import DigitalMethod, full_digital_precoder
from ..errors import HybridClustError
from ..fhp import hac_fhp
from ..metrics import power_consumption, power_efficiency, rate_for_precoder
from .config import BASE_SCHEMES, ScenarioConfig, config_from_dict, split_scheme

log = logging.getLogger(__name__)

STRUCTURE_OF = {"fhp_hac": "full", "mkm_ahp": "adaptive", "ao_shp": "sub", "full_digital": "digital"}
_CHANNEL_STREAM = 0
_SCHEME_STREAM = 1


class TrialFailed(HybridClustError):
    def __init__(self, trial, seed, cause):
        self.trial = trial
        self.seed = seed
        super().__init__(f"trial {trial} (master_seed={seed}) failed: {cause!r}")


@dataclass(frozen=True)
class MetricsRecord:
    scenario: str
    scheme: str
    snr_db: float
    n_rf: int
    q_bits: int | None
    mean_R: float
    power_watts: float
    eta: float
    mean_outer_iters: float
    mean_inner_iters: float
    trials: int
    seed: int
    raw_R: tuple | None = None

    def to_dict(self):
        d = dict(self.__dict__)
        d["raw_R"] = None if self.raw_R is None else list(self.raw_R)
        return d

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        if d.get("raw_R") is not None:
            d["raw_R"] = tuple(d["raw_R"])
        return cls(**d)


@dataclass
class RunResult:
    config: ScenarioConfig
    records: list
    provenance: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "config": self.config.to_dict(),
            "records": [r.to_dict() for r in self.records],
            "provenance": dict(self.provenance),
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            config_from_dict(d["config"]),
            [MetricsRecord.from_dict(r) for r in d["records"]],
            dict(d.get("provenance", {})),
        )


@dataclass
class TrialOutcome:
    """Per-trial values keyed by ``(scheme, snr_db, n_rf, q_bits)``: ``(R, outer, inner)``."""

    trial: int
    channel_digest: str
    values: dict


def trial_seed_sequence(master_seed, trial, *stream):
    """Seed for one (trial, stream); depends only on its arguments."""
    return np.random.SeedSequence(entropy=int(master_seed), spawn_key=(int(trial),) + tuple(int(s) for s in stream))


def trial_rng(master_seed, trial, *stream):
    return np.random.default_rng(trial_seed_sequence(master_seed, trial, *stream))


def channel_params(cfg):
    bs = ArrayGeometry(cfg.bs_array.w, cfg.bs_array.v, cfg.spacing_ratio)
    ue = ArrayGeometry(cfg.user_array.w, cfg.user_array.v, cfg.spacing_ratio)
    ch = cfg.channel
    return ChannelParams(
        bs,
        (ue,) * cfg.users,
        ch.clusters,
        ch.paths,
        float(np.deg2rad(ch.angular_spread_deg)),
        ch.offset_law,
        ch.spread_on,
    )


def grid_keys(cfg):
    """Record keys in output order."""
    return [
        (scheme, snr, n_rf, q)
        for q in cfg.quantization.bits
        for n_rf in cfg.n_rf
        for scheme in cfg.schemes
        for snr in cfg.snr_db
    ]


def _fhp_refinement(cfg, variant, n_rf):
    choice = variant or cfg.fhp.refinement
    if choice == "auto":
        return "effective" if n_rf <= cfg.fhp.threshold else "ls"
    return choice


def _design(cfg, scheme, n_rf, q_prec, h_eq, f_opt, method, sigma2, trial):
    """Return ``(F, outer, inner)`` for one scheme at one grid point."""
    base, variant = split_scheme(scheme)
    if base == "full_digital":
        return f_opt, 0.0, 0.0
    if base == "fhp_hac":
        refinement = _fhp_refinement(cfg, variant, n_rf)
        p = hac_fhp(f_opt, n_rf, refinement, h_eq, method, 1.0, sigma2, q_bits=q_prec)
        return p.F, 0.0, 0.0
    ao_cfg = cfg.ao
    if variant and variant != ao_cfg.init_mode:
        ao_cfg = replace(ao_cfg, init_mode=variant)
    rng = trial_rng(cfg.master_seed, trial, _SCHEME_STREAM, BASE_SCHEMES.index(base), n_rf)
    if base == "mkm_ahp":
        res = mkm_ahp(f_opt, n_rf, ao_cfg, rng, h_eq, method, 1.0, sigma2, q_bits=q_prec)
        return res.precoder.F, float(res.outer_iterations), res.mean_inner_iterations
    res = ao_shp(f_opt, n_rf, ao_cfg, h_eq, method, 1.0, sigma2, rng=rng, q_bits=q_prec)
    return res.precoder.F, 1.0, float(res.inner_iterations)


def run_trial(cfg, trial):
    """Run every grid point of one trial on a single shared channel realization."""
    realization = generate_channels(channel_params(cfg), trial_rng(cfg.master_seed, trial, _CHANNEL_STREAM))
    digest = realization.digest()
    method = DigitalMethod(cfg.digital_method)
    snr_dependent = method.tag == "RZF"
    values = {}
    for q in cfg.quantization.bits:
        q_comb = q if cfg.quantization.combiner else None
        q_prec = q if cfg.quantization.precoder else None
        h_eq = design_combiners(realization, q_comb).H_eq
        cache = {}
        for snr in cfg.snr_db:
            sigma2 = 10.0 ** (-snr / 10.0)
            noise_key = sigma2 if snr_dependent else None
            if ("opt", noise_key) not in cache:
                cache[("opt", noise_key)] = full_digital_precoder(h_eq, method, 1.0, sigma2)
            f_opt = cache[("opt", noise_key)]
            for n_rf in cfg.n_rf:
                for scheme in cfg.schemes:
                    key = (scheme, n_rf, noise_key)
                    if key not in cache:
                        cache[key] = _design(cfg, scheme, n_rf, q_prec, h_eq, f_opt, method, sigma2, trial)
                    f, outer, inner = cache[key]
                    values[(scheme, snr, n_rf, q)] = (rate_for_precoder(h_eq, f, 1.0, sigma2), outer, inner)
    return TrialOutcome(trial, digest, values)


def _safe_trial(cfg, trial):
    try:
        return run_trial(cfg, trial)
    except Exception as exc:  # noqa: BLE001 - reported with the trial context
        raise TrialFailed(trial, cfg.master_seed, exc) from exc


def _run_chunk(cfg_dict, trials):
    cfg = config_from_dict(cfg_dict)
    return [_safe_trial(cfg, t) for t in trials]


def iter_trials(cfg, threads=1):
    """Yield ``TrialOutcome`` objects in trial order."""
    if threads <= 1:
        for t in range(cfg.trials):
            yield _safe_trial(cfg, t)
        return
    chunks = [list(range(cfg.trials))[i::threads] for i in range(threads)]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(_run_chunk, [cfg.to_dict()] * len(chunks), chunks))
    by_index = {o.trial: o for chunk in results for o in chunk}
    for t in range(cfg.trials):
        yield by_index[t]


def _power(cfg, scheme, n_rf):
    structure = STRUCTURE_OF[split_scheme(scheme)[0]]
    chains = cfg.n_tx if structure == "digital" else n_rf
    return structure, chains, power_consumption(structure, cfg.n_tx, chains, cfg.power)


def aggregate(cfg, outcomes):
    keys = grid_keys(cfg)
    sums = {k: [0.0, 0.0, 0.0] for k in keys}
    raw = {k: [] for k in keys} if cfg.keep_raw else None
    n = 0
    for outcome in outcomes:  # fixed trial order keeps the reduction deterministic
        n += 1
        for k in keys:
            r, outer, inner = outcome.values[k]
            acc = sums[k]
            acc[0] += r
            acc[1] += outer
            acc[2] += inner
            if raw is not None:
                raw[k].append(r)
    records = []
    for k in keys:
        scheme, snr, n_rf, q = k
        _, chains, watts = _power(cfg, scheme, n_rf)
        mean_r = sums[k][0] / n
        records.append(MetricsRecord(
            scenario=cfg.name,
            scheme=scheme,
            snr_db=float(snr),
            n_rf=int(chains),
            q_bits=q,
            mean_R=mean_r,
            power_watts=watts,
            eta=power_efficiency(mean_r, watts),
            mean_outer_iters=sums[k][1] / n,
            mean_inner_iters=sums[k][2] / n,
            trials=n,
            seed=cfg.master_seed,
            raw_R=None if raw is None else tuple(raw[k]),
        ))
    return records


def run_scenario(cfg, threads=1):
    """Run all trials of ``cfg`` and aggregate one record per grid point."""
    log.info("running %s: %d trials, backend=%s", cfg.name, cfg.trials, kernels.backend_name())
    records = aggregate(cfg, iter_trials(cfg, threads))
    provenance = {
        "library": "hybridclust",
        "version": __version__,
        "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
        "master_seed": cfg.master_seed,
        "kernel_backend": kernels.backend_name(),
        "snr_convention": "P = 1, sigma2 = 10^(-SNR_dB/10)",
    }
    if any(split_scheme(s)[0] == "full_digital" for s in cfg.schemes):
        provenance["extrapolated"] = ["full_digital power model: P_com + N_t (P_RF + P_PA)"]
    return RunResult(cfg, records, provenance)
