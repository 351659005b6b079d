"""Built-in scenarios reproducing the simulation figures.

Each named scenario is a list of configuration documents (variants); they are
run one after the other and their records concatenated.
"""
from .config import config_from_dict

HYBRID = ["fhp_hac", "mkm_ahp", "ao_shp"]
SNR_WIDE = [-30, -25, -20, -15, -10, -5, 0, 5, 10]
SNR_LOW = [-30, -25, -20, -15, -10, -5, 0]

_SCENARIOS = {
    "fig2": (
        "Spectral efficiency vs SNR, N_t = 8x8, K = N_RF = 8, unquantized.",
        [{"name": "fig2", "schemes": HYBRID + ["full_digital"], "snr_db": SNR_WIDE, "n_rf": [8]}],
    ),
    "fig3": (
        "Spectral efficiency vs phase-shifter bits Q at SNR = -5 dB.",
        [{
            "name": "fig3",
            "schemes": HYBRID,
            "snr_db": [-5],
            "quantization": {"bits": [None, 1, 2, 3, 4, 5], "combiner": True, "precoder": True},
        }],
    ),
    "fig4": (
        "MKM-based AHP with MF / ZF / RZF targets, N_t = 8x8 and 8x32.",
        [
            {
                "name": f"fig4-{method.lower()}-8x{v}",
                "bs_array": {"w": 8, "v": v},
                "schemes": ["mkm_ahp"],
                "digital_method": method,
                "snr_db": SNR_WIDE,
            }
            for v in (8, 32)
            for method in ("MF", "ZF", "RZF")
        ],
    ),
    "fig5": (
        "HAC-based FHP vs N_RF with LS and effective-channel ZF refits at SNR = -10 dB.",
        [{
            "name": "fig5",
            "schemes": ["fhp_hac:ls", "fhp_hac:effective", "full_digital"],
            "snr_db": [-10],
            "n_rf": [8, 9, 10, 11, 12, 13, 14, 15, 16],
        }],
    ),
    "fig6": (
        "Power efficiency vs N_RF at SNR = -10 dB.",
        [{"name": "fig6", "schemes": HYBRID, "snr_db": [-10], "n_rf": [8, 16, 32, 64]}],
    ),
    "fig7": (
        "Specific vs random AO initialization: spectral efficiency and its distribution.",
        [{
            "name": "fig7",
            "schemes": ["mkm_ahp:specific", "mkm_ahp:random", "ao_shp:specific", "ao_shp:random"],
            "snr_db": SNR_LOW,
            "keep_raw": True,
        }],
    ),
    "fig8": (
        "AO iteration counts vs SNR, and SHP spectral efficiency vs iteration cap at -5 dB.",
        [{
            "name": "fig8a",
            "schemes": ["mkm_ahp:specific", "mkm_ahp:random", "ao_shp:specific", "ao_shp:random"],
            "snr_db": SNR_LOW,
        }] + [
            {
                "name": f"fig8b-iters{cap}",
                "schemes": ["ao_shp:specific", "ao_shp:random"],
                "snr_db": [-5],
                "ao": {"max_inner_iters": cap},
            }
            for cap in (1, 2, 3, 4, 6, 8, 12, 16, 24)
        ],
    ),
}


def names():
    return sorted(_SCENARIOS)


def describe(name):
    return _SCENARIOS[name][0]


def documents(name):
    try:
        return [dict(doc) for doc in _SCENARIOS[name][1]]
    except KeyError:
        raise KeyError(f"unknown scenario {name!r}; available: {', '.join(names())}") from None


def configs(name, **overrides):
    """Validated configs for a named scenario; ``overrides`` are top-level keys."""
    return [config_from_dict({**doc, **overrides}) for doc in documents(name)]
