"""Clustering-based hybrid precoding for multi-user massive MIMO downlinks.

Fully-connected designs merge the 2K-chain exact decomposition of a
full-digital precoder by hierarchical agglomerative clustering; adaptively-
and sub-connected designs cluster antennas with a balanced modified K-means
whose centres are refitted by alternating optimization.
"""
__version__ = "0.1.0"

from .ahp import AoConfig, ao_center_update, ao_shp, mkm_ahp, round_robin_assign
from .channel import (
    ArrayGeometry,
    ChannelParams,
    design_combiner,
    design_combiners,
    equivalent_channel,
    generate_channels,
    quantize_phases,
    upa_response,
)
from .digital import DigitalMethod, full_digital_precoder, optimal_hybrid_decomposition
from .fhp import hac_cluster, hac_fhp, refine_baseband_effective, refine_baseband_ls, refinement_rate_bounds
from .metrics import PowerParams, power_consumption, power_efficiency, sinr_per_user, spectral_efficiency
from .structures import ClusterPartition, HybridPrecoder

__all__ = [
    "AoConfig", "ArrayGeometry", "ChannelParams", "ClusterPartition", "DigitalMethod", "HybridPrecoder",
    "PowerParams", "ao_center_update", "ao_shp", "design_combiner", "design_combiners", "equivalent_channel",
    "full_digital_precoder", "generate_channels", "hac_cluster", "hac_fhp", "mkm_ahp",
    "optimal_hybrid_decomposition", "power_consumption", "power_efficiency", "quantize_phases",
    "refine_baseband_effective", "refine_baseband_ls", "refinement_rate_bounds", "round_robin_assign",
    "sinr_per_user", "spectral_efficiency", "upa_response",
]
