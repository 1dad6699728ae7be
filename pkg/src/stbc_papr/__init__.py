"""STBC MIMO-OFDM baseband simulation with clipping/filtering, SLM and PTS PAPR reduction."""

from .config import SimConfig, load_config
from .errors import (
    ConfigurationError,
    DegenerateChannelError,
    InputError,
    SideInfoError,
    StbcPaprError,
    UndefinedPaprError,
)
from .harness import ResultSet, run_ccdf_experiment, write_results
from .metrics import CcdfCurve, PaprValue, compute_papr, empirical_ccdf, mimo_papr, theoretical_ccdf

__version__ = "0.1.0"
