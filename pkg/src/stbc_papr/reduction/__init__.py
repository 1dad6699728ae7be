"""PAPR-reduction techniques: clipping and filtering, SLM and PTS."""

from .clipping import ClipConfig, clip_and_filter, clip_signal, filter_out_of_band, out_of_band_mask, rms
from .pts import PtsPlan, apply_phases, partition_subblocks, pts_invert, pts_optimize, subblock_of_symbol
from .sideinfo import CLIP_SIDE_INFO, METHODS, NO_SIDE_INFO, SideInfo
from .slm import DEFAULT_ALPHABET, SlmCodebook, build_slm_codebook, slm_invert, slm_select

__all__ = [
    "ClipConfig", "clip_and_filter", "clip_signal", "filter_out_of_band", "out_of_band_mask", "rms",
    "PtsPlan", "apply_phases", "partition_subblocks", "pts_invert", "pts_optimize", "subblock_of_symbol",
    "CLIP_SIDE_INFO", "METHODS", "NO_SIDE_INFO", "SideInfo",
    "DEFAULT_ALPHABET", "SlmCodebook", "build_slm_codebook", "slm_invert", "slm_select",
]
