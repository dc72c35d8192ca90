"""Time- and frequency-domain encoders."""

from freq_brain.encoders.base import Representation, fuse
from freq_brain.encoders.fgnn import FGNN, fgnn_forward, fgo_forward
from freq_brain.encoders.params import init_params, load_checkpoint, save_checkpoint
from freq_brain.encoders.tgnn import TGNN, tgnn_forward

__all__ = [
    "Representation",
    "fuse",
    "FGNN",
    "fgnn_forward",
    "fgo_forward",
    "init_params",
    "load_checkpoint",
    "save_checkpoint",
    "TGNN",
    "tgnn_forward",
]
