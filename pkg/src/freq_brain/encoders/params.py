"""Parameter initialization and checkpoint files for both encoders."""

import json
import logging
from collections.abc import Iterable
from pathlib import Path
from typing import Any

import torch

from freq_brain.encoders.base import glorot_uniform_
from freq_brain.encoders.fgnn import FGNN, S0_CONVENTION
from freq_brain.encoders.tgnn import TGNN
from freq_brain.enums import BandEnum
from freq_brain.spectral import DEFAULT_RETAINED

logger = logging.getLogger(__name__)

CHECKPOINT_FORMAT_VERSION = 1


def init_params(
    n_rois: int,
    d: int,
    k: int,
    seed: int,
    gcn_layers: int = 2,
    fgo_layers: int = 3,
    gcn_hidden: int | None = None,
    mlp_hidden: int | None = None,
    retained: Iterable[BandEnum | str] = DEFAULT_RETAINED,
) -> tuple[TGNN, FGNN]:
    """Glorot-uniform weights and zero biases for both encoders.

    Args:
        n_rois: Graph size N (the operators are N-invariant; only validated).
        d: Time points D, the width of Z_T and Z_F.
        k: Feature-column budget K of the FGO stack.
        seed: Initialization seed.
        gcn_layers: GCN depth.
        fgo_layers: Number of FGO operators P.
        gcn_hidden: GCN hidden width; defaults to D.
        mlp_hidden: MLP hidden width; defaults to max(K, D).
        retained: Bands kept by component selection.

    Returns:
        Tuple of (TGNN, FGNN).

    Raises:
        ValueError: If a dimension is not positive.
    """
    if min(n_rois, d, k) < 1:
        raise ValueError(f"dimensions must be positive, got n_rois={n_rois}, d={d}, k={k}")
    width = gcn_hidden or d
    tgnn = TGNN([d] + [width] * (gcn_layers - 1) + [d])
    fgnn = FGNN(k, d, layers=fgo_layers, hidden=mlp_hidden, retained=retained)

    generator = torch.Generator().manual_seed(seed)
    for weight in tgnn.weights:
        glorot_uniform_(weight, weight.shape[0], weight.shape[1], generator)
    for operator in fgnn.operators:
        glorot_uniform_(operator, k, k, generator)
    for layer in (fgnn.mlp[0], fgnn.mlp[2]):
        glorot_uniform_(layer.weight, layer.in_features, layer.out_features, generator)
        with torch.no_grad():
            layer.bias.zero_()
    return tgnn, fgnn


def _header(tgnn: TGNN, fgnn: FGNN, seed: int) -> dict[str, Any]:
    shapes = {f"tgnn.{name}": list(value.shape) for name, value in tgnn.state_dict().items()}
    shapes.update({f"fgnn.{name}": list(value.shape) for name, value in fgnn.state_dict().items()})
    return {
        "format_version": CHECKPOINT_FORMAT_VERSION,
        "convention": S0_CONVENTION,
        "seed": seed,
        "tgnn_dims": tgnn.dims,
        "fgnn": {
            "k": fgnn.k,
            "d": fgnn.d,
            "layers": fgnn.layer_count,
            "hidden": fgnn.mlp[0].out_features,
            "retained": sorted(str(band) for band in fgnn.retained),
        },
        "shapes": shapes,
    }


def save_checkpoint(path: Path | str, tgnn: TGNN, fgnn: FGNN, seed: int) -> Path:
    """Write both encoders plus a JSON text header next to them.

    Args:
        path: Target ``.pt`` file.
        tgnn: Time-domain encoder.
        fgnn: Frequency-domain encoder.
        seed: Seed the parameters were initialized with.

    Returns:
        Path of the written header file.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    header = _header(tgnn, fgnn, seed)
    torch.save({"header": header, "tgnn": tgnn.state_dict(), "fgnn": fgnn.state_dict()}, path)
    header_path = path.with_suffix(".json")
    header_path.write_text(json.dumps(header, indent=2, sort_keys=True) + "\n")
    logger.debug("Saved checkpoint %s", path)
    return header_path


def load_checkpoint(path: Path | str) -> tuple[TGNN, FGNN, dict[str, Any]]:
    """Rebuild both encoders from a checkpoint.

    Args:
        path: ``.pt`` file written by save_checkpoint.

    Returns:
        Tuple of (TGNN, FGNN, header).

    Raises:
        ValueError: If the file uses another format version or convention.
    """
    payload = torch.load(Path(path), weights_only=True)
    header = payload["header"]
    if header.get("format_version") != CHECKPOINT_FORMAT_VERSION or header.get("convention") != S0_CONVENTION:
        raise ValueError(f"unsupported checkpoint header: {header.get('format_version')}/{header.get('convention')}")
    spec = header["fgnn"]
    tgnn = TGNN(header["tgnn_dims"])
    fgnn = FGNN(spec["k"], spec["d"], layers=spec["layers"], hidden=spec["hidden"], retained=spec["retained"])
    tgnn.load_state_dict(payload["tgnn"])
    fgnn.load_state_dict(payload["fgnn"])
    return tgnn, fgnn, header
