"""Per-subject graph, basis, filter bank and spectrum, built once and cached."""

import logging
from collections.abc import Iterable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import torch

from freq_brain.brain_graph import BrainGraph, SpectralBasis, build_graph, eigendecompose, laplacian
from freq_brain.config.settings import GraphSettings, SpectralSettings
from freq_brain.encoders.base import Representation, as_tensor
from freq_brain.encoders.fgnn import FGNN
from freq_brain.encoders.tgnn import TGNN, normalized_adjacency
from freq_brain.enums import BandEnum, DomainEnum, TopologyEnum
from freq_brain.exceptions import ConfigError
from freq_brain.models import Dataset, SubjectRecord
from freq_brain.spectral import FilterBank, SpectralFeatures, build_filter_bank, gft, select_components

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class SubjectView:
    """Everything the encoders need for one subject; carries no label."""

    id: str
    graph: BrainGraph
    basis: SpectralBasis
    bank: FilterBank
    spectrum: SpectralFeatures
    propagation: torch.Tensor
    features: torch.Tensor
    eigenvectors: torch.Tensor
    _filtered: dict[tuple[frozenset[BandEnum], int], torch.Tensor] = field(default_factory=dict, repr=False)

    @property
    def n_rois(self) -> int:
        """Graph size N."""
        return self.graph.n_nodes

    @property
    def n_timepoints(self) -> int:
        """Feature length D."""
        return int(self.features.shape[1])

    def filtered(self, retained: Iterable[BandEnum], k: int) -> torch.Tensor:
        """Filtered spectrum for a band selection, cached per selection.

        Args:
            retained: Bands to keep.
            k: Feature-column budget.

        Returns:
            N x K tensor.
        """
        key = (frozenset(retained), k)
        if key not in self._filtered:
            self._filtered[key] = as_tensor(select_components(self.spectrum, self.bank, key[0], k).matrix)
        return self._filtered[key]

    def encode_time(self, tgnn: TGNN) -> Representation:
        """Z_T from the cached propagation matrix.

        Args:
            tgnn: Time-domain encoder.

        Returns:
            Time-domain representation.
        """
        return Representation(z=tgnn(self.propagation, self.features), domain=DomainEnum.TIME)

    def encode_frequency(self, fgnn: FGNN) -> Representation:
        """Z_F from the cached filtered spectrum.

        Args:
            fgnn: Frequency-domain encoder.

        Returns:
            Frequency-domain representation.
        """
        xf = self.filtered(fgnn.retained, fgnn.k)
        return Representation(z=fgnn(xf, self.eigenvectors), domain=DomainEnum.FREQUENCY)


SharedGraph = tuple[np.ndarray, SpectralBasis]


def shared_graph(ds: Dataset, graph_cfg: GraphSettings) -> SharedGraph | None:
    """Resolve the graph topology of a dataset.

    A synthetic dataset carries the graph its spectra were planted on; reading
    every subject in that one eigenbasis keeps band indices comparable across
    subjects. Datasets without a generator graph use per-subject correlation
    graphs.

    Args:
        ds: Dataset.
        graph_cfg: Graph construction settings.

    Returns:
        (adjacency, basis) shared by every subject, or None for correlation graphs.

    Raises:
        ConfigError: If a shared topology is requested for a dataset without one.
    """
    if graph_cfg.topology == TopologyEnum.CORRELATION:
        return None
    if ds.base_adjacency is None:
        if graph_cfg.topology == TopologyEnum.SHARED:
            raise ConfigError("graph.topology=shared needs a dataset that carries its generator graph")
        return None
    adjacency = np.asarray(ds.base_adjacency, dtype=np.float64)
    return adjacency, eigendecompose(laplacian(adjacency), solver=graph_cfg.solver)


def build_view(
    record: SubjectRecord,
    graph_cfg: GraphSettings,
    spectral_cfg: SpectralSettings,
    shared: SharedGraph | None = None,
) -> SubjectView:
    """Construct G_T, the spectral basis, the filter bank and G_F for one subject.

    Args:
        record: Subject record.
        graph_cfg: Graph construction settings.
        spectral_cfg: Filter bank settings.
        shared: Graph and basis common to all subjects; None builds the subject's correlation graph.

    Returns:
        SubjectView of the record.
    """
    if shared is None:
        graph = build_graph(record.series, density=graph_cfg.density)
        basis = eigendecompose(laplacian(graph), solver=graph_cfg.solver)
    else:
        adjacency, basis = shared
        graph = BrainGraph(adjacency=adjacency, features_time=record.series)
    bank = build_filter_bank(basis, spectral_cfg.p_low, spectral_cfg.p_high)
    return SubjectView(
        id=record.id,
        graph=graph,
        basis=basis,
        bank=bank,
        spectrum=gft(graph.features_time, basis),
        propagation=as_tensor(normalized_adjacency(graph.adjacency)),
        features=as_tensor(graph.features_time),
        eigenvectors=as_tensor(basis.eigenvectors),
    )


def prepare_subjects(
    ds: Dataset,
    graph_cfg: GraphSettings | None = None,
    spectral_cfg: SpectralSettings | None = None,
    workers: int = 1,
) -> list[SubjectView]:
    """Build every subject's view, optionally on several threads.

    Args:
        ds: Dataset.
        graph_cfg: Graph construction settings.
        spectral_cfg: Filter bank settings.
        workers: Thread count; results always follow manifest order.

    Returns:
        Views in manifest order.

    Raises:
        ConfigError: If a shared topology is requested for a dataset without one.
    """
    graph_cfg = graph_cfg or GraphSettings()
    spectral_cfg = spectral_cfg or SpectralSettings()
    shared = shared_graph(ds, graph_cfg)
    if workers <= 1:
        views = [build_view(record, graph_cfg, spectral_cfg, shared) for record in ds.records]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            views = list(pool.map(lambda record: build_view(record, graph_cfg, spectral_cfg, shared), ds.records))
    topology = TopologyEnum.CORRELATION if shared is None else TopologyEnum.SHARED
    logger.info("Prepared %d subject graphs (%s topology, density=%.2f, solver=%s)", len(views), topology, graph_cfg.density, graph_cfg.solver)
    return views
