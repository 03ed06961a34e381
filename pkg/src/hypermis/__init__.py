"""Hypergraph maximal-independent-set toolkit.

Core pieces: the :class:`~hypermis.core.Hypergraph` value type with its
degree machinery, a random-marking round solver (:mod:`hypermis.bl`), a
sampling solver that reduces dimension before marking
(:mod:`hypermis.sbl`), sequential baselines and the exhaustive oracle
(:mod:`hypermis.baseline`), and an analysis workbench for degree
potentials, tail-bound constants, and Monte Carlo experiments
(:mod:`hypermis.analysis`).
"""

from .baseline import enumerate_all_mis, greedy_mis
from .bl import BlConfig, run_bl
from .core import (
    Hypergraph,
    degree_profile,
    induce,
    is_independent,
    is_maximal_independent,
    load_hg,
    neighborhood,
    normalize,
    parse_hg,
    save_hg,
)
from .generate import GenSpec, gen
from .sbl import SblConfig, derive_params, run_sbl

__all__ = [
    "Hypergraph",
    "normalize",
    "induce",
    "neighborhood",
    "degree_profile",
    "is_independent",
    "is_maximal_independent",
    "parse_hg",
    "load_hg",
    "save_hg",
    "greedy_mis",
    "enumerate_all_mis",
    "BlConfig",
    "run_bl",
    "SblConfig",
    "derive_params",
    "run_sbl",
    "GenSpec",
    "gen",
]
