from .decompose_subgraph.decompose_subgraph import DecomposeSubgraph
from .diagnostics_subgraph.diagnostics_subgraph import DiagnosticsSubgraph
from .dilation_example_subgraph.dilation_example_subgraph import DilationExampleSubgraph
from .moments_subgraph.moments_subgraph import MomentsSubgraph
from .oracle_subgraph.oracle_subgraph import OracleSubgraph

__all__ = [
    "DecomposeSubgraph",
    "DiagnosticsSubgraph",
    "DilationExampleSubgraph",
    "MomentsSubgraph",
    "OracleSubgraph",
]
