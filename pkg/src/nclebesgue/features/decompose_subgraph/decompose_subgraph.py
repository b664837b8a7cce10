import json
import logging
from typing import Any

from langgraph.graph import END, START, StateGraph
from typing_extensions import TypedDict

from nclebesgue.core.base import BaseSubgraph
from nclebesgue.features.decompose_subgraph.input_data import decompose_subgraph_input_data
from nclebesgue.features.decompose_subgraph.nodes.export_decomposition import (
    export_decomposition,
)
from nclebesgue.features.decompose_subgraph.nodes.run_decomposition import run_decomposition
from nclebesgue.features.nodes.load_measure import load_measure
from nclebesgue.features.nodes.write_report import write_report
from nclebesgue.services.ncmeasure import add
from nclebesgue.types.measure import MomentTable
from nclebesgue.types.reports import ClassificationReport, DecompositionResult
from nclebesgue.types.run_config import RunConfig
from nclebesgue.utils.execution_timers import ExecutionTimeState, time_node
from nclebesgue.utils.logging_utils import setup_logging

setup_logging()
logger = logging.getLogger(__name__)

decompose_timed = lambda f: time_node("decompose_subgraph")(f)  # noqa: E731

# μ_ac + μ_s must reproduce μ to rounding.
ADDITIVITY_TOL = 1e-12


class DecomposeSubgraphInputState(TypedDict):
    config: RunConfig


class DecomposeSubgraphHiddenState(TypedDict):
    measure: MomentTable
    stem: str
    level: int
    decomposition: DecompositionResult


class DecomposeSubgraphOutputState(TypedDict):
    classification: ClassificationReport
    output_files: dict[str, str]
    report_path: str
    passed: bool


class DecomposeSubgraphState(
    DecomposeSubgraphInputState,
    DecomposeSubgraphHiddenState,
    DecomposeSubgraphOutputState,
    ExecutionTimeState,
):
    pass


class DecomposeSubgraph(BaseSubgraph):
    InputState = DecomposeSubgraphInputState
    OutputState = DecomposeSubgraphOutputState

    @decompose_timed
    def _load_measure_node(self, state: DecomposeSubgraphState) -> dict:
        config = state["config"]
        spec, measure, level = load_measure(
            spec_path=config.spec, depth=config.depth, level=config.level
        )
        return {"measure": measure, "stem": spec.name or config.spec.stem, "level": level}

    @decompose_timed
    def _run_decomposition_node(self, state: DecomposeSubgraphState) -> dict:
        config = state["config"]
        result, classification = run_decomposition(
            measure=state["measure"],
            level=state["level"],
            threshold=config.threshold,
            out_depth=config.out_depth,
        )
        return {"decomposition": result, "classification": classification}

    @decompose_timed
    def _export_decomposition_node(self, state: DecomposeSubgraphState) -> dict:
        config = state["config"]
        output_files = export_decomposition(
            result=state["decomposition"],
            output_dir=config.out,
            stem=state["stem"],
            plot=config.plot,
        )
        return {"output_files": output_files}

    @decompose_timed
    def _write_report_node(self, state: DecomposeSubgraphState) -> dict:
        result = state["decomposition"]
        recombined = add(result.mu_ac, result.mu_s)
        residual = recombined.max_abs_difference(state["measure"].truncate(result.N_out))
        passed = residual <= ADDITIVITY_TOL * max(1.0, state["measure"].mass)
        path = write_report(
            name=f"{state['stem']}_decompose",
            config=state["config"],
            results={
                "decomposition": result.to_report(),
                "classification": state["classification"],
                "additivity_residual": residual,
                "output_files": state["output_files"],
            },
            passed=passed,
            execution_time=state.get("execution_time"),
            tolerances={"additivity": ADDITIVITY_TOL, "threshold": result.threshold},
        )
        return {"report_path": str(path), "passed": passed}

    def build_graph(self) -> Any:
        graph_builder = StateGraph(DecomposeSubgraphState)
        graph_builder.add_node("load_measure_node", self._load_measure_node)
        graph_builder.add_node("run_decomposition_node", self._run_decomposition_node)
        graph_builder.add_node("export_decomposition_node", self._export_decomposition_node)
        graph_builder.add_node("write_report_node", self._write_report_node)

        graph_builder.add_edge(START, "load_measure_node")
        graph_builder.add_edge("load_measure_node", "run_decomposition_node")
        graph_builder.add_edge("run_decomposition_node", "export_decomposition_node")
        graph_builder.add_edge("export_decomposition_node", "write_report_node")
        graph_builder.add_edge("write_report_node", END)
        return graph_builder.compile()


def main():
    config = RunConfig(**decompose_subgraph_input_data)
    result = DecomposeSubgraph().run({"config": config})
    print(f"result: {json.dumps(result, indent=2, default=str)}")


if __name__ == "__main__":
    try:
        main()
    except Exception as e:
        logger.error(f"Error running DecomposeSubgraph: {e}")
        raise
