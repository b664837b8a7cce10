import json
import logging
from typing import Any

from langgraph.graph import END, START, StateGraph
from typing_extensions import TypedDict

from nclebesgue.core.base import BaseSubgraph
from nclebesgue.features.nodes.write_report import write_report
from nclebesgue.features.oracle_subgraph.input_data import oracle_subgraph_input_data
from nclebesgue.features.oracle_subgraph.nodes.run_oracle import export_convergence, run_oracle
from nclebesgue.services.ncmeasure import load_measure_spec
from nclebesgue.types.measure import MeasureSpec
from nclebesgue.types.reports import PencilComparison
from nclebesgue.types.run_config import RunConfig
from nclebesgue.utils.execution_timers import ExecutionTimeState, time_node
from nclebesgue.utils.logging_utils import setup_logging

setup_logging()
logger = logging.getLogger(__name__)

oracle_timed = lambda f: time_node("oracle_subgraph")(f)  # noqa: E731


class OracleSubgraphInputState(TypedDict):
    config: RunConfig


class OracleSubgraphHiddenState(TypedDict):
    spec: MeasureSpec
    stem: str
    geometric_mean: float


class OracleSubgraphOutputState(TypedDict):
    comparison: PencilComparison
    output_files: dict[str, str]
    report_path: str
    passed: bool


class OracleSubgraphState(
    OracleSubgraphInputState,
    OracleSubgraphHiddenState,
    OracleSubgraphOutputState,
    ExecutionTimeState,
):
    pass


class OracleSubgraph(BaseSubgraph):
    """Compares the pencil's μ_ac with the exact d = 1 split over a level schedule."""

    InputState = OracleSubgraphInputState
    OutputState = OracleSubgraphOutputState

    @oracle_timed
    def _load_spec_node(self, state: OracleSubgraphState) -> dict:
        config = state["config"]
        spec = load_measure_spec(config.spec)
        return {"spec": spec, "stem": spec.name or config.spec.stem}

    @oracle_timed
    def _run_oracle_node(self, state: OracleSubgraphState) -> dict:
        config = state["config"]
        comparison, geometric_mean = run_oracle(
            spec=state["spec"],
            schedule=config.schedule,
            threshold=config.threshold,
            out_depth=config.out_depth,
        )
        return {"comparison": comparison, "geometric_mean": geometric_mean}

    @oracle_timed
    def _export_convergence_node(self, state: OracleSubgraphState) -> dict:
        config = state["config"]
        output_files = export_convergence(
            comparison=state["comparison"],
            output_dir=config.out,
            stem=state["stem"],
            plot=config.plot,
        )
        return {"output_files": output_files}

    @oracle_timed
    def _write_report_node(self, state: OracleSubgraphState) -> dict:
        comparison = state["comparison"]
        passed = comparison.is_non_increasing
        path = write_report(
            name=f"{state['stem']}_oracle",
            config=state["config"],
            results={
                "comparison": comparison,
                "szego_geometric_mean": state["geometric_mean"],
                "output_files": state["output_files"],
            },
            passed=passed,
            execution_time=state.get("execution_time"),
        )
        return {"report_path": str(path), "passed": passed}

    def build_graph(self) -> Any:
        graph_builder = StateGraph(OracleSubgraphState)
        graph_builder.add_node("load_spec_node", self._load_spec_node)
        graph_builder.add_node("run_oracle_node", self._run_oracle_node)
        graph_builder.add_node("export_convergence_node", self._export_convergence_node)
        graph_builder.add_node("write_report_node", self._write_report_node)

        graph_builder.add_edge(START, "load_spec_node")
        graph_builder.add_edge("load_spec_node", "run_oracle_node")
        graph_builder.add_edge("run_oracle_node", "export_convergence_node")
        graph_builder.add_edge("export_convergence_node", "write_report_node")
        graph_builder.add_edge("write_report_node", END)
        return graph_builder.compile()


def main():
    config = RunConfig(**oracle_subgraph_input_data)
    result = OracleSubgraph().run({"config": config})
    print(f"result: {json.dumps(result, indent=2, default=str)}")


if __name__ == "__main__":
    try:
        main()
    except Exception as e:
        logger.error(f"Error running OracleSubgraph: {e}")
        raise
