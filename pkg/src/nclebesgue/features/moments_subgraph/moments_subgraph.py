import json
import logging
from typing import Any

from langgraph.graph import END, START, StateGraph
from typing_extensions import TypedDict

from nclebesgue.core.base import BaseSubgraph
from nclebesgue.features.moments_subgraph.input_data import moments_subgraph_input_data
from nclebesgue.features.moments_subgraph.nodes.export_moments import export_moments
from nclebesgue.features.nodes.load_measure import load_measure
from nclebesgue.features.nodes.write_report import write_report
from nclebesgue.types.measure import MomentTable
from nclebesgue.types.run_config import RunConfig
from nclebesgue.utils.execution_timers import ExecutionTimeState, time_node
from nclebesgue.utils.logging_utils import setup_logging

setup_logging()
logger = logging.getLogger(__name__)

moments_timed = lambda f: time_node("moments_subgraph")(f)  # noqa: E731


class MomentsSubgraphInputState(TypedDict):
    config: RunConfig


class MomentsSubgraphHiddenState(TypedDict):
    measure: MomentTable
    stem: str


class MomentsSubgraphOutputState(TypedDict):
    moments_csv: str
    report_path: str
    passed: bool


class MomentsSubgraphState(
    MomentsSubgraphInputState,
    MomentsSubgraphHiddenState,
    MomentsSubgraphOutputState,
    ExecutionTimeState,
):
    pass


class MomentsSubgraph(BaseSubgraph):
    InputState = MomentsSubgraphInputState
    OutputState = MomentsSubgraphOutputState

    @moments_timed
    def _load_measure_node(self, state: MomentsSubgraphState) -> dict:
        config = state["config"]
        spec, measure, _ = load_measure(spec_path=config.spec, depth=config.depth)
        return {"measure": measure, "stem": spec.name or config.spec.stem}

    @moments_timed
    def _export_moments_node(self, state: MomentsSubgraphState) -> dict:
        path = export_moments(
            measure=state["measure"],
            output_dir=state["config"].out,
            stem=state["stem"],
        )
        return {"moments_csv": str(path)}

    @moments_timed
    def _write_report_node(self, state: MomentsSubgraphState) -> dict:
        measure = state["measure"]
        path = write_report(
            name=f"{state['stem']}_moments",
            config=state["config"],
            results={
                "d": measure.d,
                "depth": measure.depth,
                "mass": measure.mass,
                "nonzero_moments": len(measure.moments),
                "moments_csv": state["moments_csv"],
            },
            passed=True,
            execution_time=state.get("execution_time"),
        )
        return {"report_path": str(path), "passed": True}

    def build_graph(self) -> Any:
        graph_builder = StateGraph(MomentsSubgraphState)
        graph_builder.add_node("load_measure_node", self._load_measure_node)
        graph_builder.add_node("export_moments_node", self._export_moments_node)
        graph_builder.add_node("write_report_node", self._write_report_node)

        graph_builder.add_edge(START, "load_measure_node")
        graph_builder.add_edge("load_measure_node", "export_moments_node")
        graph_builder.add_edge("export_moments_node", "write_report_node")
        graph_builder.add_edge("write_report_node", END)
        return graph_builder.compile()


def main():
    config = RunConfig(**moments_subgraph_input_data)
    result = MomentsSubgraph().run({"config": config})
    print(f"result: {json.dumps(result, indent=2, default=str)}")


if __name__ == "__main__":
    try:
        main()
    except Exception as e:
        logger.error(f"Error running MomentsSubgraph: {e}")
        raise
