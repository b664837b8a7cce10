import json
import logging
from typing import Any

from langgraph.graph import END, START, StateGraph
from typing_extensions import TypedDict

from nclebesgue.core.base import BaseSubgraph
from nclebesgue.features.diagnostics_subgraph.input_data import (
    diagnostics_subgraph_input_data,
)
from nclebesgue.features.diagnostics_subgraph.nodes.check_positivity import check_positivity
from nclebesgue.features.diagnostics_subgraph.nodes.evaluate_transforms import (
    evaluate_transforms,
)
from nclebesgue.features.diagnostics_subgraph.nodes.gns_diagnostics import gns_diagnostics
from nclebesgue.features.nodes.load_measure import load_measure
from nclebesgue.features.nodes.write_report import write_report
from nclebesgue.services.ncmeasure import MAX_POINT_WORDS
from nclebesgue.types.measure import MomentTable
from nclebesgue.types.reports import GnsReport, PositivityReport
from nclebesgue.types.run_config import RunConfig
from nclebesgue.utils.execution_timers import ExecutionTimeState, time_node
from nclebesgue.utils.logging_utils import setup_logging

setup_logging()
logger = logging.getLogger(__name__)

diagnostics_timed = lambda f: time_node("diagnostics_subgraph")(f)  # noqa: E731

# Row-isometry relations must hold on the interior to this accuracy.
ISOMETRY_TOL = 1e-10
# Word budget for the herglotz series; a point with two nonzero coordinates reaches depth 13.
HERGLOTZ_MAX_WORDS = 20_000


class DiagnosticsSubgraphInputState(TypedDict):
    config: RunConfig


class DiagnosticsSubgraphHiddenState(TypedDict):
    measure: MomentTable
    stem: str
    level: int


class DiagnosticsSubgraphOutputState(TypedDict):
    positivity: PositivityReport
    gns_report: GnsReport
    transforms: dict
    report_path: str
    passed: bool


class DiagnosticsSubgraphState(
    DiagnosticsSubgraphInputState,
    DiagnosticsSubgraphHiddenState,
    DiagnosticsSubgraphOutputState,
    ExecutionTimeState,
):
    pass


class DiagnosticsSubgraph(BaseSubgraph):
    """Positivity, then GNS diagnostics or a transform evaluation depending on the command."""

    InputState = DiagnosticsSubgraphInputState
    OutputState = DiagnosticsSubgraphOutputState

    @diagnostics_timed
    def _load_measure_node(self, state: DiagnosticsSubgraphState) -> dict:
        config = state["config"]
        herglotz = config.command == "herglotz"
        spec, measure, level = load_measure(
            spec_path=config.spec,
            depth=config.depth,
            level=config.level,
            min_depth=config.degree if herglotz else 0,
            max_words=HERGLOTZ_MAX_WORDS if herglotz else MAX_POINT_WORDS,
        )
        return {"measure": measure, "stem": spec.name or config.spec.stem, "level": level}

    @diagnostics_timed
    def _check_positivity_node(self, state: DiagnosticsSubgraphState) -> dict:
        config = state["config"]
        report = check_positivity(
            measure=state["measure"], level=state["level"], tol=config.tol
        )
        return {"positivity": report}

    def _route_after_positivity(self, state: DiagnosticsSubgraphState) -> str:
        command = state["config"].command
        if command == "diagnose" and state["positivity"].is_positive:
            return "gns_diagnostics_node"
        if command == "herglotz":
            return "evaluate_transforms_node"
        return "write_report_node"

    @diagnostics_timed
    def _gns_diagnostics_node(self, state: DiagnosticsSubgraphState) -> dict:
        report = gns_diagnostics(measure=state["measure"], level=state["level"])
        return {"gns_report": report}

    @diagnostics_timed
    def _evaluate_transforms_node(self, state: DiagnosticsSubgraphState) -> dict:
        config = state["config"]
        transforms = evaluate_transforms(
            measure=state["measure"],
            point=config.point,
            degree=config.degree,
            samples=config.samples,
            seed=config.seed,
        )
        return {"transforms": transforms}

    @diagnostics_timed
    def _write_report_node(self, state: DiagnosticsSubgraphState) -> dict:
        config = state["config"]
        positivity = state["positivity"]
        results: dict[str, Any] = {"positivity": positivity}
        passed = positivity.is_positive
        if "gns_report" in state:
            results["gns"] = state["gns_report"]
            passed = passed and state["gns_report"].isometry_defect <= ISOMETRY_TOL
        if "transforms" in state:
            results["transforms"] = state["transforms"]
            passed = passed and state["transforms"]["schur_contractive"]
        path = write_report(
            name=f"{state['stem']}_{config.command}",
            config=config,
            results=results,
            passed=passed,
            execution_time=state.get("execution_time"),
            tolerances={"isometry": ISOMETRY_TOL},
        )
        return {"report_path": str(path), "passed": passed}

    def build_graph(self) -> Any:
        graph_builder = StateGraph(DiagnosticsSubgraphState)
        graph_builder.add_node("load_measure_node", self._load_measure_node)
        graph_builder.add_node("check_positivity_node", self._check_positivity_node)
        graph_builder.add_node("gns_diagnostics_node", self._gns_diagnostics_node)
        graph_builder.add_node("evaluate_transforms_node", self._evaluate_transforms_node)
        graph_builder.add_node("write_report_node", self._write_report_node)

        graph_builder.add_edge(START, "load_measure_node")
        graph_builder.add_edge("load_measure_node", "check_positivity_node")
        graph_builder.add_conditional_edges(
            "check_positivity_node",
            self._route_after_positivity,
            {
                "gns_diagnostics_node": "gns_diagnostics_node",
                "evaluate_transforms_node": "evaluate_transforms_node",
                "write_report_node": "write_report_node",
            },
        )
        graph_builder.add_edge("gns_diagnostics_node", "write_report_node")
        graph_builder.add_edge("evaluate_transforms_node", "write_report_node")
        graph_builder.add_edge("write_report_node", END)
        return graph_builder.compile()


def main():
    config = RunConfig(**diagnostics_subgraph_input_data)
    result = DiagnosticsSubgraph().run({"config": config})
    print(f"result: {json.dumps(result, indent=2, default=str)}")


if __name__ == "__main__":
    try:
        main()
    except Exception as e:
        logger.error(f"Error running DiagnosticsSubgraph: {e}")
        raise
