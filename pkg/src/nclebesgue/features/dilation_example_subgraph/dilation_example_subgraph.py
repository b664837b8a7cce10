import json
import logging
from typing import Any

from langgraph.graph import END, START, StateGraph
from typing_extensions import TypedDict

from nclebesgue.core.base import BaseSubgraph
from nclebesgue.features.dilation_example_subgraph.input_data import (
    dilation_example_subgraph_input_data,
)
from nclebesgue.features.dilation_example_subgraph.nodes.decomposition_checks import (
    run_decomposition_checks,
)
from nclebesgue.features.dilation_example_subgraph.nodes.dirac_measure import (
    DIRAC_LEVEL,
    build_dirac_measure,
    check_moment_table,
)
from nclebesgue.features.dilation_example_subgraph.nodes.gns_checks import run_gns_checks
from nclebesgue.features.dilation_example_subgraph.nodes.transform_checks import (
    run_transform_checks,
)
from nclebesgue.features.nodes.write_report import write_report
from nclebesgue.types.measure import MomentTable
from nclebesgue.types.reports import CheckResult
from nclebesgue.types.run_config import RunConfig
from nclebesgue.utils.execution_timers import ExecutionTimeState, time_node
from nclebesgue.utils.logging_utils import setup_logging

setup_logging()
logger = logging.getLogger(__name__)

dilation_example_timed = lambda f: time_node("dilation_example_subgraph")(f)  # noqa: E731


class DilationExampleSubgraphInputState(TypedDict):
    config: RunConfig


class DilationExampleSubgraphHiddenState(TypedDict):
    measure: MomentTable
    level: int


class DilationExampleSubgraphOutputState(TypedDict):
    checks: list[CheckResult]
    report_path: str
    passed: bool


class DilationExampleSubgraphState(
    DilationExampleSubgraphInputState,
    DilationExampleSubgraphHiddenState,
    DilationExampleSubgraphOutputState,
    ExecutionTimeState,
):
    pass


class DilationExampleSubgraph(BaseSubgraph):
    """Point mass at (1, 0): moments, GNS wandering vector, transforms and decomposition."""

    InputState = DilationExampleSubgraphInputState
    OutputState = DilationExampleSubgraphOutputState

    @dilation_example_timed
    def _build_measure_node(self, state: DilationExampleSubgraphState) -> dict:
        config = state["config"]
        level = DIRAC_LEVEL if config.level is None else config.level
        measure = build_dirac_measure(max(level, config.degree))
        return {
            "measure": measure,
            "level": level,
            "checks": [check_moment_table(measure, level)],
        }

    @dilation_example_timed
    def _gns_checks_node(self, state: DilationExampleSubgraphState) -> dict:
        checks = run_gns_checks(measure=state["measure"], level=state["level"])
        return {"checks": [*state["checks"], *checks]}

    @dilation_example_timed
    def _transform_checks_node(self, state: DilationExampleSubgraphState) -> dict:
        checks = run_transform_checks(measure=state["measure"], degree=state["config"].degree)
        return {"checks": [*state["checks"], *checks]}

    @dilation_example_timed
    def _decomposition_checks_node(self, state: DilationExampleSubgraphState) -> dict:
        checks = run_decomposition_checks(measure=state["measure"], level=state["level"])
        return {"checks": [*state["checks"], *checks]}

    @dilation_example_timed
    def _write_report_node(self, state: DilationExampleSubgraphState) -> dict:
        checks = state["checks"]
        passed = all(check.passed for check in checks)
        for check in checks:
            if not check.passed:
                logger.warning(f"check {check.name} FAILED (value {check.value})")
        path = write_report(
            name="dilation_example",
            config=state["config"],
            results={"checks": checks},
            passed=passed,
            execution_time=state.get("execution_time"),
        )
        return {"report_path": str(path), "passed": passed}

    def build_graph(self) -> Any:
        graph_builder = StateGraph(DilationExampleSubgraphState)
        graph_builder.add_node("build_measure_node", self._build_measure_node)
        graph_builder.add_node("gns_checks_node", self._gns_checks_node)
        graph_builder.add_node("transform_checks_node", self._transform_checks_node)
        graph_builder.add_node("decomposition_checks_node", self._decomposition_checks_node)
        graph_builder.add_node("write_report_node", self._write_report_node)

        graph_builder.add_edge(START, "build_measure_node")
        graph_builder.add_edge("build_measure_node", "gns_checks_node")
        graph_builder.add_edge("gns_checks_node", "transform_checks_node")
        graph_builder.add_edge("transform_checks_node", "decomposition_checks_node")
        graph_builder.add_edge("decomposition_checks_node", "write_report_node")
        graph_builder.add_edge("write_report_node", END)
        return graph_builder.compile()


def main():
    config = RunConfig(**dilation_example_subgraph_input_data)
    result = DilationExampleSubgraph().run({"config": config})
    print(f"result: {json.dumps(result, indent=2, default=str)}")


if __name__ == "__main__":
    try:
        main()
    except Exception as e:
        logger.error(f"Error running DilationExampleSubgraph: {e}")
        raise
