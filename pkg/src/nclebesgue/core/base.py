from abc import ABC, abstractmethod
from typing import Any

from typing_extensions import TypedDict

DEFAULT_GRAPH_CONFIG = {"recursion_limit": 64}


class BaseSubgraph(ABC):
    """A LangGraph pipeline with declared input and output state keys.

    ``run`` feeds only the declared input keys to the compiled graph and merges
    the declared output keys back into the caller's state, so several subgraphs
    can share one state dict the way a CLI command chains them.
    """

    InputState: type[TypedDict]
    OutputState: type[TypedDict]

    def __init__(self, name: str | None = None):
        self.name = name or self.__class__.__name__

    @abstractmethod
    def build_graph(self) -> Any: ...

    def run(self, state: dict[str, Any], config: dict | None = None) -> dict[str, Any]:
        if hasattr(self, "InputState"):
            input_state_keys = self.InputState.__annotations__.keys()
            input_state = {k: state[k] for k in input_state_keys if k in state}
        else:
            input_state = dict(state)
        if "execution_time" in state:
            input_state["execution_time"] = state["execution_time"]

        result = self.build_graph().invoke(input_state, config=config or DEFAULT_GRAPH_CONFIG)

        if hasattr(self, "OutputState"):
            output_state_keys = [*self.OutputState.__annotations__.keys(), "execution_time"]
            output_state = {k: result[k] for k in output_state_keys if k in result}
        else:
            output_state = result

        cleaned_state = {k: v for k, v in state.items() if k != "subgraph_name"}
        return {
            "subgraph_name": self.name,
            **cleaned_state,
            **output_state,
        }
