import time
from functools import wraps
from logging import getLogger
from typing import Callable

from typing_extensions import TypedDict

logger = getLogger(__name__)


class ExecutionTimeState(TypedDict):
    execution_time: dict[str, dict[str, list[float]]]


def time_node(
    subgraph_name: str, node_name: str | None = None
) -> Callable[..., Callable[..., object]]:
    """Log start/end of a subgraph node and record its wall time in the state.

    Durations accumulate under ``state["execution_time"][subgraph][node]`` so a
    node that runs more than once keeps every measurement.
    """

    def decorator(func):
        actual_node = node_name or func.__name__.lstrip("_")

        @wraps(func)
        def wrapper(self, state, *args, **kwargs):
            header = f"[{subgraph_name}.{actual_node}]".ljust(48)
            logger.info(f"{header} Start")
            start = time.perf_counter()

            result = func(self, state, *args, **kwargs)
            duration = round(time.perf_counter() - start, 4)

            execution_time = dict(state.get("execution_time") or {})
            subgraph_log = dict(execution_time.get(subgraph_name, {}))
            subgraph_log[actual_node] = [*subgraph_log.get(actual_node, []), duration]
            execution_time[subgraph_name] = subgraph_log

            logger.info(f"{header} End    Execution Time: {duration:7.4f} seconds")
            if isinstance(result, dict):
                return {**result, "execution_time": execution_time}
            return result

        return wrapper

    return decorator


__all__ = ["time_node", "ExecutionTimeState"]
