class NCMeasureError(RuntimeError): ...


class DepthExceededError(NCMeasureError): ...
