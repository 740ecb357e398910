from typing import Optional


class LabError(Exception):
    """Base class for every error raised by the laboratory"""


class ConfigError(LabError, ValueError):
    """Invalid configuration, degenerate domain or out-of-range bookkeeping index"""


class NumericalFailure(LabError):
    """
    A scheme could not produce a valid state.

    Carries the offending cell/interface index, the simulation time and the
    stage name when they are known, so the surfaces can print a diagnostic.
    """

    def __init__(
        self,
        message: str,
        index: Optional[int] = None,
        time: Optional[float] = None,
        stage: Optional[str] = None,
    ):
        self.message = message
        self.index = index
        self.time = time
        self.stage = stage
        super().__init__(self._render())

    def _render(self) -> str:
        parts = [self.message]
        if self.stage is not None:
            parts.append(f"stage={self.stage}")
        if self.index is not None:
            parts.append(f"index={self.index}")
        if self.time is not None:
            parts.append(f"t={self.time:.17g}")
        return " | ".join(parts)

    def with_time(self, time: float) -> "NumericalFailure":
        """Attach the marcher time if the failure does not carry one yet"""
        if self.time is None:
            self.time = time
            self.args = (self._render(),)
        return self


class NonPositiveDepth(NumericalFailure):
    """Water depth at or below the dry-state floor"""


class CflViolation(NumericalFailure):
    """Time step breaks a scheme stability bound"""
