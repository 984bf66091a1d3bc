class PcnetError(Exception):
    pass


class ParseError(PcnetError):
    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class ConvergenceError(PcnetError):
    """Raised by iterative solvers; ``residual`` holds the last change measured."""

    def __init__(self, message: str, residual: float, iterations: int):
        self.residual = residual
        self.iterations = iterations
        super().__init__(f"{message} (residual={residual:.3e} after {iterations} iterations)")


class DegenerateInputError(PcnetError):
    pass


class RealizationError(PcnetError):
    """A scorer failed on one perturbed realization; ``index`` is the realization number."""

    def __init__(self, index: int, cause: Exception):
        self.index = index
        super().__init__(f"realization m={index}: {cause}")
