"""Exception hierarchy. Every error the toolkit raises derives from HombricksError."""


class HombricksError(Exception):
    pass


class ParseError(HombricksError):
    def __init__(self, message: str, source: str = "<text>", line: int | None = None):
        self.source = source
        self.line = line
        where = f"{source}:{line}" if line is not None else source
        super().__init__(f"{where}: {message}")


class NotAdmissible(HombricksError):
    pass


class CapExceeded(HombricksError):
    def __init__(self, what: str, needed: int, cap: int):
        self.what = what
        self.needed = needed
        self.cap = cap
        super().__init__(f"{what}: needs {needed} candidates, cap is {cap}")


class RationalFieldUnsupported(HombricksError):
    def __init__(self, operation: str):
        super().__init__(f"{operation} enumerates field elements and needs a finite prime field")


class AlgebraMismatch(HombricksError):
    pass


class ShapeError(HombricksError, ValueError):
    pass


class ZeroModule(HombricksError, ValueError):
    pass


class NotHomOrthogonal(HombricksError):
    pass


class NotABrick(HombricksError):
    pass


class NonSplitEndomorphisms(HombricksError):
    """End(X) holds a division algebra larger than the prime field, so no brick image exists."""

    def __init__(self, module: str, end_dim: int, image=None):
        self.end_dim = end_dim
        self.image = image
        super().__init__(f"{module or 'module'}: every nonzero endomorphism of the minimal image is invertible "
                         f"but End has dimension {end_dim}; extend the field to split it")


class NotHomogeneous(HombricksError):
    pass


class NotHereditary(HombricksError):
    pass


class TooManyVertices(HombricksError):
    pass


class MalformedCertificate(HombricksError, ValueError):
    pass
