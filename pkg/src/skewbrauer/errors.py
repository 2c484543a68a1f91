"""Exception types shared across the toolkit."""


class SkewBrauerError(Exception):
    """Base class for all domain errors."""


class NonComposable(SkewBrauerError):
    """Raised when two paths with mismatched endpoints are composed."""


class NotAdmissible(SkewBrauerError):
    """Raised when a basis computation is attempted on a non-admissible presentation."""


class InfiniteDimensional(SkewBrauerError):
    """Raised when nonzero paths still survive at the length cap."""

    def __init__(self, cap: int):
        super().__init__(f"nonzero paths survive at length cap {cap}")
        self.cap = cap


class LoopAtDistinguished(SkewBrauerError):
    """Raised when a vertex marked for duplication carries a loop."""


class SignMismatch(SkewBrauerError):
    """Raised when a sign decoration disagrees with the special-vertex pattern."""


class NotSkewGentle(SkewBrauerError):
    """Raised when an operation requires a skew-gentle presentation."""


class UnsupportedClass(SkewBrauerError):
    """Raised when an algebra is neither gentle nor an admissible skew-gentle presentation."""


class NotSkewGentleSource(SkewBrauerError):
    """Raised when good-cut enumeration lacks the recorded sign structure."""


class UnknownArrow(SkewBrauerError):
    """Raised when a cut set mentions an arrow that is not in the quiver."""


class UnknownVertex(SkewBrauerError):
    """Raised when an operation references a vertex that does not exist."""


class NotSourceOrSink(SkewBrauerError):
    """Raised when a reflection is requested at an interior vertex."""


class TrivialPolygon(SkewBrauerError):
    """Raised when a boundary move targets a trivial polygon."""


class InvalidPosition(SkewBrauerError):
    """Raised when a boundary move targets a position that does not exist."""


class NotReflectable(SkewBrauerError):
    """Raised when a geometric reflection is requested at an unsuitable arc."""


class ParseError(SkewBrauerError):
    """Raised on malformed input files; carries file and line information."""

    def __init__(self, message: str, filename: str = "<input>", line: int = 0):
        super().__init__(f"{filename}:{line}: {message}")
        self.filename = filename
        self.line = line
        self.bare_message = message
