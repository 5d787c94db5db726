"""Custom exceptions for lanelab."""

from pathlib import Path
from typing import Optional, Union

PathLike = Union[str, Path]


class LanelabError(Exception):
    """Base exception for all lanelab errors."""

    pass


class ConfigError(LanelabError):
    """Raised when a configuration file cannot be read or fails validation."""

    def __init__(self, path: Optional[PathLike], message: str):
        self.path = str(path) if path is not None else None
        self.message = message
        where = self.path or "<defaults>"
        super().__init__(f"Invalid configuration in {where}: {message}")


class InputError(LanelabError):
    """Base class for problems with frames or ground truth supplied by the user."""

    pass


class FrameReadError(InputError):
    """Raised when a frame cannot be decoded."""

    def __init__(self, frame_index: int, path: PathLike, reason: str = ""):
        self.frame_index = frame_index
        self.path = str(path)
        self.reason = reason
        message = f"Cannot read frame {frame_index} ({self.path})"
        if reason:
            message += f": {reason}"
        super().__init__(message)


class DimensionMismatchError(InputError):
    """Raised when a frame's size differs from earlier frames of its sequence."""

    def __init__(self, frame_index: int, expected: tuple[int, int], actual: tuple[int, int]):
        self.frame_index = frame_index
        self.expected = expected
        self.actual = actual
        super().__init__(
            f"Frame {frame_index} is {actual[0]}x{actual[1]} but the sequence is {expected[0]}x{expected[1]}"
        )


class GroundTruthError(InputError):
    """Raised when a ground-truth file is malformed."""

    def __init__(self, path: PathLike, line: int, message: str):
        self.path = str(path)
        self.line = line
        super().__init__(f"{self.path}:{line}: {message}")


class InvalidParameterError(LanelabError, ValueError):
    """Raised when an operation is called with a parameter outside its valid range."""

    pass


class DegenerateRoiError(InvalidParameterError):
    """Raised when the region-of-interest trapezoid has no area."""

    def __init__(self, width: int, height: int):
        self.width = width
        self.height = height
        super().__init__(f"Region of interest has zero area on a {width}x{height} image")


class OutputWriteError(LanelabError):
    """Raised when a run artefact cannot be written."""

    def __init__(self, path: PathLike, message: str):
        self.path = str(path)
        super().__init__(f"Cannot write {self.path}: {message}")
