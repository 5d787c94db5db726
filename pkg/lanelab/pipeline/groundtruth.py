"""Per-frame lane ground truth stored as JSON Lines."""

import json
from pathlib import Path
from typing import Iterable, Optional, Union

from pydantic import BaseModel, Field, ValidationError, model_validator

from lanelab.detect.candidates import Side
from lanelab.exceptions import GroundTruthError, OutputWriteError
from lanelab.track.halrr import LanePosition


class GroundTruthLane(BaseModel):
    """Lane centre line at the two scan rows, lower point first.

    ``visible`` is false when the lane exists in the scene but cannot be
    seen in the frame (erased or occluded).
    """

    model_config = {"extra": "forbid", "frozen": True}

    x1: float
    y1: float
    x2: float
    y2: float
    visible: bool = True

    @model_validator(mode="after")
    def _lower_point_first(self) -> "GroundTruthLane":
        if not self.y1 > self.y2:
            raise ValueError(f"y1 ({self.y1}) must be below y2 ({self.y2}) in the image")
        return self

    def position(self) -> LanePosition:
        return LanePosition(self.x1, self.y1, self.x2, self.y2)

    def scaled(self, sx: float, sy: float) -> "GroundTruthLane":
        return GroundTruthLane(x1=self.x1 * sx, y1=self.y1 * sy, x2=self.x2 * sx, y2=self.y2 * sy, visible=self.visible)


class GroundTruthRecord(BaseModel):
    model_config = {"extra": "forbid", "frozen": True}

    frame_index: int = Field(ge=0)
    left: Optional[GroundTruthLane] = None
    right: Optional[GroundTruthLane] = None

    def lane(self, side: Side) -> Optional[GroundTruthLane]:
        return self.left if side is Side.LEFT else self.right

    def scaled(self, sx: float, sy: float) -> "GroundTruthRecord":
        return GroundTruthRecord(
            frame_index=self.frame_index,
            left=self.left.scaled(sx, sy) if self.left else None,
            right=self.right.scaled(sx, sy) if self.right else None,
        )


def read_ground_truth(path: Union[str, Path]) -> dict[int, GroundTruthRecord]:
    """Parse a ground-truth file into records keyed by frame index.

    Raises:
        GroundTruthError: missing file, malformed line, or duplicate frame index
    """
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as e:
        raise GroundTruthError(path, 0, f"cannot read file: {e.strerror or e}") from e

    records: dict[int, GroundTruthRecord] = {}
    for line_no, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            record = GroundTruthRecord.model_validate(json.loads(line))
        except json.JSONDecodeError as e:
            raise GroundTruthError(path, line_no, f"invalid JSON: {e.msg}") from e
        except ValidationError as e:
            raise GroundTruthError(path, line_no, str(e.errors()[0]["msg"])) from e
        if record.frame_index in records:
            raise GroundTruthError(path, line_no, f"duplicate frame_index {record.frame_index}")
        records[record.frame_index] = record
    return records


def write_ground_truth(records: Iterable[GroundTruthRecord], path: Union[str, Path]) -> None:
    path = Path(path)
    try:
        with open(path, "w", encoding="utf-8") as f:
            for record in records:
                f.write(json.dumps(record.model_dump(mode="json", exclude_none=True), sort_keys=True) + "\n")
    except OSError as e:
        raise OutputWriteError(path, e.strerror or str(e)) from e
