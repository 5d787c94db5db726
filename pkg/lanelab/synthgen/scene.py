"""Declarative description of a synthetic road sequence."""

from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, Field, field_validator, model_validator

from lanelab.imgcore.roi import TrapezoidRoi

Color = tuple[int, int, int]

LEFT_ANGLE_RANGE = (20.0, 70.0)
RIGHT_ANGLE_RANGE = (110.0, 160.0)


def _as_rgb(v: object) -> object:
    # a single gray level stands for three equal channels
    if isinstance(v, int):
        return (v, v, v)
    return v


def _check_rgb(v: Color) -> Color:
    if any(not 0 <= c <= 255 for c in v):
        raise ValueError(f"Colour channels must be in [0, 255], got {v}")
    return v


class LaneSpec(BaseModel):
    """A straight painted line.

    ``angle_deg`` is measured anticlockwise from +x with y pointing up;
    ``bottom_x`` is the centre of the line on the last image row; ``width``
    is measured horizontally.
    """

    model_config = {"extra": "forbid", "frozen": True}

    angle_deg: float
    bottom_x: float
    width: float = Field(default=6.0, gt=0)
    style: Literal["solid", "dashed"] = "solid"
    dash_len: float = Field(default=30.0, gt=0)
    gap_len: float = Field(default=15.0, gt=0)
    color: Color = (200, 200, 200)

    @field_validator("color", mode="before")
    @classmethod
    def expand_gray(cls, v: object) -> object:
        return _as_rgb(v)

    @field_validator("color")
    @classmethod
    def validate_color(cls, v: Color) -> Color:
        return _check_rgb(v)


class _FrameRange(BaseModel):
    model_config = {"extra": "forbid", "frozen": True}

    start_frame: int = Field(default=0, ge=0)
    # exclusive; None runs to the end of the sequence
    end_frame: Optional[int] = Field(default=None, ge=1)

    @model_validator(mode="after")
    def _ordered(self) -> "_FrameRange":
        if self.end_frame is not None and self.end_frame <= self.start_frame:
            raise ValueError(f"end_frame ({self.end_frame}) must be after start_frame ({self.start_frame})")
        return self

    def active(self, frame_index: int) -> bool:
        return self.start_frame <= frame_index and (self.end_frame is None or frame_index < self.end_frame)


class BrightnessShift(_FrameRange):
    kind: Literal["brightness_shift"] = "brightness_shift"
    delta: float


class GaussianBlur(_FrameRange):
    kind: Literal["gaussian_blur"] = "gaussian_blur"
    sigma: float = Field(gt=0)


class OcclusionBand(_FrameRange):
    """Filled polygon over the scene, e.g. a wiper blade."""

    kind: Literal["occlusion_band"] = "occlusion_band"
    polygon: list[tuple[float, float]] = Field(min_length=3)
    intensity: int = Field(default=20, ge=0, le=255)


class EraseLane(_FrameRange):
    """The lane is not painted on these frames but still exists in the scene."""

    kind: Literal["erase_lane"] = "erase_lane"
    side: Literal["left", "right"]


class DistractorLine(_FrameRange):
    """A non-lane line (guard rail, crossing marking) centred on (x, y)."""

    kind: Literal["distractor_line"] = "distractor_line"
    angle_deg: float
    x: float
    y: float
    length: float = Field(gt=0)
    width: int = Field(default=4, ge=1)
    color: Color = (200, 200, 200)

    @field_validator("color", mode="before")
    @classmethod
    def expand_gray(cls, v: object) -> object:
        return _as_rgb(v)

    @field_validator("color")
    @classmethod
    def validate_color(cls, v: Color) -> Color:
        return _check_rgb(v)


Perturbation = Annotated[
    Union[BrightnessShift, GaussianBlur, OcclusionBand, EraseLane, DistractorLine],
    Field(discriminator="kind"),
]


class SceneSpec(BaseModel):
    """Everything needed to render a sequence and its ground truth."""

    model_config = {"extra": "forbid", "frozen": True}

    width: int = Field(default=1056, ge=8)
    height: int = Field(default=594, ge=8)
    left: LaneSpec = Field(default_factory=lambda: LaneSpec(angle_deg=45.0, bottom_x=225.0))
    right: LaneSpec = Field(default_factory=lambda: LaneSpec(angle_deg=135.0, bottom_x=831.0))
    horizon_y: float = Field(default=300.0, ge=0)
    road_color: Color = (70, 70, 70)
    sky_color: Color = (150, 150, 150)
    noise_sigma: float = Field(default=0.0, ge=0)
    perturbations: list[Perturbation] = Field(default_factory=list)
    frame_count: int = Field(default=500, ge=1)
    lateral_drift_per_frame: float = 0.0
    # frames per leg of a back-and-forth drift; None drifts one way
    drift_period: Optional[int] = Field(default=None, ge=1)
    # pixels per frame the dash pattern moves toward the camera
    dash_speed: float = 0.0
    seed: int = Field(default=0, ge=0)
    roi: TrapezoidRoi = Field(default_factory=TrapezoidRoi)

    @field_validator("road_color", "sky_color", mode="before")
    @classmethod
    def expand_gray(cls, v: object) -> object:
        return _as_rgb(v)

    @field_validator("road_color", "sky_color")
    @classmethod
    def validate_color(cls, v: Color) -> Color:
        return _check_rgb(v)

    @model_validator(mode="after")
    def _check_scene(self) -> "SceneSpec":
        lo, hi = LEFT_ANGLE_RANGE
        if not lo < self.left.angle_deg < hi:
            raise ValueError(f"Left lane angle must be in ({lo:g}, {hi:g}) degrees, got {self.left.angle_deg}")
        lo, hi = RIGHT_ANGLE_RANGE
        if not lo < self.right.angle_deg < hi:
            raise ValueError(f"Right lane angle must be in ({lo:g}, {hi:g}) degrees, got {self.right.angle_deg}")
        if self.horizon_y >= self.height:
            raise ValueError(f"horizon_y ({self.horizon_y}) must be above the last row ({self.height - 1})")
        for p in self.perturbations:
            end = p.end_frame if p.end_frame is not None else self.frame_count
            if p.start_frame >= self.frame_count or end > self.frame_count:
                raise ValueError(
                    f"{p.kind} frame range [{p.start_frame}, {end}) is outside [0, {self.frame_count})"
                )
        return self

    def lane(self, side: str) -> LaneSpec:
        return self.left if side == "left" else self.right
