"""Pipeline configuration: typed models and the flat-key YAML file format."""

from pathlib import Path
from typing import Any, Optional, Union

import yaml
from pydantic import BaseModel, Field, ValidationError, field_validator

from lanelab.detect.verify import AngleConstraint
from lanelab.exceptions import ConfigError
from lanelab.hough.transform import HoughParams
from lanelab.imgcore.canny import CannyParams, OitrThresholds
from lanelab.imgcore.filters import BilateralParams, SmoothingParams
from lanelab.imgcore.roi import TrapezoidRoi
from lanelab.track.halrr import HalrrParams

DEFAULTS_PATH = Path(__file__).parent / "defaults.yaml"

Color = tuple[int, int, int]


def _check_color(v: Color) -> Color:
    if any(not 0 <= c <= 255 for c in v):
        raise ValueError(f"Colour channels must be in [0, 255], got {v}")
    return v


class FrameParams(BaseModel):
    """Working resolution every frame is brought to before processing."""

    model_config = {"extra": "forbid", "frozen": True}

    width: int = Field(default=1056, ge=8)
    height: int = Field(default=594, ge=8)
    resize: bool = True


class OverlayParams(BaseModel):
    model_config = {"extra": "forbid", "frozen": True}

    tracked_color: Color = (0, 255, 0)
    held_color: Color = (255, 165, 0)
    roi_color: Color = (255, 0, 0)
    line_width: int = Field(default=3, ge=1)
    draw_roi: bool = False

    @field_validator("tracked_color", "held_color", "roi_color")
    @classmethod
    def validate_color(cls, v: Color) -> Color:
        return _check_color(v)


class EvaluationParams(BaseModel):
    model_config = {"extra": "forbid", "frozen": True}

    # lateral error at the bottom scan row above which a frame counts as incorrect
    tolerance_px: float = Field(default=10.0, gt=0)


class PipelineConfig(BaseModel):
    """Every tunable of the detection and tracking pipeline."""

    model_config = {"extra": "forbid", "frozen": True}

    bilateral: BilateralParams = Field(default_factory=BilateralParams)
    smoothing: SmoothingParams = Field(default_factory=SmoothingParams)
    oitr: OitrThresholds = Field(default_factory=OitrThresholds)
    canny: CannyParams = Field(default_factory=CannyParams)
    roi: TrapezoidRoi = Field(default_factory=TrapezoidRoi)
    hough: HoughParams = Field(default_factory=HoughParams)
    angle: AngleConstraint = Field(default_factory=AngleConstraint)
    halrr: HalrrParams = Field(default_factory=HalrrParams)
    frame: FrameParams = Field(default_factory=FrameParams)
    overlay: OverlayParams = Field(default_factory=OverlayParams)
    evaluation: EvaluationParams = Field(default_factory=EvaluationParams)
    hough_seed: int = Field(default=0, ge=0)

    def with_seed(self, seed: Optional[int]) -> "PipelineConfig":
        if seed is None:
            return self
        return PipelineConfig.model_validate({**self.model_dump(), "hough_seed": seed})


def flatten(nested: dict[str, Any], prefix: str = "") -> dict[str, Any]:
    """``{"oitr": {"upper": 30}}`` -> ``{"oitr.upper": 30}``."""
    flat: dict[str, Any] = {}
    for key, value in nested.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(flatten(value, prefix=f"{name}."))
        else:
            flat[name] = value
    return flat


def unflatten(flat: dict[str, Any]) -> dict[str, Any]:
    """Inverse of :func:`flatten`.

    Raises:
        ValueError: a key is used both as a value and as a namespace
    """
    nested: dict[str, Any] = {}
    for key, value in flat.items():
        parts = str(key).split(".")
        node = nested
        for part in parts[:-1]:
            child = node.setdefault(part, {})
            if not isinstance(child, dict):
                raise ValueError(f"Key '{key}' nests under '{part}', which already holds a value")
            node = child
        if isinstance(node.get(parts[-1]), dict):
            raise ValueError(f"Key '{key}' is also used as a namespace")
        node[parts[-1]] = value
    return nested


def load_config(path: Optional[Union[str, Path]] = None) -> PipelineConfig:
    """Load a flat-key YAML config; ``None`` loads the packaged defaults.

    Keys not present in the file keep their defaults.

    Raises:
        ConfigError: unreadable file, invalid YAML, or values that fail validation
    """
    config_path = Path(path) if path is not None else DEFAULTS_PATH
    try:
        with open(config_path, encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except FileNotFoundError as e:
        raise ConfigError(config_path, "file not found") from e
    except OSError as e:
        raise ConfigError(config_path, str(e)) from e
    except yaml.YAMLError as e:
        raise ConfigError(config_path, f"invalid YAML: {e}") from e

    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError(config_path, "top level must be a mapping of 'section.key: value' entries")

    try:
        return PipelineConfig.model_validate(unflatten(data))
    except ValueError as e:
        # pydantic's ValidationError is a ValueError
        detail = _describe_validation(e) if isinstance(e, ValidationError) else str(e)
        raise ConfigError(config_path, detail) from e


def _describe_validation(error: ValidationError) -> str:
    parts = []
    for item in error.errors():
        loc = ".".join(str(p) for p in item["loc"])
        parts.append(f"{loc}: {item['msg']}" if loc else item["msg"])
    return "; ".join(parts)


def dump_config(config: PipelineConfig) -> str:
    """Serialize to the flat-key YAML that :func:`load_config` reads."""
    flat = flatten(config.model_dump(mode="json"))
    return yaml.safe_dump(flat, sort_keys=False, default_flow_style=None)
