"""Pytest configuration and fixtures."""

import tempfile
from pathlib import Path

import numpy as np
import pytest

from lanelab.config import FrameParams, PipelineConfig
from lanelab.imgcore.images import RgbImage
from lanelab.synthgen.scene import LaneSpec, SceneSpec

SMALL_WIDTH = 320
SMALL_HEIGHT = 240


def small_scene(**overrides) -> SceneSpec:
    """320x240 two-lane scene; lanes meet at (160, 125)."""
    fields = {
        "width": SMALL_WIDTH,
        "height": SMALL_HEIGHT,
        "left": LaneSpec(angle_deg=45.0, bottom_x=46.0),
        "right": LaneSpec(angle_deg=135.0, bottom_x=274.0),
        "horizon_y": 130.0,
        "frame_count": 10,
    }
    fields.update(overrides)
    return SceneSpec(**fields)


def small_config(**overrides) -> PipelineConfig:
    """Defaults with resizing off, so 320x240 frames are processed as they are."""
    fields = {"frame": FrameParams(width=SMALL_WIDTH, height=SMALL_HEIGHT, resize=False)}
    fields.update(overrides)
    return PipelineConfig(**fields)


def solid_rgb(width: int, height: int, value: int) -> RgbImage:
    return RgbImage(np.full((height, width, 3), value, dtype=np.uint8))


@pytest.fixture
def temp_dir():
    """Create a temporary directory for testing."""
    with tempfile.TemporaryDirectory() as tmpdir:
        yield Path(tmpdir)


@pytest.fixture
def scene() -> SceneSpec:
    return small_scene()


@pytest.fixture
def config() -> PipelineConfig:
    return small_config()
