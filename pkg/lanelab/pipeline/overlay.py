"""Draw tracked lanes over the input frame."""

from typing import TYPE_CHECKING, Optional

import numpy as np
from PIL import Image, ImageDraw

from lanelab.config import OverlayParams
from lanelab.detect.candidates import Side
from lanelab.imgcore.images import RgbImage
from lanelab.imgcore.roi import TrapezoidRoi
from lanelab.track.halrr import Status

if TYPE_CHECKING:
    from lanelab.pipeline.runner import FrameResult


def render_overlay(
    frame: RgbImage,
    result: "FrameResult",
    params: Optional[OverlayParams] = None,
    roi: Optional[TrapezoidRoi] = None,
) -> RgbImage:
    """Return a copy of ``frame`` with the result's lanes drawn on it.

    Tracked and held lanes use different colours. Lane coordinates are scaled
    from the result's working resolution to the frame's size. The ROI outline
    is drawn only when ``params.draw_roi`` is set and ``roi`` is given.
    """
    params = params or OverlayParams()
    image = Image.fromarray(frame.pixels.copy())
    draw = ImageDraw.Draw(image)

    if params.draw_roi and roi is not None:
        corners = [tuple(map(float, v)) for v in roi.vertices(frame.width, frame.height)]
        draw.line(corners + [corners[0]], fill=params.roi_color, width=1)

    sx = frame.width / result.frame_size[0]
    sy = frame.height / result.frame_size[1]
    for side in (Side.LEFT, Side.RIGHT):
        lane = result.lanes.get(side)
        if lane is None:
            continue
        color = params.held_color if result.status.get(side) is Status.HELD else params.tracked_color
        x1, y1, x2, y2 = lane.scaled(sx, sy).as_tuple()
        draw.line([(round(x1), round(y1)), (round(x2), round(y2))], fill=color, width=params.line_width)

    return RgbImage(np.asarray(image, dtype=np.uint8).copy())
