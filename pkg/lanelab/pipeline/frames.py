"""Frame sources: a directory of numbered image files."""

import logging
from pathlib import Path
from typing import Iterator, Union

from lanelab.exceptions import FrameReadError, InputError
from lanelab.imgcore.images import RgbImage, read_rgb

logger = logging.getLogger(__name__)

FRAME_SUFFIXES = {".png", ".ppm", ".pgm"}


def list_frames(directory: Union[str, Path]) -> list[Path]:
    """Image files directly under ``directory``, in lexicographic order.

    Raises:
        InputError: the directory is missing or holds no frames
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise InputError(f"Frame directory not found: {directory}")
    paths = sorted(p for p in directory.iterdir() if p.is_file() and p.suffix.lower() in FRAME_SUFFIXES)
    if not paths:
        raise InputError(f"No PNG/PPM/PGM frames in {directory}")
    logger.info("Found %d frames in %s", len(paths), directory)
    return paths


def read_frames(paths: list[Path]) -> Iterator[RgbImage]:
    """Decode frames lazily in order.

    Raises:
        FrameReadError: a file cannot be decoded; carries its frame index
    """
    for index, path in enumerate(paths):
        try:
            yield read_rgb(path)
        except (OSError, ValueError) as e:
            raise FrameReadError(index, path, str(e)) from e
