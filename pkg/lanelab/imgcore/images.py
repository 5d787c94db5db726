"""Raster types shared by every pixel-level stage, and their file I/O."""

from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np
from PIL import Image, UnidentifiedImageError

MIN_FRAME_SIDE = 8


@dataclass(frozen=True, eq=False)
class RgbImage:
    """24-bit colour raster, ``pixels[row, col] = (R, G, B)``."""

    pixels: np.ndarray

    def __post_init__(self) -> None:
        if self.pixels.ndim != 3 or self.pixels.shape[2] != 3:
            raise ValueError(f"RGB pixels must have shape (height, width, 3), got {self.pixels.shape}")
        if self.pixels.dtype != np.uint8:
            raise ValueError(f"RGB pixels must be uint8, got {self.pixels.dtype}")
        height, width = self.pixels.shape[:2]
        if width < MIN_FRAME_SIDE or height < MIN_FRAME_SIDE:
            raise ValueError(f"RGB images must be at least {MIN_FRAME_SIDE}x{MIN_FRAME_SIDE}, got {width}x{height}")

    @property
    def width(self) -> int:
        return int(self.pixels.shape[1])

    @property
    def height(self) -> int:
        return int(self.pixels.shape[0])

    @property
    def size(self) -> tuple[int, int]:
        """(width, height)"""
        return self.width, self.height

    def copy(self) -> "RgbImage":
        return RgbImage(self.pixels.copy())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RgbImage) and np.array_equal(self.pixels, other.pixels)


@dataclass(frozen=True, eq=False)
class GrayImage:
    """8-bit intensity raster."""

    pixels: np.ndarray

    def __post_init__(self) -> None:
        if self.pixels.ndim != 2:
            raise ValueError(f"Gray pixels must be two-dimensional, got shape {self.pixels.shape}")
        if self.pixels.dtype != np.uint8:
            raise ValueError(f"Gray pixels must be uint8, got {self.pixels.dtype}")

    @property
    def width(self) -> int:
        return int(self.pixels.shape[1])

    @property
    def height(self) -> int:
        return int(self.pixels.shape[0])

    @property
    def size(self) -> tuple[int, int]:
        return self.width, self.height

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GrayImage) and np.array_equal(self.pixels, other.pixels)


@dataclass(frozen=True, eq=False)
class EdgeMap:
    """Binary raster of confirmed edge pixels."""

    mask: np.ndarray

    def __post_init__(self) -> None:
        if self.mask.ndim != 2:
            raise ValueError(f"Edge mask must be two-dimensional, got shape {self.mask.shape}")
        if self.mask.dtype != np.bool_:
            raise ValueError(f"Edge mask must be boolean, got {self.mask.dtype}")

    @classmethod
    def empty(cls, width: int, height: int) -> "EdgeMap":
        return cls(np.zeros((height, width), dtype=bool))

    @property
    def width(self) -> int:
        return int(self.mask.shape[1])

    @property
    def height(self) -> int:
        return int(self.mask.shape[0])

    @property
    def size(self) -> tuple[int, int]:
        return self.width, self.height

    def count(self) -> int:
        return int(self.mask.sum())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, EdgeMap) and np.array_equal(self.mask, other.mask)


def read_rgb(path: Union[str, Path]) -> RgbImage:
    """Read a PNG or binary PPM/PGM file as an RGB raster.

    Grayscale files are expanded to three equal channels.

    Raises:
        OSError: the file is missing or not a decodable image
    """
    try:
        with Image.open(path) as img:
            return RgbImage(np.asarray(img.convert("RGB"), dtype=np.uint8).copy())
    except UnidentifiedImageError as e:
        raise OSError(f"Unrecognised image format: {path}") from e


def read_gray(path: Union[str, Path]) -> GrayImage:
    """Read an 8-bit grayscale raster (PNG or PGM)."""
    try:
        with Image.open(path) as img:
            if img.mode != "L":
                raise OSError(f"Expected an 8-bit grayscale image, got mode {img.mode}: {path}")
            return GrayImage(np.asarray(img, dtype=np.uint8).copy())
    except UnidentifiedImageError as e:
        raise OSError(f"Unrecognised image format: {path}") from e


def write_image(image: Union[RgbImage, GrayImage], path: Union[str, Path]) -> None:
    """Write a raster; the format follows the suffix (.png, .ppm, .pgm)."""
    path = Path(path)
    if isinstance(image, GrayImage):
        pil = Image.fromarray(image.pixels)
        if path.suffix.lower() == ".ppm":
            pil = pil.convert("RGB")
    else:
        pil = Image.fromarray(image.pixels)
        if path.suffix.lower() == ".pgm":
            pil = pil.convert("L")
    pil.save(path)


def write_edges(edges: EdgeMap, path: Union[str, Path]) -> None:
    """Write an edge map as a black/white grayscale image."""
    write_image(GrayImage(np.where(edges.mask, 255, 0).astype(np.uint8)), path)
