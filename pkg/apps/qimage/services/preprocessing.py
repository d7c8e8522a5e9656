"""Image types, bilinear downsampling and binarization."""

from dataclasses import dataclass

import numpy as np

from common.exceptions import DimensionMismatchError, InvalidParameterError


@dataclass(frozen=True, eq=False)
class GrayImage:
    """Row-major intensities in [0, 1]; pixels has shape (height, width)."""

    pixels: np.ndarray

    def __post_init__(self) -> None:
        pixels = np.array(self.pixels, dtype=np.float64)
        if pixels.ndim != 2 or pixels.size == 0:
            raise DimensionMismatchError(f"Expected a non-empty 2-D image, got shape {pixels.shape}")
        if not np.all(np.isfinite(pixels)):
            raise InvalidParameterError("Pixel values must be finite")
        pixels = np.clip(pixels, 0.0, 1.0)
        pixels.setflags(write=False)
        object.__setattr__(self, "pixels", pixels)

    @classmethod
    def from_bytes(cls, raw: np.ndarray) -> "GrayImage":
        """Scale 0..255 intensities to [0, 1]."""
        return cls(np.asarray(raw, dtype=np.float64) / 255.0)

    @property
    def height(self) -> int:
        return int(self.pixels.shape[0])

    @property
    def width(self) -> int:
        return int(self.pixels.shape[1])


@dataclass(frozen=True, eq=False)
class BinaryImage:
    """Square {0,1} image with a power-of-two side; bits has shape (side, side)."""

    bits: np.ndarray

    def __post_init__(self) -> None:
        bits = np.array(self.bits, dtype=np.uint8)
        if bits.ndim != 2 or bits.shape[0] != bits.shape[1]:
            raise DimensionMismatchError(f"Binary images are square, got shape {bits.shape}")
        side = bits.shape[0]
        if side < 1 or side & (side - 1):
            raise DimensionMismatchError(f"Side must be a power of two, got {side}")
        if np.any(bits > 1):
            raise InvalidParameterError("Binary image values must be 0 or 1")
        bits.setflags(write=False)
        object.__setattr__(self, "bits", bits)

    @property
    def side(self) -> int:
        return int(self.bits.shape[0])

    @property
    def order(self) -> int:
        """n with side == 2^n."""
        return self.side.bit_length() - 1

    def flat(self) -> np.ndarray:
        """Row-major bits; position p = row * side + col."""
        return self.bits.reshape(-1)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BinaryImage) and np.array_equal(self.bits, other.bits)

    def __hash__(self) -> int:
        return hash(self.bits.tobytes())


def _sample_axis(source: int, target: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    # Pixel centres: output i samples source coordinate (i + 0.5) * source / target - 0.5
    coords = (np.arange(target) + 0.5) * source / target - 0.5
    coords = np.clip(coords, 0.0, source - 1)
    low = np.floor(coords).astype(np.int64)
    high = np.minimum(low + 1, source - 1)
    return low, high, coords - low


def resample(pixels: np.ndarray, target_side: int) -> np.ndarray:
    """Bilinear resampling of (..., H, W) arrays to (..., target_side, target_side)."""
    if target_side < 1:
        raise InvalidParameterError(f"target_side must be >= 1, got {target_side}")
    pixels = np.asarray(pixels, dtype=np.float64)
    height, width = pixels.shape[-2:]
    y0, y1, fy = _sample_axis(height, target_side)
    x0, x1, fx = _sample_axis(width, target_side)

    rows = pixels[..., y0, :] * (1.0 - fy)[:, None] + pixels[..., y1, :] * fy[:, None]
    out = rows[..., x0] * (1.0 - fx) + rows[..., x1] * fx
    return np.clip(out, 0.0, 1.0)


def bilinear_downsample(img: GrayImage, target_side: int) -> GrayImage:
    return GrayImage(resample(img.pixels, target_side))


def binarize(img: GrayImage, threshold: float = 0.5) -> BinaryImage:
    """Bit is 1 iff pixel >= threshold."""
    if img.height != img.width:
        raise DimensionMismatchError(f"Binarization needs a square image, got {img.height}x{img.width}")
    return BinaryImage((img.pixels >= threshold).astype(np.uint8))


def preprocess(raw: np.ndarray, side: int, threshold: float = 0.5) -> np.ndarray:
    """Scale a stack of 0..255 images, downsample and binarize; returns (N, side, side) uint8."""
    scaled = np.asarray(raw, dtype=np.float64) / 255.0
    return (resample(scaled, side) >= threshold).astype(np.uint8)
