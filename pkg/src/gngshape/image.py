"""Binary shape images: loading, foreground sampling, pixel noise.

Images use the usual raster convention: x grows right, y grows down, pixel
(x, y) covers the unit square [x, x+1) x [y, y+1) with center (x+0.5, y+0.5).
"""

from __future__ import annotations

import io
import re

import numpy as np

from .errors import (
    CorruptFileError,
    EmptyForegroundError,
    UnsupportedFormatError,
)

__all__ = [
    "BinaryImage",
    "load_image",
    "encode_pgm",
    "sample_foreground",
    "perturb_gaussian",
    "background_majority",
]


class BinaryImage:
    """Boolean foreground mask of a single shape."""

    __slots__ = ("mask",)

    def __init__(self, mask: np.ndarray):
        mask = np.asarray(mask, dtype=bool)
        if mask.ndim != 2:
            raise ValueError("mask must be 2-D (height x width)")
        self.mask = mask
        self.mask.setflags(write=False)

    @property
    def width(self) -> int:
        return self.mask.shape[1]

    @property
    def height(self) -> int:
        return self.mask.shape[0]

    def foreground_count(self) -> int:
        return int(self.mask.sum())

    def foreground_coords(self) -> np.ndarray:
        """(k, 2) array of [x, y] integer pixel coordinates, row-major order."""
        ys, xs = np.nonzero(self.mask)
        return np.column_stack([xs, ys])

    def __eq__(self, other) -> bool:
        return isinstance(other, BinaryImage) and np.array_equal(self.mask, other.mask)

    def __repr__(self) -> str:
        return f"BinaryImage({self.width}x{self.height}, fg={self.foreground_count()})"


_PGM_TOKEN = re.compile(rb"(?:\s|#[^\n]*\n)*(\S+)")


def _pgm_tokens(data: bytes, count: int, start: int):
    """Read `count` whitespace/comment-delimited tokens, return (tokens, end)."""
    tokens = []
    pos = start
    while len(tokens) < count:
        m = _PGM_TOKEN.match(data, pos)
        if m is None:
            raise CorruptFileError("unexpected end of PGM header")
        tokens.append(m.group(1))
        pos = m.end()
    return tokens, pos


def load_image(
    data: bytes, threshold: int = 128, invert: bool = False
) -> BinaryImage:
    """Decode a PGM (P2/P5) or 8-bit grayscale PNG and threshold it.

    A pixel is foreground iff gray >= threshold (white object on black
    background); `invert` selects the opposite polarity.
    """
    if not 0 <= threshold <= 255:
        raise ValueError("threshold must be in [0, 255]")
    if data[:2] in (b"P2", b"P5"):
        gray = _decode_pgm(data)
    elif data[:8] == b"\x89PNG\r\n\x1a\n":
        gray = _decode_png(data)
    else:
        raise UnsupportedFormatError("unrecognized image magic bytes")
    mask = gray >= threshold
    if invert:
        mask = ~mask
    if not mask.any():
        raise EmptyForegroundError("no foreground pixel after thresholding")
    return BinaryImage(mask)


def _decode_pgm(data: bytes) -> np.ndarray:
    magic = data[:2]
    (width_t, height_t, maxval_t), pos = _pgm_tokens(data, 3, 2)
    try:
        width, height, maxval = int(width_t), int(height_t), int(maxval_t)
    except ValueError as exc:
        raise CorruptFileError("non-numeric PGM header field") from exc
    if width <= 0 or height <= 0:
        raise CorruptFileError("non-positive PGM dimensions")
    if not 0 < maxval <= 255:
        raise UnsupportedFormatError("only maxval <= 255 PGM is supported")
    n = width * height
    if magic == b"P5":
        # Exactly one whitespace byte separates the header from the payload.
        payload = data[pos + 1 : pos + 1 + n]
        if len(payload) != n:
            raise CorruptFileError("PGM payload shorter than header promises")
        gray = np.frombuffer(payload, dtype=np.uint8)
    else:
        try:
            tokens, _ = _pgm_tokens(data, n, pos)
            gray = np.array([int(t) for t in tokens], dtype=np.int64)
        except (CorruptFileError, ValueError) as exc:
            raise CorruptFileError("bad ASCII PGM payload") from exc
        if gray.min() < 0 or gray.max() > maxval:
            raise CorruptFileError("ASCII PGM sample out of range")
        gray = gray.astype(np.uint8)
    return gray.reshape(height, width)


def _decode_png(data: bytes) -> np.ndarray:
    try:
        from PIL import Image
    except ImportError as exc:
        raise UnsupportedFormatError(
            "PNG support requires Pillow (install gngshape[png])"
        ) from exc
    try:
        img = Image.open(io.BytesIO(data))
        img.load()
    except Exception as exc:
        raise CorruptFileError(f"broken PNG: {exc}") from exc
    if img.mode not in ("L", "1"):
        raise UnsupportedFormatError(
            f"only 8-bit grayscale PNG is accepted, got mode {img.mode!r}"
        )
    return np.asarray(img.convert("L"), dtype=np.uint8)


def encode_pgm(img: BinaryImage) -> bytes:
    """Serialize a mask as binary PGM (foreground=255, background=0)."""
    header = f"P5\n{img.width} {img.height}\n255\n".encode()
    return header + np.where(img.mask, 255, 0).astype(np.uint8).tobytes()


def sample_foreground(img: BinaryImage, rng: np.random.Generator) -> tuple[float, float]:
    """Uniformly sample one foreground pixel center."""
    coords = img.foreground_coords()
    if len(coords) == 0:
        raise EmptyForegroundError("image has no foreground pixel")
    x, y = coords[rng.integers(len(coords))]
    return (float(x) + 0.5, float(y) + 0.5)


def perturb_gaussian(
    img: BinaryImage, sigma: float, rng: np.random.Generator
) -> BinaryImage:
    """Displace every foreground pixel by rounded N(0, sigma^2) offsets.

    Destinations are clamped to the image border; collisions merge.
    """
    if sigma < 0:
        raise ValueError("sigma must be nonnegative")
    if sigma == 0:
        return img
    coords = img.foreground_coords()
    offsets = np.rint(rng.normal(0.0, sigma, size=coords.shape)).astype(np.int64)
    dest = coords + offsets
    dest[:, 0] = np.clip(dest[:, 0], 0, img.width - 1)
    dest[:, 1] = np.clip(dest[:, 1], 0, img.height - 1)
    mask = np.zeros_like(img.mask)
    mask[dest[:, 1], dest[:, 0]] = True
    return BinaryImage(mask)


def background_majority(img: BinaryImage, p: tuple[float, float]) -> bool:
    """True iff >= 5 of the 9 pixels around the pixel containing p are background.

    Out-of-image neighbors count as background.
    """
    cx = int(np.floor(p[0]))
    cy = int(np.floor(p[1]))
    background = 0
    for dy in (-1, 0, 1):
        for dx in (-1, 0, 1):
            x, y = cx + dx, cy + dy
            if not (0 <= x < img.width and 0 <= y < img.height) or not img.mask[y, x]:
                background += 1
    return background >= 5
