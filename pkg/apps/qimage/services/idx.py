"""IDX container reader/writer (MNIST distribution format), gzip aware."""

import gzip
import logging
import struct
from pathlib import Path

import numpy as np

from common.exceptions import DatasetNotFoundError, MalformedDatasetError

logger = logging.getLogger(__name__)

IMAGES_MAGIC = 0x00000803
LABELS_MAGIC = 0x00000801

_GZIP_MAGIC = b"\x1f\x8b"
_DTYPES = {
    0x08: np.dtype(np.uint8),
    0x09: np.dtype(np.int8),
    0x0B: np.dtype(">i2"),
    0x0C: np.dtype(">i4"),
    0x0D: np.dtype(">f4"),
    0x0E: np.dtype(">f8"),
}
_CODES = {dtype: code for code, dtype in _DTYPES.items()}


def parse_idx(data: bytes) -> np.ndarray:
    """
    Decode an IDX payload (optionally gzip-compressed).

    Raises:
        MalformedDatasetError: On a bad magic number, unknown type code or size mismatch
    """
    if data[:2] == _GZIP_MAGIC:
        try:
            data = gzip.decompress(data)
        except (OSError, EOFError) as e:
            raise MalformedDatasetError(f"Corrupt gzip stream: {e}") from e
    if len(data) < 4:
        raise MalformedDatasetError("IDX payload shorter than its magic number")

    zero, type_code, ndim = struct.unpack(">HBB", data[:4])
    if zero != 0 or type_code not in _DTYPES or ndim == 0:
        raise MalformedDatasetError(f"Bad IDX magic 0x{int.from_bytes(data[:4], 'big'):08x}")
    header_end = 4 + 4 * ndim
    if len(data) < header_end:
        raise MalformedDatasetError("IDX header truncated")
    shape = struct.unpack(f">{ndim}I", data[4:header_end])

    dtype = _DTYPES[type_code]
    expected = int(np.prod(shape)) * dtype.itemsize
    body = data[header_end:]
    if len(body) != expected:
        raise MalformedDatasetError(f"IDX body has {len(body)} bytes, header implies {expected}")
    return np.frombuffer(body, dtype=dtype).reshape(shape)


def format_idx(array: np.ndarray) -> bytes:
    big_endian = array.dtype.newbyteorder(">") if array.dtype.itemsize > 1 else array.dtype
    if big_endian not in _CODES:
        raise MalformedDatasetError(f"No IDX type code for {array.dtype}")
    header = struct.pack(">HBB", 0, _CODES[big_endian], array.ndim)
    header += struct.pack(f">{array.ndim}I", *array.shape)
    return header + np.ascontiguousarray(array, dtype=big_endian).tobytes()


def read_idx(path: Path, *, magic: int | None = None) -> np.ndarray:
    if not path.is_file():
        raise DatasetNotFoundError(f"IDX file {path} does not exist")
    array = parse_idx(path.read_bytes())
    if magic is not None:
        expected_ndim = magic & 0xFF
        if array.dtype != np.uint8 or array.ndim != expected_ndim:
            raise MalformedDatasetError(
                f"{path} holds {array.dtype} with {array.ndim} dimension(s), expected magic 0x{magic:08x}"
            )
    logger.debug(f"Read IDX {path}: shape {array.shape}")
    return array


def read_mnist_images(path: Path) -> np.ndarray:
    return read_idx(path, magic=IMAGES_MAGIC)


def read_mnist_labels(path: Path) -> np.ndarray:
    return read_idx(path, magic=LABELS_MAGIC)
