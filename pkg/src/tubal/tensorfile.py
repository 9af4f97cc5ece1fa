"""Binary tensor container: magic 'TLT1', explicit little-endian layout.

Header (32 bytes): 4-byte magic, 1 dtype code (0 = uint8 mask,
1 = float64 tensor), 1 order byte (always 3), 2 reserved zero bytes,
then three little-endian uint64 dimensions n1, n2, n3.  The payload is
little-endian and frontal-slice-major: k outermost, then i, then j, so
entry (i, j, k) sits at element offset k*n1*n2 + i*n2 + j.  Masks store
one byte per entry (0 or 1).  Roundtrips are lossless for float64
tensors and boolean masks.
"""

from __future__ import annotations

import struct

import numpy as np

from . import core

__all__ = [
    "MAGIC",
    "DTYPE_MASK",
    "DTYPE_TENSOR",
    "TensorFileError",
    "BadMagicError",
    "UnsupportedOrderError",
    "UnknownDtypeError",
    "TruncatedFileError",
    "tensor_to_bytes",
    "tensor_from_bytes",
    "write_tensor",
    "read_tensor",
]

MAGIC = b"TLT1"
DTYPE_MASK = 0
DTYPE_TENSOR = 1
_HEADER = struct.Struct("<4sBB2s3Q")


class TensorFileError(ValueError):
    """Base class for tensor container format errors."""


class BadMagicError(TensorFileError):
    """The file does not start with the container magic."""


class UnsupportedOrderError(TensorFileError):
    """The order byte is not 3."""


class UnknownDtypeError(TensorFileError):
    """The dtype code byte is not a known code."""


class TruncatedFileError(TensorFileError):
    """The payload is shorter than the header promises."""


def tensor_to_bytes(x: np.ndarray) -> bytes:
    """Serialize a float64 tensor or boolean mask."""
    arr = np.asarray(x)
    if arr.dtype == np.bool_:
        arr = core.as_mask3(arr)
        code = DTYPE_MASK
        payload = np.ascontiguousarray(arr.transpose(2, 0, 1)).astype("<u1").tobytes()
    else:
        arr = core.as_tensor3(arr)
        code = DTYPE_TENSOR
        payload = np.ascontiguousarray(arr.transpose(2, 0, 1)).astype("<f8").tobytes()
    n1, n2, n3 = arr.shape
    header = _HEADER.pack(MAGIC, code, 3, b"\x00\x00", n1, n2, n3)
    return header + payload


def tensor_from_bytes(data: bytes) -> np.ndarray:
    """Parse a serialized tensor or mask; inverse of tensor_to_bytes."""
    if len(data) < _HEADER.size:
        raise TruncatedFileError(
            f"file holds {len(data)} bytes, shorter than the {_HEADER.size}-byte header"
        )
    magic, code, order, _reserved, n1, n2, n3 = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise BadMagicError(f"bad magic {magic!r}, expected {MAGIC!r}")
    if order != 3:
        raise UnsupportedOrderError(f"order byte is {order}, only 3 is supported")
    if code not in (DTYPE_MASK, DTYPE_TENSOR):
        raise UnknownDtypeError(f"unknown dtype code {code}")
    if n1 == 0 or n2 == 0 or n3 == 0:
        raise TensorFileError(f"dimensions must be positive, got {(n1, n2, n3)}")
    count = n1 * n2 * n3
    itemsize = 1 if code == DTYPE_MASK else 8
    expected = _HEADER.size + count * itemsize
    if len(data) < expected:
        raise TruncatedFileError(
            f"payload truncated: file holds {len(data)} bytes, expected {expected}"
        )
    raw = data[_HEADER.size:expected]
    if code == DTYPE_MASK:
        flat = np.frombuffer(raw, dtype="<u1")
        arr = flat.reshape(n3, n1, n2).transpose(1, 2, 0)
        return arr != 0
    flat = np.frombuffer(raw, dtype="<f8")
    arr = flat.reshape(n3, n1, n2).transpose(1, 2, 0)
    return np.ascontiguousarray(arr).astype(np.float64)


def write_tensor(x: np.ndarray, path: str) -> None:
    """Write a tensor or mask to `path` ('-' writes to stdout)."""
    data = tensor_to_bytes(x)
    if path == "-":
        import sys

        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        with open(path, "wb") as fh:
            fh.write(data)


def read_tensor(path: str) -> np.ndarray:
    """Read a tensor or mask from `path` ('-' reads from stdin)."""
    if path == "-":
        import sys

        data = sys.stdin.buffer.read()
    else:
        with open(path, "rb") as fh:
            data = fh.read()
    return tensor_from_bytes(data)
