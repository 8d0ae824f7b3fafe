"""Sieved generalized divisor functions d_k(n) with exact prefix sums.

d_k(n) counts ordered k-tuples of positive integers with product n; d_2 is
the ordinary divisor count.  Tables are built by iterated Dirichlet
convolution with the unit function, store 32-bit counts plus 64-bit exact
prefix-sum checkpoints at a fixed stride, and persist to a checksummed
binary cache ("DKT1").
"""
from __future__ import annotations

import math
import struct
from dataclasses import dataclass, field

import numpy as np

from ._kernels import _unit_convolve, _fnv1a64

MAGIC = b"DKT1"
CHECKPOINT_STRIDE = 1 << 16
MAX_K = 4
# int32 values: d_4(n) <= d(n)^3 and max d(n) for n <= 1e9 is 1344, so even a
# very loose bound keeps counts far below 2^31; the sieve still checks.
DEFAULT_MEMORY_BUDGET = 4 << 30


class ResourceError(Exception):
    pass


class FormatError(Exception):
    pass


class VersionError(Exception):
    pass


@dataclass
class DivisorTable:
    k: int
    limit: int
    values: np.ndarray                   # int32, index 0 unused
    stride: int = CHECKPOINT_STRIDE
    checkpoints: np.ndarray = field(default=None)  # int64, checkpoints[j] = sum to j*stride

    def __post_init__(self):
        if self.checkpoints is None:
            n_cp = self.limit // self.stride + 1
            cp = np.zeros(n_cp, np.int64)
            for j in range(1, n_cp):
                lo = (j - 1) * self.stride + 1
                hi = j * self.stride
                cp[j] = cp[j - 1] + int(np.sum(self.values[lo:hi + 1], dtype=np.int64))
            self.checkpoints = cp

    def prefix_float(self):
        """Cumulative sums as float64 (exact while below 2^53).

        prefix[n] = sum_{m <= n} d_k(m); prefix[0] = 0.
        """
        pref = np.zeros(self.limit + 1, np.float64)
        pref[1:] = np.cumsum(self.values[1:], dtype=np.int64)
        return pref


def sieve_dk(k: int, limit: int, memory_budget: int = DEFAULT_MEMORY_BUDGET) -> DivisorTable:
    if not 1 <= k <= MAX_K:
        raise ValueError(f"k={k} outside supported range 1..{MAX_K}")
    if limit < 1:
        raise ValueError("limit must be >= 1")
    if 4 * (limit + 1) * max(2, k) > memory_budget:
        raise ResourceError(f"limit {limit} exceeds memory budget {memory_budget}")
    vals = np.ones(limit + 1, np.int32)
    vals[0] = 0
    for _ in range(k - 1):
        vals = _unit_convolve(vals)
    if limit >= 1 and int(vals[1:].max(initial=1)) >= 2 ** 31 - 1:
        raise ResourceError("32-bit overflow in sieve values")
    return DivisorTable(k=k, limit=limit, values=vals)


def summatory(table: DivisorTable, x: float) -> int:
    """Sigma_{n <= x} d_k(n), exact, via nearest checkpoint plus partial scan."""
    if x < 1:
        return 0
    m = int(math.floor(x))
    if m > table.limit:
        raise ValueError(f"x={x} beyond table limit {table.limit}")
    j = m // table.stride
    base = int(table.checkpoints[j])
    lo = j * table.stride + 1
    return base + int(np.sum(table.values[lo:m + 1], dtype=np.int64))


def store_table(table: DivisorTable, path) -> None:
    header = struct.pack("<iqq", table.k, table.limit, table.stride)
    vbytes = np.ascontiguousarray(table.values, np.int32).tobytes()
    cbytes = np.ascontiguousarray(table.checkpoints, np.int64).tobytes()
    payload = header + vbytes + cbytes
    checksum = int(_fnv1a64(np.frombuffer(payload, np.uint8)))
    with open(path, "wb") as f:
        f.write(MAGIC)
        f.write(payload)
        f.write(struct.pack("<Q", checksum))


def load_table(path) -> DivisorTable:
    with open(path, "rb") as f:
        blob = f.read()
    if len(blob) < 4 + 20 + 8 or blob[:4] != MAGIC:
        raise FormatError("bad magic or truncated file")
    payload, (checksum,) = blob[4:-8], struct.unpack("<Q", blob[-8:])
    if int(_fnv1a64(np.frombuffer(payload, np.uint8))) != checksum:
        raise FormatError("checksum mismatch")
    k, limit, stride = struct.unpack("<iqq", payload[:20])
    if not 1 <= k <= MAX_K:
        raise VersionError(f"unsupported k={k} in header")
    n_vals = limit + 1
    n_cp = limit // stride + 1
    need = 20 + 4 * n_vals + 8 * n_cp
    if len(payload) != need:
        raise FormatError("payload length mismatch")
    values = np.frombuffer(payload, np.int32, n_vals, offset=20).copy()
    checkpoints = np.frombuffer(payload, np.int64, n_cp, offset=20 + 4 * n_vals).copy()
    return DivisorTable(k=k, limit=limit, values=values, stride=stride,
                        checkpoints=checkpoints)


def brute_force_dk(k: int, limit: int) -> np.ndarray:
    """Enumeration oracle: count ordered k-tuples by recursive divisor walk."""
    out = np.zeros(limit + 1, np.int64)
    if k == 1:
        out[1:] = 1
        return out
    sub = brute_force_dk(k - 1, limit)
    for a in range(1, limit + 1):
        for m in range(a, limit + 1, a):
            out[m] += sub[m // a]
    return out
