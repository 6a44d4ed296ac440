"""
Versioned little-endian binary format for built oracles. See docs/format.md for the byte layout.
"""

from __future__ import annotations

import hashlib
import json
import math
import struct
from fractions import Fraction

import numpy as np

from .composite import ORACLE_KINDS, CompositeOracle
from .exception import SerializationError
from .graph import INF
from .sssp import SampleAssignment
from .tz import TZOracle

MAGIC = b"DORC"
FORMAT_VERSION = 1
DIGEST_SIZE = 8

_HEADER = struct.Struct("<4sHBBqq")
_TZ_HEADER = struct.Struct("<qqqqqBB")
_FRACTION = struct.Struct("<qqd")
_LENGTH = struct.Struct("<Q")

_HAS_ASSIGNMENT = 1
_HAS_FAR_TABLE = 2
_HAS_FAR_ORACLE = 4


def _digest(body: bytes) -> bytes:
    return hashlib.blake2b(body, digest_size=DIGEST_SIZE).digest()


class _Writer:
    def __init__(self) -> None:
        self.buf = bytearray()

    def pack(self, fmt: struct.Struct, *values) -> None:
        self.buf += fmt.pack(*values)

    def array(self, values) -> None:
        arr = np.asarray(values, dtype="<i8").ravel()
        self.buf += _LENGTH.pack(len(arr))
        self.buf += arr.tobytes()

    def blob(self, data: bytes) -> None:
        self.buf += _LENGTH.pack(len(data))
        self.buf += data

    def json(self, obj) -> None:
        self.blob(json.dumps(obj, sort_keys=True).encode("utf8"))


class _Reader:
    def __init__(self, data: bytes) -> None:
        self.data = memoryview(data)
        self.pos = 0

    def take(self, size: int) -> memoryview:
        if self.pos + size > len(self.data):
            raise SerializationError(f"truncated oracle stream: need {size} bytes at offset {self.pos}, have {len(self.data) - self.pos}")
        chunk = self.data[self.pos : self.pos + size]
        self.pos += size
        return chunk

    def unpack(self, fmt: struct.Struct) -> tuple:
        return fmt.unpack(self.take(fmt.size))

    def array(self) -> np.ndarray:
        (count,) = self.unpack(_LENGTH)
        return np.frombuffer(self.take(8 * count), dtype="<i8").astype(np.int64)

    def blob(self) -> bytes:
        (count,) = self.unpack(_LENGTH)
        return bytes(self.take(count))

    def json(self):
        return json.loads(self.blob().decode("utf8"))


def _encode_distance(d) -> int:
    return -1 if d == INF else int(d)


def _decode_distance(d: int):
    return INF if d < 0 else d


def _write_tz(w: _Writer, o: TZOracle) -> None:
    w.pack(_TZ_HEADER, o.n, o.m, o.kappa, o.kappa_requested, o.level_rounds, int(o.restricted), int(o.connected))
    w.array(o.level_of)
    w.array(o.stored)
    w.array([_encode_distance(x) for v in o.stored for pivot in o.pivots[v] for x in pivot])
    w.array([len(o.bunches[v]) for v in o.stored])
    w.array([x for v in o.stored for pair in sorted(o.bunches[v].items()) for x in pair])


def _read_tz(r: _Reader) -> TZOracle:
    n, m, kappa, kappa_requested, level_rounds, restricted, connected = r.unpack(_TZ_HEADER)
    level_of = tuple(r.array().tolist())
    stored = tuple(r.array().tolist())
    flat_pivots = r.array().tolist()
    sizes = r.array().tolist()
    runs = r.array().tolist()
    if len(level_of) != n or len(flat_pivots) != 2 * kappa * len(stored) or len(sizes) != len(stored) or len(runs) != 2 * sum(sizes):
        raise SerializationError("inconsistent Thorup-Zwick block")

    pivots = {}
    for j, v in enumerate(stored):
        base = 2 * kappa * j
        pivots[v] = tuple((flat_pivots[base + 2 * i], _decode_distance(flat_pivots[base + 2 * i + 1])) for i in range(kappa))
    bunches = {}
    pos = 0
    for v, size in zip(stored, sizes):
        bunches[v] = {runs[pos + 2 * t]: runs[pos + 2 * t + 1] for t in range(size)}
        pos += 2 * size
    return TZOracle(n, m, kappa, kappa_requested, level_of, bool(restricted), stored, pivots, bunches, bool(connected), level_rounds)


def serialize(o: CompositeOracle) -> bytes:
    """Encode a built oracle; `deserialize` reproduces every query answer exactly."""
    flags = (
        (_HAS_ASSIGNMENT if o.assignment is not None else 0)
        | (_HAS_FAR_TABLE if o.far_table is not None else 0)
        | (_HAS_FAR_ORACLE if o.far_oracle is not None else 0)
    )
    w = _Writer()
    w.pack(_HEADER, MAGIC, FORMAT_VERSION, ORACLE_KINDS.index(o.kind), flags, o.k, o.stretch_bound)
    w.json(o.params)
    w.json(o.metadata)
    w.array(o.labels)
    w.array(o.vertex_map)
    _write_tz(w, o.inner)
    if o.assignment is not None:
        sa = o.assignment
        num, den = (sa.exponent.numerator, sa.exponent.denominator) if sa.exponent is not None else (0, 0)
        probability = sa.probability if sa.probability is not None else math.nan
        w.pack(_FRACTION, num, den, probability)
        w.array(sa.samples)
        w.array(sa.nearest)
        w.array(sa.distance)
    if o.far_table is not None:
        w.array(o.far_table)
    if o.far_oracle is not None:
        _write_tz(w, o.far_oracle)
    body = bytes(w.buf)
    return body + _digest(body)


def deserialize(data: bytes) -> CompositeOracle:
    """Decode an oracle stream.

    Raises:
        SerializationError: Wrong magic or version, a checksum mismatch, or a truncated stream.
    """
    if len(data) < _HEADER.size + DIGEST_SIZE:
        raise SerializationError(f"oracle stream of {len(data)} bytes is too short")
    magic, version = struct.unpack_from("<4sH", data)
    if magic != MAGIC:
        raise SerializationError(f"bad magic {magic!r}, expected {MAGIC!r}")
    if version != FORMAT_VERSION:
        raise SerializationError(f"unsupported format version {version}, expected {FORMAT_VERSION}")
    body, digest = data[:-DIGEST_SIZE], data[-DIGEST_SIZE:]
    if _digest(body) != digest:
        raise SerializationError("checksum mismatch: oracle stream is corrupted")

    r = _Reader(body)
    _, _, kind_code, flags, k, stretch_bound = r.unpack(_HEADER)
    if kind_code >= len(ORACLE_KINDS):
        raise SerializationError(f"unknown oracle kind code {kind_code}")
    params = r.json()
    metadata = r.json()
    labels = tuple(r.array().tolist())
    vertex_map = tuple(r.array().tolist())
    inner = _read_tz(r)

    assignment = None
    if flags & _HAS_ASSIGNMENT:
        num, den, probability = r.unpack(_FRACTION)
        samples = tuple(r.array().tolist())
        nearest = tuple(r.array().tolist())
        distance = tuple(r.array().tolist())
        assignment = SampleAssignment(
            samples, nearest, distance, Fraction(num, den) if den else None, None if math.isnan(probability) else probability
        )
    far_table = None
    if flags & _HAS_FAR_TABLE:
        cells = r.array()
        side = len(assignment.samples) if assignment is not None else 0
        if cells.size != side * side:
            raise SerializationError("far table size does not match the sample count")
        far_table = cells.reshape(side, side)
        far_table.setflags(write=False)
    far_oracle = _read_tz(r) if flags & _HAS_FAR_ORACLE else None
    if r.pos != len(body):
        raise SerializationError(f"{len(body) - r.pos} trailing bytes after the oracle")

    return CompositeOracle(
        ORACLE_KINDS[kind_code],
        k,
        inner,
        stretch_bound,
        assignment=assignment,
        far_table=far_table,
        far_oracle=far_oracle,
        params=params,
        metadata=metadata,
        labels=labels,
        vertex_map=vertex_map,
    )


def save_oracle(o: CompositeOracle, path: str) -> int:
    data = serialize(o)
    with open(path, "wb") as f:
        f.write(data)
    return len(data)


def load_oracle(path: str) -> CompositeOracle:
    with open(path, "rb") as f:
        return deserialize(f.read())
