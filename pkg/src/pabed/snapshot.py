"""Versioned binary snapshot format for tables (``.pbed`` files).

Layout, all integers little-endian:

    magic   4 bytes  b"PBED"
    version u32      currently 1
    payload:
        column count   u32
        per column:    name length u32, UTF-8 name, type tag u8
        row count      u64
        per column:    null bitmap, ceil(rows/8) bytes, LSB-first
                       (bit i of byte i//8 set = row i is null)
                       then the values:
                         INT64   rows x i64 (two's complement)
                         FLOAT64 rows x IEEE-754 binary64
                         BOOL    rows x 1 byte (0/1)
                         STRING  per row: u32 byte length + UTF-8 bytes
    crc     u32      CRC-32 of the payload bytes

Null positions are serialized as zero/empty so identical tables produce
identical files. The academic year is carried by the file name
(``<label>.pbed``), not by the byte layout.
"""

from __future__ import annotations

import os
import struct
import zlib
from pathlib import Path

import numpy as np

from .errors import FormatError
from .schema import ColumnSpec, ColumnType, TableSchema
from .store import ColumnData, Table
from .years import AcademicYearId, MalformedYear, parse_academic_year

MAGIC = b"PBED"
VERSION = 1

_TYPE_TAGS = {
    ColumnType.INT64: 1,
    ColumnType.FLOAT64: 2,
    ColumnType.BOOL: 3,
    ColumnType.STRING: 4,
}
_TAG_TYPES = {tag: t for t, tag in _TYPE_TAGS.items()}


def _pack_bitmap(nulls: np.ndarray) -> bytes:
    return np.packbits(nulls, bitorder="little").tobytes()


def _column_payload(col: ColumnData) -> bytes:
    parts = [_pack_bitmap(col.nulls)]
    if col.dtype is ColumnType.INT64:
        parts.append(np.where(col.nulls, 0, col.values).astype("<i8").tobytes())
    elif col.dtype is ColumnType.FLOAT64:
        parts.append(np.where(col.nulls, 0.0, col.values).astype("<f8").tobytes())
    elif col.dtype is ColumnType.BOOL:
        parts.append(
            np.where(col.nulls, False, col.values).astype(np.uint8).tobytes()
        )
    else:
        chunks = []
        for value, is_null in zip(col.values, col.nulls):
            encoded = b"" if is_null else value.encode("utf-8")
            chunks.append(struct.pack("<I", len(encoded)))
            chunks.append(encoded)
        parts.append(b"".join(chunks))
    return b"".join(parts)


def write_snapshot(table: Table, path: "Path | str") -> None:
    """Serialize ``table`` to ``path``, replacing it atomically."""
    path = Path(path)
    payload = bytearray()
    payload += struct.pack("<I", table.column_count)
    for col in table.columns:
        name = col.name.encode("utf-8")
        payload += struct.pack("<I", len(name))
        payload += name
        payload += struct.pack("<B", _TYPE_TAGS[col.dtype])
    payload += struct.pack("<Q", table.row_count)
    for col in table.columns:
        payload += _column_payload(col)

    blob = MAGIC + struct.pack("<I", VERSION) + payload
    blob += struct.pack("<I", zlib.crc32(payload))

    tmp = path.with_name(path.name + ".tmp")
    tmp.write_bytes(blob)
    os.replace(tmp, path)


class _Cursor:
    """Bounds-checked reader over the payload."""

    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, n: int) -> bytes:
        if n < 0 or self.pos + n > len(self.data):
            raise FormatError("snapshot truncated")
        out = self.data[self.pos : self.pos + n]
        self.pos += n
        return out

    def u8(self) -> int:
        return self.take(1)[0]

    def u32(self) -> int:
        return struct.unpack("<I", self.take(4))[0]

    def u64(self) -> int:
        return struct.unpack("<Q", self.take(8))[0]


def _unpack_bitmap(cur: _Cursor, rows: int) -> np.ndarray:
    raw = cur.take((rows + 7) // 8)
    if rows == 0:
        return np.zeros(0, dtype=bool)
    bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
    return bits[:rows].astype(bool)


def _read_column(cur: _Cursor, name: str, dtype: ColumnType, rows: int) -> ColumnData:
    nulls = _unpack_bitmap(cur, rows)
    if dtype is ColumnType.INT64:
        values = np.frombuffer(cur.take(rows * 8), dtype="<i8").astype(np.int64)
    elif dtype is ColumnType.FLOAT64:
        values = np.frombuffer(cur.take(rows * 8), dtype="<f8").astype(np.float64)
    elif dtype is ColumnType.BOOL:
        values = np.frombuffer(cur.take(rows), dtype=np.uint8) != 0
    else:
        strings = []
        for _ in range(rows):
            length = cur.u32()
            raw = cur.take(length)
            try:
                strings.append(raw.decode("utf-8"))
            except UnicodeDecodeError as exc:
                raise FormatError(f"column {name!r}: invalid UTF-8") from exc
        values = strings
    return ColumnData(name, dtype, values, nulls)


def read_snapshot(path: "Path | str", year: "AcademicYearId | None" = None) -> Table:
    """Load a snapshot; the year comes from the file stem unless given.

    Raises ``FormatError`` on bad magic, unsupported version, truncation,
    trailing bytes, or checksum mismatch.
    """
    path = Path(path)
    blob = path.read_bytes()
    if len(blob) < len(MAGIC) + 8:
        raise FormatError(f"{path.name}: too short to be a snapshot")
    if blob[:4] != MAGIC:
        raise FormatError(f"{path.name}: bad magic {blob[:4]!r}")
    (version,) = struct.unpack("<I", blob[4:8])
    if version != VERSION:
        raise FormatError(f"{path.name}: unsupported version {version}")
    payload = blob[8:-4]
    (stored_crc,) = struct.unpack("<I", blob[-4:])
    if zlib.crc32(payload) != stored_crc:
        raise FormatError(f"{path.name}: checksum mismatch")

    if year is None:
        try:
            year = parse_academic_year(path.stem)
        except MalformedYear as exc:
            raise FormatError(
                f"{path.name}: cannot determine academic year from file name"
            ) from exc

    cur = _Cursor(payload)
    ncols = cur.u32()
    specs = []
    for _ in range(ncols):
        name = cur.take(cur.u32())
        try:
            decoded = name.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise FormatError(f"{path.name}: invalid UTF-8 column name") from exc
        tag = cur.u8()
        if tag not in _TAG_TYPES:
            raise FormatError(f"{path.name}: unknown column type tag {tag}")
        specs.append(ColumnSpec(decoded, _TAG_TYPES[tag]))
    rows = cur.u64()
    columns = [_read_column(cur, s.name, s.dtype, rows) for s in specs]
    if cur.pos != len(payload):
        raise FormatError(f"{path.name}: {len(payload) - cur.pos} trailing bytes")

    return Table(year, TableSchema(tuple(specs)), columns, rows)
