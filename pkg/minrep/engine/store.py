"""Binary table files.

Layout (little-endian)::

    b"OCMP" | version u8 | opset-id length u8 | opset id (ascii) | N u64
    N complexity values (u8 for version 1, u16 for version 2)
    N provenance records: tag u8 + operand u32, packed

Writes go to ``<path>.tmp`` and are then renamed over the target. The
plain-text form lives in minrep.exports.
"""

from __future__ import annotations

import struct
import sys
from pathlib import Path

import numpy as np

from minrep.core.errors import OpsetMismatch, TableFormatError
from minrep.core.opset import OperatorSet

from .table import ComplexityTable, EngineConfig, extend_table

MAGIC = b"OCMP"
VERSION_FOR_WIDTH = {1: 1, 2: 2}
WIDTH_FOR_VERSION = {v: w for w, v in VERSION_FOR_WIDTH.items()}

PROVENANCE_DTYPE = np.dtype([("tag", "u1"), ("operand", "<u4")], align=False)


def encode_table(table: ComplexityTable) -> bytes:
    ops_id = table.ops.id.encode("ascii")
    n = table.limit
    head = MAGIC + struct.pack("<BB", VERSION_FOR_WIDTH[table.width], len(ops_id)) + ops_id
    head += struct.pack("<Q", n)
    values = table.complexity[1 : n + 1].astype("<u1" if table.width == 1 else "<u2")
    recs = np.empty(n, dtype=PROVENANCE_DTYPE)
    recs["tag"] = table.tags[1 : n + 1]
    recs["operand"] = table.args[1 : n + 1]
    return head + values.tobytes() + recs.tobytes()


def decode_table(data: bytes, *, source: str = "<bytes>") -> ComplexityTable:
    if data[:4] != MAGIC:
        raise TableFormatError(f"{source}: bad magic {data[:4]!r}")
    if len(data) < 6:
        raise TableFormatError(f"{source}: truncated header")
    version, id_len = struct.unpack_from("<BB", data, 4)
    width = WIDTH_FOR_VERSION.get(version)
    if width is None:
        raise TableFormatError(f"{source}: unsupported format version {version}")
    off = 6 + id_len
    if len(data) < off + 8:
        raise TableFormatError(f"{source}: truncated header")
    try:
        ops = OperatorSet.from_id(data[6:off].decode("ascii"))
    except (UnicodeDecodeError, ValueError) as e:
        raise TableFormatError(f"{source}: bad opset id ({e})") from None
    (n,) = struct.unpack_from("<Q", data, off)
    off += 8
    expected = off + n * width + n * PROVENANCE_DTYPE.itemsize
    if len(data) != expected:
        raise TableFormatError(f"{source}: expected {expected} bytes for N={n}, found {len(data)}")

    vals = np.frombuffer(data, dtype="<u1" if width == 1 else "<u2", count=n, offset=off)
    recs = np.frombuffer(data, dtype=PROVENANCE_DTYPE, count=n, offset=off + n * width)
    complexity = np.zeros(n + 1, dtype=np.uint8 if width == 1 else np.uint16)
    tags = np.zeros(n + 1, dtype=np.uint8)
    args = np.zeros(n + 1, dtype=np.uint32)
    complexity[1:] = vals
    tags[1:] = recs["tag"]
    args[1:] = recs["operand"]
    return ComplexityTable(ops=ops, limit=n, width=width, complexity=complexity, tags=tags, args=args)


def save_table(table: ComplexityTable, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_bytes(encode_table(table))
    tmp.replace(path)
    print(f"[store] wrote {path} (ops={table.ops.id} N={table.limit})", file=sys.stderr)


def load_table(path: Path) -> ComplexityTable:
    return decode_table(path.read_bytes(), source=str(path))


def resume_table(
    path: Path, ops: OperatorSet, limit: int, config: EngineConfig | None = None
) -> ComplexityTable:
    """Load ``path`` and extend it to ``limit``; the opset must match the file."""
    old = load_table(path)
    if old.ops.id != ops.id:
        raise OpsetMismatch(f"{path} holds a {old.ops.id} table, not {ops.id}")
    print(f"[store] resuming {path} from N={old.limit} to N={limit}", file=sys.stderr)
    return extend_table(old, limit, config)
