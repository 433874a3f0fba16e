"""Binary snapshot files for grid-sampled maps.

Layout (all little-endian):

  bytes 0..11   magic ``b"HHSNAPSHOT\\0\\0"``
  bytes 12..15  format version (u32), currently 1
  u32 m, u32 n
  f64 lateral_extent, f64 floor, f64 ceiling
  m x u64 node counts (lateral axes first, height axis last)
  m x f64 spacings (redundant with the above; kept for self-description)
  payload: node values, C order, shape counts + (n,), f64

An optional JSON sidecar (same path + ".json") carries run metadata.
"""

from __future__ import annotations

import json
import struct
from pathlib import Path

import numpy as np

from .errors import GridError
from .geometry import MapField, ModelDims, SlabGrid

MAGIC = b"HHSNAPSHOT\x00\x00"
VERSION = 1


def save_field(path, field, metadata=None):
    """Write a MapField snapshot; returns the path written."""
    path = Path(path)
    grid = field.grid
    header = bytearray()
    header += MAGIC
    header += struct.pack("<I", VERSION)
    header += struct.pack("<II", grid.m, grid.n)
    header += struct.pack("<3d", grid.lateral_extent, grid.floor, grid.ceiling)
    header += struct.pack(f"<{grid.m}Q", *grid.counts)
    header += struct.pack(f"<{grid.m}d", *grid.spacings)
    payload = np.ascontiguousarray(field.values, dtype="<f8")
    with open(path, "wb") as fh:
        fh.write(bytes(header))
        fh.write(payload.tobytes(order="C"))
    if metadata is not None:
        sidecar = path.with_suffix(path.suffix + ".json")
        sidecar.write_text(json.dumps(metadata, sort_keys=True, indent=2))
    return path


def load_field(path):
    """Read a snapshot back into a MapField (metadata, if any, attached)."""
    path = Path(path)
    raw = path.read_bytes()
    if raw[:12] != MAGIC:
        raise GridError(f"{path} is not a snapshot file (bad magic)")
    (version,) = struct.unpack_from("<I", raw, 12)
    if version != VERSION:
        raise GridError(f"unsupported snapshot version {version}")
    off = 16
    m, n = struct.unpack_from("<II", raw, off); off += 8
    extent, floor, ceiling = struct.unpack_from("<3d", raw, off); off += 24
    counts = struct.unpack_from(f"<{m}Q", raw, off); off += 8 * m
    off += 8 * m  # spacings: derived quantities, not re-validated
    grid = SlabGrid(ModelDims(m, n), extent, floor, ceiling, tuple(int(c) for c in counts))
    count = int(np.prod(counts)) * n
    values = np.frombuffer(raw, dtype="<f8", count=count, offset=off)
    field = MapField(grid, values.reshape(grid.shape + (n,)).copy())
    sidecar = path.with_suffix(path.suffix + ".json")
    metadata = json.loads(sidecar.read_text()) if sidecar.exists() else None
    return field, metadata
