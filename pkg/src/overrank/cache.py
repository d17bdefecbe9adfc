"""Rank-table persistence: versioned binary, JSON, and CSV formats.

All three formats carry {format_version, n_max} followed by one record per
(m, n) with a nonzero count; counts are arbitrary-precision integers
(decimal strings in JSON/CSV, length-prefixed little-endian bytes in the
binary form).  Binary is the default cache format; CSV matches the `ranks`
command output and round-trips losslessly.
"""

from __future__ import annotations

import csv
import io
import json
import struct

from .qseries import RankTable

FORMAT_VERSION = 1
_MAGIC = b"OVRT"


def save_table(table: RankTable, path: str, fmt: str | None = None) -> None:
    """Write a table; fmt in {binary, json, csv}, inferred from the suffix."""
    fmt = fmt or _infer_format(path)
    if fmt == "binary":
        with open(path, "wb") as fh:
            fh.write(_MAGIC)
            fh.write(struct.pack("<BI", FORMAT_VERSION, table.n_max))
            for n in range(table.n_max + 1):
                row = table.rows[n]
                entries = [(m, v) for m, v in enumerate(row) if v]
                fh.write(struct.pack("<I", len(entries)))
                for m, v in entries:
                    raw = v.to_bytes((v.bit_length() + 7) // 8 or 1, "little")
                    fh.write(struct.pack("<II", m, len(raw)))
                    fh.write(raw)
    elif fmt == "json":
        doc = {
            "format_version": FORMAT_VERSION,
            "n_max": table.n_max,
            "rows": [
                [[m, str(v)] for m, v in enumerate(table.rows[n]) if v]
                for n in range(table.n_max + 1)
            ],
        }
        with open(path, "w") as fh:
            json.dump(doc, fh, sort_keys=True)
    elif fmt == "csv":
        with open(path, "w", newline="") as fh:
            fh.write(table_to_csv(table))
    else:
        raise ValueError(f"unknown table format {fmt!r}")


def table_to_csv(table: RankTable) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["format_version", "n_max"])
    writer.writerow([FORMAT_VERSION, table.n_max])
    writer.writerow(["n", "m", "count"])
    for n in range(table.n_max + 1):
        for m, v in enumerate(table.rows[n]):
            if v:
                writer.writerow([n, m, str(v)])
    return buf.getvalue()


def load_table(path: str) -> RankTable:
    """Load a table saved in any supported format (sniffed from content)."""
    with open(path, "rb") as fh:
        head = fh.read(4)
    if head == _MAGIC:
        return _load_binary(path)
    if head[:1] == b"{":
        return _load_json(path)
    return _load_csv(path)


def _rows_from_entries(n_max: int, entries) -> list:
    rows = [[0] * max(1, n) for n in range(n_max + 1)]
    for n, m, v in entries:
        if not 0 <= n <= n_max or m >= len(rows[n]):
            raise ValueError(f"table entry out of range: n={n}, m={m}")
        rows[n][m] = v
    return [tuple(r) for r in rows]


def _load_binary(path: str) -> RankTable:
    with open(path, "rb") as fh:
        if fh.read(4) != _MAGIC:
            raise ValueError("not a rank-table cache file")
        version, n_max = struct.unpack("<BI", fh.read(5))
        if version != FORMAT_VERSION:
            raise ValueError(f"unsupported cache format version {version}")
        entries = []
        for n in range(n_max + 1):
            (count,) = struct.unpack("<I", fh.read(4))
            for _ in range(count):
                m, ln = struct.unpack("<II", fh.read(8))
                entries.append((n, m, int.from_bytes(fh.read(ln), "little")))
    return RankTable(n_max, _rows_from_entries(n_max, entries))


def _load_json(path: str) -> RankTable:
    with open(path) as fh:
        doc = json.load(fh)
    if doc.get("format_version") != FORMAT_VERSION:
        raise ValueError(f"unsupported cache format version {doc.get('format_version')}")
    n_max = doc["n_max"]
    entries = [(n, m, int(v)) for n, row in enumerate(doc["rows"]) for m, v in row]
    return RankTable(n_max, _rows_from_entries(n_max, entries))


def _load_csv(path: str) -> RankTable:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != ["format_version", "n_max"]:
            raise ValueError("not a rank-table CSV file")
        version, n_max = (int(x) for x in next(reader))
        if version != FORMAT_VERSION:
            raise ValueError(f"unsupported cache format version {version}")
        if next(reader) != ["n", "m", "count"]:
            raise ValueError("missing column header row")
        entries = [(int(n), int(m), int(v)) for n, m, v in reader]
    return RankTable(n_max, _rows_from_entries(n_max, entries))


def _infer_format(path: str) -> str:
    if path.endswith(".json"):
        return "json"
    if path.endswith(".csv"):
        return "csv"
    return "binary"
