"""Matrix Market pattern files, prohibited-edge lists, and run manifests.

The interchange format for every matrix artifact is Matrix Market
coordinate pattern (1-based indices, sorted by row then column): exact
for 0/1 data and readable by eye. Errors carry the offending line
number, since these files get edited by hand.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .perturb import ProhibitedSet

_HEADER = "%%MatrixMarket matrix coordinate pattern general"


class MatrixFileError(ValueError):
    """A matrix or prohibited-edge file that cannot be trusted."""


def write_pattern(path, matrix, comments=()) -> None:
    """Write a 0/1 matrix as Matrix Market coordinate pattern."""
    m = np.asarray(matrix)
    entries = np.argwhere(m != 0)
    lines = [_HEADER]
    for c in comments:
        lines.append(f"% {c}")
    lines.append(f"{m.shape[0]} {m.shape[1]} {len(entries)}")
    for i, j in entries:
        lines.append(f"{i + 1} {j + 1}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_pattern(path) -> np.ndarray:
    """Read a coordinate pattern file back into a dense uint8 matrix.

    Raises:
        MatrixFileError: wrong banner, malformed size or entry lines,
            out-of-range indices, duplicates; the message names the
            1-based line number.
    """
    with open(path) as fh:
        raw = fh.read().splitlines()
    if not raw:
        raise MatrixFileError(f"{path}: empty file")
    banner = raw[0].split()
    if [t.lower() for t in banner] != [t.lower() for t in _HEADER.split()]:
        raise MatrixFileError(f"{path}, line 1: expected banner {_HEADER!r}, got {raw[0]!r}")
    size_line = None
    entries_start = None
    for k in range(1, len(raw)):
        if raw[k].startswith("%") or not raw[k].strip():
            continue
        size_line = raw[k].split()
        entries_start = k + 1
        break
    if size_line is None:
        raise MatrixFileError(f"{path}: no size line found")
    if len(size_line) != 3:
        raise MatrixFileError(
            f"{path}, line {entries_start}: size line needs 'rows cols nnz', got {len(size_line)} fields"
        )
    try:
        n_r, n_c, nnz = (int(t) for t in size_line)
    except ValueError:
        raise MatrixFileError(f"{path}, line {entries_start}: size line is not three integers")
    if n_r <= 0 or n_c <= 0 or nnz < 0:
        raise MatrixFileError(f"{path}, line {entries_start}: nonpositive dimensions")
    m = np.zeros((n_r, n_c), dtype=np.uint8)
    seen = 0
    for k in range(entries_start, len(raw)):
        line = raw[k].strip()
        if not line or line.startswith("%"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise MatrixFileError(f"{path}, line {k + 1}: expected 'i j', got {raw[k]!r}")
        try:
            i, j = int(fields[0]), int(fields[1])
        except ValueError:
            raise MatrixFileError(f"{path}, line {k + 1}: non-integer index in {raw[k]!r}")
        if not (1 <= i <= n_r and 1 <= j <= n_c):
            raise MatrixFileError(
                f"{path}, line {k + 1}: index ({i}, {j}) outside {n_r} x {n_c}"
            )
        if m[i - 1, j - 1]:
            raise MatrixFileError(f"{path}, line {k + 1}: duplicate entry ({i}, {j})")
        m[i - 1, j - 1] = 1
        seen += 1
    if seen != nnz:
        raise MatrixFileError(f"{path}: size line promised {nnz} entries, file has {seen}")
    return m


def read_prohibited(path) -> ProhibitedSet:
    """Parse a prohibited-edge file: lines "i,j" (1-based), '#' comments.

    Raises:
        MatrixFileError: malformed line, named by number.
    """
    pairs = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = line.split(",")
            if len(fields) != 2:
                raise MatrixFileError(
                    f"{path}, line {lineno}: expected 'i,j', got {raw.rstrip()!r}"
                )
            try:
                i, j = int(fields[0]), int(fields[1])
            except ValueError:
                raise MatrixFileError(
                    f"{path}, line {lineno}: non-integer index in {raw.rstrip()!r}"
                )
            if i < 1 or j < 1:
                raise MatrixFileError(
                    f"{path}, line {lineno}: indices are 1-based, got ({i}, {j})"
                )
            pairs.append((i - 1, j - 1))
    return ProhibitedSet.from_pairs(pairs)


@dataclass
class RunManifest:
    """What a run did, with enough detail to redo it bit-exactly."""

    construction: str
    parameters: dict
    outputs: dict
    version: str
    duration_seconds: float

    def to_dict(self) -> dict:
        return {
            "construction": self.construction,
            "parameters": self.parameters,
            "outputs": self.outputs,
            "version": self.version,
            "duration_seconds": self.duration_seconds,
        }

    def write(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, indent=2)
            fh.write("\n")


def load_manifest(path) -> RunManifest:
    with open(path) as fh:
        d = json.load(fh)
    return RunManifest(
        construction=d["construction"],
        parameters=d["parameters"],
        outputs=d["outputs"],
        version=d["version"],
        duration_seconds=d["duration_seconds"],
    )
