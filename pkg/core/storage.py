# storage.py
'''
Copyright 2025 HardyCheck developers

Input JSON loading (weights, sequences) and report output.
'''
from __future__ import annotations

import json, os

from pathlib import Path

from typing import Any

from core.discrete_hardy import WeightedSequence
from core.errors import ParseError
from core.weights import Weight, weight_from_dict

__all__ = ["read_json", "load_weight", "load_sequence", "atomic_write_text", "write_output"]

def read_json(path: str | Path) -> Any:
    """
    Parse a JSON input file.
    Raises: ParseError when the file is missing, unreadable or malformed.
    """
    p = Path(path).expanduser()
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read {p}: {e}") from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"Malformed JSON in {p}: {e}") from e

def load_weight(path: str | Path) -> Weight:
    """Weight spec file; a top-level {"weight": {...}} wrapper is accepted too."""
    data = read_json(path)
    if isinstance(data, dict) and "weight" in data and "kind" not in data:
        data = data["weight"]
    return weight_from_dict(data)

def load_sequence(path: str | Path) -> WeightedSequence:
    return WeightedSequence.from_dict(read_json(path))

def atomic_write_text(path: str | Path, text: str) -> None:
    """Same-directory temp file, fsync, replace, then fsync the directory entry."""
    p = Path(path).expanduser()
    p.parent.mkdir(parents=True, exist_ok=True)
    tmp = p.with_suffix(p.suffix + ".tmp")
    with tmp.open("w", encoding="utf-8", newline="") as f:
        f.write(text)
        f.flush()
        os.fsync(f.fileno())
    tmp.replace(p)

    dir_fd = os.open(str(p.parent), os.O_RDONLY)
    try:
        os.fsync(dir_fd)
    finally:
        os.close(dir_fd)

def write_output(text: str, out_path: str | Path | None, stream) -> None:
    """Report goes to out_path when given, else to stream (stdout)."""
    if out_path is None:
        stream.write(text)
        stream.flush()
        return
    atomic_write_text(out_path, text)
