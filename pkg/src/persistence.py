"""
Durable writers for solver artifacts.
Every file is flushed and fsynced so a finished run leaves complete outputs.
"""
import csv
import json
import os
from typing import Any, Iterable, List, Sequence


def _ensure_parent(path: str):
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)


def write_text(path: str, text: str) -> str:
    """
    Write a text artifact to disk.

    Args:
        path: Destination file
        text: Full file contents

    Returns:
        The path written
    """
    _ensure_parent(path)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)
        f.flush()
        os.fsync(f.fileno())  # Force sync to disk
    return path


def write_json(path: str, document: Any) -> str:
    """Write a JSON document with stable key order."""
    return write_text(path, json.dumps(document, indent=2, sort_keys=True) + "\n")


def write_lines(path: str, lines: Iterable[str]) -> str:
    return write_text(path, "".join(lines))


def write_csv(path: str, rows: Sequence[Sequence[Any]]) -> str:
    _ensure_parent(path)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        for row in rows:
            writer.writerow(row)
        f.flush()
        os.fsync(f.fileno())
    return path


def read_json(path: str) -> Any:
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def read_text(path: str) -> str:
    with open(path, "r", encoding="utf-8") as f:
        return f.read()


def read_csv(path: str) -> List[List[str]]:
    with open(path, "r", encoding="utf-8", newline="") as f:
        return [row for row in csv.reader(f)]
