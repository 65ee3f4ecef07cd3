"""Loader and in-process runner for the golden CLI transcripts in ``tests/corpus``."""

from __future__ import annotations

import contextlib
import io
import shlex
from dataclasses import dataclass
from pathlib import Path

from residua.cli import main

CORPUS = Path(__file__).parent / "corpus"


@dataclass(frozen=True)
class Transcript:
    name: str
    description: str
    argv: list[str]
    expected: str


def load(path: Path) -> Transcript:
    lines = path.read_text().splitlines()
    if not lines[0].startswith("# ") or not lines[1].startswith("$ residua "):
        raise ValueError(f"{path.name}: expected a '# ' header and a '$ residua' line")
    argv = shlex.split(lines[1])[2:]
    return Transcript(path.stem, lines[0][2:], argv, "\n".join(lines[2:]) + "\n")


def transcripts() -> list[Transcript]:
    return [load(p) for p in sorted(CORPUS.glob("*.txt"))]


def run(argv: list[str]) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        try:
            code = main(argv)
        except SystemExit as exc:
            code = exc.code if isinstance(exc.code, int) else 1
    return code, out.getvalue(), err.getvalue()
