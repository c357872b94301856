"""Relation files: a ``@ring p=<prime> weights=<w1,...,wn>`` header followed by
one free-algebra polynomial per line over ``x1 .. xn``.  ``#`` starts a comment.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Union

from .evaluate import parse_value
from .graded import FreeContext
from .syntax import ParseError

_HEADER = re.compile(r"@ring\s+(.*)$")


class RelationFileError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse_relations(text: str):
    """Return ``(context, generators)`` from relation-file text."""
    ctx = None
    gens = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _HEADER.match(line)
        if m:
            if ctx is not None:
                raise RelationFileError("duplicate @ring header", lineno)
            ctx = _parse_header(m.group(1), lineno)
            continue
        if ctx is None:
            raise RelationFileError("missing '@ring p=... weights=...' header before relations", lineno)
        try:
            gens.append(parse_value(line, ctx))
        except ParseError as exc:
            raise RelationFileError(str(exc), lineno) from exc
    if ctx is None:
        raise RelationFileError("missing @ring header", 1)
    return ctx, gens


def _parse_header(spec: str, lineno: int) -> FreeContext:
    fields = {}
    for part in spec.split():
        key, sep, value = part.partition("=")
        if not sep:
            raise RelationFileError(f"malformed header field {part!r}", lineno)
        fields[key] = value
    if set(fields) != {"p", "weights"}:
        raise RelationFileError("header needs exactly p=... and weights=...", lineno)
    try:
        p = int(fields["p"])
        weights = tuple(int(w) for w in fields["weights"].split(","))
        return FreeContext(weights, p)
    except ValueError as exc:
        raise RelationFileError(str(exc), lineno) from exc


def read_relations(path: Union[str, Path]):
    return parse_relations(Path(path).read_text(encoding="utf-8"))


def format_relations(ctx: FreeContext, gens) -> str:
    header = f"@ring p={ctx.p} weights={','.join(map(str, ctx.weights))}"
    return "\n".join([header] + [str(g) for g in gens]) + "\n"
