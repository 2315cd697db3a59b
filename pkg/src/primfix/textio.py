"""Plain-text file formats for digraphs, permutation groups and J-sets.

All three share the same layout: a header line naming the kind and its sizes,
then one record per line.  ``#`` starts a comment; blank lines are ignored.

    digraph <n>            then one ``u v`` line per arc (sorted)
    permgroup <deg> <g>    then one line of ``deg`` images per generator
    jset <r> <k>           then one line of ``r`` entries per tuple (sorted)
"""

from __future__ import annotations

import os
import tempfile
from typing import Iterable

from .digraph import Digraph
from .jset import JSet
from .permgroup import Permutation, PermutationGroup


class FormatError(ValueError):
    pass


def _records(text: str) -> list[list[str]]:
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    return rows


def _ints(fields: Iterable[str], where: str) -> list[int]:
    try:
        return [int(x) for x in fields]
    except ValueError as exc:
        raise FormatError(f"{where}: expected integers") from exc


def _header(rows: list[list[str]], kind: str, count: int) -> list[int]:
    if not rows or rows[0][0] != kind:
        raise FormatError(f"expected a '{kind}' header")
    if len(rows[0]) != count + 1:
        raise FormatError(f"'{kind}' header takes {count} integer(s)")
    return _ints(rows[0][1:], "header")


# digraphs

def format_digraph(g: Digraph, comment: str | None = None) -> str:
    lines = [f"# {comment}"] if comment else []
    lines.append(f"digraph {g.n}")
    lines.extend(f"{u} {v}" for u, v in g.arcs())
    return "\n".join(lines) + "\n"


def parse_digraph(text: str) -> Digraph:
    rows = _records(text)
    (n,) = _header(rows, "digraph", 1)
    if n < 1:
        raise FormatError("digraph needs at least one vertex")
    arcs = []
    for row in rows[1:]:
        if len(row) != 2:
            raise FormatError(f"arc line {' '.join(row)!r} needs two vertices")
        u, v = _ints(row, "arc")
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"arc ({u}, {v}) out of range for n = {n}")
        arcs.append((u, v))
    return Digraph.from_arcs(n, arcs)


# permutation groups

def format_group(group: PermutationGroup, comment: str | None = None) -> str:
    lines = [f"# {comment}"] if comment else []
    lines.append(f"permgroup {group.degree} {len(group.generators)}")
    lines.extend(" ".join(map(str, g.images)) for g in group.generators)
    return "\n".join(lines) + "\n"


def parse_group(text: str) -> PermutationGroup:
    rows = _records(text)
    degree, count = _header(rows, "permgroup", 2)
    if len(rows) - 1 != count:
        raise FormatError(f"header promises {count} generators, found {len(rows) - 1}")
    gens = []
    for row in rows[1:]:
        images = _ints(row, "generator")
        if len(images) != degree:
            raise FormatError(f"generator has {len(images)} images, degree is {degree}")
        try:
            gens.append(Permutation(images))
        except ValueError as exc:
            raise FormatError(str(exc)) from exc
    return PermutationGroup(degree, gens)


# J-sets

def format_jset(j: JSet, comment: str | None = None) -> str:
    lines = [f"# {comment}"] if comment else []
    lines.append(f"jset {j.r} {j.k}")
    lines.extend(" ".join(map(str, t)) for t in j.sorted_tuples())
    return "\n".join(lines) + "\n"


def parse_jset(text: str) -> JSet:
    rows = _records(text)
    r, k = _header(rows, "jset", 2)
    try:
        return JSet.of(r, k, [_ints(row, "tuple") for row in rows[1:]])
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


# files

def read_text(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def write_atomic(path: str, text: str) -> None:
    """Write via a temporary file in the same directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_digraph(path: str) -> Digraph:
    return parse_digraph(read_text(path))


def read_group(path: str) -> PermutationGroup:
    return parse_group(read_text(path))


def read_jset(path: str) -> JSet:
    return parse_jset(read_text(path))
