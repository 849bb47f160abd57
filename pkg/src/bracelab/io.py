"""Reading and writing the plain-text ``.brace`` table format.

::

    brace v1
    order N
    addition
    <N lines of N indices>
    multiplication
    <N lines of N indices>

Lines starting with ``#`` are comments. A ``# family d12 M`` or
``# family d13 N`` comment restores coordinate labels on load.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional, Union

from .core import BraceTable, require_brace
from .errors import StructureError
from .parametric import family

PathLike = Union[str, Path]


def dumps(B: BraceTable, family_tag: Optional[tuple[str, int]] = None) -> str:
    lines = []
    if family_tag is not None:
        lines.append(f"# family {family_tag[0]} {family_tag[1]}")
    lines.append("brace v1")
    lines.append(f"order {B.order}")
    lines.append("addition")
    lines.extend(" ".join(str(v) for v in row) for row in B.add.tolist())
    lines.append("multiplication")
    lines.extend(" ".join(str(v) for v in row) for row in B.mul.tolist())
    return "\n".join(lines) + "\n"


def save(B: BraceTable, path: PathLike, family_tag: Optional[tuple[str, int]] = None) -> None:
    with open(path, "w", newline="\n", encoding="ascii") as fh:
        fh.write(dumps(B, family_tag))


def _parse_row(line: str, lineno: int, n: int) -> list[int]:
    parts = line.split(" ")
    if len(parts) != n:
        raise StructureError(f"line {lineno}: expected {n} entries, found {len(parts)}")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise StructureError(f"line {lineno}: non-integer entry") from None


def loads(text: str, name: str = "brace", checked: bool = True) -> BraceTable:
    tag = None
    body = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        if line.startswith("#"):
            words = line[1:].split()
            if len(words) == 3 and words[0] == "family":
                tag = (words[1], words[2])
            continue
        if line == "":
            continue
        body.append((lineno, line))
    it = iter(body)

    def expect(prefix):
        try:
            lineno, line = next(it)
        except StopIteration:
            raise StructureError(f"unexpected end of file, expected {prefix!r}") from None
        if not line.startswith(prefix):
            raise StructureError(f"line {lineno}: expected {prefix!r}, found {line!r}")
        return lineno, line

    expect("brace v1")
    lineno, line = expect("order ")
    try:
        n = int(line.split(" ", 1)[1])
    except ValueError:
        raise StructureError(f"line {lineno}: bad order") from None
    if n < 1:
        raise StructureError(f"line {lineno}: order must be positive")
    tables = []
    for section in ("addition", "multiplication"):
        expect(section)
        rows = []
        for _ in range(n):
            try:
                lineno, line = next(it)
            except StopIteration:
                raise StructureError(f"{section} table is truncated") from None
            rows.append(_parse_row(line, lineno, n))
        tables.append(rows)
    extra = next(it, None)
    if extra is not None:
        raise StructureError(f"line {extra[0]}: trailing content")

    labels = None
    if tag is not None:
        try:
            fam = family(tag[0], int(tag[1]))
        except Exception:
            fam = None
        if fam is not None and fam.order == n:
            labels = tuple(fam.element(i) for i in range(n))
            name = f"{name} [{fam.describe()}]"
    B = BraceTable(tables[0], tables[1], name=name, labels=labels)
    if checked:
        require_brace(B)
    return B


def load(path: PathLike, checked: bool = True) -> BraceTable:
    path = Path(path)
    try:
        text = path.read_text(encoding="ascii")
    except UnicodeDecodeError:
        raise StructureError(f"{path}: not an ASCII file") from None
    return loads(text, name=path.name, checked=checked)
