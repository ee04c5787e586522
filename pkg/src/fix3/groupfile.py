"""Plain-text group files and JSON report bytes.

A group file is UTF-8 and line oriented::

    # comments run to the end of the line
    degree 5
    gen (1 2)
    gen (1 2 3 4 5)
    genimg 2 3 4 5 1

``degree N`` comes first and exactly once.  ``gen`` takes disjoint cycles on
the points ``1..N`` separated by spaces, or ``()`` for the identity.
``genimg`` lists the images of ``1..N`` in order.
"""

from __future__ import annotations

import re
from pathlib import Path

from .errors import GroupFileError
from .harness import Report
from .perm import Permutation, PermGroup

_CYCLE = re.compile(r"\(([^()]*)\)")


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        bad = next(t for t in tokens if not t.lstrip("-").isdigit())
        raise GroupFileError(lineno, f"not an integer: {bad!r}") from None


def _parse_cycles(text: str, degree: int, lineno: int) -> Permutation:
    text = text.strip()
    if not text:
        raise GroupFileError(lineno, "gen needs cycles or ()")
    if _CYCLE.sub("", text).strip():
        raise GroupFileError(lineno, f"malformed cycle notation: {text!r}")
    images = list(range(degree))
    seen: set[int] = set()
    for body in _CYCLE.findall(text):
        pts = _ints(body.split(), lineno)
        for p in pts:
            if not 1 <= p <= degree:
                raise GroupFileError(lineno, f"point {p} outside 1..{degree}")
            if p in seen:
                raise GroupFileError(lineno, f"point {p} repeated; cycles must be disjoint")
            seen.add(p)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            images[a - 1] = b - 1
    return Permutation(images)


def _parse_images(tokens: list[str], degree: int, lineno: int) -> Permutation:
    vals = _ints(tokens, lineno)
    if len(vals) != degree:
        raise GroupFileError(lineno, f"genimg needs {degree} images, got {len(vals)}")
    if sorted(vals) != list(range(1, degree + 1)):
        raise GroupFileError(lineno, "genimg images are not a bijection of 1..N")
    return Permutation([v - 1 for v in vals])


def parse_group_text(text: str) -> PermGroup:
    degree = None
    gens: list[Permutation] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        if keyword == "degree":
            if degree is not None:
                raise GroupFileError(lineno, "degree given twice")
            vals = _ints(rest.split(), lineno)
            if len(vals) != 1 or vals[0] < 1:
                raise GroupFileError(lineno, "degree needs one positive integer")
            degree = vals[0]
        elif keyword in ("gen", "genimg"):
            if degree is None:
                raise GroupFileError(lineno, f"{keyword} before degree")
            if keyword == "gen":
                gens.append(_parse_cycles(rest, degree, lineno))
            else:
                gens.append(_parse_images(rest.split(), degree, lineno))
        else:
            raise GroupFileError(lineno, f"unknown keyword {keyword!r}")
    if degree is None:
        raise GroupFileError(0, "missing degree line")
    return PermGroup(gens, degree)


def parse_group_file(path: str | Path) -> PermGroup:
    try:
        text = Path(path).read_bytes().decode("utf-8")
    except UnicodeDecodeError as exc:
        raise GroupFileError(0, f"not UTF-8: {exc}") from None
    return parse_group_text(text)


def format_group_file(G: PermGroup) -> str:
    lines = [f"degree {G.degree}"]
    for g in G.generators:
        lines.append(f"gen {g.cycle_string(one_indexed=True)}")
    return "\n".join(lines) + "\n"


def emit_report(report: Report) -> bytes:
    return (report.to_json() + "\n").encode("utf-8")


def parse_report(data: bytes) -> Report:
    return Report.from_json(data.decode("utf-8"))
