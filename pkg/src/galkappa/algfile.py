"""Plain-text algebra files: generator list plus exact structure constants.

Format, line by line (``#`` starts a comment, blank lines are skipped):

    generators: P1 P2 H J K1 K2
    [J, P1] = i*P2
    [K1, H] = i*P1
    [P1, P2] = 0

The first significant line declares the generator names (identifiers; the
name ``i`` is reserved for the imaginary unit).  Each following line fixes
one bracket.  Coefficients are exact scalar literals (``3``, ``-1/2``,
``i``, ``2*i``, ``3/4*i``); a bare name means coefficient 1.  Unstated
brackets vanish.  Restating a pair in either order is an error, as is a
self-bracket or an unknown name; errors carry the offending line number.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Dict, List, Tuple

from importlib import resources

from .cocycle import LieAlgebraSpec
from .errors import AlgebraFileError
from .exactscalar import ONE, Scalar, parse_scalar

_NAME = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")
_BRACKET = re.compile(r"^\[\s*([^\s,\]]+)\s*,\s*([^\s,\]]+)\s*\]\s*=\s*(.+)$")


def _split_terms(rhs: str) -> List[Tuple[int, str]]:
    """Split a bracket right-hand side into (sign, body) chunks."""
    out = []
    for chunk in re.finditer(r"[+-]?[^+-]+", rhs):
        text = chunk.group().strip()
        if not text:
            continue
        sign = 1
        if text[0] in "+-":
            sign = -1 if text[0] == "-" else 1
            text = text[1:].strip()
        out.append((sign, text))
    return out


def _parse_term(sign: int, body: str, line_no: int) -> Tuple[Scalar, str]:
    pieces = [p.strip() for p in body.split("*")]
    if not pieces or any(not p for p in pieces):
        raise AlgebraFileError(f"malformed term {body!r}", line=line_no)
    name = pieces[-1]
    if len(pieces) == 1:
        coeff = ONE
    else:
        literal = "*".join(pieces[:-1])
        try:
            coeff = parse_scalar(literal)
        except ValueError as exc:
            raise AlgebraFileError(str(exc), line=line_no) from None
    if not _NAME.match(name):
        raise AlgebraFileError(f"bad generator reference {name!r}", line=line_no)
    return (coeff * Scalar.of(sign), name)


def loads(text: str) -> LieAlgebraSpec:
    """Parse an algebra file from a string."""
    names: List[str] = []
    index: Dict[str, int] = {}
    brackets: Dict[Tuple[int, int], Dict[int, Scalar]] = {}
    seen_pairs: Dict[Tuple[int, int], int] = {}
    header_done = False

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not header_done:
            if not line.startswith("generators:"):
                raise AlgebraFileError(
                    "expected a 'generators:' declaration first", line=line_no
                )
            for name in line[len("generators:"):].split():
                if not _NAME.match(name):
                    raise AlgebraFileError(
                        f"bad generator name {name!r}", line=line_no
                    )
                if name == "i":
                    raise AlgebraFileError(
                        "generator name 'i' is reserved", line=line_no
                    )
                if name in index:
                    raise AlgebraFileError(
                        f"duplicate generator {name!r}", line=line_no
                    )
                index[name] = len(names)
                names.append(name)
            if not names:
                raise AlgebraFileError("empty generator list", line=line_no)
            header_done = True
            continue

        m = _BRACKET.match(line)
        if not m:
            raise AlgebraFileError(f"unrecognized line {line!r}", line=line_no)
        a_name, b_name, rhs = m.groups()
        for name in (a_name, b_name):
            if name not in index:
                raise AlgebraFileError(f"unknown generator {name!r}", line=line_no)
        a, b = index[a_name], index[b_name]
        if a == b:
            raise AlgebraFileError(
                f"self-bracket [{a_name},{a_name}] is identically zero", line=line_no
            )
        pair = (min(a, b), max(a, b))
        if pair in seen_pairs:
            raise AlgebraFileError(
                f"bracket for ({a_name},{b_name}) already given on line "
                f"{seen_pairs[pair]}",
                line=line_no,
            )
        seen_pairs[pair] = line_no

        flip = a > b  # file states [b-th, a-th]; store the ordered pair
        rhs = rhs.strip()
        acc: Dict[int, Scalar] = {}
        if rhs != "0":
            for sign, body in _split_terms(rhs):
                coeff, name = _parse_term(sign, body, line_no)
                if name not in index:
                    raise AlgebraFileError(
                        f"unknown generator {name!r}", line=line_no
                    )
                k = index[name]
                total = acc.get(k, Scalar()) + (-coeff if flip else coeff)
                if total.is_zero:
                    acc.pop(k, None)
                else:
                    acc[k] = total
        if acc:
            brackets[pair] = acc

    if not header_done:
        raise AlgebraFileError("file has no 'generators:' declaration", line=1)
    return LieAlgebraSpec(names, brackets)


def load(path) -> LieAlgebraSpec:
    """Parse an algebra file from disk."""
    return loads(Path(path).read_text())


def bundled_names() -> List[str]:
    """Names of the algebra files shipped inside the package."""
    root = resources.files("galkappa.data")
    return sorted(
        entry.name[: -len(".alg")]
        for entry in root.iterdir()
        if entry.name.endswith(".alg")
    )


def load_bundled(name: str) -> LieAlgebraSpec:
    """Load one of the algebras shipped with the package, by bare name."""
    fname = name if name.endswith(".alg") else f"{name}.alg"
    ref = resources.files("galkappa.data").joinpath(fname)
    if not ref.is_file():
        raise AlgebraFileError(
            f"no bundled algebra {name!r}; available: {', '.join(bundled_names())}"
        )
    return loads(ref.read_text())


def dumps(spec: LieAlgebraSpec) -> str:
    """Render a spec back to the file format (canonical pair order)."""
    lines = ["generators: " + " ".join(spec.names)]
    for (i, j) in spec.pairs():
        rhs = spec.brackets.get((i, j))
        if not rhs:
            continue
        chunks = []
        for k in sorted(rhs):
            c = rhs[k]
            text = str(c)
            if text == "1":
                term = spec.names[k]
            elif text == "-1":
                term = f"-{spec.names[k]}"
            else:
                term = f"{text}*{spec.names[k]}"
            if chunks and not term.startswith("-"):
                chunks.append("+ " + term)
            elif chunks:
                chunks.append("- " + term[1:])
            else:
                chunks.append(term)
        lines.append(f"[{spec.names[i]}, {spec.names[j]}] = " + " ".join(chunks))
    return "\n".join(lines) + "\n"
