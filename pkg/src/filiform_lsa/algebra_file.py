"""Reading and writing algebra files.

Grammar (one statement per line; ``#`` starts a comment; blank lines ignored)::

    file     := (pair | section)*
    pair     := key "=" value
    section  := "[alpha]" | "[brackets]"

Top-level keys, before any section:

    n      positive integer (required)
    label  free text, optionally in double quotes
    seed   integer

Inside ``[alpha]`` each key is ``k,s`` (a pair of ``I_n``) and each value a
scalar: an integer, a fraction ``p/q``, or ``a+b*sqrt(d)`` with rational a, b.
Inside ``[brackets]`` each key is ``i,j,k`` meaning the coefficient of ``e_k``
in ``[e_i, e_j]`` (1-based).  Keys and values may be wrapped in double quotes,
which keeps the format readable as TOML.  A file holds ``[alpha]`` or
``[brackets]``, not both; a file with neither is the algebra ``L(n)``, while an empty ``[brackets]``
section gives the abelian algebra.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .exact_linalg import LinalgError, format_scalar, parse_scalar
from .filiform import FiliformError, FiliformParams, build_algebra
from .lie_core import LieAlgebra


class AlgebraFileError(ValueError):
    """Malformed algebra file; the message names the line and field."""


@dataclass
class AlgebraFile:
    n: int
    alpha: Optional[Dict[Tuple[int, int], object]] = None
    brackets: Optional[Dict[Tuple[int, int, int], object]] = None
    label: Optional[str] = None
    seed: Optional[int] = None
    source: str = "<input>"

    @property
    def params(self) -> Optional[FiliformParams]:
        if self.brackets is not None:
            return None
        return FiliformParams(self.n, self.alpha or {})

    def algebra(self) -> LieAlgebra:
        if self.brackets is not None:
            return LieAlgebra(self.n, self.brackets, name=self.label)
        g = build_algebra(self.params)
        if self.label:
            g.name = self.label
        return g


_KEY_RE = re.compile(r"^-?\d+(\s*,\s*-?\d+)*$")


def _unquote(text: str) -> str:
    text = text.strip()
    if len(text) >= 2 and text[0] == text[-1] == '"':
        return text[1:-1]
    return text


def _int(text: str, where: str) -> int:
    try:
        return int(_unquote(text))
    except ValueError:
        raise AlgebraFileError(f"{where}: expected an integer, got {text.strip()!r}") from None


def parse_algebra_text(text: str, source: str = "<input>") -> AlgebraFile:
    top: Dict[str, Tuple[int, str]] = {}
    section: Optional[str] = None
    entries: Dict[str, List[Tuple[int, str, str]]] = {"alpha": [], "brackets": []}
    declared = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"{source}:{lineno}"
        if line.startswith("["):
            name = line.strip("[] \t")
            if not line.endswith("]") or name not in entries:
                raise AlgebraFileError(f"{where}: unknown section {line!r}")
            section = name
            declared.add(name)
            continue
        if "=" not in line:
            raise AlgebraFileError(f"{where}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        key = _unquote(key)
        if section is None:
            if key not in ("n", "label", "seed"):
                raise AlgebraFileError(f"{where}: unknown field {key!r}")
            if key in top:
                raise AlgebraFileError(f"{where}: duplicate field {key!r}")
            top[key] = (lineno, value)
        else:
            entries[section].append((lineno, key, value))

    if "n" not in top:
        raise AlgebraFileError(f"{source}: missing field 'n'")
    n = _int(top["n"][1], f"{source}:{top['n'][0]}: field 'n'")
    if n < 1:
        raise AlgebraFileError(f"{source}:{top['n'][0]}: field 'n' must be positive")
    label = _unquote(top["label"][1]) if "label" in top else None
    seed = _int(top["seed"][1], f"{source}:{top['seed'][0]}: field 'seed'") if "seed" in top else None
    if len(declared) > 1:
        raise AlgebraFileError(f"{source}: give either [alpha] or [brackets], not both")

    doc = AlgebraFile(n=n, label=label, seed=seed, source=source)
    kind = "brackets" if "brackets" in declared else "alpha"
    arity = 3 if kind == "brackets" else 2
    parsed: Dict[tuple, object] = {}
    for lineno, key, value in entries[kind]:
        where = f"{source}:{lineno}: [{kind}] {key!r}"
        if not _KEY_RE.match(key) or len(key.split(",")) != arity:
            raise AlgebraFileError(f"{where}: key must be {arity} comma-separated integers")
        idx = tuple(int(t) for t in key.split(","))
        if idx in parsed:
            raise AlgebraFileError(f"{where}: duplicate key")
        try:
            parsed[idx] = parse_scalar(_unquote(value))
        except LinalgError as exc:
            raise AlgebraFileError(f"{where}: {exc}") from None
    if kind == "brackets":
        for idx in parsed:
            if not all(1 <= t <= n for t in idx):
                raise AlgebraFileError(f"{source}: [brackets] key {idx} outside 1..{n}")
            if idx[0] == idx[1] and parsed[idx]:
                raise AlgebraFileError(f"{source}: [brackets] [e_{idx[0]}, e_{idx[0]}] must vanish")
        doc.brackets = parsed
    else:
        doc.alpha = parsed
        try:
            FiliformParams(n, parsed)
        except FiliformError as exc:
            raise AlgebraFileError(f"{source}: [alpha] {exc}") from None
    return doc


def read_algebra_file(path: str) -> AlgebraFile:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise AlgebraFileError(f"{path}: {exc.strerror}") from None
    return parse_algebra_text(text, source=path)


def format_params(p: FiliformParams, label: Optional[str] = None, seed: Optional[int] = None) -> str:
    lines = [f"n = {p.n}"]
    if label:
        lines.append(f'label = "{label}"')
    if seed is not None:
        lines.append(f"seed = {seed}")
    lines.append("")
    lines.append("[alpha]")
    for (k, s), v in p.alpha.items():
        lines.append(f'"{k},{s}" = "{format_scalar(v)}"')
    return "\n".join(lines) + "\n"


def format_brackets(g: LieAlgebra, label: Optional[str] = None) -> str:
    lines = [f"n = {g.n}"]
    if label:
        lines.append(f'label = "{label}"')
    lines.append("")
    lines.append("[brackets]")
    for (i, j, k), v in g.structure_constants().items():
        lines.append(f'"{i},{j},{k}" = "{format_scalar(v)}"')
    return "\n".join(lines) + "\n"
