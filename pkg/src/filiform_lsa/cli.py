"""Command-line front end.

Every subcommand writes a report to standard output and diagnostics to
standard error.  Exit status: 0 success or property true, 1 property false
or nothing found, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from math import isqrt
from typing import List, Optional, Sequence, Tuple

from . import affine as aff
from .algebra_file import AlgebraFile, AlgebraFileError, format_params, read_algebra_file
from .cohomology import TRIVIAL, betti_numbers, cohomology, conjecture_checks
from .exact_linalg import determinant, format_scalar
from .filiform import (
    ClassLabel,
    FiliformError,
    FiliformParams,
    adapted_params,
    build_algebra,
    classify,
    extended_class,
    find_witness,
    property_flags,
    table_classes,
    to_adapted,
)
from .lie_core import (
    LieAlgebra,
    NotALieAlgebra,
    derivation_basis,
    find_nonsingular_derivation,
    is_filiform,
    jacobi_defects,
)

EXIT_OK, EXIT_FALSE, EXIT_INPUT = 0, 1, 2

# (n, index, b2, affine, H^2 basis) as tabulated; index None for n <= 5
EXPECTED_TABLE: List[Tuple[int, Optional[int], int, bool, str]] = [
    (3, None, 2, True, "w1 w"),
    (4, None, 2, True, "w1 w"),
    (5, None, 3, True, "w1 w2 w"),
    (6, 1, 2, False, "w1 w2"),
    (6, 2, 3, True, "w1 w2 w"),
    (7, 1, 3, True, "w1 w2 w"),
    (7, 2, 4, True, "w1 w2 w3 w"),
    (8, 1, 3, False, "w1 w2 w3"),
    (8, 2, 3, True, "w1 w2 w"),
    (8, 3, 3, False, "w1 w2 w3"),
    (8, 4, 4, True, "w1 w2 w3 w"),
    (9, 1, 3, True, "w1 w2 w"),
    (9, 2, 4, True, "w1 w2 w w'"),
    (9, 3, 3, False, "w1 w2 w3"),
    (9, 4, 4, True, "w1 w2 w3 w"),
    (9, 5, 4, True, "w1 w2 w3 w"),
    (9, 6, 5, True, "w1 w2 w3 w w'"),
    (10, 1, 3, False, "w1 w2 w3"),
    (10, 2, 4, False, "w1 w2 w3 w4"),
    (10, 3, 3, True, "w1 w2 w"),
    (10, 4, 3, False, "w1 w2 w3"),
    (10, 5, 3, False, "w1 w2 w3"),
    (10, 6, 4, True, "w1 w2 w3 w"),
    (10, 7, 4, True, "w1 w2 w3 w"),
    (10, 8, 4, False, "w1 w2 w3 w4"),
    (10, 9, 5, True, "w1 w2 w3 w4 w"),
    (11, 1, 2, False, "w1 w2"),
    (11, 2, 3, True, "w1 w2 w"),
    (11, 3, 3, True, "w1 w2 w"),
    (11, 4, 3, False, "w1 w2 w3"),
    (11, 5, 3, False, "w1 w2 w3"),
    (11, 6, 4, False, "w1 w2 w3 w4"),
    (11, 7, 4, True, "w1 w2 w3 w"),
    (11, 8, 4, False, "w1 w2 w3 w4"),
    (11, 9, 5, True, "w1 w2 w3 w4 w"),
]

INFORMATIONAL = {(11, 10)}


class Report:
    """Ordered key/value pairs, printed as ``key: value`` lines or one JSON object."""

    def __init__(self):
        self.items: List[Tuple[str, object]] = []

    def add(self, key: str, value) -> "Report":
        self.items.append((key, value))
        return self

    def render(self, fmt: str) -> str:
        if fmt == "json":
            out = {}
            for k, v in self.items:
                if k in out:
                    if not isinstance(out[k], list) or not getattr(out[k], "_multi", False):
                        out[k] = _Multi([out[k]])
                    out[k].append(_jsonable(v))
                else:
                    out[k] = _jsonable(v)
            return json.dumps(out, indent=2, default=list) + "\n"
        return "".join(f"{k}: {_text(v)}\n" for k, v in self.items)


class _Multi(list):
    _multi = True


def _jsonable(v):
    if isinstance(v, bool) or v is None or isinstance(v, (int, str)):
        return v
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    return format_scalar(v) if not isinstance(v, ClassLabel) else str(v)


def _text(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return " ".join(_text(x) for x in v)
    if isinstance(v, dict):
        return " ".join(f"{k}={_text(x)}" for k, x in v.items())
    if isinstance(v, (int, str, ClassLabel)):
        return str(v)
    return format_scalar(v)


def _vec_text(v: Sequence) -> str:
    terms = [f"{format_scalar(c)}*e{i + 1}" for i, c in enumerate(v) if c]
    return " + ".join(terms) if terms else "0"


def _params_text(p: FiliformParams) -> str:
    if not p.alpha:
        return "0"
    return ";".join(f"a{k},{s}={format_scalar(v)}" for (k, s), v in p.alpha.items())


# -- helpers -------------------------------------------------------------------------

def _load(path: str) -> Tuple[AlgebraFile, LieAlgebra]:
    doc = read_algebra_file(path)
    return doc, doc.algebra()


def _adapted(g: LieAlgebra, seed: int) -> Tuple[LieAlgebra, FiliformParams]:
    """An adapted copy of a filiform algebra (the algebra itself if already adapted)."""
    p = adapted_params(g)
    if p is not None:
        return g, p
    form = to_adapted(g, seed=seed)
    return form.algebra, form.params


def _require_filiform(g: LieAlgebra) -> None:
    g.validate()
    if not is_filiform(g):
        raise FiliformError(f"{g.label()} is not filiform")


# -- subcommands ----------------------------------------------------------------------

def cmd_jacobi(args) -> Tuple[Report, int]:
    _, g = _load(args.file)
    defects = jacobi_defects(g)
    rep = Report().add("lie", not defects).add("defects", len(defects))
    for i, j, k, d in defects:
        rep.add("defect", f"({i},{j},{k}) {_vec_text(d)}")
    return rep, EXIT_OK if not defects else EXIT_FALSE


def cmd_betti(args) -> Tuple[Report, int]:
    _, g = _load(args.file)
    g.validate()
    bs = betti_numbers(g)
    rep = Report().add("betti", bs).add("euler", sum((-1) ** p * b for p, b in enumerate(bs)))
    checks = conjecture_checks(g)
    rep.add("b2_conjecture", checks.b2_conjecture).add("toral_rank", checks.toral_rank)
    return rep, EXIT_OK


def cmd_h2(args) -> Tuple[Report, int]:
    _, g = _load(args.file)
    g.validate()
    rep = Report()
    if is_filiform(g):
        g, _ = _adapted(g, args.seed)
        rep.add("basis", "adapted")
        rep.add("tags", aff.h2_tags(g))
    h = cohomology(g, 2, TRIVIAL)
    rep.add("b2", h.betti).add("cocycles", h.cocycle_dim).add("coboundaries", h.coboundary_dim)
    for c in h.representatives:
        rep.add("class", " ".join(f"e{i}^e{j}={format_scalar(v)}" for (i, j), v in c.values.items()))
    return rep, EXIT_OK


def cmd_classify(args) -> Tuple[Report, int]:
    _, g = _load(args.file)
    _require_filiform(g)
    g, p = _adapted(g, args.seed)
    rep = Report()
    code = EXIT_OK
    if p.n <= 11:
        rep.add("class", classify(p))
    else:
        label = extended_class(g)
        rep.add("class", label)
        code = EXIT_OK if label.family != "unclassified" else EXIT_FALSE
    if p.n >= 7:
        f = property_flags(g)
        rep.add("properties", {"a": f.a, "b": f.b, "c": f.c, "d": f.d})
    rep.add("alpha", _params_text(p))
    return rep, code


def cmd_affine(args) -> Tuple[Report, int]:
    _, g = _load(args.file)
    _require_filiform(g)
    g, _ = _adapted(g, args.seed)
    v = aff.find_affine_class(g)
    rep = Report().add("affine", v.exists).add("affine_rank", v.affine_rank)
    if v.exists:
        rep.add("witness", " ".join(f"e{i}^e{j}={format_scalar(x)}" for (i, j), x in v.witness.values.items()))
    return rep, EXIT_OK if v.exists else EXIT_FALSE


def cmd_extend(args) -> Tuple[Report, int]:
    _, g = _load(args.file)
    _require_filiform(g)
    g, _ = _adapted(g, args.seed)
    v = aff.find_affine_class(g)
    rep = Report().add("affine", v.exists)
    if not v.exists:
        return rep, EXIT_FALSE
    ext = aff.central_extension(g, v.witness)
    h = ext.total
    rep.add("dimension", h.n).add("filiform", is_filiform(h))
    rep.add("center", _vec_text(ext.center_vector))
    for (i, j, k), c in h.structure_constants().items():
        rep.add("bracket", f"[e{i},e{j}] {format_scalar(c)}*e{k}")
    return rep, EXIT_OK


def cmd_lsa(args) -> Tuple[Report, int]:
    _, g = _load(args.file)
    _require_filiform(g)
    g, _ = _adapted(g, args.seed)
    prod = aff.affine_structure(g, seed=args.seed)
    rep = Report()
    if prod is None:
        rep.add("affine", False).add("verified", False)
        return rep, EXIT_FALSE
    rep.add("affine", True)
    for (i, j, k), c in sorted(prod.a.items()):
        rep.add("product", f"e{i}*e{j} {format_scalar(c)}*e{k}")
    rep.add("verified", prod.verified)
    return rep, EXIT_OK if prod.verified else EXIT_FALSE


def cmd_derivations(args) -> Tuple[Report, int]:
    _, g = _load(args.file)
    g.validate()
    basis = derivation_basis(g)
    rep = Report().add("dimension", len(basis))
    D = find_nonsingular_derivation(g, trials=args.budget, seed=args.seed)
    rep.add("nonsingular", D is not None)
    if D is not None:
        rep.add("determinant", determinant(D))
        for r in range(g.n):
            rep.add("row", [D[r, c] for c in range(g.n)])
    return rep, EXIT_OK if D is not None else EXIT_FALSE


def cmd_witness(args) -> Tuple[str, int]:
    label = ClassLabel.parse(args.label)
    p = find_witness(label, budget=args.budget, seed=args.seed)
    if p is None:
        print(f"no witness for {label} within budget {args.budget}", file=sys.stderr)
        return "", EXIT_FALSE
    if args.format == "json":
        body = {"n": p.n, "label": str(label), "seed": args.seed,
                "alpha": {f"{k},{s}": format_scalar(v) for (k, s), v in p.alpha.items()}}
        return json.dumps(body, indent=2) + "\n", EXIT_OK
    return format_params(p, label=str(label), seed=args.seed), EXIT_OK


def table_rows(n_min: int, n_max: int, seed: int, budget: int) -> List[dict]:
    expected = {(n, i): (b, a, t) for n, i, b, a, t in EXPECTED_TABLE}
    rows = []
    for n in range(n_min, n_max + 1):
        for label in table_classes(n):
            key = (n, label.index)
            row = {"n": n, "class": str(label)}
            p = find_witness(label, budget=budget, seed=seed)
            exp = expected.get(key)
            if p is None:
                row.update(b2="", tags="", affine="", witness="", status="no-witness")
            else:
                g = build_algebra(p)
                tags = aff.h2_tags(g)
                verdict = aff.find_affine_class(g)
                b = len(tags)
                row.update(b2=b, tags=" ".join(tags), affine="yes" if verdict.exists else "no",
                           witness=_params_text(p))
                if key in INFORMATIONAL or exp is None:
                    row["status"] = "info"
                else:
                    ok = b == exp[0] and verdict.exists == exp[1]
                    row["status"] = "ok" if ok else "MISMATCH"
                    same = aff.tag_signature(n, tags) == aff.tag_signature(n, exp[2].split())
                    row["tags_match"] = "yes" if same else "no"
            if exp is not None:
                row.update(expected_b2=exp[0], expected_affine="yes" if exp[1] else "no",
                           expected_tags=exp[2])
            rows.append(row)
    return rows


TABLE_COLUMNS = ["n", "class", "b2", "affine", "tags", "expected_b2", "expected_affine",
                 "expected_tags", "tags_match", "status", "witness"]


def cmd_table(args) -> Tuple[str, int]:
    if not 3 <= args.n_min <= args.n_max <= 11:
        raise FiliformError("need 3 <= n-min <= n-max <= 11")
    rows = table_rows(args.n_min, args.n_max, args.seed, args.budget)
    bad = [r for r in rows if r["status"] in ("MISMATCH", "no-witness")]
    if args.format == "json":
        text = json.dumps({"rows": rows, "failures": len(bad)}, indent=2) + "\n"
    else:
        lines = ["\t".join(TABLE_COLUMNS)]
        for r in rows:
            lines.append("\t".join(str(r.get(c, "")) for c in TABLE_COLUMNS))
        text = "\n".join(lines) + "\n"
    return text, EXIT_OK if not bad else EXIT_FALSE


def cmd_extended(args) -> Tuple[str, int]:
    n, fam = args.n, args.family
    if n < 12:
        raise FiliformError("extended classes need n >= 12")
    label = ClassLabel(n, f"A{fam}")
    seen = set()
    samples = []
    for s in range(args.seed, args.seed + args.samples):
        p = find_witness(label, budget=args.budget, seed=s)
        if p is None or p in seen:
            continue
        seen.add(p)
        g = build_algebra(p)
        b = cohomology(g, 2, TRIVIAL).betti
        samples.append((s, b, aff.find_affine_class(g).exists, p))
    checks = _extended_checks(n, fam, [(b, a) for _, b, a, _ in samples])
    if args.format == "json":
        body = {
            "class": str(label),
            "samples": [{"seed": s, "b2": b, "affine": a, "alpha": _params_text(p)}
                        for s, b, a, p in samples],
            "checks": dict(checks),
        }
        text = json.dumps(body, indent=2) + "\n"
    else:
        lines = ["seed\tb2\taffine\talpha"]
        lines += [f"{s}\t{b}\t{'yes' if a else 'no'}\t{_params_text(p)}" for s, b, a, p in samples]
        lines += [f"# check {name}: {'pass' if ok else 'FAIL'}" for name, ok in checks]
        text = "\n".join(lines) + "\n"
    ok = samples and all(v for _, v in checks)
    return text, EXIT_OK if ok else EXIT_FALSE


def _extended_checks(n: int, fam: int, data: List[Tuple[int, bool]]) -> List[Tuple[str, bool]]:
    checks = [("samples_found", bool(data))]
    if fam == 1:
        checks.append(("b2_at_least_3", all(b >= 3 for b, _ in data)))
        checks.append(("affine_exists", all(a for _, a in data)))
    elif n == 12:
        checks.append(("b2_equals_3", all(b == 3 for b, _ in data)))
        checks.append(("affine_exists", all(a for _, a in data)))
    else:
        checks.append(("b2_in_2_3", all(b in (2, 3) for b, _ in data)))
        checks.append(("affine_iff_b2_3", all(a == (b == 3) for b, a in data)))
        checks.append(("both_branches", {b for b, _ in data} == {2, 3}))
    return checks


def mu_abelian(n: int) -> int:
    """``ceil(2 sqrt(n - 1))`` in integer arithmetic."""
    if n < 1:
        raise ValueError("n must be positive")
    target = 4 * (n - 1)
    m = isqrt(target)
    return m if m * m >= target else m + 1


def cmd_mu_abelian(args) -> Tuple[Report, int]:
    return Report().add("mu_abelian", mu_abelian(args.n)), EXIT_OK


# -- argument parsing -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--budget", type=int, default=2000, help="search budget (default 2000)")
    common.add_argument("--format", choices=("tsv", "json"), default="tsv",
                        help="tsv: 'key: value' lines or tab-separated tables; json")

    parser = argparse.ArgumentParser(prog="filiform-lsa", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def file_cmd(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("file", help="algebra file")
        sp.set_defaults(func=func)

    file_cmd("jacobi", cmd_jacobi, "Jacobi defects of the structure constants")
    file_cmd("betti", cmd_betti, "Betti numbers and conjecture checks")
    file_cmd("h2", cmd_h2, "basis of H^2(g, K) with descriptors")
    file_cmd("classify", cmd_classify, "class label and properties (a)-(d)")
    file_cmd("affine", cmd_affine, "existence of an affine cohomology class")
    file_cmd("extend", cmd_extend, "central extension by an affine cocycle")
    file_cmd("lsa", cmd_lsa, "verified left-symmetric product")
    file_cmd("derivations", cmd_derivations, "derivation algebra and a nonsingular derivation")

    sp = sub.add_parser("witness", parents=[common], help="parameters of an algebra in a class")
    sp.add_argument("label", help="class label, e.g. A_{9,1}, A_5 or A2_13")
    sp.set_defaults(func=cmd_witness)

    sp = sub.add_parser("table", parents=[common], help="recompute the H^2 / affine table")
    sp.add_argument("--n-min", type=int, default=3)
    sp.add_argument("--n-max", type=int, default=11)
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("extended", parents=[common], help="sample the n >= 12 classes")
    sp.add_argument("n", type=int)
    sp.add_argument("family", type=int, choices=(1, 2))
    sp.add_argument("--samples", type=int, default=50)
    sp.set_defaults(func=cmd_extended)

    sp = sub.add_parser("mu-abelian", parents=[common], help="ceil(2 sqrt(n-1))")
    sp.add_argument("n", type=int)
    sp.set_defaults(func=cmd_mu_abelian)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        out, code = args.func(args)
    except (AlgebraFileError, FiliformError, NotALieAlgebra, aff.AffineError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = out.render(args.format) if isinstance(out, Report) else out
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
