"""Command line front end: ``bianchi <subcommand> ...``.

Input files (``BracketFile``, schema 1)::

    {"schema": 1, "field": "rational",
     "constants": [[2, 3, 1, "1"], [1, 3, 2, "-1"]]}

Each entry ``[i, j, k, value]`` sets ``C_ij^k`` with 1-based indices and
``i < j``.  Values are exact strings such as ``"3/4"`` or ``"1/2-3i"``; omitted
entries are zero.  ``field`` is ``"rational"`` or ``"gaussian"``.

Exit codes: 0 success, 2 parse error, 3 Jacobi violation, 4 type or field
mode mismatch, 5 no witness (the two brackets are not isomorphic).
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .canon import DEFAULT_TOLERANCE, witness
from .classify import BianchiType, ClassificationReport, RankSig, allowed_labels, classify, representative
from .core import Bracket, Covector, FieldMode, PAIRS, SymForm, field_mode_of
from .decomp import Decomposition, compose, decompose, jacobian_tensor
from .errors import BianchiError, JacobiViolation, ModeMismatch
from .orbits import (UNION_VI, UNION_VII, AutGroupInfo, aut_info, closure_poset,
                     closure_set, node_dimension)
from .sampling import DEFAULT_BOUND, sample_brackets
from .scalar import GaussianRational, format_scalar, parse_scalar

SCHEMA = 1

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_JACOBI = 3
EXIT_MODE = 4
EXIT_NO_WITNESS = 5

_FIELDS = {"rational": FieldMode.REAL, "gaussian": FieldMode.COMPLEX}


class ParseError(BianchiError):
    """Malformed input file or command line value."""


class CliError(Exception):
    def __init__(self, code: int, message: str, payload=None):
        super().__init__(message)
        self.code = code
        self.payload = payload


# -- BracketFile ---------------------------------------------------------------

def parse_bracket_text(text: str) -> tuple[Bracket, FieldMode]:
    """Parse a BracketFile document; returns the bracket and its declared field."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ParseError("bracket file must be a JSON object")
    if doc.get("schema") != SCHEMA:
        raise ParseError(f"unsupported schema {doc.get('schema')!r} (expected {SCHEMA})")
    field = doc.get("field", "rational")
    if field not in _FIELDS:
        raise ParseError(f"field must be 'rational' or 'gaussian', not {field!r}")
    entries = doc.get("constants", [])
    if not isinstance(entries, list):
        raise ParseError("'constants' must be a list")
    items = []
    for e in entries:
        if not (isinstance(e, list) and len(e) == 4):
            raise ParseError(f"constant entries are [i, j, k, value]: {e!r}")
        i, j, k, v = e
        if any(isinstance(x, bool) or not isinstance(x, int) for x in (i, j, k)):
            raise ParseError(f"indices must be integers: {e!r}")
        if isinstance(v, bool) or not isinstance(v, (str, int)):
            raise ParseError(f"values must be exact strings: {e!r}")
        try:
            value = parse_scalar(str(v))
        except ValueError as exc:
            raise ParseError(str(exc)) from None
        if field == "rational" and isinstance(value, GaussianRational):
            raise ParseError(f"non-real value {v!r} in a rational file")
        items.append((i, j, k, value))
    try:
        C = Bracket.from_entries(items)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    return C, _FIELDS[field]


def read_bracket(path) -> tuple[Bracket, FieldMode]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_bracket_text(text)


def bracket_to_dict(C: Bracket, field: str | None = None) -> dict:
    if field is None:
        field = "gaussian" if field_mode_of(C.consts) is FieldMode.COMPLEX else "rational"
    constants = []
    for p, (i, j) in enumerate(PAIRS):
        for k in range(3):
            v = C.consts[3 * p + k]
            if v != 0:
                constants.append([i + 1, j + 1, k + 1, format_scalar(v)])
    return {"schema": SCHEMA, "field": field, "constants": constants}


def _render(obj, indent: int) -> str:
    pad = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        body = ",\n".join(f"{pad}{json.dumps(k, ensure_ascii=False)}: {_render(v, indent + 1)}"
                          for k, v in obj.items())
        return "{\n" + body + "\n" + "  " * indent + "}"
    if isinstance(obj, list) and any(isinstance(x, (list, dict)) for x in obj):
        body = ",\n".join(pad + _render(v, indent + 1) for v in obj)
        return "[\n" + body + "\n" + "  " * indent + "]"
    # scalars and flat lists stay on one line
    return json.dumps(obj, ensure_ascii=False, separators=(", ", ": "))


def dumps(doc) -> str:
    """Deterministic JSON: two-space indentation, flat lists kept on one line."""
    return _render(doc, 0) + "\n"


def serialize_bracket(C: Bracket, field: str | None = None) -> str:
    return dumps(bracket_to_dict(C, field))


# -- Report ----------------------------------------------------------------------

def _fmt_opt(x):
    return None if x is None else format_scalar(x)


def _parse_opt(s):
    return None if s is None else parse_scalar(s)


def format_h_approx(h) -> str | None:
    """Decimal with 12 significant digits (``a+bi`` for complex values)."""
    if h is None:
        return None
    if isinstance(h, complex):
        if h.imag == 0:
            return f"{h.real:.12g}"
        re = f"{h.real:.12g}" if h.real != 0 else ""
        sign = "-" if h.imag < 0 else ("+" if re else "")
        return f"{re}{sign}{abs(h.imag):.12g}i"
    return f"{h:.12g}"


def _parse_h_approx(s):
    if s is None:
        return None
    if s.endswith("i"):
        return complex(s[:-1] + "j") if s[:-1] not in ("", "+", "-") else complex(s[:-1] + "1j")
    return float(s)


def _matrix_strings(m):
    return [[format_scalar(x) for x in row] for row in m.rows]


def report_to_dict(r: ClassificationReport) -> dict:
    """Serialize a report; key order is fixed."""
    return {
        "schema": SCHEMA,
        "type": r.type.label,
        "display": r.type.display(),
        "presented_as": r.type.presented_as,
        "mode": r.mode.value,
        "M": _matrix_strings(r.decomposition.M),
        "nu": [format_scalar(x) for x in r.decomposition.nu],
        "rank": r.rank_sig.rank,
        "abs_signature": r.rank_sig.abs_signature,
        "invariant_c": _fmt_opt(r.invariant_c),
        "h_squared": _fmt_opt(r.h_squared),
        "h_approx": format_h_approx(r.h_approx),
        "unimodular": r.unimodular,
        "bianchi_class": r.bianchi_class,
        "derived_dim": r.derived_dim,
        "structure_labels": sorted(r.structure_labels),
        "orbit_dim": r.orbit_dim,
        "aut": aut_to_dict(r.aut),
    }


def aut_to_dict(a: AutGroupInfo) -> dict:
    return {"name": a.name, "dimension": a.dimension, "description": a.description,
            "provided": a.provided}


def report_from_dict(d: dict) -> ClassificationReport:
    """Inverse of :func:`report_to_dict` on every exact field."""
    if d.get("schema") != SCHEMA:
        raise ParseError(f"unsupported report schema {d.get('schema')!r}")
    try:
        h2 = _parse_opt(d["h_squared"])
        M = SymForm(tuple(tuple(parse_scalar(x) for x in row) for row in d["M"]))
        nu = Covector(tuple(parse_scalar(x) for x in d["nu"]))
        a = d["aut"]
        return ClassificationReport(
            type=BianchiType(d["type"], h2),
            mode=FieldMode.parse(d["mode"]),
            decomposition=Decomposition(M, nu),
            rank_sig=RankSig(d["rank"], d["abs_signature"]),
            invariant_c=_parse_opt(d["invariant_c"]),
            h_squared=h2,
            h_approx=_parse_h_approx(d["h_approx"]),
            unimodular=d["unimodular"],
            bianchi_class=d["bianchi_class"],
            derived_dim=d["derived_dim"],
            structure_labels=frozenset(d["structure_labels"]),
            orbit_dim=d["orbit_dim"],
            aut=AutGroupInfo(a["name"], a["dimension"], a["description"], a["provided"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed report: {exc}") from None


# -- helpers ---------------------------------------------------------------------------

def _mode(args) -> FieldMode:
    return FieldMode.COMPLEX if getattr(args, "complex", False) else FieldMode.REAL


def _load(path, mode: FieldMode) -> Bracket:
    C, declared = read_bracket(path)
    if declared is FieldMode.COMPLEX and mode is FieldMode.REAL:
        raise ModeMismatch(f"{path}: gaussian file needs --complex")
    return C


def _jacobi_payload(exc: JacobiViolation) -> dict:
    return {"schema": SCHEMA, "error": "jacobi", "J": [format_scalar(x) for x in exc.components]}


def _parse_type(label: str, h2: str | None, mode: FieldMode) -> BianchiType:
    try:
        t = BianchiType.parse(label, None if h2 is None else parse_scalar(h2))
    except ValueError as exc:
        raise ModeMismatch(str(exc)) from None
    representative(t, mode)  # raises ModeMismatch for types absent in this mode
    return t


def _emit(text: str) -> None:
    sys.stdout.write(text)


# -- subcommands -------------------------------------------------------------------

def _classify_one(path: str, mode_value: str, quiet: bool):
    """Worker for ``classify``; returns ``(exit_code, text)``."""
    mode = FieldMode(mode_value)
    try:
        r = classify(_load(path, mode), mode)
    except ParseError as exc:
        return EXIT_PARSE, dumps({"schema": SCHEMA, "file": path, "error": "parse", "message": str(exc)})
    except JacobiViolation as exc:
        return EXIT_JACOBI, dumps(dict(_jacobi_payload(exc), file=path))
    except ModeMismatch as exc:
        return EXIT_MODE, dumps({"schema": SCHEMA, "file": path, "error": "mode", "message": str(exc)})
    if quiet:
        return EXIT_OK, r.type.display() + "\n"
    return EXIT_OK, dumps(report_to_dict(r))


def cmd_classify(args) -> int:
    if len(args.files) > 1 and not args.batch:
        raise CliError(EXIT_PARSE, "several input files need --batch")
    mode = _mode(args)
    jobs = [(f, mode.value, args.quiet) for f in args.files]
    if args.batch and args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_classify_one, *zip(*jobs)))
    else:
        results = [_classify_one(*j) for j in jobs]
    code = EXIT_OK
    for rc, text in results:
        if rc == EXIT_OK:
            _emit(text)
        else:
            sys.stderr.write(text)
            code = code or rc
    return code


def cmd_jacobi(args) -> int:
    mode = _mode(args)
    C = _load(args.file, mode)
    J = jacobian_tensor(C)
    _emit(dumps({"schema": SCHEMA, "jacobi": J.is_zero(), "J": [format_scalar(x) for x in J]}))
    return EXIT_OK if J.is_zero() else EXIT_JACOBI


def cmd_decompose(args) -> int:
    mode = _mode(args)
    C = _load(args.file, mode)
    d = decompose(C)
    assert d.compose() == C
    _emit(dumps({"schema": SCHEMA, "M": _matrix_strings(d.M),
                 "nu": [format_scalar(x) for x in d.nu], "unimodular": d.nu.is_zero()}))
    return EXIT_OK


def _float_str(x) -> str:
    if type(x).__name__ == "mpc":
        return format_h_approx(complex(x))
    return f"{float(x):.17g}"


def cmd_witness(args) -> int:
    mode = _mode(args)
    C1, C2 = _load(args.first, mode), _load(args.second, mode)
    try:
        w = witness(C1, C2, mode, args.tolerance)
    except BianchiError as exc:
        if isinstance(exc, (JacobiViolation, ModeMismatch)):
            raise
        raise CliError(EXIT_NO_WITNESS, str(exc)) from None
    if w is None:
        t1, t2 = classify(C1, mode).type, classify(C2, mode).type
        raise CliError(EXIT_NO_WITNESS, f"not isomorphic: {t1.display()} vs {t2.display()}",
                       {"schema": SCHEMA, "error": "no_witness",
                        "types": [t1.display(), t2.display()]})
    _emit(dumps({
        "schema": SCHEMA,
        "exact": w.exact_g is not None,
        "g": _matrix_strings(w.exact_g) if w.exact_g is not None
        else [[_float_str(x) for x in row] for row in w.g.rows],
        "residual": f"{w.residual:.3e}",
        "tolerance": f"{args.tolerance:g}",
    }))
    return EXIT_OK


def cmd_aut(args) -> int:
    mode = _mode(args)
    t = _parse_type(args.type, args.h2, mode)
    info = aut_info(t, mode)
    _emit(dumps({"schema": SCHEMA, "type": t.label, "mode": mode.value,
                 "stabilizer_dim": info.dimension, "orbit_dim": 9 - info.dimension,
                 "aut": aut_to_dict(info)}))
    return EXIT_OK


def _node_label(node: str) -> str:
    return {UNION_VI: "∪ VI_h (h<0)", UNION_VII: "∪ VII_h (h>0)", "VI0": "VI_0",
            "VII0": "VII_0", "VIh": "VI_h", "VIIh": "VII_h"}.get(node, node)


def closure_dot(mode: FieldMode) -> str:
    """DOT digraph of the closure poset: Hasse edges pointing to the degeneration."""
    poset = closure_poset(mode)
    lines = [f'digraph "closure_{mode.value}" {{', "  rankdir=TB;", "  node [shape=box];"]
    for n in poset.nodes:
        style = ", style=dashed" if n in (UNION_VI, UNION_VII) else ""
        lines.append(f'  "{n}" [label="{_node_label(n)}\\ndim {poset.dims[n]}"{style}];')
    for a, b in poset.hasse_edges():
        lines.append(f'  "{a}" -> "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _closure_line(node: str, mode: FieldMode) -> str:
    members = sorted(closure_set(node, mode), key=lambda n: (-node_dimension(n), n))
    return ", ".join(_node_label(m) for m in members)


def _closure_node(text: str, mode: FieldMode) -> str:
    key = text.strip()
    if key in (UNION_VI, UNION_VII):
        return key
    try:
        t = BianchiType.parse(key, 1 if key.upper().replace("_", "").endswith("H") else None)
    except ValueError as exc:
        raise ModeMismatch(str(exc)) from None
    if t.label not in allowed_labels(mode):
        raise ModeMismatch(f"type {t.label} does not exist in {mode.value} mode")
    return t.label


def cmd_closure(args) -> int:
    mode = _mode(args)
    if args.dot:
        _emit(closure_dot(mode))
        return EXIT_OK
    if args.type is None:
        nodes = closure_poset(mode).nodes
        _emit("".join(f"{_node_label(n)}: {_closure_line(n, mode)}\n" for n in nodes))
        return EXIT_OK
    _emit(_closure_line(_closure_node(args.type, mode), mode) + "\n")
    return EXIT_OK


# -- table ------------------------------------------------------------------------

def _term(coeff, basis: str) -> str:
    """``coeff`` is (a, b) meaning a + b h."""
    a, b = coeff
    if b == 0:
        c = format_scalar(a)
        body = {"1": "", "-1": "-"}.get(c, c)
    elif a == 0:
        c = format_scalar(b)
        body = {"1": "h", "-1": "-h"}.get(c, c + "h")
    else:
        body = f"({format_scalar(a)}{'+' if b > 0 else '-'}{format_scalar(abs(b))}h)"
    return body + basis


def _product_text(vec) -> str:
    terms = [_term(c, f"e{k + 1}") for k, c in enumerate(vec) if c != (0, 0)]
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += t if t.startswith("-") else "+" + t
    return out


def _table_rows(mode: FieldMode) -> list:
    rows = []
    entries = [("I", (0, 0, 0), False), ("II", (1, 0, 0), False), ("IV", (1, 0, 0), True),
               ("V", (0, 0, 0), True)]
    if mode is FieldMode.REAL:
        entries += [("VI_h (h≤0)", (1, -1, 0), "h"), ("VII_h (h≥0)", (1, 1, 0), "h"),
                    ("VIII", (1, 1, -1), False), ("IX", (1, 1, 1), False)]
    else:
        entries += [("VII_h (h∈ℂ)", (1, 1, 0), "h"), ("IX", (1, 1, 1), False)]
    for name, diag, nu in entries:
        base = compose(SymForm.diag(*diag), Covector((0, 0, 1 if nu is True else 0)))
        h_part = compose(SymForm.zero(), Covector((0, 0, 1 if nu == "h" else 0)))
        products = []
        for (i, j) in ((0, 1), (1, 2), (2, 0)):
            vec = [(base.c(i, j, k), h_part.c(i, j, k)) for k in range(3)]
            products.append(f"[e{i + 1},e{j + 1}]={_product_text(vec)}")
        rows.append((name, products))
    return rows


def cmd_table(args) -> int:
    mode = _mode(args)
    width = max(len(name) for name, _ in _table_rows(mode))
    for name, products in _table_rows(mode):
        _emit(f"{name:<{width}}  " + "  ".join(products) + "\n")
    return EXIT_OK


def cmd_sample(args) -> int:
    mode = _mode(args)
    t = _parse_type(args.type, args.h2, mode)
    if args.count < 0:
        raise CliError(EXIT_PARSE, "--count must be non-negative")
    brackets = sample_brackets(t, mode, seed=args.seed, count=args.count, bound=args.bound)
    field = "gaussian" if mode is FieldMode.COMPLEX else "rational"
    if args.out is None:
        for C in brackets:
            _emit(json.dumps(bracket_to_dict(C, field), ensure_ascii=False) + "\n")
        return EXIT_OK
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for n, C in enumerate(brackets):
        path = out / f"{t.label}_{args.seed}_{n:03d}.json"
        path.write_text(serialize_bracket(C, field), encoding="utf-8")
        _emit(f"{path}\n")
    return EXIT_OK


# -- entry point ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bianchi",
                                     description="Exact Bianchi classification of 3-dimensional Lie algebras.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--complex", action="store_true", help="work over Q(i) instead of Q")
        p.set_defaults(func=func)
        return p

    p = add("classify", cmd_classify, "classify a bracket file")
    p.add_argument("files", nargs="+", metavar="FILE")
    p.add_argument("--quiet", action="store_true", help="print only the type label")
    p.add_argument("--batch", action="store_true", help="accept several files, output in input order")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for --batch")

    p = add("jacobi", cmd_jacobi, "evaluate the Jacobi tensor")
    p.add_argument("file")

    p = add("decompose", cmd_decompose, "split a bracket into (M, nu)")
    p.add_argument("file")

    p = add("witness", cmd_witness, "find g with g.C1 = C2")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)

    p = add("aut", cmd_aut, "automorphism group of a type")
    p.add_argument("type")
    p.add_argument("--h2", default=None, help="exact h^2 for VIh / VIIh")

    p = add("closure", cmd_closure, "orbit closure of a type, or the whole poset")
    p.add_argument("type", nargs="?")
    p.add_argument("--dot", action="store_true", help="emit the closure poset as DOT")

    add("table", cmd_table, "print the list of normal forms")

    p = add("sample", cmd_sample, "random brackets of a given type")
    p.add_argument("type")
    p.add_argument("--h2", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    p.add_argument("--out", default=None, help="directory for one file per sample")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except CliError as exc:
        if exc.payload is not None:
            sys.stderr.write(dumps(exc.payload))
        else:
            sys.stderr.write(f"bianchi: {exc}\n")
        return exc.code
    except ParseError as exc:
        sys.stderr.write(f"bianchi: parse error: {exc}\n")
        return EXIT_PARSE
    except JacobiViolation as exc:
        sys.stderr.write(dumps(_jacobi_payload(exc)))
        return EXIT_JACOBI
    except ModeMismatch as exc:
        sys.stderr.write(f"bianchi: {exc}\n")
        return EXIT_MODE


if __name__ == "__main__":
    sys.exit(main())
