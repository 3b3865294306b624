"""Command-line front end.

Problem files are JSON documents::

    {"coefficients": ["1", "-1"], "roots": ["x", "x+1"], "S": ["inf"],
     "mode": "pair", "indices": [2, 1], "window": [317, 336]}

Exit codes: 0 success, 2 hypothesis violation, 3 parse/input error,
64 usage error, 70 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence, TextIO

from .bounds import BoundParams, HypothesisError, pair_sum_bound, single_term_bound
from .exactalg import ParseError, RatFunc, parse_expr
from .places import PlaceSet, divisor, height
from .recurrence import (
    Recurrence,
    RecurrenceError,
    is_nondegenerate,
    pairwise_mult_independent,
    roots_nonconstant,
    validate,
)
from .report import bound_doc, divisor_doc, dumps, solution_doc, verify_doc, window_doc
from .solver import MembershipMismatch, solve_pair, solve_single, verify_sum, window_scan

EXIT_OK = 0
EXIT_HYPOTHESIS = 2
EXIT_PARSE = 3
EXIT_USAGE = 64
EXIT_INTERNAL = 70

MODES = ("single", "pair", "verify")


class SpecError(ValueError):
    """Malformed problem file.  ``kind`` is json, schema, parse or length_mismatch."""

    def __init__(self, kind: str, message: str, position: int | None = None, expression: str | None = None):
        super().__init__(message)
        self.kind = kind
        self.position = position
        self.expression = expression


@dataclass(frozen=True)
class ProblemSpec:
    coefficients: tuple[str, ...]
    roots: tuple[str, ...]
    places: tuple[str, ...]
    mode: str
    indices: tuple[int, ...] | None = None
    window: tuple[int, int] | None = None

    def recurrence(self) -> Recurrence:
        return validate([parse_expr(c) for c in self.coefficients], [parse_expr(a) for a in self.roots])

    def place_set(self) -> PlaceSet:
        return PlaceSet.from_tokens(self.places)

    def canonical(self) -> dict[str, Any]:
        doc: dict[str, Any] = {
            "coefficients": [parse_expr(c).render() for c in self.coefficients],
            "roots": [parse_expr(a).render() for a in self.roots],
            "S": self.place_set().tokens(),
            "mode": self.mode,
        }
        if self.indices is not None:
            doc["indices"] = list(self.indices)
        if self.window is not None:
            doc["window"] = list(self.window)
        return doc


def render_spec(spec: ProblemSpec) -> str:
    return json.dumps(spec.canonical(), indent=2) + "\n"


def _str_list(doc: dict, key: str) -> list[str]:
    value = doc.get(key)
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise SpecError("schema", f"{key!r} must be a list of expression strings")
    return value


def _int_list(value: Any, key: str) -> list[int]:
    if not isinstance(value, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in value):
        raise SpecError("schema", f"{key!r} must be a list of integers")
    return value


def _parse_field(key: str, exprs: Sequence[str]) -> list[RatFunc]:
    out = []
    for i, text in enumerate(exprs):
        try:
            out.append(parse_expr(text))
        except ParseError as e:
            raise SpecError(
                "parse", f"{key}[{i}] {text!r}: {e.message} at position {e.position}", e.position, text
            ) from None
    return out


def parse_spec(text: str) -> ProblemSpec:
    """Validate a problem document; raises :class:`SpecError` or ``RecurrenceError``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecError("json", f"malformed JSON: {e.msg} at line {e.lineno} column {e.colno}", e.pos) from None
    if not isinstance(doc, dict):
        raise SpecError("schema", "problem document must be a JSON object")
    for key in ("coefficients", "roots", "S", "mode"):
        if key not in doc:
            raise SpecError("schema", f"missing key {key!r}")
    coefficients = _str_list(doc, "coefficients")
    roots = _str_list(doc, "roots")
    places = _str_list(doc, "S")
    mode = doc["mode"]
    if mode not in MODES:
        raise SpecError("schema", f"mode must be one of {', '.join(MODES)}")

    coeff_vals = _parse_field("coefficients", coefficients)
    root_vals = _parse_field("roots", roots)
    for i, tok in enumerate(places):
        if tok.strip() != "inf":
            _parse_field(f"S[{i}]", [tok])
    try:
        PlaceSet.from_tokens(places)
    except ParseError as e:
        raise SpecError("parse", f"S: {e.message}", e.position, e.text) from None
    if len(coeff_vals) != len(root_vals):
        raise SpecError("length_mismatch", "coefficients and roots must have the same length")
    validate(coeff_vals, root_vals)

    indices = None
    if doc.get("indices") is not None:
        indices = tuple(_int_list(doc["indices"], "indices"))
    window = None
    if doc.get("window") is not None:
        w = _int_list(doc["window"], "window")
        if len(w) != 2 or w[0] > w[1] or w[0] < 0:
            raise SpecError("schema", "window must be [lo, hi] with 0 <= lo <= hi")
        window = (w[0], w[1])
    return ProblemSpec(tuple(coefficients), tuple(roots), tuple(places), mode, indices, window)


def load_spec(source: str | Path | TextIO) -> ProblemSpec:
    """Read a problem from a path, ``"-"`` for stdin, or an open text stream."""
    if hasattr(source, "read"):
        text = source.read()
    elif str(source) == "-":
        text = sys.stdin.read()
    else:
        try:
            text = Path(source).read_text(encoding="utf-8")
        except OSError as e:
            raise SpecError("json", f"cannot read {source}: {e.strerror}") from None
    return parse_spec(text)


def _hypotheses_doc(r: Recurrence) -> dict[str, bool]:
    return {
        "nondegenerate": is_nondegenerate(r),
        "roots_nonconstant": roots_nonconstant(r),
        "pairwise_mult_independent": pairwise_mult_independent(r),
    }


def bound(spec: ProblemSpec, params: BoundParams = BoundParams()) -> dict[str, Any]:
    if spec.mode not in ("single", "pair"):
        raise SpecError("schema", "bounds exist for modes single and pair only")
    r, S = spec.recurrence(), spec.place_set()
    fn = single_term_bound if spec.mode == "single" else pair_sum_bound
    return {
        "input": spec.canonical(),
        "hypotheses": _hypotheses_doc(r),
        "bound": bound_doc(fn(r, S, params)),
    }


def run(spec: ProblemSpec, threads: int = 1, params: BoundParams = BoundParams()) -> dict[str, Any]:
    """Full pipeline for ``spec``: bound, enumeration, certificates, window."""
    r, S = spec.recurrence(), spec.place_set()
    doc: dict[str, Any] = {"input": spec.canonical(), "hypotheses": _hypotheses_doc(r)}
    if spec.mode == "verify":
        if not spec.indices:
            raise SpecError("schema", "mode verify needs 'indices'")
        doc["verify"] = verify_doc(verify_sum(r, S, spec.indices))
        return doc
    solve = solve_single if spec.mode == "single" else solve_pair
    rep = solve(r, S, params, threads=threads)
    if spec.window is not None:
        rep.scan_window = window_scan(r, S, spec.mode, spec.window[0], spec.window[1], threads=threads)
    doc.update(solution_doc(rep))
    return doc


# -- presentation ------------------------------------------------------------

def _human_bound(b: dict[str, Any], out: list[str]) -> None:
    out.append(f"enlarged S: {{{', '.join(b['enlarged_S'])}}}  (|S| = {b['s_count']})")
    for k, v in b["constants"].items():
        out.append(f"  {k} = {v}")
    if "gaps" in b:
        gaps = ", ".join(f"{g['pair'][0]}/{g['pair'][1]}: {g['gap']}" for g in b["gaps"])
        out.append(f"  gaps: {gaps}")
        out.append(f"  |S'| = {b['s_prime_count']}")
    out.append(f"final bound: {b['final_bound']}")


def _fmt_index(i) -> str:
    return f"({i[0]}, {i[1]})" if isinstance(i, list) else str(i)


def human(doc: dict[str, Any]) -> str:
    out: list[str] = []
    if "verify" in doc:
        v = doc["verify"]
        out.append(f"sum of G at {v['indices']} = {v['value']}")
        out.append(f"S-unit: {'yes' if v['s_unit'] else 'no'}")
        return "\n".join(out) + "\n"
    if "mode" in doc:
        out.append(f"mode: {doc['mode']}")
    _human_bound(doc["bound"], out)
    if "solutions" in doc:
        out.append(f"solutions ({len(doc['solutions'])}):")
        for s in doc["solutions"]:
            out.append(f"  {_fmt_index(s['index'])}: {s['value']}")
        user = ", ".join(_fmt_index(i) for i in doc["user_S_solutions"])
        out.append(f"solutions for the given S: {user or 'none'}")
    if "window" in doc:
        w = doc["window"]
        out.append(f"window [{w['lo']}, {w['hi']}]: {w['count']} found")
    return "\n".join(out) + "\n"


# -- entry point -------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--threads", type=int, default=1, help="maximum worker processes")
    common.add_argument("--genus", type=int, default=0, help=argparse.SUPPRESS)

    parser = _Parser(prog="sunitrec", description="S-unit values of linear recurrences over QQ(x)")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    for name, help_ in (
        ("bound", "compute the index bound only"),
        ("solve", "bound, enumerate and certify all solutions"),
        ("verify", "test a sum of terms for S-unit membership"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("spec", help="problem JSON file, or - for stdin")
        if name == "verify":
            p.add_argument("--indices", type=int, nargs="+", help="strictly decreasing indices")
    p = sub.add_parser("height", parents=[common], help="height of an expression")
    p.add_argument("expr")
    p = sub.add_parser("divisor", parents=[common], help="divisor of an expression")
    p.add_argument("expr")
    p.add_argument("--context", nargs="*", default=[], help="extra polynomials to refine against")
    return parser


def _error_doc(kind: str, message: str, **extra) -> dict[str, Any]:
    err = {"kind": kind, "message": message}
    err.update({k: v for k, v in extra.items() if v is not None})
    return {"error": err}


def _dispatch(args) -> dict[str, Any] | str:
    params = BoundParams(args.genus)
    if args.command in ("bound", "solve", "verify"):
        spec = load_spec(args.spec)
        if args.command == "bound":
            return bound(spec, params)
        if args.command == "verify":
            indices = tuple(args.indices) if args.indices else spec.indices
            spec = ProblemSpec(spec.coefficients, spec.roots, spec.places, "verify", indices, None)
        return run(spec, threads=args.threads, params=params)
    f = _parse_field("expression", [args.expr])[0]
    if args.command == "height":
        h = height(f)
        return {"expression": f.render(), "height": h if isinstance(h, int) else "inf"}
    context = [c.num for c in _parse_field("context", args.context)]
    if f.is_zero():
        raise SpecError("parse", "valuation of zero undefined")
    d, _ = divisor(f, context)
    return {"expression": f.render(), "divisor": divisor_doc(d), "weighted_total": d.weighted_total()}


def _human_small(doc: dict[str, Any]) -> str:
    if "height" in doc:
        return f"{doc['height']}\n"
    d = doc["divisor"]
    parts = [f"{e['place']}: {e['valuation']}" for e in d["finite"]] + [f"inf: {d['infinity']}"]
    return "{" + ", ".join(parts) + "}\n"


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    if args.threads < 1:
        parser.error("--threads must be at least 1")

    code, err = EXIT_OK, None
    try:
        doc = _dispatch(args)
    except SpecError as e:
        code, err = EXIT_PARSE, _error_doc(e.kind, str(e), position=e.position, expression=e.expression)
    except ParseError as e:
        code, err = EXIT_PARSE, _error_doc("parse", str(e), position=e.position)
    except RecurrenceError as e:
        code, err = EXIT_HYPOTHESIS, _error_doc("invalid_recurrence", str(e), hypothesis=e.reason)
    except HypothesisError as e:
        code, err = EXIT_HYPOTHESIS, _error_doc("hypothesis", str(e), hypothesis=e.hypothesis)
    except MembershipMismatch as e:
        code, err = EXIT_INTERNAL, _error_doc("internal", str(e))
    except ValueError as e:
        code, err = EXIT_PARSE, _error_doc("input", str(e))

    if err is not None:
        if args.json:
            sys.stdout.write(dumps(err))
        else:
            sys.stderr.write(f"error: {err['error']['message']}\n")
        return code
    if args.json:
        sys.stdout.write(dumps(doc))
    elif args.command in ("height", "divisor"):
        sys.stdout.write(_human_small(doc))
    else:
        sys.stdout.write(human(doc))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
