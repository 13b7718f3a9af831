"""Command-line interface: expression parsing, model specs, and reports.

Expressions form the concrete syntax for trigonometric-polynomial
parameters and J matrices:

    expr     := term (("+" | "-") term)*
    term     := factor ("*" factor)*
    factor   := rational | "sin" "(" lin ")" | "cos" "(" lin ")"
              | "(" expr ")" | "-" factor
    lin      := signed integer-coefficient combination of x1..xn
    rational := int ("/" posint)?

sin/cos arguments must be integer combinations of coordinates (anything else
cannot stay inside the exact Fourier ring), so "sin(x1/2)" is rejected with
NonIntegerFrequency.  Parsing produces a small AST which is then evaluated to
an exact real TrigPoly; printing a real TrigPoly and reparsing it round-trips
exactly.

Model spec files are JSON: {"name", "kind": "torus"|"lie", "dim", "J":
[[expr, ...], ...], "structure_constants": [{"i","j","k","c"}, ...],
"windows": [..]} with 1-based frame indices.  Reports are emitted as
deterministic JSON (sorted keys) or as rendered text; exit codes are 0 for
success, 1 for a failed check, 2 for an input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import __version__
from .coeffring import Rat, TrigPoly, rat, rat_str
from .errors import (
    AlmostComplexError,
    BadParameter,
    ExprError,
    InvalidWindow,
    ModelValidationError,
    NonIntegerFrequency,
    NotASubspace,
    UnknownCoordinate,
)
from .frames import VectorForm, validate_model
from .models import CATALOG, Structure, builtin, iwasawa_h1_constraint_oracle
from . import complexes, dolbeault
from .complexes import Window, as_window, cohomology, lemma_check, phi_map, theorem313_crosscheck


# ---------------------------------------------------------------------------
# Expression AST
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: object


@dataclass(frozen=True)
class Neg:
    child: object


@dataclass(frozen=True)
class Sum:
    children: tuple


@dataclass(frozen=True)
class Product:
    children: tuple


@dataclass(frozen=True)
class Trig:
    fn: str          # "sin" | "cos"
    mode: tuple      # integer coefficients of x1..xn


class _Tokens:
    def __init__(self, text, dim):
        self.text = text
        self.dim = dim
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch):
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def expect(self, ch):
        if not self.take(ch):
            raise ExprError("expected %r" % ch, self.pos)

    def integer(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ExprError("expected an integer", start)
        return int(self.text[start:self.pos])

    def name(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (
            self.text[self.pos].isalnum() or self.text[self.pos] == "_"
        ):
            self.pos += 1
        return self.text[start:self.pos], start


def _parse_expr(t):
    parts = [_parse_term(t)]
    while True:
        if t.take("+"):
            parts.append(_parse_term(t))
        elif t.take("-"):
            parts.append(Neg(_parse_term(t)))
        else:
            break
    return parts[0] if len(parts) == 1 else Sum(tuple(parts))


def _parse_term(t):
    parts = [_parse_factor(t)]
    while t.take("*"):
        parts.append(_parse_factor(t))
    return parts[0] if len(parts) == 1 else Product(tuple(parts))


def _parse_factor(t):
    c = t.peek()
    if c == "-":
        t.take("-")
        return Neg(_parse_factor(t))
    if c == "(":
        t.take("(")
        node = _parse_expr(t)
        t.expect(")")
        return node
    if c.isdigit():
        value = rat(t.integer())
        if t.take("/"):
            start = t.pos
            den = t.integer()
            if den <= 0:
                raise ExprError("denominator must be positive", start)
            value = value / rat(den)
        return Num(value)
    if c.isalpha():
        word, start = t.name()
        if word in ("sin", "cos"):
            t.expect("(")
            mode = _parse_linear(t)
            t.expect(")")
            return Trig(word, mode)
        raise ExprError("unexpected name %r" % word, start)
    raise ExprError("unexpected character %r" % (c or "end of input"), t.pos)


def _parse_linear(t):
    """Integer-coefficient combination of coordinates, e.g. 'x1 - 2*x3'."""
    mode = [0] * t.dim
    first = True
    while True:
        t.skip_ws()
        sign = 1
        if t.take("+"):
            pass
        elif t.take("-"):
            sign = -1
        elif not first:
            break
        c = t.peek()
        if c.isdigit():
            start = t.pos
            coeff = t.integer()
            if t.peek() == "/":
                raise NonIntegerFrequency(
                    "trig arguments must use integer frequencies", t.pos
                )
            t.expect("*")
            _read_coordinate(t, mode, sign * coeff)
        elif c.isalpha():
            _read_coordinate(t, mode, sign)
        else:
            raise ExprError("expected a coordinate term", t.pos)
        if t.peek() == "/":
            raise NonIntegerFrequency(
                "trig arguments must use integer frequencies", t.pos
            )
        first = False
    if first:
        raise ExprError("empty trig argument", t.pos)
    return tuple(mode)


def _read_coordinate(t, mode, coeff):
    word, start = t.name()
    if not word.startswith("x") or not word[1:].isdigit():
        raise ExprError("expected a coordinate like x1", start)
    idx = int(word[1:])
    if not 1 <= idx <= t.dim:
        raise UnknownCoordinate(
            "coordinate %s outside x1..x%d" % (word, t.dim), start
        )
    mode[idx - 1] += coeff


def _ast_to_trig(node, dim):
    if isinstance(node, Num):
        return TrigPoly.constant(dim, node.value)
    if isinstance(node, Neg):
        return -_ast_to_trig(node.child, dim)
    if isinstance(node, Sum):
        total = TrigPoly.zero(dim)
        for c in node.children:
            total = total + _ast_to_trig(c, dim)
        return total
    if isinstance(node, Product):
        total = TrigPoly.one(dim)
        for c in node.children:
            total = total * _ast_to_trig(c, dim)
        return total
    if isinstance(node, Trig):
        if node.fn == "sin":
            return TrigPoly.sin_mode(dim, node.mode)
        return TrigPoly.cos_mode(dim, node.mode)
    raise TypeError(node)


def parse_ast(text, dim):
    t = _Tokens(text, dim)
    node = _parse_expr(t)
    t.skip_ws()
    if t.pos != len(t.text):
        raise ExprError("trailing input", t.pos)
    return node


def parse_expr(text, dim=4):
    """Parse an expression into an exact real TrigPoly on dim coordinates."""
    trig = _ast_to_trig(parse_ast(text, dim), dim)
    assert trig.reality
    return trig


# ---------------------------------------------------------------------------
# Model loading
# ---------------------------------------------------------------------------

def load_spec(raw):
    """Build (Structure, windows) from a parsed model-spec dict."""
    model = validate_model(raw)
    jm = raw.get("J")
    if not isinstance(jm, list) or len(jm) != model.n:
        raise ModelValidationError(["J must be a %dx%d matrix" % (model.n, model.n)])
    rows = []
    for row in jm:
        if len(row) != model.n:
            raise ModelValidationError(["J must be square of size %d" % model.n])
        parsed = []
        for cell in row:
            f = parse_expr(str(cell), model.n)
            if not model.is_torus and not f.is_constant():
                raise ModelValidationError(
                    ["J entries must be constant on a Lie algebra frame"]
                )
            parsed.append(f)
        rows.append(parsed)
    J = VectorForm.from_matrix(model, rows)
    struct = Structure(model, J, raw.get("name"))
    windows = raw.get("windows") or ([1] if model.is_torus else ["invariant"])
    return struct, windows


def load_spec_file(path):
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    return load_spec(raw)


def _resolve_model(args):
    """Builtin name or spec-file path -> (Structure, default windows)."""
    target = args.model
    if target.endswith(".json") or os.path.sep in target or os.path.exists(target):
        return load_spec_file(target)
    params = {}
    dim = getattr(args, "dim", None)
    if getattr(args, "p", None) is not None:
        params["p"] = parse_expr(args.p, 4)
    if getattr(args, "f", None) is not None:
        params["f"] = parse_expr(args.f, 4)
    if getattr(args, "g", None) is not None:
        params["g"] = parse_expr(args.g, 4)
    if dim is not None:
        params["n"] = dim
    return builtin(target, **params), None


def _parse_windows(text, struct, fallback):
    if text is None:
        if fallback:
            return list(fallback)
        return ["invariant"] if not struct.model.is_torus else [1]
    if text == "invariant":
        return ["invariant"]
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo, hi = int(lo), int(hi)
        if hi < lo:
            raise InvalidWindow("empty window range %s" % text)
        return list(range(lo, hi + 1))
    return [int(text)]


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

def emit_report(report, fmt="text"):
    """Render a report dict as deterministic JSON or human-readable text."""
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2, default=str) + "\n"
    lines = []
    _render_text(report, lines, indent="")
    return "\n".join(lines) + "\n"


def _render_text(value, lines, indent):
    if isinstance(value, dict):
        for key in sorted(value):
            v = value[key]
            if isinstance(v, (dict, list)):
                lines.append("%s%s:" % (indent, key))
                _render_text(v, lines, indent + "  ")
            else:
                lines.append("%s%s: %s" % (indent, key, v))
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, (dict, list)):
                lines.append("%s-" % indent)
                _render_text(item, lines, indent + "  ")
            else:
                lines.append("%s- %s" % (indent, item))
    else:
        lines.append("%s%s" % (indent, value))


def _base_report(command, struct=None):
    out = {"command": command, "version": __version__}
    if struct is not None:
        out["model"] = struct.name
    return out


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def _cmd_validate(args):
    with open(args.spec, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    struct, windows = load_spec(raw)
    report = _base_report("validate", struct)
    report["verdicts"] = {
        "valid": True,
        "kind": struct.model.kind,
        "dim": struct.model.n,
        "windows": windows,
        "integrable": struct.integrable,
    }
    return 0, report


def _cmd_list_models(args):
    report = _base_report("list-models")
    entries = {}
    for name, entry in sorted(CATALOG.items()):
        entries[name] = {
            "kind": entry.kind,
            "description": entry.description,
            "parameters": entry.parameters,
        }
        if entry.non_catalog_note:
            entries[name]["note"] = entry.non_catalog_note
    report["models"] = entries
    return 0, report


def _cmd_nijenhuis(args):
    struct, _ = _resolve_model(args)
    report = _base_report("nijenhuis", struct)
    comps = {}
    N = struct.N
    n = struct.model.n
    for i in range(n):
        for j in range(i + 1, n):
            parts = []
            for l in range(n):
                f = N.parts[l].comps.get((i, j))
                if f is not None:
                    parts.append("(%s) e_%d" % (f.render(), l + 1))
            if parts:
                comps["N(e%d,e%d)" % (i + 1, j + 1)] = " + ".join(parts)
    report["components"] = comps
    report["verdicts"] = {"integrable": struct.integrable}
    return 0, report


def _cmd_identities(args):
    struct, _ = _resolve_model(args)
    rep = struct.identity_suite(samples=args.samples, seed=args.seed)
    report = _base_report("identities", struct)
    report["seed"] = rep.seed
    report["samples"] = rep.samples
    report["verdicts"] = {
        c.name: {"passed": c.passed, "counterexample": c.counterexample}
        for c in rep.checks
    }
    report["all_passed"] = rep.all_passed
    return (0 if rep.all_passed else 1), report


def _cmd_cohomology(args):
    struct, fallback = _resolve_model(args)
    report = _base_report("cohomology", struct)
    if args.theory == "dolbeault":
        rep = dolbeault.dolbeault_cohomology(struct, args.degree)
        report.update(rep.as_dict())
        report["theory"] = "dolbeault"
        return 0, report
    windows = _parse_windows(args.windows, struct, fallback)
    rep = cohomology(
        struct, args.theory, args.degree, windows, representatives=args.representatives
    )
    report.update(rep.as_dict())
    verdicts = {}
    if struct.name == "iwasawa" and args.theory == "J" and args.degree == 1:
        oracle = iwasawa_h1_constraint_oracle()
        computed = rep.dims[-1]
        verdicts["constraint_oracle_dim"] = oracle
        verdicts["agrees_with_oracle"] = computed == oracle
        verdicts["real_span_of_two_claim"] = 2
        verdicts["differs_from_two_dimensional_reading"] = computed != 2
    report["verdicts"] = verdicts
    return 0, report


def _cmd_lemma(args):
    struct, fallback = _resolve_model(args)
    windows = _parse_windows(args.windows, struct, fallback)
    report = _base_report("lemma", struct)
    rows = [lemma_check(struct, args.degree, w).as_dict() for w in windows]
    report["degree"] = args.degree
    report["windows"] = rows
    report["verdicts"] = {"holds_at_last_window": rows[-1]["holds"]}
    return 0, report


def _cmd_crosscheck(args):
    struct, _ = _resolve_model(args)
    rep = theorem313_crosscheck(struct)
    report = _base_report("crosscheck", struct)
    report.update(rep.as_dict())
    return (0 if rep.passed else 1), report


def _add_model_arguments(sub, with_params=True):
    sub.add_argument("model", help="builtin model name or model-spec JSON path")
    if with_params:
        sub.add_argument("--p", help="expression for the parameter p")
        sub.add_argument("--f", help="expression for the parameter f")
        sub.add_argument("--g", help="expression for the parameter g")
        sub.add_argument("--dim", type=int, help="dimension for dimension-parametrized models")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="almostcomplex",
        description="exact calculus and cohomology for almost complex structures",
    )
    parser.add_argument("--format", choices=("text", "json"), default="text")
    subs = parser.add_subparsers(dest="command", required=True)

    sp = subs.add_parser("validate", help="validate a model-spec file")
    sp.add_argument("spec")
    sp.set_defaults(fn=_cmd_validate)

    sp = subs.add_parser("list-models", help="list builtin models")
    sp.set_defaults(fn=_cmd_list_models)

    sp = subs.add_parser("nijenhuis", help="components of the Nijenhuis tensor")
    _add_model_arguments(sp)
    sp.set_defaults(fn=_cmd_nijenhuis)

    sp = subs.add_parser("identities", help="run the derivation identity suite")
    _add_model_arguments(sp)
    sp.add_argument("--samples", type=int, default=20)
    sp.add_argument("--seed", type=int, default=2017)
    sp.set_defaults(fn=_cmd_identities)

    sp = subs.add_parser("cohomology", help="cohomology dimensions")
    _add_model_arguments(sp)
    sp.add_argument(
        "--theory",
        choices=("deRham", "J", "N", "Ntwist", "dolbeault"),
        required=True,
    )
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--windows", help="N, N0..N1 inclusive, or 'invariant'")
    sp.add_argument("--representatives", action="store_true")
    sp.set_defaults(fn=_cmd_cohomology)

    sp = subs.add_parser("lemma", help="the d L_J lemma quotient dimension")
    _add_model_arguments(sp)
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--windows", help="N, N0..N1 inclusive, or 'invariant'")
    sp.set_defaults(fn=_cmd_lemma)

    sp = subs.add_parser(
        "crosscheck",
        help="degree-by-degree lemma / comparison-map equivalence table",
    )
    _add_model_arguments(sp)
    sp.set_defaults(fn=_cmd_crosscheck)

    return parser


def run(argv):
    """Dispatch a command line; returns (exit code, report dict)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (2 if exc.code else 0), {"error": "argument parsing failed"}
    try:
        return args.fn(args)
    except NotASubspace as exc:
        return 1, {"error": str(exc), "kind": "broken-complex"}
    except (ModelValidationError, BadParameter, ExprError, InvalidWindow) as exc:
        report = {"error": str(exc), "kind": type(exc).__name__}
        if isinstance(exc, ModelValidationError):
            report["violations"] = [str(v) for v in exc.violations]
        return 2, report
    except AlmostComplexError as exc:
        return 2, {"error": str(exc), "kind": type(exc).__name__}
    except (OSError, json.JSONDecodeError) as exc:
        return 2, {"error": str(exc), "kind": type(exc).__name__}


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    fmt = "text"
    if "--format" in argv:
        i = argv.index("--format")
        if i + 1 < len(argv):
            fmt = argv[i + 1]
    code, report = run(argv)
    sys.stdout.write(emit_report(report, fmt))
    return code


if __name__ == "__main__":
    sys.exit(main())
