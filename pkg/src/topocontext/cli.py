"""Command-line front end.

Every command builds an ordered report of (key, value) fields, rendered either
as text (``key: value`` lines) or as JSON. Both renderers format floats from the
same rounded value, so the two outputs carry the same numbers.

Exit codes: 0 success, 1 check failure or signalling model, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Any

import numpy as np

from .braid import (
    BraidParseError,
    apply_word,
    build_rep,
    lie_closure,
    parse_braid_word,
    random_word,
    verify_braid_relations,
    verify_unitarity,
)
from .category import (
    DEFAULT_TOL,
    CategoryData,
    CategoryError,
    global_dimension,
    quantum_dimensions,
    s_matrix,
    verify_all,
)
from .contextuality import (
    COMPAT_TOL,
    LP_TOL,
    SUPPORT_TOL,
    ModelError,
    Verdict,
    check_compatibility,
    classical_bound,
    classify_hierarchy,
    contextuality_from_braiding,
    kcbs_model,
    kcbs_value,
)
from .fusion import f_move_matrix
from .invariants import ORACLE_MAX_CROSSINGS, kauffman_bracket_oracle, link_invariant
from .io import load_category, load_model
from .models import builtin

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
SWEEP_WORDS, SWEEP_LENGTH = 20, 40


class UsageError(Exception):
    """Bad flags or unreadable input; exit code 2."""


class CheckFailed(Exception):
    """Analysis ran but a check failed; exit code 1."""


def fmt(x: float) -> str:
    x = float(x)
    return f"{x + 0.0:.12g}"


def _round(x: float) -> float:
    return float(fmt(x))


class Report:
    def __init__(self):
        self.fields: list[tuple[str, Any]] = []

    def add(self, key: str, value: Any):
        self.fields.append((key, value))

    def render(self, style: str) -> str:
        if not self.fields:
            return ""
        if style == "json":
            return json.dumps({k: _to_json(v) for k, v in self.fields}, indent=2) + "\n"
        lines = []
        for key, value in self.fields:
            if isinstance(value, np.ndarray):
                lines.append(f"{key}:")
                lines.extend("  " + row for row in _matrix_rows(value))
            elif isinstance(value, list) and value and all(isinstance(v, str) for v in value):
                lines.append(f"{key}:")
                lines.extend("  " + v for v in value)
            else:
                lines.append(f"{key}: {_to_text(value)}")
        return "\n".join(lines) + "\n"


def _to_text(v: Any) -> str:
    if isinstance(v, bool) or v is None:
        return str(v).lower() if v is not None else "none"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return fmt(v)
    if isinstance(v, (complex, np.complexfloating)):
        return f"{fmt(v.real)} {fmt(v.imag)}"
    if isinstance(v, dict):
        return " ".join(f"{k}={_to_text(x)}" for k, x in v.items())
    if isinstance(v, (list, tuple)):
        return ", ".join(_to_text(x) for x in v) if v else "-"
    return str(v)


def _to_json(v: Any) -> Any:
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        return _round(v)
    if isinstance(v, (complex, np.complexfloating)):
        return {"re": _round(v.real), "im": _round(v.imag)}
    if isinstance(v, np.ndarray):
        return [[_to_json(complex(z)) for z in row] for row in np.atleast_2d(v)]
    if isinstance(v, dict):
        return {str(k): _to_json(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_to_json(x) for x in v]
    return str(v)


def _matrix_rows(M: np.ndarray) -> list[str]:
    cells = [[f"{fmt(z.real)} {fmt(z.imag)}" for z in row] for row in np.atleast_2d(M).astype(complex)]
    width = max((len(c) for row in cells for c in row), default=0)
    return ["[ " + " | ".join(c.rjust(width) for c in row) + " ]" for row in cells]


def _table(headers: list[str], rows: list[list[str]]) -> list[str]:
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(headers)]
    out = ["  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
    out += ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    return out


# ---------------------------------------------------------------- inputs


def _category(args) -> CategoryData:
    if args.file:
        return load_category(args.file)
    return builtin(args.builtin)


def _tol(args, default: float) -> float:
    return default if args.tol is None else args.tol


def _leaf_and_total(cat: CategoryData, args) -> tuple[int, int]:
    if args.leaf is not None:
        leaf = cat.index(args.leaf)
    else:
        leaf = next(a for a in range(cat.n_labels) if a != cat.unit) if cat.n_labels > 1 else cat.unit
    total = leaf if args.total is None else cat.index(args.total)
    return leaf, total


def _rep(cat: CategoryData, args):
    if args.n < 2:
        raise UsageError(f"-n must be at least 2, got {args.n}")
    leaf, total = _leaf_and_total(cat, args)
    try:
        return build_rep(cat, [leaf] * args.n, total)
    except CategoryError as exc:
        if "zero-dimensional" in str(exc) or "dimension 0" in str(exc):
            raise CheckFailed(str(exc)) from None
        raise


def _strands_from_word(text: str) -> int:
    idx = [int(m) for m in re.findall(r"s(\d+)", text)]
    return max(idx, default=0) + 1


# ---------------------------------------------------------------- commands


def cmd_category_verify(args, rep: Report) -> int:
    cat = _category(args)
    tol = _tol(args, DEFAULT_TOL)
    rep.add("category", cat.name)
    rep.add("tolerance", tol)
    ok = True
    for r in verify_all(cat, tol):
        ok &= r.passed
        rep.add(r.name, {"status": "pass" if r.passed else "FAIL", "residual": r.residual, "where": r.detail or "-"})
    rep.add("result", "pass" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_category_info(args, rep: Report) -> int:
    cat = _category(args)
    d = quantum_dimensions(cat)
    rep.add("category", cat.name)
    rep.add("labels", cat.n_labels)
    rows = [
        [str(a), cat.name_of(a), cat.name_of(cat.dual(a)), fmt(d[a]), f"{fmt(cat.twists[a].real)} {fmt(cat.twists[a].imag)}"]
        for a in range(cat.n_labels)
    ]
    rep.add("label table", _table(["id", "name", "dual", "d", "twist"], rows))
    fusion = []
    for a in range(cat.n_labels):
        for b in range(a, cat.n_labels):
            outs = " + ".join(cat.name_of(c) for c in cat.rules.outcomes(a, b))
            fusion.append(f"{cat.name_of(a)} x {cat.name_of(b)} = {outs}")
    rep.add("fusion", fusion)
    rep.add("global dimension", global_dimension(cat))
    rep.add("S", s_matrix(cat))
    return EXIT_OK


def cmd_rep_build(args, rep: Report) -> int:
    cat = _category(args)
    r = _rep(cat, args)
    names = [" ".join(cat.name_of(x) for x in t.comb()) for t in r.basis]
    rep.add("category", cat.name)
    rep.add("strands", r.n_strands)
    rep.add("dimension", r.dim)
    rep.add("basis", _table(["index", "comb (leaf1 internal... total)"], [[str(i), s] for i, s in enumerate(names)]))
    for i, g in enumerate(r.generators, start=1):
        rep.add(f"sigma_{i}", g)
    for p in range(1, r.n_strands - 1):
        rep.add(f"F-move {p}", f_move_matrix(cat, r.basis, p))
    return EXIT_OK


def cmd_rep_check(args, rep: Report) -> int:
    cat = _category(args)
    tol = _tol(args, DEFAULT_TOL)
    r = _rep(cat, args)
    rep.add("category", cat.name)
    rep.add("strands", r.n_strands)
    rep.add("dimension", r.dim)
    rep.add("tolerance", tol)
    reports = [verify_unitarity(r, tol), verify_braid_relations(r, tol)]
    rng = np.random.default_rng(args.seed)
    worst = 0.0
    I = np.eye(r.dim)
    for _ in range(SWEEP_WORDS):
        w = random_word(r.n_strands, int(rng.integers(0, SWEEP_LENGTH + 1)), rng)
        worst = max(worst, float(np.max(np.abs(apply_word(r, w * w.inverse()) - I))))
    ok = True
    for c in reports:
        ok &= c.passed
        rep.add(c.name, {"status": "pass" if c.passed else "FAIL", "residual": c.residual, "where": c.detail or "-"})
    sweep_ok = worst <= tol
    ok &= sweep_ok
    rep.add("inverse sweep", {"status": "pass" if sweep_ok else "FAIL", "residual": worst, "words": SWEEP_WORDS, "seed": args.seed})
    rep.add("result", "pass" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_rep_apply(args, rep: Report) -> int:
    cat = _category(args)
    r = _rep(cat, args)
    w = parse_braid_word(args.word, r.n_strands)
    rep.add("word", str(w) or "e")
    rep.add("dimension", r.dim)
    rep.add("matrix", apply_word(r, w))
    return EXIT_OK


def cmd_rep_density(args, rep: Report) -> int:
    cat = _category(args)
    r = _rep(cat, args)
    lc = lie_closure(r.generators, _tol(args, 1e-8))
    rep.add("category", cat.name)
    rep.add("dimension", r.dim)
    rep.add("lie closure dim", lc.dim)
    rep.add("su(d) dim", lc.target)
    rep.add("closure", f"{lc.dim} of {lc.target}")
    rep.add("notes", list(lc.notes) or "-")
    return EXIT_OK


def cmd_jones(args, rep: Report) -> int:
    cat = _category(args)
    n = args.n if args.n is not None else _strands_from_word(args.word)
    w = parse_braid_word(args.word, n)
    leaf, _ = _leaf_and_total(cat, args)
    value = link_invariant(cat, leaf, w)
    rep.add("category", cat.name)
    rep.add("word", str(w) or "e")
    rep.add("strands", n)
    rep.add("writhe", w.writhe)
    rep.add("value", value)
    if cat.name != "fibonacci":
        rep.add("oracle", "only defined for the fibonacci category")
    elif len(w) > ORACLE_MAX_CROSSINGS:
        rep.add("oracle", f"skipped: more than {ORACLE_MAX_CROSSINGS} crossings")
    else:
        oracle = kauffman_bracket_oracle(w)
        rep.add("oracle", oracle)
        rep.add("difference", abs(value - oracle))
    return EXIT_OK


def _report_model(model, rep: Report, tol: float) -> int:
    sc = model.scenario
    rep.add("measurements", ", ".join(sc.measurements))
    rep.add("contexts", ["{" + ", ".join(c) + "}" for c in sc.contexts])
    comp = check_compatibility(model)
    rep.add("compatibility", {"status": "pass" if comp.passed else "FAIL", "residual": comp.residual, "tol": COMPAT_TOL})
    if not comp.passed:
        rep.add("signalling", comp.detail)
        return EXIT_FAIL
    binary = all(any(o == 1 or o == "1" for o in sc.outcomes[m]) for m in sc.measurements)
    if binary:
        value = kcbs_value(model)
        bound = classical_bound(sc)
        rep.add("value", value)
        rep.add("classical bound", bound)
        rep.add("excess over bound", value - bound)
    v = classify_hierarchy(model, tol)
    lp_class = Verdict.NONCONTEXTUAL if v.contextual_fraction <= tol else Verdict.CONTEXTUAL
    rep.add("lp verdict", str(lp_class))
    rep.add("noncontextual fraction", v.noncontextual_fraction)
    rep.add("contextual fraction", v.contextual_fraction)
    rep.add("duality gap", v.duality_gap)
    rep.add("logically contextual", v.logically_contextual)
    rep.add("strongly contextual", v.strongly_contextual)
    rep.add("consistent assignments", v.consistent_assignments)
    if v.weights:
        rep.add("certificate", f"global distribution on {len(v.weights)} assignments")
    else:
        nz = sum(int((f > 1e-9).sum()) for f in v.functional)
        rep.add("certificate", f"dual functional with {nz} nonzero coefficients, model value {fmt(v.noncontextual_fraction)} < 1")
    if v.support_witness:
        rep.add("support witness", v.support_witness)
    rep.add("replay", v.replay(model))
    rep.add("tolerances", {"lp": tol, "support": SUPPORT_TOL, "compatibility": COMPAT_TOL})
    rep.add("verdict", str(v.cls))
    return EXIT_OK


def cmd_contextuality(args, rep: Report) -> int:
    tol = _tol(args, LP_TOL)
    if args.kcbs_fibonacci:
        rep.add("source", "fibonacci pentagon in Hom(tau, tau^4)")
        model = kcbs_model()
    elif args.word is not None:
        cat = builtin(args.builtin)
        if args.n is None or args.n < 2:
            raise UsageError("braid-word families need -n of at least 2")
        leaf, total = _leaf_and_total(cat, args)
        words = [parse_braid_word(w, args.n) for w in args.word]
        rep.add("source", f"{cat.name} braid family on {args.n} strands: " + "; ".join(str(w) or "e" for w in words))
        model = contextuality_from_braiding(cat, [leaf] * args.n, total, words)
    elif args.file:
        rep.add("source", args.file)
        model = load_model(args.file)
    else:
        raise UsageError("contextuality needs --kcbs-fibonacci, --file or --word")
    return _report_model(model, rep, tol)


def cmd_scenario_check(args, rep: Report) -> int:
    if not args.file:
        raise UsageError("scenario check needs --file")
    model = load_model(args.file)
    sc = model.scenario
    rep.add("source", args.file)
    rep.add("measurements", ", ".join(sc.measurements))
    rep.add("contexts", ["{" + ", ".join(c) + "}" for c in sc.contexts])
    rep.add("global assignments", sc.n_assignments())
    comp = check_compatibility(model, _tol(args, COMPAT_TOL))
    rep.add("compatibility", {"status": "pass" if comp.passed else "FAIL", "residual": comp.residual, "tol": comp.tol})
    if not comp.passed:
        rep.add("signalling", comp.detail)
        return EXIT_FAIL
    return EXIT_OK


# ---------------------------------------------------------------- parser


def _positive(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not x > 0:
        raise argparse.ArgumentTypeError(f"tolerance must be positive, got {text}")
    return x


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--builtin", default="fibonacci", help="fibonacci, ising, trivial or su2k:<k>")
    common.add_argument("--file", help="category JSON (category/rep/jones) or model JSON (contextuality/scenario)")
    common.add_argument("--tol", type=_positive, help="tolerance override")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized sweeps")

    anyons = argparse.ArgumentParser(add_help=False)
    anyons.add_argument("--leaf", help="label of every strand (default: first non-unit label)")
    anyons.add_argument("--total", help="total charge (default: the leaf label)")

    parser = argparse.ArgumentParser(prog="topocontext", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    cat = sub.add_parser("category", help="inspect or verify category data").add_subparsers(dest="action", required=True)
    cat.add_parser("verify", parents=[common]).set_defaults(func=cmd_category_verify)
    cat.add_parser("info", parents=[common]).set_defaults(func=cmd_category_info)

    rp = sub.add_parser("rep", help="braid-group representations").add_subparsers(dest="action", required=True)
    for name, func in (("build", cmd_rep_build), ("check", cmd_rep_check), ("apply", cmd_rep_apply), ("density", cmd_rep_density)):
        p = rp.add_parser(name, parents=[common, anyons])
        p.add_argument("-n", type=int, default=3, help="number of strands")
        if name == "apply":
            p.add_argument("-w", "--word", default="", help='braid word such as "s1 s2^-1"')
        p.set_defaults(func=func)

    jp = sub.add_parser("jones", parents=[common, anyons], help="link invariant of a braid closure")
    jp.add_argument("-n", type=int, help="number of strands (default: inferred from the word)")
    jp.add_argument("-w", "--word", default="", help='braid word such as "s1 s1 s1"')
    jp.set_defaults(func=cmd_jones)

    cp = sub.add_parser("contextuality", parents=[common, anyons], help="contextuality analysis of an empirical model")
    cp.add_argument("--kcbs-fibonacci", action="store_true", help="pentagon projectors in the fibonacci fusion space")
    cp.add_argument("-w", "--word", action="append", help="braid word of a projector family (repeatable; \"\" is the identity)")
    cp.add_argument("-n", type=int, help="strands for --word families")
    cp.set_defaults(func=cmd_contextuality)

    sp = sub.add_parser("scenario", help="measurement scenarios").add_subparsers(dest="action", required=True)
    sp.add_parser("check", parents=[common]).set_defaults(func=cmd_scenario_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    rep = Report()
    try:
        code = args.func(args, rep)
    except BraidParseError as exc:
        print(f"error: braid word: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CheckFailed as exc:
        sys.stdout.write(rep.render(args.format))
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, CategoryError, ModelError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(rep.render(args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
