"""Command-line front end.

Exit codes: 0 pass, 1 input error, 2 property violation, 3 a verdict is
false on this input (an expected counterexample, not a bug).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .bitrade import (
    Bitrade,
    MissingMate,
    NonUniqueMate,
    NotDisjoint,
    NotPLS,
    ProperSubBitrade,
    TooLarge,
    bitrade_to_triangulation,
    canonical_torsion_embedding,
    decompose,
)
from .families import FIXTURES, ExpFamilyParams, InvalidParams, UnknownFixture, exp_family, fixture
from .surface import (
    BLACK,
    WHITE,
    MalformedTriangulation,
    NotThreeColourable,
    Triangulation,
    components_from_json,
    to_json,
    tricolour,
    validate,
)
from .suites import SPHERE_ORDERS, all_fixture_rows, family_row, harvest_suite, sphere_instance
from .trade import (
    NotThreeColoured,
    count_arborescences_bruteforce,
    digraph_from_t,
    full_report,
    t_matrix,
    tree_number,
)

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION, EXIT_FALSE = 0, 1, 2, 3
DEFAULT_SEED = 0


class InputError(Exception):
    pass


def _default_seed() -> int:
    env = os.environ.get("BITRADE_LAB_SEED")
    if env is None:
        return DEFAULT_SEED
    try:
        return int(env)
    except ValueError:
        raise InputError(f"BITRADE_LAB_SEED is not an integer: {env!r}") from None


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None


def _load_triangulations(args) -> list[Triangulation]:
    if args.fixture is not None:
        try:
            return [fixture(args.fixture)]
        except UnknownFixture:
            raise InputError(f"unknown fixture {args.fixture!r}; choose from {', '.join(FIXTURES)}") from None
    if args.path is None:
        raise InputError("give an input path or --fixture")
    data = _read_json(args.path)
    # generate output wraps the triangulation
    if isinstance(data, dict) and "triangulation" in data:
        data = data["triangulation"]
    try:
        return components_from_json(data)
    except (MalformedTriangulation, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad triangulation: {exc}") from None


def _emit(obj, out: str | None = None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _table(headers: list[str], rows: list[list]) -> str:
    cells = [headers] + [[str(x) for x in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    reports = []
    for t in _load_triangulations(args):
        try:
            rep = full_report(t, r_class=args.r_class)
        except (KeyError, ValueError) as exc:
            raise InputError(str(exc)) from None
        reports.append(rep)
    payload = [r.to_json() for r in reports]
    _emit(payload[0] if len(payload) == 1 else {"components": payload})
    return EXIT_OK if all(r.all_verdicts_hold for r in reports) else EXIT_FALSE


def cmd_bitrade(args) -> int:
    data = _read_json(args.path)
    try:
        bt = Bitrade.from_json(data)
    except (NotPLS, NotDisjoint, MissingMate, NonUniqueMate) as exc:
        print(f"error: not a bitrade: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad bitrade: {exc}") from None
    t = bitrade_to_triangulation(bt)
    surf = validate(t)
    out = {
        "valid": True,
        "size": bt.size,
        "labels": bt.n_labels(),
        "surface": surf.to_json(),
        "spherical": surf.is_sphere and bt.n_labels() == bt.size + 2,
    }
    try:
        dec = decompose(bt, cap=args.cap)
        out["decomposition"] = dec.bitrade.to_json() if isinstance(dec, ProperSubBitrade) else "indecomposable"
    except TooLarge:
        out["decomposition"] = None
    rep = full_report(t)
    out["report"] = rep.to_json()
    if surf.is_sphere:
        col = tricolour(t)
        out["embeddings"] = {c: canonical_torsion_embedding(t, col, c).to_json() for c in (WHITE, BLACK)}
    _emit(out)
    return EXIT_OK if rep.all_verdicts_hold else EXIT_FALSE


def cmd_generate(args) -> int:
    try:
        p = ExpFamilyParams(args.k, args.w)
    except InvalidParams as exc:
        raise InputError(str(exc)) from None
    _emit(to_json(exp_family(p)), args.out)
    return EXIT_OK


def _tmatrix_for(t: Triangulation):
    if not validate(t).is_surface:
        raise InputError("input is not a surface (pinched vertex)")
    try:
        col = tricolour(t)
    except NotThreeColourable as exc:
        raise InputError(f"not vertex 3-colourable: {exc}") from None
    return t_matrix(t, col)


def cmd_tree_number(args) -> int:
    values = [tree_number(_tmatrix_for(t)) for t in _load_triangulations(args)]
    if len(values) == 1:
        _emit({"tree_number": str(values[0])})
    else:
        _emit({"components": [{"tree_number": str(v)} for v in values]})
    return EXIT_OK


def cmd_oracle(args) -> int:
    (t,) = _load_triangulations(args)[:1]
    tm = _tmatrix_for(t)
    d = digraph_from_t(tm)
    root = args.root
    if not (root.startswith("z") and root[1:].isdigit() and 1 <= int(root[1:]) <= d.k):
        raise InputError(f"root must be one of z1..z{d.k}")
    try:
        n = count_arborescences_bruteforce(d, int(root[1:]) - 1, limit=args.limit)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _emit({"root": root, "arborescences": str(n), "tree_number": str(tree_number(tm))})
    return EXIT_OK


def _sphere_job(job):
    index, bt = job
    return sphere_instance(bt, index)


def _verify_sphere(args) -> tuple[int, dict, str]:
    orders = [args.order] if args.order else list(SPHERE_ORDERS)
    try:
        harvested = harvest_suite(args.count, args.seed, orders)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    jobs = [(i, bt) for i, (_, bt) in enumerate(harvested)]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            results = list(ex.map(_sphere_job, jobs))
    else:
        results = [_sphere_job(j) for j in jobs]
    rows, failures = [], []
    for res, (order, bt) in zip(results, harvested):
        row = res.to_json()
        row["order"] = order
        rows.append(row)
        if not res.passed:
            failures.append({"index": res.index, "bitrade": bt.to_json(), "checks": res.checks})
    n_pass = sum(r["passed"] for r in rows)
    payload = {"suite": "sphere", "seed": args.seed, "count": args.count, "passed": n_pass, "instances": rows}
    if failures:
        payload["failures"] = failures
    text = _table(
        ["#", "order", "t", "k", "C_W", "tree", "result"],
        [[r["index"], r["order"], r["info"]["t"], r["info"]["k"], r["info"]["C_W"], r["info"]["tree_number"],
          "pass" if r["passed"] else "FAIL " + ",".join(k for k, v in r["checks"].items() if not v)] for r in rows],
    ) + f"{n_pass}/{args.count} pass\n"
    return (EXIT_OK if not failures else EXIT_VIOLATION), payload, text


def _verify_family(args) -> tuple[int, dict, str]:
    rows = [family_row(k, w) for w in range(1, args.w_max + 1) for k in range(2, args.k_max + 1)]
    payload = {"suite": "family", "rows": rows, "passed": sum(r["passed"] for r in rows)}
    text = _table(
        ["k", "w", "t", "|C_W|", "k*w^(k-1)", "k*w^k", "result"],
        [[r["k"], r["w"], r["t"], r["C_W_order"], r["k_w_pow_k_minus_1"], r["k_w_pow_k"],
          "pass" if r["passed"] else "FAIL"] for r in rows],
    )
    return (EXIT_OK if all(r["passed"] for r in rows) else EXIT_VIOLATION), payload, text


def _verify_fixtures(args) -> tuple[int, dict, str]:
    rows = all_fixture_rows()
    payload = {"suite": "fixtures", "rows": rows}
    text = _table(
        ["fixture", "surface", "A_W", "A_B", "result"],
        [[r["name"], r["genus"], r["groups"]["A_W"], r["groups"]["A_B"], "pass" if r["passed"] else "FAIL"]
         for r in rows],
    )
    return (EXIT_OK if all(r["passed"] for r in rows) else EXIT_VIOLATION), payload, text


def cmd_verify(args) -> int:
    if args.seed is None:
        args.seed = _default_seed()
    suite = {"sphere": _verify_sphere, "family": _verify_family, "fixtures": _verify_fixtures}[args.suite]
    code, payload, text = suite(args)
    if args.format == "text":
        sys.stdout.write(text)
        if code == EXIT_VIOLATION and "failures" in payload:
            _emit(payload["failures"])
    else:
        _emit(payload)
    return code


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bitrade-lab", description="Trade groups of face 2-coloured triangulations.")
    sub = ap.add_subparsers(dest="verb", required=True)

    def add_input(p):
        p.add_argument("path", nargs="?", help="triangulation JSON file, or - for stdin")
        p.add_argument("--fixture", help="bundled fixture name")

    p = sub.add_parser("analyze", help="full group report for a triangulation")
    add_input(p)
    p.add_argument("--r-class", choices=["R", "C", "S"], help="colour class to use as R")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("bitrade", help="check a bitrade JSON and report on it")
    p.add_argument("path")
    p.add_argument("--cap", type=int, default=20, help="size limit for decomposition")
    p.set_defaults(func=cmd_bitrade)

    p = sub.add_parser("generate", help="emit a family triangulation")
    p.add_argument("--family", choices=["exp"], default="exp")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--w", type=int, default=2)
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=["sphere", "family", "fixtures"], required=True)
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--seed", type=int, default=None, help="default 0, or $BITRADE_LAB_SEED")
    p.add_argument("--order", type=int, help="latin square order (default: cycle through 5-8)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--k-max", type=int, default=8)
    p.add_argument("--w-max", type=int, default=5)
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("tree-number", help="det of the reduced T-matrix")
    add_input(p)
    p.set_defaults(func=cmd_tree_number)

    p = sub.add_parser("oracle", help="brute-force cross-checks")
    p.add_argument("what", choices=["arborescences"])
    add_input(p)
    p.add_argument("--root", default="z1")
    p.add_argument("--limit", type=int, default=16, help="refuse digraphs with more edges than this")
    p.set_defaults(func=cmd_oracle)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if getattr(args, "order", None) is not None and args.order < 4:
            raise InputError("--order must be at least 4")
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NotThreeColoured as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
