"""``ilconv`` command line: scenario checks, curated demos, densities and axiom levels."""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from importlib import resources

from . import __version__, dsl, mls, natset, oracle, setexpr
from .conv import HORIZON, J_PROBE, DeviationProfile, EventuallyConstant, deviation_set
from .verdict import exact

EXIT_OK, EXIT_USAGE, EXIT_FAILS, EXIT_PARSE, EXIT_REFUSAL, EXIT_IO = 0, 1, 2, 3, 4, 5
DEMOS = ("example1", "thm5", "isolated", "ap")
DENSITY_HORIZON = 2**16


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _seed(args) -> int | None:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("ILCONV_SEED")
    return int(env) if env else None


def _report_errors(errors, source: str, label: str, as_json: bool) -> int:
    if as_json:
        sys.stdout.write(_dump({"errors": [e.__dict__ for e in errors], "tool": "ilconv", "version": __version__}))
    else:
        lines = source.split("\n")
        for e in errors:
            print(f"{label}:{e.line}:{e.column}: {e.message}", file=sys.stderr)
            if e.line <= len(lines):
                print("  " + lines[e.line - 1], file=sys.stderr)
                print("  " + " " * (e.column - 1) + "^" * max(1, len(e.token)), file=sys.stderr)
    return EXIT_PARSE


def _run_source(source: str, label: str, args, walkthrough: bool = False) -> int:
    try:
        sc = dsl.parse(source)
    except dsl.ScenarioError as e:
        return _report_errors(e.errors, source, label, args.json)
    report = dsl.run(sc, j_probe=args.jprobe, horizon=args.horizon)
    if args.json:
        out = report.to_json()
        seed = _seed(args)
        if seed is not None:
            out["settings"]["seed"] = seed
        sys.stdout.write(_dump(out))
    else:
        if walkthrough:
            sys.stdout.write(_walkthrough(sc, args.jprobe))
        sys.stdout.write(report.render_text())
    return report.exit_code


def _walkthrough(sc: dsl.Scenario, j_probe: int, cells: int = 8) -> str:
    """Deviation table and A(ε) regimes for every (sequence, target) pair queried."""
    out = []
    seen = set()
    for q in sc.queries:
        if q.seq is None or (q.seq, q.point) in seen:
            continue
        seen.add((q.seq, q.point))
        decl = sc.lookup(dsl.SequenceDecl, q.seq)
        seq, x0 = decl.sequence, q.point
        out.append(f"sequence {q.seq} in {decl.space}, target {x0.render()}")
        out.append("  cell  x on cell         deviation")
        try:
            prof = DeviationProfile(seq, x0, j_probe)
        except Exception as e:  # noqa: BLE001 - the query records carry the refusal
            out.append(f"  (no profile: {e})")
            continue
        for j in range(1, cells + 1):
            out.append(f"  {j:>4}  {seq.cell_value(j).render():<16}  {prof.cell_dev(j)}")
        for n, p in seq.point_overrides.items():
            out.append(f"  n={n:<3} {p.render():<16}  {prof.dev(n)}")
        if isinstance(prof.tail, EventuallyConstant):
            vals = prof.regime_values()
            prev = Fraction(0)
            for v in vals:
                A = deviation_set(seq, x0, v, j_probe)
                out.append(f"  A(ε) = {A.to_expr()}  for {prev} < ε ≤ {v}")
                prev = v
            out.append(f"  A(ε) = empty  for ε > {prev}")
        else:
            picks = ", ".join(f"v_{j} = {seq.cell_value(j).render()}" for j in range(1, 6))
            out.append(f"  {picks}, ...")
            out.append("  A(ε) is finite in cells: it meets only D(1), ..., D(⌈1/ε⌉ - 1)")
        out.append("")
    return "\n".join(out)


def cmd_check(args) -> int:
    try:
        with open(args.path, encoding="utf-8") as fh:
            source = fh.read()
    except (OSError, UnicodeDecodeError) as e:
        print(f"ilconv: cannot read {args.path}: {e}", file=sys.stderr)
        return EXIT_IO
    return _run_source(source, args.path, args)


def demo_source(name: str) -> str:
    return resources.files("ilconv").joinpath("scenarios", f"{name}.ilconv").read_text(encoding="utf-8")


def cmd_demo(args) -> int:
    if args.name not in DEMOS:
        print(f"ilconv: unknown demo {args.name!r}; available: {', '.join(DEMOS)}", file=sys.stderr)
        return EXIT_USAGE
    source = demo_source(args.name)
    if not args.json:
        print(f"# demo {args.name}")
        print(source)
    return _run_source(source, f"<demo {args.name}>", args, walkthrough=True)


def cmd_density(args) -> int:
    try:
        expr = dsl.parse_set_expr(args.expr)
    except dsl.ScenarioError as e:
        return _report_errors(e.errors, args.expr, "<expr>", args.json)
    S = setexpr.evaluate(expr)
    N = args.horizon if args.horizon is not None else DENSITY_HORIZON
    bits = natset.prefix_mask(S, N)[1:]
    emp = oracle.empirical_density(bits, N)
    count = int(bits.sum())
    if args.json:
        sys.stdout.write(_dump({
            "set": S.to_expr(),
            "exact": exact(natset.density(S)),
            "empirical": exact(emp),
            "count": count,
            "horizon": N,
        }))
    else:
        print(f"set        {S.to_expr()}")
        print(f"exact      {natset.density(S)}")
        print(f"empirical  {count}/{N}  (= {emp})")
    return EXIT_OK


def _axiom_targets(arg: str) -> list[tuple[str, mls.Space]] | int:
    builtin = {"example1": mls.EXAMPLE1, "harmonic": mls.HARMONIC}
    if arg in builtin:
        return [(arg, builtin[arg])]
    try:
        with open(arg, encoding="utf-8") as fh:
            source = fh.read()
    except (OSError, UnicodeDecodeError) as e:
        print(f"ilconv: {arg} is neither a built-in space nor a readable file: {e}", file=sys.stderr)
        return EXIT_IO
    try:
        sc = dsl.parse(source)
    except dsl.ScenarioError as e:
        return _report_errors(e.errors, source, arg, False)
    return [(d.name, d.space) for d in sc.declarations if isinstance(d, dsl.SpaceDecl)]


def cmd_axioms(args) -> int:
    targets = _axiom_targets(args.space)
    if isinstance(targets, int):
        return targets
    results = []
    for name, space in targets:
        sample = space.sample()
        for level in ("metric-like", "partial", "metric"):
            v = mls.AXIOM_LEVELS[level](space, sample)
            results.append((name, level, v))
    if args.json:
        sys.stdout.write(_dump({
            "tool": "ilconv",
            "version": __version__,
            "spaces": [{"space": n, "level": lv, **v.to_json()} for n, lv, v in results],
        }))
    else:
        for name, level, v in results:
            print(f"{name:<10} {level:<12} {v.outcome.value:<6} {v.description}")
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    # usage errors must not collide with exit code 2, which means "a query fails"
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the machine-readable report")
    common.add_argument("--horizon", type=int, default=None, help=f"oracle prefix length (default {HORIZON})")
    common.add_argument("--jprobe", type=int, default=J_PROBE, help="cells probed explicitly")
    common.add_argument("--seed", type=int, default=None, help="seed for randomized checks (env ILCONV_SEED)")

    p = _Parser(prog="ilconv", description=__doc__)
    p.add_argument("--version", action="version", version=f"ilconv {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("check", parents=[common], help="parse and run a scenario file")
    c.add_argument("path")
    c.set_defaults(func=cmd_check)
    d = sub.add_parser("demo", parents=[common], help=f"run a curated scenario ({', '.join(DEMOS)})")
    d.add_argument("name")
    d.set_defaults(func=cmd_demo)
    e = sub.add_parser("density", parents=[common], help="exact and empirical density of a set expression")
    e.add_argument("expr")
    e.set_defaults(func=cmd_density)
    a = sub.add_parser("axioms", parents=[common], help="axiom levels of a built-in space or the spaces in a file")
    a.add_argument("space")
    a.set_defaults(func=cmd_axioms)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command != "density" and args.horizon is None:
        args.horizon = HORIZON
    for flag in ("horizon", "jprobe"):
        val = getattr(args, flag)
        if val is not None and val < 1:
            print(f"ilconv: --{flag} must be positive", file=sys.stderr)
            return EXIT_USAGE
    return args.func(args)
