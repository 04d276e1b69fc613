"""Command-line entry point.

Exit codes: 0 verified pass / construction succeeded, 1 verification failed,
2 usage, parameter or file-format error, 3 search budget exceeded.

Examples::

    framecover search exact-bc --graph kneser:5,2 --d 1
    framecover construct random --t 10 --r 2 --seed 1 --trials 50 --out cover.json
    framecover convert cover-to-code --cover cover.json --out code.txt
    framecover verify sfpc --code code.txt --r 2
    framecover demo --quick
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__, fileio
from .cff import exact_min_n, verify_cff
from .codes import is_frameproof, is_sfpc
from .combinatorics import covering_number, graph_from_family, kneser_graph, max_biclique_edges
from .constructors import RNG_ALGORITHM, RandomTrialConfig, exact_bc, greedy_cover, random_cover, sfpc_bound
from .covers import bc_lower_bound, verify_cover
from .errors import Budget, BudgetExceeded, FormatError, FramecoverError, InvalidBicliqueError, ParameterError
from .hadamard import is_normalized, k8d_cover, kmm_minus_cover, normalize, sylvester, verify_hadamard
from .pipeline import pipeline_demo
from .transforms import code_to_cover, cover_to_cff, cover_to_code, cff_to_cover, project_cover, push_cover


class Failed(Exception):
    """Verification failed; carries the partial report."""


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted((_jsonable(v) for v in x), key=repr)
    if hasattr(x, "item"):
        return x.item()
    return x


class Run:
    """Collects the report for one invocation."""

    def __init__(self, args, budget):
        self.args = args
        self.budget = budget
        self.report = {
            "command": args.argv,
            "version": __version__,
            "inputs": {},
            "verdicts": {},
            "sizes": {},
            "bounds": {},
            "timings": {},
        }
        self.lines = []

    def input(self, path):
        self.report["inputs"][str(path)] = fileio.digest(path)
        return path

    def say(self, line):
        self.lines.append(line)

    def verdict(self, name, passed, **detail):
        self.report["verdicts"][name] = {"passed": bool(passed), **detail}
        self.say(f"{name}: {'PASS' if passed else 'FAIL'}" + (f"  {detail}" if detail and not passed else ""))
        return passed

    def timed(self, name, fn, *a, **kw):
        start = time.perf_counter()
        try:
            return fn(*a, **kw)
        finally:
            self.report["timings"][name] = round(time.perf_counter() - start, 6)


def _graph_arg(spec):
    return fileio.read_graph(spec)


def _write_cover(run, cover, out, graph=None):
    if not out:
        return
    fileio.write_cover(cover, out)
    back = fileio.read_cover(out)
    g = graph or graph_from_family(back.target)
    ok = verify_cover(g, back).passes(back.d)
    run.verdict("readback", ok, path=str(out))
    if not ok:
        raise Failed()


def _cover_verdict(run, g, cover, name="cover"):
    try:
        report = verify_cover(g, cover, strict=True)
    except InvalidBicliqueError as exc:
        run.verdict(name, False, invalid_biclique=exc.index, pair=_jsonable(exc.pair))
        raise Failed() from None
    run.report["sizes"][name] = cover.size
    ok = report.passes(cover.d)
    run.verdict(name, ok, d=cover.d, min_multiplicity=report.min_multiplicity,
                profile=report.profile, uncovered=_jsonable(report.uncovered[:20]))
    return ok


# ---------------------------------------------------------------------------
# verbs
# ---------------------------------------------------------------------------

def cmd_gen_graph(run, a):
    g = _graph_arg(a.graph)
    run.report["sizes"].update(vertices=g.n, edges=len(g.edges))
    run.say(f"{g.descriptor}: {g.n} vertices, {len(g.edges)} edges")
    if a.out:
        fileio.write_graph(g, a.out, explicit=not a.compact)
        back = fileio.read_graph(a.out)
        run.verdict("readback", back.edges == g.edges and back.n == g.n, path=a.out)
    return True


def cmd_verify(run, a):
    kind = a.kind
    if kind in ("sfpc", "fpc"):
        code = fileio.read_code(run.input(a.code))
        run.report["sizes"].update(t=code.t, v=code.v)
        if code.duplicate_rows:
            run.report["duplicate_rows"] = _jsonable(code.duplicate_rows)
        if kind == "sfpc":
            v = run.timed("verify", is_sfpc, code, a.r, fast=a.fast_size_r_only)
        else:
            v = run.timed("verify", is_frameproof, code, a.r)
        return run.verdict(f"{a.r}-{kind.upper()}", v.passed, witness=_jsonable(v.witness))
    if kind == "cff":
        f = fileio.read_cff(run.input(a.cff))
        run.report["sizes"].update(t=f.t, n=f.n)
        v = run.timed("verify", verify_cff, f, a.r, a.w, a.d)
        return run.verdict(f"({a.r},{a.w};{a.d})-CFF", v.passed, witness=_jsonable(v.witness))
    if kind == "cover":
        cover = fileio.read_cover(run.input(a.cover))
        if a.d is not None:
            cover = cover.with_d(a.d)
        g = _graph_arg(a.graph) if a.graph else graph_from_family(cover.target)
        return run.timed("verify", _cover_verdict, run, g, cover)
    if kind == "hadamard":
        h = fileio.read_hadamard(run.input(a.matrix))
        ok = verify_hadamard(h)
        run.report["sizes"]["order"] = h.order
        run.report["normalized"] = is_normalized(h)
        return run.verdict("hadamard", ok, order=h.order)
    raise ParameterError(f"unknown verify kind {kind}")


def cmd_convert(run, a):
    how = a.how
    if how == "code-to-cover":
        code = fileio.read_code(run.input(a.code))
        cover = code_to_cover(code, a.r)
        ok = _cover_verdict(run, kneser_graph(code.t, a.r), cover)
        if ok:
            _write_cover(run, cover, a.out)
        return ok
    if how == "cover-to-code":
        cover = fileio.read_cover(run.input(a.cover))
        code = cover_to_code(cover, unchecked=a.unchecked)
        r = cover.target[2]
        run.report["sizes"].update(t=code.t, v=code.v)
        v = is_sfpc(code, r) if r < code.t else None
        ok = v is None or v.passed
        run.verdict(f"{r}-SFPC", ok, witness=_jsonable(v.witness if v else None))
        if a.out:
            fileio.write_code(code, a.out)
            back = fileio.read_code(a.out)
            run.verdict("readback", back == code and (v is None or is_sfpc(back, r).passed), path=a.out)
        return ok
    if how == "cff-to-cover":
        f = fileio.read_cff(run.input(a.cff))
        cover = cff_to_cover(f, a.r, a.d)
        ok = _cover_verdict(run, kneser_graph(f.t, a.r), cover)
        if ok:
            _write_cover(run, cover, a.out)
        return ok
    if how == "cover-to-cff":
        cover = fileio.read_cover(run.input(a.cover))
        f = cover_to_cff(cover)
        r = cover.target[2]
        v = verify_cff(f, r, r, cover.d)
        run.report["sizes"].update(t=f.t, n=f.n)
        ok = run.verdict(f"({r},{r};{cover.d})-CFF", v.passed, witness=_jsonable(v.witness))
        if a.out:
            fileio.write_cff(f, a.out)
            back = fileio.read_cff(a.out)
            run.verdict("readback", verify_cff(back, r, r, cover.d).passed, path=a.out)
        return ok
    raise ParameterError(f"unknown conversion {how}")


def cmd_project(run, a):
    cover = fileio.read_cover(run.input(a.cover))
    res = run.timed("project", project_cover, cover, a.s, run.budget)
    run.report["bounds"].update(m=res.m, m_exact=res.m_exact, observed_min=res.observed_min)
    ok = _cover_verdict(run, kneser_graph(cover.target[1], a.s), res.cover)
    _write_cover(run, res.cover, a.out)
    return ok


def cmd_push(run, a):
    cover = fileio.read_cover(run.input(a.cover))
    res = run.timed("push", push_cover, cover)
    run.report["dropped_vertices"] = res.dropped
    t, r = cover.target[1:]
    ok = _cover_verdict(run, kneser_graph(t - 2, r - 1), res.cover)
    _write_cover(run, res.cover, a.out)
    return ok


def _order_to_k(order):
    k = order.bit_length() - 1
    if order < 1 or 1 << k != order:
        raise ParameterError(f"Sylvester construction gives powers of two only, got {order}")
    return k


def _matrix_arg(run, a):
    if a.matrix:
        h = fileio.read_hadamard(run.input(a.matrix))
    else:
        h = sylvester(_order_to_k(a.order))
    if not verify_hadamard(h):
        run.verdict("hadamard", False)
        raise Failed()
    return h


def cmd_hadamard(run, a):
    if a.what == "gen":
        h = sylvester(_order_to_k(a.order))
        ok = run.verdict("hadamard", verify_hadamard(h), order=h.order)
        if a.out:
            fileio.write_hadamard(h, a.out)
            run.verdict("readback", verify_hadamard(fileio.read_hadamard(a.out)), path=a.out)
        else:
            run.say(h.to_text().rstrip())
        return ok
    h = _matrix_arg(run, a)
    if a.what == "cover-k8d":
        cover = k8d_cover(h)
    else:
        if not is_normalized(h):
            run.report["normalized_input"] = True
            h = normalize(h)
        cover = kmm_minus_cover(h)
    g = graph_from_family(cover.target)
    run.report["bounds"]["bc_lower"] = bc_lower_bound(g, cover.d, run.budget)
    ok = _cover_verdict(run, g, cover)
    _write_cover(run, cover, a.out, g)
    return ok


def cmd_construct(run, a):
    bound = sfpc_bound(a.t, a.r)
    run.report["bounds"].update(sfpc=bound.value, sfpc_floor=bound.floor, p=bound.p, valid=bound.valid)
    g = kneser_graph(a.t, a.r)
    if a.method == "random":
        cfg = RandomTrialConfig(seed=a.seed, trials=a.trials, p_override=a.p)
        res = run.timed("construct", random_cover, a.t, a.r, cfg)
        run.report["rng"] = {"algorithm": RNG_ALGORITHM, "seed": a.seed, "trials": a.trials}
        run.report["sizes"]["per_trial"] = res.sizes
        run.report["bounds"].update(p_used=res.p, clamped=res.clamped)
        cover = res.best
    else:
        cover = run.timed("construct", greedy_cover, a.t, a.r)
    run.say(f"KG({a.t},{a.r}): cover of size {cover.size}, bound {bound.value:.4f}")
    ok = _cover_verdict(run, g, cover)
    _write_cover(run, cover, a.out, g)
    return ok


def cmd_search(run, a):
    if a.what == "exact-bc":
        g = _graph_arg(a.graph)
        res = run.timed("search", exact_bc, g, a.d, run.budget)
        run.report["sizes"]["bc"] = res.size
        run.report["bounds"]["lower"] = res.lower_bound
        run.say(f"bc_{a.d}({g.descriptor}) = {res.size}")
        ok = _cover_verdict(run, g, res.witness, "witness")
        _write_cover(run, res.witness, a.out, g)
        return ok
    if a.what == "min-n":
        res = run.timed("search", exact_min_n, a.r, a.w, a.d, a.t, run.budget, cross_check=not a.no_cross_check)
        run.report["sizes"].update(N=res.n, bc=res.bc)
        run.say(f"N(({a.r},{a.w};{a.d}),{a.t}) = {res.n}")
        ok = run.verdict("witness", verify_cff(res.witness, a.r, a.w, a.d).passed)
        if a.out:
            fileio.write_cff(res.witness, a.out)
        return ok
    if a.what == "covering-number":
        g = _graph_arg(a.graph)
        size, witness = run.timed("search", covering_number, g, run.budget)
        run.report["sizes"]["covering_number"] = size
        touched = all(g.vertices[i] in witness or g.vertices[j] in witness for i, j in g.edges)
        run.say(f"beta({g.descriptor}) = {size}")
        return run.verdict("witness", touched, size=size)
    raise ParameterError(f"unknown search {a.what}")


def cmd_bound(run, a):
    if a.what == "bc-lower":
        g = _graph_arg(a.graph)
        lb = bc_lower_bound(g, a.d, run.budget)
        run.report["bounds"].update(bc_lower=lb, edges=len(g.edges), max_biclique_edges=max_biclique_edges(g, run.budget))
        run.say(f"bc_{a.d}({g.descriptor}) >= {lb}")
        return True
    b = sfpc_bound(a.t, a.r)
    run.report["bounds"].update(value=b.value, floor=b.floor, p=b.p, alpha=b.alpha, beta=b.beta,
                                prefactor=str(b.prefactor), valid=b.valid)
    run.say(f"t={a.t} r={a.r}: v <= {b.prefactor} * (1 + ln {b.alpha}) = {b.value:.6f}  (p = {b.p:.6f})")
    if a.table:
        rows = []
        run.say(f"{'t':>3} {'bound':>10} {'greedy':>7} {'random':>7}")
        for t in range(2 * a.r + 1, a.t + 1):
            bt = sfpc_bound(t, a.r)
            gr = greedy_cover(t, a.r).size
            rc = random_cover(t, a.r, RandomTrialConfig(seed=a.seed, trials=a.trials)).best.size
            rows.append({"t": t, "bound": bt.value, "greedy": gr, "random": rc})
            run.say(f"{t:>3} {bt.value:>10.3f} {gr:>7} {rc:>7}")
        run.report["table"] = rows
    return True


def cmd_demo(run, a):
    fixture = fileio.read_code(run.input(a.fixture)) if a.fixture else None
    steps = pipeline_demo(quick=a.quick, budget=run.budget, fixture=fixture)
    for s in steps:
        run.verdict(s.name, s.passed, **_jsonable(s.detail))
        run.report["timings"][s.name] = round(s.seconds, 6)
    return all(s.passed for s in steps)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="framecover", description=__doc__.split("\n")[0])
    p.add_argument("--json", action="store_true", help="print the full JSON report")
    p.add_argument("--budget", help="search budget: N (edges) or vertices=..,edges=..,nodes=..")
    sub = p.add_subparsers(dest="verb", required=True)

    g = sub.add_parser("gen-graph")
    g.add_argument("--graph", required=True)
    g.add_argument("--out")
    g.add_argument("--compact", action="store_true", help="omit explicit lists for family graphs")
    g.set_defaults(fn=cmd_gen_graph)

    v = sub.add_parser("verify").add_subparsers(dest="kind", required=True)
    for kind in ("sfpc", "fpc"):
        s = v.add_parser(kind)
        s.add_argument("--code", required=True)
        s.add_argument("--r", type=int, required=True)
        if kind == "sfpc":
            s.add_argument("--fast-size-r-only", action="store_true")
        s.set_defaults(fn=cmd_verify, fast_size_r_only=False)
    s = v.add_parser("cff")
    s.add_argument("--cff", required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--w", type=int, required=True)
    s.add_argument("--d", type=int, default=1)
    s.set_defaults(fn=cmd_verify)
    s = v.add_parser("cover")
    s.add_argument("--cover", required=True)
    s.add_argument("--graph")
    s.add_argument("--d", type=int)
    s.set_defaults(fn=cmd_verify)
    s = v.add_parser("hadamard")
    s.add_argument("--matrix", required=True)
    s.set_defaults(fn=cmd_verify)

    c = sub.add_parser("convert").add_subparsers(dest="how", required=True)
    s = c.add_parser("code-to-cover")
    s.add_argument("--code", required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--out")
    s = c.add_parser("cover-to-code")
    s.add_argument("--cover", required=True)
    s.add_argument("--unchecked", action="store_true")
    s.add_argument("--out")
    s = c.add_parser("cff-to-cover")
    s.add_argument("--cff", required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--d", type=int, default=1)
    s.add_argument("--out")
    s = c.add_parser("cover-to-cff")
    s.add_argument("--cover", required=True)
    s.add_argument("--out")
    for name in ("code-to-cover", "cover-to-code", "cff-to-cover", "cover-to-cff"):
        c.choices[name].set_defaults(fn=cmd_convert)

    s = sub.add_parser("project")
    s.add_argument("--cover", required=True)
    s.add_argument("--s", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(fn=cmd_project)

    s = sub.add_parser("push-homomorphism")
    s.add_argument("--cover", required=True)
    s.add_argument("--out")
    s.set_defaults(fn=cmd_push)

    h = sub.add_parser("hadamard").add_subparsers(dest="what", required=True)
    s = h.add_parser("gen")
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(fn=cmd_hadamard)
    for name in ("cover-k8d", "cover-kmm"):
        s = h.add_parser(name)
        src = s.add_mutually_exclusive_group(required=True)
        src.add_argument("--matrix")
        src.add_argument("--order", type=int)
        s.add_argument("--out")
        s.set_defaults(fn=cmd_hadamard)

    k = sub.add_parser("construct").add_subparsers(dest="method", required=True)
    for name in ("random", "greedy"):
        s = k.add_parser(name)
        s.add_argument("--t", type=int, required=True)
        s.add_argument("--r", type=int, required=True)
        s.add_argument("--out")
        if name == "random":
            s.add_argument("--seed", type=int, default=0)
            s.add_argument("--trials", type=int, default=50)
            s.add_argument("--p", type=float, help="override the sampling probability")
        s.set_defaults(fn=cmd_construct)

    q = sub.add_parser("search").add_subparsers(dest="what", required=True)
    s = q.add_parser("exact-bc")
    s.add_argument("--graph", required=True)
    s.add_argument("--d", type=int, default=1)
    s.add_argument("--out")
    s.set_defaults(fn=cmd_search)
    s = q.add_parser("min-n")
    for name in ("r", "w", "d", "t"):
        s.add_argument(f"--{name}", type=int, required=True)
    s.add_argument("--no-cross-check", action="store_true")
    s.add_argument("--out")
    s.set_defaults(fn=cmd_search)
    s = q.add_parser("covering-number")
    s.add_argument("--graph", required=True)
    s.set_defaults(fn=cmd_search)

    b = sub.add_parser("bound").add_subparsers(dest="what", required=True)
    s = b.add_parser("bc-lower")
    s.add_argument("--graph", required=True)
    s.add_argument("--d", type=int, default=1)
    s.set_defaults(fn=cmd_bound)
    s = b.add_parser("sfpc")
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--table", action="store_true", help="compare with greedy and random covers for t = 2r+1..t")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trials", type=int, default=20)
    s.set_defaults(fn=cmd_bound)

    s = sub.add_parser("demo", help="run the reproduction pipeline")
    s.add_argument("--quick", action="store_true")
    s.add_argument("--fixture", help="code file to check in place of the derived KG(5,2) code")
    s.set_defaults(fn=cmd_demo)
    return p


def main(argv=None, stdout=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    args.argv = argv
    code = 0
    try:
        budget = Budget.from_env()
        if args.budget:
            budget = budget.updated(args.budget)
        run = Run(args, budget)
        try:
            ok = args.fn(run, args)
            code = 0 if ok else 1
        except Failed:
            code = 1
    except (FormatError, ParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}" + (f" (best found: {exc.best})" if exc.best is not None else ""),
              file=sys.stderr)
        return 3
    except FramecoverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    run.report["exit_code"] = code
    if args.json:
        json.dump(_jsonable(run.report), stdout, indent=1, sort_keys=True)
        stdout.write("\n")
    else:
        for line in run.lines:
            print(line, file=stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
