"""Command-line interface.

Exit codes: 0 success, 2 bad input (unreadable or malformed files, bad
flags), 3 a mathematical identity check failed.
"""
from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import export
from .complex import build_complex, euler_characteristic
from .dynamics import HarmonicVelocityError, evolve_series
from .geometry import closed_path_parity, curvature, handshake_check, p_degree, spectral_distance
from .graph import GENERATOR_NAMES, GraphError, generate, read_graph, serialize_graph
from .hodge import betti, hodge_decompose, trim_betti, laplacian_kernel_agrees, numeric_betti
from .homotopy import CoverError, cech_betti_check, contract, nerve, read_cover
from .operators import d_matrix, dirac, laplacian
from .spectral import (DEFAULT_COMBOS, IdentityViolation, dirac_complexity, dirac_spectrum,
                       laplacian_spectrum, mckean_singer_sweep, parse_complex_number,
                       signless_euler_poincare)

EXIT_OK, EXIT_INPUT, EXIT_IDENTITY = 0, 2, 3
DEFAULT_TOLERANCE = 1e-8


class InputError(Exception):
    pass


def _load(path: str, max_dim=None):
    try:
        g = read_graph(path)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None
    except GraphError as exc:
        raise InputError(f"{path}: {exc}") from None
    return g, build_complex(g, max_dim)


def analyze(g, c, tolerance: float = DEFAULT_TOLERANCE, full: bool = True) -> tuple:
    """Return (report dict, list of failed identity checks)."""
    failures = []
    chi = euler_characteristic(c)
    b = betti(c)
    report = {
        "vertex_count": g.vertex_count,
        "f_vector": list(c.f_vector),
        "euler_characteristic": chi,
        "betti": list(b),
    }
    if sum((-1) ** p * x for p, x in enumerate(b)) != chi:
        failures.append("Euler characteristic differs from alternating Betti sum")
    try:
        spec = dirac_spectrum(c)
    except IdentityViolation as exc:
        failures.append(str(exc))
        spec = dirac_spectrum(c, check=False)
    report["dirac_spectrum"] = spec.eigenvalues
    try:
        sign, logmag = dirac_complexity(c, b)
        report["complexity"] = {"sign": sign, "log_magnitude": logmag}
    except IdentityViolation as exc:
        failures.append(str(exc))
        report["complexity"] = None
    try:
        report["signless_euler_poincare"] = signless_euler_poincare(c, b)
    except IdentityViolation as exc:
        failures.append(str(exc))
        report["signless_euler_poincare"] = None
    devs = []
    limit = tolerance * max(1, c.size)
    for r in mckean_singer_sweep(c, DEFAULT_COMBOS):
        devs.append({"function": r.description, "t": r.t, "deviation": r.deviation})
        if r.deviation > limit:
            failures.append(f"McKean-Singer {r.description} t={r.t}: deviation {r.deviation:.3e}")
    report["mckean_singer_deviations"] = devs
    hs = handshake_check(c)
    if not hs.holds:
        failures.append("Laplacian trace identity failed")
    if full:
        cur = curvature(g)
        report["curvature_total"] = cur.total
        if not cur.holds:
            failures.append(f"curvature total {cur.total} differs from chi {chi}")
    else:
        report["curvature_total"] = None
    return report, failures


def _emit(text: str):
    sys.stdout.write(text)


def _finish(failures) -> int:
    for f in failures:
        print(f"identity violation: {f}", file=sys.stderr)
    return EXIT_IDENTITY if failures else EXIT_OK


def cmd_gen(args) -> int:
    try:
        g = generate(args.name, args.n)
    except GraphError as exc:
        raise InputError(str(exc)) from None
    _emit(serialize_graph(g))
    return EXIT_OK


def _threads() -> int:
    raw = os.environ.get("DIRAC_GRAPH_THREADS", "")
    try:
        return max(1, int(raw)) if raw else min(4, os.cpu_count() or 1)
    except ValueError:
        raise InputError(f"DIRAC_GRAPH_THREADS must be an integer, got {raw!r}") from None


def _analyze_file(path, args):
    try:
        g, c = _load(path, args.max_dim)
    except InputError as exc:
        return {"error": str(exc)}, None
    report, failures = analyze(g, c, args.tolerance, full=args.max_dim is None)
    return report, failures


def cmd_analyze(args) -> int:
    path = Path(args.path)
    if path.is_dir():
        files = sorted(p for p in path.iterdir() if p.is_file())
        with ThreadPoolExecutor(max_workers=_threads()) as pool:
            results = list(pool.map(lambda p: _analyze_file(str(p), args), files))
        out, failures, bad_input = {}, [], False
        for p, (report, fails) in zip(files, results):
            out[p.name] = report
            if fails is None:
                bad_input = True
                print(report["error"], file=sys.stderr)
            else:
                failures += [f"{p.name}: {f}" for f in fails]
        _emit(export.dumps(out))
        code = _finish(failures)
        return code if code else (EXIT_INPUT if bad_input else EXIT_OK)
    g, c = _load(args.path, args.max_dim)
    report, failures = analyze(g, c, args.tolerance, full=args.max_dim is None)
    _emit(export.dumps(report))
    return _finish(failures)


def cmd_spectrum(args) -> int:
    g, c = _load(args.path, args.max_dim)
    spec = dirac_spectrum(c, check=False) if args.operator == "dirac" else laplacian_spectrum(c)
    if args.format == "csv":
        _emit(export.spectrum_csv(spec.eigenvalues, spec.grading))
    else:
        _emit(export.dumps({"operator": args.operator, **spec.to_dict()}))
    return EXIT_OK


def cmd_betti(args) -> int:
    g, c = _load(args.path, args.max_dim)
    exact, numeric = betti(c), numeric_betti(c)
    _emit(export.dumps({"betti": exact, "numeric_betti": numeric, "agree": exact == numeric}))
    return _finish([] if exact == numeric else ["exact and numerical Betti numbers differ"])


def cmd_verify(args) -> int:
    g, c = _load(args.path, args.max_dim)
    failures = []
    if args.identity == "mckean-singer":
        combos = DEFAULT_COMBOS if args.t is None else [(name, args.t) for name in ("heat", "schrodinger")]
        rows = []
        for r in mckean_singer_sweep(c, combos):
            ok = r.deviation <= args.tolerance * max(1, c.size) * max(1.0, r.scale)
            rows.append({"function": r.description, "t": r.t, "value": r.value,
                         "expected": r.expected, "deviation": r.deviation, "ok": ok})
            if not ok:
                failures.append(f"{r.description} t={r.t}")
        out = {"checks": rows}
    elif args.identity == "gauss-bonnet":
        cur = curvature(g)
        out = {"curvatures": list(cur.curvatures), "total": cur.total,
               "euler_characteristic": cur.euler_characteristic,
               "operator_form_agrees": cur.curvatures == cur.operator_curvatures}
        if not cur.holds:
            failures.append("sum of curvatures differs from chi")
    elif args.identity == "handshake":
        hs = handshake_check(c)
        out = {"rows": [{"p": r.p, "trace": r.trace, "literal": r.literal,
                         "literal_holds": r.literal_holds, "corrected": r.corrected,
                         "corrected_holds": r.corrected_holds} for r in hs.rows],
               "str_L_plus_1": hs.str_l_plus_one, "euler_characteristic": hs.euler_characteristic}
        if not hs.holds:
            failures.append("trace identity failed")
        for s in c.simplices():
            p_degree(c, s)
    elif args.identity == "parity":
        rows = []
        for k in range(1, args.steps + 1):
            even, odd = closed_path_parity(c, k, check=False)
            rows.append({"length": 2 * k, "even": even, "odd": odd})
            if even != odd:
                failures.append(f"length {2 * k}")
        out = {"closed_walks": rows}
    else:
        rng = np.random.default_rng(args.seed)
        rows = []
        for p in range(c.dimension + 1):
            gvec = rng.standard_normal(c.f_vector[p])
            h = hodge_decompose(c, p, gvec)
            parts = [h.exact, h.coexact, h.harmonic]
            ortho = max([abs(float(a @ b)) for i, a in enumerate(parts) for b in parts[i + 1:]] + [0.0])
            resid = float(np.linalg.norm(h.total() - gvec))
            rows.append({"p": p, "max_inner_product": ortho, "residual": resid})
            if max(ortho, resid) > args.tolerance * max(1.0, float(np.linalg.norm(gvec))):
                failures.append(f"Hodge decomposition in degree {p}")
        if not laplacian_kernel_agrees(c):
            failures.append("Laplacian kernel dimension differs from exact Betti number")
        out = {"degrees": rows}
    out["ok"] = not failures
    _emit(export.dumps(out))
    return _finish(failures)


def cmd_evolve(args) -> int:
    g, c = _load(args.path, args.max_dim)
    t_final = 1.0 if args.t is None else args.t
    if isinstance(t_final, complex):
        if t_final.imag:
            raise InputError("evolution time must be real")
        t_final = t_final.real
    try:
        trace = evolve_series(c, args.kind, t_final, args.steps, np.random.default_rng(args.seed))
    except HarmonicVelocityError as exc:
        raise InputError(str(exc)) from None
    if args.format == "csv":
        _emit(export.series_csv(trace.times, {"norm": trace.norms, "supertrace": trace.supertraces}))
    else:
        _emit(export.dumps({"kind": args.kind, "times": trace.times, "norms": trace.norms,
                            "supertraces": trace.supertraces,
                            "final_state": trace.states[-1] if trace.states else []}))
    return EXIT_OK


def cmd_compare(args) -> int:
    _, cg = _load(args.first, args.max_dim)
    _, ch = _load(args.second, args.max_dim)
    report = spectral_distance(cg, ch, check=False)
    _emit(export.dumps(report.to_dict()))
    return _finish([] if report.holds else ["spectral distance exceeds the Lidskii bound"])


def cmd_curvature(args) -> int:
    g, _ = _load(args.path)
    cur = curvature(g)
    if args.format == "json":
        _emit(export.dumps({"curvatures": list(cur.curvatures), "total": cur.total,
                            "euler_characteristic": cur.euler_characteristic}))
    else:
        lines = ["vertex,curvature,value"]
        lines += [f"{x},{k},{export.fmt_float(float(k))}" for x, k in enumerate(cur.curvatures)]
        _emit("\n".join(lines) + "\n")
    return _finish([] if cur.holds else ["sum of curvatures differs from chi"])


def cmd_nerve(args) -> int:
    g, _ = _load(args.path)
    try:
        cover = read_cover(args.cover, g.vertex_count)
    except OSError as exc:
        raise InputError(f"{args.cover}: {exc.strerror or exc}") from None
    except CoverError as exc:
        raise InputError(f"{args.cover}: {exc}") from None
    n = nerve(g, cover, args.order)
    verdict = cech_betti_check(g, cover, args.order)
    v = n.validation
    _emit(export.dumps({
        "nerve_edges": n.graph.sorted_edges(),
        "nerve_vertex_count": n.graph.vertex_count,
        "validation": {
            "valid": v.valid,
            "noncontractible_patches": v.noncontractible_patches,
            "noncontractible_intersections": v.noncontractible_intersections,
            "undecided": v.undecided,
            "uncovered_simplices": v.uncovered_simplices,
            "checked_order": v.checked_order,
        },
        "hollow_cliques": n.hollow_cliques,
        "cech": {"status": verdict.status, "graph_betti": verdict.graph_betti,
                 "nerve_betti": verdict.nerve_betti, "nerve_clique_betti": verdict.nerve_clique_betti},
    }))
    return _finish(["Cech and graph Betti numbers differ"] if verdict.status == "different" else [])


def cmd_contract(args) -> int:
    g, c = _load(args.path)
    reduced, removed = contract(g)
    before, after = betti(c), betti(build_complex(reduced))
    _emit(export.dumps({"removed": removed, "remaining": [reduced.label(x) for x in reduced.vertices],
                        "reduced_edges": reduced.sorted_edges(),
                        "betti_before": before, "betti_after": after}))
    return _finish([] if trim_betti(before) == trim_betti(after) else ["contraction changed the Betti numbers"])


def cmd_matrix(args) -> int:
    g, c = _load(args.path, args.max_dim)
    if args.kind == "dirac":
        m, off = dirac(c).matrix, c.offsets
    elif args.kind == "laplacian":
        m, off = laplacian(c).full(), c.offsets
    else:
        if not 0 <= args.p < max(c.dimension, 0) + 1:
            raise InputError(f"degree {args.p} outside 0..{c.dimension}")
        m, off = d_matrix(c, args.p), None
    _emit(export.matrix_coo(m, off) if args.coo else export.matrix_csv(m))
    return EXIT_OK


def _complex_arg(text: str) -> complex:
    try:
        return parse_complex_number(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_INPUT)


def _add_common(p: argparse.ArgumentParser):
    # added per subcommand: actions shared through ``parents`` would also share defaults
    p.add_argument("--max-dim", type=int, default=None, help="truncate the complex at this dimension")
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--t", type=_complex_arg, default=None, help="time parameter, e.g. 1+2i")
    p.add_argument("--steps", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="diracgraph", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="print a built-in graph as an edge list")
    p.add_argument("name", choices=GENERATOR_NAMES)
    p.add_argument("n", type=int, nargs="?")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("analyze", help="full report for a graph file or a directory")
    _add_common(p)
    p.add_argument("path")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("spectrum", help="Dirac or Laplacian spectrum")
    _add_common(p)
    p.add_argument("path")
    p.add_argument("--operator", choices=("dirac", "laplacian"), default="dirac")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("betti", help="Betti numbers")
    _add_common(p)
    p.add_argument("path")
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("verify", help="check one identity")
    _add_common(p)
    p.add_argument("identity", choices=("mckean-singer", "gauss-bonnet", "handshake", "parity", "hodge"))
    p.add_argument("path")
    p.set_defaults(func=cmd_verify, steps=3)

    p = sub.add_parser("evolve", help="time series of an evolution")
    _add_common(p)
    p.add_argument("kind", choices=("heat", "wave", "schrodinger", "map"))
    p.add_argument("path")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("compare", help="simplex and spectral distance of two graphs")
    _add_common(p)
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("curvature", help="per-vertex curvature")
    _add_common(p)
    p.add_argument("path")
    p.set_defaults(func=cmd_curvature, format="csv")

    p = sub.add_parser("nerve", help="nerve of a cover file")
    _add_common(p)
    p.add_argument("path")
    p.add_argument("cover")
    p.add_argument("--order", type=int, default=2, help="largest intersection order to validate")
    p.set_defaults(func=cmd_nerve)

    p = sub.add_parser("contract", help="greedy contraction")
    _add_common(p)
    p.add_argument("path")
    p.set_defaults(func=cmd_contract)

    p = sub.add_parser("matrix", help="print D, the Laplacian or d_p")
    _add_common(p)
    p.add_argument("kind", choices=("dirac", "laplacian", "d"))
    p.add_argument("path")
    p.add_argument("--p", type=int, default=0)
    p.add_argument("--coo", action="store_true", help="sparse triples with a JSON header")
    p.set_defaults(func=cmd_matrix)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # --help or a usage error
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except IdentityViolation as exc:
        print(f"identity violation: {exc}", file=sys.stderr)
        return EXIT_IDENTITY


if __name__ == "__main__":
    sys.exit(main())
