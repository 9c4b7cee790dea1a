"""Command-line front end.

Exit codes: 0 success (or a positive verdict), 1 negative verdict, 2 usage
or input error, 3 a resource guard tripped.  Every verb except ``gen``
prints a JSON report ``{version, command, seed, results}``.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

import numpy as np

from . import __version__
from .errors import GraphFormatError, RecursionGuardError, ResourceLimitError
from .io import emit_graph6, emit_json_graph, graph_to_obj, parse_graph6, parse_json_graph

REPORT_VERSION = 1
EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3

log = logging.getLogger("isokit")


class UsageError(Exception):
    pass


# -- input helpers -----------------------------------------------------------

def _load_graphs(path, fmt):
    if path == "-":
        data = sys.stdin.buffer.read()
        fmt = fmt or ("json" if data.lstrip().startswith(b"{") else "graph6")
    else:
        try:
            with open(path, "rb") as fh:
                data = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
        if fmt is None:
            fmt = "json" if path.endswith(".json") else "graph6"
    try:
        if fmt == "json":
            return [parse_json_graph(data)]
        graphs = [parse_graph6(line) for line in data.splitlines() if line.strip()]
    except (GraphFormatError, ValueError) as exc:
        raise UsageError(f"{path}: {exc}") from None
    if not graphs:
        raise UsageError(f"{path}: no graph found")
    return graphs


def _load_graph(path, fmt):
    return _load_graphs(path, fmt)[0]


def _load_json(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _vertex_list(text):
    if not text:
        return []
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated vertex ids, got {text!r}") from None


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


# -- verbs -------------------------------------------------------------------

def cmd_refine(args):
    from .refinement import color_refine

    results = []
    for g in _load_graphs(args.graph, args.format):
        trace = color_refine(g)
        entry = {
            "n": g.n,
            "m": g.m,
            "stabilized_at": trace.stabilized_at,
            "num_classes": trace.stable.num_colors,
            "classes": trace.stable.partition(),
        }
        if args.trace:
            entry["rounds"] = [r.partition() for r in trace.rounds]
        results.append(entry)
    return EXIT_OK, results


def cmd_wl(args):
    from .refinement import wl_k

    g = _load_graph(args.graph, args.format)
    trace = wl_k(g, args.k)
    sizes = sorted(trace.stable.class_sizes().tolist())
    return EXIT_OK, [{"k": args.k, "n": g.n, "stabilized_at": trace.stabilized_at,
                      "num_classes": trace.stable.num_colors, "class_sizes": sizes}]


def cmd_distinguish(args):
    from .refinement import distinguishes

    g = _load_graph(args.g, args.format)
    h = _load_graph(args.h, args.format)
    d = distinguishes(g, h, args.k)
    word = "distinguished" if d.distinguished else "indistinguishable"
    print(f"{word} at k={args.k}", file=sys.stderr)
    res = {"k": args.k, "distinguished": d.distinguished, "message": f"{word} at k={args.k}"}
    if d.distinguished:
        res["witness_color"] = d.witness
    return (EXIT_OK if d.distinguished else EXIT_NEGATIVE), [res]


def cmd_iso(args):
    from .search import iso

    res = iso(_load_graph(args.g, args.format), _load_graph(args.h, args.format))
    return (EXIT_OK if res.isomorphic else EXIT_NEGATIVE), [res.to_obj()]


def cmd_aut(args):
    from .search import aut

    g = _load_graph(args.graph, args.format)
    res = aut(g)
    obj = res.to_obj()
    obj.pop("witness", None)
    obj.pop("verdict", None)
    obj["orbits"] = res.group.orbits()
    return EXIT_OK, [obj]


def _group_from_obj(obj):
    from .perm import Perm, PermGroup

    try:
        degree = int(obj["degree"])
        gens = [Perm.checked(g, degree) for g in obj.get("generators", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"invalid group description: {exc}") from None
    return PermGroup(degree, gens)


def cmd_group(args):
    from .composition import in_gamma_d

    group = _group_from_obj(_load_json(args.file))
    res = {
        "degree": group.degree,
        "order": str(group.order()),
        "orbits": group.orbits(),
        "transitive": group.is_transitive(),
    }
    if group.is_transitive() and group.degree >= 2:
        system = group.minimal_block_system()
        res["primitive"] = system.block_size == 1
        res["minimal_block_system"] = [list(b) for b in system.blocks]
    else:
        res["primitive"] = False if group.degree >= 2 else True
        res["minimal_block_system"] = None
    if args.gamma_d is not None:
        res["in_gamma_d"] = in_gamma_d(group, args.gamma_d)
    return EXIT_OK, [res]


def cmd_si(args):
    from .strings import SIInstance, luks_string_iso

    try:
        inst = SIInstance.from_obj(_load_json(args.file))
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"invalid string isomorphism instance: {exc}") from None
    coset = luks_string_iso(inst)
    if coset.is_empty:
        print("EMPTY", file=sys.stderr)
        return EXIT_NEGATIVE, [{"empty": True}]
    return EXIT_OK, [{
        "empty": False,
        "order": str(coset.order()),
        "generators": [list(g) for g in coset.group.generators],
        "representative": list(coset.rep),
    }]


def cmd_closure(args):
    from .tcr import tcr_stable

    g = _load_graph(args.graph, args.format)
    bad = [v for v in args.individualize if not 0 <= v < g.n]
    if bad:
        raise UsageError(f"vertex {bad[0]} outside the graph (n={g.n})")
    trace = tcr_stable(g, args.t, args.individualize)
    cl = trace.singletons()
    return EXIT_OK, [{
        "t": args.t,
        "individualized": args.individualize,
        "closure": cl,
        "full": len(cl) == g.n,
        "rounds": len(trace.rounds),
    }]


def cmd_improve(args):
    from .flow import k_improvement

    g = _load_graph(args.graph, args.format)
    h = k_improvement(g, args.k)
    added = sorted(set(h.edges()) - set(g.edges()))
    return EXIT_OK, [{"k": args.k, "added": [list(e) for e in added], "graph": graph_to_obj(h)}]


_GEN_ARITY = {
    "path": 1, "cycle": 1, "complete": 1, "prism": 1, "johnson": 2, "complete-bipartite": 2,
    "shrikhande": 0, "rook44": 0, "petersen": 0, "dodecahedron": 0, "icosahedron": 0,
    "random-regular": 2, "random-bounded": 2, "random-gnm": 2, "random-tree": 1,
}


def _generate(kind, params, seed):
    from . import generators as gen

    if kind.startswith("random") and seed is None:
        raise UsageError(f"'{kind}' is randomized; pass --seed")
    table = {
        "path": gen.gen_path, "cycle": gen.gen_cycle, "complete": gen.gen_complete,
        "prism": gen.gen_prism, "johnson": gen.gen_johnson,
        "complete-bipartite": gen.gen_complete_bipartite, "shrikhande": gen.gen_shrikhande,
        "rook44": gen.gen_rook44, "petersen": gen.gen_petersen,
        "dodecahedron": gen.gen_dodecahedron, "icosahedron": gen.gen_icosahedron,
        "random-regular": lambda n, d: gen.random_regular(n, d, seed),
        "random-bounded": lambda n, d: gen.random_connected_bounded_degree(n, d, seed),
        "random-gnm": lambda n, m: gen.random_gnm(n, m, seed),
        "random-tree": lambda n: gen.random_tree(n, seed),
    }
    try:
        return table[kind](*params)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_gen(args):
    want = _GEN_ARITY[args.kind]
    if len(args.params) != want:
        raise UsageError(f"'{args.kind}' takes {want} integer parameter(s), got {len(args.params)}")
    g = _generate(args.kind, args.params, args.seed)
    text = emit_json_graph(g) if args.format == "json" else emit_graph6(g)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        args._out.write(text + "\n")
    return EXIT_OK, None


def cmd_bench(args):
    from .bench import SUITES, run_suite

    suites = [s for s in (args.suite or "").split(",") if s]
    if not suites:
        raise UsageError("no benchmark suite given (choose from " + ", ".join(SUITES) + ")")
    unknown = [s for s in suites if s not in SUITES]
    if unknown:
        raise UsageError(f"unknown suite {unknown[0]!r} (choose from {', '.join(SUITES)})")
    if args.seed is None:
        raise UsageError("benchmarks generate random instances; pass --seed")
    seed = args.seed
    results = []
    ok = True
    for s in suites:
        opts = {}
        if args.runs is not None:
            opts["runs"] = args.runs
        if s in ("cr-scaling", "backends") and args.exponents:
            opts["exponents"] = tuple(int(e) for e in args.exponents.split(","))
        rep = run_suite(s, seed=seed, **opts)
        ok = ok and rep.get("all_correct", True)
        results.append(rep)
    return (EXIT_OK if ok else EXIT_NEGATIVE), results


# -- parser ------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="isokit", description="Graph isomorphism toolkit.")
    p.add_argument("--version", action="version", version=f"isokit {__version__}")
    p.add_argument("--config", help="key=value file with option defaults")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(func=func)
        sp.add_argument("--format", choices=["graph6", "json"], default=None,
                        help="input format (default: from the file extension)")
        sp.add_argument("--seed", type=int, default=None)
        return sp

    sp = add("refine", cmd_refine, "Color Refinement")
    sp.add_argument("graph")
    sp.add_argument("--trace", action="store_true", help="include every round")

    sp = add("wl", cmd_wl, "k-dimensional Weisfeiler-Leman")
    sp.add_argument("graph")
    sp.add_argument("--k", type=_positive, default=2)

    sp = add("distinguish", cmd_distinguish, "test k-WL distinguishability")
    sp.add_argument("g")
    sp.add_argument("h")
    sp.add_argument("--k", type=_positive, default=1)

    sp = add("iso", cmd_iso, "isomorphism test")
    sp.add_argument("g")
    sp.add_argument("h")

    sp = add("aut", cmd_aut, "automorphism group")
    sp.add_argument("graph")

    sp = add("group", cmd_group, "permutation group information")
    sp.add_argument("action", choices=["info"])
    sp.add_argument("file", help="JSON {degree, generators}")
    sp.add_argument("--gamma-d", type=_positive, default=None, help="also test membership in Γ_d")

    sp = add("si", cmd_si, "string isomorphism")
    sp.add_argument("action", choices=["solve"])
    sp.add_argument("file", help="JSON instance {domain, alphabet, x, y, generators, shift, window}")

    sp = add("closure", cmd_closure, "t-closure of a vertex set")
    sp.add_argument("graph")
    sp.add_argument("--t", type=_positive, required=True)
    sp.add_argument("--individualize", type=_vertex_list, default=[])

    sp = add("improve", cmd_improve, "k-improvement")
    sp.add_argument("graph")
    sp.add_argument("--k", type=_positive, required=True)

    sp = add("gen", cmd_gen, "generate a graph")
    sp.add_argument("kind", choices=sorted(_GEN_ARITY))
    sp.add_argument("params", type=int, nargs="*")
    sp.add_argument("-o", "--output")

    sp = add("bench", cmd_bench, "run benchmark suites")
    sp.add_argument("--suite", default=None, help="comma-separated: cr-scaling, luks-scaling, iso-corpus, backends")
    sp.add_argument("--runs", type=_positive, default=None)
    sp.add_argument("--exponents", default=None, help="comma-separated size exponents for scaling suites")
    return p


def _read_config(path):
    cfg = {}
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror}") from None
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        cfg[key.replace("-", "_")] = value.strip('"')
    return cfg


def _apply_config(parser, argv, cfg):
    # defaults go onto the chosen subparser so explicit flags still win
    pre, _ = parser.parse_known_args(argv)
    if pre.command is None:
        return
    subparsers = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    sp = subparsers.choices[pre.command]
    known = {a.dest for a in sp._actions}
    unknown = sorted(set(cfg) - known)
    if unknown:
        raise UsageError(f"unknown config key {unknown[0]!r} for '{pre.command}'")
    for action in sp._actions:
        if action.dest in cfg and isinstance(action, argparse._StoreTrueAction):
            value = cfg[action.dest].lower()
            if value not in ("true", "false", "1", "0", "yes", "no"):
                raise UsageError(f"config key {action.dest!r} expects true or false")
            cfg[action.dest] = value in ("true", "1", "yes")
    sp.set_defaults(**cfg)


def run(argv=None, out=None):
    """Parse ``argv``, run the verb, print the report; returns the exit code."""
    out = out or sys.stdout
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        pre, _ = parser.parse_known_args(argv)
        if pre.config:
            _apply_config(parser, argv, _read_config(pre.config))
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"isokit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # argparse usage errors and --help
        return int(exc.code or 0)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    args._out = out
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        code, results = args.func(args)
    except UsageError as exc:
        print(f"isokit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ResourceLimitError, RecursionGuardError) as exc:
        print(f"isokit: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    if results is not None:
        report = {"version": REPORT_VERSION, "command": args.command, "seed": args.seed, "results": results}
        out.write(json.dumps(report, default=_json_default) + "\n")
    return code


def _json_default(obj):
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"{type(obj).__name__} is not JSON serializable")


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
