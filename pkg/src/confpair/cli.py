"""Command-line surface.

Subcommands: pair, normalize, compose, cooperad, gram, ranks, enumerate,
verify, geom-check.  Global flags live on every subcommand: --d (integer
dimension, >= 2; signs only use its parity but rank tables use the true
degrees k(d-1)), --format text|json, --cache-dir, --seed.

Exit codes: 0 success, 1 parse error, 2 validation error, 3 a structural
verification failed.  Output is byte-deterministic for fixed (argv, seed);
caches only change timing.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import ParseError, ValidationError, VerificationFailure
from .geometry import limit_check
from .graphs import (enumerate_long_graphs, graph_to_json, parse_graph,
                     render_graph)
from .lincombo import LinCombo
from .normalize import normalize_pois, normalize_siop
from .operad import check_duality, compose, cooperad, sample_duality
from .otrees import parse_otree
from .pairing import describe_pair, gram_matrix, rank_table, verify_perfect
from .trees import enumerate_tall_forests, forest_to_json, parse_forest, render_forest


def _parse_combo(text, parse_element):
    terms = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if "*" in line:
            coeff_text, element_text = line.split("*", 1)
            coeff = int(coeff_text.strip())
        else:
            coeff, element_text = 1, line
        terms.append((parse_element(element_text.strip()), coeff))
    return LinCombo(terms)


def _combo_lines(combo, render_element):
    rendered = sorted((render_element(e), c) for e, c in combo)
    return [f"{c} * {text}" for text, c in rendered]


def _combo_json(combo, n, element_json):
    rendered = sorted(((element_json(e), c) for e, c in combo),
                      key=lambda item: json.dumps(item[0], sort_keys=True))
    return {"n": n, "terms": [{"coeff": c, "element": e} for e, c in rendered]}


def _emit(args, text_lines, payload):
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def cmd_pair(args):
    g = parse_graph(args.graph)
    f = parse_forest(args.forest, n=g.n)
    info = describe_pair(g, f, args.d)
    _emit(args, [str(info["value"])], info)
    return 0


def cmd_normalize(args):
    text = args.input if args.input is not None else sys.stdin.read()
    if args.kind == "pois":
        combo = _parse_combo(text, lambda s: parse_forest(s, n=args.n))
        out = normalize_pois(combo, args.d)
        n = args.n or (next(iter(out))[0].n if out else 0)
        _emit(args, _combo_lines(out, render_forest),
              _combo_json(out, n, lambda f: forest_to_json(f)))
    else:
        combo = _parse_combo(text, parse_graph)
        out = normalize_siop(combo, args.d)
        n = next(iter(out))[0].n if out else (args.n or 0)
        _emit(args, _combo_lines(out, render_graph),
              _combo_json(out, n, lambda g: graph_to_json(g)))
    return 0


def cmd_compose(args):
    outer = parse_forest(args.outer)
    inner = parse_forest(args.inner)
    out = compose(outer, args.index, inner, args.d)
    n = outer.n + inner.n - 1
    _emit(args, _combo_lines(out, render_forest),
          _combo_json(out, n, lambda f: forest_to_json(f)))
    return 0


def cmd_cooperad(args):
    g = parse_graph(args.graph)
    tau = parse_otree(args.otree)
    res = cooperad(g, tau, args.d)
    lines = [f"sign {res.sign}"] + [
        f"vertex {list(v)}: {render_graph(factor)}"
        for v, factor in zip(res.vertices, res.factors)
    ]
    _emit(args, lines, res.to_json())
    return 0


def cmd_gram(args):
    gm = gram_matrix(args.n, args.k, args.d, cache_dir=args.cache_dir)
    lines = [" ".join(f"{v:2d}" for v in row) for row in gm.entries]
    payload = {"n": gm.n, "k": gm.k, "parity": gm.parity,
               "identity": gm.is_identity(),
               "entries": [list(r) for r in gm.entries]}
    _emit(args, lines + [f"identity: {gm.is_identity()}"], payload)
    if not gm.is_identity():
        raise VerificationFailure(f"Gram matrix n={args.n} k={args.k} is not the identity")
    return 0


def cmd_ranks(args):
    table = rank_table(args.n, args.d, cache_dir=args.cache_dir)
    rows = table.csv_rows()
    lines = ["degree,rank"] + [f"{deg},{q}" for deg, q in rows]
    payload = {"n": table.n, "d": table.d,
               "ranks": [{"degree": deg, "rank": q} for deg, q in rows]}
    _emit(args, lines, payload)
    return 0


def cmd_enumerate(args):
    if args.kind == "tall-forests":
        items = [render_forest(f) for f in enumerate_tall_forests(args.n, args.k)]
    else:
        items = [render_graph(g) for g in enumerate_long_graphs(args.n, args.k)]
    _emit(args, items, {"n": args.n, "k": args.k, "kind": args.kind,
                        "count": len(items), "elements": items})
    return 0


def cmd_verify(args):
    report = verify_perfect(args.n, args.d, cache_dir=args.cache_dir)
    lines = [
        f"k={r.k}: size {r.size} identity {r.identity}" for r in report.degrees
    ] + [f"first degree: size {report.first_degree_size} "
         f"identity {report.first_degree_identity}",
         f"ok: {report.ok}"]
    _emit(args, lines, report.to_json())
    if not report.ok:
        raise VerificationFailure(f"perfect-pairing verification failed for n={args.n}")
    return 0


def cmd_duality(args):
    tau = parse_otree(args.otree)
    if tau.n_leaves <= 5:
        report = check_duality(tau, args.d)
    else:  # too large to exhaust: seeded random spot-check
        report = sample_duality(tau, args.d, trials=args.trials, seed=args.seed)
    lines = [f"cases {report.cases_checked} failures {len(report.failures)}"]
    _emit(args, lines, report.to_json())
    if not report.ok:
        raise VerificationFailure("operad/cooperad duality failed")
    return 0


def cmd_geom_check(args):
    f = parse_forest(args.forest)
    g = parse_graph(args.graph) if args.graph.strip().startswith("n=") else None
    if g is None:
        from .graphs import parse_edges
        g = parse_edges(args.graph, f.n)
    eps_list = [float(e) for e in args.eps.split(",")]
    report = limit_check(f, g, args.d, eps_list, seed=args.seed,
                         samples=args.samples)
    lines = [
        f"eps {r['eps']}: max deviation {r['max_deviation']:.3e}"
        for r in report["results"]
    ]
    _emit(args, lines, report)
    return 0


def _add_common(p):
    p.add_argument("--d", type=int, default=3, help="ambient dimension, >= 2")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--cache-dir", default=None)
    p.add_argument("--seed", type=int, default=0)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="confpair",
        description="Exact tree/graph calculus for configuration spaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pair", help="configuration pairing of a graph and a forest")
    p.add_argument("--graph", required=True)
    p.add_argument("--forest", required=True)
    _add_common(p)
    p.set_defaults(fn=cmd_pair)

    p = sub.add_parser("normalize", help="rewrite onto the tall/long basis")
    p.add_argument("--kind", choices=("pois", "siop"), required=True)
    p.add_argument("--input", default=None,
                   help="lines 'coeff * element'; reads stdin when omitted")
    p.add_argument("--n", type=int, default=None)
    _add_common(p)
    p.set_defaults(fn=cmd_normalize)

    p = sub.add_parser("compose", help="operadic composition of forests")
    p.add_argument("--outer", required=True)
    p.add_argument("--index", type=int, required=True)
    p.add_argument("--inner", required=True)
    _add_common(p)
    p.set_defaults(fn=cmd_compose)

    p = sub.add_parser("cooperad", help="graph-side structure map along an o-tree")
    p.add_argument("--graph", required=True)
    p.add_argument("--otree", required=True)
    _add_common(p)
    p.set_defaults(fn=cmd_cooperad)

    p = sub.add_parser("gram", help="pairing matrix of long graphs vs tall forests")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    _add_common(p)
    p.set_defaults(fn=cmd_gram)

    p = sub.add_parser("ranks", help="Betti numbers (CSV degree,rank)")
    p.add_argument("--n", type=int, required=True)
    _add_common(p)
    p.set_defaults(fn=cmd_ranks)

    p = sub.add_parser("enumerate", help="canonical basis elements")
    p.add_argument("--kind", choices=("tall-forests", "long-graphs"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    _add_common(p)
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("verify", help="perfect-pairing verification for one n")
    p.add_argument("--n", type=int, required=True)
    _add_common(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("duality", help="operad/cooperad duality for a two-level o-tree")
    p.add_argument("--otree", required=True)
    p.add_argument("--trials", type=int, default=200,
                   help="sample size when the tree has more than 5 leaves")
    _add_common(p)
    p.set_defaults(fn=cmd_duality)

    p = sub.add_parser("geom-check", help="eps -> 0 limit deviations")
    p.add_argument("--forest", required=True)
    p.add_argument("--graph", required=True)
    p.add_argument("--eps", default="0.1,0.01,0.001")
    p.add_argument("--samples", type=int, default=8)
    _add_common(p)
    p.set_defaults(fn=cmd_geom_check)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 1
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 2
    except VerificationFailure as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
