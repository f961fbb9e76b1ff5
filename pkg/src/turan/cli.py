"""``turan`` command-line front end.

Graph arguments accept a JSON document path, a catalog name (``K3_bb``) or
shorthand (``"2;3;124;135;145"``).  Exit codes: 0 success, 1 negative answer
or failed claim, 2 unsupported input, 3 budget or size exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .constructions import (
    CATALOG,
    BlowupSpec,
    blow_up,
    catalog,
    chain,
    partial_suspension_T,
    product,
    suspension,
)
from .core import RGraph, parse, parse_shorthand, serialize, shorthand
from .errors import BudgetExceeded, TooLarge, TuranError, UnknownName
from .extremal import (
    classify_pi_13,
    exact_pi_n,
    heuristic_pi_n,
    is_degenerate_13,
    nontrivial_degenerate_witness,
)
from .homomorphism import FLAVORS, EDGE_INJECTIVE, contains_subgraph, find_homomorphism, isomorphism
from .lagrangian import DEFAULT_TOL, lagrangian
from .report import reproduce, trend_csv

EXIT_OK, EXIT_NO, EXIT_UNSUPPORTED, EXIT_BUDGET = 0, 1, 2, 3


def load_graph(arg: str) -> RGraph:
    if os.path.exists(arg):
        with open(arg, encoding="utf-8") as fh:
            return parse(fh.read())
    if arg in CATALOG:
        return CATALOG[arg].graph
    if arg and arg[0].isdigit():
        return parse_shorthand(arg)
    raise UnknownName(f"{arg!r} is neither a file, a catalog name nor shorthand")


def _ints(text):
    return tuple(int(t) for t in text.split(",") if t.strip())


def _emit(G: RGraph):
    print(serialize(G))


def _map_line(m):
    return "NONE" if m is None else str(m)


# -- subcommands -------------------------------------------------------------

def cmd_product(a):
    _emit(product(load_graph(a.A), load_graph(a.B)))


def cmd_blowup(a):
    _emit(blow_up(load_graph(a.G), BlowupSpec(_ints(a.sizes))))


def cmd_suspend(a):
    _emit(suspension(load_graph(a.G), a.t))


def cmd_tsuspend(a):
    _emit(partial_suspension_T(load_graph(a.G)))


def cmd_chain(a):
    _emit(chain(_ints(a.types)))


def cmd_catalog(a):
    if a.name:
        e = catalog(a.name)
        doc = {"name": e.name, "graph": json.loads(serialize(e.graph)),
               "known_density": None if e.known_density is None else str(e.known_density),
               "tag": e.density_tag, "notes": e.notes}
        print(json.dumps(doc, indent=2))
        return
    for e in CATALOG.values():
        dens = "" if e.known_density is None else str(e.known_density)
        print(f"{e.name:8} {shorthand(e.graph) if not e.is_pattern else serialize(e.graph):42} {dens}")


def cmd_hom(a):
    m = find_homomorphism(load_graph(a.G), load_graph(a.H), a.flavor)
    print(_map_line(m))
    return EXIT_OK if m is not None else EXIT_NO


def cmd_contains(a):
    m = contains_subgraph(load_graph(a.G), load_graph(a.H))
    print(_map_line(m))
    return EXIT_OK if m is not None else EXIT_NO


def cmd_iso(a):
    m = isomorphism(load_graph(a.G), load_graph(a.H))
    print(_map_line(m))
    return EXIT_OK if m is not None else EXIT_NO


def cmd_lagrangian(a):
    r = lagrangian(load_graph(a.P), tol=a.tol, oracle_res=a.oracle_res)
    if a.json:
        print(json.dumps({"value": r.value, "maximizer": list(r.maximizer.weights),
                          "support": list(r.support), "kkt_residual": r.kkt_residual,
                          "oracle_value": str(r.oracle_value), "oracle_resolution": r.oracle_resolution}))
        return
    print(f"value     {r.value:.20g}")
    print("maximizer " + " ".join(f"{w:.12g}" for w in r.maximizer.weights))
    print("support   " + ",".join(map(str, r.support)))
    print(f"kkt       {r.kkt_residual:.3e}")
    print(f"oracle    {r.oracle_value} (resolution {r.oracle_resolution})")


def cmd_pi_n(a):
    family = [load_graph(x) for x in a.forbid.split(",")]
    if a.heuristic:
        res = heuristic_pi_n(family, a.n, budget=int(float(a.budget)))
    else:
        res = exact_pi_n(family, a.n)
    print(json.dumps({"n": res.n, "pi_n": str(res.value), "decimal": float(res.value),
                      "exact": res.exact, "method": res.method,
                      "configurations": res.configurations_explored,
                      "witness": json.loads(serialize(res.witness))}))


def cmd_classify(a):
    print(json.dumps(classify_pi_13(load_graph(a.H)).to_json(), indent=2))


def cmd_degenerate13(a):
    d = is_degenerate_13(load_graph(a.H))
    print("yes" if d else "no")
    if d.witness is not None:
        print(d.witness)


def cmd_witness(a):
    _emit(nontrivial_degenerate_witness(_ints(a.types)))


def cmd_reproduce(a):
    selection = None if a.only is None else [s for s in a.only.split(",") if s]
    rep = reproduce(selection)
    print(json.dumps(rep.to_json(), indent=2) if a.json else rep.table())
    return rep.exit_code


def cmd_trend(a):
    families = [[load_graph(x) for x in spec.split(",")] for spec in (a.forbid or [])]
    text = trend_csv(families, range(a.n_min, a.n_max + 1))
    if a.csv:
        with open(a.csv, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser():
    p = argparse.ArgumentParser(prog="turan", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, *graphs, **kw):
        sp = sub.add_parser(name, **kw)
        for g in graphs:
            sp.add_argument(g)
        sp.set_defaults(fn=fn)
        return sp

    add("product", cmd_product, "A", "B")
    add("blowup", cmd_blowup, "G").add_argument("--sizes", required=True)
    add("suspend", cmd_suspend, "G").add_argument("-t", type=int, default=1)
    add("tsuspend", cmd_tsuspend, "G")
    add("chain", cmd_chain).add_argument("--types", required=True)
    add("catalog", cmd_catalog).add_argument("name", nargs="?")
    add("hom", cmd_hom, "G", "H").add_argument("--flavor", choices=FLAVORS[:3], default=EDGE_INJECTIVE)
    add("contains", cmd_contains, "G", "H")
    add("iso", cmd_iso, "G", "H")
    sp = add("lagrangian", cmd_lagrangian, "P")
    sp.add_argument("--tol", type=float, default=DEFAULT_TOL)
    sp.add_argument("--oracle-res", type=int, default=None)
    sp.add_argument("--json", action="store_true")
    sp = add("pi-n", cmd_pi_n)
    sp.add_argument("--forbid", required=True)
    sp.add_argument("-n", type=int, required=True)
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--heuristic", action="store_true")
    sp.add_argument("--budget", default="200")
    add("classify", cmd_classify, "H")
    add("degenerate13", cmd_degenerate13, "H")
    add("witness", cmd_witness).add_argument("--types", required=True)
    sp = add("reproduce", cmd_reproduce)
    sp.add_argument("--only", default=None)
    sp.add_argument("--json", action="store_true")
    sp = add("trend", cmd_trend)
    sp.add_argument("--forbid", action="append", help="comma-separated family; repeatable")
    sp.add_argument("--n-min", type=int, default=4)
    sp.add_argument("--n-max", type=int, default=6)
    sp.add_argument("--csv", default=None)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args) or EXIT_OK
    except (TooLarge, BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (TuranError, OSError) as exc:
        print(f"error: {exc.args[0] if exc.args else exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED


if __name__ == "__main__":
    sys.exit(main())
