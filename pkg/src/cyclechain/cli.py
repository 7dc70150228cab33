"""Command-line entry point.

Exit codes: 0 success, 1 a verification failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import chain_model as cm
from . import finite_graph_oracle as fgo
from . import rank_engine as re_
from . import tableau_engine as te
from . import theorem_suite as ts


class InputError(Exception):
    pass


def _load(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InputError(f"no such file: {path}")
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})")


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def _positions(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(s) for s in text.split(",") if s.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"positions must be comma-separated integers, got {text!r}")


def _add_family(p: argparse.ArgumentParser, files: tuple[str, ...] = ("profile",)) -> None:
    g = p.add_argument_group("Martens-special family")
    g.add_argument("--genus", type=int)
    g.add_argument("--type", type=int, dest="k", help="number of special positions (checked against --positions)")
    g.add_argument("--positions", type=_positions, help="j_1,j_2,... (comma separated)")
    if "profile" in files:
        p.add_argument("--profile", help="torsion profile JSON file")
    if "chain" in files:
        p.add_argument("--chain", help="discrete chain JSON file")
    if "graph" in files:
        p.add_argument("--graph", help="finite graph JSON file")


def _spec(args) -> cm.MartensSpec:
    if args.genus is None or args.positions is None:
        raise InputError("give --genus and --positions (and optionally --type)")
    if args.k is not None and args.k != len(args.positions):
        raise InputError(f"--type {args.k} disagrees with {len(args.positions)} --positions")
    return cm.MartensSpec(args.genus, args.positions)


def _has_family(args) -> bool:
    return any(getattr(args, a, None) is not None for a in ("genus", "positions", "k"))


def _one_source(args, names: tuple[str, ...]) -> str:
    given = [n for n in names if getattr(args, n, None) is not None]
    if _has_family(args):
        given.append("family")
    if len(given) != 1:
        raise InputError(f"give exactly one input source out of --{', --'.join(names)} or the family flags")
    return given[0]


def _profile(args, default_kind: str = "metric") -> cm.TorsionProfile:
    src = _one_source(args, tuple(n for n in ("profile", "chain") if hasattr(args, n)))
    if src == "profile":
        return cm.TorsionProfile.from_json(_load(args.profile))
    if src == "chain":
        return cm.torsion_of_discrete(cm.DiscreteChain.from_json(_load(args.chain)))
    return cm.martens_special_profile(_spec(args), getattr(args, "kind", None) or default_kind)


def _table(header: list[str], rows: list[list]) -> str:
    cells = [header] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells)


def _tableau_text(t: te.DisplacementTableau) -> str:
    if t.shape.is_empty:
        return f"(empty {t.shape.cols}x{t.shape.rows} tableau)"
    return "\n".join(" ".join(f"{v:>2}" for v in row) for row in t.rows)


# -- subcommands ---------------------------------------------------------------

def cmd_profile(args) -> int:
    p = _profile(args)
    if args.json:
        _emit(p.to_json())
    else:
        print(f"genus {p.genus}  torsions m_2..m_g = {' '.join(map(str, p.torsions))}")
    return 0


def cmd_realize(args) -> int:
    chain = cm.realize_discrete_chain(_profile(args, default_kind="discrete"))
    if args.json:
        _emit(chain.to_json())
    else:
        print(_table(["cycle", "size", "attach"],
                     [[i, c.size, c.attach] for i, c in enumerate(chain.cycles, start=1)]))
    return 0


def cmd_tableaux(args) -> int:
    p = _profile(args)
    if args.deletions is not None:
        items = list(te.two_row_by_deletion(p, args.deletions))
    else:
        if args.cols is None or args.rows is None:
            raise InputError("give --cols and --rows (or --deletions L for two-row shapes)")
        items = list(te.enumerate_tableaux(p, te.GridShape(args.cols, args.rows)))
    if args.json:
        out = {"count": len(items)}
        if args.list:
            out["tableaux"] = [t.to_json() for t in items]
        _emit(out)
    else:
        print(f"count {len(items)}")
        if args.list:
            for t in items:
                print(_tableau_text(t))
                print()
    return 0


def cmd_rank(args) -> int:
    if args.divisor is None:
        raise InputError("give --divisor")
    src = _one_source(args, ("profile", "chain"))
    data = _load(args.divisor)
    if src == "chain":
        chain = cm.DiscreteChain.from_json(_load(args.chain))
        res = re_.rank_discrete(chain, cm.divisor_from_json(chain, data))
    elif src == "profile":
        p = cm.TorsionProfile.from_json(_load(args.profile))
        res = re_.rank_metric(p, cm.RepresentingDivisor.from_json(data))
    else:
        p = cm.martens_special_profile(_spec(args), args.kind or "metric")
        res = re_.rank_metric(p, cm.RepresentingDivisor.from_json(data))
    if args.json:
        _emit(res.to_json())
    else:
        print(f"rank {res.rank}")
        if res.witness is not None:
            print(_tableau_text(res.witness))
    return 0


def cmd_gonseq(args) -> int:
    p = _profile(args)
    rmax = args.rmax if args.rmax is not None else p.genus + 2
    rep = re_.gonality_sequence(p, rmax)
    rows = [[r, rep.sequence[r]] for r in sorted(rep.sequence)]
    if args.csv:
        print("r,g_r")
        for r, v in rows:
            print(f"{r},{v}")
    elif args.json:
        _emit(rep.to_json())
    else:
        print(f"genus {rep.genus}  gonality {rep.gonality}  clifford {rep.clifford}")
        print(_table(["r", "g_r"], rows))
    return 0


def cmd_cliff(args) -> int:
    p = _profile(args)
    c = re_.clifford_index(p)
    if args.json:
        _emit({"genus": p.genus, "clifford": c})
    else:
        print(f"clifford {c}")
    return 0


def cmd_divcomplete(args) -> int:
    rep = re_.divisorial_complete_report(_profile(args))
    if args.json:
        _emit(rep.to_json())
    else:
        print(f"genus {rep.genus}  clifford {rep.clifford}  divisorial complete: {'yes' if rep.passed else 'no'}")
        print(_table(["d", "r", "allowed", "realized", "ok"],
                     [[c.degree, c.rank, int(c.allowed), int(c.realized), "ok" if c.passed else "FAIL"]
                      for c in rep.cells]))
    return 0 if rep.passed else 1


def _oracle_graph(args):
    src = _one_source(args, ("graph", "chain"))
    if src == "graph":
        return fgo.FiniteGraph.from_json(_load(args.graph)), None
    if src == "chain":
        chain = cm.DiscreteChain.from_json(_load(args.chain))
    else:
        chain = cm.realize_discrete_chain(cm.martens_special_profile(_spec(args), "discrete"))
    return chain.graph(), chain


def _oracle_divisor(args, G, chain) -> fgo.VertexDivisor:
    if args.divisor is None:
        raise InputError("give --divisor")
    data = _load(args.divisor)
    if chain is not None:
        return cm.divisor_from_json(chain, data)
    D = fgo.VertexDivisor.from_json(data)
    if len(D) != G.n_vertices:
        raise InputError(f"divisor has {len(D)} coefficients, graph has {G.n_vertices} vertices")
    return D


def cmd_oracle(args) -> int:
    G, chain = _oracle_graph(args)
    if not 0 <= args.base < G.n_vertices:
        raise InputError(f"--base {args.base} outside 0..{G.n_vertices - 1}")
    if args.oracle_cmd == "rank":
        r = fgo.rank_baker_norine(G, _oracle_divisor(args, G, chain), args.base)
        _emit({"rank": r}) if args.json else print(f"rank {r}")
    elif args.oracle_cmd == "reduce":
        red = fgo.dhar_reduce(G, _oracle_divisor(args, G, chain), args.base)
        out = cm.divisor_to_json(chain, red) if chain is not None else red.to_json()
        out["base"] = args.base
        if args.json:
            _emit(out)
        else:
            print(f"{args.base}-reduced: {' '.join(map(str, red.coefficients))}")
    else:
        if args.r is None or args.d is None:
            raise InputError("give -r and -d")
        w = fgo.wrd_discrete(G, args.r, args.d, args.base)
        _emit({"r": args.r, "d": args.d, "w": w}) if args.json else print(f"w^{args.r}_{args.d} = {w}")
    return 0


_VERIFIERS = {
    "prop1": lambda s, a: ts.verify_prop1(s),
    "lemmas": lambda s, a: ts.verify_two_row_lemmas(s),
    "thm-b": lambda s, a: ts.verify_theorem_b(s, a.rmax),
    "thm-c": lambda s, a: ts.verify_theorem_c(s, a.rmax),
    "divcomplete": lambda s, a: ts.verify_divisorial_complete(s),
    "thm-a-probe": lambda s, a: ts.probe_theorem_a_discrete(s),
}


def _sweep_one(spec: cm.MartensSpec) -> list[dict]:
    return [r.to_json() for r in ts.verify_all(spec)]


def cmd_verify(args) -> int:
    if args.verify_cmd == "sweep":
        specs = list(ts.valid_specs(args.max_genus, args.max_type))
        threads = args.threads or os.cpu_count() or 1
        if threads > 1:
            with ProcessPoolExecutor(max_workers=threads) as pool:
                results = list(pool.map(_sweep_one, specs))
        else:
            results = [_sweep_one(s) for s in specs]
        reports = [ts.VerificationReport.from_json(r) for rs in results for r in rs]
    else:
        reports = [_VERIFIERS[args.verify_cmd](_spec(args), args)]
    ok = all(r.passed for r in reports)
    if args.json:
        _emit({"passed": ok, "reports": [r.to_json() for r in reports]})
    else:
        for r in reports:
            print(r.summary())
            for inst in r.instances:
                if inst.detail and args.verify_cmd != "sweep":
                    print(f"  {inst.label}: {json.dumps(inst.detail, sort_keys=True)}")
                if not inst.passed:
                    print(f"  FAILED {inst.label}: {json.dumps(inst.counterexample, sort_keys=True)}")
        print(f"{'all passed' if ok else 'FAILURES'}: {len(reports)} reports")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cyclechain", description=__doc__)
    sub = parser.add_subparsers(dest="cmd", required=True)

    def leaf(name, help_, files=("profile",), kind=True):
        p = sub.add_parser(name, help=help_)
        _add_family(p, files)
        if kind:
            p.add_argument("--kind", choices=("metric", "discrete"))
        p.add_argument("--json", action="store_true")
        return p

    leaf("profile", "torsion profile of a family or chain", ("profile", "chain")).set_defaults(func=cmd_profile)
    leaf("realize", "smallest discrete chain with a given profile").set_defaults(func=cmd_realize)

    p = leaf("tableaux", "count or list displacement tableaux", ("profile", "chain"))
    p.add_argument("--cols", type=int)
    p.add_argument("--rows", type=int)
    p.add_argument("--deletions", type=int, metavar="L", help="two-row tableaux with L deletions per row")
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_tableaux)

    p = leaf("rank", "rank of a divisor", ("profile", "chain"))
    p.add_argument("--divisor")
    p.set_defaults(func=cmd_rank)

    p = leaf("gonseq", "gonality sequence", ("profile", "chain"))
    p.add_argument("--rmax", type=int)
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_gonseq)

    leaf("cliff", "Clifford index", ("profile", "chain")).set_defaults(func=cmd_cliff)
    leaf("divcomplete", "divisorial completeness grid", ("profile", "chain")).set_defaults(func=cmd_divcomplete)

    oracle = sub.add_parser("oracle", help="chip-firing computations on finite graphs")
    osub = oracle.add_subparsers(dest="oracle_cmd", required=True)
    for name in ("rank", "reduce", "wrd"):
        p = osub.add_parser(name)
        _add_family(p, ("graph", "chain"))
        p.add_argument("--divisor")
        p.add_argument("--base", type=int, default=0)
        p.add_argument("--json", action="store_true")
        if name == "wrd":
            p.add_argument("-r", type=int)
            p.add_argument("-d", type=int)
        p.set_defaults(func=cmd_oracle)

    verify = sub.add_parser("verify", help="check the theorems on Martens-special families")
    vsub = verify.add_subparsers(dest="verify_cmd", required=True)
    for name in _VERIFIERS:
        p = vsub.add_parser(name)
        _add_family(p, ())
        p.add_argument("--rmax", type=int)
        p.add_argument("--json", action="store_true")
        p.set_defaults(func=cmd_verify)
    p = vsub.add_parser("sweep", help="prop1, lemmas and thm-b on every spec up to the bounds")
    p.add_argument("--max-genus", type=int, default=12)
    p.add_argument("--max-type", type=int, default=3)
    p.add_argument("--threads", type=int, help="worker processes (default: all cores)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ValueError, KeyError, TypeError, IndexError) as exc:
        msg = f"missing field {exc.args[0]!r}" if isinstance(exc, KeyError) and exc.args else exc
        print(f"cyclechain: error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
