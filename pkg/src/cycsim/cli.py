"""Command-line front end with machine-readable JSON output.

Exit codes: 0 computed verdict (including No), 2 precondition violation,
3 internal invariant failure, 4 capacity exceeded.  All output is a single
JSON document on stdout with deterministic key order.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import CapacityExceeded, DomainError, InternalInvariantError
from . import classify, groupring, normalinv, reps
from .tate import C2Module, oliver_kernel_check, tate as tate_groups, tate_bruteforce


def _print(doc):
    json.dump(doc, sys.stdout, separators=(", ", ": "))
    sys.stdout.write("\n")


def _print_table(rows, columns):
    widths = [
        max(len(col), *(len(str(row.get(col, ""))) for row in rows)) if rows else len(col)
        for col in columns
    ]
    header = "  ".join(col.ljust(w) for col, w in zip(columns, widths))
    sys.stdout.write(header + "\n")
    sys.stdout.write("-" * len(header) + "\n")
    for row in rows:
        line = "  ".join(str(row.get(col, "")).ljust(w) for col, w in zip(columns, widths))
        sys.stdout.write(line + "\n")


def _rep(arg, n):
    if arg.strip().startswith("{"):
        return reps.rep_from_record(json.loads(arg))
    return reps.parse_rep(arg, n)


def _cmd_decide(args):
    n = 1 << args.r
    v1 = _rep(args.v1, n)
    v2 = _rep(args.v2, n)
    w = _rep(args.w, n) if args.w else reps.VirtualRep.zero(reps.cyclic_group(n))
    verdict = classify.decide_similarity(v1, v2, w)
    _print(verdict.to_json())


def _cmd_stable(args):
    n = 1 << args.r
    v1 = _rep(args.v1, n)
    v2 = _rep(args.v2, n)
    ok, cert = classify.decide_stable(v1, v2)
    doc = {"stable": ok, "rt_coefficients": None if cert is None else list(cert)}
    if args.crosscheck:
        rep = classify.parity_torsion_crosscheck(v1 - v2, exp_bound=args.exp_bound)
        doc["parity_torsion"] = rep.to_json()
    _print(doc)


def _cmd_rtop(args):
    _print(classify.rtop_presentation(args.r).to_json())


def _cmd_basis(args):
    basis = classify.std_basis(args.r)
    lattice = classify.rt_lattice(args.r)
    _print(
        {
            "r": args.r,
            "basis": [list(e) for e in basis.elements],
            "lattice": [
                {"tag": g.tag, "label": g.label(), "coords": list(g.coords)}
                for g in lattice.generators
            ],
        }
    )


def _cmd_order(args):
    n = 1 << args.r
    x = _rep(args.x, n)
    _print({"order": classify.order_in_rtop(x)})


def _cmd_normal(args):
    if args.sweep:
        reports = normalinv.a_prime_sweep(tuple(args.sweep))
        if args.table:
            rows = []
            for rep in reports:
                row = dict(rep.params)
                row.update(
                    lhs_residue=rep.lhs_residue,
                    target=rep.extras["target_residue"],
                    rhs_residue=rep.rhs_residue,
                    verdict=rep.verdict,
                )
                rows.append(row)
            _print_table(
                rows,
                ["r", "s", "i", "k", "lhs_residue", "target", "rhs_residue", "verdict"],
            )
            return
        _print({"reports": [rep.to_json() for rep in reports]})
        return
    if None in (args.r, args.s, args.i, args.k):
        raise DomainError("normal needs --sweep or all of --r --s --i --k")
    rep = normalinv.a_prime_instance(args.r, args.s, args.i, args.k)
    _print(rep.to_json())


def _cmd_identities(args):
    out = []
    if args.q:
        for q in args.q:
            out.append(groupring.verify_identity_v(q).to_json())
            for j in range(1, 4 * q):
                from math import gcd

                if j % 4 == 1 and gcd(j, 2 * q) == 1:
                    out.append(groupring.verify_identity_gamma(q, j).to_json())
    if args.r:
        for r in args.r:
            if r >= 5:
                out.append(groupring.verify_condB_unit(r).to_json())
                for s in range(1, r - 3):
                    for i in range((1 << (r - s - 2)) - 2):
                        out.append(
                            groupring.verify_sigma_v_factorization(r, s, i).to_json()
                        )
    if args.table:
        rows = [
            {"name": rep["name"], "params": json.dumps(rep["params"]), "passed": rep["passed"]}
            for rep in out
        ]
        _print_table(rows, ["name", "params", "passed"])
        return
    _print({"reports": out, "all_passed": all(rep["passed"] for rep in out)})


def _cmd_tate(args):
    rec = json.load(sys.stdin) if args.module == "-" else json.loads(args.module)
    module = C2Module.from_json(rec)
    out = {}
    for i in (0, 1):
        group = tate_groups(module, i)
        out[f"h{i}"] = list(group.invariant_factors)
    if args.bruteforce:
        for i in (0, 1):
            group = tate_bruteforce(module, i, max_size=args.max_enum)
            out[f"h{i}_bruteforce"] = list(group.invariant_factors)
    _print(out)


def _cmd_enumerate(args):
    n = 1 << args.r
    w = _rep(args.w, n) if args.w else reps.VirtualRep.zero(reps.cyclic_group(n))
    rows = []
    yes = 0
    for v1, v2, verdict in classify.enumerate_unstable(
        args.r, args.dim, w, max_enum=args.max_enum
    ):
        if verdict.decision == "Yes":
            yes += 1
        if args.all or verdict.decision == "Yes":
            rows.append(
                {
                    "v1": reps.rep_to_record(v1),
                    "v2": reps.rep_to_record(v2),
                    "verdict": verdict.to_json(),
                }
            )
    _print({"yes_count": yes, "rows": rows})


def _cmd_oliver(args):
    rep = oliver_kernel_check(args.n, max_enum=args.max_enum)
    _print(rep.to_json())


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cycsim",
        description="Exact similarity invariants for cyclic-group representations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="decide V1 + W ~ V2 + W over C(2^r)")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--v1", required=True)
    p.add_argument("--v2", required=True)
    p.add_argument("--w", default="")
    p.set_defaults(func=_cmd_decide)

    p = sub.add_parser("stable", help="decide stable similarity over C(2^r)")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--v1", required=True)
    p.add_argument("--v2", required=True)
    p.add_argument(
        "--crosscheck",
        action="store_true",
        help="also run the parity/torsion cross-check (needs x in ker Res)",
    )
    p.add_argument("--exp-bound", type=int, default=2, dest="exp_bound")
    p.set_defaults(func=_cmd_stable)

    p = sub.add_parser("rtop", help="presentation of the stable quotient group")
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=_cmd_rtop)

    p = sub.add_parser("basis", help="standard basis and stable lattice")
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=_cmd_basis)

    p = sub.add_parser("order", help="order of a class in the stable quotient")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--x", required=True)
    p.set_defaults(func=_cmd_order)

    p = sub.add_parser("normal", help="normal-invariant congruence reports")
    p.add_argument("--r", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--i", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--sweep", type=int, nargs="*", help="sweep these r values")
    p.add_argument("--table", action="store_true", help="plain table instead of JSON")
    p.set_defaults(func=_cmd_normal)

    p = sub.add_parser("identities", help="exact unit identity suite")
    p.add_argument("--q", type=int, nargs="*", help="odd q values for Phi_4q checks")
    p.add_argument("--r", type=int, nargs="*", help="2-group exponents r")
    p.add_argument("--table", action="store_true", help="plain table instead of JSON")
    p.set_defaults(func=_cmd_identities)

    p = sub.add_parser("tate", help="Tate cohomology of a C2-module (JSON)")
    p.add_argument("--module", default="-", help="JSON record or '-' for stdin")
    p.add_argument("--bruteforce", action="store_true")
    p.add_argument("--max-enum", type=int, default=1 << 20, dest="max_enum")
    p.set_defaults(func=_cmd_tate)

    p = sub.add_parser("enumerate", help="sweep pairs of free representations")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--dim", type=int, required=True, help="complex dimension")
    p.add_argument("--w", default="")
    p.add_argument("--all", action="store_true", help="include No verdicts")
    p.add_argument("--max-enum", type=int, default=200_000, dest="max_enum")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("oliver", help="norm-map kernel enumeration check")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-enum", type=int, default=1 << 22, dest="max_enum")
    p.set_defaults(func=_cmd_oliver)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except DomainError as exc:
        _print({"error": "precondition", "message": str(exc)})
        return 2
    except InternalInvariantError as exc:
        _print({"error": "internal_invariant", "message": str(exc)})
        return 3
    except CapacityExceeded as exc:
        _print({"error": "capacity", "message": str(exc)})
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
