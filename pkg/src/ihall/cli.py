"""Command line front end.

Subcommands:

  verify      run the whole presentation relation suite on one iquiver
  product     multiply two elements and print the expansion
  idp         print a Hall-side divided power expansion
  identities  run the pure q-series identity suites (no quiver involved)
  enumerate   list the module classes at one dimension vector

Quivers are named either ``builtin:<name>`` or by the path of a JSON file
holding the spec dict (keys: vertices, arrows, tau, optionally tau_arrows).
Elements are named ``simple:<vertex>``, ``k:<vertex>``, or
``class:<d1>,...,<dn>#<idx>``.

Exit codes: 0 success, 1 a check failed, 2 bad input, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .frep import BudgetError
from .idp import idp_hall
from .ihall import HallAlgebra
from .iqg import run_identity_suites, run_t_suite, verify_presentation
from .iquiver import BUILTIN_NAMES, build_iquiver, builtin_iquiver


def _load_iquiver(name):
    if name.startswith("builtin:"):
        return builtin_iquiver(name[len("builtin:"):])
    with open(name) as fh:
        return build_iquiver(json.load(fh))


def _algebra(args):
    return HallAlgebra(
        _load_iquiver(args.quiver),
        args.q,
        budget_dim=args.budget_dim,
        budget_space=args.budget_space,
    )


def _parse_elt(algebra, key):
    if key.startswith("simple:"):
        return algebra.simple(key[len("simple:"):])
    if key.startswith("k:"):
        return algebra.torus_k(key[len("k:"):])
    if key.startswith("class:"):
        body = key[len("class:"):]
        dim_s, sep, idx_s = body.partition("#")
        if not sep:
            raise ValueError("class key %r lacks '#<index>'" % key)
        dim = tuple(int(x) for x in dim_s.split(","))
        idx = int(idx_s)
        classes = algebra.table.classes(dim)
        if not 0 <= idx < len(classes):
            raise ValueError(
                "index %d out of range: %d classes at dimension %s"
                % (idx, len(classes), dim_s)
            )
        return algebra.module_elt(classes[idx])
    raise ValueError(
        "unrecognized element key %r (want simple:, k:, or class:)" % key
    )


def _terms_payload(elt):
    return [
        {"class": cls.name, "alpha": list(alpha), "coeff": str(c)}
        for (cls, alpha), c in elt.sorted_terms()
    ]


def _emit(args, payload, text_lines):
    if args.json:
        json.dump(payload, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        for line in text_lines:
            print(line)


def cmd_verify(args):
    t0 = time.time()
    algebra = _algebra(args)
    parities = tuple(int(x) for x in args.parities.split(","))
    results = verify_presentation(algebra, parities)
    rows = [(label, res.is_zero()) for label, res in results]
    ok = all(flag for _, flag in rows)
    payload = {
        "command": "verify",
        "quiver": args.quiver,
        "q": args.q,
        "results": [{"relation": lab, "ok": flag} for lab, flag in rows],
        "ok": ok,
        "elapsed_s": round(time.time() - t0, 3),
    }
    lines = ["%s %s" % ("ok  " if flag else "FAIL", lab) for lab, flag in rows]
    lines.append(
        "%d/%d relations hold (%.2fs)"
        % (sum(f for _, f in rows), len(rows), time.time() - t0)
    )
    _emit(args, payload, lines)
    return 0 if ok else 1


def cmd_product(args):
    algebra = _algebra(args)
    x = _parse_elt(algebra, args.x)
    y = _parse_elt(algebra, args.y)
    prod = x * y
    payload = {
        "command": "product",
        "quiver": args.quiver,
        "q": args.q,
        "x": args.x,
        "y": args.y,
        "terms": _terms_payload(prod),
    }
    _emit(args, payload, [repr(prod)])
    return 0


def cmd_idp(args):
    algebra = _algebra(args)
    elt = idp_hall(algebra, args.vertex, args.n, args.parity)
    payload = {
        "command": "idp",
        "quiver": args.quiver,
        "q": args.q,
        "vertex": args.vertex,
        "n": args.n,
        "parity": args.parity,
        "terms": _terms_payload(elt),
    }
    _emit(args, payload, [repr(elt)])
    return 0


def cmd_identities(args):
    t0 = time.time()
    rows = run_identity_suites(pmax=args.pmax, dmax=args.dmax)
    rows += run_t_suite(amax=args.amax)
    ok = all(flag for _, flag in rows)
    payload = {
        "command": "identities",
        "pmax": args.pmax,
        "dmax": args.dmax,
        "amax": args.amax,
        "results": [{"identity": name, "ok": flag} for name, flag in rows],
        "ok": ok,
        "elapsed_s": round(time.time() - t0, 3),
    }
    lines = ["%s %s" % ("ok  " if flag else "FAIL", name) for name, flag in rows]
    lines.append(
        "%d/%d identities hold (%.2fs)"
        % (sum(f for _, f in rows), len(rows), time.time() - t0)
    )
    _emit(args, payload, lines)
    return 0 if ok else 1


def cmd_enumerate(args):
    algebra = _algebra(args)
    dim = tuple(int(x) for x in args.dim.split(","))
    algebra.table.check_budget(dim)
    classes = algebra.table.classes(dim)
    rows = [
        {
            "name": c.name,
            "aut_order": c.aut_order,
            "orbit_size": c.orbit_size,
            "eps_zero": algebra.table.is_eps_zero(c),
        }
        for c in classes
    ]
    payload = {
        "command": "enumerate",
        "quiver": args.quiver,
        "q": args.q,
        "dim": list(dim),
        "classes": rows,
    }
    lines = [
        "%-12s aut=%-8d orbit=%-8d %s"
        % (r["name"], r["aut_order"], r["orbit_size"], "eps-zero" if r["eps_zero"] else "")
        for r in rows
    ]
    lines.append("%d classes" % len(rows))
    _emit(args, payload, lines)
    return 0


def _add_algebra_args(sub):
    sub.add_argument("quiver", help="builtin:<name> or path of a JSON spec; builtins: %s" % ", ".join(BUILTIN_NAMES))
    sub.add_argument("--q", type=int, default=2, help="prime field size (default 2)")
    sub.add_argument("--budget-dim", type=int, default=6, help="max total dimension enumerated (default 6)")
    sub.add_argument("--budget-space", type=int, default=2 ** 28, help="max raw candidate count at one dimension (default 2^28)")
    sub.add_argument("--threads", type=int, default=1, help="reserved; the computation runs in one process")


def build_parser():
    ap = argparse.ArgumentParser(prog="ihall", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sp = ap.add_subparsers(dest="command", required=True)

    v = sp.add_parser("verify", help="run the presentation relation suite")
    _add_algebra_args(v)
    v.add_argument("--parities", default="0,1", help="comma list of parities for the fixed-vertex relations (default 0,1)")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    pr = sp.add_parser("product", help="multiply two elements")
    _add_algebra_args(pr)
    pr.add_argument("x", help="element key")
    pr.add_argument("y", help="element key")
    pr.add_argument("--json", action="store_true")
    pr.set_defaults(func=cmd_product)

    dp = sp.add_parser("idp", help="print a Hall-side divided power")
    _add_algebra_args(dp)
    dp.add_argument("--vertex", required=True)
    dp.add_argument("--n", type=int, required=True)
    dp.add_argument("--parity", type=int, choices=(0, 1), default=None)
    dp.add_argument("--json", action="store_true")
    dp.set_defaults(func=cmd_idp)

    idn = sp.add_parser("identities", help="run the q-series identity suites")
    idn.add_argument("--pmax", type=int, default=12)
    idn.add_argument("--dmax", type=int, default=12)
    idn.add_argument("--amax", type=int, default=8)
    idn.add_argument("--json", action="store_true")
    idn.set_defaults(func=cmd_identities)

    en = sp.add_parser("enumerate", help="list module classes at a dimension vector")
    _add_algebra_args(en)
    en.add_argument("--dim", required=True, help="comma separated dimension vector")
    en.add_argument("--json", action="store_true")
    en.set_defaults(func=cmd_enumerate)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except BudgetError as exc:
        print("budget exceeded: %s" % exc, file=sys.stderr)
        return 3
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
