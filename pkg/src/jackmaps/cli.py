"""Command-line interface: ``python -m jackmaps <command> ...``.

Tables are written as JSON lines with sorted keys; a verifier prints one JSON
report and exits 0 on success, 1 when an identity fails.  Usage errors exit 2.
"""

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import __version__
from .catalytic import (
    b_n_apply,
    b_n_dual_apply,
    c_ell_apply,
    c_ell_dual_apply,
    closed_forms_check,
    commutator_check,
)
from .jack import c_coefficient, jack_character, jack_polynomial
from .oracle import marked_hypermap_count
from .partitions import partition, partitions_of, partitions_upto
from .psym import format_pexpr, parse_pexpr
from .scalar import Qb
from . import structure as st

SHARD_ENV = "JACKMAPS_SHARD_DIR"


class UsageError(Exception):
    pass


def parse_partition(text: str):
    s = text.strip()
    if s.startswith("[") and s.endswith("]"):
        s = s[1:-1]
    if not s.strip():
        return ()
    try:
        return partition(int(x) for x in s.split(","))
    except ValueError as exc:
        raise UsageError(f"bad partition {text!r}: {exc}") from None


def parse_alpha(text):
    if text is None:
        return None
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--alpha expects a rational number, got {text!r}") from None


def scalar_out(v: Qb, alpha):
    if alpha is None:
        return v.to_json()
    x = v.eval_at_alpha(alpha)
    return str(x)


def scalar_text(v: Qb, alpha) -> str:
    return str(v) if alpha is None else str(v.eval_at_alpha(alpha))


def format_at(f, alpha) -> str:
    """A p-expression with every coefficient evaluated at a rational alpha."""
    if alpha is None:
        return format_pexpr(f)
    terms = []
    for k, c in f.sorted_items():
        x = c.eval_at_alpha(alpha)
        if x:
            mono = f"p[{','.join(map(str, k))}]"
            terms.append(mono if x == 1 else f"{x}*{mono}")
    return " + ".join(terms) or "0"


def emit(obj, out=None):
    (out or sys.stdout).write(json.dumps(obj, sort_keys=True) + "\n")


def _nonneg(name, value):
    if value < 0:
        raise UsageError(f"{name} must be nonnegative")
    return value


# ---- commands -------------------------------------------------------------------


def cmd_jack(args):
    lam = parse_partition(args.partition)
    print(format_at(jack_polynomial(lam), parse_alpha(args.alpha)))
    return 0


def cmd_char(args):
    mu, lam = parse_partition(args.mu), parse_partition(args.lam)
    print(scalar_text(jack_character(mu, lam), parse_alpha(args.alpha)))
    return 0


def cmd_cgrid(args):
    n = _nonneg("n", args.n)
    alpha = parse_alpha(args.alpha)
    for pi in partitions_of(n):
        for mu in partitions_of(n):
            for nu in partitions_of(n):
                c = c_coefficient(pi, mu, nu)
                if c:
                    emit({"pi": list(pi), "mu": list(mu), "nu": list(nu), "c": scalar_out(c, alpha)})
    return 0


def _pair_rows(job):
    mu, nu, route, max_pi = job
    rows = []
    cap = sum(mu) + sum(nu) if max_pi is None else max_pi
    for pi in partitions_upto(cap):
        if not st.in_window(pi, mu, nu):
            continue
        if route == "both":
            a, b = st.g_via_c(pi, mu, nu), st.g_via_recursion(pi, mu, nu)
            if a != b:
                return rows, (pi, mu, nu, str(a), str(b))
            g, tag = a, "via_c"
        else:
            g = st.g_coefficient(pi, mu, nu, route)
            tag = st.CoeffTable.TAGS[route]
        if g:
            rows.append({"pi": list(pi), "mu": list(mu), "nu": list(nu), "g": g.to_json(),
                         "route": tag})
    return rows, None


def _rows_for_total(total, route, max_pi, workers):
    jobs = []
    for a in range(total + 1):
        for mu in partitions_of(a):
            for nu in partitions_of(total - a):
                jobs.append((mu, nu, route, max_pi))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_pair_rows, jobs))
    else:
        results = [_pair_rows(j) for j in jobs]
    rows, bad = [], None
    for r, err in results:
        rows.extend(r)
        bad = bad or err
    return rows, bad


def _manifest_path(d: Path) -> Path:
    return d / "manifest.json"


def _load_manifest(d: Path, caps: dict):
    p = _manifest_path(d)
    if not p.exists():
        return {"version": __version__, "caps": caps, "shards": {}}
    m = json.loads(p.read_text())
    if m.get("caps", {}).get("route") != caps["route"] or m.get("caps", {}).get("max_pi") != caps["max_pi"]:
        raise UsageError(f"shard directory {d} holds a table with different caps {m.get('caps')}")
    return m


def cmd_ggrid(args):
    n = _nonneg("--max", args.max)
    max_pi = None if args.max_pi is None else _nonneg("--max-pi", args.max_pi)
    workers = max(1, args.workers)
    alpha = parse_alpha(args.alpha)
    shard_dir = args.shards or os.environ.get(SHARD_ENV)
    out = open(args.out, "w") if args.out else sys.stdout
    status = 0
    manifest = None
    if shard_dir:
        shard_dir = Path(shard_dir)
        shard_dir.mkdir(parents=True, exist_ok=True)
        manifest = _load_manifest(shard_dir, {"route": args.route, "max_pi": max_pi})
    try:
        for total in range(n + 1):
            shard = shard_dir / f"total_{total}.jsonl" if manifest is not None else None
            if manifest is not None and str(total) in manifest["shards"]:
                rows = [json.loads(line) for line in shard.read_text().splitlines() if line]
            else:
                rows, bad = _rows_for_total(total, args.route, max_pi, workers)
                if bad:
                    pi, mu, nu, a, b = bad
                    emit({"error": "routes disagree", "pi": list(pi), "mu": list(mu),
                          "nu": list(nu), "via_c": a, "via_recursion": b}, sys.stderr)
                    status = 1
                if manifest is not None and not bad:
                    # a shard absent from the manifest is partial: rewrite it whole
                    with open(shard, "w") as fh:
                        for r in rows:
                            emit(r, fh)
                    manifest["shards"][str(total)] = {"entries": len(rows)}
                    manifest["caps"]["max_total"] = max(manifest["caps"].get("max_total", 0), total)
                    _manifest_path(shard_dir).write_text(json.dumps(manifest, sort_keys=True, indent=1))
            for r in rows:
                if args.pretty:
                    g = Qb.from_json(r["g"])
                    out.write(f"g^{r['pi']}_{r['mu']},{r['nu']} = {scalar_text(g, alpha)}\n")
                else:
                    if alpha is not None:
                        r = dict(r, g=scalar_out(Qb.from_json(r["g"]), alpha))
                    emit(r, out)
    finally:
        if args.out:
            out.close()
    return status


def cmd_op(args):
    f = parse_pexpr(args.on)
    alpha = parse_alpha(args.alpha)
    if args.op == "bn":
        if args.n < 1:
            raise UsageError("--n must be positive")
        res = (b_n_dual_apply if args.dual else b_n_apply)(args.n, f)
        for k in sorted(res):
            emit({"u": k, "value": format_at(res[k], alpha)})
    else:
        _nonneg("--l", args.l)
        _nonneg("--tmax", args.tmax)
        res = (c_ell_dual_apply if args.dual else c_ell_apply)(args.l, f, args.tmax)
        for k in sorted(res):
            emit({"t": k, "value": format_at(res[k], alpha)})
    return 0


def _report(res) -> int:
    emit(res)
    return 0 if res["pass"] else 1


def cmd_verify(args):
    w = args.what
    if w == "main":
        n = _nonneg("--max", args.max)
        res = {"pass": True, "layers": {}}
        layers = range(args.l + 1) if args.all_layers else [args.l]
        for ell in layers:
            r = st.verify_main_equation(ell, n, args.route)
            res["layers"][str(ell)] = r
            res["pass"] = res["pass"] and r["pass"]
        return _report(res)
    if w == "commutators":
        res = {"pass": True, "cases": []}
        for ell in range(0, args.lmax + 1):
            for m in range(1, args.lmax + 1):
                r = commutator_check(ell, m, args.max, args.tmax)
                res["cases"].append({"l": ell, "m": m, **r})
                res["pass"] = res["pass"] and r["pass"]
        return _report(res)
    if w == "closed-forms":
        return _report(closed_forms_check(args.lmax, 2, args.max))
    if w == "low-terms":
        return _report(st.verify_low_terms(args.max, args.route))
    if w == "iso":
        return _report(st.verify_iso_all(args.max, route=args.route))
    if w == "connected":
        res = {"log_shift": st.verify_log_shift(args.max, args.route),
               "degree_bound": st.degree_bound_check(args.max, args.route),
               "equation": st.verify_connected_equation(min(args.max, 3), args.route)}
        res["pass"] = all(r["pass"] for r in res.values())
        return _report(res)
    if w == "constellations":
        res = {"equation": st.verify_constellation_equation(args.k, args.max, 2, args.route),
               "shift": st.verify_constellation_shift(args.k, args.max, args.route)}
        res["pass"] = all(r["pass"] for r in res.values())
        return _report(res)
    raise UsageError(f"unknown verifier {w}")


def cmd_scan(args):
    res = st.conjecture_scan(_nonneg("--max", args.max), args.route)
    emit({"entries": res["entries"], "integrality_errors": res["integrality_errors"],
          "violations": res["violations"], "pass": res["pass"]})
    for v in res["violations"]:
        sys.stderr.write(f"CONJECTURE-VIOLATION {json.dumps(v, sort_keys=True)}\n")
    return 0 if res["pass"] else 1


def cmd_oracle(args):
    n = _nonneg("--max", args.max)
    status = 0
    for size in range(n + 1):
        for pi in partitions_of(size):
            for mu in partitions_upto(size):
                for nu in partitions_upto(size):
                    g = st.g_via_c(pi, mu, nu)
                    o = marked_hypermap_count(pi, mu, nu)
                    g1 = g.eval_at_alpha(1)
                    if not (o or g1):
                        continue
                    ok = o == g1
                    status = status or (0 if ok else 1)
                    emit({"pi": list(pi), "mu": list(mu), "nu": list(nu), "oracle": str(o),
                          "g_at_1": str(g1), "match": ok})
    return status


def cmd_constellations(args):
    if args.k < 1:
        raise UsageError("--k must be at least 1")
    series = st.constellation_series(args.k, _nonneg("--max", args.max), args.route)
    alpha = parse_alpha(args.alpha)
    for key, v in series.sorted_items():
        pi, mus = key[1], key[2:]
        g = v * st.hall_norm(pi)
        emit({"pi": list(pi), "mus": [list(m) for m in mus], "g": scalar_out(g, alpha)})
    return 0


def cmd_connected(args):
    n = _nonneg("--max", args.max)
    alpha = parse_alpha(args.alpha)
    ghat = st.connected_series(n, args.route)
    for key, v in ghat.sorted_items():
        _, pi, mu, nu = key
        emit({"pi": list(pi), "mu": list(mu), "nu": list(nu), "ghat": scalar_out(v * sum(pi), alpha)})
    return 0


# ---- parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="jackmaps", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def alpha_flag(p):
        p.add_argument("--alpha", help="print values at this rational alpha instead of in b")

    def route_flag(p, choices=("c", "rec", "sum")):
        p.add_argument("--route", choices=choices, default="c")

    p = sub.add_parser("jack", help="J_lambda in the power-sum basis")
    p.add_argument("partition")
    alpha_flag(p)
    p.set_defaults(fn=cmd_jack)

    p = sub.add_parser("char", help="Jack character theta_mu(lambda)")
    p.add_argument("mu")
    p.add_argument("lam")
    alpha_flag(p)
    p.set_defaults(fn=cmd_char)

    p = sub.add_parser("cgrid", help="all c^pi_{mu,nu} of size n as JSON lines")
    p.add_argument("n", type=int)
    alpha_flag(p)
    p.set_defaults(fn=cmd_cgrid)

    p = sub.add_parser("ggrid", help="g^pi_{mu,nu} table as JSON lines")
    p.add_argument("--max", type=int, required=True, help="bound on |mu|+|nu|")
    p.add_argument("--max-pi", type=int, default=None)
    route_flag(p, ("c", "rec", "sum", "both"))
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--shards", help=f"shard directory (overrides ${SHARD_ENV})")
    p.add_argument("--out")
    p.add_argument("--pretty", action="store_true")
    alpha_flag(p)
    p.set_defaults(fn=cmd_ggrid)

    p = sub.add_parser("op", help="apply B_n or C_l to a p-expression")
    opsub = p.add_subparsers(dest="op", required=True)
    q = opsub.add_parser("bn")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--on", required=True, help="p-expression, e.g. '2*p[1] + (b+1)*p[2,1]'")
    q.add_argument("--dual", action="store_true")
    alpha_flag(q)
    q = opsub.add_parser("cl")
    q.add_argument("--l", type=int, required=True)
    q.add_argument("--tmax", type=int, required=True)
    q.add_argument("--on", required=True)
    q.add_argument("--dual", action="store_true")
    alpha_flag(q)
    p.set_defaults(fn=cmd_op)

    p = sub.add_parser("verify", help="check an identity and report")
    vsub = p.add_subparsers(dest="what", required=True)
    q = vsub.add_parser("main")
    q.add_argument("--l", type=int, required=True)
    q.add_argument("--max", type=int, required=True)
    q.add_argument("--all-layers", action="store_true", help="check every layer up to --l")
    route_flag(q)
    q = vsub.add_parser("commutators")
    q.add_argument("--max", type=int, required=True, help="basis degree")
    q.add_argument("--tmax", type=int, default=6)
    q.add_argument("--lmax", type=int, default=3)
    q = vsub.add_parser("closed-forms")
    q.add_argument("--max", type=int, default=4, help="basis degree")
    q.add_argument("--lmax", type=int, default=4)
    q = vsub.add_parser("low-terms")
    q.add_argument("--max", type=int, default=4, help="bound on |pi|")
    route_flag(q)
    q = vsub.add_parser("iso")
    q.add_argument("--max", type=int, required=True, help="bound on |mu|+|nu|")
    route_flag(q)
    q = vsub.add_parser("connected")
    q.add_argument("--max", type=int, required=True)
    route_flag(q)
    q = vsub.add_parser("constellations")
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--max", type=int, required=True)
    route_flag(q)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("scan", help="positivity scan")
    ssub = p.add_subparsers(dest="what", required=True)
    q = ssub.add_parser("conjecture")
    q.add_argument("--max", type=int, required=True)
    route_flag(q)
    p.set_defaults(fn=cmd_scan)

    p = sub.add_parser("oracle", help="compare with permutation counts at alpha = 1")
    osub = p.add_subparsers(dest="what", required=True)
    q = osub.add_parser("compare")
    q.add_argument("--max", type=int, required=True, help="bound on |pi|")
    p.set_defaults(fn=cmd_oracle)

    p = sub.add_parser("constellations", help="multi-factor coefficients as JSON lines")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max", type=int, required=True)
    route_flag(p)
    alpha_flag(p)
    p.set_defaults(fn=cmd_constellations)

    p = sub.add_parser("connected", help="connected coefficients ghat as JSON lines")
    p.add_argument("--max", type=int, required=True)
    route_flag(p)
    alpha_flag(p)
    p.set_defaults(fn=cmd_connected)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as exc:
        sys.stderr.write(f"jackmaps: error: {exc}\n")
        return 2
    except ValueError as exc:
        sys.stderr.write(f"jackmaps: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
