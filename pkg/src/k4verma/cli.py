"""Command line surface.

Every subcommand prints one JSON report to stdout (or --out) and exits
nonzero when any contained check fails.  Reports list their checks in a
fixed order and serialize exact scalars as {"re": "p/q", "im": "p/q"},
so identical invocations produce identical output apart from timing.

K4V_THREADS caps the worker pool used for independent (weight, degree)
jobs; the report order never depends on completion order.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import annihilation as an
from . import coadjoint as co
from . import conformal as cf
from . import morphisms as mo
from . import solver as sv
from .exact import ONE, scal
from .grassmann import indices_of
from .weights import Weight, weight


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("K4V_THREADS", "1")))
    except ValueError:
        return 1


def _map_jobs(fn, jobs):
    jobs = list(jobs)
    nt = _threads()
    if nt == 1 or len(jobs) < 2:
        return [fn(j) for j in jobs]
    with ThreadPoolExecutor(max_workers=nt) as pool:
        return list(pool.map(fn, jobs))


def _check(name: str, ok: bool, **payload) -> dict:
    entry = {"name": name, "ok": bool(ok)}
    entry.update(payload)
    return entry


def _emit(report: dict, out_path) -> int:
    text = json.dumps(report, indent=2)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0 if report["ok"] else 1


def _finish(args, checks: list, t0: float, extra: dict | None = None) -> int:
    report = {
        "command": args.command,
        "options": {k: v for k, v in sorted(vars(args).items())
                    if k not in ("command", "func", "out")
                    and isinstance(v, (int, str, bool, type(None)))},
        "checks": checks,
        "ok": all(c["ok"] for c in checks),
        "elapsed_s": round(time.time() - t0, 3),
    }
    if extra:
        report.update(extra)
    return _emit(report, getattr(args, "out", None))


def _wt_payload(wt: Weight) -> dict:
    return {"m": wt.m, "n": wt.n, "mu_t": str(Fraction(wt.mu_t.re)),
            "mu_C": str(Fraction(wt.mu_C.re))}


def _wt_name(wt: Weight) -> str:
    return f"({wt.m},{wt.n},{Fraction(wt.mu_t.re)},{Fraction(wt.mu_C.re)})"


def _vvec_payload(v) -> list:
    return [{"theta": k, "eta": list(indices_of(l)), "monomial": list(mon),
             "coeff": c.to_json()}
            for (k, l, mon), c in sorted(v.items())]


# ---------------------------------------------------------------------------
# axioms
# ---------------------------------------------------------------------------


def _corrupted_psi(a, b):
    val = an.psi_default(a, b)
    if a == (0, 0) and b == (0, 15):
        return scal(-3)
    return val


def cmd_axioms(args) -> int:
    t0 = time.time()
    psi = _corrupted_psi if args.corrupt_cocycle else an.psi_default
    checks = []

    rep = cf.check_conformal_axioms(args.max_dpow, args.max_dpow)
    checks.append(_check("conformal-axioms", rep.ok,
                         pairs=rep.pairs_checked, triples=rep.triples_checked,
                         counterexamples=[repr(f) for f in rep.failures[:3]]))
    closure = cf.check_derived_closure()
    checks.append(_check("derived-subalgebra-closure", closure))

    jac = an.check_jacobi(args.max_tpow, psi=psi)
    checks.append(_check("annihilation-jacobi", jac.ok,
                         triples=jac.triples_checked,
                         counterexamples=[repr(f) for f in jac.failures[:3]]))
    coc = an.check_cocycle(args.max_tpow, psi=psi)
    checks.append(_check("cocycle-conditions", coc.ok,
                         pairs_and_triples=coc.triples_checked,
                         counterexamples=[repr(f) for f in coc.failures[:3]]))

    ymax = min(args.max_tpow + 1, 3)
    lie = an.lie_basis(ymax)
    singles = {k: {k: ONE} for k in lie}
    morphism_ok = True
    for a in lie:
        for b in lie:
            lhs = an.phi(an.lie_bracket_K4(singles[a], singles[b]))
            rhs = an.drop_central(
                an.bracket(an.phi(singles[a]), an.phi(singles[b])))
            if lhs != rhs:
                morphism_ok = False
    checks.append(_check("quotient-morphism", morphism_ok,
                         pairs=len(lie) ** 2))

    kernel = {an.KERNEL_KEY: ONE}
    central = all(an.lie_bracket_K4(kernel, singles[b]) == {} for b in lie)
    checks.append(_check("kernel-is-central", central
                         and an.phi(kernel) == {}))

    psi_ok = all(an.psi_from_splitting(a, b) == psi(a, b)
                 for a in an.basis(0, with_central=False)
                 for b in an.basis(0, with_central=False)) \
        if not args.corrupt_cocycle else True
    checks.append(_check("cocycle-from-splitting", psi_ok, pairs=256,
                         skipped=bool(args.corrupt_cocycle)))

    return _finish(args, checks, t0)


# ---------------------------------------------------------------------------
# search
# ---------------------------------------------------------------------------


def _parse_weight(text: str) -> Weight:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(
            "expected M,N,MT,MC (rationals as p/q)")
    return weight(int(parts[0]), int(parts[1]),
                  Fraction(parts[2]), Fraction(parts[3]))


def cmd_search(args) -> int:
    t0 = time.time()
    wt = args.weight
    rep = sv.solve(wt, args.degree)
    checks = [_check("solver", True, kernel_dim=rep.kernel_dim,
                     labels=list(rep.labels))]
    if args.dual_path:
        rep2 = sv.solve(wt, args.degree, dual=True)
        checks.append(_check("dual-path-agrees", rep.kernel == rep2.kernel))
    extra = {
        "weight": _wt_payload(wt),
        "degree": args.degree,
        "kernel": [_vvec_payload(v) for v in rep.kernel],
    }
    return _finish(args, checks, t0, extra)


# ---------------------------------------------------------------------------
# verify-theorems
# ---------------------------------------------------------------------------


def _table_weights(max_mn: int):
    seen = {}
    for label, fam in sv.FAMILIES.items():
        for m in range(max_mn + 1):
            for n in range(max_mn + 1):
                if sv._family_admits(label, m, n):
                    seen.setdefault(fam.weight_at(m, n), []).append(
                        (label, m, n))
    return seen


def _negative_weights(max_mn: int, count: int, seed: int):
    rng = random.Random(seed)
    shifts = [Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(-1, 2),
              Fraction(2), Fraction(3, 2)]
    out = []
    while len(out) < count:
        m, n = rng.randint(0, max_mn), rng.randint(0, max_mn)
        base = sv.FAMILIES[rng.choice(list(sv.FAMILIES))].weight_at(m, n)
        wt = weight(m, n, base.mu_t.re + rng.choice(shifts),
                    base.mu_C.re + rng.choice(shifts))
        if any(sv.expected_labels(wt, d) for d in (1, 2, 3)):
            continue
        out.append(wt)
    return out


def cmd_verify_theorems(args) -> int:
    t0 = time.time()
    table = _table_weights(args.max_mn)

    def job(item):
        wt, instances = item
        results = sv.classify(wt, (1, 2, 3))
        good = True
        for d in (1, 2, 3):
            expect = sorted(sv.expected_labels(wt, d))
            got = sorted(l for l in results[d].labels if l)
            if results[d].kernel_dim != len(expect) or got != expect:
                good = False
        vecs_ok = all(
            sv.verify_vector(sv.build_theorem_vector(lab, m, n)[1], wt).ok
            for lab, m, n in instances)
        return _check(f"weight {_wt_name(wt)}", good and vecs_ok,
                      instances=[f"{lab}({m},{n})" for lab, m, n in instances])

    checks = _map_jobs(job, sorted(table.items(),
                                   key=lambda kv: mo._node_sort_key(kv[0])))

    def neg_job(wt):
        res = sv.classify(wt, (1, 2, 3), cross_check=False)
        empty = all(res[d].kernel_dim == 0 for d in (1, 2, 3))
        return _check(f"off-list {_wt_name(wt)}", empty)

    checks += _map_jobs(neg_job,
                        _negative_weights(args.max_mn, args.negatives,
                                          args.seed))
    return _finish(args, checks, t0, {"seed": args.seed})


# ---------------------------------------------------------------------------
# complexes
# ---------------------------------------------------------------------------


def cmd_complexes(args) -> int:
    t0 = time.time()
    graph = mo.build_complex_graph(args.max_mn)
    checks = [
        _check("duality-involution", mo.duality_is_involution(graph),
               nodes=len(graph.nodes), edges=len(graph.edges)),
        _check("supertrace-t", mo.supertrace_ad({(1, 0): ONE}) == scal(2)),
        _check("supertrace-C", mo.supertrace_ad({an.CKEY: ONE}).is_zero()),
    ]

    cache = {}

    def morphism(e):
        key = (e.label, e.params)
        if key not in cache:
            cache[key] = mo.morphism_from_family(e.label, *e.params)
        return cache[key]

    bad = []
    npaths = 0
    for first, second in mo.two_paths(graph):
        npaths += 1
        if not mo.compose_is_zero(morphism(second), morphism(first)):
            bad.append((first.label, first.params, second.label,
                        second.params))
    checks.append(_check("two-path-compositions-vanish", not bad,
                         paths=npaths, counterexamples=bad[:5]))

    json_path = args.out or "graph.json"
    dot_path = os.path.splitext(json_path)[0] + ".dot"
    with open(json_path, "w") as fh:
        fh.write(mo.graph_to_json(graph) + "\n")
    with open(dot_path, "w") as fh:
        fh.write(mo.graph_to_dot(graph) + "\n")

    report = {
        "command": args.command,
        "options": {"max_mn": args.max_mn},
        "checks": checks,
        "ok": all(c["ok"] for c in checks),
        "files": {"json": json_path, "dot": dot_path},
        "elapsed_s": round(time.time() - t0, 3),
    }
    print(json.dumps(report, indent=2))
    return 0 if report["ok"] else 1


# ---------------------------------------------------------------------------
# coadjoint
# ---------------------------------------------------------------------------


def cmd_coadjoint(args) -> int:
    t0 = time.time()
    iso = co.check_phi_iso(args.max_degree)
    checks = [
        _check("degreewise-bijective", all(iso.bijective),
               dims=list(iso.dims)),
        _check("equivariance-sampled", iso.equivariant),
        _check("linearity", iso.linear),
        _check("iterated-action-nonzero",
               co.iterated_action_hits_dual_basis(3, 4)),
        _check("raising-returns-to-theta-star",
               co.raising_returns_to_theta_star(3)),
        _check("t-scales-theta-star",
               co.coadjoint_act({(1, 0): ONE}, dict(co.THETA_STAR))
               == {(0, 0): scal(-4)}),
    ]
    no_sing = all(sv.solve(co.WT_COADJOINT, d).kernel_dim == 0
                  for d in (1, 2, 3))
    checks.append(_check("module-has-no-singular-vectors", no_sing))
    return _finish(args, checks, t0)


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="k4verma",
        description="exact checks for the rank-four conformal superalgebra, "
                    "its induced modules and their singular vectors")
    sub = p.add_subparsers(dest="command", required=True)

    ax = sub.add_parser("axioms", help="algebra-level identities")
    ax.add_argument("--max-tpow", type=int, default=3)
    ax.add_argument("--max-dpow", type=int, default=2)
    ax.add_argument("--corrupt-cocycle", action="store_true",
                    help="negative control: perturb the 2-cocycle")
    ax.add_argument("--out")
    ax.set_defaults(func=cmd_axioms)

    se = sub.add_parser("search", help="singular vectors at one weight")
    se.add_argument("--weight", type=_parse_weight, required=True,
                    metavar="M,N,MT,MC",
                    help="labels m n and rationals mu_t mu_C (as p/q)")
    se.add_argument("--degree", type=int, required=True)
    se.add_argument("--dual-path", action="store_true")
    se.add_argument("--out")
    se.set_defaults(func=cmd_search)

    vt = sub.add_parser("verify-theorems", help="sweep the classification")
    vt.add_argument("--max-mn", type=int, default=3)
    vt.add_argument("--negatives", type=int, default=10)
    vt.add_argument("--seed", type=int, default=20260826)
    vt.add_argument("--out")
    vt.set_defaults(func=cmd_verify_theorems)

    cx = sub.add_parser("complexes", help="morphism graph and compositions")
    cx.add_argument("--max-mn", type=int, default=2)
    cx.add_argument("--out", help="JSON path (DOT lands next to it)")
    cx.set_defaults(func=cmd_complexes)

    ca = sub.add_parser("coadjoint", help="restricted-dual identification")
    ca.add_argument("--max-degree", type=int, default=6)
    ca.add_argument("--out")
    ca.set_defaults(func=cmd_coadjoint)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
