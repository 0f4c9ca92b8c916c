"""Batch front end: `zmono verify <suite>` and `zmono show <what>`."""
import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from math import gcd

STATUSES = ("pass", "fail", "inconclusive", "exploratory")
SUITES = ("identities", "determinants", "automorphism", "gcr", "fock", "basis")
BASIS_SETS = {3: "G1", 4: "R1", 5: "K1"}
TWIST_MODULUS = 6930   # lcm of m = 10, 14, 18, 22 used by the determinant registry


@dataclass
class CheckReport:
    check_id: str
    status: str
    expected: str
    actual: str
    params: dict = field(default_factory=dict)
    runtime_ms: int = 0

    def to_dict(self):
        return asdict(self)


def dump_reports(reports):
    return json.dumps([r.to_dict() for r in reports], indent=2, ensure_ascii=False) + "\n"


def load_reports(text):
    return [CheckReport(**d) for d in json.loads(text)]


def _timed(check_id, fn, params):
    """Run fn() -> (status, expected, actual[, extra params]) into a CheckReport."""
    t = time.perf_counter()
    try:
        out = fn()
    except Exception as exc:   # a crashing check is a failing check, with the error as evidence
        from .fock import Inconclusive, TruncationError
        status = "inconclusive" if isinstance(exc, (Inconclusive, TruncationError)) else "fail"
        out = (status, "completes", "%s: %s" % (type(exc).__name__, exc))
    status, expected, actual = out[:3]
    params = dict(params, **(out[3] if len(out) > 3 else {}))
    ms = int(round(1000 * (time.perf_counter() - t)))
    return CheckReport(check_id, status, str(expected), str(actual), params, ms)


def _series_check(named, N):
    """All series in `named` (list of (label, series)) agree to q^N."""
    from .qseries import series_equal
    label0, ref = named[0]
    for label, ser in named[1:]:
        ok, k = series_equal(ref, ser, N)
        if not ok:
            return ("fail", " = ".join(l for l, _ in named),
                    "%s and %s differ first at q^%d: %d vs %d" % (label0, label, k, ref[k], ser[k]))
    return "pass", " = ".join(l for l, _ in named), "equal to q^%d" % N


# ---------------------------------------------------------------- suites

def suite_identities(args):
    from .partitions import genfun, nandi_series
    from .qseries import a9_products, inverse_residues, principal_character, rr_sum_side, series_equal
    N = args.order or 60
    out = []
    rr = {1: (1, 4), 2: (2, 3)}
    for v, res in rr.items():
        out.append(_timed("rr.%d" % v, lambda v=v, res=res: _series_check(
            [("sum side %d" % v, rr_sum_side(v, N)),
             ("1/(q^%d,q^%d;q^5)" % res, inverse_residues(res, 5, N))], N), {"order": N}))
    for i in (1, 2):
        res = (i, 5 - i)
        out.append(_timed("chain.R%d" % i, lambda i=i, res=res: _series_check(
            [("genfun(R%d)" % i, genfun("R%d" % i, N)),
             ("genfun(T(5;%d,%d))" % res, genfun("T(5;{%d,%d})" % res, N)),
             ("chi(4,%d)" % (2 * i - 1), principal_character(4, 2 * i - 1, N))], N), {"order": N}))
    for i in (1, 2):
        res = (2 * i - 1, 4, 9 - 2 * i)
        out.append(_timed("chain.G%d" % i, lambda i=i, res=res: _series_check(
            [("genfun(G%d)" % i, genfun("G%d" % i, N)),
             ("genfun(T(8;%d,%d,%d))" % res, genfun("T(8;{%d,%d,%d})" % res, N)),
             ("chi(3,%d)" % (2 * i - 1), principal_character(3, 2 * i - 1, N))], N), {"order": N}))
    prods = a9_products(N)
    for i in (1, 2, 3):
        n = 2 * i - 1
        out.append(_timed("chain.K%d" % i, lambda i=i, n=n: _series_check(
            [("genfun(K%d)" % i, genfun("K%d" % i, N, k3_reading=args.k3_reading)),
             ("printed product %d" % n, prods[n]),
             ("chi(5,%d)" % n, principal_character(5, n, N))], N),
            {"order": N, "k3_reading": args.k3_reading}))
    M = max(N, 100)
    prods_m = a9_products(M)
    for n in (1, 3, 5):
        out.append(_timed("char.a9.%d" % n, lambda n=n: _series_check(
            [("chi(5,%d)" % n, principal_character(5, n, M)), ("printed product %d" % n, prods_m[n])],
            M), {"order": M}))

    def nandi(n):
        hits = []
        for n6 in ("exact", "subword"):
            for floor in (1, 2, 3):
                ok, k = series_equal(nandi_series(N, n6, floor), principal_character(6, n, N), N)
                hits.append("%s/floor%d:%s" % (n6, floor, "match" if ok else "q^%d" % k))
        return "exploratory", "genfun(N) = chi(6,%d)" % n, ", ".join(hits)
    for n in (1, 3, 5):
        out.append(_timed("nandi.%d" % n, lambda n=n: nandi(n), {"order": N}))
    return out


def suite_determinants(args):
    from . import gcr
    out = []
    for case in gcr.REGISTRY:
        def run(case=case):
            r = gcr.check_determinant(case.case_id, twist=args.twist, phase=args.delta_phase)
            actual = r["determinant"]
            if r["failures"]:
                actual += "; failing instance %s" % (r["failures"][0],)
            if r["cofactor_agrees"] is False:
                return "fail", r["expected"], actual + "; cofactor expansion disagrees"
            return r["verdict"], r["expected"], actual, {
                "instances": r["instances"], "printed": r["printed"], "twist": r["twist"]}
        out.append(_timed(case.case_id, run, {"delta_phase": args.delta_phase}))

    def twist():
        c = gcr.find_twist()
        if c is None:
            return "fail", "some admissible twist", "no twist reconciles the printed values"
        return "pass", "some admissible twist", "c = %d" % c, {"chosen_twist": c}
    out.append(_timed("twist", twist, {}))
    return out


def suite_automorphism(args):
    from .rootsystem import (RootContext, c_set, orbit, order, pairing, table1, table1_mismatches)
    out = []
    for s in ([args.s] if args.s else [3, 4, 5, 6]):
        R = RootContext(s)
        m = R.m
        out.append(_timed("nu.order.s%d" % s, lambda R=R: (
            "pass" if order(R, R.nu) == R.m else "fail", R.m, order(R, R.nu)), {"s": s}))

        def half(R=R):
            bad = [i for i in range(1, R.rank + 1) if R.nu_pow(R.alpha(i), 2 * R.s - 1) != -R.alpha(i)]
            return ("pass" if not bad else "fail", "nu^%d = -id" % (2 * R.s - 1),
                    "holds" if not bad else "fails on a%d" % bad[0])
        out.append(_timed("nu.half_turn.s%d" % s, half, {"s": s}))

        def form(R=R):
            bad = [(i, j) for i in range(1, R.rank + 1) for j in range(1, R.rank + 1)
                   if pairing(R, R.nu(R.alpha(i)), R.nu(R.alpha(j))) != R.cartan[i - 1][j - 1]]
            return ("pass" if not bad else "fail", "<nu a_i, nu a_j> = <a_i, a_j>",
                    "holds" if not bad else "fails at %s" % (bad[0],))
        out.append(_timed("nu.form.s%d" % s, form, {"s": s}))

        def tab(R=R):
            bad = table1_mismatches(R)
            rows = len(table1(R))
            if bad:
                p, g1, gs, v1, vs = bad[0]
                return "fail", "closed forms", "row nu^%d: got %s, %s; table %s, %s" % (p, g1, gs, v1, vs)
            return "pass", "closed forms", "all %d rows reproduced" % rows
        out.append(_timed("table1.s%d" % s, tab, {"s": s}))

        def orbits(R=R):
            seen = [set(orbit(R, r)) for r in R.phi_prime]
            sizes = [len(o) for o in seen]
            union = set().union(*seen)
            ok = (len(seen) == R.s and all(x == R.m for x in sizes) and sum(sizes) == len(union)
                  and union == set(R.roots()))
            return ("pass" if ok else "fail", "%d disjoint orbits of size %d covering Phi" % (R.s, R.m),
                    "sizes %s, union %d of %d roots" % (sizes, len(union), len(R.roots())))
        out.append(_timed("orbits.s%d" % s, orbits, {"s": s}))

        def csets(R=R, m=m):
            a1, a_s = R.alpha(1), R.alpha(R.s)
            want = {"C-1(a1,a1)": {2, m - 2}, "C-1(a1,as)": {2 * R.s - 4, m - 1},
                    "C-1(as,as)": {n for n in range(1, m, 2) if n != 2 * R.s - 1}}
            got = {"C-1(a1,a1)": c_set(R, a1, a1, -1), "C-1(a1,as)": c_set(R, a1, a_s, -1),
                   "C-1(as,as)": c_set(R, a_s, a_s, -1)}
            bad = [k for k in want if want[k] != got[k]]
            return ("pass" if not bad else "fail", "printed C_-1 sets",
                    "all agree" if not bad else "%s = %s" % (bad[0], sorted(got[bad[0]])))
        out.append(_timed("cset.s%d" % s, csets, {"s": s}))
    return out


def suite_gcr(args):
    from .fock import calibrated_model, gcr_check
    s = args.s or 3
    cap = args.degree_cap if args.degree_cap is not None else 8
    W = args.window
    params = {"s": s, "cap": cap, "window": W, "delta_phase": args.delta_phase}
    model = None
    out = []
    from .rootsystem import RootContext
    R = RootContext(s)
    pairs = [(R.alpha(1), R.alpha(1)), (R.alpha(1), R.alpha(s)), (R.alpha(s), R.alpha(s))]
    for x, y in pairs:
        def run(x=x, y=y):
            nonlocal model
            if model is None:
                model = calibrated_model(s, cap=cap + 2 * W)
            for a in range(-W, W + 1):
                for b in range(-W, W + 1):
                    if not gcr_check(model, x, y, a, b, cap=cap, phase=args.delta_phase):
                        return ("fail", "relation vanishes on W_<=%d" % cap,
                                "nonzero at bidegree (%d, %d)" % (a, b))
            return "pass", "relation vanishes on W_<=%d" % cap, "%d bidegrees" % (2 * W + 1) ** 2
        out.append(_timed("gcr.%s.%s" % (R.name(x), R.name(y)), run, params))
    return out


def suite_fock(args):
    from .fock import (CalibrationError, FockModel, calibrate, membership_cases, run_membership,
                       straightening_a9, tensor_counterexample, vacuum_character, vacuum_dim)
    s = args.s or 5
    cap = args.degree_cap if args.degree_cap is not None else (12 if s == 5 else 10)
    params = {"s": s, "cap": cap}
    out = []
    state = {}

    def cal():
        model = FockModel(s, cap=cap)
        try:
            scalars, info = calibrate(s, cap=4, model=model)
        except CalibrationError as exc:
            return "fail", "consistent scalars", str(exc)
        state["model"] = model.with_scalars(scalars)
        ratios = ", ".join("%s:%s" % (model.rctx.name(b), r) for b, r in info["ratios"].items())
        return "pass", "consistent scalars", "scale %s; c1/c0 %s" % (info["scale"], ratios)
    out.append(_timed("fock.calibrate", cal, params))
    if "model" not in state:
        return out
    model = state["model"]

    def vac():
        d_max = min(cap, 6)
        want = vacuum_character(model.rctx, d_max).coeffs
        got = [vacuum_dim(model, d) for d in range(d_max + 1)]
        return "pass" if got == list(want) else "fail", list(want), got
    out.append(_timed("fock.vacuum_dim", vac, params))
    for b in model.rctx.phi_prime:
        def van(b=b):
            bad = tensor_counterexample(model, b, cap)
            if bad:
                return "fail", "Z_i = 0 for i of the vanishing parity", "Z_%d nonzero on W_%d" % bad
            return "pass", "Z_i = 0 for i of the vanishing parity", "zero on W_<=%d" % cap
        out.append(_timed("fock.vanish.%s" % model.rctx.name(b), van, params))
    if s == 5:
        def straight():
            r = straightening_a9(model, twist=args.twist)
            status = "pass" if r["ok"] else "fail"
            return status, "(%s, %s)" % tuple(r["printed"]), "(%s, %s) unique=%s" % (
                r["c1"], r["c2"], r["unique"]), {"twist": args.twist}
        out.append(_timed("fock.straightening", straight, params))
    for cid, case in membership_cases().items():
        if case.s != s:
            continue

        def mem(cid=cid):
            r = run_membership(cid)
            bad = [x for x in r["instances"] if not x["ok"]]
            if bad:
                return "fail", r["statement"], "outside the span at %s (degree %d)" % (
                    bad[0]["params"], bad[0]["degree"])
            return "pass", r["statement"], "; ".join(
                "%s: %s" % (x["params"], "zero vector" if x.get("zero") else "rank %s" % x.get("rank"))
                for x in r["instances"])
        out.append(_timed("fock.member.%s" % cid, mem, {"s": s}))
    return out


def suite_basis(args):
    from .fock import partition_words, shared_model, span_rank
    from .partitions import predicate
    from .qseries import principal_character
    s = args.s or 5
    cap = args.degree_cap if args.degree_cap is not None else 10
    out = []
    if s not in BASIS_SETS:
        out.append(CheckReport("basis.s%d" % s, "inconclusive", "s in {3, 4, 5}",
                               "no sum-side set registered for s = %d" % s, {"s": s}))
        return out
    sid = BASIS_SETS[s]
    state = {}

    def model():
        if "m" not in state:
            state["m"] = shared_model(s, cap)
        return state["m"]
    want = principal_character(s, 1, cap).coeffs
    keep = predicate(sid)
    params = {"s": s, "set": sid, "cap": cap}

    def compare(label, fn):
        got = [fn(d) for d in range(cap + 1)]
        bad = [d for d in range(cap + 1) if got[d] != want[d]]
        if bad:
            d = bad[0]
            return "fail", list(want), "%s at d=%d: %d vs %d" % (label, d, got[d], want[d])
        return "pass", list(want), got
    out.append(_timed("basis.%s.count" % sid, lambda: compare(
        "count", lambda d: len(partition_words(d, keep=keep))), params))
    out.append(_timed("basis.%s.restricted" % sid, lambda: compare(
        "rank", lambda d: span_rank(model(), partition_words(d, keep=keep), d)), params))
    out.append(_timed("basis.%s.unrestricted" % sid, lambda: compare(
        "rank", lambda d: span_rank(model(), partition_words(d), d)), params))
    out.append(CheckReport("basis.higher_i", "exploratory", "i >= 2 bases",
                           "out of scope: highest weight vectors of L(Lambda^(2i-1)) for i >= 2 "
                           "are not identified in the model", {"s": s}))
    return out


SUITE_FUNCS = {
    "identities": suite_identities,
    "determinants": suite_determinants,
    "automorphism": suite_automorphism,
    "gcr": suite_gcr,
    "fock": suite_fock,
    "basis": suite_basis,
}


def run_suite(name, args):
    names = SUITES if name == "all" else (name,)
    reports = []
    for n in names:
        reports.extend(SUITE_FUNCS[n](args))
    return reports


def exit_code(reports):
    return 1 if any(r.status == "fail" for r in reports) else 0


def format_table(reports):
    width = max([len(r.check_id) for r in reports] + [8])
    lines = []
    for r in reports:
        lines.append("%-12s %-*s %7d ms  %s" % (r.status.upper(), width, r.check_id, r.runtime_ms, r.actual))
        if r.status == "fail":
            lines.append("%-12s %-*s            expected %s" % ("", width, "", r.expected))
    counts = {st: sum(1 for r in reports if r.status == st) for st in STATUSES}
    lines.append(", ".join("%d %s" % (counts[st], st) for st in STATUSES))
    return "\n".join(lines)


def cmd_verify(args):
    if args.twist < 1 or gcd(args.twist, TWIST_MODULUS) != 1:
        args.parser.error("--twist must be a positive integer coprime to %d" % TWIST_MODULUS)
    reports = run_suite(args.suite, args)
    print(format_table(reports))
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(dump_reports(reports))
    return exit_code(reports)


# ---------------------------------------------------------------- show

def cmd_show(args):
    from .rootsystem import RootContext
    s = args.s or 5
    if args.what == "table1":
        from .rootsystem import table1
        R = RootContext(s)
        print("%-8s %-22s %-22s" % ("", "nu^p(a1)", "nu^p(a%d)" % s))
        for p, v1, vs, l1, ls in table1(R):
            ok = R.nu_pow(R.alpha(1), p) == v1 and R.nu_pow(R.alpha(s), p) == vs
            print("%-8s %-22s %-22s %s" % ("nu^%d" % p if p else "id", l1, ls, "ok" if ok else "MISMATCH"))
    elif args.what == "coeff":
        from .laurent import c_coeff
        R = RootContext(s)
        print(c_coeff(R, R.parse_root(args.alpha), R.parse_root(args.beta), args.n, k=args.k))
    elif args.what == "char":
        from .qseries import principal_character
        order = args.order or 20
        print(" ".join(str(c) for c in principal_character(s, args.n, order - 1).coeffs))
    elif args.what == "genfun":
        from .partitions import genfun
        order = args.order or 20
        ser = genfun(args.set, order - 1, k3_reading=args.k3_reading) if args.set.startswith("K") \
            else genfun(args.set, order - 1)
        print(" ".join(str(c) for c in ser.coeffs))
    elif args.what == "orbit":
        from .rootsystem import orbit, representative
        R = RootContext(s)
        root = R.parse_root(args.root)
        rep, p = representative(R, root)
        print("representative %s, nu^%d" % (R.name(rep), p))
        for q, v in enumerate(orbit(R, root)):
            print("nu^%-3d %s" % (q, list(v)))
    return 0


def build_parser():
    ap = argparse.ArgumentParser(prog="zmono", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=SUITES + ("all",))
    v.add_argument("--s", type=int, default=None, help="rank parameter (default 5; gcr 3; automorphism 3..6)")
    v.add_argument("--order", type=int, default=None, help="q-series truncation order (default 60)")
    v.add_argument("--degree-cap", type=int, default=None, help="Fock degree cap")
    v.add_argument("--json", default=None, metavar="PATH", help="write the reports as JSON")
    v.add_argument("--twist", type=int, default=1, help="Galois twist w -> w^c")
    v.add_argument("--delta-phase", choices=("derived", "paper"), default="derived")
    v.add_argument("--window", type=int, default=4, help="gcr bidegree window |a|, |b| <= W")
    v.add_argument("--k3-reading", choices=("all_windows", "verbatim"), default="all_windows")
    v.set_defaults(func=cmd_verify, parser=v)
    sh = sub.add_parser("show", help="print a table or series")
    sh.add_argument("what", choices=("table1", "coeff", "char", "genfun", "orbit"))
    sh.add_argument("--s", type=int, default=None)
    sh.add_argument("--n", type=int, default=1)
    sh.add_argument("--k", type=int, default=2)
    sh.add_argument("--order", type=int, default=None)
    sh.add_argument("--alpha", default="a1")
    sh.add_argument("--beta", default="a1")
    sh.add_argument("--root", default="a1")
    sh.add_argument("--set", default="K1")
    sh.add_argument("--k3-reading", choices=("all_windows", "verbatim"), default="all_windows")
    sh.set_defaults(func=cmd_show, parser=sh)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    for name in ("s", "order", "degree_cap"):
        val = getattr(args, name, None)
        if val is not None and val < (3 if name == "s" else 0):
            args.parser.error("--%s out of range" % name.replace("_", "-"))
    if args.command == "verify" and args.window < 0:
        args.parser.error("--window must be non-negative")
    try:
        return args.func(args)
    except ValueError as exc:
        args.parser.error(str(exc))


if __name__ == "__main__":
    sys.exit(main())
