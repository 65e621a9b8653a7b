"""Command-line front end: verify one prime, scan a range, run the fixture suite.

Exit codes: 0 all checks match, 1 mismatch, 2 inconclusive (a search bound
was exhausted), 3 unsupported case, 64 usage error.
"""
import argparse
import csv
import hashlib
import io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .errors import BoundExceeded, KummerError
from .exact_arith import is_prime

SCHEMA_VERSION = "1"
EXIT_OK, EXIT_MISMATCH, EXIT_INCONCLUSIVE, EXIT_UNSUPPORTED, EXIT_USAGE = 0, 1, 2, 3, 64
MAX_PRIME = 100000


def toolkit_version():
    try:
        from importlib.metadata import version
        return version("artifact")
    except Exception:
        return "0.1.0"


# ---------------------------------------------------------------- unit cache

def _frac_list(coeffs):
    return [str(Fraction(c)) for c in coeffs]


def _record_checksum(rec):
    body = json.dumps({k: rec[k] for k in sorted(rec) if k != "checksum"}, sort_keys=True)
    return hashlib.sha256(body.encode()).hexdigest()


class UnitCache:
    """Append-only file of eps / pi / eta per prime, one JSON record per line.

    Records carry a checksum and are revalidated on load: eps must be a unit,
    pi^2 = 2 eps and eta must have relative norm eps.  Bad or torn lines are
    skipped.
    """

    def __init__(self, path):
        self.path = path
        self.entries = {}
        self.rejected = 0
        if path and os.path.exists(path):
            self._load()

    def _load(self):
        with open(self.path, encoding="utf-8") as fh:
            for line in fh:
                try:
                    rec = json.loads(line)
                except ValueError:
                    self.rejected += 1
                    continue
                if rec.get("checksum") != _record_checksum(rec):
                    self.rejected += 1
                    continue
                try:
                    units = self._revalidate(rec)
                except (KummerError, ValueError, KeyError, TypeError, ZeroDivisionError):
                    units = None
                if units is None:
                    self.rejected += 1
                    continue
                self.entries[units["p"]] = units

    @staticmethod
    def _revalidate(rec):
        from .quad_field import QuadElement
        from .radical_orders import RadicalElement
        p = int(rec["p"])
        X, Y = (int(x) for x in rec["eps"])
        eps = QuadElement(X, Y, p)
        if abs(eps.norm()) != 1 or not eps.is_integral():
            return None
        out = {"p": p, "eps": eps}
        if rec.get("pi") is not None:
            X, Y = (int(x) for x in rec["pi"])
            pi = QuadElement(X, Y, p)
            if pi * pi != eps * 2:
                return None
            out["pi"] = pi
        if rec.get("eta") is not None:
            eta = RadicalElement(4, tuple(Fraction(c) for c in rec["eta"]), p)
            if eta.relative_norm() != eps or abs(eta.norm()) != 1:
                return None
            out["eta"] = eta
        return out

    def get(self, p):
        return self.entries.get(p)

    def put(self, p, eps, pi=None, eta=None):
        rec = {"p": str(p), "eps": [str(eps.X), str(eps.Y)],
               "pi": [str(pi.X), str(pi.Y)] if pi is not None else None,
               "eta": _frac_list(eta.coeffs) if eta is not None else None}
        rec["checksum"] = _record_checksum(rec)
        self.entries[p] = {"p": p, "eps": eps, **({"pi": pi} if pi is not None else {}),
                           **({"eta": eta} if eta is not None else {})}
        if self.path:
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(rec, sort_keys=True) + "\n")


# ---------------------------------------------------------------- per-prime pipeline

def _strings(v):
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, int):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_strings(x) for x in v]
    if isinstance(v, dict):
        return {k: _strings(x) for k, x in v.items()}
    return v


def _unit_checks(p, tag, cfg, cached):
    """eps, pi, eta and the quartic principality verdict (ell = 2 only).

    Returns (section, new units to cache or None, status) where status is
    "ok", "mismatch" or "inconclusive".
    """
    from .quad_field import dyadic_generator, fundamental_unit
    from .radical_orders import (eta_is_not_degenerate, norm_two_principality, radical_congruence,
                                 relative_unit, trace_valuation)
    sec, status = {}, "ok"
    if p == 2:
        return sec, None, status
    eps = cached["eps"] if cached else fundamental_unit(p)
    sec["eps"] = [eps.x, eps.y]
    pi = None
    if p % 8 == 7:
        pi = cached.get("pi") if cached else None
        pi = pi or dyadic_generator(p, eps)
        sec["pi"] = [pi.x, pi.y]
    eta = cached.get("eta") if cached else None
    if tag == "7 mod 16" and cfg["bound_eta"] > 0:
        try:
            eta = eta or relative_unit(p, eps, bound=cfg["bound_eta"])
            tv = trace_valuation(eta, pi)
            cong = radical_congruence(eta)
            sec["eta"] = [c for c in eta.coeffs]
            sec["eta_trace_valuation"] = tv
            sec["eta_congruence"] = cong
            sec["eta_not_degenerate"] = eta_is_not_degenerate(eta, eps)
            if tv != 3 or not cong:
                status = "mismatch"
        except BoundExceeded as e:
            sec["eta"] = "Inconclusive: %s" % e
            status = "inconclusive"
    if tag in ("3 mod 8", "5 mod 8", "7 mod 16") and cfg["bound_principality"] > 0:
        want = "NonPrincipal" if tag == "7 mod 16" else "Principal"
        try:
            v = norm_two_principality(p, 4, tmax=cfg["bound_principality"]).status
        except BoundExceeded:
            v = "Inconclusive"
        sec["principality_deg4"] = v
        if v == "Inconclusive" and status == "ok":
            status = "inconclusive"
        elif v != want:
            status = "mismatch"
    new = None
    if not cached or (eta is not None and "eta" not in cached):
        new = (eps, pi, eta)
    return sec, new, status


def _fmt_value(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_fmt_value(x) for x in v]
    if isinstance(v, dict):
        return {k: _fmt_value(x) for k, x in v.items()}
    return v


def verify_prime(p, ell, cfg, cached=None):
    """Run the full pipeline for one prime.  Returns (report dict, exit code, units to cache)."""
    from .fixtures import EXPECTED_CLAIMS
    from .tower_logic import FactOptions, classify, collect_facts, derive
    t0 = time.perf_counter()
    case = classify(p, ell)
    report = {"schema_version": SCHEMA_VERSION, "p": str(p), "ell": str(ell), "case": str(case),
              "version": toolkit_version(),
              "config": {k: str(v) for k, v in sorted(cfg.items())}}
    new_units = None
    if not case.supported:
        report.update(status="unsupported", facts=[], claims=[], assumed=[], mismatches=[])
        report["timings"] = {"total_s": round(time.perf_counter() - t0, 4)}
        return report, EXIT_UNSUPPORTED, None
    opts = FactOptions(principality=cfg["bound_principality"] > 0, class_group=True,
                       bound_principality=cfg["bound_principality"])
    status = "ok"
    try:
        facts = collect_facts(p, ell, opts)
    except BoundExceeded as e:
        report.update(status="inconclusive", facts=[], claims=[], assumed=[],
                      mismatches=[{"step": "collect_facts", "detail": str(e)}])
        report["timings"] = {"total_s": round(time.perf_counter() - t0, 4)}
        return report, EXIT_INCONCLUSIVE, None
    claims, mism = derive(facts, case)
    mismatches = []
    for step, key, want, got in mism:
        inconclusive = got == "Inconclusive"
        mismatches.append({"step": step, "fact": key, "expected": _strings(want), "got": _strings(got),
                           "inconclusive": inconclusive})
        if not inconclusive:
            status = "mismatch"
        elif status == "ok":
            status = "inconclusive"
    have = {c.cid: c.status for c in claims}
    for cid, want in EXPECTED_CLAIMS[case.tag].items():
        if have.get(cid) != want:
            mismatches.append({"step": cid, "fact": None, "expected": want, "got": have.get(cid)})
            if status != "inconclusive":
                status = "mismatch"
    if ell == 2:
        sec, new_units, ustat = _unit_checks(p, case.tag, cfg, cached)
        report["units"] = _strings(_fmt_value(sec))
        if ustat == "mismatch":
            status = "mismatch"
            mismatches.append({"step": "units", "fact": None, "expected": "Thm units", "got": ustat})
        elif ustat == "inconclusive" and status == "ok":
            status = "inconclusive"
    report["facts"] = [{"kind": f.kind, "key": f.key, "value": _strings(f.value),
                        "provenance": f.provenance} for f in facts]
    report["claims"] = [c.to_record() for c in claims]
    report["assumed"] = [f.key for f in facts if f.kind == "Assumed"]
    report["mismatches"] = mismatches
    report["status"] = status
    report["timings"] = {"total_s": round(time.perf_counter() - t0, 4)}
    code = {"ok": EXIT_OK, "mismatch": EXIT_MISMATCH, "inconclusive": EXIT_INCONCLUSIVE}[status]
    return report, code, new_units


def _worker(args):
    p, ell, cfg, cached = args
    report, code, new = verify_prime(p, ell, cfg, cached)
    return p, report, code, new


def scan_range(lo, hi, ell, cfg, jobs=1, cache=None):
    primes = [p for p in range(max(lo, 2), hi + 1) if is_prime(p)]
    tasks = [(p, ell, cfg, cache.get(p) if cache else None) for p in primes]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_worker, tasks))
    else:
        results = [_worker(t) for t in tasks]
    reports, counts = [], {}
    mism, inconc = [], []
    for p, rep, code, new in sorted(results, key=lambda r: r[0]):
        reports.append(rep)
        counts[rep["case"]] = counts.get(rep["case"], 0) + 1
        if code == EXIT_MISMATCH:
            mism.append(str(p))
        elif code == EXIT_INCONCLUSIVE:
            inconc.append(str(p))
        if cache is not None and new is not None:
            cache.put(p, *new)
    agg = {"schema_version": SCHEMA_VERSION, "ell": str(ell), "range": [str(lo), str(hi)],
           "primes": str(len(primes)), "case_counts": {k: str(v) for k, v in sorted(counts.items())},
           "mismatches": mism, "inconclusive": inconc, "version": toolkit_version(),
           "reports": reports}
    code = EXIT_MISMATCH if mism else (EXIT_INCONCLUSIVE if inconc else EXIT_OK)
    return agg, code


def run_selftest(out=sys.stdout):
    from .fixtures import FIXTURES
    failed = 0
    for name, fn in FIXTURES:
        try:
            ok, detail = fn()
        except Exception as e:      # a crashing fixture is a drift too
            ok, detail = False, "%s: %s" % (type(e).__name__, e)
        failed += not ok
        out.write("%s  %s  (%s)\n" % ("PASS" if ok else "FAIL", name, detail))
    out.write("%d/%d fixtures passed\n" % (len(FIXTURES) - failed, len(FIXTURES)))
    return EXIT_OK if failed == 0 else EXIT_MISMATCH


# ---------------------------------------------------------------- output

CSV_FIELDS = ["p", "ell", "case", "status", "claims", "mismatches", "assumed", "total_s"]


def _csv_row(rep):
    return {"p": rep["p"], "ell": rep["ell"], "case": rep["case"], "status": rep["status"],
            "claims": ";".join("%s=%s" % (c["id"], c["status"]) for c in rep["claims"]),
            "mismatches": ";".join(str(m.get("fact") or m.get("step")) for m in rep["mismatches"]),
            "assumed": ";".join(rep["assumed"]), "total_s": rep["timings"]["total_s"]}


def render(obj, fmt):
    if fmt == "json":
        return json.dumps(obj, indent=2, sort_keys=True) + "\n"
    reports = obj["reports"] if "reports" in obj else [obj]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
        w.writeheader()
        for r in reports:
            w.writerow(_csv_row(r))
        return buf.getvalue()
    lines = []
    for r in reports:
        lines.append("p = %s, ell = %s: %s [%s]" % (r["p"], r["ell"], r["case"], r["status"]))
        for c in r["claims"]:
            extra = " (assuming %s)" % ", ".join(c["assumptions"]) if c["assumptions"] else ""
            lines.append("  %-11s %s%s" % (c["status"], c["statement"], extra))
        for m in r["mismatches"]:
            lines.append("  MISMATCH  %s" % json.dumps(m, sort_keys=True))
    if "reports" in obj:
        lines.append("primes: %s, mismatches: %s, inconclusive: %s" % (
            obj["primes"], obj["mismatches"] or "none", obj["inconclusive"] or "none"))
        for k, v in obj["case_counts"].items():
            lines.append("  %-26s %s" % (k, v))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- argument parsing

class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _prime_arg(s):
    try:
        p = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError("not an integer: %r" % s)
    if not is_prime(p):
        raise argparse.ArgumentTypeError("%d is not prime" % p)
    if p > MAX_PRIME:
        raise argparse.ArgumentTypeError("%d exceeds the maximum %d" % (p, MAX_PRIME))
    return p


def _range_arg(s):
    try:
        a, b = s.split("..")
        lo, hi = int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError("range must look like A..B")
    if lo < 0 or hi > MAX_PRIME:
        raise argparse.ArgumentTypeError("range must lie in 0..%d" % MAX_PRIME)
    return lo, hi


def build_parser():
    ap = _Parser(prog="kummer-tower", description="Class group verification along Kummer towers.")
    sub = ap.add_subparsers(dest="cmd")

    def common(sp):
        sp.add_argument("--ell", type=int, choices=(2, 3), default=2)
        sp.add_argument("--format", choices=("json", "csv", "text"), default="text")
        sp.add_argument("--cache", default=None, help="unit cache file (append-only)")
        sp.add_argument("--bound-eta", type=float, default=4000.0,
                        help="log-size bound for the relative unit scan; 0 skips eta")
        sp.add_argument("--bound-principality", type=float, default=4000.0,
                        help="log-size bound for the quartic unit scan; 0 skips the test")

    v = sub.add_parser("verify", help="verify one prime")
    v.add_argument("--prime", type=_prime_arg, required=True)
    common(v)
    s = sub.add_parser("scan", help="verify every prime in a range")
    s.add_argument("--range", type=_range_arg, required=True, dest="rng")
    s.add_argument("--jobs", type=int, default=1)
    common(s)
    sub.add_parser("selftest", help="run the pinned fixture suite")
    return ap


def main(argv=None, out=None):
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if args.cmd is None:
            raise UsageError("a subcommand is required: verify, scan or selftest")
        if getattr(args, "jobs", 1) < 1:
            raise UsageError("--jobs must be positive")
    except UsageError as e:
        sys.stderr.write("usage error: %s\n" % e)
        return EXIT_USAGE
    if args.cmd == "selftest":
        return run_selftest(out)
    cfg = {"ell": args.ell, "bound_eta": args.bound_eta, "bound_principality": args.bound_principality}
    cache = UnitCache(args.cache) if args.cache else None
    if args.cmd == "verify":
        cached = cache.get(args.prime) if cache else None
        rep, code, new = verify_prime(args.prime, args.ell, cfg, cached)
        if cache is not None and new is not None:
            cache.put(args.prime, *new)
        out.write(render(rep, args.format))
        return code
    lo, hi = args.rng
    agg, code = scan_range(lo, hi, args.ell, cfg, args.jobs, cache)
    out.write(render(agg, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
