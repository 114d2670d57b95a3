"""Command-line front end.

    jensenlab xi-coeffs --order 40 --prec 256 --method both
    jensenlab verify {t3,t4,corollary,bounds,squaring,gauss-lucas} ...
    jensenlab scan {grid,theorem2} ...

Settings come from flags, then an optional ``--config`` file of flat
``key = value`` lines, then defaults.  ``JENSENLAB_CACHE`` overrides the cache
location unless ``--cache-dir`` is given.

Exit codes: 0 all assertions certified, 1 counterexample found,
2 indeterminate results present, 3 usage or configuration error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .numeric import Ball, PrecisionExhausted, as_fraction
from .poly import JetTooShort, RealPoly, TaylorJet
from .roots import Membership, Status
from .specialfn import MethodDisagreement, QuadratureTooCoarse, XiJetRequest, xi_taylor
from .specialfn.cache import default_cache_dir
from .theorems import (
    EMPIRICAL_CAVEAT,
    HypothesisViolation,
    SuiteReport,
    TailBoundUnavailable,
    TrialConfig,
    bound_theorem1,
    bound_theorem4,
    cos_product_jet,
    scan_jensen_grid,
    scan_theorem2,
    theorem4_constants,
    verify_corollary_suite,
    verify_gauss_lucas,
    verify_sector_squaring,
    verify_theorem3,
    verify_theorem4,
    xi0_jet,
)

SCHEMA_VERSION = 1
EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_INDETERMINATE, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


DEFAULTS = {
    "prec": 256,
    "order": None,
    "method": "phi",
    "seed": 0,
    "trials": 100,
    "delta": "1/2",
    "T": "1/2",
    "c": "3/2",
    "n1": 0,
    "d": None,
    "n": None,
    "deg": 6,
    "deg_q": None,
    "radius": "6",
    "trunc": 40,
    "function": None,
    "mode": None,
    "out": None,
    "format": "csv",
    "cache_dir": None,
    "no_cache": False,
}


def _frac(text) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational number: {text!r}") from exc


def _int_range(text, default: tuple) -> tuple:
    """``"3"`` -> (3, 3); ``"1..30"`` -> (1, 30)."""
    if text is None:
        return default
    s = str(text).strip()
    try:
        if ".." in s:
            a, b = s.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(s)
    except ValueError as exc:
        raise UsageError(f"not an integer range: {text!r}") from exc
    if lo > hi or lo < 0:
        raise UsageError(f"bad range {text!r}")
    return lo, hi


@dataclass(frozen=True)
class RunConfig:
    """Validated settings for one invocation."""

    precision_bits: int
    jet_order: Optional[int]
    method: str
    seed: int
    output_path: Optional[Path]
    format: str
    cache_dir: Path
    use_cache: bool = True
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.precision_bits < 64:
            raise UsageError("--prec must be at least 64")
        if self.jet_order is not None and self.jet_order < 2:
            raise UsageError("--order must be at least 2")
        if self.format not in ("csv", "json"):
            raise UsageError("--format must be csv or json")
        if self.method not in ("phi", "factors", "both"):
            raise UsageError("--method must be phi, factors or both")
        if not 0 <= self.seed < 2 ** 64:
            raise UsageError("--seed must be a 64-bit unsigned integer")


def read_config_file(path) -> dict:
    """Flat ``key = value`` file; ``#`` starts a comment; dashes equal underscores."""
    out = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key = value")
        k, v = (p.strip() for p in line.split("=", 1))
        k = k.replace("-", "_")
        if k not in DEFAULTS:
            raise UsageError(f"{path}:{lineno}: unknown key {k!r}")
        out[k] = v
    return out


def _settings(args: argparse.Namespace) -> dict:
    s = dict(DEFAULTS)
    if getattr(args, "config", None):
        s.update(read_config_file(args.config))
    env = os.environ.get("JENSENLAB_CACHE")
    if env:
        s["cache_dir"] = env
    for k in DEFAULTS:
        v = getattr(args, k, None)
        if v is not None and v is not False:
            s[k] = v
    return s


def _run_config(s: dict) -> RunConfig:
    try:
        prec = int(s["prec"])
        order = None if s["order"] is None else int(s["order"])
        seed = int(s["seed"])
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    no_cache = s["no_cache"] in (True, "1", "true", "yes")
    return RunConfig(prec, order, str(s["method"]), seed, Path(s["out"]) if s["out"] else None,
                     str(s["format"]), Path(s["cache_dir"]) if s["cache_dir"] else default_cache_dir(),
                     not no_cache, s)


# ---------------------------------------------------------------------------
# serialization


def mid_decimal(x) -> str:
    """Decimal string that reads back to the same binary midpoint at its precision."""
    p = x.precision
    n = math.ceil(p * math.log10(2)) + 1
    mant, exp, _ = x.digits(10, n)
    if x == 0:
        return "0"
    sign = ""
    if mant.startswith("-"):
        sign, mant = "-", mant[1:]
    mant = mant.rstrip("0") or "0"
    body = mant[0] + ("." + mant[1:] if len(mant) > 1 else "")
    return f"{sign}{body}e{exp - 1}"


def rad_decimal(r, digits: int = 6) -> str:
    """Decimal upper bound on a nonnegative radius with ``digits`` significant figures."""
    q = as_fraction(r)
    if q == 0:
        return "0"
    e = math.floor(math.log10(q.numerator) - math.log10(q.denominator))
    # adjust e so that 10^e <= q < 10^(e+1) exactly
    while Fraction(10) ** e > q:
        e -= 1
    while Fraction(10) ** (e + 1) <= q:
        e += 1
    scale = Fraction(10) ** (digits - 1 - e)
    m = math.ceil(q * scale)
    if m >= 10 ** digits:
        m //= 10
        e += 1
    s = str(m)
    body = s[0] + ("." + s[1:].rstrip("0") if s[1:].rstrip("0") else "")
    return f"{body}e{e}"


def ball_fields(v) -> tuple:
    if isinstance(v, Ball):
        return mid_decimal(v.mid), rad_decimal(v.rad), v.prec
    q = Fraction(v)
    return str(q), "0", "exact"


@dataclass
class Table:
    kind: str
    columns: list
    rows: list = field(default_factory=list)
    comments: list = field(default_factory=list)

    def render(self, fmt: str) -> str:
        if fmt == "json":
            doc = {"schema": f"jensenlab.{self.kind}/{SCHEMA_VERSION}",
                   "comments": self.comments,
                   "columns": self.columns,
                   "rows": [dict(zip(self.columns, map(str, r))) for r in self.rows]}
            return json.dumps(doc, indent=1) + "\n"
        buf = io.StringIO()
        buf.write(f"# schema=jensenlab.{self.kind}/{SCHEMA_VERSION}\n")
        for c in self.comments:
            buf.write(f"# {c}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for r in self.rows:
            w.writerow([str(x) for x in r])
        return buf.getvalue()


def _emit(table: Table, cfg: RunConfig, stdout) -> None:
    text = table.render(cfg.format)
    if cfg.output_path is None:
        stdout.write(text)
        return
    cfg.output_path.parent.mkdir(parents=True, exist_ok=True)
    with open(cfg.output_path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


# ---------------------------------------------------------------------------
# commands


def cmd_xi_coeffs(cfg: RunConfig, stdout) -> int:
    M = cfg.jet_order if cfg.jet_order is not None else 20
    req = XiJetRequest(M=M, prec=cfg.precision_bits, method=cfg.method,
                       cache_dir=cfg.cache_dir, use_cache=cfg.use_cache)
    jet = xi_taylor(req)
    t = Table("xi-coeffs", ["k", "mid", "rad", "method", "prec"],
              comments=[f"function=Xi order={M} prec={cfg.precision_bits} method={cfg.method}",
                        "values enclose the k-th derivative of Xi at 0"])
    for k, v in enumerate(jet.values):
        mid, rad, _ = ball_fields(v)
        t.rows.append([k, mid, rad, cfg.method, cfg.precision_bits])
    _emit(t, cfg, stdout)
    return EXIT_OK


def _suite_table(rep: SuiteReport, params: dict) -> Table:
    t = Table(f"verify-{rep.name}", ["suite", "trials", "checks", "counterexamples", "indeterminate", "status"])
    t.comments.append(" ".join(f"{k}={v}" for k, v in params.items()))
    for k, v in rep.notes.items():
        t.comments.append(f"{k}={v}")
    for ce in rep.counterexamples:
        data = " ".join(f"{k}=[{v}]" for k, v in ce.data.items())
        t.comments.append(f"counterexample trial={ce.trial} reason={ce.reason} {data}")
    status = "PASS" if rep.exit_code == 0 else "FAIL" if rep.exit_code == 1 else "INDETERMINATE"
    t.rows.append([rep.name, rep.trials, rep.checks, len(rep.counterexamples), rep.indeterminate, status])
    return t


def cmd_verify(theorem: str, cfg: RunConfig, stdout) -> int:
    s = cfg.extra
    trials = int(s["trials"])
    base = dict(seed=cfg.seed, trials=trials, prec=cfg.precision_bits)
    if s["mode"]:
        base["mode"] = s["mode"]
    params = {"seed": cfg.seed, "trials": trials}
    if theorem == "bounds":
        return _cmd_bounds(cfg, stdout)
    if theorem == "t3":
        delta = _frac(s["delta"])
        cap = math.floor(1 / (delta * delta))
        dq = _int_range(s["deg_q"], (1, max(1, min(cap, 8))))
        rep = verify_theorem3(TrialConfig(deg_P=(0, int(s["deg"])), deg_Q=dq, delta=delta, **base))
        params.update(delta=delta, deg_P=int(s["deg"]), deg_Q=f"{dq[0]}..{dq[1]}")
    elif theorem == "corollary":
        deg = int(s["deg"])
        rep = verify_corollary_suite(TrialConfig(deg_P=(0, deg), deg_Q=(1, deg + 2), **base))
        params.update(deg_P=deg)
    elif theorem == "t4":
        T = _frac(s["T"])
        rep = verify_theorem4(TrialConfig(T=T, **base))
        params.update(T=T)
    elif theorem == "squaring":
        rep = verify_sector_squaring(TrialConfig(**base))
    elif theorem == "gauss-lucas":
        rep = verify_gauss_lucas(TrialConfig(deg_P=(2, int(s["deg"])), **base))
        params.update(deg_P=int(s["deg"]))
    else:  # argparse restricts the choices
        raise UsageError(f"unknown theorem {theorem!r}")
    _emit(_suite_table(rep, params), cfg, stdout)
    return rep.exit_code


def _sci(n: int) -> str:
    s = str(n)
    return f"{s[0]}.{s[1:3]}e{len(s) - 1}" if len(s) > 3 else s


def _cmd_bounds(cfg: RunConfig, stdout) -> int:
    s = cfg.extra
    T = _frac(s["T"])
    d_xi, d_xi0 = bound_theorem4(T)
    k = theorem4_constants(T)
    t = Table("verify-bounds", ["quantity", "value", "approx"],
              comments=[f"T={T}", "integer bounds are floors of exact rational expressions"])
    t.rows.append(["d_max_xi=floor(1+4T^2)", d_xi, _sci(d_xi)])
    t.rows.append(["d_max_xi0=floor(T^2(1+T^-2/4)^2)", d_xi0, _sci(d_xi0)])
    t.rows.append(["delta^2=(1+4T^2)^-1", k.delta_sq, f"{float(k.delta_sq):.6g}"])
    t.rows.append(["delta_tilde^2=4delta^2(1-delta^2)", k.delta_tilde_sq, f"{float(k.delta_tilde_sq):.6g}"])
    if s["d"] is not None:
        c = _frac(s["c"])
        lo, hi = _int_range(s["d"], (1, 1))
        for d in range(max(lo, 1), hi + 1):
            b = bound_theorem1(c, int(s["n1"]), d)
            t.rows.append([f"N_bound(c={c},n1={s['n1']},d={d})=ceil(max(n1,(d/4)^(c/2)))", b, _sci(b)])
    _emit(t, cfg, stdout)
    return EXIT_OK


def _grid_jet(fn: str, order: int, cfg: RunConfig) -> TaylorJet:
    if fn == "exp":
        return TaylorJet.exp(order)
    if fn == "cos":
        return TaylorJet.cos(order)
    if fn == "xi0":
        return xi0_jet(order, cfg.precision_bits, cfg.method, cache_dir=cfg.cache_dir, use_cache=cfg.use_cache)
    if fn == "cosprod":
        return cos_product_jet(RealPoly((Fraction(1, 16), 0, 1)), order)
    raise UsageError(f"unknown function {fn!r}")


def cmd_scan(kind: str, cfg: RunConfig, stdout) -> int:
    s = cfg.extra
    if kind == "grid":
        fn = s["function"] or "xi0"
        ds = _int_range(s["d"], (1, 30))
        ns = _int_range(s["n"], (0, 10))
        order = cfg.jet_order if cfg.jet_order is not None else ns[1] + ds[1]
        jet = _grid_jet(fn, order, cfg)
        res = scan_jensen_grid(jet, range(ds[0], ds[1] + 1), range(ns[0], ns[1] + 1),
                               mode=s["mode"] or None, prec=cfg.precision_bits)
        t = Table("scan-grid", ["n", "d", "verdict", "method"],
                  comments=[f"caveat={EMPIRICAL_CAVEAT}",
                            f"function={fn} order={order} prec={cfg.precision_bits} method={cfg.method}",
                            "first_all_hyperbolic_n " + " ".join(
                                f"d{d}={'none' if v is None else v}" for d, v in res.first_all_hyperbolic_n.items())])
        for (n, d), v in res.grid.items():
            t.rows.append([n, d, v.status.value, v.method])
        _emit(t, cfg, stdout)
        if res.count(Status.NOT_HYPERBOLIC):
            return EXIT_COUNTEREXAMPLE
        return EXIT_INDETERMINATE if res.count(Status.INDETERMINATE) else EXIT_OK
    if kind == "theorem2":
        fn = s["function"] or "cosprod"
        ns = _int_range(s["n"], (0, 12))
        trunc = int(s["trunc"])
        order = cfg.jet_order if cfg.jet_order is not None else ns[1] + trunc
        jet = _grid_jet(fn, order, cfg)
        rep = scan_theorem2(jet, _frac(s["c"]), range(ns[0], ns[1] + 1), _frac(s["radius"]), trunc,
                            prec=min(cfg.precision_bits, 256))
        t = Table("scan-theorem2", ["n", "T_mid", "T_rad", "tail_bound", "roots_in_disk", "nonreal_in_disk",
                                    "status"],
                  comments=[f"caveat={EMPIRICAL_CAVEAT}",
                            f"function={fn} c={rep.c} disk_radius={rep.disk_radius} trunc={trunc}",
                            "roots are those of the Taylor truncation of f^(n), not certified zeros of f^(n)",
                            f"empirical_n1={'none' if rep.empirical_n1 is None else rep.empirical_n1}"])
        for r in rep.rows:
            mid, rad, _ = ball_fields(r.T)
            t.rows.append([r.n, mid, rad, rad_decimal(r.tail_bound), r.roots_in_disk, r.nonreal_in_disk,
                           r.status.value])
        _emit(t, cfg, stdout)
        return EXIT_INDETERMINATE if any(r.status is Membership.INDETERMINATE for r in rep.rows) else EXIT_OK
    raise UsageError(f"unknown scan kind {kind!r}")


# ---------------------------------------------------------------------------
# argument parsing


def _common(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("common options")
    g.add_argument("--config", help="flat key = value settings file")
    g.add_argument("--prec", type=int, help="working precision in bits (default 256)")
    g.add_argument("--order", type=int, help="jet order M")
    g.add_argument("--method", choices=["phi", "factors", "both"], help="Xi jet method (default phi)")
    g.add_argument("--seed", type=int, help="64-bit seed (default 0)")
    g.add_argument("--trials", type=int, help="randomized trials (default 100)")
    g.add_argument("--delta", help="sector parameter, rational (default 1/2)")
    g.add_argument("--T", help="strip parameter, rational or decimal (default 1/2)")
    g.add_argument("--c", help="growth exponent for the bounds and the theorem2 scan (default 3/2)")
    g.add_argument("--n1", type=int, help="n1 for the Theorem 1 bound (default 0)")
    g.add_argument("--d", help="degree or range lo..hi")
    g.add_argument("--n", help="derivative order or range lo..hi")
    g.add_argument("--deg", type=int, help="maximal degree of random P (default 6)")
    g.add_argument("--deg-q", dest="deg_q", help="degree range of random Q (t3)")
    g.add_argument("--radius", help="disk radius for the theorem2 scan (default 6)")
    g.add_argument("--trunc", type=int, help="truncation degree for the theorem2 scan (default 40)")
    g.add_argument("--function", choices=["xi0", "exp", "cos", "cosprod"], help="jet to scan")
    g.add_argument("--mode", choices=["exact", "ball"], help="hyperbolicity mode")
    g.add_argument("--out", help="output file (default stdout)")
    g.add_argument("--format", choices=["csv", "json"], help="output format (default csv)")
    g.add_argument("--cache-dir", dest="cache_dir", help="Xi jet cache directory")
    g.add_argument("--no-cache", dest="no_cache", action="store_true", help="do not read or write the cache")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jensenlab", description=__doc__.split("\n\n")[0],
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("xi-coeffs", help="tabulate certified derivatives of Xi at 0")
    _common(p)
    p = sub.add_parser("verify", help="run a theorem harness")
    p.add_argument("theorem", choices=["t3", "t4", "corollary", "bounds", "squaring", "gauss-lucas"])
    _common(p)
    p = sub.add_parser("scan", help="scan Jensen polynomials or truncation roots")
    p.add_argument("kind", choices=["grid", "theorem2"])
    _common(p)
    return parser


def main(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        cfg = _run_config(_settings(args))
        if args.command == "xi-coeffs":
            return cmd_xi_coeffs(cfg, stdout)
        if args.command == "verify":
            return cmd_verify(args.theorem, cfg, stdout)
        return cmd_scan(args.kind, cfg, stdout)
    except (UsageError, HypothesisViolation, TailBoundUnavailable, ValueError) as exc:
        if isinstance(exc, JetTooShort):
            print(f"jensenlab: {exc} (raise --order)", file=stderr)
        else:
            print(f"jensenlab: {exc}", file=stderr)
        return EXIT_USAGE
    except MethodDisagreement as exc:
        print(f"jensenlab: Xi jet methods disagree: {exc}", file=stderr)
        return EXIT_COUNTEREXAMPLE
    except (PrecisionExhausted, QuadratureTooCoarse) as exc:
        print(f"jensenlab: precision insufficient: {exc}", file=stderr)
        return EXIT_INDETERMINATE


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    main_entry()
