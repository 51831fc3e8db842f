"""Command-line front end: ``orbitkit VERB [flags]``.

Exit codes: 0 success, 1 internal failure, 2 usage error, 3 domain error,
4 non-convergence.  Settings may also come from ``--config FILE`` holding
``key=value`` lines (``#`` starts a comment); explicit flags win.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import re
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import catalog as cat
from .errors import (
    Degenerate,
    DomainError,
    NoBracket,
    NotConverged,
    NoFixedPoint,
    OrbitkitError,
)
from .numeric import ExtendedReal

VERBS = (
    "orbit",
    "candidate",
    "limit",
    "mobius-limit",
    "q-construct",
    "phi-series",
    "phi-error",
    "cheby",
    "currie-c",
    "koenigs-check",
    "verify-rootlike",
    "repro",
)

# flag name -> (type, default); defaults are applied after the config merge
OPTIONS = {
    "spec": (str, None),
    "t0": (str, None),
    "n": (int, None),
    "terms": (int, None),
    "c": (str, None),
    "k": (int, None),
    "scaled": (str, "false"),
    "precision": (str, "extended"),
    "out": (str, None),
    "format": (str, "table"),
    "gap": (float, None),
    "l": (float, None),
    "m": (str, None),
    "s": (str, None),
    "lo": (float, None),
    "hi": (float, None),
    "target": (float, 0.0),
}


class UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="orbitkit",
        description="Candidate sequences, limits and eigen-series for contracting maps.",
    )
    p.add_argument("verb", choices=VERBS)
    p.add_argument("--config", help="key=value file; flags override it")
    helps = {
        "spec": "function spec, e.g. 'sqrt_affine(c=2)'",
        "t0": "start value (decimal or p/q)",
        "n": "number of steps or samples",
        "terms": "series terms",
        "c": "radicand constant C of sqrt(C + t)",
        "k": "Chebyshev index K",
        "scaled": "true/false: scaled Chebyshev variant",
        "precision": "double or extended",
        "out": "write output to PATH",
        "format": "table or csv",
        "gap": "f''(L) - Q''(L) for the associated Q",
        "l": "fixed point L",
        "m": "multiplier m",
        "s": "second derivative s",
        "lo": "interval / range lower end",
        "hi": "interval / range upper end",
        "target": "target value for the series root",
    }
    for name, (typ, _) in OPTIONS.items():
        p.add_argument(f"--{name}", type=typ, default=None, help=helps[name])
    return p


def _read_config(path: str) -> dict[str, str]:
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, val = (x.strip() for x in line.split("=", 1))
            key = key.lstrip("-").replace("-", "_")
            if key not in OPTIONS:
                raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
            out[key] = val
    return out


def _merge(args: argparse.Namespace) -> argparse.Namespace:
    conf = _read_config(args.config) if args.config else {}
    for name, (typ, default) in OPTIONS.items():
        if getattr(args, name) is None:
            if name in conf:
                try:
                    setattr(args, name, typ(conf[name]))
                except ValueError as exc:
                    raise UsageError(f"config value for {name}: {exc}") from exc
            elif name == "format" and args.verb == "phi-series":
                setattr(args, name, "csv")  # the series is an export by nature
            else:
                setattr(args, name, default)
    if args.precision not in ("double", "extended"):
        raise UsageError("--precision must be double or extended")
    if args.format not in ("table", "csv"):
        raise UsageError("--format must be table or csv")
    return args


def _bool(s: str) -> bool:
    low = str(s).strip().lower()
    if low in ("true", "1", "yes"):
        return True
    if low in ("false", "0", "no"):
        return False
    raise UsageError(f"expected true/false, got {s!r}")


def _rational(s: str, name: str) -> Fraction:
    try:
        return Fraction(s.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad number for --{name}: {s!r}") from exc


def _t0(args, required=True):
    if args.t0 is None:
        if required:
            raise UsageError("--t0 is required")
        return None
    s = args.t0.strip()
    if "/" in s:
        return ExtendedReal.from_fraction(_rational(s, "t0"))
    try:
        return ExtendedReal.from_str(s)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"bad number for --t0: {s!r}") from exc


def _spec(args) -> cat.FunctionSpec:
    if not args.spec:
        raise UsageError("--spec is required")
    try:
        return cat.parse_spec(args.spec)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _need(args, name):
    v = getattr(args, name)
    if v is None:
        raise UsageError(f"--{name} is required")
    return v


class _Out:
    def __init__(self, fmt: str):
        self.fmt = fmt
        self.buf = io.StringIO()

    def line(self, text: str = ""):
        self.buf.write(text + "\n")

    def rows(self, header: Sequence[str], rows):
        if self.fmt == "csv":
            w = csv.writer(self.buf, lineterminator="\n")
            w.writerow(header)
            w.writerows(rows)
            return
        rows = [[str(x) for x in r] for r in rows]
        widths = [max([len(h)] + [len(r[i]) for r in rows]) for i, h in enumerate(header)]
        self.line("  ".join(h.rjust(w) for h, w in zip(header, widths)))
        for r in rows:
            self.line("  ".join(x.rjust(w) for x, w in zip(r, widths)))


def _fmt(x) -> str:
    if isinstance(x, ExtendedReal):
        return str(x)
    if isinstance(x, Fraction):
        return str(x) if x.denominator == 1 else f"{x} = {float(x)!r}"
    return repr(float(x))


# -- verbs ------------------------------------------------------------------


def cmd_orbit(args, out):
    from .iteration import orbit

    o = orbit(_spec(args), _t0(args), args.n if args.n is not None else 10, args.precision)
    out.rows(["n", "t_n"], [(i, _fmt(v)) for i, v in enumerate(o.values)])


def cmd_candidate(args, out):
    from .iteration import candidate_sequence_for

    cs = candidate_sequence_for(_spec(args), _t0(args), args.n if args.n is not None else 20, args.precision)
    out.rows(["n", "c_n"], [(i, _fmt(v)) for i, v in enumerate(cs.c)])
    if cs.truncated and out.fmt == "table":
        out.line(f"# stopped at n={len(cs.c) - 1}: |L - t_n| reached the cancellation floor")


def _closed_form(spec, t0: float):
    """Known exact limits, as (value, description) or None."""
    from .eigen import (
        cheb_pair,
        exp_two_cos_pair,
        half_exp_pair,
        exp_power_pair,
        pair_limit,
        sqrt2_phi_closed,
    )
    from .mobius import MobiusCoeffs, candidate_limit_exact

    try:
        if isinstance(spec, cat.SqrtAffine) and spec.C == 2:
            return sqrt2_phi_closed(t0), "arccos(t0/2)^2 or arccosh(t0/2)^2"
        if isinstance(spec, (cat.Mobius, cat.ContinuedFraction)):
            mc = MobiusCoeffs.from_spec(spec.as_mobius() if isinstance(spec, cat.ContinuedFraction) else spec)
            return float(candidate_limit_exact(mc, t0)), "|(L^2+b)(L-t0)/(b+L t0)|"
        if isinstance(spec, cat.ExpConjugate):
            return pair_limit(exp_two_cos_pair(), t0), "e^2 arccos(ln(t0)/2)^2"
        if isinstance(spec, cat.PowerMap):
            return pair_limit(exp_power_pair(spec.alpha), t0), "|ln t0|"
        if isinstance(spec, cat.ScaledCubeRoot):
            return pair_limit(half_exp_pair(), t0), "|ln(2 t0)|/2"
        if isinstance(spec, cat.ChebyInverse) and -spec.domain()[0] >= abs(t0):
            return pair_limit(cheb_pair(spec.K, spec.scaled), t0), "s arccos(t0/s)^2/2, s = 1 or K"
    except (ValueError, DomainError, OrbitkitError):
        return None
    return None


def cmd_limit(args, out):
    from .iteration import candidate_sequence_for, estimate_limit

    spec, t0 = _spec(args), _t0(args)
    est = estimate_limit(candidate_sequence_for(spec, t0, 400, args.precision), 1e-8)
    closed = _closed_form(spec, float(t0))
    if out.fmt == "csv":
        rows = [("estimate", repr(est.value), f"{est.abs_error_bound:.3e}", est.method, est.n_used)]
        if closed:
            rows.append(("exact-formula", repr(closed[0]), "0", closed[1], ""))
        out.rows(["kind", "value", "abs_error_bound", "method", "n_used"], rows)
        return
    out.line(f"{spec}  t0={float(t0)!r}  precision={args.precision}")
    out.line(f"limit = {est.value!r} +/- {est.abs_error_bound:.3e}  ({est.method}, n={est.n_used})")
    if closed:
        out.line(f"exact-formula: {closed[0]!r}  [{closed[1]}]")


def cmd_mobius_limit(args, out):
    from .iteration import candidate_sequence_for, estimate_limit
    from .mobius import MobiusCoeffs, candidate_limit_exact, eigen

    spec = _spec(args)
    if isinstance(spec, cat.ContinuedFraction):
        spec = spec.as_mobius()
    if not isinstance(spec, cat.Mobius):
        raise UsageError("mobius-limit needs a mobius(...) or continued_fraction(...) spec")
    mc = MobiusCoeffs(*(Fraction(x) for x in (spec.a, spec.b, spec.d)))
    t0s = args.t0.strip()
    t0 = _rational(t0s, "t0")
    exact = candidate_limit_exact(mc, t0)
    e = eigen(mc)
    out.line(f"L = {_fmt(e.L)}  m = {_fmt(e.m)}")
    out.line(f"limit = {_fmt(exact)}  exact-formula")
    try:
        est = estimate_limit(candidate_sequence_for(spec, _t0(args), 400, args.precision), 1e-8)
        out.line(f"numeric = {est.value!r} +/- {est.abs_error_bound:.3e}  ({est.method}, n={est.n_used})")
    except (DomainError, NotConverged, Degenerate) as exc:
        out.line(f"numeric = unavailable ({type(exc).__name__}: {exc})")


def cmd_q_construct(args, out):
    from .mobius import QParams, associated_q, eigen, lms_from_abd, q_from_lms

    if args.spec:
        gap = args.gap if args.gap is not None else 1.0
        mc = associated_q(_spec(args), gap)
        out.line(f"associated Q of {args.spec} with gap {gap!r}:")
    else:
        if args.l is None or args.m is None or args.s is None:
            raise UsageError("q-construct needs --spec [--gap] or --l, --m and --s")
        L = Fraction(args.l) if float(args.l).is_integer() else args.l
        try:
            p = QParams(L, _rational(args.m, "m"), _rational(args.s, "s"))
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        mc = q_from_lms(p)
    out.line(f"a = {_fmt(mc.a)}")
    out.line(f"b = {_fmt(mc.b)}")
    out.line(f"d = {_fmt(mc.d)}")
    out.line(f"discriminant = {_fmt(mc.discriminant)}")
    e = eigen(mc)
    q = lms_from_abd(mc, e.L)
    out.line(f"check: L = {_fmt(q.L)}, Q'(L) = {_fmt(q.m)}, Q''(L) = {_fmt(q.s)}")


def cmd_phi_series(args, out):
    from .eigen import build_phi_series, series_csv

    C = _rational(_need(args, "c"), "c")
    terms = args.terms if args.terms is not None else 6
    if terms < 1:
        raise UsageError("--terms must be at least 1")
    rs = build_phi_series(C, max(terms - 1, 1))
    text = series_csv(rs, terms - 1)
    if out.fmt == "csv":
        out.buf.write(text)
        return
    rows = list(csv.reader(io.StringIO(text)))
    out.rows(rows[0], rows[1:])


def cmd_phi_error(args, out):
    from .eigen import build_phi_series, phi_root_for_limit, phi_series_error

    C = _rational(_need(args, "c"), "c")
    top = args.terms if args.terms is not None else 5
    lo = args.lo if args.lo is not None else -2.0
    hi = args.hi if args.hi is not None else 2.0
    rs = build_phi_series(C, max(top, 1))
    rows = []
    for n in range(1, top + 1):
        r = phi_series_error(rs, n, (lo, hi))
        rows.append((n, f"{r.max_error:.3e}", f"{r.avg_error:.3e}"))
    out.rows(["n", "max_error", "avg_error"], rows)
    if out.fmt == "table":
        try:
            th = phi_root_for_limit(rs, args.target, top)
            out.line(f"p_{top}(theta) = {args.target!r} nearest 0 at theta = {th!r}")
        except NoBracket:
            out.line(f"p_{top}(theta) = {args.target!r} has no root in the scanned range")


def cmd_cheby(args, out):
    from .chebyshev import cheb_nested_table, cheb_poly

    K = _need(args, "k")
    scaled = _bool(args.scaled)
    t0 = float(_t0(args, required=False) or 0.0)
    n = args.n if args.n is not None else 10
    rows = cheb_nested_table(K, t0, n, scaled)
    if out.fmt == "table":
        out.line(f"p_{K}(t) = {cheb_poly(K)}")
    out.rows(["n", "c_n"], [(j, _fmt(c)) for j, c in rows])
    if out.fmt == "table":
        s = float(K) if scaled else 1.0
        if -s <= t0 < s:
            out.line(f"exact-formula: {s * math.acos(t0 / s) ** 2 / 2!r}")


def cmd_currie_c(args, out):
    from .koenigs import currie_c

    L = _need(args, "l")
    out.line(f"C({L!r}) = {currie_c(L)!r}")


def cmd_koenigs_check(args, out):
    from .koenigs import cardioid_containment_check, disk_self_map_check, non_surjectivity_witness

    L = _need(args, "l")
    n = args.n if args.n is not None else 10_000
    d = disk_self_map_check(L, n)
    card = cardioid_containment_check(L)
    z, in_a, out_b = non_surjectivity_witness(L)
    out.line(f"disk self-map: {'pass' if d.ok else 'FAIL'}  margin={d.margin:.6g}  samples={d.n_samples}")
    out.line(f"cardioid containment: {'pass' if card else 'FAIL'}")
    out.line(f"non-surjectivity witness z={z!r}: in A={in_a}, z^2 outside B={out_b}")
    if not (d.ok and card):
        return 1
    return 0


def cmd_verify_rootlike(args, out):
    spec = _spec(args)
    if args.lo is None or args.hi is None:
        lo, hi = cat.widest_root_like_interval(spec)
        out.line(f"widest grid-certified interval: [{lo!r}, {hi!r}]")
        if args.lo is not None:
            lo = args.lo
        if args.hi is not None:
            hi = args.hi
    else:
        lo, hi = args.lo, args.hi
    r = cat.verify_root_like(spec, (lo, hi))
    out.line(f"interval [{lo!r}, {hi!r}]")
    out.line(f"|f'| < 1: {r.is_contraction}   f' > 0: {r.fprime_positive}   f'' < 0: {r.fsecond_negative}")
    out.line(f"fixed point inside: {r.fixed_point_inside}")
    out.line(f"root-like: {r.verdict}")
    return 0 if r.verdict else 1


def cmd_repro(args, out):
    from .repro import run_all

    results = run_all()
    for r in results:
        out.line(f"[{'PASS' if r.passed else 'FAIL'}] {r.key:>2} {r.title}: {r.detail}")
    failed = [r.key for r in results if not r.passed]
    out.line(f"{len(results) - len(failed)}/{len(results)} passed")
    return 0 if not failed else 1


COMMANDS = {
    "orbit": cmd_orbit,
    "candidate": cmd_candidate,
    "limit": cmd_limit,
    "mobius-limit": cmd_mobius_limit,
    "q-construct": cmd_q_construct,
    "phi-series": cmd_phi_series,
    "phi-error": cmd_phi_error,
    "cheby": cmd_cheby,
    "currie-c": cmd_currie_c,
    "koenigs-check": cmd_koenigs_check,
    "verify-rootlike": cmd_verify_rootlike,
    "repro": cmd_repro,
}


_NEGATIVE = re.compile(r"^-(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?(/\d+)?$")


def _join_negatives(argv: Sequence[str]) -> list[str]:
    """Rewrite ``--s -1/18`` as ``--s=-1/18``; argparse takes -1/18 for a flag."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        a = argv[i]
        if a.startswith("--") and a[2:] in OPTIONS and i + 1 < len(argv) and _NEGATIVE.match(argv[i + 1]):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = _parser()
    argv = _join_negatives(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse prints its own message
        return int(exc.code or 0)
    err = sys.stderr
    try:
        args = _merge(args)
        out = _Out(args.format)
        code = COMMANDS[args.verb](args, out) or 0
    except UsageError as exc:
        print(f"orbitkit: usage error: {exc}", file=err)
        return 2
    except (DomainError, NoFixedPoint) as exc:
        print(f"orbitkit: domain error: {exc}", file=err)
        return 3
    except (NotConverged, Degenerate, NoBracket) as exc:
        print(f"orbitkit: no convergence: {exc}", file=err)
        return 4
    except (OrbitkitError, ValueError, ArithmeticError) as exc:
        print(f"orbitkit: error: {type(exc).__name__}: {exc}", file=err)
        return 1
    text = out.buf.getvalue()
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
