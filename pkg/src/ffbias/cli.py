"""ffbias command line: exact tables, explicit-formula comparisons, acceptance checks."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np
from scipy.special import rgamma

from . import __version__
from .asymptotics import (
    bias_function,
    hankel_closed_form,
    hankel_integral,
    solve_constants,
    thm1_main,
    thm3_main,
    thm4_eval,
)
from .characters import TableBoundError, characters, unit_group
from .charsums import BudgetError, analytic_tables, normalize, pi_k_enumerate
from .checks import CHECKS, run_checks
from .config import ConfigError, RunConfig, load_config, parse_k_mode, parse_range
from .field import format_poly
from .lfunc import RHViolation, l_coeffs, l_roots

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(ValueError):
    pass


# -- output -------------------------------------------------------------------------------

def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def _json_value(v):
    if isinstance(v, (np.floating, float)):
        v = float(v)
        return v if math.isfinite(v) else repr(v)
    if isinstance(v, np.integer):
        return int(v)
    return v


class Emitter:
    def __init__(self, cfg: RunConfig, header: str | None):
        self.cfg = cfg
        self.header = header

    def table(self, columns: list[str], rows: list[tuple]) -> str:
        if self.cfg.fmt == "json":
            doc = {"columns": columns, "rows": [[_json_value(v) for v in r] for r in rows]}
            if self.header:
                doc = {"generated_by": self.header, **doc}
            return json.dumps(doc) + "\n"
        buf = io.StringIO()
        if self.header:
            buf.write(f"# generated-by {self.header}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_fmt(v) for v in r])
        return buf.getvalue()

    def write(self, text: str) -> None:
        if self.cfg.output:
            Path(self.cfg.output).write_text(text)
        else:
            sys.stdout.write(text)


# -- helpers ------------------------------------------------------------------------------

def _chars(cfg: RunConfig):
    G = unit_group(cfg.poly())
    chars = characters(G)
    if cfg.char_index is None:
        return chars
    if not 0 <= cfg.char_index < len(chars):
        raise UsageError(f"char-index {cfg.char_index} outside [0, {len(chars)})")
    return [chars[cfg.char_index]]


def _lfunc(chi, cfg: RunConfig):
    return l_roots(l_coeffs(chi), cfg.cluster_radius, cfg.rh_tol)


def _ks(cfg: RunConfig, n: int) -> int:
    kind, val = parse_k_mode(cfg.k_mode)
    return int(val) if kind == "fixed" else max(1, round(val * math.log(n)))


def _float_range(text: str) -> list[float]:
    parts = text.split(":")
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise UsageError(f"bad range {text!r}") from None
    if len(vals) != 3 or vals[2] <= 0 or vals[0] > vals[1]:
        raise UsageError(f"bad range {text!r}: expected a:b:step with step > 0")
    a, b, s = vals
    count = int(math.floor((b - a) / s + 1e-9)) + 1
    return [a + i * s for i in range(count)]


def _complex(text: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise UsageError(f"bad complex number {text!r}: expected re or re,im")


# -- subcommands ----------------------------------------------------------------------------

def cmd_chars(cfg: RunConfig, args, out: Emitter) -> int:
    G = unit_group(cfg.poly())
    rows = []
    for chi in _chars(cfg):
        exps = " ".join(str(e) for e in chi.exponents)
        rows.append((chi.index, chi.order, chi.is_principal, chi.is_real, exps))
    out.write(out.table(["index", "order", "principal", "real", "exponents"], rows))
    if cfg.fmt == "csv" and not cfg.output and args.verbose:
        gens = "; ".join(f"{format_poly(g)} (order {o})" for g, o in G.generators)
        sys.stderr.write(f"unit group of order {G.order}: {gens}\n")
    return EXIT_OK


def cmd_lfunc(cfg: RunConfig, args, out: Emitter) -> int:
    rows = []
    if args.coeffs:
        for chi in _chars(cfg):
            if chi.is_principal:
                continue
            L = l_coeffs(chi)
            for i, c in enumerate(L.coeffs):
                rows.append((chi.index, i, c.real, c.imag))
        out.write(out.table(["char_index", "degree", "re", "im"], rows))
        return EXIT_OK
    q = cfg.q
    for chi in _chars(cfg):
        if chi.is_principal:
            continue
        L = _lfunc(chi, cfg)
        for a, m in L.inverse_roots:
            if abs(abs(a) - 1) <= cfg.rh_tol:
                kind = "trivial"
            elif a.imag == 0:
                kind = "plus" if a.real > 0 else "minus"
            else:
                kind = "critical"
            rows.append((chi.index, a.real, a.imag, abs(a), abs(a) / math.sqrt(q), m, kind))
    cols = ["char_index", "re_alpha", "im_alpha", "abs_alpha", "abs_over_sqrt_q", "multiplicity", "kind"]
    out.write(out.table(cols, rows))
    return EXIT_OK


def _tables(chi, n: int, cfg: RunConfig):
    if cfg.method == "enumerate":
        return pi_k_enumerate(chi, n, budget=cfg.enum_cap)
    return analytic_tables(chi, n, n_cap=cfg.n_cap)[n]


def cmd_sums(cfg: RunConfig, args, out: Emitter) -> int:
    n = args.n
    if n is None:
        raise UsageError("sums needs --n")
    if args.normalized and n < 2:
        raise UsageError("--normalized needs n >= 2")
    chars = _chars(cfg)
    many = len(chars) > 1
    rows = []
    for chi in chars:
        T = _tables(chi, n, cfg)
        if args.normalized:
            N = normalize(T)
            data = [(k, N[k]) for k in range(1, n + 1)]
        else:
            data = [(k, T[k]) for k in range(n + 1)]
        for k, v in data:
            rows.append(((chi.index,) if many else ()) + (k, v.real, v.imag))
    cols = ["k", "re_tilde", "im_tilde"] if args.normalized else ["k", "re", "im"]
    out.write(out.table((["char_index"] if many else []) + cols, rows))
    return EXIT_OK


def cmd_compare(cfg: RunConfig, args, out: Emitter) -> int:
    ns = cfg.ns()
    if ns[0] < 2:
        raise UsageError("compare needs n >= 2")
    chars = [c for c in _chars(cfg) if not c.is_principal]
    many = len(chars) > 1
    rows = []
    for chi in chars:
        L = _lfunc(chi, cfg)
        if cfg.method == "enumerate":
            tabs = {n: pi_k_enumerate(chi, n, budget=cfg.enum_cap) for n in ns}
        else:
            allt = analytic_tables(chi, ns[-1], n_cap=cfg.n_cap)
            tabs = {n: allt[n] for n in ns}
        for n in ns:
            k = _ks(cfg, n)
            if k > n:
                continue
            if args.theorem == "1":
                rep = thm1_main(tabs[n], k, L)
                osc_bound = sum(m**k for _, m in L.nonreal)
            elif args.theorem in ("3a", "3b"):
                rep = thm3_main(tabs[n], k, L, "first" if args.theorem == "3a" else "second")
                osc_bound = sum(m**k for _, m in L.nonreal)
            else:
                rep, _ = thm4_eval(tabs[n], k, L, cfg.cutoff)
                osc_bound = rep.extras["osc_bound"]
            row = (n, k, rep.exact.real, rep.exact.imag, rep.main.real, rep.main.imag,
                   abs(rep.residual), rep.bias.real, float(osc_bound))
            rows.append(((chi.index,) if many else ()) + row)
    cols = ["n", "k", "re_exact", "im_exact", "re_pred", "im_pred", "abs_residual", "bias_term", "osc_bound"]
    out.write(out.table((["char_index"] if many else []) + cols, rows))
    return EXIT_OK


def cmd_constants(cfg: RunConfig, args, out: Emitter) -> int:
    c = solve_constants()
    out.write(f"beta={c.beta:.12f}\ngamma={c.gamma:.12f}\n")
    # residuals go to stderr so stdout stays the two value lines
    sys.stderr.write(f"|exp(beta-1)-4beta^2|={c.beta_residual!r}\n|gamma-(1-beta)/(4beta^2)|={c.gamma_residual!r}\n")
    return EXIT_OK


def cmd_bias_curve(cfg: RunConfig, args, out: Emitter) -> int:
    alphas = _float_range(args.alpha_range)
    if alphas[0] <= 0:
        raise UsageError("alpha must be positive")
    rows = [(a, *bias_function(a)) for a in alphas]
    out.write(out.table(["alpha", "s", "b"], rows))
    return EXIT_OK


def cmd_hankel(cfg: RunConfig, args, out: Emitter) -> int:
    z = _complex(args.z)
    if args.n < 2:
        raise UsageError("--n must be >= 2")
    v = hankel_integral(z, args.n, args.delta)
    ref = complex(rgamma(-z))
    c = hankel_closed_form(z, args.n)
    rows = [(args.n, v.real, v.imag, ref.real, ref.imag, abs(v - ref), c.real, c.imag)]
    cols = ["n", "re", "im", "re_rgamma", "im_rgamma", "abs_dev", "re_closed", "im_closed"]
    out.write(out.table(cols, rows))
    return EXIT_OK


def cmd_verify(cfg: RunConfig, args, out: Emitter) -> int:
    numbers = None
    if args.only:
        try:
            numbers = [int(x) for x in args.only.split(",")]
        except ValueError:
            raise UsageError(f"bad --only list {args.only!r}") from None
        bad = [i for i in numbers if i not in CHECKS]
        if bad:
            raise UsageError(f"unknown criteria {bad}")
    results = run_checks(numbers, args.quick, report=lambda r: print(r.line(), flush=True))
    failed = [r.number for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} passed" + (f"; failed: {failed}" if failed else ""))
    return EXIT_FAIL if failed else EXIT_OK


# -- parser -----------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("configuration")
    g.add_argument("--config", help="key = value file; flags override its values")
    g.add_argument("--q", type=int)
    g.add_argument("--modulus")
    g.add_argument("--char-index", help="character index or 'all'")
    g.add_argument("--output", help="write to this file instead of stdout")
    g.add_argument("--format", dest="fmt", choices=("csv", "json"))
    g.add_argument("--no-header", action="store_true", help="omit the generated-by line")
    g.add_argument("--enum-cap", type=int)
    g.add_argument("--n-cap", type=int)
    g.add_argument("--cutoff", type=int, help="Euler product cutoff D")
    g.add_argument("--rh-tol", type=float)
    g.add_argument("--cluster-radius", type=float)

    p = argparse.ArgumentParser(prog="ffbias", description=__doc__)
    p.add_argument("--version", action="version", version=f"ffbias {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("chars", parents=[common], help="list the characters mod d")
    s.add_argument("--verbose", action="store_true")

    s = sub.add_parser("lfunc", parents=[common], help="inverse roots or coefficients of L(u, chi)")
    s.add_argument("--coeffs", action="store_true", help="emit coefficients instead of roots")
    s.add_argument("--json", dest="fmt", action="store_const", const="json")
    s.add_argument("--csv", dest="fmt", action="store_const", const="csv")

    s = sub.add_parser("sums", parents=[common], help="pi_k(n, chi) for k = 0..n")
    s.add_argument("--n", type=int)
    s.add_argument("--method", choices=("analytic", "enumerate"))
    s.add_argument("--normalized", action="store_true")

    s = sub.add_parser("compare", parents=[common], help="exact pi~_k against a main-term formula")
    s.add_argument("--n-range", help="a:b or a:b:step (inclusive)")
    s.add_argument("--k-mode", help="fixed:<k> or scaled:<alpha>")
    s.add_argument("--theorem", choices=("1", "3a", "3b", "4"), default="1")
    s.add_argument("--method", choices=("analytic", "enumerate"))

    sub.add_parser("constants", parents=[common], help="beta and gamma")

    s = sub.add_parser("bias-curve", parents=[common], help="s(alpha) and b(alpha) on a grid")
    s.add_argument("--alpha-range", default="0.1:3:0.1", help="a:b:step")

    s = sub.add_parser("hankel", parents=[common], help="Hankel integral against its closed form")
    s.add_argument("--z", required=True, help="re or re,im")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--delta", type=float, default=0.5)

    s = sub.add_parser("verify", parents=[common], help="run the acceptance checks")
    s.add_argument("--quick", action="store_true", help="oracle equivalence at n <= 10 and RH only")
    s.add_argument("--only", help="comma-separated criterion numbers")
    return p


_HANDLERS = {
    "chars": cmd_chars,
    "lfunc": cmd_lfunc,
    "sums": cmd_sums,
    "compare": cmd_compare,
    "constants": cmd_constants,
    "bias-curve": cmd_bias_curve,
    "hankel": cmd_hankel,
    "verify": cmd_verify,
}


def make_config(args) -> RunConfig:
    over = {
        "q": args.q,
        "modulus": args.modulus,
        "output": args.output,
        "fmt": args.fmt,
        "enum_cap": args.enum_cap,
        "n_cap": args.n_cap,
        "cutoff": args.cutoff,
        "rh_tol": args.rh_tol,
        "cluster_radius": args.cluster_radius,
        "method": getattr(args, "method", None),
        "k_mode": getattr(args, "k_mode", None),
    }
    if getattr(args, "n_range", None):
        over["n_range"] = parse_range(args.n_range)
    over = {k: v for k, v in over.items() if v is not None}
    cfg = load_config(args.config) if args.config else RunConfig()
    if args.char_index is not None:
        over["char_index"] = None if args.char_index.strip() == "all" else _index(args.char_index)
    try:
        return replace(cfg, **over)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _index(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"bad char-index {text!r}") from None


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = make_config(args)
        header = None if args.no_header else f"ffbias {__version__} {' '.join(argv)}"
        return _HANDLERS[args.command](cfg, args, Emitter(cfg, header))
    except (BudgetError, TableBoundError) as exc:
        sys.stderr.write(f"ffbias: budget exceeded: {exc}\n")
        return EXIT_BUDGET
    except (ConfigError, UsageError) as exc:
        sys.stderr.write(f"ffbias: {exc}\n")
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    except RHViolation as exc:
        sys.stderr.write(f"ffbias: {exc}\n")
        return EXIT_FAIL
    except ValueError as exc:
        sys.stderr.write(f"ffbias: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
