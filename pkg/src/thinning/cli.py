"""Command-line front end: every command writes one CSV table.

Each table starts with a ``# config:`` comment holding the full parsed
configuration (seed included), then, unless ``--deterministic`` is given,
a ``# generated:`` timestamp line, then a header row.

Exit codes: 0 success, 2 validation error, 3 resource guard refusal,
4 numerical failure. Errors go to stderr as a single line
``error code=<n> kind=<kind> message=<text>``.
"""

from __future__ import annotations

import argparse
import csv
import datetime as _dt
import json
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import distributions as dist
from .errors import InversionError, ResourceGuardError
from .extreme_laws import (
    ASYMPTOTIC, EXACT, FAMILIES, LimitLaw, classical_limit_cdf,
    exponentiation_bridge, limit_convergence_report,
)
from .free_max import free_max_power
from .mc_lab import DEFAULT_BUDGET, EnsembleSpec, empirical_vs_analytic
from .order_stats import AsymptoticThinned, ThinSpec, thinned_cdf_finite
from .pot import excess_cdf, k_from_threshold, threshold_from_k

__all__ = ["RunConfig", "build_parser", "parse_grid", "run", "main", "THREADS_ENV"]

THREADS_ENV = "THINNING_THREADS"
COMMANDS = ("eval", "thin", "maxsim", "converge", "potcheck", "bridge")
EXIT_OK, EXIT_VALIDATION, EXIT_GUARD, EXIT_NUMERIC = 0, 2, 3, 4


class ValidationError(ValueError):
    """Inconsistent or out-of-range command-line configuration."""


class _Parser(argparse.ArgumentParser):
    """Reports flag errors as the same one-line record as other failures."""

    def error(self, message):
        msg = " ".join(message.split())
        self.exit(EXIT_VALIDATION, f"error code={EXIT_VALIDATION} kind=usage message={msg}\n")


@dataclass(frozen=True)
class RunConfig:
    command: str
    args: dict

    def __getattr__(self, name):
        try:
            return self.args[name]
        except KeyError:
            raise AttributeError(name) from None


def parse_grid(text: str) -> tuple[float, float, int]:
    """``lo:hi:points`` -> ``(lo, hi, points)``."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValidationError(f"grid must be lo:hi:points, got {text!r}")
    try:
        lo, hi, pts = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise ValidationError(f"grid must be lo:hi:points, got {text!r}") from None
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi and pts >= 2):
        raise ValidationError(f"grid needs finite lo < hi and points >= 2, got {text!r}")
    return lo, hi, pts


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ValidationError(f"expected a comma-separated list of numbers, got {text!r}") from None


def _int_list(text: str) -> list[int]:
    vals = _float_list(text)
    if any(v != int(v) for v in vals):
        raise ValidationError(f"expected integers, got {text!r}")
    return [int(v) for v in vals]


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="thinning", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, law=True):
        if law:
            sp.add_argument("--law", required=True, choices=dist.LAW_NAMES)
            sp.add_argument("--r", type=float, default=None,
                            help="Marchenko-Pastur ratio N/M (default 0.25)")
        sp.add_argument("--output", "-o", default="-", help="CSV path, '-' for stdout")
        sp.add_argument("--deterministic", action="store_true",
                        help="omit the timestamp line")

    sp = sub.add_parser("eval", help="pdf, cdf and sf on a grid, or quantiles")
    common(sp)
    sp.add_argument("--grid", default=None, help="lo:hi:points")
    sp.add_argument("--quantile", default=None, help="comma-separated probabilities")

    sp = sub.add_parser("thin", help="finite vs asymptotic thinned CDF")
    common(sp)
    sp.add_argument("--k", type=float, default=None)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--grid", required=True, help="lo:hi:points")

    sp = sub.add_parser("maxsim", help="Monte Carlo spectral maximum vs free max law")
    common(sp)
    sp.add_argument("--N", type=int, default=500)
    sp.add_argument("--k", type=int, default=None)
    sp.add_argument("--k-list", default=None, help="comma-separated k values")
    sp.add_argument("--draws", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--series", choices=("summary", "hist", "ecdf"), default="summary")
    sp.add_argument("--bins", type=int, default=60)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                    help="refuse runs with N*k*draws above this")

    sp = sub.add_parser("converge", help="sup-distance to the free limit law")
    common(sp)
    sp.add_argument("--k-list", required=True, help="comma-separated k values")
    sp.add_argument("--mode", choices=(EXACT, ASYMPTOTIC), default=EXACT)
    sp.add_argument("--grid", default=None, help="lo:hi:points in rescaled units")

    sp = sub.add_parser("potcheck", help="excess CDF vs thinned CDF at k(u)")
    common(sp)
    sp.add_argument("--u", default=None, help="comma-separated thresholds")
    sp.add_argument("--k-list", default=None, help="thresholds given as k values")
    sp.add_argument("--grid", required=True, help="excess grid lo:hi:points, lo >= 0")

    sp = sub.add_parser("bridge", help="classical limit rebuilt from the free one")
    common(sp, law=False)
    sp.add_argument("--domain", required=True, choices=FAMILIES)
    sp.add_argument("--gamma", type=float, default=None)
    sp.add_argument("--grid", required=True, help="lo:hi:points")
    return p


def _law(cfg: RunConfig) -> dist.ParentLaw:
    if cfg.r is not None and cfg.law != "marchenko-pastur":
        raise ValidationError("--r only applies to marchenko-pastur")
    params = {"r": cfg.r} if cfg.r is not None else {}
    return dist.get_law(cfg.law, **params)


def _grid(text) -> np.ndarray:
    lo, hi, pts = parse_grid(text)
    return np.linspace(lo, hi, pts)


def validate(cfg: RunConfig) -> None:
    """Cross-flag checks that argparse cannot express."""
    c = cfg.command
    if "grid" in cfg.args and cfg.grid is not None:
        parse_grid(cfg.grid)
    if c == "eval" and (cfg.grid is None) == (cfg.quantile is None):
        raise ValidationError("eval needs exactly one of --grid or --quantile")
    if c == "thin":
        if (cfg.k is None) == (cfg.n is None):
            raise ValidationError("thin needs exactly one of --k or --n")
        if cfg.k is not None and not cfg.k >= 1:
            raise ValidationError("--k must be >= 1")
    if c == "maxsim":
        if cfg.law not in ("semicircle", "marchenko-pastur"):
            raise ValidationError("maxsim supports semicircle (GUE) and marchenko-pastur (Wishart)")
        if (cfg.k is None) == (cfg.k_list is None):
            raise ValidationError("maxsim needs exactly one of --k or --k-list")
        ks = [cfg.k] if cfg.k is not None else _int_list(cfg.k_list)
        if not ks or min(ks) < 1:
            raise ValidationError("k values must be integers >= 1")
        if cfg.draws < 1 or cfg.bins < 1:
            raise ValidationError("--draws and --bins must be >= 1")
        if cfg.seed < 0:
            raise ValidationError("--seed must be >= 0")
    if c == "converge" and not _float_list(cfg.k_list):
        raise ValidationError("--k-list is empty")
    if c == "potcheck":
        if (cfg.u is None) == (cfg.k_list is None):
            raise ValidationError("potcheck needs exactly one of --u or --k-list")
        if parse_grid(cfg.grid)[0] < 0:
            raise ValidationError("excess grid must start at >= 0")
    if c == "bridge" and cfg.domain != "gumbel" and not (cfg.gamma and cfg.gamma > 0):
        raise ValidationError(f"{cfg.domain} needs --gamma > 0")


def _threads() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValidationError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    if n < 1:
        raise ValidationError(f"{THREADS_ENV} must be >= 1")
    return n


# commands: each returns (header, rows)

def _cmd_eval(cfg):
    law = _law(cfg)
    if cfg.quantile is not None:
        ps = _float_list(cfg.quantile)
        if not ps or any(not 0 <= p <= 1 for p in ps):
            raise ValidationError("quantile probabilities must lie in [0, 1]")
        return ["p", "quantile"], [(p, float(law.quantile(p))) for p in ps]
    x = _grid(cfg.grid)
    return ["x", "pdf", "cdf", "sf"], zip(x, law.pdf(x), law.cdf(x), law.sf(x))


def _cmd_thin(cfg):
    law = _law(cfg)
    spec = ThinSpec.from_ratio(cfg.m, cfg.k) if cfg.k is not None else ThinSpec(cfg.m, cfg.n)
    x = _grid(cfg.grid)
    finite = thinned_cdf_finite(spec, law, x)
    asym = AsymptoticThinned(law, spec.k).cdf(x)
    gap = np.abs(finite - asym)
    top = float(gap.max())
    rows = [(xi, spec.m, spec.n, spec.k, f, a, g, top) for xi, f, a, g in zip(x, finite, asym, gap)]
    return ["x", "m", "n", "k", "finite_cdf", "asymptotic_cdf", "gap", "max_gap"], rows


def _cmd_maxsim(cfg):
    spec = (EnsembleSpec.gue(cfg.N) if cfg.law == "semicircle"
            else EnsembleSpec.wishart(cfg.N, cfg.r if cfg.r is not None else 0.25))
    ks = [cfg.k] if cfg.k is not None else _int_list(cfg.k_list)
    workers = _threads()
    for k in ks:
        if cfg.N * k * cfg.draws > cfg.budget:
            raise ResourceGuardError(
                f"N*k*draws = {cfg.N * k * cfg.draws} exceeds budget {cfg.budget}")
    reports = [empirical_vs_analytic(spec, k, cfg.draws, cfg.seed, bins=cfg.bins,
                                     budget=cfg.budget, workers=workers) for k in ks]
    if cfg.series == "summary":
        header = ["law", "N", "k", "draws", "seed", "ks_distance", "x_star", "upper_edge",
                  "mass_above_edge", "edge_deviation", "min_eigenvalue"]
        rows = [(cfg.law, cfg.N, r.k, r.draws, r.seed, r.ks_distance, r.x_star, r.upper_edge,
                 r.mass_above_edge, int(r.edge_deviation), r.min_eigenvalue) for r in reports]
        return header, rows
    if cfg.series == "hist":
        header = ["k", "bin_lo", "bin_hi", "empirical_density", "analytic_density"]
        rows = [(r.k, lo, hi, e, a) for r in reports
                for lo, hi, e, a in zip(r.hist_edges[:-1], r.hist_edges[1:],
                                        r.hist_density, r.analytic_density)]
        return header, rows
    header = ["k", "x", "empirical_cdf", "analytic_cdf"]
    rows = []
    for r in reports:
        v = r.empirical.sorted_values
        # thin out to at most ~2000 points per curve
        pick = v[:: max(1, v.size // 2000)]
        rows += zip([r.k] * pick.size, pick, r.empirical(pick), free_max_power(spec.law, r.k, pick))
    return header, rows


def _cmd_converge(cfg):
    law = _law(cfg)
    grid = _grid(cfg.grid) if cfg.grid is not None else None
    rep = limit_convergence_report(law, _float_list(cfg.k_list), grid, cfg.mode)
    return ["law", "family", "gamma", "mode", "k", "sup_distance"], [
        (law.name, law.domain, law.gamma if law.gamma is not None else "", cfg.mode, k, d)
        for k, d in rep
    ]


def _cmd_potcheck(cfg):
    law = _law(cfg)
    t = _grid(cfg.grid)
    us = (_float_list(cfg.u) if cfg.u is not None
          else [threshold_from_k(law, k) for k in _float_list(cfg.k_list)])
    rows = []
    for u in us:
        k = k_from_threshold(law, u)
        gap = np.abs(excess_cdf(law, u, t) - AsymptoticThinned(law, k).cdf(u + t))
        rows.append((u, k, float(gap.max())))
    return ["u", "k_of_u", "max_gap"], rows


def _cmd_bridge(cfg):
    x = _grid(cfg.grid)
    gamma = cfg.gamma if cfg.domain != "gumbel" else None
    bridged = exponentiation_bridge(cfg.domain, gamma, x)
    classical = classical_limit_cdf(LimitLaw(cfg.domain, "classical", gamma), x)
    res = np.abs(bridged - classical)
    return ["x", "bridge_cdf", "classical_cdf", "residual"], zip(x, bridged, classical, res)


_COMMANDS = {
    "eval": _cmd_eval, "thin": _cmd_thin, "maxsim": _cmd_maxsim,
    "converge": _cmd_converge, "potcheck": _cmd_potcheck, "bridge": _cmd_bridge,
}


def _cell(v):
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, np.integer):
        return str(int(v))
    return v


def write_csv(stream, cfg: RunConfig, header, rows, deterministic: bool) -> None:
    stream.write("# config: " + json.dumps({"command": cfg.command, **cfg.args},
                                           sort_keys=True) + "\n")
    if not deterministic:
        stamp = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
        stream.write(f"# generated: {stamp}\n")
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(v) for v in row])


def run(cfg: RunConfig, stream=None) -> int:
    """Validate and execute ``cfg``, writing CSV to ``stream`` or ``cfg.output``."""
    validate(cfg)
    header, rows = _COMMANDS[cfg.command](cfg)
    rows = list(rows)
    if stream is not None:
        write_csv(stream, cfg, header, rows, cfg.deterministic)
    elif cfg.output == "-":
        write_csv(sys.stdout, cfg, header, rows, cfg.deterministic)
    else:
        with open(cfg.output, "w", newline="", encoding="utf-8") as fh:
            write_csv(fh, cfg, header, rows, cfg.deterministic)
    return EXIT_OK


def _fail(code: int, kind: str, exc: BaseException) -> int:
    msg = " ".join(str(exc).split()) or type(exc).__name__
    print(f"error code={code} kind={kind} message={msg}", file=sys.stderr)
    return code


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)  # argparse exits with status 2 on bad flags
    args = {k: v for k, v in vars(ns).items() if k != "command"}
    cfg = RunConfig(ns.command, args)
    try:
        return run(cfg)
    except ResourceGuardError as exc:
        return _fail(EXIT_GUARD, "resource_guard", exc)
    except InversionError as exc:
        return _fail(EXIT_NUMERIC, "numerical", exc)
    except (ValueError, NotImplementedError) as exc:
        return _fail(EXIT_VALIDATION, "validation", exc)
    except BrokenPipeError:
        # reader closed early (e.g. piped into head); not an error of ours
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        return EXIT_OK
    except OSError as exc:
        return _fail(EXIT_VALIDATION, "io", exc)


if __name__ == "__main__":
    sys.exit(main())
