"""Command-line front end: builds reports for the frame, heat operators,
Cole-Hopf tables, jet derivations and sigma series, and emits them as text,
JSON or LaTeX.  Exit codes: 0 pass, 1 check failure, 2 config error,
3 internal error.
"""
from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from . import frame, jets, sigma
from .frame import UnsupportedGenus, build_T, heat_family, T_rows
from .operators import AmbiguousDecomposition, NotInModule, decompose
from .report import Report, emit, strictify

SUITES = ("frame", "ops", "cole-hopf", "jets", "sigma")
TABULATED = (1, 2, 3)
EXIT_PASS, EXIT_FAIL, EXIT_CONFIG, EXIT_INTERNAL = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


class InternalInconsistency(RuntimeError):
    pass


@dataclass
class SuiteConfig:
    command: str = "verify"
    genera: List[int] = field(default_factory=lambda: [1, 2, 3])
    suites: Tuple[str, ...] = SUITES
    convention: int = jets.PLUS
    jet_order: int = 6
    max_weight: int = sigma.DEFAULT_MAX_WEIGHT
    fmt: str = "text"
    out: Optional[str] = None
    strict: bool = False
    timestamp: bool = True
    ops: Optional[Tuple[int, ...]] = None
    which: str = "Q"
    jobs: int = 1

    def validate(self) -> "SuiteConfig":
        if not self.genera:
            raise ConfigError("no genus given")
        for g in self.genera:
            if g < 1:
                raise ConfigError(f"genus must be >= 1 (got {g})")
            if g not in TABULATED and self.command != "frame":
                raise ConfigError(f"heat operators are tabulated for g = 1, 2, 3 only (got {g})")
        bad = [s for s in self.suites if s not in SUITES]
        if bad:
            raise ConfigError(f"unknown suite {bad[0]!r}")
        if self.convention not in (jets.PLUS, jets.MINUS):
            raise ConfigError("convention must be + or -")
        if self.jet_order < 2:
            raise ConfigError("jet order must be >= 2")
        if self.max_weight < 0:
            raise ConfigError("max weight must be >= 0")
        if self.fmt not in ("text", "json", "latex"):
            raise ConfigError(f"unknown format {self.fmt!r}")
        if self.which not in ("L", "Q"):
            raise ConfigError("frame must be L or Q")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")
        if self.ops is not None:
            if 0 not in self.ops:
                raise ConfigError("the operator subset must contain Q0")
            for g in self.genera:
                if any(k < 0 or k > 4 * g - 2 for k in self.ops):
                    raise ConfigError(f"operator labels must lie in 0 .. {4 * g - 2} for g={g}")
        return self


# -- per-command builders ------------------------------------------------------

def _frame_report(g: int, cfg: SuiteConfig) -> Report:
    rep = frame.t_matrix_report(g)
    rep.section(f"T matrix, g={g}", "matrix", T_rows(build_T(g), g))
    rep.section(f"vector fields, g={g}", "operators",
                [(f"L{2 * k}", op) for k, op in enumerate(frame.build_L(g))])
    return rep


def _ops_report(g: int, cfg: SuiteConfig) -> Report:
    fam = heat_family(g)
    rep = frame.shape_check(fam)
    rep.section(f"H operators, g={g}", "operators", [(f"H{2 * k}", h) for k, h in enumerate(fam.H)])
    rep.section(f"heat operators, g={g}", "operators",
                [(f"Q{2 * k}", q) for k, q in enumerate(fam.Q)])
    return rep


def _commute_report(g: int, cfg: SuiteConfig) -> Report:
    fam = heat_family(g)
    X = cfg.which
    ops = fam.frame(X)
    rep = Report()
    rows = []
    for i in range(2 * g):
        for j in range(i + 1, 2 * g):
            with rep.timed() as t:
                br = fam.bracket(X, i, j)
                try:
                    dec = decompose(br, ops, g)
                    text = " + ".join(f"({c})*{X}{2 * k}" for k, c in enumerate(dec.coefficients)
                                      if c) or "0"
                    ok = not dec.residual
                except (NotInModule, AmbiguousDecomposition) as exc:
                    text, ok = str(exc), False
            rows.append((f"[{X}{2 * i},{X}{2 * j}]", text))
            rep.add("commute", f"[{X}{2 * i},{X}{2 * j}] in span", f"g={g} {X}-frame", None,
                    ok=ok, duration=t["duration"], decomposition=text)
    rep.section(f"commutators of the {X}-frame, g={g}", "operators", rows)
    return rep


def _cole_hopf_report(g: int, cfg: SuiteConfig) -> Report:
    rep = jets.cole_hopf_suite(g, cfg.convention)
    system = jets.build_cole_hopf_derived(g, cfg.convention)
    sign = "+" if cfg.convention > 0 else "-"
    rep.section(f"transport operators, g={g}, convention {sign}", "operators",
                [(f"calL{2 * k} - L{2 * k}", op) for k, op in enumerate(system.zpart)])
    rep.section(f"sources, g={g}, convention {sign}", "operators",
                [(f"w[{2 * k},{s}]", w) for (k, s), w in sorted(system.sources.items())])
    return rep


def _jets_report(g: int, cfg: SuiteConfig) -> Report:
    return jets.jets_suite(g, cfg.convention, max_order=cfg.jet_order,
                           closure_order=min(5, cfg.jet_order))


def _sigma_report(g: int, cfg: SuiteConfig) -> Report:
    ops = cfg.ops if cfg.ops is not None else tuple(2 * k for k in range(min(3, 2 * g)))
    idx = [k // 2 for k in ops]
    rep = sigma.sigma_suite(g, cfg.max_weight, idx)
    sol = sigma.kernel_basis(g, idx, cfg.max_weight)
    for i, b in enumerate(sol.basis):
        rep.section(f"series basis[{i}], g={g}, W={cfg.max_weight}", "series", b.rows())
    return rep


def _verify_frame(g: int, cfg: SuiteConfig) -> Report:
    return frame.frame_suite(g)


def _verify_ops(g: int, cfg: SuiteConfig) -> Report:
    return frame.shape_check(heat_family(g))


VERIFY = {
    "frame": _verify_frame,
    "ops": _verify_ops,
    "cole-hopf": lambda g, cfg: jets.cole_hopf_suite(g, cfg.convention),
    "jets": _jets_report,
    "sigma": lambda g, cfg: sigma.sigma_suite(g, cfg.max_weight),
}

COMMANDS = {
    "frame": _frame_report,
    "ops": _ops_report,
    "commute": _commute_report,
    "cole-hopf": _cole_hopf_report,
    "jets": _jets_report,
    "solve-sigma": _sigma_report,
}


def clear_caches() -> None:
    """Drop cached operator families (needed after editing the tables in place)."""
    heat_family.cache_clear()
    jets._heat_jets.cache_clear()
    sigma._image.cache_clear()


def _task(args) -> Report:
    cfg, g, suite = args
    try:
        if cfg.command == "verify":
            return VERIFY[suite](g, cfg)
        return COMMANDS[cfg.command](g, cfg)
    except (jets.AuxLeak, sigma.TriangularityViolation) as exc:
        raise InternalInconsistency(f"{type(exc).__name__}: {exc}") from exc


def run(cfg: SuiteConfig) -> Report:
    """Run the configured suites; results merge in (suite, genus) order."""
    cfg.validate()
    if cfg.command == "verify":
        tasks = [(cfg, g, s) for s in SUITES if s in cfg.suites for g in cfg.genera]
    else:
        tasks = [(cfg, g, None) for g in cfg.genera]
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            parts = list(pool.map(_task, tasks))
    else:
        parts = [_task(t) for t in tasks]
    rep = Report(meta={
        "command": cfg.command,
        "genus": list(cfg.genera),
        "suites": list(cfg.suites) if cfg.command == "verify" else [],
        "convention": "+" if cfg.convention > 0 else "-",
        "jet_order": cfg.jet_order,
        "max_weight": cfg.max_weight,
        "strict": cfg.strict,
    })
    for p in parts:
        rep.extend(p)
    if cfg.strict:
        strictify(rep)
    return rep


# -- argument parsing ----------------------------------------------------------------

def _genera(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad genus list {text!r}")


def _ops(text: str) -> Tuple[int, ...]:
    try:
        labels = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad operator list {text!r}")
    if any(k % 2 for k in labels):
        raise argparse.ArgumentTypeError("operator labels are even (0,2,4,...)")
    return tuple(sorted(set(labels)))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="heatops", description="Exact verification of graded heat operators.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, genus_default="1,2,3"):
        sp.add_argument("--genus", type=_genera, default=_genera(genus_default),
                        help="genus or comma-separated list (default %(default)s)")
        sp.add_argument("--format", dest="fmt", choices=("text", "json", "latex"), default="text")
        sp.add_argument("--out", help="write the report here instead of stdout")
        sp.add_argument("--strict", action="store_true",
                        help="promote informational checks to failures")
        sp.add_argument("--no-timestamp", dest="timestamp", action="store_false",
                        help="omit timestamps and durations (byte-stable output)")
        sp.add_argument("--jobs", type=int, default=1, help="worker processes")

    def conv(sp):
        sp.add_argument("--convention", choices=("+", "-"), default="+",
                        help="sign s in psi_I = s * d_I ln(phi)")

    sp = sub.add_parser("frame", help="T matrix and vector fields L_2k")
    common(sp)
    sp = sub.add_parser("ops", help="heat operators and their shape checks")
    common(sp)
    sp = sub.add_parser("commute", help="commutator table of a frame")
    common(sp)
    sp.add_argument("--frame", dest="which", choices=("L", "Q"), default="Q")
    sp = sub.add_parser("verify", help="run verification suites")
    common(sp)
    conv(sp)
    sp.add_argument("--suite", default="all",
                    help="comma-separated subset of " + ",".join(SUITES) + " or 'all'")
    sp.add_argument("--jet-order", type=int, default=6)
    sp.add_argument("--max-weight", type=int, default=sigma.DEFAULT_MAX_WEIGHT)
    sp = sub.add_parser("cole-hopf", help="derive and diff the Cole-Hopf tables")
    common(sp)
    conv(sp)
    sp = sub.add_parser("jets", help="jet derivation bracket tables and closure")
    common(sp)
    conv(sp)
    sp.add_argument("--jet-order", type=int, default=6)
    sp = sub.add_parser("solve-sigma", help="series solution of the heat system")
    common(sp, genus_default="1")
    sp.add_argument("--max-weight", type=int, default=sigma.DEFAULT_MAX_WEIGHT)
    sp.add_argument("--ops", type=_ops, default=None,
                    help="operator labels, e.g. 0,2,4 (default: 0,2,4 or all for g=1)")
    return p


def config_from_args(argv: Optional[Sequence[str]] = None) -> SuiteConfig:
    ns = build_parser().parse_args(argv)
    cfg = SuiteConfig(command=ns.command, genera=ns.genus, fmt=ns.fmt, out=ns.out,
                      strict=ns.strict, timestamp=ns.timestamp, jobs=ns.jobs)
    if hasattr(ns, "convention"):
        cfg.convention = jets.PLUS if ns.convention == "+" else jets.MINUS
    if hasattr(ns, "suite"):
        cfg.suites = SUITES if ns.suite == "all" else tuple(
            "sigma" if s == "solve-sigma" else s for s in ns.suite.split(","))
    if hasattr(ns, "jet_order"):
        cfg.jet_order = ns.jet_order
    if hasattr(ns, "max_weight"):
        cfg.max_weight = ns.max_weight
    if hasattr(ns, "ops"):
        cfg.ops = ns.ops
    if hasattr(ns, "which"):
        cfg.which = ns.which
    return cfg.validate()


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        cfg = config_from_args(argv)
    except (ConfigError, UnsupportedGenus) as exc:
        print(f"heatops: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        rep = run(cfg)
        data = emit(rep, cfg.fmt, cfg.timestamp)
    except (ConfigError, UnsupportedGenus) as exc:
        print(f"heatops: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:  # anything else is a bug or an inconsistency
        print(f"heatops: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    try:
        if cfg.out:
            with open(cfg.out, "wb") as fh:
                fh.write(data)
        else:
            sys.stdout.buffer.write(data)
            sys.stdout.flush()
    except OSError as exc:
        print(f"heatops: cannot write report: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_PASS if rep.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
