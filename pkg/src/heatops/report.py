"""Check records and report serialization (text, JSON, LaTeX)."""
from __future__ import annotations

import json
import re
import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional

SCHEMA_VERSION = 1

PASS, FAIL, INFO = "pass", "fail", "info"


@dataclass
class Check:
    suite: str
    relation: str
    locus: str
    status: str
    witness: str = "0"
    duration: float = 0.0
    informational: bool = False
    data: Dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.informational or self.status == PASS


@dataclass
class Section:
    """A table attached to a report.

    kind "matrix": rows of entry strings; "operators": (name, text) pairs;
    "series": (lambda-weight, lambda-monomial, z-monomial, coefficient) rows.
    """
    title: str
    kind: str
    rows: List[List[Any]]


@dataclass
class Report:
    checks: List[Check] = field(default_factory=list)
    meta: Dict[str, Any] = field(default_factory=dict)
    sections: List[Section] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def extend(self, other: "Report") -> "Report":
        self.checks.extend(other.checks)
        self.sections.extend(other.sections)
        return self

    def section(self, title: str, kind: str, rows) -> Section:
        s = Section(title, kind, [[str(x) for x in r] for r in rows])
        self.sections.append(s)
        return s

    def add(self, suite: str, relation: str, locus: str, residual=None, *,
            ok: Optional[bool] = None, duration: float = 0.0, informational: bool = False,
            **data) -> Check:
        """Record a check.  By default it passes iff ``residual`` is zero."""
        if ok is None:
            ok = not residual
        witness = "0" if residual is None or not residual else str(residual)
        status = PASS if ok else (INFO if informational else FAIL)
        c = Check(suite, relation, locus, status, witness, duration, informational, data)
        self.checks.append(c)
        return c

    @contextmanager
    def timed(self):
        """Yield a dict; the elapsed time lands in its 'duration' key."""
        box: Dict[str, float] = {}
        t0 = time.perf_counter()
        try:
            yield box
        finally:
            box["duration"] = time.perf_counter() - t0

    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.ok]

    def by_suite(self, suite: str) -> List[Check]:
        return [c for c in self.checks if c.suite == suite]

    def find(self, relation: str) -> Check:
        for c in self.checks:
            if c.relation == relation:
                return c
        raise KeyError(relation)


def strictify(report: Report) -> Report:
    """Promote informational non-passing checks to failures."""
    for c in report.checks:
        if c.informational and c.status != PASS:
            c.informational = False
            c.status = FAIL
    return report


def to_json(report: Report, timestamp: bool = True) -> str:
    doc = {
        "schema": SCHEMA_VERSION,
        "overall": report.passed,
        "meta": report.meta,
        "checks": [],
        "sections": [asdict(s) for s in report.sections],
    }
    if timestamp:
        doc["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    for c in report.checks:
        rec = asdict(c)
        if not timestamp:
            rec.pop("duration")
        doc["checks"].append(rec)
    return json.dumps(doc, indent=2, sort_keys=True, default=str) + "\n"


def _text_section(s: Section) -> List[str]:
    lines = [f"== {s.title}"]
    if s.kind == "matrix":
        for i, row in enumerate(s.rows):
            lines.extend(f"  [{i + 1},{j + 1}] {x}" for j, x in enumerate(row))
    elif s.kind == "operators":
        lines.extend(f"  {name} = {text}" for name, text in s.rows)
    else:
        lines.extend("  " + "  ".join(r) for r in s.rows)
    return lines


def to_text(report: Report, timestamp: bool = True) -> str:
    lines = []
    for s in report.sections:
        lines.extend(_text_section(s))
    for c in report.checks:
        line = f"[{c.status.upper():4}] {c.suite:10} {c.relation}  ({c.locus})"
        if timestamp:
            line += f"  {c.duration * 1000:.1f} ms"
        if c.status != PASS:
            line += f"\n        witness: {c.witness}"
        lines.append(line)
    failed = len(report.failures())
    lines.append(f"overall: {'PASS' if report.passed else 'FAIL'} "
                 f"({len(report.checks)} checks, {failed} failing)")
    return "\n".join(lines) + "\n"


def _tex_escape(s: str) -> str:
    return s.replace("_", r"\_").replace("&", r"\&").replace("#", r"\#")


_TEX_ATOM = re.compile(r"(\d+)/(\d+)|psi\[([\d,]+)\]|aux\[(\w+)\]|d/d([lz])(\d+)|([lz])(\d+)|\^(\d+)|\*")


_TEX_VAR = {"l": r"\lambda", "z": "z"}


def _tex_atom(m: re.Match) -> str:
    frac, den, pidx, tag, dk, dn, vk, vn, exp = m.groups()
    if frac:
        return rf"\tfrac{{{frac}}}{{{den}}}"
    if pidx:
        return rf"\psi_{{{pidx.replace(',', '')}}}"
    if tag:
        return rf"\mathrm{{{tag}}}"
    if dk:
        return r"\partial_{" + _TEX_VAR[dk] + f"_{{{dn}}}}}"
    if vk:
        return _TEX_VAR[vk] + f"_{{{vn}}}"
    if exp:
        return f"^{{{exp}}}"
    return " "


def tex_expr(text: str) -> str:
    """Render the polynomial/operator text grammar as LaTeX math."""
    return _TEX_ATOM.sub(_tex_atom, text)


def _tex_section(s: Section) -> List[str]:
    out = [f"% {s.title}"]
    if s.kind == "matrix":
        out.append(r"\[")
        out.append(r"\begin{pmatrix}")
        for row in s.rows:
            out.append(" & ".join(tex_expr(x) for x in row) + r" \\")
        out.append(r"\end{pmatrix}")
        out.append(r"\]")
    elif s.kind == "operators":
        out.append(r"\begin{align*}")
        for name, text in s.rows:
            out.append(f"{tex_expr(name)} &= {tex_expr(text)} \\\\")
        out.append(r"\end{align*}")
    else:
        out.append(r"\begin{longtable}{rllr}")
        out.append(r"$\lambda$-weight & $\lambda$-part & $z$-part & coefficient \\ \hline")
        for r in s.rows:
            w, lm, zm, c = r
            out.append(f"{w} & ${tex_expr(lm)}$ & ${tex_expr(zm)}$ & ${tex_expr(c)}$ \\\\")
        out.append(r"\end{longtable}")
    return out


def to_latex(report: Report, timestamp: bool = True) -> str:
    rows = []
    for s in report.sections:
        rows.extend(_tex_section(s))
    rows += [r"\begin{longtable}{lllc}", r"suite & relation & locus & status \\ \hline"]
    for c in report.checks:
        rows.append(f"{_tex_escape(c.suite)} & \\texttt{{{_tex_escape(c.relation)}}} & "
                    f"{_tex_escape(c.locus)} & {c.status} \\\\")
    rows.append(r"\end{longtable}")
    return "\n".join(rows) + "\n"


def emit(report: Report, fmt: str = "text", timestamp: bool = True) -> bytes:
    if fmt == "json":
        text = to_json(report, timestamp)
    elif fmt == "latex":
        text = to_latex(report, timestamp)
    elif fmt == "text":
        text = to_text(report, timestamp)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    return text.encode()
