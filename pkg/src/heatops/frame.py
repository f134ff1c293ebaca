"""Nonholonomic frames {L_2k}, heat operators Q_2k = L_2k - H_2k, and their
verification suites (commutator tables, Lie-Rinehart axioms, isomorphism of
the two frames, and reduction of the system to Q_0, Q_2, Q_4).
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple, Union

from . import tables
from .linalg import det
from .operators import (AmbiguousDecomposition, DiffOperator, NotInModule, combine, commutator,
                        decompose, module_kernel_dim)
from .poly import LAMBDA, Z, Inhomogeneous, Poly, lam, lambda_vars, parse_poly
from .report import Report

TMatrix = Dict[Tuple[int, int], Poly]


class UnsupportedGenus(ValueError):
    pass


class ShapeViolation(ValueError):
    pass


class ReductionNotFound(RuntimeError):
    pass


def _require_tabulated(g: int) -> None:
    if g not in tables.H_PRINTED:
        raise UnsupportedGenus(f"heat operators are only tabulated for g = 1, 2, 3 (got {g})")


# -- T and L -------------------------------------------------------------------

def build_T(g: int) -> TMatrix:
    """Symmetric 2g x 2g matrix keyed by even labels (2k, 2m), 1 <= k, m <= 2g."""
    if g < 1:
        raise ValueError("genus must be >= 1")
    L = lambda k: Poly.lam(k, g)  # noqa: E731
    T: TMatrix = {}
    for k in range(1, 2 * g + 1):
        for m in range(k, 2 * g + 1):
            entry = L(2 * (k + m)) * (2 * (k + m))
            for s in range(2, k):
                entry = entry + L(2 * s) * L(2 * (k + m - s)) * (2 * (k + m - 2 * s))
            entry = entry - L(2 * k) * L(2 * m) * Fraction(2 * k * (2 * g - m + 1), 2 * g + 1)
            T[(2 * k, 2 * m)] = T[(2 * m, 2 * k)] = entry
    return T


def T_rows(T: TMatrix, g: int) -> List[List[Poly]]:
    return [[T[(2 * k, 2 * m)] for m in range(1, 2 * g + 1)] for k in range(1, 2 * g + 1)]


def printed_T(g: int) -> List[List[Poly]]:
    entry = tables.T_PRINTED[g]
    A = [[parse_poly(x, g) for x in row] for row in entry["A"]]
    if entry["B"] is None:
        return A
    d = entry["denominator"]
    return [[a - parse_poly(b, g) * Fraction(1, d) for a, b in zip(ra, rb)]
            for ra, rb in zip(A, entry["B"])]


def build_L(g: int) -> List[DiffOperator]:
    """L_2k = sum_{s=2}^{2g+1} T_{2k+2, 2s-2} d/dl_{2s}, k = 0 .. 2g-1."""
    T = build_T(g)
    out = []
    for k in range(2 * g):
        terms = {}
        for s in range(2, 2 * g + 2):
            c = T[(2 * k + 2, 2 * s - 2)]
            if c:
                terms[((lam(2 * s), 1),)] = c
        out.append(DiffOperator(terms))
    return out


def t_matrix_report(g: int) -> Report:
    """Entrywise comparison of build_T with the transcribed matrix."""
    rep = Report()
    if g not in tables.T_PRINTED:
        return rep
    with rep.timed() as t:
        built = T_rows(build_T(g), g)
        printed = printed_T(g)
    for a, (rb, rp) in enumerate(zip(built, printed)):
        for b, (x, y) in enumerate(zip(rb, rp)):
            rep.add("T", f"T[{2 * a + 2},{2 * b + 2}]", f"T matrix g={g}", x - y,
                    duration=t["duration"] / len(built) ** 2)
    return rep


# -- heat operators ----------------------------------------------------------------

@dataclass
class HeatOperatorFamily:
    genus: int
    L: List[DiffOperator]
    H: List[DiffOperator]
    Q: List[DiffOperator]
    _brackets: Dict = field(default_factory=dict, repr=False, compare=False)

    def frame(self, which: str) -> List[DiffOperator]:
        return {"L": self.L, "Q": self.Q}[which]

    def bracket(self, which: str, i: int, j: int) -> DiffOperator:
        key = (which, i, j)
        if key not in self._brackets:
            ops = self.frame(which)
            self._brackets[key] = commutator(ops[i], ops[j])
        return self._brackets[key]


def build_Q(g: int, h_tables: Optional[Dict[int, str]] = None) -> HeatOperatorFamily:
    """Heat operators from the transcribed H tables (or ``h_tables`` if given)."""
    _require_tabulated(g)
    src = h_tables if h_tables is not None else tables.H_PRINTED[g]
    L = build_L(g)
    H = [DiffOperator.parse(src[k], g) for k in range(2 * g)]
    Q = [l - h for l, h in zip(L, H)]
    return HeatOperatorFamily(g, L, H, Q)


@lru_cache(maxsize=None)
def heat_family(g: int) -> HeatOperatorFamily:
    """Cached family built from the printed tables."""
    return build_Q(g)


def sigma_weight(g: int) -> int:
    return g * (g + 1) // 2


# -- shape of H ----------------------------------------------------------------

def _lambda_degree(p: Poly) -> int:
    return p.degree_in(LAMBDA)


def shape_check(fam: HeatOperatorFamily, strict: bool = False) -> Report:
    """Check every H_2k against the admissible second-order shape.

    H = 1/2 sum alpha_ab d_a d_b + sum beta_ab z_a d_b + 1/2 sum gamma_ab z_a z_b + delta
    with alpha_ab = [a + b = 2k], beta linear and gamma quadratic in lambda,
    and delta = c_k * lambda_2k.  The extracted c_k land in the report.
    """
    g = fam.genus
    rep = Report()
    odd = [2 * i + 1 for i in range(g)]
    for k, H in enumerate(fam.H):
        problems = []
        alpha: Dict[Tuple[int, int], Poly] = {}
        delta = Poly()
        for d, coef in H.terms.items():
            order = sum(e for _, e in d)
            if any(v.kind != Z for v, _ in d):
                problems.append(f"derivative in lambda: {d}")
                continue
            if order == 2:
                idx = [v.index for v, e in d for _ in range(e)]
                a, b = idx
                alpha[(a, b)] = coef * (2 if a == b else 1)
            elif order == 1:
                for m, c in coef.items():
                    zs = [(v, e) for v, e in m if v.kind == Z]
                    if sum(e for _, e in zs) != 1 or _lambda_degree(Poly({m: c})) > 1:
                        problems.append(f"first-order term {Poly({m: c})}*d/d{d[0][0]}")
            elif order == 0:
                for m, c in coef.items():
                    zdeg = sum(e for v, e in m if v.kind == Z)
                    if zdeg == 2:
                        if _lambda_degree(Poly({m: c})) > 2:
                            problems.append(f"potential term {Poly({m: c})} not quadratic in lambda")
                    elif zdeg == 0:
                        delta = delta + Poly({m: c})
                    else:
                        problems.append(f"zeroth-order term {Poly({m: c})} of z-degree {zdeg}")
            else:
                problems.append(f"order {order} term")
        for a in odd:
            for b in odd:
                if a > b:
                    continue
                want = Poly.const(1) if a + b == 2 * k else Poly()
                if alpha.get((a, b), Poly()) != want:
                    problems.append(f"alpha[{a},{b}] = {alpha.get((a, b), Poly())}, expected {want}")
        # delta = c_k * lambda_2k; for k = 0 the constant is the Euler eigenvalue
        if k == 0:
            c_k = delta.constant()
            if not delta.is_constant():
                problems.append(f"delta = {delta} is not constant")
        else:
            unit = Poly.lam(2 * k, g)
            if not unit:
                c_k = Fraction(0)
                if delta:
                    problems.append(f"delta = {delta}, expected 0 (lambda_{2 * k} vanishes)")
            else:
                c_k = delta.coefficient(((lam(2 * k), 1),))
                if delta != unit * c_k:
                    problems.append(f"delta = {delta} is not a multiple of lambda_{2 * k}")
        try:
            w = H.weight()
            if w != 2 * k:
                problems.append(f"weight {w}, expected {2 * k}")
        except ValueError as exc:
            problems.append(str(exc))
        if problems and strict:
            raise ShapeViolation(f"H_{2 * k} (g={g}): {problems[0]}")
        rep.add("shape", f"H{2 * k} shape", f"g={g} H_{2 * k}", "; ".join(problems),
                c_k=str(c_k))
    return rep


# -- structure matrices ----------------------------------------------------------------

def printed_structure_rows(g: int) -> Dict[Tuple[int, int], List[Poly]]:
    """{(i, j): coefficients over generators 0..2g-1} for [X_2i, X_2j], i < j.

    Includes the Euler relations [X_0, X_2k] = 2k X_2k.
    """
    n = 2 * g
    rows: Dict[Tuple[int, int], List[Poly]] = {}
    for k in range(1, n):
        row = [Poly() for _ in range(n)]
        row[k] = Poly.const(2 * k)
        rows[(0, k)] = row
    if g in tables.STRUCTURE_MATRIX:
        entry = tables.STRUCTURE_MATRIX[g]
        factor = Fraction(entry["factor"])
        for pair, row in zip(tables.BRACKET_ROWS[g], entry["rows"]):
            rows[pair] = [parse_poly(x, g) * factor for x in row]
    return rows


def action_on(X: DiffOperator, a: Poly) -> Poly:
    """X(a) := [X, a] for a in Q[lambda]; must be a multiplication operator."""
    c = commutator(X, DiffOperator.mult(a))
    if any(d for d in c.terms):
        raise ValueError(f"[X, {a}] is not a multiplication operator")
    return c.coefficient(())


def verify_frame_relations(g: int, fam: Optional[HeatOperatorFamily] = None,
                           jacobi: bool = True) -> Report:
    fam = fam or heat_family(g)
    rep = Report()
    n = 2 * g
    T = build_T(g)
    rows = printed_structure_rows(g)
    for which in ("L", "Q"):
        ops = fam.frame(which)
        for (i, j), row in rows.items():
            with rep.timed() as t:
                br = fam.bracket(which, i, j)
                residual = br - combine(row, ops)
                unique = None
                if not residual:
                    try:
                        dec = decompose(br, ops, g)
                        unique = dec.unique and dec.coefficients == row
                    except (NotInModule, AmbiguousDecomposition, Inhomogeneous):
                        unique = False
            locus = "Euler relation" if i == 0 else f"structure matrix g={g} row {_row_no(g, i, j)}"
            rep.add("frame", f"[{which}{2 * i},{which}{2 * j}]", locus, residual,
                    ok=not residual and unique is not False, duration=t["duration"])
    ops = fam.Q
    for k in range(n):
        for s in range(2, 2 * g + 2):
            with rep.timed() as t:
                br = commutator(ops[k], DiffOperator.mult(Poly.var(lam(2 * s))))
                residual = br - DiffOperator.mult(T[(2 * k + 2, 2 * s - 2)])
            rep.add("frame", f"[Q{2 * k},l{2 * s}]=T[{2 * k + 2},{2 * s - 2}]",
                    f"coordinate action g={g}", residual, duration=t["duration"])
    if jacobi:
        rep.extend(jacobi_report(g, fam))
    return rep


def _row_no(g: int, i: int, j: int) -> int:
    return tables.BRACKET_ROWS[g].index((i, j)) + 1


def jacobi_report(g: int, fam: Optional[HeatOperatorFamily] = None) -> Report:
    fam = fam or heat_family(g)
    rep = Report()
    for which in ("L", "Q"):
        ops = fam.frame(which)
        for a, b, c in combinations(range(2 * g), 3):
            with rep.timed() as t:
                total = (commutator(fam.bracket(which, a, b), ops[c])
                         + commutator(fam.bracket(which, b, c), ops[a])
                         - commutator(fam.bracket(which, a, c), ops[b]))
            rep.add("jacobi", f"Jacobi({which}{2 * a},{which}{2 * b},{which}{2 * c})",
                    f"g={g} {which}-frame", total, duration=t["duration"])
    return rep


# -- Lie-Rinehart axioms ---------------------------------------------------------

def _sample_polys(g: int, count: int, seed: int) -> List[Poly]:
    rng = random.Random(seed)
    lv = lambda_vars(g)
    out = []
    for _ in range(count):
        p = Poly()
        for _ in range(rng.randint(1, 3)):
            m = Poly.const(Fraction(rng.randint(-5, 5), rng.randint(1, 4)))
            for _ in range(rng.randint(0, 2)):
                m = m * Poly.var(rng.choice(lv))
            p = p + m
        out.append(p)
    return out


def _homogeneous_samples(g: int) -> List[Poly]:
    lv = lambda_vars(g)
    return [Poly.var(v) for v in lv] + [Poly.var(a) * Poly.var(b) for a, b in combinations(lv, 2)]


def check_polynomial_lie_axioms(g: int, which: str = "L", samples: int = 6,
                                seed: int = 0, fam: Optional[HeatOperatorFamily] = None) -> Report:
    fam = fam or heat_family(g)
    ops = fam.frame(which)
    rep = Report()
    polys = _sample_polys(g, samples, seed)
    n = 2 * g
    # (i) derivations of A
    for k, X in enumerate(ops):
        bad = Poly()
        for a, b in zip(polys, polys[1:]):
            bad = bad + action_on(X, a * b) - action_on(X, a) * b - a * action_on(X, b)
        rep.add("axioms", f"{which}{2 * k} derivation of A", f"g={g} Lie-Rinehart derivation axiom", bad)
    # (ii) compatibility
    for i in range(n):
        for j in range(n):
            a = polys[(i + j) % len(polys)]
            lhs = commutator(ops[i], ops[j].scale(a))
            rhs = ops[j].scale(action_on(ops[i], a)) + commutator(ops[i], ops[j]).scale(a)
            rep.add("axioms", f"[{which}{2 * i}, a*{which}{2 * j}] Leibniz",
                    f"g={g} Lie-Rinehart module axiom", lhs - rhs)
    for k, X in enumerate(ops):
        a, b = polys[k % len(polys)], polys[(k + 1) % len(polys)]
        lhs = action_on(X.scale(a), b)
        rep.add("axioms", f"(a*{which}{2 * k})(b) = a*{which}{2 * k}(b)",
                f"g={g} Lie-Rinehart module axiom", lhs - a * action_on(X, b))
    # (iii) grading
    problems = []
    for k, X in enumerate(ops):
        if X.weight() != 2 * k:
            problems.append(f"wt {which}{2 * k} = {X.weight()}")
        for q in _homogeneous_samples(g):
            img = action_on(X, q)
            if img and img.weight() != q.weight() + 2 * k:
                problems.append(f"wt {which}{2 * k}({q}) = {img.weight()}")
            p = q
            if X.scale(p).weight() != p.weight() + 2 * k:
                problems.append(f"wt ({p})*{which}{2 * k}")
    for i, j in combinations(range(n), 2):
        br = fam.bracket(which, i, j)
        if br and br.weight() != 2 * (i + j):
            problems.append(f"wt [{which}{2 * i},{which}{2 * j}] = {br.weight()}")
    rep.add("axioms", f"{which}-frame grading", f"g={g} polynomial Lie algebra grading",
            "; ".join(problems))
    # (iv) freeness: lambda-derivative coefficient matrix is nondegenerate,
    # and no nonzero Q[lambda]-relation among generators in low weights
    point = {v: Fraction(3 + 2 * i, 1 + i) for i, v in enumerate(lambda_vars(g))}
    matrix = [[ops[k].coefficient(((v, 1),)).evaluate(point) for v in lambda_vars(g)]
              for k in range(n)]
    d = det(matrix)
    kernels = {w: module_kernel_dim(ops, g, w) for w in range(0, 4 * g + 4, 2)}
    rep.add("axioms", f"{which}-frame free of rank {n}", f"g={g} polynomial Lie algebra freeness",
            "" if d and not any(kernels.values()) else f"det={d}, kernels={kernels}",
            det_at_point=str(d))
    return rep


# -- isomorphism of L and Q frames ---------------------------------------------

def structure_polynomials(g: int, which: str, fam: Optional[HeatOperatorFamily] = None):
    """c[(i, j)] = coefficients of [X_2i, X_2j], v[(k, q)] = X_2k(lambda_q)."""
    fam = fam or heat_family(g)
    ops = fam.frame(which)
    c = {}
    for i, j in combinations(range(2 * g), 2):
        c[(i, j)] = decompose(fam.bracket(which, i, j), ops, g).coefficients
    v = {}
    for k, X in enumerate(ops):
        for lv in lambda_vars(g):
            v[(k, lv.index)] = action_on(X, Poly.var(lv))
    return c, v


def check_isomorphism(g: int, fam: Optional[HeatOperatorFamily] = None) -> Report:
    fam = fam or heat_family(g)
    rep = Report()
    cL, vL = structure_polynomials(g, "L", fam)
    cQ, vQ = structure_polynomials(g, "Q", fam)
    T = build_T(g)
    for key in cL:
        diff = "; ".join(f"{a - b}" for a, b in zip(cL[key], cQ[key]) if a != b)
        i, j = key
        rep.add("isomorphism", f"c[{2 * i},{2 * j}] L vs Q", f"g={g} structure polynomials", diff,
                coefficients=[str(x) for x in cL[key]])
    for (k, q), val in vL.items():
        diff = val - vQ[(k, q)]
        diff = diff + (val - T[(2 * k + 2, q - 2)])
        rep.add("isomorphism", f"v[{2 * k}]^{q} L vs Q", f"g={g} coordinate action", diff)
    return rep


# -- reduction to Q0, Q2, Q4 --------------------------------------------------------

@dataclass(frozen=True)
class Gen:
    k: int

    def __str__(self) -> str:
        return f"Q{2 * self.k}"


@dataclass(frozen=True)
class Bracket:
    left: "Expr"
    right: "Expr"

    def __str__(self) -> str:
        return f"[{self.left}, {self.right}]"


@dataclass(frozen=True)
class Combination:
    terms: Tuple[Tuple[Poly, "Expr"], ...]

    def __str__(self) -> str:
        parts = []
        for c, e in self.terms:
            ctext = str(c)
            if c == Poly.const(1):
                parts.append(str(e))
            elif c == Poly.const(-1):
                parts.append(f"-{e}")
            elif len(c.terms) == 1:
                parts.append(f"{ctext}*{_paren(e)}")
            else:
                parts.append(f"({ctext})*{_paren(e)}")
        return " + ".join(parts).replace("+ -", "- ")


Expr = Union[Gen, Bracket, Combination]


def _paren(e: Expr) -> str:
    return f"({e})" if isinstance(e, Combination) else str(e)


def evaluate(e: Expr, ops: Sequence[DiffOperator]) -> DiffOperator:
    if isinstance(e, Gen):
        return ops[e.k]
    if isinstance(e, Bracket):
        return commutator(evaluate(e.left, ops), evaluate(e.right, ops))
    return combine([c for c, _ in e.terms], [evaluate(x, ops) for _, x in e.terms])


def expand_generators(e: Expr) -> set:
    if isinstance(e, Gen):
        return {e.k}
    if isinstance(e, Bracket):
        return expand_generators(e.left) | expand_generators(e.right)
    return set().union(*(expand_generators(x) for _, x in e.terms))


@dataclass
class Reduction:
    target: int
    via: Tuple[int, int]
    expression: Expr
    verified: bool


def sufficiency_reduction(g: int, fam: Optional[HeatOperatorFamily] = None,
                          base: int = 3) -> List[Reduction]:
    """Express Q_6, ..., Q_{4g-2} through Q_0, Q_2, Q_4 and iterated brackets."""
    if g < 2:
        raise ValueError("the reduction concerns g >= 2")
    fam = fam or heat_family(g)
    ops = fam.Q
    n = 2 * g
    expressed: Dict[int, Expr] = {k: Gen(k) for k in range(min(base, n))}
    out = []
    for t in range(base, n):
        found = None
        for i, j in sorted(combinations(sorted(expressed), 2), key=lambda p: (p[0] == 0, p)):
            if i == 0:
                continue
            coeffs = decompose(fam.bracket("Q", i, j), ops, g).coefficients
            lead = coeffs[t]
            if not lead or not lead.is_constant():
                continue
            if any(c and k != t and k not in expressed for k, c in enumerate(coeffs)):
                continue
            inv = 1 / lead.constant()
            terms = [(Poly.const(inv), Bracket(expressed[i], expressed[j]))]
            for k, c in enumerate(coeffs):
                if c and k != t:
                    terms.append((c * (-inv), expressed[k]))
            found = (i, j), Combination(tuple(terms))
            break
        if found is None:
            raise ReductionNotFound(f"no bracket of expressed generators produces Q{2 * t}")
        pair, expr = found
        ok = not (evaluate(expr, ops) - ops[t])
        if not ok:
            raise ReductionNotFound(f"reduction of Q{2 * t} does not verify")
        expressed[t] = expr
        out.append(Reduction(t, pair, expr, ok))
    return out


def sufficiency_report(g: int, fam: Optional[HeatOperatorFamily] = None) -> Report:
    rep = Report()
    with rep.timed() as t:
        reds = sufficiency_reduction(g, fam)
    for r in reds:
        leaves = expand_generators(r.expression)
        rep.add("sufficiency", f"Q{2 * r.target} from Q0,Q2,Q4",
                f"g={g} via [Q{2 * r.via[0]},Q{2 * r.via[1]}]", None,
                ok=r.verified and leaves <= {0, 1, 2}, duration=t["duration"],
                expression=str(r.expression))
    return rep


def frame_suite(g: int) -> Report:
    """Everything for one genus: shape, relations, Jacobi, axioms, isomorphism."""
    rep = Report()
    fam = heat_family(g)
    rep.extend(t_matrix_report(g))
    rep.extend(shape_check(fam))
    rep.extend(verify_frame_relations(g, fam))
    for which in ("L", "Q"):
        rep.extend(check_polynomial_lie_axioms(g, which, fam=fam))
    rep.extend(check_isomorphism(g, fam))
    if g >= 2:
        rep.extend(sufficiency_report(g, fam))
    return rep
