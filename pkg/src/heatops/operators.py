"""Normal-ordered differential operators with polynomial coefficients.

An operator is a finite sum  sum_a p_a(z, lambda) * D^a  where every derivative
monomial D^a (in d/dz_k and d/dl_k) stands to the right of its coefficient.
Equality of operators is equality of these coefficient maps.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .linalg import solve
from .poly import (LAMBDA, Z, Inhomogeneous, Monomial, Poly, Var, ZeroPolynomial, format_monomial,
                   format_terms, lambda_monomials, monomial_mul, monomial_weight,
                   parse_expression)

DerivMonomial = Tuple[Tuple[Var, int], ...]


class NotInModule(ValueError):
    pass


class AmbiguousDecomposition(ValueError):
    pass


def deriv_weight(d: DerivMonomial) -> int:
    # d/dz_k has weight +k, d/dl_k has weight -k
    return -sum(v.weight * e for v, e in d)


def format_deriv(d: DerivMonomial) -> str:
    return "*".join(f"d/d{v}" if e == 1 else f"d/d{v}^{e}" for v, e in d)


class DiffOperator:
    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[DerivMonomial, Poly]] = None):
        self.terms = {d: p for d, p in (terms or {}).items() if p}

    @classmethod
    def mult(cls, p: Poly) -> "DiffOperator":
        """Multiplication by p, i.e. p * id."""
        return cls({(): p})

    @classmethod
    def d(cls, v: Var, exp: int = 1) -> "DiffOperator":
        if v.kind not in (Z, LAMBDA):
            raise ValueError(f"cannot differentiate by {v}")
        return cls({((v, exp),): Poly.const(1)})

    @classmethod
    def parse(cls, text: str, genus: Optional[int] = None) -> "DiffOperator":
        """Parse e.g. ``"1/2*d/dz1^2 - 1/6*l4*z1^2"``; derivative factors are
        read as standing to the right of the coefficient variables."""
        acc: Dict[DerivMonomial, Dict[Monomial, Fraction]] = {}
        for (m, dm), c in parse_expression(text, genus).items():
            acc.setdefault(dm, {})[m] = c
        return cls({dm: Poly(t) for dm, t in acc.items()})

    # -- algebra ------------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, DiffOperator):
            return NotImplemented
        return self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "DiffOperator") -> "DiffOperator":
        acc = dict(self.terms)
        for d, p in other.terms.items():
            acc[d] = acc[d] + p if d in acc else p
        return DiffOperator(acc)

    def __neg__(self) -> "DiffOperator":
        return DiffOperator({d: -p for d, p in self.terms.items()})

    def __sub__(self, other: "DiffOperator") -> "DiffOperator":
        return self + (-other)

    def scale(self, p) -> "DiffOperator":
        """Left multiplication by a polynomial (or rational)."""
        if not isinstance(p, Poly):
            p = Poly.const(p)
        return DiffOperator({d: p * q for d, q in self.terms.items()})

    __rmul__ = scale

    def __matmul__(self, other: "DiffOperator") -> "DiffOperator":
        return compose(self, other)

    # -- inspection ---------------------------------------------------------
    def items(self):
        return sorted(self.terms.items(), key=lambda t: (sum(e for _, e in t[0]), t[0]))

    def order(self) -> int:
        return max((sum(e for _, e in d) for d in self.terms), default=0)

    def weight(self) -> int:
        if not self.terms:
            raise ZeroPolynomial("weight of the zero operator is undefined")
        ws = {monomial_weight(m) + deriv_weight(d) for d, p in self.terms.items() for m in p.terms}
        if len(ws) > 1:
            raise Inhomogeneous(f"operator terms of weights {sorted(ws)}")
        return ws.pop()

    def coefficient(self, d: DerivMonomial) -> Poly:
        return self.terms.get(d, Poly())

    def term_pairs(self) -> List[Tuple[str, str]]:
        """(coefficient, derivative) string pairs, one per coefficient monomial."""
        out = []
        for d, p in self.items():
            for m, c in p.items():
                out.append((str(Poly({m: c})), format_deriv(d)))
        return out

    def __str__(self) -> str:
        chunks = []
        for d, p in self.items():
            dtxt = format_deriv(d)
            for m, c in p.items():
                body = "*".join(x for x in (format_monomial(m), dtxt) if x)
                chunks.append((body, c))
        return format_terms(chunks)

    def __repr__(self) -> str:
        return f"DiffOperator({self})"


def _deriv_poly(p: Poly, d: Iterable[Tuple[Var, int]]) -> Poly:
    for v, e in d:
        for _ in range(e):
            p = p.partial(v)
            if not p:
                return p
    return p


def _merge(a: DerivMonomial, b: DerivMonomial) -> DerivMonomial:
    return monomial_mul(a, b)


def compose(a: DiffOperator, b: DiffOperator) -> DiffOperator:
    """Normal-ordered product a o b (multi-index Leibniz rule)."""
    acc: Dict[DerivMonomial, Poly] = {}
    for da, pa in a.terms.items():
        vars_a = [v for v, _ in da]
        ranges = [range(e + 1) for _, e in da]
        for db, pb in b.terms.items():
            for gamma in product(*ranges):
                # split d^alpha = d^gamma (hits pb) * d^(alpha-gamma) (passes through)
                binom = 1
                for (v, e), g in zip(da, gamma):
                    binom *= comb(e, g)
                hit = _deriv_poly(pb, [(v, g) for v, g in zip(vars_a, gamma) if g])
                if not hit:
                    continue
                rest = tuple((v, e - g) for (v, e), g in zip(da, gamma) if e - g)
                dm = _merge(rest, db)
                term = pa * hit * binom
                acc[dm] = acc[dm] + term if dm in acc else term
    return DiffOperator(acc)


def commutator(a: DiffOperator, b: DiffOperator) -> DiffOperator:
    return compose(a, b) - compose(b, a)


def apply(a: DiffOperator, f: Poly) -> Poly:
    out = Poly()
    for d, p in a.terms.items():
        hit = _deriv_poly(f, d)
        if hit:
            out = out + p * hit
    return out


@dataclass
class StructureDecomposition:
    coefficients: List[Poly]
    residual: DiffOperator = field(default_factory=DiffOperator)
    kernel_dim: int = 0

    @property
    def unique(self) -> bool:
        return self.kernel_dim == 0


def _flatten(op: DiffOperator) -> Dict[Tuple[DerivMonomial, Monomial], Fraction]:
    return {(d, m): c for d, p in op.terms.items() for m, c in p.terms.items()}


def decompose(target: DiffOperator, generators: Sequence[DiffOperator], genus: int,
              weight: Optional[int] = None, strict: bool = True) -> StructureDecomposition:
    """Write ``target`` as sum_k c_k(lambda) * generators[k] with c_k in Q[lambda].

    The weight equation wt c_k = wt(target) - wt(generators[k]) bounds the
    candidate monomials, so the problem is a finite exact linear system.  Pass
    ``weight`` explicitly when ``target`` is zero.  With ``strict`` a
    positive-dimensional solution space raises AmbiguousDecomposition.
    """
    if weight is None:
        weight = target.weight()
    unknowns = []
    columns = []
    for k, gen in enumerate(generators):
        for m in lambda_monomials(weight - gen.weight(), genus):
            shifted = gen.scale(Poly({m: Fraction(1)}))
            unknowns.append((k, m))
            columns.append(_flatten(shifted))
    sol, kernel = solve(columns, _flatten(target))
    if sol is None:
        raise NotInModule(f"{target} is not in the Q[lambda]-span of the generators")
    if kernel and strict:
        raise AmbiguousDecomposition(f"solution space has dimension {len(kernel)}")
    coeffs = [Poly() for _ in generators]
    for (k, m), x in zip(unknowns, sol):
        if x:
            coeffs[k] = coeffs[k] + Poly({m: x})
    residual = target - combine(coeffs, generators)
    return StructureDecomposition(coeffs, residual, len(kernel))


def combine(coeffs: Sequence[Poly], generators: Sequence[DiffOperator]) -> DiffOperator:
    out = DiffOperator()
    for c, g in zip(coeffs, generators):
        if c:
            out = out + g.scale(c)
    return out


def module_kernel_dim(generators: Sequence[DiffOperator], genus: int, weight: int) -> int:
    """Dimension of {c : sum c_k G_k = 0} restricted to total weight ``weight``."""
    return decompose(DiffOperator(), generators, genus, weight=weight, strict=False).kernel_dim
