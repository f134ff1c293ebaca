"""Weight-homogeneous series solutions of the heat system Q_2k phi = 0.

A candidate phi has total weight -n, n = g(g+1)/2, so Q_0 holds term by term.
Unknowns are the coefficients of (z-monomial, lambda-monomial) pairs with
lambda-weight <= W.  Every residual monomial of lambda-weight w only involves
unknowns of lambda-weight <= w (the L-parts and the lambda-dependent pieces of
H raise lambda-weight), so imposing all residual strata <= W is an exact
finite linear system whose solutions are the truncations of series solutions.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .frame import _require_tabulated, heat_family, sigma_weight
from .linalg import rref_vectors, solve
from .operators import apply
from .poly import LAMBDA, Z, Monomial, Poly, lambda_monomials, monomial_key, monomial_mul, z, z_monomials
from .report import Report

Key = Tuple[Monomial, Monomial]

DEFAULT_MAX_WEIGHT = 10

# lambda-free monomial normalized to 1 in the first basis element
NORMALIZATION = {1: ((z(1), 1),), 2: ((z(3), 1),), 3: ((z(1), 1), (z(5), 1))}


class EmptyKernel(RuntimeError):
    pass


class TriangularityViolation(RuntimeError):
    pass


def lambda_part(m: Monomial) -> Monomial:
    return tuple((v, e) for v, e in m if v.kind == LAMBDA)


def z_part(m: Monomial) -> Monomial:
    return tuple((v, e) for v, e in m if v.kind == Z)


def lambda_weight(m: Monomial) -> int:
    return sum(v.weight * e for v, e in m if v.kind == LAMBDA)


@dataclass(frozen=True)
class GradedSeries:
    genus: int
    max_weight: int
    coefficients: Dict[Key, Fraction]

    @property
    def weight(self) -> int:
        return -sigma_weight(self.genus)

    def poly(self) -> Poly:
        return Poly({monomial_mul(zm, lm): c for (zm, lm), c in self.coefficients.items()})

    def stratum(self, w: int) -> Poly:
        return Poly({monomial_mul(zm, lm): c for (zm, lm), c in self.coefficients.items()
                     if lambda_weight(lm) == w})

    def coefficient(self, zm: Monomial, lm: Monomial = ()) -> Fraction:
        return self.coefficients.get((zm, lm), Fraction(0))

    def rows(self) -> List[Tuple[int, str, str, Fraction]]:
        """(lambda-weight, lambda-monomial, z-monomial, coefficient), sorted."""
        out = []
        for (zm, lm), c in self.coefficients.items():
            out.append((lambda_weight(lm), lm, zm, c))
        out.sort(key=lambda r: (r[0], monomial_key(r[1]), monomial_key(r[2])))
        return [(w, str(Poly({lm: Fraction(1)})), str(Poly({zm: Fraction(1)})), c)
                for w, lm, zm, c in out]

    def __str__(self) -> str:
        return str(self.poly())


@dataclass
class SolutionBasis:
    genus: int
    ops: Tuple[int, ...]
    max_weight: int
    basis: List[GradedSeries]
    stratum_dims: Dict[int, int] = field(default_factory=dict)
    truncation_dims: Dict[int, int] = field(default_factory=dict)

    @property
    def dimension(self) -> int:
        return len(self.basis)


def unknowns(g: int, W: int) -> List[Key]:
    n = sigma_weight(g)
    out = []
    for w in range(0, W + 1):
        for lm in lambda_monomials(w, g):
            for zm in z_monomials(w + n, g):
                out.append((zm, lm))
    return out


@lru_cache(maxsize=None)
def _image(g: int, k: int, key: Key) -> Dict[Monomial, Fraction]:
    zm, lm = key
    return dict(apply(heat_family(g).Q[k], Poly({monomial_mul(zm, lm): Fraction(1)})).terms)


def _columns(g: int, ops: Sequence[int], keys: Sequence[Key], W: int, check: bool = True):
    cols = []
    for key in keys:
        w0 = lambda_weight(key[1])
        col = {}
        for k in ops:
            for m, c in _image(g, k, key).items():
                w = lambda_weight(m)
                if check and w < w0:
                    raise TriangularityViolation(f"Q_{2 * k} maps stratum {w0} to {w}")
                if w <= W:
                    col[(k, m)] = c
        cols.append(col)
    return cols


def _check_ops(g: int, ops: Sequence[int]) -> Tuple[int, ...]:
    _require_tabulated(g)
    ops = tuple(sorted(set(ops)))
    if 0 not in ops:
        raise ValueError("the operator subset must contain Q_0")
    if any(k < 0 or k >= 2 * g for k in ops):
        raise ValueError(f"operator indices must lie in 0 .. {2 * g - 1} (Q_0 .. Q_{4 * g - 2})")
    return ops


def kernel_basis(g: int, ops: Optional[Sequence[int]] = None, W: int = DEFAULT_MAX_WEIGHT
                 ) -> SolutionBasis:
    """Truncated kernel of the operators Q_{2k}, k in ``ops`` (indices, not labels).

    The first basis vector has coefficient 1 on the normalization monomial and
    the others vanish there; the remaining pivots follow (lambda-weight, z-monomial)
    order, so the basis is independent of elimination details.
    """
    ops = _check_ops(g, range(2 * g) if ops is None else ops)
    if W < 0:
        raise ValueError("max weight must be >= 0")
    keys = unknowns(g, W)
    cols = _columns(g, ops, keys, W)
    _, kernel = solve(cols)
    if not kernel:
        raise EmptyKernel(f"no nonzero solution for g={g} at truncation {W}")
    norm = keys.index((NORMALIZATION[g], ()))
    order = [norm] + [i for i in range(len(keys)) if i != norm]
    reduced = rref_vectors(kernel, order)
    if not any(v[norm] for v in reduced):
        raise EmptyKernel(f"no solution with a {Poly({NORMALIZATION[g]: Fraction(1)})} term")
    basis = [GradedSeries(g, W, {keys[i]: x for i, x in enumerate(v) if x}) for v in reduced]

    stratum_dims = {}
    truncation_dims = {}
    for w in range(0, W + 1):
        if not lambda_monomials(w, g):
            continue
        sub = [i for i, key in enumerate(keys) if lambda_weight(key[1]) <= w]
        _, ker_w = solve([{k: c for k, c in cols[i].items() if lambda_weight(k[1]) <= w}
                          for i in sub])
        truncation_dims[w] = len(ker_w)
        top = [i for i in sub if lambda_weight(keys[i][1]) == w]
        _, ker_top = solve([{k: c for k, c in cols[i].items() if lambda_weight(k[1]) == w}
                            for i in top])
        stratum_dims[w] = len(ker_top)
    return SolutionBasis(g, ops, W, basis, stratum_dims, truncation_dims)


def residual(g: int, s: GradedSeries, k: int, truncate: bool = True) -> Poly:
    """Q_{2k} applied to ``s``; with ``truncate`` only strata of lambda-weight
    <= s.max_weight are kept (the ones fully determined by the truncation)."""
    _require_tabulated(g)
    out = apply(heat_family(g).Q[k], s.poly())
    if not truncate:
        return out
    return Poly({m: c for m, c in out.terms.items() if lambda_weight(m) <= s.max_weight})


def sigma_suite(g: int, W: int = DEFAULT_MAX_WEIGHT, ops: Optional[Sequence[int]] = None) -> Report:
    """Solve with ``ops`` (default Q_0, Q_2, Q_4, or all for g = 1) and check
    the remaining operators on the truncation."""
    rep = Report()
    suite = "sigma"
    if ops is None:
        ops = range(min(3, 2 * g))
    with rep.timed() as t:
        sol = kernel_basis(g, ops, W)
    labels = ",".join(f"Q{2 * k}" for k in sol.ops)
    first = sol.basis[0]
    rep.add(suite, f"kernel {{{labels}}} (g={g}, W={W})", "heat system series",
            ok=True, duration=t["duration"], series=str(first),
            dimension=sol.dimension)
    rep.add(suite, f"kernel dimensions (g={g}, W={W})", "heat system series",
            ok=sol.dimension == 1, informational=True,
            stratum_dims={str(k): v for k, v in sol.stratum_dims.items()},
            truncation_dims={str(k): v for k, v in sol.truncation_dims.items()})
    for k in range(2 * g):
        if k in sol.ops:
            continue
        for i, b in enumerate(sol.basis):
            with rep.timed() as t:
                r = residual(g, b, k)
            rep.add(suite, f"Q{2 * k} residual of basis[{i}] (g={g}, W={W})",
                    "sufficiency of Q0, Q2, Q4", r, duration=t["duration"])
    return rep
