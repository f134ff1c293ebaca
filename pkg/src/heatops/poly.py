"""Exact graded polynomials over the variable alphabet z_k, lambda_k, psi_I.

Coefficients are :class:`fractions.Fraction`; every value is immutable once
built.  The weight of a variable is fixed by its kind:

    wt z_k = -k,   wt l_k = k,   wt psi_I = sum(I),   wt aux[L2k] = 2k.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, NamedTuple, Optional, Tuple, Union

Z, LAMBDA, PSI, AUX = 0, 1, 2, 3


class Inhomogeneous(ValueError):
    pass


class ZeroPolynomial(ValueError):
    pass


class ParseError(ValueError):
    pass


class Var(NamedTuple):
    """A variable id.  ``index`` is an int (z, lambda), a sorted tuple (psi)
    or a tag string (aux: ``"lnphi"`` or ``"L<2k>"``)."""

    kind: int
    index: Union[int, Tuple[int, ...], str]

    @property
    def weight(self) -> int:
        return _var_weight(self)

    def __str__(self) -> str:
        if self.kind == Z:
            return f"z{self.index}"
        if self.kind == LAMBDA:
            return f"l{self.index}"
        if self.kind == PSI:
            return "psi[" + ",".join(map(str, self.index)) + "]"
        return f"aux[{self.index}]"

    def __repr__(self) -> str:
        return f"Var({self})"


@lru_cache(maxsize=None)
def _var_weight(v: Var) -> int:
    if v.kind == Z:
        return -v.index
    if v.kind == LAMBDA:
        return v.index
    if v.kind == PSI:
        return sum(v.index)
    if v.index == "lnphi":
        return 0
    return int(v.index[1:])


def z(k: int) -> Var:
    if k < 1 or k % 2 == 0:
        raise ValueError(f"z index must be odd and positive, got {k}")
    return Var(Z, k)


def lam(k: int) -> Var:
    if k < 4 or k % 2:
        raise ValueError(f"lambda index must be even and >= 4, got {k}")
    return Var(LAMBDA, k)


def psi(*index: int) -> Var:
    if not index or any(i < 1 or i % 2 == 0 for i in index):
        raise ValueError(f"bad psi index {index}")
    return Var(PSI, tuple(sorted(index)))


def aux(tag: str) -> Var:
    if tag != "lnphi" and not re.fullmatch(r"L\d+", tag):
        raise ValueError(f"bad aux tag {tag!r}")
    return Var(AUX, tag)


# A monomial is a sorted tuple of (Var, exponent) pairs; () is the unit.
Monomial = Tuple[Tuple[Var, int], ...]
ONE: Monomial = ()


@lru_cache(maxsize=1 << 16)
def monomial_weight(m: Monomial) -> int:
    return sum(v.weight * e for v, e in m)


@lru_cache(maxsize=1 << 18)
def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def monomial_key(m: Monomial):
    return (monomial_weight(m), m)


def lambda_allowed(k: int, genus: Optional[int]) -> bool:
    if k < 4 or k % 2:
        return False
    return genus is None or k <= 4 * genus + 2


class Poly:
    """Finite sum of monomials with exact rational coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Optional[Dict[Monomial, Fraction]] = None):
        if terms:
            self.terms = {m: c for m, c in terms.items() if c}
        else:
            self.terms = {}
        self._hash = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def const(cls, c) -> "Poly":
        c = Fraction(c)
        return cls({ONE: c}) if c else cls()

    @classmethod
    def var(cls, v: Var, exp: int = 1) -> "Poly":
        return cls({((v, exp),): Fraction(1)}) if exp else cls.const(1)

    @classmethod
    def lam(cls, k: int, genus: Optional[int] = None) -> "Poly":
        """lambda_k, or 0 when k is outside {4, 6, ..., 4g+2}."""
        if not lambda_allowed(k, genus):
            return cls()
        return cls.var(lam(k))

    @classmethod
    def from_terms(cls, pairs: Iterable[Tuple[Monomial, Fraction]]) -> "Poly":
        acc: Dict[Monomial, Fraction] = {}
        for m, c in pairs:
            acc[m] = acc.get(m, 0) + c
        return cls(acc)

    # -- arithmetic ---------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other) -> "Poly":
        other = _coerce(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        acc = dict(self.terms)
        for m, c in other.terms.items():
            acc[m] = acc.get(m, 0) + c
        return Poly(acc)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "Poly":
        return _coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if not other:
                return Poly()
            return Poly({m: c * other for m, c in self.terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        acc: Dict[Monomial, Fraction] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = monomial_mul(ma, mb)
                acc[m] = acc.get(m, 0) + ca * cb
        return Poly(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        out = Poly.const(1)
        for _ in range(n):
            out = out * self
        return out

    # -- inspection ---------------------------------------------------------
    def items(self) -> Iterator[Tuple[Monomial, Fraction]]:
        """Terms in canonical order (weight, then variable ids)."""
        for m in sorted(self.terms, key=monomial_key):
            yield m, self.terms[m]

    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def coefficient(self, m: Monomial) -> Fraction:
        return self.terms.get(m, Fraction(0))

    def constant(self) -> Fraction:
        return self.terms.get(ONE, Fraction(0))

    def is_constant(self) -> bool:
        return all(not m for m in self.terms)

    def weight(self) -> int:
        if not self.terms:
            raise ZeroPolynomial("weight of the zero polynomial is undefined")
        ws = {monomial_weight(m) for m in self.terms}
        if len(ws) > 1:
            raise Inhomogeneous(f"terms of weights {sorted(ws)}")
        return ws.pop()

    def is_homogeneous(self) -> bool:
        return len({monomial_weight(m) for m in self.terms}) <= 1

    def degree_in(self, kind: int) -> int:
        """Max total degree in variables of the given kind."""
        return max((sum(e for v, e in m if v.kind == kind) for m in self.terms), default=0)

    # -- calculus -----------------------------------------------------------
    def partial(self, v: Var) -> "Poly":
        acc: Dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            for i, (w, e) in enumerate(m):
                if w == v:
                    rest = m[:i] + (((w, e - 1),) if e > 1 else ()) + m[i + 1:]
                    acc[rest] = acc.get(rest, 0) + c * e
                    break
        return Poly(acc)

    def subs(self, v: Var, value: "Poly") -> "Poly":
        out = Poly()
        powers = {0: Poly.const(1)}
        for m, c in self.terms.items():
            e = dict(m).pop(v, 0)
            rest = tuple((w, k) for w, k in m if w != v)
            if e not in powers:
                powers[e] = value ** e
            out = out + Poly({rest: c}) * powers[e]
        return out

    def evaluate(self, point: Dict[Var, Fraction]) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            t = c
            for v, e in m:
                t *= Fraction(point[v]) ** e
            total += t
        return total

    # -- text ---------------------------------------------------------------
    def __str__(self) -> str:
        return format_terms((format_monomial(m), c) for m, c in self.items())

    def __repr__(self) -> str:
        return f"Poly({self})"


def _coerce(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly.const(x)
    raise TypeError(f"cannot use {type(x).__name__} as a polynomial")


def format_monomial(m: Monomial) -> str:
    return "*".join(str(v) if e == 1 else f"{v}^{e}" for v, e in m)


def format_terms(pairs: Iterable[Tuple[str, Fraction]]) -> str:
    out = []
    for body, c in pairs:
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not body:
            text = str(a)
        elif a == 1:
            text = body
        else:
            text = f"{a}*{body}"
        if not out:
            out.append(text if sign == "+" else "-" + text)
        else:
            out.append(f" {sign} {text}")
    return "".join(out) if out else "0"


# -- parsing ------------------------------------------------------------------

_TOKEN = re.compile(
    r"""\s*(?:
        (?P<num>\d+)
      | (?P<dvar>d/d(?:z|l)\d+)
      | (?P<psi>psi\[[\d,\s]+\])
      | (?P<aux>aux\[[A-Za-z0-9]+\])
      | (?P<var>[zl]\d+)
      | (?P<op>[-+*/^()])
    )\s*""",
    re.VERBOSE,
)

# A parsed expression maps (variable monomial, derivative monomial) to a
# coefficient.  Derivative symbols are read as standing to the right of
# every coefficient variable, so the text itself is the normal form.
Parsed = Dict[Tuple[Monomial, Monomial], Fraction]


def _tokens(text: str):
    pos = 0
    out = []
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"unexpected input at {pos}: {text[pos:pos + 12]!r}")
        pos = mt.end()
        kind = mt.lastgroup
        out.append((kind, mt.group(kind).replace(" ", "")))
    return out


class _Parser:
    def __init__(self, text: str, genus: Optional[int]):
        self.toks = _tokens(text)
        self.i = 0
        self.genus = genus
        if not self.toks:
            raise ParseError("empty expression")

    def peek(self, k: int = 0):
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> Parsed:
        val = self.expr()
        if self.peek()[0] is not None:
            raise ParseError(f"trailing input {self.peek()[1]!r}")
        return val

    def expr(self) -> Parsed:
        sign = 1
        if self.peek()[1] in ("+", "-"):
            sign = -1 if self.take()[1] == "-" else 1
        acc = _scale(self.term(), sign)
        while self.peek()[1] in ("+", "-"):
            sign = -1 if self.take()[1] == "-" else 1
            acc = _add(acc, _scale(self.term(), sign))
        return acc

    def term(self) -> Parsed:
        acc = self.power()
        while self.peek()[1] == "*":
            self.take()
            acc = _mul(acc, self.power())
        return acc

    def power(self) -> Parsed:
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            kind, tok = self.take()
            if kind != "num":
                raise ParseError("exponent must be a non-negative integer")
            out: Parsed = {(ONE, ONE): Fraction(1)}
            for _ in range(int(tok)):
                out = _mul(out, base)
            return out
        return base

    def atom(self) -> Parsed:
        kind, tok = self.take()
        if kind is None:
            raise ParseError("unexpected end of input")
        if kind == "num":
            val = Fraction(int(tok))
            if self.peek()[1] == "/" and self.peek(1)[0] == "num":
                self.take()
                val /= int(self.take()[1])
            return {(ONE, ONE): val} if val else {}
        if tok == "(":
            inner = self.expr()
            if self.take()[1] != ")":
                raise ParseError("missing )")
            return inner
        if kind == "dvar":
            v = _var_from_token("var", tok[3:])
            if v.kind == LAMBDA and not lambda_allowed(v.index, self.genus):
                raise ParseError(f"no such variable {v}")
            return {(ONE, ((v, 1),)): Fraction(1)}
        if kind in ("var", "psi", "aux"):
            v = _var_from_token(kind, tok)
            if v.kind == LAMBDA and not lambda_allowed(v.index, self.genus):
                return {}
            return {(((v, 1),), ONE): Fraction(1)}
        raise ParseError(f"unexpected {tok!r}")


def _add(a: Parsed, b: Parsed) -> Parsed:
    out = dict(a)
    for k, c in b.items():
        out[k] = out.get(k, 0) + c
    return {k: c for k, c in out.items() if c}


def _scale(a: Parsed, c) -> Parsed:
    return {k: v * c for k, v in a.items()}


def _mul(a: Parsed, b: Parsed) -> Parsed:
    out: Parsed = {}
    for (ma, da), ca in a.items():
        for (mb, db), cb in b.items():
            k = (monomial_mul(ma, mb), monomial_mul(da, db))
            out[k] = out.get(k, 0) + ca * cb
    return {k: c for k, c in out.items() if c}


def _var_from_token(kind: str, tok: str) -> Var:
    if kind == "psi":
        return psi(*(int(x) for x in tok[4:-1].split(",")))
    if kind == "aux":
        return aux(tok[4:-1])
    if tok[0] == "z":
        return z(int(tok[1:]))
    return Var(LAMBDA, int(tok[1:]))


def parse_expression(text: str, genus: Optional[int] = None) -> Parsed:
    """Parse sums/products/powers with parentheses into normal-ordered terms.

    Grammar: ``-4/3*l4^2``, ``z1^3``, ``psi[1,1,3]``, ``aux[L2]``,
    ``d/dz1``, ``d/dl4``; whitespace-insensitive.  lambda_s outside
    {4, ..., 4g+2} is identically zero.
    """
    return _Parser(text, genus).parse()


def parse_poly(text: str, genus: Optional[int] = None) -> Poly:
    acc: Dict[Monomial, Fraction] = {}
    for (m, d), c in parse_expression(text, genus).items():
        if d:
            raise ParseError("derivative factor in a polynomial")
        acc[m] = c
    return Poly(acc)


def lambda_vars(genus: int):
    return [lam(k) for k in range(4, 4 * genus + 3, 2)]


def z_vars(genus: int):
    return [z(k) for k in range(1, 2 * genus, 2)]


def lambda_monomials(weight: int, genus: int):
    """All monomials in lambda_4 .. lambda_{4g+2} of the given weight."""
    idx = list(range(4, 4 * genus + 3, 2))
    return [tuple((lam(k), e) for k, e in zip(idx, exps) if e) for exps in _exponents(weight, idx)]


def z_monomials(weight: int, genus: int):
    """All monomials in z_1 .. z_{2g-1} of weight ``-weight``."""
    idx = list(range(1, 2 * genus, 2))
    return [tuple((z(k), e) for k, e in zip(idx, exps) if e) for exps in _exponents(weight, idx)]


def _exponents(weight: int, parts):
    if weight < 0:
        return
    if not parts:
        if weight == 0:
            yield ()
        return
    head, rest = parts[0], parts[1:]
    for e in range(weight // head + 1):
        for tail in _exponents(weight - e * head, rest):
            yield (e,) + tail
