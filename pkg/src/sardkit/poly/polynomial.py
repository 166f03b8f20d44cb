"""Exact sparse multivariate polynomials with rational coefficients.

A :class:`Poly` is an immutable map from exponent tuples to nonzero
:class:`fractions.Fraction` coefficients.  Monomials are ordered graded
lexicographically with the first variable most significant, so for three
variables ``x1^2 > x1*x2 > x2^2 > x3^2 > x1``.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Mapping, Sequence, Tuple

Exponent = Tuple[int, ...]

DEFAULT_NAMES = {
    1: ("x",),
    2: ("x", "y"),
    3: ("x1", "x2", "x3"),
}


def default_names(arity: int) -> Tuple[str, ...]:
    if arity in DEFAULT_NAMES:
        return DEFAULT_NAMES[arity]
    return tuple(f"x{i + 1}" for i in range(arity))


def monomial_key(exp: Exponent):
    """Sort key for graded lex order (first variable most significant)."""
    return (sum(exp), exp)


class NotDivisible(ArithmeticError):
    """Raised by :func:`exact_divide`; ``remainder`` is the division witness."""

    def __init__(self, dividend, divisor, remainder):
        super().__init__(f"{divisor} does not divide {dividend} (remainder {remainder})")
        self.dividend = dividend
        self.divisor = divisor
        self.remainder = remainder


def _coerce_scalar(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"expected an exact rational coefficient, got {type(c).__name__}")


class Poly:
    __slots__ = ("_arity", "_terms", "_hash", "_horner")

    def __init__(self, arity: int, terms: Mapping[Exponent, object] | None = None):
        if arity < 1:
            raise ValueError("arity must be positive")
        clean: Dict[Exponent, Fraction] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != arity or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent {exp} for arity {arity}")
            c = _coerce_scalar(c)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
                if not clean[exp]:
                    del clean[exp]
        self._arity = arity
        self._terms = clean
        self._hash = None
        self._horner = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def _raw(cls, arity: int, terms: Dict[Exponent, Fraction]) -> "Poly":
        # terms must already be clean (no zeros, right arity)
        obj = cls.__new__(cls)
        obj._arity = arity
        obj._terms = terms
        obj._hash = None
        obj._horner = None
        return obj

    @classmethod
    def zero(cls, arity: int) -> "Poly":
        return cls._raw(arity, {})

    @classmethod
    def const(cls, c, arity: int) -> "Poly":
        c = _coerce_scalar(c)
        return cls._raw(arity, {(0,) * arity: c} if c else {})

    @classmethod
    def var(cls, i: int, arity: int, power: int = 1) -> "Poly":
        if not 0 <= i < arity:
            raise IndexError(f"variable index {i} out of range for arity {arity}")
        exp = [0] * arity
        exp[i] = power
        return cls._raw(arity, {tuple(exp): Fraction(1)})

    @classmethod
    def monomial(cls, exp: Sequence[int], coeff=1) -> "Poly":
        return cls(len(exp), {tuple(exp): coeff})

    # -- basic accessors ----------------------------------------------------
    @property
    def arity(self) -> int:
        return self._arity

    @property
    def terms(self) -> Dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, exp: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self._arity, Fraction(0))

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def degree_in(self, i: int) -> int:
        if not self._terms:
            return -1
        return max(e[i] for e in self._terms)

    def variables(self) -> Tuple[int, ...]:
        used = set()
        for e in self._terms:
            used.update(i for i, k in enumerate(e) if k)
        return tuple(sorted(used))

    def leading_term(self) -> Tuple[Exponent, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self._terms, key=monomial_key)
        return exp, self._terms[exp]

    def leading_coeff(self) -> Fraction:
        return self.leading_term()[1]

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda kv: monomial_key(kv[0]), reverse=True)

    def order(self) -> int:
        """Lowest total degree of a term (the order at the origin)."""
        if not self._terms:
            return -1
        return min(sum(e) for e in self._terms)

    # -- arithmetic -----------------------------------------------------------
    def _check(self, other: "Poly"):
        if other._arity != self._arity:
            raise ValueError(f"arity mismatch: {self._arity} vs {other._arity}")

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly.const(other, self._arity)

    def __add__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly._raw(self._arity, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self._arity, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            try:
                c = _coerce_scalar(other)
            except TypeError:
                return NotImplemented
            if not c:
                return Poly.zero(self._arity)
            return Poly._raw(self._arity, {e: v * c for e, v in self._terms.items()})
        self._check(other)
        out: Dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly._raw(self._arity, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = Poly.const(1, self._arity)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "Poly":
        return self * c

    def __truediv__(self, c):
        # scalar division only; polynomial division goes through exact_divide
        if isinstance(c, Poly):
            return exact_divide(self, c)
        c = _coerce_scalar(c)
        return self * (1 / c)

    # -- comparison -------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self._arity == other._arity and self._terms == other._terms
        try:
            c = _coerce_scalar(other)
        except TypeError:
            return NotImplemented
        return self.is_constant() and self.constant_term() == c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._arity, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # -- calculus -----------------------------------------------------------------
    def partial(self, i: int) -> "Poly":
        if not 0 <= i < self._arity:
            raise IndexError(f"variable index {i} out of range for arity {self._arity}")
        out = {}
        for e, c in self._terms.items():
            k = e[i]
            if k:
                ne = list(e)
                ne[i] = k - 1
                out[tuple(ne)] = c * k
        return Poly._raw(self._arity, out)

    def gradient(self) -> Tuple["Poly", ...]:
        return tuple(self.partial(i) for i in range(self._arity))

    # -- evaluation -----------------------------------------------------------------
    def _horner_tree(self):
        if self._horner is None:
            self._horner = _build_horner(self._terms, self._arity, 0)
        return self._horner

    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (tuple, list)):
            point = tuple(point[0])
        return evaluate(self, point)

    def lambdify(self, names: Sequence[str] | None = None):
        """Compile to a float-valued Python function of ``arity`` positional args."""
        names = names or [f"_v{i}" for i in range(self._arity)]
        src = to_python_source(self, names)
        fn = eval(f"lambda {', '.join(names)}: {src}", {})  # noqa: S307 - generated from exact terms
        return fn

    # -- printing -----------------------------------------------------------------------
    def to_string(self, names: Sequence[str] | None = None) -> str:
        return format_poly(self, names)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Poly({self._arity}, {self.to_string()!r})"


def _build_horner(terms, arity, i):
    # nested dict: degree in variable i -> subtree over the remaining variables
    if i == arity:
        return sum(terms.values(), Fraction(0))
    groups: Dict[int, Dict[Exponent, Fraction]] = {}
    for e, c in terms.items():
        groups.setdefault(e[i], {})[e] = c
    return sorted(((k, _build_horner(g, arity, i + 1)) for k, g in groups.items()),
                  reverse=True)


def _eval_tree(tree, point, i):
    if i == len(point):
        return tree
    x = point[i]
    acc = None
    prev = None
    for k, sub in tree:  # descending degrees
        val = _eval_tree(sub, point, i + 1)
        if acc is None:
            acc = val
        else:
            acc = acc * x ** (prev - k) + val
        prev = k
    if acc is None:
        return 0
    return acc * x ** prev if prev else acc


def evaluate(p: Poly, point: Sequence):
    """Horner evaluation; exact when ``point`` holds ints/Fractions."""
    if len(point) != p.arity:
        raise ValueError(f"point has {len(point)} coordinates, expected {p.arity}")
    if p.is_zero():
        return Fraction(0) if all(isinstance(v, (int, Fraction)) for v in point) else 0.0
    return _eval_tree(p._horner_tree(), tuple(point), 0)


def exact_divide(p: Poly, q: Poly) -> Poly:
    """Return ``p / q`` when ``q`` divides ``p``; raise :class:`NotDivisible` otherwise."""
    p._check(q)
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    quotient, remainder = divmod_poly(p, q)
    if not remainder.is_zero():
        raise NotDivisible(p, q, remainder)
    return quotient


def divmod_poly(p: Poly, q: Poly) -> Tuple[Poly, Poly]:
    """Multivariate division by a single divisor in graded lex order."""
    n = p.arity
    lq_exp, lq_c = q.leading_term()
    quot: Dict[Exponent, Fraction] = {}
    rem: Dict[Exponent, Fraction] = {}
    r = dict(p._terms)
    q_terms = list(q._terms.items())
    while r:
        exp = max(r, key=monomial_key)
        c = r[exp]
        if all(a >= b for a, b in zip(exp, lq_exp)):
            m = tuple(a - b for a, b in zip(exp, lq_exp))
            f = c / lq_c
            quot[m] = quot.get(m, 0) + f
            for e2, c2 in q_terms:
                e = tuple(a + b for a, b in zip(m, e2))
                v = r.get(e, 0) - f * c2
                if v:
                    r[e] = v
                else:
                    r.pop(e, None)
        else:
            rem[exp] = c
            del r[exp]
    return (Poly._raw(n, {e: c for e, c in quot.items() if c}), Poly._raw(n, rem))


def divides(q: Poly, p: Poly) -> bool:
    if q.is_zero():
        return p.is_zero()
    return divmod_poly(p, q)[1].is_zero()


def monomial_content(p: Poly) -> Exponent:
    """Largest monomial dividing every term of ``p`` (componentwise min exponent)."""
    if p.is_zero():
        raise ValueError("zero polynomial has no monomial content")
    exps = list(p._terms)
    return tuple(min(e[i] for e in exps) for i in range(p.arity))


def divide_monomial(p: Poly, exp: Sequence[int]) -> Poly:
    out = {}
    for e, c in p._terms.items():
        ne = tuple(a - b for a, b in zip(e, exp))
        if any(k < 0 for k in ne):
            raise NotDivisible(p, Poly.monomial(exp), p)
        out[ne] = c
    return Poly._raw(p.arity, out)


def compose(p: Poly, args: Sequence[Poly]) -> Poly:
    """Substitute the polynomials ``args`` for the variables of ``p``."""
    if len(args) != p.arity:
        raise ValueError(f"need {p.arity} substitutions, got {len(args)}")
    m = args[0].arity
    if p.is_zero():
        return Poly.zero(m)
    cache: Dict[Tuple[int, int], Poly] = {}

    def power(i, k):
        key = (i, k)
        if key not in cache:
            cache[key] = args[i] ** k
        return cache[key]

    out = Poly.zero(m)
    for e, c in p._terms.items():
        term = Poly.const(c, m)
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        out = out + term
    return out


def translate(p: Poly, shift: Sequence) -> Poly:
    """``p(x + shift)`` with exact rational shift."""
    n = p.arity
    args = [Poly.var(i, n) + Fraction(shift[i]) for i in range(n)]
    return compose(p, args)


# -- printing -------------------------------------------------------------------------

def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _format_monomial(exp: Exponent, names: Sequence[str]) -> str:
    parts = []
    for name, k in zip(names, exp):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def format_poly(p: Poly, names: Sequence[str] | None = None) -> str:
    names = tuple(names) if names else default_names(p.arity)
    if len(names) != p.arity:
        raise ValueError("wrong number of variable names")
    if p.is_zero():
        return "0"
    out = []
    for i, (exp, c) in enumerate(p.sorted_terms()):
        neg = c < 0
        a = -c if neg else c
        mono = _format_monomial(exp, names)
        if not mono:
            body = _format_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_coeff(a)}*{mono}"
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def to_python_source(p: Poly, names: Sequence[str]) -> str:
    if p.is_zero():
        return "0.0"
    parts = []
    for exp, c in p.sorted_terms():
        factors = [repr(float(c))]
        for name, k in zip(names, exp):
            if k == 1:
                factors.append(name)
            elif k > 1:
                factors.append(f"{name}**{k}")
        parts.append("*".join(factors))
    return "(" + " + ".join(parts) + ")"


def polys_from_terms(arity: int, items: Iterable[Tuple[Exponent, object]]) -> Poly:
    return Poly(arity, dict(items))
