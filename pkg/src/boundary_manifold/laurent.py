"""Exact multivariable Laurent polynomials over Q and Q(i).

A polynomial is a map from integer exponent tuples to nonzero coefficients.
Coefficients are ``int``/``Fraction`` over Q and :class:`GaussianRational`
over Q(i); the field is fixed per polynomial and mixing fields is an error.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from functools import reduce
from math import gcd as igcd
from typing import Iterable, Mapping, Sequence

Q = "Q"
QI = "Q(i)"


class FieldMismatch(TypeError):
    pass


class GaussianRational:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def coerce(x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        return GaussianRational(x, 0)

    def __add__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianRational.coerce(other))

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        d = self.re * self.re + self.im * self.im
        if d == 0:
            raise ZeroDivisionError("division by zero")
        return GaussianRational(self.re / d, -self.im / d)

    def __truediv__(self, other):
        return self * GaussianRational.coerce(other).inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        base = self if k >= 0 else self.inverse()
        out = GaussianRational(1)
        for _ in range(abs(k)):
            out = out * base
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            o = GaussianRational.coerce(other)
            return self.re == o.re and self.im == o.im
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im)) if self.im else hash(self.re)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i" if self.im != 1 else "i" if self.im == 1 else "-i"
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        return f"({self.re}{sign}{'' if mag == 1 else mag}i)"


def field_of(value) -> str:
    return QI if isinstance(value, GaussianRational) else Q


def normalize_scalar(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


class LaurentPoly:
    """Immutable sparse Laurent polynomial."""

    __slots__ = ("nvars", "terms", "field")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], object] | None = None, field: str = Q):
        self.nvars = nvars
        self.field = field
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    if len(e) != nvars:
                        raise ValueError("exponent length does not match variable count")
                    if field == Q and isinstance(c, GaussianRational):
                        raise FieldMismatch("Gaussian coefficient in a polynomial over Q")
                    clean[tuple(e)] = normalize_scalar(c) if field == Q else GaussianRational.coerce(c)
        self.terms = clean

    # construction helpers -------------------------------------------------
    @classmethod
    def zero(cls, nvars: int, field: str = Q) -> "LaurentPoly":
        return cls(nvars, {}, field)

    @classmethod
    def constant(cls, nvars: int, c, field: str = Q) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: c}, field)

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1, field: str = Q) -> "LaurentPoly":
        return cls(len(exps), {tuple(exps): c}, field)

    @classmethod
    def variable(cls, nvars: int, i: int, field: str = Q) -> "LaurentPoly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1}, field)

    @classmethod
    def binomial(cls, exps: Sequence[int], field: str = Q) -> "LaurentPoly":
        """t^exps - 1."""
        return cls(len(exps), {tuple(exps): 1}, field) - cls.constant(len(exps), 1, field)

    def _raw(self, terms: dict) -> "LaurentPoly":
        out = LaurentPoly.__new__(LaurentPoly)
        out.nvars = self.nvars
        out.field = self.field
        out.terms = terms
        return out

    def _check(self, other: "LaurentPoly") -> None:
        if other.nvars != self.nvars:
            raise ValueError("variable counts differ")
        if other.field != self.field:
            raise FieldMismatch(f"cannot combine polynomials over {self.field} and {other.field}")

    def _lift(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if self.field == Q and isinstance(other, GaussianRational):
            raise FieldMismatch("Gaussian scalar with a polynomial over Q")
        return LaurentPoly.constant(self.nvars, other, self.field)

    # ring operations ------------------------------------------------------
    def __add__(self, other):
        o = self._lift(other)
        t = dict(self.terms)
        for e, c in o.terms.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return self._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return self._raw({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = t.get(e, 0) + c1 * c2
                if v:
                    t[e] = v
                else:
                    del t[e]
        return self._raw(t)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials have inverses")
            (e, c), = self.terms.items()
            inv = LaurentPoly(self.nvars, {tuple(-x for x in e): _inv(c, self.field)}, self.field)
            return inv ** (-k)
        out = LaurentPoly.constant(self.nvars, 1, self.field)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self == LaurentPoly.constant(self.nvars, other, self.field)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __repr__(self):
        return f"LaurentPoly({self.to_text()!r})"

    # structure -------------------------------------------------------------
    def scale(self, c) -> "LaurentPoly":
        return self * c

    def shift(self, exps: Sequence[int]) -> "LaurentPoly":
        return self._raw({tuple(a + b for a, b in zip(e, exps)): c for e, c in self.terms.items()})

    def min_exponents(self) -> tuple[int, ...]:
        return tuple(min(e[i] for e in self.terms) for i in range(self.nvars))

    def max_exponents(self) -> tuple[int, ...]:
        return tuple(max(e[i] for e in self.terms) for i in range(self.nvars))

    def support(self) -> list[tuple[int, ...]]:
        return sorted(self.terms)

    def evaluate(self, point: Sequence):
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * (x ** k if k > 0 else (1 / Fraction(x) if not isinstance(x, GaussianRational) else x.inverse()) ** (-k))
            total = total + v
        return total

    def project(self, keep: Sequence[int]) -> "LaurentPoly":
        """Set every variable outside ``keep`` to 1."""
        t: dict = {}
        for e, c in self.terms.items():
            k = tuple(e[i] for i in keep)
            v = t.get(k, 0) + c
            if v:
                t[k] = v
            else:
                t.pop(k, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out.nvars, out.field, out.terms = len(keep), self.field, t
        return out

    def substitute_monomials(self, images: Sequence[Sequence[int]]) -> "LaurentPoly":
        """Replace variable i by the monomial with exponent vector images[i]."""
        m = len(images[0]) if images else 0
        t: dict = {}
        for e, c in self.terms.items():
            k = [0] * m
            for ei, img in zip(e, images):
                if ei:
                    for j, a in enumerate(img):
                        k[j] += ei * a
            k = tuple(k)
            v = t.get(k, 0) + c
            if v:
                t[k] = v
            else:
                t.pop(k, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out.nvars, out.field, out.terms = m, self.field, t
        return out

    def to_text(self, names: Sequence[str] | None = None) -> str:
        return poly_text(self, names)


# ---------------------------------------------------------------------------
# text


def var_names(nvars: int) -> list[str]:
    return [f"t{i + 1}" for i in range(nvars)]


def monomial_text(e: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for name, k in zip(names, e):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def _scalar_text(c) -> str:
    return str(c)


def poly_text(p: LaurentPoly, names: Sequence[str] | None = None) -> str:
    """Terms in decreasing lexicographic order of exponents."""
    if p.is_zero():
        return "0"
    names = list(names) if names is not None else var_names(p.nvars)
    out = ""
    for e in sorted(p.terms, reverse=True):
        c = p.terms[e]
        mono = monomial_text(e, names)
        negative = p.field == Q and c < 0
        mag = -c if negative else c
        if mono:
            body = mono if mag == 1 else f"{_scalar_text(mag)}*{mono}"
        else:
            body = _scalar_text(mag)
        if not out:
            out = ("-" if negative else "") + body
        else:
            out += (" - " if negative else " + ") + body
    return out


# ---------------------------------------------------------------------------
# normal forms


def _lex_min(p: LaurentPoly) -> tuple[int, ...]:
    return min(p.terms)


def _inv(c, field):
    return (1 / Fraction(c)) if field == Q else GaussianRational.coerce(c).inverse()


def canonicalize(p: LaurentPoly) -> tuple[tuple[object, tuple[int, ...]], LaurentPoly]:
    """Return ((c, a), q) with p = c * t^a * q.

    q has its lexicographically least exponent at zero.  Over Q the
    coefficients of q are coprime integers and the coefficient at zero is
    positive; over Q(i) the coefficient at zero is 1.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has no canonical form")
    a = _lex_min(p)
    q = p.shift(tuple(-x for x in a))
    if p.field == Q:
        c = content_q(q)
        if q.terms[(0,) * p.nvars] < 0:
            c = -c
    else:
        c = q.terms[(0,) * p.nvars]
    q = q * _inv(c, p.field)
    return (normalize_scalar(c) if p.field == Q else c, a), q


def content_q(p: LaurentPoly) -> Fraction:
    """Positive rational c with p / c having coprime integer coefficients."""
    fr = [Fraction(c) for c in p.terms.values()]
    den = reduce(lambda x, y: x * y // igcd(x, y), (f.denominator for f in fr), 1)
    num = reduce(igcd, (abs(f.numerator * (den // f.denominator)) for f in fr), 0)
    return Fraction(num, den)


def unit_equivalent(p: LaurentPoly, q: LaurentPoly) -> bool:
    if p.is_zero() or q.is_zero():
        return p.is_zero() and q.is_zero()
    if p.nvars != q.nvars or p.field != q.field:
        return False
    return canonicalize(p)[1] == canonicalize(q)[1]


def factor_normal_form(p: LaurentPoly) -> tuple[tuple[object, tuple[int, ...]], LaurentPoly]:
    """Monic form used for factors: least exponent zero, leading coefficient 1.

    ``leading`` means the lexicographically greatest exponent.  For a
    binomial this orients t^a - 1 so that the first nonzero entry of a is
    positive.
    """
    a = _lex_min(p)
    q = p.shift(tuple(-x for x in a))
    c = q.terms[max(q.terms)]
    return (c, a), q * _inv(c, p.field)


def factor_key(p: LaurentPoly) -> tuple:
    return tuple(sorted((e, str(c)) for e, c in p.terms.items()))


def binomial_exponent(p: LaurentPoly) -> tuple[int, ...] | None:
    """Exponent a if p is (a unit times) t^a - 1 in normal form, else None."""
    _, q = factor_normal_form(p)
    if len(q.terms) != 2:
        return None
    zero = (0,) * p.nvars
    a = max(q.terms)
    if q.terms.get(zero) == -1 and q.terms[a] == 1:
        return a
    return None


def canonical_binomial(exps: Sequence[int]) -> tuple[int, ...]:
    exps = tuple(exps)
    for x in exps:
        if x:
            return exps if x > 0 else tuple(-y for y in exps)
    raise ValueError("zero exponent does not give a binomial factor")


def eliminate_t0(p: LaurentPoly) -> LaurentPoly:
    """Input over (t0, t1, .., tn); substitute t0 = (t1...tn)^-1."""
    n = p.nvars - 1
    images = [[-1] * n] + [[1 if j == i else 0 for j in range(n)] for i in range(n)]
    return p.substitute_monomials(images)


class FactoredLaurent:
    """unit * prod f_i^{d_i} with pairwise distinct monic factors."""

    __slots__ = ("nvars", "field", "unit_coeff", "unit_exps", "factors", "is_zero")

    def __init__(self, nvars: int, factors: Iterable[tuple[LaurentPoly, int]] = (), unit_coeff=1,
                 unit_exps: Sequence[int] | None = None, field: str = Q, zero: bool = False):
        self.nvars = nvars
        self.field = field
        self.is_zero = zero
        coeff = unit_coeff
        exps = list(unit_exps) if unit_exps is not None else [0] * nvars
        merged: dict[tuple, list] = {}
        if not zero:
            for f, d in factors:
                if d < 0:
                    raise ValueError("factor multiplicities must be nonnegative")
                if d == 0:
                    continue
                if f.field != field or f.nvars != nvars:
                    raise FieldMismatch("factor does not match the ring")
                if f.is_zero():
                    self.is_zero = True
                    break
                (c, a), g = factor_normal_form(f)
                coeff = coeff * c ** d
                exps = [x + d * y for x, y in zip(exps, a)]
                if len(g.terms) == 1:  # a unit
                    continue
                key = factor_key(g)
                if key in merged:
                    merged[key][1] += d
                else:
                    merged[key] = [g, d]
        if self.is_zero:
            merged = {}
            coeff, exps = 0, [0] * nvars
        self.unit_coeff = normalize_scalar(coeff) if field == Q else coeff
        self.unit_exps = tuple(exps)
        self.factors = tuple((g, d) for _, (g, d) in sorted(merged.items(), key=lambda kv: _factor_order(kv[1][0])))

    @classmethod
    def zero(cls, nvars: int, field: str = Q) -> "FactoredLaurent":
        return cls(nvars, field=field, zero=True)

    @classmethod
    def one(cls, nvars: int, field: str = Q) -> "FactoredLaurent":
        return cls(nvars, field=field)

    def __mul__(self, other: "FactoredLaurent") -> "FactoredLaurent":
        if self.is_zero or other.is_zero:
            return FactoredLaurent.zero(self.nvars, self.field)
        return FactoredLaurent(
            self.nvars,
            list(self.factors) + list(other.factors),
            self.unit_coeff * other.unit_coeff,
            [a + b for a, b in zip(self.unit_exps, other.unit_exps)],
            self.field,
        )

    def __pow__(self, k: int) -> "FactoredLaurent":
        if self.is_zero:
            return self
        return FactoredLaurent(self.nvars, [(f, d * k) for f, d in self.factors], self.unit_coeff ** k,
                               [a * k for a in self.unit_exps], self.field)

    def expand(self) -> LaurentPoly:
        if self.is_zero:
            return LaurentPoly.zero(self.nvars, self.field)
        out = LaurentPoly.monomial(self.unit_exps, self.unit_coeff, self.field)
        for f, d in self.factors:
            out = out * f ** d
        return out

    def without_unit(self) -> "FactoredLaurent":
        if self.is_zero:
            return self
        return FactoredLaurent(self.nvars, self.factors, 1, None, self.field)

    def equivalent(self, other: "FactoredLaurent") -> bool:
        """Equal up to a unit of the Laurent ring."""
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        return self.factor_set() == other.factor_set()

    def factor_set(self) -> list[tuple[tuple, int]]:
        return sorted((factor_key(f), d) for f, d in self.factors)

    def __eq__(self, other):
        if not isinstance(other, FactoredLaurent):
            return NotImplemented
        return (self.is_zero == other.is_zero and self.unit_coeff == other.unit_coeff
                and self.unit_exps == other.unit_exps and self.factor_set() == other.factor_set())

    def __hash__(self):
        return hash((self.is_zero, tuple(self.factor_set())))

    def __len__(self) -> int:
        return len(self.factors)

    def to_text(self, names: Sequence[str] | None = None) -> str:
        if self.is_zero:
            return "0"
        names = list(names) if names is not None else var_names(self.nvars)
        parts = []
        for f, d in self.factors:
            body = f"({poly_text(f, names)})"
            parts.append(body if d == 1 else f"{body}^{d}")
        unit = LaurentPoly.monomial(self.unit_exps, self.unit_coeff, self.field)
        utext = poly_text(unit, names)
        if utext == "1":
            return " * ".join(parts) if parts else "1"
        if utext == "-1" and parts:
            return "-" + " * ".join(parts)
        return " * ".join([utext] + parts)

    def __repr__(self):
        return f"FactoredLaurent({self.to_text()!r})"


def _factor_order(f: LaurentPoly):
    """Sort factors by degree pattern: binomials by exponent, others after."""
    top = max(f.terms)
    return (len(f.terms), tuple(-x for x in top), factor_key(f))


def expand(f: FactoredLaurent) -> LaurentPoly:
    return f.expand()


# ---------------------------------------------------------------------------
# gcd and exact division over Q


def _to_integer_poly(p: LaurentPoly) -> tuple[dict, tuple[int, ...]]:
    """Shift to nonnegative exponents and clear denominators."""
    if p.field != Q:
        raise FieldMismatch("gcd is implemented over Q only")
    lo = p.min_exponents()
    c = content_q(p)
    return {tuple(a - b for a, b in zip(e, lo)): int(Fraction(v) / c) for e, v in p.terms.items()}, lo


def gcd(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Greatest common divisor up to units, in canonical form."""
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    if p.is_zero():
        return canonicalize(q)[1]
    if q.is_zero():
        return canonicalize(p)[1]
    a, _ = _to_integer_poly(p)
    b, _ = _to_integer_poly(q)
    g = ipoly_gcd(a, b, p.nvars)
    return canonicalize(LaurentPoly(p.nvars, g))[1]


def divide_exact(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly | None:
    """p / q if q divides p in the Laurent ring, else None."""
    if q.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if p.is_zero():
        return p
    if p.field != q.field:
        raise FieldMismatch("fields differ")
    j = _variable_minus_one(q)
    if j is not None:
        return _divide_by_variable_minus_one(p, j)
    plo, qlo = p.min_exponents(), q.min_exponents()
    a = {tuple(x - y for x, y in zip(e, plo)): c for e, c in p.terms.items()}
    b = {tuple(x - y for x, y in zip(e, qlo)): c for e, c in q.terms.items()}
    quo = poly_divide(a, b)
    if quo is None:
        return None
    shift = tuple(x - y for x, y in zip(plo, qlo))
    return LaurentPoly(p.nvars, quo, p.field).shift(shift)


def _variable_minus_one(q: LaurentPoly) -> int | None:
    """j if q is exactly t_j - 1."""
    if len(q.terms) != 2:
        return None
    zero = (0,) * q.nvars
    if q.terms.get(zero) != -1:
        return None
    e = next(k for k in q.terms if k != zero)
    if q.terms[e] != 1 or sorted(e) != [0] * (q.nvars - 1) + [1]:
        return None
    return e.index(1)


def _divide_by_variable_minus_one(p: LaurentPoly, j: int) -> LaurentPoly | None:
    """Synthetic division by t_j - 1 along each line in the t_j direction."""
    lines: dict[tuple, dict[int, object]] = {}
    for e, c in p.terms.items():
        lines.setdefault(e[:j] + e[j + 1:], {})[e[j]] = c
    out = {}
    for rest, coeffs in lines.items():
        top, low = max(coeffs), min(coeffs)
        carry = 0
        for k in range(top, low, -1):
            carry = carry + coeffs.get(k, 0)
            if carry:
                out[rest[:j] + (k - 1,) + rest[j:]] = carry
        if carry + coeffs[low]:
            return None
    return LaurentPoly(p.nvars, out, p.field)


def poly_divide(a: dict, b: dict) -> dict | None:
    """Exact division of polynomials (dict form) by lexicographic leading terms."""
    if not b:
        raise ZeroDivisionError
    lead_b = max(b)
    cb = b[lead_b]
    rem = dict(a)
    heap = [tuple(-x for x in e) for e in rem]
    heapq.heapify(heap)
    quo: dict = {}
    while rem:
        lead = tuple(-x for x in heapq.heappop(heap))
        if lead not in rem:
            continue
        diff = tuple(x - y for x, y in zip(lead, lead_b))
        if min(diff) < 0:
            return None
        c = rem[lead]
        if isinstance(c, int) and isinstance(cb, int):
            if c % cb:
                c = Fraction(c, cb)
            else:
                c = c // cb
        else:
            c = normalize_scalar(c / cb) if not isinstance(c, GaussianRational) and not isinstance(cb, GaussianRational) else c / cb
        quo[diff] = c
        for e, v in b.items():
            k = tuple(x + y for x, y in zip(e, diff))
            old = rem.get(k)
            nv = (old or 0) - c * v
            if nv:
                if old is None:
                    heapq.heappush(heap, tuple(-x for x in k))
                rem[k] = nv
            elif old is not None:
                del rem[k]
    return quo


# Integer polynomials for the gcd: dict exponent-tuple -> int, nonnegative exponents.

def _ip_is_const(a: dict) -> bool:
    return len(a) == 1 and not any(next(iter(a)))


def _ip_vars(a: dict, nvars: int) -> set[int]:
    return {i for e in a for i in range(nvars) if e[i]}


def _ip_coeffs(a: dict, v: int) -> dict[int, dict]:
    """Coefficients of a as a polynomial in variable v."""
    out: dict[int, dict] = {}
    for e, c in a.items():
        k = e[v]
        rest = e[:v] + (0,) + e[v + 1:]
        out.setdefault(k, {})[rest] = c
    return out


def _ip_from_coeffs(co: Mapping[int, dict], v: int) -> dict:
    out = {}
    for k, poly in co.items():
        for e, c in poly.items():
            out[e[:v] + (k,) + e[v + 1:]] = c
    return out


def _ip_mul(a: dict, b: dict) -> dict:
    t: dict = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            v = t.get(e, 0) + c1 * c2
            if v:
                t[e] = v
            else:
                del t[e]
    return t


def _ip_sub(a: dict, b: dict) -> dict:
    t = dict(a)
    for e, c in b.items():
        v = t.get(e, 0) - c
        if v:
            t[e] = v
        else:
            t.pop(e, None)
    return t


def _ip_div(a: dict, b: dict) -> dict:
    q = poly_divide(a, b)
    if q is None or any(not isinstance(c, int) for c in q.values()):
        raise ArithmeticError("inexact integer polynomial division")
    return q


def _ip_normalize(a: dict) -> dict:
    g = reduce(igcd, (abs(c) for c in a.values()), 0)
    if max(a) and a[max(a)] < 0:
        g = -g
    return {e: c // g for e, c in a.items()}


def _ip_content(a: dict, v: int, nvars: int) -> dict:
    co = _ip_coeffs(a, v)
    polys = sorted(co.values(), key=len)
    g = polys[0]
    for p in polys[1:]:
        if _ip_is_const(g):
            break
        g = ipoly_gcd(g, p, nvars)
    if _ip_is_const(g):
        return {(0,) * nvars: 1}
    return g


def _ip_prem(a: dict, b: dict, v: int) -> dict:
    """Pseudo-remainder of a by b as polynomials in variable v."""
    ca = _ip_coeffs(a, v)
    cb = _ip_coeffs(b, v)
    db = max(cb)
    lc = cb[db]
    r = ca
    while r and max(r) >= db:
        dr = max(r)
        lr = r[dr]
        new: dict[int, dict] = {}
        for k, poly in r.items():
            if k == dr:
                continue
            new[k] = _ip_mul(poly, lc)
        for k, poly in cb.items():
            if k == db:
                continue
            kk = k + dr - db
            cur = new.get(kk, {})
            cur = _ip_sub(cur, _ip_mul(poly, lr))
            new[kk] = cur
        r = {k: p for k, p in new.items() if p}
    return _ip_from_coeffs(r, v)


def _ip_eval(a: dict, v: int, xi: int) -> dict:
    out: dict = {}
    for e, c in a.items():
        k = e[:v] + (0,) + e[v + 1:]
        out[k] = out.get(k, 0) + c * xi ** e[v]
    return {e: c for e, c in out.items() if c}


def _ip_interpolate(h: dict, v: int, xi: int) -> dict:
    """Inverse of evaluation at v = xi by symmetric xi-adic expansion."""
    out: dict = {}
    half = xi // 2
    for e, c in h.items():
        k = 0
        while c:
            r = c % xi
            if r > half:
                r -= xi
            if r:
                out[e[:v] + (k,) + e[v + 1:]] = r
            c = (c - r) // xi
            k += 1
    return out


def _ip_int_content(a: dict) -> int:
    return reduce(igcd, (abs(c) for c in a.values()), 0)


def _ip_divides(b: dict, a: dict) -> bool:
    q = poly_divide(a, b)
    return q is not None and all(isinstance(c, int) for c in q.values())


def _heuristic_gcd(a: dict, b: dict, vars_: Sequence[int], nvars: int) -> dict | None:
    """gcd of nonzero integer polynomials by evaluation at large integers.

    Returns None when no candidate survives the trial divisions.  A
    candidate that divides both inputs is the gcd, because the evaluation
    point exceeds twice the smaller coefficient bound.
    """
    ca, cb = _ip_int_content(a), _ip_int_content(b)
    g = igcd(ca, cb)
    if not vars_:
        return {(0,) * nvars: g}
    a = {e: c // ca for e, c in a.items()}
    b = {e: c // cb for e, c in b.items()}
    v, rest = vars_[-1], vars_[:-1]
    bound = min(max(abs(c) for c in a.values()), max(abs(c) for c in b.values()))
    xi = 2 * bound + 29
    for _ in range(6):
        ae, be = _ip_eval(a, v, xi), _ip_eval(b, v, xi)
        if ae and be:
            he = _heuristic_gcd(ae, be, rest, nvars)
            if he is not None:
                h = _ip_interpolate(he, v, xi)
                if h:
                    cont = _ip_int_content(h)
                    h = {e: c // cont for e, c in h.items()}
                    if _ip_divides(h, a) and _ip_divides(h, b):
                        return {e: c * g for e, c in h.items()}
        xi = xi * 73794 // 27011
    return None


def ipoly_gcd(a: dict, b: dict, nvars: int) -> dict:
    """gcd of integer polynomials.

    Tries the evaluation heuristic first and falls back to content and
    primitive-part recursion.
    """
    if a and b:
        h = _heuristic_gcd(a, b, sorted(_ip_vars(a, nvars) | _ip_vars(b, nvars)), nvars)
        if h is not None:
            return _ip_normalize(h)
    return _prs_gcd(a, b, nvars)


def _prs_gcd(a: dict, b: dict, nvars: int) -> dict:
    """gcd of integer polynomials by content and primitive-part recursion."""
    if not a:
        return _ip_normalize(b) if b else {}
    if not b:
        return _ip_normalize(a)
    va, vb = _ip_vars(a, nvars), _ip_vars(b, nvars)
    one = (0,) * nvars
    if not va or not vb:
        # one side is an integer: gcd with the integer content of the other
        g = igcd(reduce(igcd, (abs(c) for c in a.values()), 0), reduce(igcd, (abs(c) for c in b.values()), 0))
        return {one: g}
    # strip common monomial factors
    lo = tuple(min(min(e[i] for e in a), min(e[i] for e in b)) for i in range(nvars))
    if any(lo):
        a = {tuple(x - y for x, y in zip(e, lo)): c for e, c in a.items()}
        b = {tuple(x - y for x, y in zip(e, lo)): c for e, c in b.items()}
        return _ip_mul({lo: 1}, ipoly_gcd(a, b, nvars))
    both = va & vb
    if not both:
        # a divisor only involves variables of its multiple, so the gcd is an integer
        g = igcd(reduce(igcd, (abs(c) for c in a.values()), 0), reduce(igcd, (abs(c) for c in b.values()), 0))
        return {one: g}

    def degree(p, v):
        return max(e[v] for e in p)

    v = min(both, key=lambda x: (max(degree(a, x), degree(b, x)), x))
    ca, cb = _ip_content(a, v, nvars), _ip_content(b, v, nvars)
    pa, pb = _ip_div(a, ca), _ip_div(b, cb)
    cg = ipoly_gcd(ca, cb, nvars)
    if degree(pa, v) < degree(pb, v):
        pa, pb = pb, pa
    while True:
        if degree(pb, v) == 0:
            g = {one: 1}
            break
        r = _ip_prem(pa, pb, v)
        if not r:
            g = pb
            break
        if all(e[v] == 0 for e in r):
            g = {one: 1}
            break
        r = _ip_div(r, _ip_content(r, v, nvars))
        pa, pb = pb, r
    g = _ip_div(g, _ip_content(g, v, nvars)) if g != {one: 1} else g
    return _ip_normalize(_ip_mul(cg, g))


# ---------------------------------------------------------------------------
# characteristic polynomials


def _identity(k: int):
    return [[1 if i == j else 0 for j in range(k)] for i in range(k)]


def matrix_field(matrix) -> str:
    return QI if any(isinstance(x, GaussianRational) for row in matrix for x in row) else Q


def char_poly_coefficients(matrix) -> list:
    """Coefficients c_0..c_k of det(x I - A), lowest degree first."""
    k = len(matrix)
    if any(len(row) != k for row in matrix):
        raise ValueError("characteristic polynomial needs a square matrix")
    field = matrix_field(matrix)
    A = [[GaussianRational.coerce(x) if field == QI else Fraction(x) for x in row] for row in matrix]
    coeffs = [0] * (k + 1)
    coeffs[k] = 1
    M = [[0] * k for _ in range(k)]
    for j in range(1, k + 1):
        # M_j = A M_{j-1} + c_{k-j+1} I
        prod = [[sum((A[r][s] * M[s][c] for s in range(k)), 0) for c in range(k)] for r in range(k)]
        cprev = coeffs[k - j + 1]
        M = [[prod[r][c] + (cprev if r == c else 0) for c in range(k)] for r in range(k)]
        AM = [[sum((A[r][s] * M[s][c] for s in range(k)), 0) for c in range(k)] for r in range(k)]
        tr = sum((AM[i][i] for i in range(k)), 0)
        coeffs[k - j] = -tr / j
    return [normalize_scalar(c) if field == Q else GaussianRational.coerce(c) for c in coeffs]


def char_poly_in_monomial(matrix, exps: Sequence[int]) -> LaurentPoly:
    """det(t^exps * Id - A) as a Laurent polynomial."""
    field = matrix_field(matrix)
    coeffs = char_poly_coefficients(matrix)
    terms = {}
    for j, c in enumerate(coeffs):
        if c:
            terms[tuple(j * a for a in exps)] = c
    return LaurentPoly(len(exps), terms, field)
