"""Exact commutative polynomial and truncated-series arithmetic in q (and t).

Coefficients are arbitrary-precision Python ints throughout; division either
succeeds exactly or reports failure, and truncated series carry an explicit
truncation order.  All values are immutable after construction, so they are
safe to share between threads.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence


def _inorm(v) -> int:
    if not isinstance(v, int):
        raise TypeError(f"integer coefficient required, got {type(v).__name__}")
    return v


class QPoly:
    """Sparse integer polynomial in the single variable q.

    Stored as a map exponent -> nonzero coefficient; the zero polynomial is
    the empty map and reports degree -1.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                v = _inorm(v)
                if v:
                    if e < 0:
                        raise ValueError(f"negative exponent {e}")
                    c[e] = v
        self._c = c

    @classmethod
    def zero(cls) -> "QPoly":
        return cls()

    @classmethod
    def one(cls) -> "QPoly":
        return cls({0: 1})

    @classmethod
    def q(cls) -> "QPoly":
        return cls({1: 1})

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "QPoly":
        return cls({exp: coeff})

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int]) -> "QPoly":
        """Build from a dense list [c0, c1, ...]."""
        return cls({e: c for e, c in enumerate(coeffs)})

    def items(self):
        return self._c.items()

    def coeff(self, exp: int) -> int:
        return self._c.get(exp, 0)

    @property
    def degree(self) -> int:
        return max(self._c) if self._c else -1

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def _coerce(self, other):
        if isinstance(other, QPoly):
            return other
        if isinstance(other, int):
            return QPoly({0: other})
        return None

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        return NotImplemented if o is None else self._c == o._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __add__(self, other) -> "QPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        c = dict(self._c)
        for e, v in o._c.items():
            w = c.get(e, 0) + v
            if w:
                c[e] = w
            else:
                c.pop(e, None)
        p = QPoly.__new__(QPoly)
        p._c = c
        return p

    __radd__ = __add__

    def __neg__(self) -> "QPoly":
        p = QPoly.__new__(QPoly)
        p._c = {e: -v for e, v in self._c.items()}
        return p

    def __sub__(self, other) -> "QPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "QPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other) -> "QPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        c: dict[int, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in o._c.items():
                e = e1 + e2
                w = c.get(e, 0) + v1 * v2
                if w:
                    c[e] = w
                else:
                    c.pop(e, None)
        p = QPoly.__new__(QPoly)
        p._c = c
        return p

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "QPoly":
        if n < 0:
            raise ValueError("negative power")
        out = QPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, k: int) -> "QPoly":
        """Multiply by q**k."""
        return QPoly({e + k: v for e, v in self._c.items()})

    def exact_divide(self, d: "QPoly") -> "QPoly | None":
        """Exact quotient self/d over Z[q], or None when not divisible.

        "Not divisible" is a normal result; a zero divisor is an error.
        """
        if d.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return QPoly.zero()
        rem = dict(self._c)
        dd = d.degree
        dl = d._c[dd]
        quo: dict[int, int] = {}
        while rem:
            e = max(rem)
            if e < dd:
                return None
            c = rem[e]
            if c % dl:
                return None
            t = c // dl
            k = e - dd
            quo[k] = t
            for de, dv in d._c.items():
                w = rem.get(de + k, 0) - t * dv
                if w:
                    rem[de + k] = w
                else:
                    rem.pop(de + k, None)
        return QPoly(quo)

    def evaluate(self, x: int) -> int:
        """Evaluate at an integer point (used for q=1 sanity checks)."""
        return sum(v * x**e for e, v in self._c.items())

    def __str__(self) -> str:
        return render_terms(sorted(self._c.items()), _q_var)

    def __repr__(self) -> str:
        return f"QPoly({self})"


def _q_var(exp: int) -> str:
    if exp == 0:
        return ""
    return "q" if exp == 1 else f"q^{exp}"


def _qt_var(exp: tuple[int, int]) -> str:
    qe, te = exp
    parts = []
    if qe:
        parts.append("q" if qe == 1 else f"q^{qe}")
    if te:
        parts.append("t" if te == 1 else f"t^{te}")
    return "*".join(parts)


def render_terms(items, var) -> str:
    """Canonical ascending rendering, '1 + 2*q + q^2' style."""
    if not items:
        return "0"
    parts = []
    for i, (e, c) in enumerate(items):
        v = var(e)
        mag = abs(c)
        if v and mag == 1:
            body = v
        elif v:
            body = f"{mag}*{v}"
        else:
            body = str(mag)
        if i == 0:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


class QTPoly:
    """Sparse integer polynomial in q and t, keyed by exponent pairs."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[tuple[int, int], int] | None = None):
        c = {}
        if coeffs:
            for (qe, te), v in coeffs.items():
                v = _inorm(v)
                if v:
                    if qe < 0 or te < 0:
                        raise ValueError(f"negative exponent pair ({qe},{te})")
                    c[(qe, te)] = v
        self._c = c

    @classmethod
    def zero(cls) -> "QTPoly":
        return cls()

    @classmethod
    def one(cls) -> "QTPoly":
        return cls({(0, 0): 1})

    @classmethod
    def monomial(cls, qexp: int, texp: int, coeff: int = 1) -> "QTPoly":
        return cls({(qexp, texp): coeff})

    def items(self):
        return self._c.items()

    def coeff(self, qexp: int, texp: int) -> int:
        return self._c.get((qexp, texp), 0)

    def is_zero(self) -> bool:
        return not self._c

    def _coerce(self, other):
        if isinstance(other, QTPoly):
            return other
        if isinstance(other, int):
            return QTPoly({(0, 0): other})
        return None

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        return NotImplemented if o is None else self._c == o._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __add__(self, other) -> "QTPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        c = dict(self._c)
        for e, v in o._c.items():
            w = c.get(e, 0) + v
            if w:
                c[e] = w
            else:
                c.pop(e, None)
        p = QTPoly.__new__(QTPoly)
        p._c = c
        return p

    __radd__ = __add__

    def __neg__(self) -> "QTPoly":
        p = QTPoly.__new__(QTPoly)
        p._c = {e: -v for e, v in self._c.items()}
        return p

    def __sub__(self, other) -> "QTPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __mul__(self, other) -> "QTPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        c: dict[tuple[int, int], int] = {}
        for (q1, t1), v1 in self._c.items():
            for (q2, t2), v2 in o._c.items():
                e = (q1 + q2, t1 + t2)
                w = c.get(e, 0) + v1 * v2
                if w:
                    c[e] = w
                else:
                    c.pop(e, None)
        p = QTPoly.__new__(QTPoly)
        p._c = c
        return p

    __rmul__ = __mul__

    def set_t_one(self) -> QPoly:
        """Specialize t -> 1, collapsing to a polynomial in q."""
        c: dict[int, int] = {}
        for (qe, _te), v in self._c.items():
            c[qe] = c.get(qe, 0) + v
        return QPoly(c)

    def set_q_one(self) -> QPoly:
        """Specialize q -> 1, returning the t-marginal as a polynomial."""
        c: dict[int, int] = {}
        for (_qe, te), v in self._c.items():
            c[te] = c.get(te, 0) + v
        return QPoly(c)

    def t_coefficient(self, texp: int) -> QPoly:
        """The q-polynomial multiplying t**texp."""
        return QPoly({qe: v for (qe, te), v in self._c.items() if te == texp})

    def max_t_degree(self) -> int:
        return max((te for (_qe, te) in self._c), default=-1)

    def __str__(self) -> str:
        return render_terms(sorted(self._c.items()), _qt_var)

    def __repr__(self) -> str:
        return f"QTPoly({self})"


class QSeries:
    """Integer power series in q truncated at a fixed order (inclusive)."""

    __slots__ = ("order", "_c")

    def __init__(self, order: int, coeffs: Mapping[int, int] | None = None):
        if order < 0:
            raise ValueError("truncation order must be >= 0")
        self.order = order
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                v = _inorm(v)
                if v and 0 <= e <= order:
                    c[e] = v
        self._c = c

    @classmethod
    def from_poly(cls, p: QPoly, order: int) -> "QSeries":
        return cls(order, dict(p.items()))

    def coeff(self, exp: int) -> int:
        return self._c.get(exp, 0)

    def items(self):
        return self._c.items()

    def is_zero(self) -> bool:
        return not self._c

    def _coerce(self, other):
        if isinstance(other, QSeries):
            return other
        if isinstance(other, QPoly):
            return QSeries.from_poly(other, self.order)
        if isinstance(other, int):
            return QSeries(self.order, {0: other})
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.order == other.order and self._c == other._c

    def __hash__(self):
        return hash((self.order, frozenset(self._c.items())))

    def __add__(self, other) -> "QSeries":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        order = min(self.order, o.order)
        c = {e: v for e, v in self._c.items() if e <= order}
        for e, v in o._c.items():
            if e <= order:
                w = c.get(e, 0) + v
                if w:
                    c[e] = w
                else:
                    c.pop(e, None)
        return QSeries(order, c)

    __radd__ = __add__

    def __neg__(self) -> "QSeries":
        return QSeries(self.order, {e: -v for e, v in self._c.items()})

    def __sub__(self, other) -> "QSeries":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __mul__(self, other) -> "QSeries":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        order = min(self.order, o.order)
        c: dict[int, int] = {}
        for e1, v1 in self._c.items():
            if e1 > order:
                continue
            for e2, v2 in o._c.items():
                e = e1 + e2
                if e > order:
                    continue
                w = c.get(e, 0) + v1 * v2
                if w:
                    c[e] = w
                else:
                    c.pop(e, None)
        return QSeries(order, c)

    __rmul__ = __mul__

    def matches_poly(self, p: QPoly) -> bool:
        """True when every coefficient up to the truncation order agrees."""
        return all(self.coeff(e) == p.coeff(e) for e in range(self.order + 1))

    def __str__(self) -> str:
        body = render_terms(sorted(self._c.items()), _q_var)
        return f"{body} + O(q^{self.order + 1})"

    def __repr__(self) -> str:
        return f"QSeries({self})"


def series_from_poly(p: QPoly, order: int) -> QSeries:
    return QSeries.from_poly(p, order)


def series_inverse(p: QPoly, order: int) -> QSeries:
    """Multiplicative inverse of p as a series, up to the given order.

    Requires constant term +-1 so the inverse stays integral.
    """
    c0 = p.coeff(0)
    if c0 not in (1, -1):
        raise ValueError(f"constant term must be +-1 for series inversion, got {c0}")
    inv = {0: c0}
    for k in range(1, order + 1):
        acc = 0
        for e, v in p.items():
            if 0 < e <= k:
                acc += v * inv.get(k - e, 0)
        if acc:
            inv[k] = -c0 * acc
    return QSeries(order, {e: v for e, v in inv.items() if v})


def geometric_series(order: int) -> QSeries:
    """1 + q + q^2 + ... up to the given order (inverse of 1 - q)."""
    return QSeries(order, {e: 1 for e in range(order + 1)})


class TSeriesQ:
    """Power series in t truncated at a fixed order, with QPoly coefficients.

    The q-side is exact; only the t-direction is truncated.
    """

    __slots__ = ("order", "_c")

    def __init__(self, order: int, coeffs: Mapping[int, QPoly] | None = None):
        if order < 0:
            raise ValueError("truncation order must be >= 0")
        self.order = order
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                if not isinstance(v, QPoly):
                    raise TypeError("TSeriesQ coefficients must be QPoly")
                if not v.is_zero() and 0 <= e <= order:
                    c[e] = v
        self._c = c

    @classmethod
    def from_qtpoly(cls, p: QTPoly, order: int) -> "TSeriesQ":
        c: dict[int, dict[int, int]] = {}
        for (qe, te), v in p.items():
            if te <= order:
                c.setdefault(te, {})[qe] = v
        return cls(order, {te: QPoly(m) for te, m in c.items()})

    def coeff(self, texp: int) -> QPoly:
        return self._c.get(texp, QPoly.zero())

    def items(self):
        return self._c.items()

    def __eq__(self, other) -> bool:
        if not isinstance(other, TSeriesQ):
            return NotImplemented
        return self.order == other.order and self._c == other._c

    def __add__(self, other) -> "TSeriesQ":
        if not isinstance(other, TSeriesQ):
            return NotImplemented
        order = min(self.order, other.order)
        c = {e: v for e, v in self._c.items() if e <= order}
        for e, v in other._c.items():
            if e <= order:
                w = c.get(e, QPoly.zero()) + v
                if w.is_zero():
                    c.pop(e, None)
                else:
                    c[e] = w
        return TSeriesQ(order, c)

    def __sub__(self, other) -> "TSeriesQ":
        if not isinstance(other, TSeriesQ):
            return NotImplemented
        neg = TSeriesQ(other.order, {e: -v for e, v in other._c.items()})
        return self + neg

    def __mul__(self, other) -> "TSeriesQ":
        if not isinstance(other, TSeriesQ):
            return NotImplemented
        order = min(self.order, other.order)
        c: dict[int, QPoly] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                if e > order:
                    continue
                w = c.get(e, QPoly.zero()) + v1 * v2
                if w.is_zero():
                    c.pop(e, None)
                else:
                    c[e] = w
        return TSeriesQ(order, c)

    def inverse(self) -> "TSeriesQ":
        """Series inverse in t; the constant coefficient must be +-1."""
        c0 = self.coeff(0)
        if c0 != QPoly.one() and c0 != QPoly({0: -1}):
            raise ValueError("constant t-coefficient must be +-1 for inversion")
        sign = c0.coeff(0)
        inv: dict[int, QPoly] = {0: c0}
        for k in range(1, self.order + 1):
            acc = QPoly.zero()
            for e, v in self._c.items():
                if 0 < e <= k:
                    acc = acc + v * inv.get(k - e, QPoly.zero())
            val = QPoly({0: -sign}) * acc
            if not val.is_zero():
                inv[k] = val
        return TSeriesQ(self.order, inv)

    def first_mismatch(self, other: "TSeriesQ") -> int | None:
        """Smallest t-order where coefficients differ, or None if equal."""
        for k in range(min(self.order, other.order) + 1):
            if self.coeff(k) != other.coeff(k):
                return k
        return None

    def __repr__(self) -> str:
        terms = ", ".join(f"t^{e}: {v}" for e, v in sorted(self._c.items()))
        return f"TSeriesQ(order={self.order}, {{{terms}}})"


def q_int(n: int) -> QPoly:
    """The q-analogue of n: 1 + q + ... + q^(n-1); zero for n = 0."""
    if n < 0:
        raise ValueError("q_int requires n >= 0")
    return QPoly({e: 1 for e in range(n)})


def q_factorial(n: int) -> QPoly:
    """Product of the q-analogues of 1..n; the empty product is 1."""
    if n < 0:
        raise ValueError("q_factorial requires n >= 0")
    out = QPoly.one()
    for k in range(1, n + 1):
        out = out * q_int(k)
    return out


def gaussian_multinomial(alpha: Iterable[int]) -> QPoly:
    """q-multinomial of the composition alpha, by exact division.

    Computes [n]! / ([a1]! ... [ak]!) where n = sum(alpha); the division is
    asserted to be exact (a nonzero remainder would be an arithmetic bug).
    """
    parts = list(alpha)
    if not parts or any(a < 1 for a in parts):
        raise ValueError("composition must be a non-empty list of positive integers")
    num = q_factorial(sum(parts))
    for a in parts:
        quo = num.exact_divide(q_factorial(a))
        if quo is None:
            raise ArithmeticError("gaussian multinomial division left a remainder")
        num = quo
    return num


def gaussian_binomial(n: int, k: int) -> QPoly:
    """q-binomial coefficient [n choose k]."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got ({n},{k})")
    if k == 0 or k == n:
        return QPoly.one()
    return gaussian_multinomial((k, n - k))


def exact_divide(p: QPoly, d: QPoly) -> QPoly | None:
    """Exact quotient p/d over Z[q], or None when not divisible."""
    return p.exact_divide(d)


def divides(d: QPoly, p: QPoly) -> bool:
    """True when d divides p exactly over Z[q]."""
    if d.is_zero():
        raise ZeroDivisionError("zero polynomial cannot divide")
    return p.exact_divide(d) is not None
