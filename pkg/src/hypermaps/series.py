"""Exact truncated multivariate power series over the rationals.

A :class:`TruncatedSeries` lives in a fixed ordered tuple of variables, each
carrying its own truncation order: a variable with order ``N`` only has its
exponents ``0..N-1`` known, while an order of ``None`` marks an exact
(polynomial) variable.  Coefficients are stored sparsely as ``int`` or
:class:`fractions.Fraction`; zero coefficients are never stored.

Everything here is exact.  Series are immutable and all operations return new
objects, so values can be shared freely between threads.
"""

from __future__ import annotations

import math
import numbers
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple, Union

Rational = Fraction
Exponent = Tuple[int, ...]
Order = Optional[int]
Scalar = Union[int, Fraction]


class TruncationError(ValueError):
    """A coefficient was requested outside the window where it is known."""


class VariableMismatch(ValueError):
    """Two series do not live in the same ordered set of variables."""


class ConvergenceError(ArithmeticError):
    """An operation would need an infinite (non t-adically convergent) sum."""


def _norm(c) -> Scalar:
    if type(c) is int:
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, numbers.Integral):
        return int(c)
    if isinstance(c, numbers.Rational):
        return _norm(Fraction(c.numerator, c.denominator))
    raise TypeError(f"exact rational coefficient expected, got {type(c).__name__}")


def _omin(a: Order, b: Order) -> Order:
    if a is None:
        return b
    if b is None:
        return a
    return a if a < b else b


def _inside(e: Exponent, orders: Sequence[Order]) -> bool:
    for x, o in zip(e, orders):
        if o is not None and x >= o:
            return False
    return True


def _is_scalar(x) -> bool:
    return isinstance(x, numbers.Rational) and not isinstance(x, TruncatedSeries)


class TruncatedSeries:
    """Sparse multivariate power series with per-variable truncation orders.

    Two series compare equal when their coefficients agree on the
    intersection of their windows.
    """

    __slots__ = ("variables", "orders", "_c")

    def __init__(self, variables: Iterable[str], orders: Iterable[Order],
                 coeffs: Union[Mapping, Iterable] = ()):
        variables = tuple(variables)
        orders = tuple(orders)
        if len(variables) != len(orders):
            raise ValueError("one truncation order per variable is required")
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        for o in orders:
            if o is not None and (not isinstance(o, int) or o < 0):
                raise ValueError(f"invalid truncation order {o!r}")
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        c: Dict[Exponent, Scalar] = {}
        n = len(variables)
        for e, v in items:
            e = tuple(int(x) for x in e)
            if len(e) != n or any(x < 0 for x in e):
                raise ValueError(f"bad exponent {e} for variables {variables}")
            if not _inside(e, orders):
                continue
            s = c.get(e, 0) + _norm(v)
            if s:
                c[e] = _norm(s)
            else:
                c.pop(e, None)
        self.variables = variables
        self.orders = orders
        self._c = c

    @classmethod
    def _raw(cls, variables, orders, c) -> "TruncatedSeries":
        obj = cls.__new__(cls)
        obj.variables = variables
        obj.orders = orders
        obj._c = c
        return obj

    # -- construction helpers -------------------------------------------------

    @classmethod
    def constant(cls, value, variables, orders) -> "TruncatedSeries":
        variables, orders = tuple(variables), tuple(orders)
        value = _norm(value)
        zero = (0,) * len(variables)
        c = {zero: value} if value and _inside(zero, orders) else {}
        return cls._raw(variables, orders, c)

    @classmethod
    def monomial(cls, exponent: Mapping[str, int], variables, orders, coeff=1) -> "TruncatedSeries":
        variables = tuple(variables)
        e = tuple(exponent.get(v, 0) for v in variables)
        unknown = set(exponent) - set(variables)
        if unknown:
            raise VariableMismatch(f"unknown variables {sorted(unknown)}")
        return cls(variables, orders, {e: coeff})

    def _like(self, c) -> "TruncatedSeries":
        return TruncatedSeries._raw(self.variables, self.orders, c)

    def _coerce(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return other
        if _is_scalar(other):
            return TruncatedSeries.constant(other, self.variables, self.orders)
        return NotImplemented

    # -- inspection -----------------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, var: str) -> int:
        try:
            return self.variables.index(var)
        except ValueError:
            raise VariableMismatch(f"{var!r} is not one of {self.variables}") from None

    def order(self, var: str) -> Order:
        return self.orders[self.index(var)]

    def items(self) -> Iterator[Tuple[Exponent, Fraction]]:
        """Stored (exponent, coefficient) pairs in sorted exponent order."""
        for e in sorted(self._c):
            yield e, Fraction(self._c[e])

    def __iter__(self):
        return self.items()

    @property
    def nterms(self) -> int:
        return len(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def in_window(self, exponent: Exponent) -> bool:
        return _inside(exponent, self.orders)

    def coeff(self, idx) -> Fraction:
        """Exact coefficient at ``idx`` (tuple or ``{var: exponent}``)."""
        e = self._exponent(idx)
        if not _inside(e, self.orders):
            raise TruncationError(f"exponent {e} lies outside the window {self.orders}")
        return Fraction(self._c.get(e, 0))

    __getitem__ = coeff

    def _exponent(self, idx) -> Exponent:
        if isinstance(idx, Mapping):
            unknown = set(idx) - set(self.variables)
            if unknown:
                raise VariableMismatch(f"unknown variables {sorted(unknown)}")
            return tuple(int(idx.get(v, 0)) for v in self.variables)
        if isinstance(idx, int) and self.nvars == 1:
            return (idx,)
        e = tuple(int(x) for x in idx)
        if len(e) != self.nvars:
            raise ValueError(f"exponent {e} has the wrong length for {self.variables}")
        return e

    def constant_term(self) -> Fraction:
        return Fraction(self._c.get((0,) * self.nvars, 0))

    def valuation(self, var: str) -> Optional[int]:
        i = self.index(var)
        if not self._c:
            return None
        return min(e[i] for e in self._c)

    def degree(self, var: str) -> Optional[int]:
        i = self.index(var)
        if not self._c:
            return None
        return max(e[i] for e in self._c)

    def _truncated_degree(self, e: Exponent) -> int:
        return sum(x for x, o in zip(e, self.orders) if o is not None)

    def _window_degree(self) -> int:
        """One more than the largest truncated-degree inside the window."""
        return sum(o - 1 for o in self.orders if o is not None) + 1

    # -- equality -------------------------------------------------------------

    def __eq__(self, other):
        if _is_scalar(other):
            other = self._coerce(other)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if other.variables != self.variables:
            return False
        orders = tuple(_omin(a, b) for a, b in zip(self.orders, other.orders))
        keys = set(self._c) | set(other._c)
        return all(self._c.get(e, 0) == other._c.get(e, 0) for e in keys if _inside(e, orders))

    __hash__ = None

    # -- window management ----------------------------------------------------

    def truncate(self, orders: Union[Mapping[str, Order], Sequence[Order]]) -> "TruncatedSeries":
        """Shrink the window (orders can only decrease)."""
        if isinstance(orders, Mapping):
            new = list(self.orders)
            for v, o in orders.items():
                new[self.index(v)] = _omin(new[self.index(v)], o)
            orders = new
        orders = tuple(_omin(a, b) for a, b in zip(self.orders, orders))
        return TruncatedSeries._raw(self.variables, orders,
                                    {e: c for e, c in self._c.items() if _inside(e, orders)})

    def embed(self, variables: Sequence[str], orders: Sequence[Order]) -> "TruncatedSeries":
        """Re-express in a larger ordered variable set; new variables get exponent 0."""
        variables, orders = tuple(variables), tuple(orders)
        missing = [v for v in self.variables if v not in variables]
        if missing:
            raise VariableMismatch(f"target variables lack {missing}")
        pos = [variables.index(v) for v in self.variables]
        merged = list(orders)
        for i, p in enumerate(pos):
            merged[p] = _omin(merged[p], self.orders[i])
        merged = tuple(merged)
        c = {}
        n = len(variables)
        for e, v in self._c.items():
            ne = [0] * n
            for i, p in enumerate(pos):
                ne[p] = e[i]
            ne = tuple(ne)
            if _inside(ne, merged):
                c[ne] = v
        return TruncatedSeries._raw(variables, merged, c)

    def rename(self, mapping: Mapping[str, str]) -> "TruncatedSeries":
        variables = tuple(mapping.get(v, v) for v in self.variables)
        if len(set(variables)) != len(variables):
            raise ValueError("renaming would merge variables")
        return TruncatedSeries._raw(variables, self.orders, dict(self._c))

    def drop(self, var: str) -> "TruncatedSeries":
        """Remove a variable that does not occur (all exponents zero)."""
        i = self.index(var)
        if any(e[i] for e in self._c):
            raise ValueError(f"{var!r} still occurs in the series")
        return TruncatedSeries._raw(self.variables[:i] + self.variables[i + 1:],
                                    self.orders[:i] + self.orders[i + 1:],
                                    {e[:i] + e[i + 1:]: c for e, c in self._c.items()})

    def part(self, var: str, k: int) -> "TruncatedSeries":
        """The coefficient of ``var**k``, as a series in the remaining variables."""
        i = self.index(var)
        o = self.orders[i]
        if k < 0 or (o is not None and k >= o):
            raise TruncationError(f"{var}^{k} lies outside the window (order {o})")
        return TruncatedSeries._raw(self.variables[:i] + self.variables[i + 1:],
                                    self.orders[:i] + self.orders[i + 1:],
                                    {e[:i] + e[i + 1:]: c for e, c in self._c.items() if e[i] == k})

    def shift(self, var: str, k: int) -> "TruncatedSeries":
        """Multiply by ``var**k``; negative ``k`` divides and must be exact."""
        i = self.index(var)
        o = self.orders[i]
        if k < 0 and any(e[i] < -k for e in self._c):
            raise ArithmeticError(f"series is not divisible by {var}^{-k}")
        no = None if o is None else max(o + k, 0)
        orders = self.orders[:i] + (no,) + self.orders[i + 1:]
        c = {}
        for e, v in self._c.items():
            ne = e[:i] + (e[i] + k,) + e[i + 1:]
            if _inside(ne, orders):
                c[ne] = v
        return TruncatedSeries._raw(self.variables, orders, c)

    def map_coefficients(self, fn) -> "TruncatedSeries":
        return TruncatedSeries(self.variables, self.orders, {e: fn(Fraction(c)) for e, c in self._c.items()})

    # -- ring operations ------------------------------------------------------

    def _common_orders(self, other: "TruncatedSeries") -> Tuple[Order, ...]:
        if other.variables != self.variables:
            raise VariableMismatch(f"{self.variables} vs {other.variables}")
        return tuple(_omin(a, b) for a, b in zip(self.orders, other.orders))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        orders = self._common_orders(other)
        c = {e: v for e, v in self._c.items() if _inside(e, orders)}
        for e, v in other._c.items():
            if not _inside(e, orders):
                continue
            s = c.get(e, 0) + v
            if s:
                c[e] = _norm(s)
            else:
                c.pop(e, None)
        return TruncatedSeries._raw(self.variables, orders, c)

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -v for e, v in self._c.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, k) -> "TruncatedSeries":
        k = _norm(k)
        if not k:
            return self._like({})
        return self._like({e: _norm(v * k) for e, v in self._c.items()})

    def __mul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return _mul(self, other, self._common_orders(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _is_scalar(other):
            other = _norm(other)
            if not other:
                raise ZeroDivisionError("division of a series by zero")
            return self.scale(Fraction(1, 1) / other)
        if isinstance(other, TruncatedSeries):
            return self * inverse(other)
        return NotImplemented

    def __rtruediv__(self, other):
        if _is_scalar(other):
            return inverse(self).scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("only integer powers are supported")
        if n < 0:
            return inverse(self) ** (-n)
        result = TruncatedSeries.constant(1, self.variables, self.orders)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- display --------------------------------------------------------------

    def _term_str(self, e: Exponent, c) -> str:
        mono = "*".join(v if x == 1 else f"{v}^{x}" for v, x in zip(self.variables, e) if x)
        c = Fraction(c)
        if not mono:
            return str(c)
        if c == 1:
            return mono
        if c == -1:
            return "-" + mono
        return f"{c}*{mono}"

    def __str__(self):
        key = lambda e: (self._truncated_degree(e), e)
        terms = [self._term_str(e, self._c[e]) for e in sorted(self._c, key=key)]
        body = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        tails = [f"{v}^{o}" for v, o in zip(self.variables, self.orders) if o is not None]
        return body + (f" + O({', '.join(tails)})" if tails else "")

    def __repr__(self):
        return f"TruncatedSeries({self.variables}, {self.orders}, {self})"


class SeriesSpace:
    """An ordered set of variables with truncation orders, for building series."""

    def __init__(self, variables: Sequence[str], orders: Sequence[Order]):
        self.variables = tuple(variables)
        self.orders = tuple(orders)
        if len(self.variables) != len(self.orders):
            raise ValueError("one truncation order per variable is required")

    @classmethod
    def from_mapping(cls, orders: Mapping[str, Order]) -> "SeriesSpace":
        return cls(tuple(orders), tuple(orders.values()))

    def gen(self, var: str) -> TruncatedSeries:
        return TruncatedSeries.monomial({var: 1}, self.variables, self.orders)

    def const(self, value) -> TruncatedSeries:
        return TruncatedSeries.constant(value, self.variables, self.orders)

    def zero(self) -> TruncatedSeries:
        return TruncatedSeries._raw(self.variables, self.orders, {})

    def one(self) -> TruncatedSeries:
        return self.const(1)

    def monomial(self, exponent: Mapping[str, int], coeff=1) -> TruncatedSeries:
        return TruncatedSeries.monomial(exponent, self.variables, self.orders, coeff)

    def series(self, coeffs) -> TruncatedSeries:
        return TruncatedSeries(self.variables, self.orders, coeffs)

    def lift(self, s) -> TruncatedSeries:
        """Scalars become constants; series are embedded into this space."""
        if _is_scalar(s):
            return self.const(s)
        return s.embed(self.variables, self.orders)

    def order(self, var: str) -> Order:
        return self.orders[self.variables.index(var)]

    def with_var(self, var: str, order: Order, first: bool = True) -> "SeriesSpace":
        if var in self.variables:
            raise ValueError(f"{var!r} already present")
        if first:
            return SeriesSpace((var,) + self.variables, (order,) + self.orders)
        return SeriesSpace(self.variables + (var,), self.orders + (order,))

    def __eq__(self, other):
        return (isinstance(other, SeriesSpace) and self.variables == other.variables
                and self.orders == other.orders)

    def __repr__(self):
        return f"SeriesSpace({dict(zip(self.variables, self.orders))})"


# -- kernels ------------------------------------------------------------------

def _mul(a: TruncatedSeries, b: TruncatedSeries, orders, cap: Optional[int] = None) -> TruncatedSeries:
    """Cauchy product inside ``orders``; with ``cap`` also drop terms of
    truncated-degree >= cap."""
    if len(a._c) > len(b._c):
        a, b = b, a
    out: Dict[Exponent, Scalar] = {}
    if not a._c or not b._c:
        return TruncatedSeries._raw(a.variables, orders, out)
    finite = [i for i, o in enumerate(orders) if o is not None]
    n = len(orders)
    if n == 1:
        o = orders[0]
        lim = o if o is not None else math.inf
        if cap is not None:
            lim = min(lim, cap)
        bl = sorted((e[0], v) for e, v in b._c.items())
        for (x,), u in a._c.items():
            for y, v in bl:
                k = x + y
                if k >= lim:
                    break
                out[(k,)] = out.get((k,), 0) + u * v
    else:
        lead = finite[0] if finite else None
        if lead is not None:
            bl = sorted(b._c.items(), key=lambda kv: kv[0][lead])
        else:
            bl = list(b._c.items())
        for ea, u in a._c.items():
            for eb, v in bl:
                if lead is not None and ea[lead] + eb[lead] >= orders[lead]:
                    break
                e = tuple(x + y for x, y in zip(ea, eb))
                ok = True
                deg = 0
                for i in finite:
                    if e[i] >= orders[i]:
                        ok = False
                        break
                    deg += e[i]
                if not ok or (cap is not None and deg >= cap):
                    continue
                out[e] = out.get(e, 0) + u * v
    c = {}
    for e, v in out.items():
        if v:
            c[e] = _norm(v)
    return TruncatedSeries._raw(a.variables, orders, c)


def _check_nilpotent(f: TruncatedSeries, what: str) -> None:
    finite = [i for i, o in enumerate(f.orders) if o is not None]
    zero = (0,) * f.nvars
    for e in f._c:
        if e != zero and not any(e[i] for i in finite):
            raise ConvergenceError(
                f"{what}: term {f._term_str(e, f._c[e])} has no positive degree in a truncated variable")


def _capped(f: TruncatedSeries, cap: int) -> TruncatedSeries:
    return f._like({e: v for e, v in f._c.items() if f._truncated_degree(e) < cap})


# -- public operations -----------------------------------------------------------

def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a + b


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


def coeff(f: TruncatedSeries, idx) -> Fraction:
    return f.coeff(idx)


def inverse(f: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse by Newton iteration with doubling precision."""
    zero = (0,) * f.nvars
    c0 = f._c.get(zero, 0)
    if not c0:
        raise ZeroDivisionError("series with zero constant term is not invertible")
    _check_nilpotent(f, "inverse")
    y = f._like({zero: _norm(Fraction(1) / c0)})
    if len(f._c) == 1:
        return y
    top = f._window_degree()
    prec = 1
    while prec < top:
        prec = min(2 * prec, top)
        fy = _mul(f, y, f.orders, prec)
        y = _mul(y, 2 - fy, f.orders, prec)
    return y


def sqrt(f: TruncatedSeries) -> TruncatedSeries:
    """Square root with constant term 1, by Newton's ``S <- (S + f/S)/2``."""
    zero = (0,) * f.nvars
    if f._c.get(zero, 0) != 1:
        raise ValueError("sqrt needs a series with constant term exactly 1")
    _check_nilpotent(f, "sqrt")
    one = f._like({zero: 1})
    if len(f._c) == 1:
        return one
    top = f._window_degree()
    s, inv = one, one
    prec = 1
    while prec < top:
        prec = min(2 * prec, top)
        # inv is exact for s only to half the current precision: two Newton steps
        for _ in range(2):
            inv = _mul(inv, 2 - _mul(s, inv, f.orders, prec), f.orders, prec)
        s = (s + _mul(f, inv, f.orders, prec)).scale(Fraction(1, 2))
        s = _capped(s, prec)
    return s


def derive(f: TruncatedSeries, var: str) -> TruncatedSeries:
    i = f.index(var)
    o = f.orders[i]
    orders = f.orders[:i] + ((None if o is None else max(o - 1, 0)),) + f.orders[i + 1:]
    c = {}
    for e, v in f._c.items():
        if e[i]:
            ne = e[:i] + (e[i] - 1,) + e[i + 1:]
            if _inside(ne, orders):
                c[ne] = _norm(v * e[i])
    return TruncatedSeries._raw(f.variables, orders, c)


def integrate(f: TruncatedSeries, var: str) -> TruncatedSeries:
    """Antiderivative with zero constant of integration (window grows by one)."""
    i = f.index(var)
    o = f.orders[i]
    orders = f.orders[:i] + ((None if o is None else o + 1),) + f.orders[i + 1:]
    c = {e[:i] + (e[i] + 1,) + e[i + 1:]: _norm(Fraction(v) / (e[i] + 1)) for e, v in f._c.items()}
    return TruncatedSeries._raw(f.variables, orders, c)


def compose(f: TruncatedSeries, assignment: Mapping[str, object]) -> TruncatedSeries:
    """Substitute series (or scalars) for some variables of ``f``.

    All substituted series must share one variable set, the target space;
    variables of ``f`` that are not substituted must belong to it.  When
    ``f`` is only known modulo ``u**N`` the substitute for ``u`` must have
    positive valuation in some truncated target variable; the result window
    is narrowed when needed so that every reported coefficient is exact.
    """
    for v in assignment:
        f.index(v)
    series_vals = [g for g in assignment.values() if isinstance(g, TruncatedSeries)]
    if series_vals:
        tvars = series_vals[0].variables
        torders = list(series_vals[0].orders)
        for g in series_vals[1:]:
            if g.variables != tvars:
                raise VariableMismatch("substituted series live in different spaces")
            torders = [_omin(a, b) for a, b in zip(torders, g.orders)]
    else:
        keep = [v for v in f.variables if v not in assignment]
        tvars = tuple(keep)
        torders = [f.order(v) for v in keep]
    kept = [v for v in f.variables if v not in assignment]
    for v in kept:
        if v not in tvars:
            raise VariableMismatch(f"unsubstituted variable {v!r} missing from the target space")
        j = tvars.index(v)
        torders[j] = _omin(torders[j], f.order(v))

    subs: Dict[str, TruncatedSeries] = {}
    for v, g in assignment.items():
        if isinstance(g, TruncatedSeries):
            subs[v] = g
            continue
        g = _norm(g)
        if g and f.order(v) is not None:
            raise ConvergenceError(f"substituting the nonzero constant {g} for truncated {v!r}")
        subs[v] = TruncatedSeries.constant(g, tvars, torders)

    # narrow the target window so that unknown high-order terms of f cannot leak in
    for v, g in subs.items():
        N = f.order(v)
        if N is None:
            continue
        if g.is_zero():
            continue
        if g.constant_term():
            raise ConvergenceError(f"substitute for {v!r} has a nonzero constant term")
        vals = {}
        for j, (tv, to) in enumerate(zip(tvars, torders)):
            if to is None:
                continue
            m = min(e[j] for e in g._c)
            if m > 0:
                vals[j] = m
        if any(m * N >= torders[j] for j, m in vals.items()):
            continue
        if not vals:
            raise ConvergenceError(f"substitute for {v!r} is not topologically nilpotent")
        j = max(vals, key=lambda j: vals[j] * N)
        torders[j] = vals[j] * N
    torders = tuple(torders)
    subs = {v: g.truncate(torders) for v, g in subs.items()}

    svars = [v for v in f.variables if v in subs]
    sidx = [f.index(v) for v in svars]
    kidx = [f.index(v) for v in kept]
    kpos = [tvars.index(v) for v in kept]

    powers: Dict[str, list] = {v: [TruncatedSeries.constant(1, tvars, torders)] for v in svars}

    def power(v, k):
        p = powers[v]
        while len(p) <= k:
            p.append(p[-1] * subs[v])
        return p[k]

    groups: Dict[Exponent, Dict[Exponent, Scalar]] = {}
    for e, c in f._c.items():
        key = tuple(e[i] for i in sidx)
        rest = [0] * len(tvars)
        for i, p in zip(kidx, kpos):
            rest[p] = e[i]
        groups.setdefault(key, {})[tuple(rest)] = c

    prefix_cache: Dict[Exponent, TruncatedSeries] = {(): TruncatedSeries.constant(1, tvars, torders)}

    def prefix(key):
        if key in prefix_cache:
            return prefix_cache[key]
        val = prefix(key[:-1]) * power(svars[len(key) - 1], key[-1])
        prefix_cache[key] = val
        return val

    total = TruncatedSeries._raw(tvars, torders, {})
    for key, poly in sorted(groups.items()):
        term = prefix(key)
        if term.is_zero():
            continue
        total = total + term * TruncatedSeries(tvars, torders, poly)
    return total


def revert(f: TruncatedSeries, var: str) -> TruncatedSeries:
    """Compositional inverse in ``var`` by Lagrange inversion.

    ``f`` must be ``var + O(var**2)``; its coefficients may involve the other
    variables.  The result ``g`` (in the same variable set, ``var`` now naming
    the new argument) satisfies ``compose(f, {var: g}) == var``.
    """
    i = f.index(var)
    N = f.orders[i]
    if N is None:
        raise ValueError(f"revert needs a finite truncation order in {var!r}")
    if any(e[i] == 0 for e in f._c):
        raise ValueError(f"revert: series has terms of degree 0 in {var!r}")
    lin = f.part(var, 1) if N > 1 else None
    if lin is not None and not (lin == 1 and lin.constant_term() == 1 and lin.nterms == 1):
        raise ValueError(f"revert: coefficient of {var} must be exactly 1")
    if N <= 2:
        return TruncatedSeries.monomial({var: 1}, f.variables, f.orders)
    h = f.shift(var, -1)  # f = var*h, h = 1 + O(var), known mod var^(N-1)
    hinv = inverse(h)
    out: Dict[Exponent, Scalar] = {}
    p = hinv
    for n in range(1, N):
        if n > 1:
            p = p * hinv
        for e, c in p._c.items():
            if e[i] == n - 1:
                ne = e[:i] + (n,) + e[i + 1:]
                out[ne] = _norm(Fraction(c) / n)
    return TruncatedSeries(f.variables, f.orders, out)


# -- Laurent series ----------------------------------------------------------------

class LaurentSeries:
    """``x**shift * body(1/x)``, where ``body`` is a power series in ``inv``.

    Coefficients are series in the remaining variables of ``body``.  With an
    exact ``inv`` order this represents a Laurent polynomial.
    """

    __slots__ = ("body", "shift", "inv")

    def __init__(self, body: TruncatedSeries, shift: int, inv: str):
        body.index(inv)
        self.body = body
        self.shift = int(shift)
        self.inv = inv

    @classmethod
    def from_terms(cls, terms: Mapping[int, object], inv: str, space: SeriesSpace,
                   inv_order: Order = None) -> "LaurentSeries":
        """Build ``sum terms[k] * x**k`` with coefficients living in ``space``."""
        bspace = space.with_var(inv, inv_order)
        nonzero = {k: c for k, c in terms.items()
                   if not (_is_scalar(c) and c == 0)}
        if not nonzero:
            return cls(bspace.zero(), 0, inv)
        top = max(nonzero)
        body = bspace.zero()
        for k, c in nonzero.items():
            body = body + bspace.lift(c).shift(inv, top - k)
        return cls(body, top, inv)

    @property
    def others(self) -> Tuple[str, ...]:
        return tuple(v for v in self.body.variables if v != self.inv)

    def coefficient(self, k: int) -> TruncatedSeries:
        """Coefficient of ``x**k`` (a series in the other variables)."""
        j = self.shift - k
        if j < 0:
            i = self.body.index(self.inv)
            vs = self.body.variables
            return TruncatedSeries._raw(vs[:i] + vs[i + 1:], self.body.orders[:i] + self.body.orders[i + 1:], {})
        return self.body.part(self.inv, j)

    def lowest_known(self) -> Optional[int]:
        """Smallest exponent of x whose coefficient is known (None if all are)."""
        o = self.body.order(self.inv)
        return None if o is None else self.shift - o + 1

    def _align(self, other: "LaurentSeries"):
        if other.inv != self.inv:
            raise VariableMismatch("Laurent series in different variables")
        s = max(self.shift, other.shift)
        return self.body.shift(self.inv, s - self.shift), other.body.shift(self.inv, s - other.shift), s

    def _coerce(self, other):
        if isinstance(other, LaurentSeries):
            return other
        if isinstance(other, TruncatedSeries):
            return LaurentSeries(other.embed(self.body.variables, self.body.orders), 0, self.inv)
        if _is_scalar(other):
            return LaurentSeries(TruncatedSeries.constant(other, self.body.variables, self.body.orders), 0, self.inv)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, s = self._align(other)
        return LaurentSeries(a + b, s, self.inv)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(-self.body, self.shift, self.inv)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_scalar(other):
            return LaurentSeries(self.body * other, self.shift, self.inv)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return LaurentSeries(self.body * other.body, self.shift + other.shift, self.inv)

    __rmul__ = __mul__

    def inverse(self) -> "LaurentSeries":
        """Inverse; the leading coefficient must be a nonzero constant."""
        v = self.body.valuation(self.inv)
        if v is None:
            raise ZeroDivisionError("inverse of the zero Laurent series")
        body = self.body.shift(self.inv, -v)
        return LaurentSeries(inverse(body), -(self.shift - v), self.inv)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return LaurentSeries(self.body ** n, self.shift * n, self.inv)

    def __truediv__(self, other):
        if _is_scalar(other):
            return LaurentSeries(self.body / other, self.shift, self.inv)
        return self * self._coerce(other).inverse()

    def is_zero(self) -> bool:
        return self.body.is_zero()

    def terms(self) -> Dict[int, TruncatedSeries]:
        """Nonzero coefficients keyed by exponent of x."""
        i = self.body.index(self.inv)
        ks = sorted({e[i] for e in self.body._c})
        return {self.shift - j: self.body.part(self.inv, j) for j in ks}

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, _ = self._align(other)
        return a == b

    __hash__ = None

    def __repr__(self):
        return f"LaurentSeries({self.inv}=1/x, shift={self.shift}, body={self.body})"


def rational_power(f: TruncatedSeries, alpha) -> TruncatedSeries:
    """``f**alpha`` for a univariate ``f`` with constant term 1 and rational ``alpha``.

    Uses the recurrence ``n g_n = sum_{k=1}^n ((alpha+1)k - n) f_k g_(n-k)``
    obtained from ``f g' = alpha f' g``.
    """
    if f.nvars != 1:
        raise ValueError("rational_power works on univariate series")
    if f.constant_term() != 1:
        raise ValueError("rational_power needs constant term exactly 1")
    N = f.orders[0]
    if N is None:
        raise ValueError("rational_power needs a finite truncation order")
    alpha = Fraction(_norm(alpha))
    fc = [Fraction(f._c.get((k,), 0)) for k in range(N)]
    nz = [k for k in range(1, N) if fc[k]]
    g = [Fraction(1)] + [Fraction(0)] * (N - 1)
    for n in range(1, N):
        acc = Fraction(0)
        for k in nz:
            if k > n:
                break
            acc += ((alpha + 1) * k - n) * fc[k] * g[n - k]
        g[n] = acc / n
    return TruncatedSeries(f.variables, f.orders, {(k,): c for k, c in enumerate(g) if c})
