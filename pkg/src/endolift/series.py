"""Window-truncated series in two variables over the quadratic Witt scalars.

Terms are monomials x1^m1 * x2^m2 with m1 confined to a closed Laurent window
[lo1, hi1] (negative exponents allowed) and m2 to [0, cap2).  Coefficients
live modulo p^prec.  Products simply drop terms that leave the window, which
is the working model everywhere downstream: degrees of interest stay well
inside the box and the box is part of the declared context.

The Frobenius lift acts by the coefficient twist together with m -> p*m on
exponents on both variables.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterator, Optional, Tuple

from .errors import NotAUnit, WindowExhausted
from .witt import (
    WittScalar,
    is_odd_prime,
    nonresidue,
    pair_add,
    pair_div_exact,
    pair_inv,
    pair_mul,
    pair_neg,
    pair_scale,
    pair_sigma,
    pair_sub,
    pair_val,
)

__all__ = [
    "SeriesContext",
    "TruncSeries",
    "frobenius_lift",
    "f_series",
    "g_series",
    "series_invert",
]

Pair = Tuple[int, int]
Key = Tuple[int, int]


@dataclass(frozen=True)
class SeriesContext:
    """Shared truncation data: p-precision, x1 window, x2 cap (exclusive)."""

    p: int
    prec: int
    lo1: int
    hi1: int
    cap2: int

    def __post_init__(self):
        if not is_odd_prime(self.p):
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if self.prec < 0:
            raise ValueError("negative precision")
        if self.lo1 > 0 or self.hi1 < 0:
            raise ValueError("x1 window must contain 0")
        if self.cap2 < 1:
            raise ValueError("x2 cap must be at least 1")

    @property
    def mod(self) -> int:
        return self.p**self.prec

    @property
    def r(self) -> int:
        return nonresidue(self.p)

    def in_window(self, m1: int, m2: int) -> bool:
        return self.lo1 <= m1 <= self.hi1 and 0 <= m2 < self.cap2

    def scalar(self, n: int = 0, w: int = 0) -> WittScalar:
        return WittScalar(self.p, self.prec, n, w)

    def weakened(self, *, prec=None, lo1=None, hi1=None, cap2=None) -> "SeriesContext":
        """A context with some truncation data replaced (used for reductions)."""
        return SeriesContext(
            self.p,
            self.prec if prec is None else prec,
            self.lo1 if lo1 is None else lo1,
            self.hi1 if hi1 is None else hi1,
            self.cap2 if cap2 is None else cap2,
        )


class TruncSeries:
    """A finitely supported map {(m1, m2): coefficient} inside a context box."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: SeriesContext, coeffs: Optional[Dict[Key, Pair]] = None, *, _clean: bool = False):
        self.ctx = ctx
        if coeffs is None:
            self.coeffs = {}
        elif _clean:
            self.coeffs = coeffs
        else:
            mod = ctx.mod
            clean: Dict[Key, Pair] = {}
            for (m1, m2), pair in coeffs.items():
                if not ctx.in_window(m1, m2):
                    continue
                a = pair[0] % mod
                b = pair[1] % mod
                if a or b:
                    clean[(m1, m2)] = (a, b)
            self.coeffs = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, ctx: SeriesContext) -> "TruncSeries":
        return cls(ctx, {}, _clean=True)

    @classmethod
    def one(cls, ctx: SeriesContext) -> "TruncSeries":
        return cls(ctx, {(0, 0): (1, 0)})

    @classmethod
    def constant(cls, ctx: SeriesContext, value) -> "TruncSeries":
        """Constant series from a WittScalar, an (a, b) pair, or an int."""
        if isinstance(value, WittScalar):
            pair = (value.a, value.b)
        elif isinstance(value, tuple):
            pair = value
        else:
            pair = (int(value), 0)
        return cls(ctx, {(0, 0): pair})

    @classmethod
    def variable(cls, ctx: SeriesContext, name: str, exponent: int = 1) -> "TruncSeries":
        if name == "x1":
            key = (exponent, 0)
        elif name == "x2":
            key = (0, exponent)
        else:
            raise ValueError(f"unknown variable {name!r}")
        return cls(ctx, {key: (1, 0)})

    @classmethod
    def monomial(cls, ctx: SeriesContext, m1: int, m2: int, pair: Pair = (1, 0)) -> "TruncSeries":
        return cls(ctx, {(m1, m2): pair})

    # -- basic views --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def support(self):
        return sorted(self.coeffs)

    def coefficient(self, m1: int, m2: int) -> WittScalar:
        a, b = self.coeffs.get((m1, m2), (0, 0))
        return WittScalar(self.ctx.p, self.ctx.prec, a, b)

    def items(self) -> Iterator[Tuple[Key, WittScalar]]:
        for key in self.support():
            yield key, self.coefficient(*key)

    def min_x2_degree(self) -> Optional[int]:
        if not self.coeffs:
            return None
        return min(m2 for (_, m2) in self.coeffs)

    def p_valuation(self) -> int:
        """min over coefficients of the p-valuation; prec for the zero series."""
        ctx = self.ctx
        if not self.coeffs:
            return ctx.prec
        return min(pair_val(pair, ctx.p, ctx.prec) for pair in self.coeffs.values())

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.ctx == other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ctx, tuple(sorted(self.coeffs.items()))))

    def __repr__(self):
        terms = []
        for (m1, m2), (a, b) in sorted(self.coeffs.items())[:6]:
            if b == 0:
                c = str(a)
            elif a == 0:
                c = f"{b}w"
            else:
                c = f"({a}+{b}w)"
            mono = ""
            if m1:
                mono += f"*x1^{m1}"
            if m2:
                mono += f"*x2^{m2}"
            terms.append(c + mono)
        if len(self.coeffs) > 6:
            terms.append(f"... ({len(self.coeffs)} terms)")
        return "TruncSeries(" + (" + ".join(terms) if terms else "0") + ")"

    def dump(self) -> str:
        """Full sorted term list, one term per line (stable; used by --dump)."""
        lines = []
        for (m1, m2), (a, b) in sorted(self.coeffs.items()):
            lines.append(f"x1^{m1} x2^{m2}: {a} + {b}w")
        return "\n".join(lines) if lines else "0"

    def _check(self, other: "TruncSeries"):
        if self.ctx != other.ctx:
            raise ValueError(f"mixed contexts: {self.ctx} vs {other.ctx}")

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, WittScalar)):
            other = TruncSeries.constant(self.ctx, other)
        if not isinstance(other, TruncSeries):
            return NotImplemented
        self._check(other)
        mod = self.ctx.mod
        out = dict(self.coeffs)
        for key, pair in other.coeffs.items():
            if key in out:
                s = pair_add(out[key], pair, mod)
                if s == (0, 0):
                    del out[key]
                else:
                    out[key] = s
            else:
                out[key] = pair
        return TruncSeries(self.ctx, out, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        mod = self.ctx.mod
        return TruncSeries(
            self.ctx,
            {k: pair_neg(v, mod) for k, v in self.coeffs.items()},
            _clean=True,
        )

    def __sub__(self, other):
        if isinstance(other, (int, WittScalar)):
            other = TruncSeries.constant(self.ctx, other)
        if not isinstance(other, TruncSeries):
            return NotImplemented
        self._check(other)
        mod = self.ctx.mod
        out = dict(self.coeffs)
        for key, pair in other.coeffs.items():
            if key in out:
                s = pair_sub(out[key], pair, mod)
                if s == (0, 0):
                    del out[key]
                else:
                    out[key] = s
            else:
                out[key] = pair_neg(pair, mod)
        return TruncSeries(self.ctx, out, _clean=True)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        ctx = self.ctx
        if isinstance(other, int):
            mod = ctx.mod
            out = {}
            for k, v in self.coeffs.items():
                s = pair_scale(v, other, mod)
                if s != (0, 0):
                    out[k] = s
            return TruncSeries(ctx, out, _clean=True)
        if isinstance(other, WittScalar):
            return self.scale((other.a, other.b))
        if not isinstance(other, TruncSeries):
            return NotImplemented
        self._check(other)
        mod, r = ctx.mod, ctx.r
        lo1, hi1, cap2 = ctx.lo1, ctx.hi1, ctx.cap2
        acc: Dict[Key, Pair] = {}
        # iterate over the smaller support on the outside
        left, right = self.coeffs, other.coeffs
        if len(left) > len(right):
            left, right = right, left
        for (a1, a2), u in left.items():
            for (b1, b2), v in right.items():
                m2 = a2 + b2
                if m2 >= cap2:
                    continue
                m1 = a1 + b1
                if m1 < lo1 or m1 > hi1:
                    continue
                key = (m1, m2)
                w = pair_mul(u, v, r, mod)
                if key in acc:
                    acc[key] = pair_add(acc[key], w, mod)
                else:
                    acc[key] = w
        return TruncSeries(ctx, {k: v for k, v in acc.items() if v != (0, 0)}, _clean=True)

    __rmul__ = __mul__

    def scale(self, pair: Pair) -> "TruncSeries":
        ctx = self.ctx
        mod, r = ctx.mod, ctx.r
        out = {}
        for k, v in self.coeffs.items():
            s = pair_mul(v, pair, r, mod)
            if s != (0, 0):
                out[k] = s
        return TruncSeries(ctx, out, _clean=True)

    def mul_monomial(self, d1: int, d2: int) -> "TruncSeries":
        """Multiply by x1^d1 * x2^d2 (window-filtered)."""
        ctx = self.ctx
        out = {}
        for (m1, m2), v in self.coeffs.items():
            n1, n2 = m1 + d1, m2 + d2
            if ctx.in_window(n1, n2):
                out[(n1, n2)] = v
        return TruncSeries(ctx, out, _clean=True)

    def __pow__(self, n: int) -> "TruncSeries":
        if n < 0:
            raise ValueError("negative powers go through series_invert")
        out = TruncSeries.one(self.ctx)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- twists, substitutions, reductions ----------------------------------

    def frobenius(self) -> "TruncSeries":
        """Coefficient twist together with exponent dilation m -> p*m."""
        ctx = self.ctx
        p, mod = ctx.p, ctx.mod
        out = {}
        for (m1, m2), v in self.coeffs.items():
            n1, n2 = m1 * p, m2 * p
            if ctx.in_window(n1, n2):
                out[(n1, n2)] = pair_sigma(v, mod)
        return TruncSeries(ctx, out, _clean=True)

    def sigma_coefficients(self) -> "TruncSeries":
        """Coefficient twist alone, exponents untouched."""
        mod = self.ctx.mod
        return TruncSeries(
            self.ctx,
            {k: pair_sigma(v, mod) for k, v in self.coeffs.items()},
            _clean=True,
        )

    def substitute_x2_zero(self) -> "TruncSeries":
        return TruncSeries(
            self.ctx,
            {k: v for k, v in self.coeffs.items() if k[1] == 0},
            _clean=True,
        )

    def substitute_x1_zero(self) -> "TruncSeries":
        return TruncSeries(
            self.ctx,
            {k: v for k, v in self.coeffs.items() if k[0] == 0},
            _clean=True,
        )

    def substitute_x2_equals_x1(self) -> "TruncSeries":
        """Identify the two variables (merged exponent lands on x1)."""
        ctx = self.ctx
        mod = ctx.mod
        acc: Dict[Key, Pair] = {}
        for (m1, m2), v in self.coeffs.items():
            key = (m1 + m2, 0)
            if not ctx.in_window(*key):
                continue
            if key in acc:
                acc[key] = pair_add(acc[key], v, mod)
            else:
                acc[key] = v
        return TruncSeries(ctx, {k: v for k, v in acc.items() if v != (0, 0)}, _clean=True)

    def x2_slice(self, j: int) -> "TruncSeries":
        """The coefficient of x2^j, returned as an x2-free series."""
        return TruncSeries(
            self.ctx,
            {(m1, 0): v for (m1, m2), v in self.coeffs.items() if m2 == j},
            _clean=True,
        )

    def shift_x2(self, d: int) -> "TruncSeries":
        return self.mul_monomial(0, d)

    def with_context(self, new_ctx: SeriesContext) -> "TruncSeries":
        """Reduce into a weaker context (smaller precision and/or box)."""
        if new_ctx.p != self.ctx.p:
            raise ValueError("cannot change p")
        if new_ctx.prec > self.ctx.prec:
            raise ValueError("cannot raise precision by reduction")
        return TruncSeries(new_ctx, self.coeffs)

    # -- divisibility -------------------------------------------------------

    def divide_exact(self, q: int) -> "TruncSeries":
        """Exact termwise division of representatives by the integer q."""
        out = {}
        for k, v in self.coeffs.items():
            out[k] = pair_div_exact(v, q, self.ctx.mod)
        return TruncSeries(self.ctx, out, _clean=True)

    def divisible_by(self, q: int) -> bool:
        return all(v[0] % q == 0 and v[1] % q == 0 for v in self.coeffs.values())

    def reduce_mod_p(self) -> "TruncSeries":
        return self.with_context(self.ctx.weakened(prec=1))


def frobenius_lift(series: TruncSeries) -> TruncSeries:
    """Functional form of TruncSeries.frobenius."""
    return series.frobenius()


def _f_bound(ctx: SeriesContext, var: str) -> int:
    if var == "x1":
        return ctx.hi1
    if var == "x2":
        return ctx.cap2 - 1
    raise ValueError(f"unknown variable {var!r}")


def f_series(ctx: SeriesContext, var: str = "x1", power: int = 1) -> TruncSeries:
    """Sum of x^(power * p^(2i)) over i >= 0, truncated to the window.

    `power` composes with a monomial substitution x -> x^power, which is how
    the twisted argument x1^p enters the closed forms.
    """
    bound = _f_bound(ctx, var)
    coeffs: Dict[Key, Pair] = {}
    q = 1  # p^(2i)
    step = ctx.p * ctx.p
    while power * q <= bound:
        e = power * q
        key = (e, 0) if var == "x1" else (0, e)
        coeffs[key] = (1, 0)
        q *= step
    return TruncSeries(ctx, coeffs)


def g_series(ctx: SeriesContext, var: str = "x1", power: int = 1) -> TruncSeries:
    """The square companion of f: sum over i of x^(power*p^(2i)) times
    (2 * sum_{j<i} x^(power*p^(2j)) + x^(power*p^(2i))), window-truncated.

    Termwise this is exactly the in-window part of f^2.
    """
    bound = _f_bound(ctx, var)
    step = ctx.p * ctx.p
    powers = []
    q = 1
    # cross terms p^(2i) + 1 may fit even when 2*p^(2i) does not
    while power * (q + 1) <= bound:
        powers.append(q)
        q *= step
    coeffs: Dict[Key, Pair] = {}

    def put(e: int, c: int):
        if e <= bound:
            key = (e, 0) if var == "x1" else (0, e)
            prev = coeffs.get(key, (0, 0))
            coeffs[key] = (prev[0] + c, prev[1])

    for i, qi in enumerate(powers):
        put(power * 2 * qi, 1)
        for qj in powers[:i]:
            put(power * (qi + qj), 2)
    return TruncSeries(ctx, coeffs)


def series_invert(u: TruncSeries) -> TruncSeries:
    """Inverse of a unit series by leading-term normalization plus Newton.

    The leading unit must sit in the x2-free slice: we pick the least x1
    degree d there whose coefficient is a unit scalar c, seed with
    c^-1 * x1^-d, and iterate t <- t*(2 - u*t) until u*t is exactly 1.
    """
    ctx = u.ctx
    p = ctx.p
    lead = None
    for (m1, m2) in sorted(u.coeffs):
        if m2 != 0:
            continue
        pair = u.coeffs[(m1, m2)]
        if pair[0] % p or pair[1] % p:
            lead = (m1, pair)
            break
    if lead is None:
        if any(v[0] % p or v[1] % p for v in u.coeffs.values()):
            raise NotAUnit("unit part is divisible by x2; no inverse in this ring")
        raise NotAUnit("series is zero mod p")
    d, c = lead
    cinv = pair_inv(c, p, ctx.r, ctx.mod)
    t = TruncSeries.monomial(ctx, -d, 0, cinv)
    if not ctx.in_window(-d, 0):
        raise WindowExhausted(f"x1^{-d} needed for the seed lies outside the window")
    one = TruncSeries.one(ctx)
    span = ctx.hi1 - ctx.lo1
    max_iter = max(4, (span * (ctx.prec + 1) + ctx.prec + ctx.cap2).bit_length() + 2)
    for _ in range(max_iter):
        err = one - u * t
        if err.is_zero():
            return t
        t = t + t * err
    raise WindowExhausted(
        "inversion failed to stabilize; widen the x1 window and retry"
    )
