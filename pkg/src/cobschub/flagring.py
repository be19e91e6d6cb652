"""The cobordism ring of the complete flag variety of rank n.

The ring is presented as coefficient-ring polynomials in x_1..x_n modulo the
ideal of positive-degree symmetric polynomials.  The canonical normal form
keeps exponent vectors with x_j-exponent at most j-1: the presentation's
ideal is generated by the complete homogeneous relations h_j(x_j, .., x_n),
each oriented to eliminate x_j^j, and every monomial of degree above
d = n(n-1)/2 reduces to zero.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from cobschub.ringcore import (
    CoeffPoly,
    TruncSeries,
    UsageError,
    coeff_specialize,
    compose,
)
from cobschub.fgl import build_universal_fgl


@dataclass(frozen=True)
class Weight:
    """An integral weight sum(c_i e_i) of the rank-n torus."""

    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(self.coords))
        if any(not isinstance(c, int) for c in self.coords):
            raise UsageError("weight coordinates must be integers")

    @property
    def n(self) -> int:
        return len(self.coords)

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.coords))

    def __mul__(self, k: int) -> "Weight":
        return Weight(tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    def __str__(self):
        return "(" + ",".join(map(str, self.coords)) + ")"


def basis_weight(i: int, n: int) -> Weight:
    """e_i."""
    return Weight(tuple(1 if k == i else 0 for k in range(1, n + 1)))


def simple_root(i: int, n: int) -> Weight:
    """gamma_i = e_i - e_{i+1}."""
    if not 1 <= i <= n - 1:
        raise UsageError(f"simple root index {i} out of range for rank {n}")
    return basis_weight(i, n) - basis_weight(i + 1, n)


def fundamental_weight(i: int, n: int) -> Weight:
    """omega_i = e_1 + ... + e_i, the standard lift with (omega_i, gamma_j) = delta_ij."""
    if not 1 <= i <= n - 1:
        raise UsageError(f"fundamental weight index {i} out of range for rank {n}")
    return Weight(tuple(1 if k <= i else 0 for k in range(1, n + 1)))


def rho_weight(n: int) -> Weight:
    """The lift (n-1, n-2, ..., 0) of the half-sum of positive roots."""
    return Weight(tuple(range(n - 1, -1, -1)))


class FlagContext:
    """Everything attached to a fixed rank n: the truncated formal group
    law, the rewrite system, and operator caches.

    The law is built with two degrees of headroom above d = n(n-1)/2 because
    each divided-difference application performs two exact linear divisions,
    each of which consumes one degree of series precision; canonical
    elements themselves never exceed degree d.
    """

    def __init__(self, n: int):
        if n < 2:
            raise UsageError("rank must be at least 2")
        self.n = n
        self.d = n * (n - 1) // 2
        self.work_cap = self.d + 2
        self.vars = tuple(f"x{i}" for i in range(1, n + 1))
        self.fgl = build_universal_fgl(self.work_cap)
        self._rewrite = {j: self._rewrite_rule(j) for j in range(1, n + 1)}
        self._op_packs: dict[int, object] = {}
        self._c1_cache: dict[tuple[int, ...], "FlagElem"] = {}
        self._bs_cache: dict[tuple[int, ...], "FlagElem"] = {}
        self._chev_cache: dict = {}
        self._c1bs_cache: dict = {}
        self._basis_cache = None

    def _rewrite_rule(self, j: int) -> list[tuple[int, ...]]:
        # monomials of h_j(x_j, .., x_n) other than the eliminated x_j^j
        out = []
        for combo in itertools.combinations_with_replacement(
                range(j - 1, self.n), j):
            key = [0] * self.n
            for pos in combo:
                key[pos] += 1
            key = tuple(key)
            if key[j - 1] == j:
                continue
            out.append(key)
        return out

    def zero_series(self) -> TruncSeries:
        return TruncSeries.zero(self.vars, self.work_cap)

    def var_series(self, i: int) -> TruncSeries:
        if not 1 <= i <= self.n:
            raise UsageError(f"variable index {i} out of range")
        return TruncSeries.variable(self.vars, self.work_cap, f"x{i}")

    def series(self, terms) -> TruncSeries:
        return TruncSeries(self.vars, self.work_cap, terms)

    def one(self) -> "FlagElem":
        return FlagElem._raw(self, {(0,) * self.n: CoeffPoly.one()})

    def zero(self) -> "FlagElem":
        return FlagElem._raw(self, {})

    def x_elem(self, i: int) -> "FlagElem":
        """The class x_i = c_1(L_i) in canonical form."""
        return reduce_canonical(self, self.var_series(i))

    def compatible(self, other: "FlagContext") -> bool:
        return self is other or self.n == other.n

    def __repr__(self):
        return f"FlagContext(n={self.n})"


class FlagElem:
    """An element of the flag ring in canonical normal form.

    Immutable; the exponent vectors all satisfy the staircase bound and stay
    within total degree d, and no zero coefficients are stored.
    """

    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx: FlagContext, terms: Mapping[tuple[int, ...], object]):
        elem = reduce_canonical(ctx, dict(terms))
        self.ctx = ctx
        self.terms = elem.terms
        self._hash = None

    @classmethod
    def _raw(cls, ctx: FlagContext, terms: dict) -> "FlagElem":
        self = object.__new__(cls)
        self.ctx = ctx
        self.terms = terms
        self._hash = None
        return self

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, key) -> CoeffPoly:
        return self.terms.get(tuple(key), CoeffPoly.zero())

    def constant_term(self) -> CoeffPoly:
        """Coefficient of the basis monomial 1."""
        return self.terms.get((0,) * self.ctx.n, CoeffPoly.zero())

    def min_xdegree(self):
        return min((sum(k) for k in self.terms), default=None)

    def total_degrees(self) -> set[int]:
        out = set()
        for key, coeff in self.terms.items():
            x = sum(key)
            out.update(x + b for b in coeff.degrees())
        return out

    def as_series(self) -> TruncSeries:
        return TruncSeries._raw(self.ctx.vars, self.ctx.work_cap,
                                dict(self.terms))

    def specialize(self, assignment) -> "FlagElem":
        out = {}
        for key, coeff in self.terms.items():
            value = coeff_specialize(coeff, assignment)
            if value:
                out[key] = CoeffPoly.rational(value)
        return FlagElem._raw(self.ctx, out)

    def map_coefficients(self, func) -> "FlagElem":
        out = {}
        for key, coeff in self.terms.items():
            new = func(coeff)
            if new:
                out[key] = new
        return FlagElem._raw(self.ctx, out)

    def denominator_lcm(self) -> int:
        lcm = 1
        for coeff in self.terms.values():
            piece = coeff.denominator_lcm()
            g = _gcd(lcm, piece)
            lcm = lcm // g * piece
        return lcm

    # -- ring structure ------------------------------------------------------

    def _check(self, other: "FlagElem"):
        if not self.ctx.compatible(other.ctx):
            raise UsageError("elements live over different flag contexts")

    def __add__(self, other) -> "FlagElem":
        if not isinstance(other, FlagElem):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for key, value in other.terms.items():
            new = out.get(key)
            new = value if new is None else new + value
            if new:
                out[key] = new
            else:
                out.pop(key, None)
        return FlagElem._raw(self.ctx, out)

    def __neg__(self) -> "FlagElem":
        return FlagElem._raw(self.ctx, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other) -> "FlagElem":
        if not isinstance(other, FlagElem):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> "FlagElem":
        if isinstance(other, (CoeffPoly, int, Fraction)):
            coeff = CoeffPoly.coerce(other)
            out = {}
            for key, value in self.terms.items():
                new = value * coeff
                if new:
                    out[key] = new
            return FlagElem._raw(self.ctx, out)
        if not isinstance(other, FlagElem):
            return NotImplemented
        self._check(other)
        d = self.ctx.d
        raw: dict[tuple[int, ...], CoeffPoly] = {}
        for k1, v1 in self.terms.items():
            d1 = sum(k1)
            for k2, v2 in other.terms.items():
                if d1 + sum(k2) > d:
                    continue  # monomials above degree d lie in the ideal
                key = tuple(a + b for a, b in zip(k1, k2))
                prod = v1 * v2
                old = raw.get(key)
                new = prod if old is None else old + prod
                if new:
                    raw[key] = new
                else:
                    raw.pop(key, None)
        return reduce_canonical(self.ctx, raw)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "FlagElem":
        if not isinstance(exponent, int) or exponent < 0:
            raise UsageError("powers must be non-negative integers")
        result = self.ctx.one()
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, FlagElem):
            return NotImplemented
        return self.ctx.n == other.ctx.n and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ctx.n, frozenset(self.terms.items())))
        return self._hash

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms, key=lambda k: (sum(k), k)):
            coeff = self.terms[key]
            mono = "*".join(
                f"x{i + 1}^{e}" if e > 1 else f"x{i + 1}"
                for i, e in enumerate(key) if e)
            if not mono:
                parts.append(f"({coeff})")
            elif coeff == 1:
                parts.append(mono)
            else:
                parts.append(f"({coeff})*{mono}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"FlagElem(n={self.ctx.n}; {self})"


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def reduce_canonical(ctx: FlagContext, p) -> FlagElem:
    """Rewrite a raw polynomial to the canonical staircase form.

    Accepts a TruncSeries over the context variables or a raw mapping from
    exponent vectors to coefficients.  Monomials are processed from the
    lexicographically largest down (x_1 heaviest); every rewrite of x_j^j
    produces strictly smaller monomials of the same degree, so a single
    descending sweep terminates with each monomial's coefficient complete
    when it is popped.  Monomials of degree above d are dropped: they lie in
    the ideal.
    """
    if isinstance(p, TruncSeries):
        if p.vars != ctx.vars:
            raise UsageError("series variables do not match the context")
        raw = p.terms
    elif isinstance(p, FlagElem):
        return p
    else:
        raw = p
    pending: dict[tuple[int, ...], CoeffPoly] = {}
    heap: list[tuple[int, ...]] = []
    for key, value in raw.items():
        key = tuple(key)
        if len(key) != ctx.n:
            raise UsageError(f"exponent vector {key!r} has wrong length")
        coeff = CoeffPoly.coerce(value)
        if not coeff or sum(key) > ctx.d:
            continue
        if key in pending:
            pending[key] = pending[key] + coeff
        else:
            pending[key] = coeff
            heapq.heappush(heap, tuple(-e for e in key))
    done: dict[tuple[int, ...], CoeffPoly] = {}
    n = ctx.n
    while heap:
        key = tuple(-e for e in heapq.heappop(heap))
        coeff = pending.pop(key, None)
        if coeff is None or not coeff:
            continue
        violation = None
        for j in range(1, n + 1):
            if key[j - 1] >= j:
                violation = j
                break
        if violation is None:
            done[key] = coeff
            continue
        j = violation
        base = list(key)
        base[j - 1] -= j
        for repl in ctx._rewrite[j]:
            new_key = tuple(b + r for b, r in zip(base, repl))
            old = pending.get(new_key)
            if old is None:
                pending[new_key] = -coeff
                heapq.heappush(heap, tuple(-e for e in new_key))
            else:
                pending[new_key] = old - coeff
    return FlagElem._raw(ctx, done)


def flag_mul(a: FlagElem, b: FlagElem) -> FlagElem:
    """Product in the flag ring: polynomial product plus canonical reduction."""
    return a * b


def constant_term(a: FlagElem) -> CoeffPoly:
    """The coefficient of 1 in the canonical form.

    This agrees with the invariant definition through the product with the
    point class: a * [pt] = constant_term(a) * [pt].
    """
    return a.constant_term()


def point_class(ctx: FlagContext) -> FlagElem:
    """The class of a point, the monomial x_n^(n-1) x_(n-1)^(n-2) ... x_2."""
    key = tuple(range(ctx.n))
    return FlagElem._raw(ctx, {key: CoeffPoly.one()})


def delta_poly(ctx: FlagContext) -> TruncSeries:
    """The Vandermonde representative of the point class:
    (1/n!) * prod_{i > j} (x_i - x_j)."""
    total = TruncSeries.one(ctx.vars, ctx.work_cap)
    for i in range(2, ctx.n + 1):
        for j in range(1, i):
            total = total * (ctx.var_series(i) - ctx.var_series(j))
    factorial = 1
    for k in range(2, ctx.n + 1):
        factorial *= k
    return total * Fraction(1, factorial)


def c1_weight(ctx: FlagContext, lam: Weight) -> FlagElem:
    """First Chern class of the line bundle attached to a weight.

    L(lambda) for lambda = sum c_i e_i is the tensor product of the
    tautological quotient lines L_i = L(-e_i) with exponents -c_i, so its
    first Chern class is the formal sum over i of [-c_i](x_i).
    """
    if lam.n != ctx.n:
        raise UsageError("weight length does not match the context rank")
    cached = ctx._c1_cache.get(lam.coords)
    if cached is not None:
        return cached
    # the formal sum of the [-c_i](x_i) equals exp(sum -c_i log(x_i)); one
    # composition instead of a fold of F, with identical truncations
    log_sum = TruncSeries.zero(ctx.vars, ctx.work_cap)
    for i, c in enumerate(lam.coords, start=1):
        if c == 0:
            continue
        log_sum = log_sum + compose(ctx.fgl.log, [ctx.var_series(i)]) * (-c)
    total = compose(ctx.fgl.exp, [log_sum])
    result = reduce_canonical(ctx, total)
    ctx._c1_cache[lam.coords] = result
    return result
