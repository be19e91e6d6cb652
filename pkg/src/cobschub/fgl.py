"""The universal formal group law and the rank-two push-forward operator.

The law is built through the logarithm log(t) = t + sum b_i t^(i+1) / (i+1)
over the rationalized coefficient ring, which pins the standard coefficients
a_11 = -b1 and a_12 = a_21 = b1^2 - b2.  The inverse chi and the series q
with F(u, v) = u + v - u*v*q(u, v) come from exact compositional and linear
divisions, never from formal fraction manipulation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from cobschub.ringcore import (
    CoeffPoly,
    InternalError,
    TruncSeries,
    UsageError,
    compose,
    divide_by_linear,
    series_invert_unit,
    series_reverse,
)


class FGLData:
    """Container for the universal formal group law at a fixed degree cap.

    Immutable after construction.  ``F`` lives in variables (u, v), ``chi``
    in u, ``log`` and ``exp`` in t.  ``q`` is determined by
    F(u, v) = u + v - u*v*q(u, v); because it is produced by two exact
    single-variable divisions its stored terms are exact through
    degree_cap - 2.
    """

    __slots__ = ("degree_cap", "log", "exp", "F", "chi", "q")

    def __init__(self, degree_cap, log, exp, F, chi, q):
        self.degree_cap = degree_cap
        self.log = log
        self.exp = exp
        self.F = F
        self.chi = chi
        self.q = q

    def a(self, i: int, j: int) -> CoeffPoly:
        """Coefficient of u^i v^j in F."""
        return self.F.coefficient((i, j))

    def __repr__(self):
        return f"FGLData(degree_cap={self.degree_cap})"


def build_universal_fgl(D: int) -> FGLData:
    """Construct the universal formal group law truncated at total degree D.

    log(t) = t + sum_{i>=1} (b_i / (i+1)) t^(i+1), exp is its compositional
    inverse, F(u, v) = exp(log u + log v) and chi(u) = exp(-log u).
    """
    if D < 1:
        raise UsageError("the degree cap must be at least 1")
    log_terms = {(1,): CoeffPoly.one()}
    for i in range(1, D):
        log_terms[(i + 1,)] = CoeffPoly.b(i) * Fraction(1, i + 1)
    log = TruncSeries(("t",), D, log_terms)
    exp = series_reverse(log)

    pair = ("u", "v")
    u = TruncSeries.variable(pair, D, "u")
    v = TruncSeries.variable(pair, D, "v")
    log_u = compose(log, [u])
    log_v = compose(log, [v])
    F = compose(exp, [log_u + log_v])

    u1 = TruncSeries.variable(("u",), D, "u")
    chi = compose(exp, [-compose(log, [u1])])

    # u + v - F has every term divisible by u*v, so q is two exact
    # single-variable divisions away
    q = divide_by_linear(divide_by_linear(u + v - F, u), v)
    return FGLData(D, log, exp, F, chi, q)


@lru_cache(maxsize=None)
def n_series(fgl: FGLData, n: int) -> TruncSeries:
    """The n-fold formal sum [n](u): [0] = 0, [n+1] = F([n], u), [-n] = chi([n])."""
    u = TruncSeries.variable(("u",), fgl.degree_cap, "u")
    if n == 0:
        return TruncSeries.zero(("u",), fgl.degree_cap)
    if n < 0:
        return compose(fgl.chi, [n_series(fgl, -n)])
    if n == 1:
        return u
    return compose(fgl.F, [n_series(fgl, n - 1), u])


def formal_sum(fgl: FGLData, terms: Sequence[TruncSeries], *,
               vars=None, cap=None) -> TruncSeries:
    """Left fold of F over ``terms``; the formal sum of first Chern classes.

    The empty sum is zero, in which case the variable space must be supplied.
    """
    if not terms:
        if vars is None or cap is None:
            raise UsageError("empty formal sum needs explicit variables and cap")
        return TruncSeries.zero(vars, cap)
    acc = terms[0]
    for term in terms[1:]:
        acc = compose(fgl.F, [acc, term])
    return acc


@lru_cache(maxsize=None)
def _pair_pack(fgl: FGLData, vars: tuple[str, str]):
    """Cached data for the divided difference in a two-variable space.

    x_loc = F(y1, chi(y2)) factors as (y1 - y2) * U with U a unit; the swap
    of x_loc equals chi(x_loc), which is asserted here because the whole
    antisymmetrization route rests on it.
    """
    cap = fgl.degree_cap
    y1 = TruncSeries.variable(vars, cap, vars[0])
    y2 = TruncSeries.variable(vars, cap, vars[1])
    x_loc = compose(fgl.F, [y1, compose(fgl.chi, [y2])])
    factor = y1 - y2
    unit = divide_by_linear(x_loc, factor)
    if unit.constant_coeff() != CoeffPoly.one():
        raise InternalError("x_loc / (y1 - y2) is not a unit with constant 1")
    swapped = x_loc.swap_vars(0, 1)
    if swapped != compose(fgl.chi, [x_loc]):
        raise InternalError("swap(x_loc) != chi(x_loc); inverse law violated")
    return x_loc, factor, unit, series_invert_unit(unit)


def universal_divided_diff(fgl: FGLData, f: TruncSeries) -> TruncSeries:
    """The operator (1 + swap) (f / F(y1, chi(y2))) on two-variable series.

    Computed as the antisymmetrized quotient (h - swap h) / (y1 - y2) with
    h = f / U, where F(y1, chi(y2)) = (y1 - y2) * U.  The result is
    symmetric.  Terms in the top two degrees below the cap depend on
    discarded terms of f, so build the law with headroom when they matter.
    """
    if len(f.vars) != 2:
        raise UsageError("universal_divided_diff needs a two-variable series")
    if f.cap != fgl.degree_cap:
        raise UsageError("series cap must match the formal group law cap")
    _, factor, _, unit_inv = _pair_pack(fgl, f.vars)
    h = f * unit_inv
    return divide_by_linear(h - h.swap_vars(0, 1), factor)


def to_chern_basis(s: TruncSeries) -> dict[tuple[int, int], CoeffPoly]:
    """Rewrite a symmetric two-variable series in e1 = y1 + y2, e2 = y1*y2.

    Returns a mapping (a, b) -> coefficient for e1^a * e2^b.  Raises
    InternalError if the input is not symmetric.
    """
    if len(s.vars) != 2:
        raise UsageError("to_chern_basis needs a two-variable series")
    vars, cap = s.vars, s.cap
    e1 = (TruncSeries.variable(vars, cap, vars[0])
          + TruncSeries.variable(vars, cap, vars[1]))
    e2 = (TruncSeries.variable(vars, cap, vars[0])
          * TruncSeries.variable(vars, cap, vars[1]))
    powers: dict[tuple[int, int], TruncSeries] = {}

    def e_power(a: int, b: int) -> TruncSeries:
        if (a, b) not in powers:
            powers[(a, b)] = e1**a * e2**b
        return powers[(a, b)]

    residue = s
    table: dict[tuple[int, int], CoeffPoly] = {}
    while not residue.is_zero():
        key = max(residue.terms)  # lex-largest monomial
        a, b = key
        if a < b:
            raise InternalError(f"series is not symmetric near {key}")
        coeff = residue.terms[key]
        table[(a - b, b)] = coeff
        residue = residue - e_power(a - b, b) * coeff
    return table


@dataclass
class PushforwardInput:
    """Input for the projective-line push-forward.

    ``f_coeffs`` are the coefficients of the tautological class xi in the
    fiberwise polynomial being pushed forward (index k for xi^k); the
    projective bundle relation keeps the interesting case at degree < 2 but
    higher powers are accepted.  ``c1`` and ``c2`` are the Chern classes of
    the rank-two bundle in whatever host ring the caller works in; host
    elements must support +, *, integer powers, and left-multiplication by
    CoeffPoly.
    """

    f_coeffs: tuple
    c1: object
    c2: object


def pushforward_table(fgl: FGLData,
                      f_coeffs: Sequence) -> dict[tuple[int, int], CoeffPoly]:
    """A(f(y1)) decomposed on monomials in the elementary symmetric classes.

    Only the degrees the truncated law determines are returned, i.e. the
    table covers Chern monomials of total weight up to degree_cap - 2.
    """
    vars = ("y1", "y2")
    cap = fgl.degree_cap
    y1 = TruncSeries.variable(vars, cap, "y1")
    f_series = TruncSeries.zero(vars, cap)
    for k, coeff in enumerate(f_coeffs):
        f_series = f_series + y1**k * CoeffPoly.coerce(coeff)
    pushed = universal_divided_diff(fgl, f_series)
    return to_chern_basis(pushed.truncate(max(cap - 2, 0)))


def pushforward_p1(fgl: FGLData, input: PushforwardInput):
    """Push a fiberwise class down a projective-line bundle.

    Computes the divided difference of f(y1), rewrites the symmetric result
    in e1, e2, and substitutes the bundle's Chern classes.
    """
    table = pushforward_table(fgl, input.f_coeffs)
    total = None
    for (a, b), coeff in sorted(table.items()):
        piece = coeff * (input.c1**a * input.c2**b)
        total = piece if total is None else total + piece
    if total is None:
        total = CoeffPoly.zero() * (input.c1**0)
    return total
