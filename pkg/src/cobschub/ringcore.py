"""Exact coefficient arithmetic and truncated multivariate power series.

Coefficients live in the rationalized Lazard ring, presented as polynomials
in generators b1, b2, ... where b_i is the class of i-dimensional projective
space (graded degree -i).  Power series carry these coefficients and are
truncated at a fixed total degree in the series variables; every operation
is exact below the cap and silently discards terms above it.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence


class CobschubError(Exception):
    """Base class for all errors raised by this package."""


class UsageError(CobschubError):
    """A caller violated a documented precondition."""


class NotAUnitError(CobschubError):
    """Inversion was requested for a series whose constant term is not a
    nonzero rational."""


class DivisibilityError(CobschubError):
    """An exact linear division left a remainder.  This signals a sign or
    convention bug inside the engine, not bad input."""


class InternalError(CobschubError):
    """An internal consistency check failed."""


# A monomial in the generators b_i is a sorted tuple of (index, exponent)
# pairs with index >= 1 and exponent >= 1; () is the constant monomial.
BMonomial = tuple[tuple[int, int], ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise UsageError(f"expected an integer or Fraction, got {value!r}")


def _merge_bmonomials(left: BMonomial, right: BMonomial) -> BMonomial:
    if not left:
        return right
    if not right:
        return left
    merged: dict[int, int] = dict(left)
    for idx, exp in right:
        merged[idx] = merged.get(idx, 0) + exp
    return tuple(sorted(merged.items()))


def bmonomial_degree(key: BMonomial) -> int:
    """Graded degree of a b-monomial: prod b_i^{e_i} sits in degree -sum(i*e_i)."""
    return -sum(i * e for i, e in key)


class CoeffPoly:
    """A polynomial in b1, b2, ... with exact rational coefficients.

    Instances are immutable value objects; zero coefficients are never
    stored, so equality and hashing are structural.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[BMonomial, Fraction] | None = None):
        clean: dict[BMonomial, Fraction] = {}
        if terms:
            for key, value in terms.items():
                value = _as_fraction(value)
                if value == 0:
                    continue
                if any(i < 1 or e < 1 for i, e in key):
                    raise UsageError(f"malformed b-monomial {key!r}")
                clean[tuple(sorted(key))] = value
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[BMonomial, Fraction]) -> "CoeffPoly":
        # internal fast path: terms are already normalized
        self = object.__new__(cls)
        self.terms = terms
        self._hash = None
        return self

    @classmethod
    def zero(cls) -> "CoeffPoly":
        return cls._raw({})

    @classmethod
    def one(cls) -> "CoeffPoly":
        return cls._raw({(): _ONE})

    @classmethod
    def rational(cls, value) -> "CoeffPoly":
        value = _as_fraction(value)
        return cls._raw({(): value} if value else {})

    @classmethod
    def b(cls, index: int, exponent: int = 1) -> "CoeffPoly":
        """The generator b_index (optionally raised to a power)."""
        if index < 1 or exponent < 1:
            raise UsageError("b-generators need index >= 1 and exponent >= 1")
        return cls._raw({((index, exponent),): _ONE})

    @classmethod
    def coerce(cls, value) -> "CoeffPoly":
        if isinstance(value, CoeffPoly):
            return value
        return cls.rational(value)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def constant(self) -> Fraction:
        """The b-free part."""
        return self.terms.get((), _ZERO)

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise UsageError(f"{self} is not a rational constant")
        return self.constant()

    def degrees(self) -> set[int]:
        """Set of graded degrees of the monomials present (all <= 0)."""
        return {bmonomial_degree(key) for key in self.terms}

    def support_indices(self) -> set[int]:
        return {i for key in self.terms for i, _ in key}

    def denominator_lcm(self) -> int:
        """Least common multiple of all coefficient denominators (1 if empty).

        Used to record where the computation leaves the integral subring.
        """
        lcm = 1
        for value in self.terms.values():
            d = value.denominator
            g = _gcd(lcm, d)
            lcm = lcm // g * d
        return lcm

    def __add__(self, other) -> "CoeffPoly":
        other = CoeffPoly.coerce(other)
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for key, value in other.terms.items():
            new = out.get(key, _ZERO) + value
            if new:
                out[key] = new
            else:
                out.pop(key, None)
        return CoeffPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "CoeffPoly":
        return CoeffPoly._raw({k: -v for k, v in self.terms.items()})

    def __sub__(self, other) -> "CoeffPoly":
        return self + (-CoeffPoly.coerce(other))

    def __rsub__(self, other) -> "CoeffPoly":
        return CoeffPoly.coerce(other) + (-self)

    def __mul__(self, other) -> "CoeffPoly":
        if not isinstance(other, CoeffPoly):
            if isinstance(other, (int, Fraction)):
                value = _as_fraction(other)
                if not value:
                    return CoeffPoly.zero()
                return CoeffPoly._raw({k: v * value for k, v in self.terms.items()})
            return NotImplemented
        if not self.terms or not other.terms:
            return CoeffPoly.zero()
        out: dict[BMonomial, Fraction] = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                key = _merge_bmonomials(k1, k2)
                new = out.get(key, _ZERO) + v1 * v2
                if new:
                    out[key] = new
                else:
                    out.pop(key, None)
        return CoeffPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "CoeffPoly":
        if not isinstance(exponent, int) or exponent < 0:
            raise UsageError("CoeffPoly powers must be non-negative integers")
        result = CoeffPoly.one()
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, CoeffPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.constant() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def specialize(self, assignment: Mapping[int, Fraction]) -> Fraction:
        """Exact evaluation at b_i = assignment[i]; see coeff_specialize."""
        return coeff_specialize(self, assignment)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms):
            value = self.terms[key]
            mono = "*".join(
                f"b{i}" if e == 1 else f"b{i}^{e}" for i, e in key
            )
            if not mono:
                text = str(value)
            elif value == 1:
                text = mono
            elif value == -1:
                text = f"-{mono}"
            else:
                text = f"{value}*{mono}"
            parts.append(text)
        out = parts[0]
        for part in parts[1:]:
            out += f" - {part[1:]}" if part.startswith("-") else f" + {part}"
        return out

    def __repr__(self) -> str:
        return f"CoeffPoly({self})"


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def coeff_specialize(c: CoeffPoly, assignment: Mapping[int, Fraction]) -> Fraction:
    """Evaluate a coefficient polynomial at b_i = assignment[i].

    The assignment must cover every generator occurring in ``c``.  The Chow
    specialization sends every b_i to 0; the K-theory one sends b_i to
    beta**i for a chosen rational beta.
    """
    total = _ZERO
    for key, value in c.terms.items():
        factor = value
        for i, e in key:
            if i not in assignment:
                raise UsageError(f"no assignment for generator b{i}")
            factor *= _as_fraction(assignment[i]) ** e
        total += factor
    return total


def chow_assignment(c: CoeffPoly) -> dict[int, Fraction]:
    """Assignment sending every generator of ``c`` to zero."""
    return {i: _ZERO for i in c.support_indices()}


def ktheory_assignment(c: CoeffPoly, beta) -> dict[int, Fraction]:
    """Assignment sending b_i to beta**i for every generator of ``c``."""
    beta = _as_fraction(beta)
    return {i: beta**i for i in c.support_indices()}


# ---------------------------------------------------------------------------
# Truncated power series


XMonomial = tuple[int, ...]


class TruncSeries:
    """A multivariate power series truncated at a fixed total degree.

    ``terms`` maps exponent tuples (one entry per variable) to CoeffPoly
    coefficients.  Terms of total degree above ``cap`` are discarded on
    construction and in every arithmetic operation, so two series agree as
    objects exactly when they agree through degree ``cap``.
    """

    __slots__ = ("vars", "cap", "terms", "_hash")

    def __init__(self, vars: Sequence[str], cap: int,
                 terms: Mapping[XMonomial, object] | None = None):
        if cap < 0:
            raise UsageError("degree cap must be non-negative")
        self.vars = tuple(vars)
        self.cap = cap
        clean: dict[XMonomial, CoeffPoly] = {}
        if terms:
            nvars = len(self.vars)
            for key, value in terms.items():
                key = tuple(key)
                if len(key) != nvars or any(e < 0 for e in key):
                    raise UsageError(f"malformed exponent vector {key!r}")
                if sum(key) > cap:
                    continue
                coeff = CoeffPoly.coerce(value)
                if coeff:
                    clean[key] = coeff
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, vars: tuple[str, ...], cap: int,
             terms: dict[XMonomial, CoeffPoly]) -> "TruncSeries":
        self = object.__new__(cls)
        self.vars = vars
        self.cap = cap
        self.terms = terms
        self._hash = None
        return self

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, vars: Sequence[str], cap: int) -> "TruncSeries":
        return cls._raw(tuple(vars), cap, {})

    @classmethod
    def constant(cls, vars: Sequence[str], cap: int, value) -> "TruncSeries":
        coeff = CoeffPoly.coerce(value)
        vars = tuple(vars)
        if not coeff:
            return cls._raw(vars, cap, {})
        return cls._raw(vars, cap, {(0,) * len(vars): coeff})

    @classmethod
    def one(cls, vars: Sequence[str], cap: int) -> "TruncSeries":
        return cls.constant(vars, cap, 1)

    @classmethod
    def variable(cls, vars: Sequence[str], cap: int, name: str) -> "TruncSeries":
        vars = tuple(vars)
        if name not in vars:
            raise UsageError(f"unknown variable {name!r}")
        if cap < 1:
            return cls.zero(vars, cap)
        key = tuple(1 if v == name else 0 for v in vars)
        return cls._raw(vars, cap, {key: CoeffPoly.one()})

    @classmethod
    def monomial(cls, vars: Sequence[str], cap: int, key: XMonomial,
                 value=1) -> "TruncSeries":
        return cls(vars, cap, {tuple(key): value})

    # -- inspection --------------------------------------------------------

    def coefficient(self, key: XMonomial) -> CoeffPoly:
        return self.terms.get(tuple(key), CoeffPoly.zero())

    def constant_coeff(self) -> CoeffPoly:
        return self.terms.get((0,) * len(self.vars), CoeffPoly.zero())

    def is_zero(self) -> bool:
        return not self.terms

    def min_xdegree(self) -> int | None:
        if not self.terms:
            return None
        return min(sum(k) for k in self.terms)

    def homogeneous_component(self, degree: int) -> "TruncSeries":
        return TruncSeries._raw(
            self.vars, self.cap,
            {k: v for k, v in self.terms.items() if sum(k) == degree})

    def total_degrees(self) -> set[int]:
        """Degrees x-degree + coefficient-degree over all stored monomials."""
        out = set()
        for key, coeff in self.terms.items():
            x = sum(key)
            out.update(x + b for b in coeff.degrees())
        return out

    def truncate(self, cap: int) -> "TruncSeries":
        if cap >= self.cap:
            return TruncSeries._raw(self.vars, cap, dict(self.terms))
        return TruncSeries._raw(
            self.vars, cap,
            {k: v for k, v in self.terms.items() if sum(k) <= cap})

    # -- arithmetic --------------------------------------------------------

    def _check_compatible(self, other: "TruncSeries"):
        if self.vars != other.vars or self.cap != other.cap:
            raise UsageError(
                "series mismatch: "
                f"{self.vars}@{self.cap} vs {other.vars}@{other.cap}")

    def __add__(self, other) -> "TruncSeries":
        if not isinstance(other, TruncSeries):
            return NotImplemented
        self._check_compatible(other)
        out = dict(self.terms)
        for key, value in other.terms.items():
            new = out.get(key)
            new = value if new is None else new + value
            if new:
                out[key] = new
            else:
                out.pop(key, None)
        return TruncSeries._raw(self.vars, self.cap, out)

    def __neg__(self) -> "TruncSeries":
        return TruncSeries._raw(self.vars, self.cap,
                                {k: -v for k, v in self.terms.items()})

    def __sub__(self, other) -> "TruncSeries":
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> "TruncSeries":
        if isinstance(other, (CoeffPoly, int, Fraction)):
            coeff = CoeffPoly.coerce(other)
            if not coeff:
                return TruncSeries._raw(self.vars, self.cap, {})
            out = {}
            for key, value in self.terms.items():
                new = value * coeff
                if new:
                    out[key] = new
            return TruncSeries._raw(self.vars, self.cap, out)
        if not isinstance(other, TruncSeries):
            return NotImplemented
        self._check_compatible(other)
        cap = self.cap
        out: dict[XMonomial, CoeffPoly] = {}
        right = [(key, sum(key), value) for key, value in other.terms.items()]
        for k1, v1 in self.terms.items():
            d1 = sum(k1)
            for k2, d2, v2 in right:
                if d1 + d2 > cap:
                    continue
                key = tuple(a + b for a, b in zip(k1, k2))
                prod = v1 * v2
                new = out.get(key)
                new = prod if new is None else new + prod
                if new:
                    out[key] = new
                else:
                    out.pop(key, None)
        return TruncSeries._raw(self.vars, self.cap, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "TruncSeries":
        if not isinstance(exponent, int) or exponent < 0:
            raise UsageError("series powers must be non-negative integers")
        result = TruncSeries.one(self.vars, self.cap)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (self.vars == other.vars and self.cap == other.cap
                and self.terms == other.terms)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.vars, self.cap,
                               frozenset(self.terms.items())))
        return self._hash

    # -- variable plumbing --------------------------------------------------

    def permute_vars(self, images: Sequence[int]) -> "TruncSeries":
        """Relabel variables: position i goes to position images[i]."""
        out: dict[XMonomial, CoeffPoly] = {}
        for key, value in self.terms.items():
            new = [0] * len(key)
            for pos, e in enumerate(key):
                new[images[pos]] = e
            out[tuple(new)] = value
        return TruncSeries._raw(self.vars, self.cap, out)

    def swap_vars(self, i: int, j: int) -> "TruncSeries":
        """Exchange the variables at positions i and j."""
        images = list(range(len(self.vars)))
        images[i], images[j] = images[j], images[i]
        return self.permute_vars(images)

    def specialize(self, assignment: Mapping[int, Fraction]) -> "TruncSeries":
        """Apply a b-generator assignment to every coefficient."""
        out = {}
        for key, value in self.terms.items():
            spec = coeff_specialize(value, assignment)
            if spec:
                out[key] = CoeffPoly.rational(spec)
        return TruncSeries._raw(self.vars, self.cap, out)

    def map_coefficients(self, func) -> "TruncSeries":
        out = {}
        for key, value in self.terms.items():
            new = func(value)
            if new:
                out[key] = new
        return TruncSeries._raw(self.vars, self.cap, out)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms, key=lambda k: (sum(k), k)):
            coeff = self.terms[key]
            mono = "*".join(
                f"{v}^{e}" if e > 1 else v
                for v, e in zip(self.vars, key) if e)
            if not mono:
                parts.append(f"({coeff})")
            elif coeff == 1:
                parts.append(mono)
            else:
                parts.append(f"({coeff})*{mono}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"TruncSeries[{','.join(self.vars)}; cap={self.cap}]({self})"


# ---------------------------------------------------------------------------
# Series-level operations


def series_arith(a: TruncSeries, b: TruncSeries, op: str) -> TruncSeries:
    """Exact truncated ring arithmetic: op is one of add, sub, mul."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise UsageError(f"unknown operation {op!r}")


def series_invert_unit(s: TruncSeries) -> TruncSeries:
    """Multiplicative inverse of a series whose constant term is a nonzero
    rational; s * invert(s) = 1 through the degree cap.

    Solved degree by degree from the convolution identity, so the result is
    independent of how the geometric-series expansion would be organized.
    """
    c0 = s.constant_coeff()
    if not c0.is_rational() or c0.is_zero():
        raise NotAUnitError(f"constant term {c0} is not a nonzero rational")
    inv0 = CoeffPoly.rational(1 / c0.as_fraction())
    components: dict[int, dict[XMonomial, CoeffPoly]] = {}
    for key, value in s.terms.items():
        d = sum(key)
        if d == 0:
            continue
        components.setdefault(d, {})[key] = value
    higher = {d: TruncSeries._raw(s.vars, s.cap, t)
              for d, t in components.items()}
    result: dict[int, TruncSeries] = {
        0: TruncSeries.constant(s.vars, s.cap, inv0)}
    for m in range(1, s.cap + 1):
        acc = TruncSeries.zero(s.vars, s.cap)
        for j, comp in higher.items():
            if j <= m:
                acc = acc + comp * result[m - j]
        result[m] = acc * (-inv0)
    total = TruncSeries.zero(s.vars, s.cap)
    for part in result.values():
        total = total + part
    return total


def series_reverse(s: TruncSeries) -> TruncSeries:
    """Compositional inverse of a single-variable series t + O(t^2).

    Returns r with s(r(t)) = t through the degree cap.
    """
    if len(s.vars) != 1:
        raise UsageError("series_reverse needs a single-variable series")
    if not s.constant_coeff().is_zero():
        raise UsageError("series_reverse needs a zero constant term")
    if s.coefficient((1,)) != CoeffPoly.one():
        raise UsageError("series_reverse needs linear coefficient 1")
    cap = s.cap
    rev_terms: dict[XMonomial, CoeffPoly] = {(1,): CoeffPoly.one()}
    for m in range(2, cap + 1):
        candidate = TruncSeries._raw(s.vars, cap, dict(rev_terms))
        trial = compose(s, [candidate])
        defect = trial.coefficient((m,))
        if defect:
            # the linear coefficient of s is 1, so adjusting degree m of r
            # shifts degree m of the composite by exactly the same amount
            rev_terms[(m,)] = -defect
    return TruncSeries._raw(s.vars, cap, rev_terms)


def compose(outer: TruncSeries, args: Sequence[TruncSeries]) -> TruncSeries:
    """Substitute args[i] for the i-th variable of ``outer``.

    Every argument must share a variable list and cap and have zero constant
    term (otherwise the truncation of ``outer`` would not determine the
    result).
    """
    if len(args) != len(outer.vars):
        raise UsageError("compose needs one argument per outer variable")
    if not args:
        raise UsageError("compose needs at least one variable")
    vars = args[0].vars
    cap = args[0].cap
    for arg in args:
        if arg.vars != vars or arg.cap != cap:
            raise UsageError("compose arguments must share variables and cap")
        if not arg.constant_coeff().is_zero():
            raise UsageError("compose arguments must have zero constant term")
    powers: list[dict[int, TruncSeries]] = [
        {0: TruncSeries.one(vars, cap), 1: arg} for arg in args]

    def power(i: int, e: int) -> TruncSeries:
        cache = powers[i]
        if e not in cache:
            cache[e] = power(i, e - 1) * cache[1]
        return cache[e]

    total = TruncSeries.zero(vars, cap)
    for key, coeff in outer.terms.items():
        factor = TruncSeries.constant(vars, cap, coeff)
        for i, e in enumerate(key):
            if e:
                factor = factor * power(i, e)
        total = total + factor
    return total


def _linear_form_parts(factor: TruncSeries):
    """Decompose a rational degree-1 form as c_p * (x_p - L).

    Returns (pivot position, pivot coefficient, L) where L is a linear
    series not involving the pivot variable.
    """
    if not factor.terms:
        raise UsageError("linear factor must be nonzero")
    coeffs: dict[int, Fraction] = {}
    for key, value in factor.terms.items():
        if sum(key) != 1:
            raise UsageError("linear factor must be homogeneous of degree 1")
        if not value.is_rational():
            raise UsageError("linear factor must have rational coefficients")
        coeffs[key.index(1)] = value.as_fraction()
    pivot = min(coeffs)
    c_p = coeffs[pivot]
    rest = {}
    for pos, value in coeffs.items():
        if pos == pivot:
            continue
        key = tuple(1 if i == pos else 0 for i in range(len(factor.vars)))
        rest[key] = CoeffPoly.rational(-value / c_p)
    return pivot, c_p, TruncSeries._raw(factor.vars, factor.cap, rest)


def divide_by_linear(num: TruncSeries, factor: TruncSeries) -> TruncSeries:
    """Exact division of ``num`` by a rational degree-1 form.

    Splits num = factor * q + r with r = num evaluated at the pivot variable
    replaced by the rest of the form; a nonzero remainder raises
    DivisibilityError.  The quotient is exact in every degree the numerator
    determines (one degree fewer than the cap).
    """
    if num.vars != factor.vars or num.cap != factor.cap:
        raise UsageError("numerator and factor must share variables and cap")
    pivot, c_p, rest = _linear_form_parts(factor)
    vars, cap = num.vars, num.cap
    quotient = TruncSeries.zero(vars, cap)
    remainder = TruncSeries.zero(vars, cap)
    rest_powers: dict[int, TruncSeries] = {0: TruncSeries.one(vars, cap), 1: rest}

    def rest_power(e: int) -> TruncSeries:
        if e not in rest_powers:
            rest_powers[e] = rest_power(e - 1) * rest
        return rest_powers[e]

    for key, coeff in num.terms.items():
        a = key[pivot]
        stripped = list(key)
        stripped[pivot] = 0
        base = TruncSeries.monomial(vars, cap, tuple(stripped), coeff)
        if a == 0:
            remainder = remainder + base
            continue
        # x^a - L^a = (x - L) * sum_t x^t L^(a-1-t); the L^a piece joins the
        # remainder, which must vanish in total
        remainder = remainder + base * rest_power(a)
        for t in range(a):
            shifted = [0] * len(vars)
            shifted[pivot] = t
            mono = TruncSeries.monomial(vars, cap, tuple(shifted), 1)
            quotient = quotient + base * mono * rest_power(a - 1 - t)
    if not remainder.is_zero():
        raise DivisibilityError(
            f"division by {factor} leaves remainder {remainder}")
    return quotient * CoeffPoly.rational(Fraction(1) / c_p)


def series_exact_divide(num: TruncSeries, den: TruncSeries,
                        linear_factor: TruncSeries) -> TruncSeries:
    """Divide ``num`` by ``den`` where den = linear_factor * unit.

    Both divisions are exact: the linear one raises DivisibilityError on a
    nonzero remainder, and the unit cofactor is inverted as a series.  The
    result q satisfies q * den = num through the degree cap.
    """
    if num.vars != den.vars or num.cap != den.cap:
        raise UsageError("numerator and denominator must share variables and cap")
    unit = divide_by_linear(den, linear_factor)
    quotient = divide_by_linear(num, linear_factor)
    return quotient * series_invert_unit(unit)
