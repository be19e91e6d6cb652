"""Type-A Weyl group combinatorics and the flag-ring operators.

Permutations act on weights by permuting coordinates; words are tuples of
simple-root indices with no reducedness restriction.  The divided-difference
operators are realized through the factorization
F(x_{i+1}, chi(x_i)) = (x_{i+1} - x_i) * U with U a unit, so every division
in sight is an exact linear division with a checked zero remainder.
"""

from __future__ import annotations

import itertools
from functools import reduce as _functools_reduce

from cobschub.ringcore import (
    CoeffPoly,
    InternalError,
    TruncSeries,
    UsageError,
    compose,
    divide_by_linear,
    series_invert_unit,
)
from cobschub.flagring import (
    FlagContext,
    FlagElem,
    Weight,
    reduce_canonical,
    simple_root,
)

Word = tuple[int, ...]


class Permutation:
    """A permutation of {1..n} in one-line notation (images of 1..n)."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise UsageError(f"{images!r} is not a permutation of 1..n")
        self.images = images

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def simple(cls, i: int, n: int) -> "Permutation":
        """The adjacent transposition (i, i+1)."""
        if not 1 <= i <= n - 1:
            raise UsageError(f"simple reflection index {i} out of range")
        images = list(range(1, n + 1))
        images[i - 1], images[i] = images[i], images[i - 1]
        return cls(images)

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, k: int) -> int:
        return self.images[k - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition: (w * v)(k) = w(v(k))."""
        if self.n != other.n:
            raise UsageError("permutation ranks differ")
        return Permutation(tuple(self.images[other.images[k] - 1]
                                 for k in range(self.n)))

    def inverse(self) -> "Permutation":
        out = [0] * self.n
        for k, image in enumerate(self.images, start=1):
            out[image - 1] = k
        return Permutation(out)

    def inversions(self) -> int:
        count = 0
        for a in range(self.n):
            for b in range(a + 1, self.n):
                if self.images[a] > self.images[b]:
                    count += 1
        return count

    def is_identity(self) -> bool:
        return all(self.images[k] == k + 1 for k in range(self.n))

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Permutation({list(self.images)})"


def all_permutations(n: int):
    for images in itertools.permutations(range(1, n + 1)):
        yield Permutation(images)


def weyl_act(w: Permutation, lam: Weight) -> Weight:
    """Permute weight coordinates: w sends e_i to e_{w(i)}."""
    if w.n != lam.n:
        raise UsageError("permutation and weight ranks differ")
    out = [0] * lam.n
    for i in range(1, lam.n + 1):
        out[w(i) - 1] = lam.coords[i - 1]
    return Weight(tuple(out))


def coroot_pairing(lam: Weight, alpha: Weight) -> int:
    """The integer (lam, alpha) with s_alpha lam = lam - (lam, alpha) alpha.

    Only roots e_i - e_j are accepted.
    """
    pos = [k for k, c in enumerate(alpha.coords) if c == 1]
    neg = [k for k, c in enumerate(alpha.coords) if c == -1]
    rest = [c for c in alpha.coords if c not in (0, 1, -1)]
    if len(pos) != 1 or len(neg) != 1 or rest:
        raise UsageError(f"{alpha} is not a root of the form e_i - e_j")
    if lam.n != alpha.n:
        raise UsageError("weight and root ranks differ")
    return lam.coords[pos[0]] - lam.coords[neg[0]]


def validate_word(word, n: int) -> Word:
    word = tuple(word)
    for letter in word:
        if not isinstance(letter, int) or not 1 <= letter <= n - 1:
            raise UsageError(
                f"word letter {letter!r} out of range 1..{n - 1}")
    return word


def word_permutation(word: Word, n: int) -> Permutation:
    """The product s_{a_1} s_{a_2} ... s_{a_l} of the word's reflections."""
    word = validate_word(word, n)
    return _functools_reduce(
        lambda acc, i: acc * Permutation.simple(i, n),
        word, Permutation.identity(n))


def is_reduced(word: Word, n: int) -> bool:
    """A word is reduced when its length equals the inversion count of the
    product permutation."""
    word = validate_word(word, n)
    return len(word) == word_permutation(word, n).inversions()


def reduced_word(w: Permutation) -> Word:
    """The lexicographically smallest reduced word for w.

    Greedy: the set of possible first letters is the left descent set, and
    taking the smallest descent first is lexicographically optimal.
    """
    word = []
    current = w
    inv = current.inverse()
    while True:
        descent = None
        for i in range(1, w.n):
            if inv(i) > inv(i + 1):
                descent = i
                break
        if descent is None:
            return tuple(word)
        word.append(descent)
        current = Permutation.simple(descent, w.n) * current
        inv = current.inverse()


def beta_sequence(word: Word, n: int) -> list[Weight]:
    """The roots beta_j = s_{a_l} ... s_{a_{j+1}} (alpha_{a_j}), one per
    position of the word (the suffix reflections act innermost first)."""
    word = validate_word(word, n)
    out = []
    for j in range(len(word)):
        beta = simple_root(word[j], n)
        for p in range(j + 1, len(word)):
            beta = weyl_act(Permutation.simple(word[p], n), beta)
        out.append(beta)
    return out


# ---------------------------------------------------------------------------
# Operators on the flag ring


class _OperatorPack:
    __slots__ = ("factor", "unit", "unit_inv")

    def __init__(self, factor, unit, unit_inv):
        self.factor = factor
        self.unit = unit
        self.unit_inv = unit_inv


def _op_pack(ctx: FlagContext, i: int) -> _OperatorPack:
    if not 1 <= i <= ctx.n - 1:
        raise UsageError(f"operator index {i} out of range 1..{ctx.n - 1}")
    pack = ctx._op_packs.get(i)
    if pack is not None:
        return pack
    x_i = ctx.var_series(i)
    x_next = ctx.var_series(i + 1)
    x_loc = compose(ctx.fgl.F, [x_next, compose(ctx.fgl.chi, [x_i])])
    factor = x_next - x_i
    unit = divide_by_linear(x_loc, factor)
    if unit.constant_coeff() != CoeffPoly.one():
        raise InternalError(
            f"F(x_{i + 1}, chi(x_{i})) does not factor with unit cofactor")
    # the antisymmetrization route rests on swap(x_loc) = chi(x_loc)
    if x_loc.swap_vars(i - 1, i) != compose(ctx.fgl.chi, [x_loc]):
        raise InternalError("swap of the localized class is not its inverse")
    pack = _OperatorPack(factor, unit, series_invert_unit(unit))
    ctx._op_packs[i] = pack
    return pack


def sigma_op(ctx: FlagContext, i: int, a: FlagElem) -> FlagElem:
    """Exchange x_i and x_{i+1} on any representative, then renormalize.

    Well defined on the quotient because the swap preserves the symmetric
    ideal.
    """
    if not 1 <= i <= ctx.n - 1:
        raise UsageError(f"operator index {i} out of range 1..{ctx.n - 1}")
    return reduce_canonical(ctx, a.as_series().swap_vars(i - 1, i))


def divided_diff(ctx: FlagContext, i: int, a: FlagElem) -> FlagElem:
    """The degree-lowering operator (1 + sigma_i) (1 / F(x_{i+1}, chi(x_i))).

    Computed as the antisymmetrized quotient (h - sigma_i h) / (x_{i+1} - x_i)
    with h = a / U where F(x_{i+1}, chi(x_i)) = (x_{i+1} - x_i) * U.  The
    realization is representative-independent because the operator is linear
    over symmetric elements.
    """
    pack = _op_pack(ctx, i)
    h = a.as_series() * pack.unit_inv
    anti = h - h.swap_vars(i - 1, i)
    return reduce_canonical(ctx, divide_by_linear(anti, pack.factor))


def divided_diff_dual(ctx: FlagContext, i: int, a: FlagElem) -> FlagElem:
    """The companion operator (1 / F(x_{i+1}, chi(x_i))) (1 - sigma_i).

    In the additive specialization it coincides with divided_diff; in general
    it differs and carries the Chevalley coefficients.
    """
    pack = _op_pack(ctx, i)
    s = a.as_series()
    anti = s - s.swap_vars(i - 1, i)
    quotient = divide_by_linear(anti, pack.factor)
    return reduce_canonical(ctx, quotient * pack.unit_inv)
