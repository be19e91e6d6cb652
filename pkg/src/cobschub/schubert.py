"""Bott-Samelson classes, Chevalley coefficients, and product expansion.

A word of simple-root indices names the class obtained by folding the
divided-difference operators over the point class, first letter innermost.
The product of a first Chern class with such a class expands over subwords
with coefficients read off an operator string of dual divided differences
and swaps; multiplying one Chern-class factor at a time decomposes any
product of two classes into the subword classes of the right factor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from cobschub.ringcore import CoeffPoly, InternalError, UsageError
from cobschub.flagring import (
    FlagContext,
    FlagElem,
    Weight,
    basis_weight,
    c1_weight,
    point_class,
)
from cobschub.weylops import (
    Permutation,
    Word,
    all_permutations,
    beta_sequence,
    coroot_pairing,
    divided_diff,
    divided_diff_dual,
    reduced_word,
    sigma_op,
    validate_word,
)


@dataclass
class BSExpansion:
    """A finite combination sum c_K * Z_(subword K) over subwords of a word.

    Keys are tuples of kept positions (0-based, ascending) into ``word``;
    distinct position sets may carry the same letter sequence, in which case
    they name the same class and ``by_word`` merges them.
    """

    word: Word
    terms: dict[tuple[int, ...], CoeffPoly] = field(default_factory=dict)

    def subword(self, kept: tuple[int, ...]) -> Word:
        return tuple(self.word[p] for p in kept)

    def is_zero(self) -> bool:
        return not self.terms

    def by_word(self) -> dict[Word, CoeffPoly]:
        out: dict[Word, CoeffPoly] = {}
        for kept, coeff in self.terms.items():
            key = self.subword(kept)
            total = out.get(key)
            total = coeff if total is None else total + coeff
            if total:
                out[key] = total
            else:
                out.pop(key, None)
        return out

    def evaluate(self, ctx: FlagContext) -> FlagElem:
        total = ctx.zero()
        for kept, coeff in self.terms.items():
            total = total + coeff * bs_class(ctx, self.subword(kept))
        return total

    def map_coefficients(self, func) -> "BSExpansion":
        out = {}
        for kept, coeff in self.terms.items():
            new = func(coeff)
            if new:
                out[kept] = new
        return BSExpansion(self.word, out)


def bs_class(ctx: FlagContext, word) -> FlagElem:
    """The Bott-Samelson class of a word: operators folded over the point
    class with the first letter acting first; the empty word is the point."""
    word = validate_word(word, ctx.n)
    cached = ctx._bs_cache.get(word)
    if cached is not None:
        return cached
    if not word:
        result = point_class(ctx)
    else:
        result = divided_diff(ctx, word[-1], bs_class(ctx, word[:-1]))
    ctx._bs_cache[word] = result
    return result


def chevalley_coeff(ctx: FlagContext, word, positions, lam: Weight) -> CoeffPoly:
    """Coefficient of Z_(word minus positions) in c1(L(lam)) * Z_word.

    Walking the positions from the last letter down to the smallest removed
    one: removed positions apply the dual divided difference for their
    letter, the others apply the swap; the coefficient is the constant term
    of the resulting class.  The empty removal set contributes zero.
    """
    word = validate_word(word, ctx.n)
    positions = tuple(sorted(set(positions)))
    if any(p < 0 or p >= len(word) for p in positions):
        raise UsageError(f"positions {positions!r} out of range for {word!r}")
    if not positions:
        return CoeffPoly.zero()
    key = (word, positions, lam.coords)
    cached = ctx._chev_cache.get(key)
    if cached is not None:
        return cached
    removed = set(positions)
    lowest = positions[0]
    current = c1_weight(ctx, lam)
    for pos in range(len(word) - 1, lowest - 1, -1):
        letter = word[pos]
        if pos in removed:
            current = divided_diff_dual(ctx, letter, current)
        else:
            current = sigma_op(ctx, letter, current)
    result = current.constant_term()
    ctx._chev_cache[key] = result
    return result


def c1_times_bs(ctx: FlagContext, lam: Weight, word) -> BSExpansion:
    """Expand c1(L(lam)) * Z_word over the subwords of ``word``."""
    word = validate_word(word, ctx.n)
    key = (lam.coords, word)
    cached = ctx._c1bs_cache.get(key)
    if cached is not None:
        return cached
    positions = range(len(word))
    terms: dict[tuple[int, ...], CoeffPoly] = {}
    for mask in range(1, 1 << len(word)):
        removed = tuple(p for p in positions if mask & (1 << p))
        coeff = chevalley_coeff(ctx, word, removed, lam)
        if coeff:
            kept = tuple(p for p in positions if not mask & (1 << p))
            terms[kept] = coeff
    result = BSExpansion(word, terms)
    ctx._c1bs_cache[key] = result
    return result


def poly_times_bs(ctx: FlagContext, f: FlagElem, word) -> BSExpansion:
    """Expand f * Z_word for any ring element f.

    Every canonical monomial of f is a product of the classes x_i, each of
    which is the first Chern class of a weight line; the factors multiply
    into the running expansion one at a time (ascending variable order), and
    the constant part of f scales Z_word directly.
    """
    word = validate_word(word, ctx.n)
    if not ctx.compatible(f.ctx):
        raise UsageError("element context does not match")
    full = tuple(range(len(word)))
    acc: dict[tuple[int, ...], CoeffPoly] = {}
    for exponents in sorted(f.terms):
        coeff = f.terms[exponents]
        running: dict[tuple[int, ...], CoeffPoly] = {full: coeff}
        for i, e in enumerate(exponents, start=1):
            lam = -basis_weight(i, ctx.n)  # x_i = c1(L(-e_i))
            for _ in range(e):
                stepped: dict[tuple[int, ...], CoeffPoly] = {}
                for kept, value in running.items():
                    sub = c1_times_bs(ctx, lam, tuple(word[p] for p in kept))
                    for sub_kept, sub_coeff in sub.terms.items():
                        abs_kept = tuple(kept[p] for p in sub_kept)
                        total = stepped.get(abs_kept)
                        piece = value * sub_coeff
                        total = piece if total is None else total + piece
                        if total:
                            stepped[abs_kept] = total
                        else:
                            stepped.pop(abs_kept, None)
                running = stepped
        for kept, value in running.items():
            total = acc.get(kept)
            total = value if total is None else total + value
            if total:
                acc[kept] = total
            else:
                acc.pop(kept, None)
    return BSExpansion(word, acc)


def product_bs(ctx: FlagContext, left, right) -> BSExpansion:
    """Decompose Z_left * Z_right over the subword classes of ``right``.

    The left factor is replaced by its polynomial and distributed across the
    right word; swapping the arguments yields a different but equally valid
    expansion of the same element.
    """
    left = validate_word(left, ctx.n)
    right = validate_word(right, ctx.n)
    return poly_times_bs(ctx, bs_class(ctx, left), right)


# ---------------------------------------------------------------------------
# Basis expansion


def _invert_exact(matrix: list[list[Fraction]]):
    """Gauss-Jordan inverse plus determinant over the rationals."""
    size = len(matrix)
    work = [list(map(Fraction, row)) + [Fraction(int(i == j))
                                        for j in range(size)]
            for i, row in enumerate(matrix)]
    det = Fraction(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if work[r][col]), None)
        if pivot is None:
            raise InternalError("leading transition matrix is singular")
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            det = -det
        det *= work[col][col]
        inv = Fraction(1) / work[col][col]
        work[col] = [v * inv for v in work[col]]
        for r in range(size):
            if r != col and work[r][col]:
                factor = work[r][col]
                work[r] = [v - factor * w for v, w in zip(work[r], work[col])]
    return [row[size:] for row in work], det


def _chow_leading(ctx: FlagContext, elem: FlagElem, xdeg: int) -> dict:
    out = {}
    for key, coeff in elem.terms.items():
        if sum(key) != xdeg:
            continue
        value = coeff.constant()  # degree-0 part of the coefficient
        if value:
            out[key] = value
    return out


def _basis_data(ctx: FlagContext):
    """Per-degree blocks for the basis of lexicographically smallest reduced
    words: member permutations, canonical monomials, and the inverse of the
    integer matrix of leading parts."""
    if ctx._basis_cache is not None:
        return ctx._basis_cache
    perms = sorted(all_permutations(ctx.n), key=lambda w: w.images)
    strata: dict[int, list[Permutation]] = {}
    for w in perms:
        xdeg = ctx.d - w.inversions()
        strata.setdefault(xdeg, []).append(w)

    def monomials(total):
        keys = []

        def rec(pos, remaining, prefix):
            if pos == ctx.n:
                if remaining == 0:
                    keys.append(tuple(prefix))
                return
            for e in range(min(pos, remaining) + 1):
                rec(pos + 1, remaining - e, prefix + [e])
        rec(0, total, [])
        return sorted(keys)

    blocks = {}
    for xdeg, members in sorted(strata.items()):
        monos = monomials(xdeg)
        if len(monos) != len(members):
            raise InternalError(
                f"stratum size mismatch at degree {xdeg}: "
                f"{len(monos)} monomials vs {len(members)} classes")
        index = {m: i for i, m in enumerate(monos)}
        matrix = [[Fraction(0)] * len(members) for _ in monos]
        for col, w in enumerate(members):
            cls = bs_class(ctx, reduced_word(w))
            leading = _chow_leading(ctx, cls, xdeg)
            for key, value in leading.items():
                matrix[index[key]][col] = value
        inverse, det = _invert_exact(matrix)
        blocks[xdeg] = (members, monos, inverse, det)
    ctx._basis_cache = blocks
    return blocks


def bs_basis_determinants(ctx: FlagContext) -> dict[int, Fraction]:
    """Determinants of the per-degree leading transition blocks; the basis
    property demands each to be a unit of the integers."""
    return {xdeg: det for xdeg, (_, _, _, det) in _basis_data(ctx).items()}


def expand_in_bs_basis(ctx: FlagContext, a: FlagElem) -> dict[Permutation, CoeffPoly]:
    """Write ``a`` over the basis classes of the chosen reduced words.

    Graded peeling: the lowest x-degree component of the residual is matched
    against the integer leading parts of the degree's basis classes, the
    full classes are subtracted, and the residual's minimum degree strictly
    climbs until nothing is left.
    """
    if not ctx.compatible(a.ctx):
        raise UsageError("element context does not match")
    blocks = _basis_data(ctx)
    out: dict[Permutation, CoeffPoly] = {}
    residual = a
    while not residual.is_zero():
        k = residual.min_xdegree()
        if k not in blocks:
            raise InternalError(f"residual stuck at degree {k}")
        members, monos, inverse, _ = blocks[k]
        vector = [residual.terms.get(m, CoeffPoly.zero()) for m in monos]
        subtract = ctx.zero()
        for col, w in enumerate(members):
            coeff = CoeffPoly.zero()
            for row, value in enumerate(vector):
                if value and inverse[col][row]:
                    coeff = coeff + value * inverse[col][row]
            if coeff:
                out[w] = out.get(w, CoeffPoly.zero()) + coeff
                subtract = subtract + coeff * bs_class(ctx, reduced_word(w))
        new_residual = residual - subtract
        new_min = new_residual.min_xdegree()
        if new_min is not None and new_min <= k:
            raise InternalError("graded peeling did not lower the residual")
        residual = new_residual
    return {w: c for w, c in out.items() if c}


def chow_schubert(ctx: FlagContext, w: Permutation) -> FlagElem:
    """The additive-theory specialization of the basis class of w: the
    classical Schubert polynomial in canonical form."""
    cls = bs_class(ctx, reduced_word(w))
    support = set()
    for coeff in cls.terms.values():
        support |= coeff.support_indices()
    return cls.specialize({i: Fraction(0) for i in support})


def pieri_exponents(ctx: FlagContext, word, lam: Weight):
    """Exponent table of the pullback of L(lam): one row per position with
    the word minus that position and the pairing (lam, beta_j)."""
    word = validate_word(word, ctx.n)
    betas = beta_sequence(word, ctx.n)
    out = []
    for j, beta in enumerate(betas):
        dropped = word[:j] + word[j + 1:]
        out.append((dropped, coroot_pairing(lam, beta)))
    return out
