"""Command-line interface.

Subcommands: bsclass, product, chevalley, fgl, expand, pieri, selftest.
Exit codes: 0 success, 1 selftest failure, 2 usage error, 3 resource cap.
JSON output is deterministic: terms are sorted, rationals are emitted as
decimal num/den strings so arbitrary precision survives serialization.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from functools import lru_cache

from cobschub.ringcore import (
    CobschubError,
    CoeffPoly,
    UsageError,
    chow_assignment,
    ktheory_assignment,
)
from cobschub.fgl import build_universal_fgl
from cobschub.flagring import FlagContext, Weight, c1_weight
from cobschub.weylops import reduced_word, validate_word
from cobschub.schubert import (
    bs_class,
    c1_times_bs,
    expand_in_bs_basis,
    pieri_exponents,
    product_bs,
)
from cobschub.selftest import run_selftest

MAX_RANK = 6
MAX_FGL_DEGREE = 16


class ResourceCapError(CobschubError):
    """The request is beyond the configured size limits."""


@lru_cache(maxsize=4)
def _context(n: int) -> FlagContext:
    return FlagContext(n)


def _check_rank(n: int) -> int:
    if n < 2:
        raise UsageError("rank must be at least 2")
    if n > MAX_RANK:
        raise ResourceCapError(
            f"rank {n} exceeds the configured cap {MAX_RANK}")
    return n


def _parse_rational(text: str) -> Fraction:
    # used as an argparse type: ValueError turns into a usage error (exit 2)
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ValueError(f"bad rational {text!r}: zero denominator") from None


def _parse_word(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise UsageError(f"bad word {text!r}; expected comma-separated "
                         "integers") from None


def _parse_weight(text: str, n: int) -> Weight:
    try:
        coords = tuple(int(part) for part in text.strip().split(","))
    except ValueError:
        raise UsageError(f"bad weight {text!r}; expected comma-separated "
                         "integers") from None
    if len(coords) != n:
        raise UsageError(f"weight must have length {n}, got {len(coords)}")
    return Weight(coords)


def _specializer(theory: str, beta: Fraction):
    if theory == "cobordism":
        return lambda c: c
    if theory == "chow":
        return lambda c: CoeffPoly.rational(c.specialize(chow_assignment(c)))
    if theory == "ktheory":
        return lambda c: CoeffPoly.rational(
            c.specialize(ktheory_assignment(c, beta)))
    raise UsageError(f"unknown theory {theory!r}")


# ---------------------------------------------------------------------------
# Serialization


def coeff_to_json(c: CoeffPoly) -> list:
    out = []
    for key in sorted(c.terms):
        value = c.terms[key]
        out.append({
            "b": [[i, e] for i, e in key],
            "num": str(value.numerator),
            "den": str(value.denominator),
        })
    return out


def coeff_to_text(c: CoeffPoly) -> str:
    return str(c)


def elem_terms_to_json(elem, spec) -> list:
    out = []
    for key in sorted(elem.terms):
        coeff = spec(elem.terms[key])
        if not coeff:
            continue
        out.append({"x": list(key), "coeff": coeff_to_json(coeff)})
    return out


def elem_to_text(elem, spec, vars) -> str:
    parts = []
    for key in sorted(elem.terms, key=lambda k: (sum(k), k)):
        coeff = spec(elem.terms[key])
        if not coeff:
            continue
        mono = "*".join(f"{v}^{e}" if e > 1 else v
                        for v, e in zip(vars, key) if e)
        parts.append(f"({coeff})*{mono}" if mono else f"({coeff})")
    return " + ".join(parts) if parts else "0"


def expansion_to_rows(expansion, spec) -> list:
    rows = []
    for word in sorted(expansion.by_word(), key=lambda w: (len(w), w)):
        coeff = spec(expansion.by_word()[word])
        if not coeff:
            continue
        rows.append((word, coeff))
    return rows


def series_to_json(series, spec) -> dict:
    terms = []
    for key in sorted(series.terms):
        coeff = spec(series.terms[key])
        if not coeff:
            continue
        terms.append({"x": list(key), "coeff": coeff_to_json(coeff)})
    return {"vars": list(series.vars), "degree_cap": series.cap,
            "terms": terms}


def _emit_json(payload) -> None:
    print(json.dumps(payload, sort_keys=True, separators=(",", ":")))


# ---------------------------------------------------------------------------
# Commands


def cmd_bsclass(ns) -> int:
    n = _check_rank(ns.n)
    ctx = _context(n)
    word = validate_word(_parse_word(ns.word), n)
    spec = _specializer(ns.theory, ns.beta)
    cls = bs_class(ctx, word)
    if ns.format == "json":
        _emit_json({
            "command": "bsclass", "n": n, "word": list(word),
            "theory": ns.theory,
            "terms": elem_terms_to_json(cls, spec)})
    else:
        label = ",".join(map(str, word)) if word else "e"
        print(f"Z_[{label}] = {elem_to_text(cls, spec, ctx.vars)}")
    return 0


def cmd_product(ns) -> int:
    n = _check_rank(ns.n)
    ctx = _context(n)
    left = validate_word(_parse_word(ns.left), n)
    right = validate_word(_parse_word(ns.right), n)
    spec = _specializer(ns.theory, ns.beta)
    expansion = product_bs(ctx, left, right)
    verified = None
    if ns.verify:
        verified = expansion.evaluate(ctx) == bs_class(ctx, left) * bs_class(
            ctx, right)
    rows = expansion_to_rows(expansion, spec)
    if ns.format == "json":
        payload = {
            "command": "product", "n": n, "left": list(left),
            "right": list(right), "theory": ns.theory,
            "terms": [{"subword": list(w), "coeff": coeff_to_json(c)}
                      for w, c in rows]}
        if verified is not None:
            payload["verified"] = verified
        _emit_json(payload)
    else:
        if not rows:
            print("0")
        for word, coeff in rows:
            label = ",".join(map(str, word)) if word else "e"
            print(f"Z_[{label}]: {coeff_to_text(coeff)}")
        if verified is not None:
            print(f"verify: {'ok' if verified else 'MISMATCH'}")
    if verified is False:
        return 1
    return 0


def cmd_chevalley(ns) -> int:
    n = _check_rank(ns.n)
    ctx = _context(n)
    word = validate_word(_parse_word(ns.word), n)
    lam = _parse_weight(ns.weight, n)
    spec = _specializer(ns.theory, ns.beta)
    expansion = c1_times_bs(ctx, lam, word)
    rows = expansion_to_rows(expansion, spec)
    if ns.format == "json":
        _emit_json({
            "command": "chevalley", "n": n, "word": list(word),
            "weight": list(lam.coords), "theory": ns.theory,
            "terms": [{"subword": list(w), "coeff": coeff_to_json(c)}
                      for w, c in rows]})
    else:
        if not rows:
            print("0")
        for w, coeff in rows:
            label = ",".join(map(str, w)) if w else "e"
            print(f"Z_[{label}]: {coeff_to_text(coeff)}")
    return 0


def cmd_fgl(ns) -> int:
    degree = ns.max_degree
    if degree < 1:
        raise UsageError("degree must be at least 1")
    if degree > MAX_FGL_DEGREE:
        raise ResourceCapError(
            f"degree {degree} exceeds the configured cap {MAX_FGL_DEGREE}")
    spec = _specializer(ns.theory, ns.beta)
    fgl = build_universal_fgl(degree)
    if ns.format == "json":
        _emit_json({
            "command": "fgl", "degree_cap": degree, "theory": ns.theory,
            "F": series_to_json(fgl.F, spec),
            "chi": series_to_json(fgl.chi, spec),
            "q": series_to_json(fgl.q, spec)})
    else:
        def render(series):
            parts = []
            for key in sorted(series.terms, key=lambda k: (sum(k), k)):
                coeff = spec(series.terms[key])
                if not coeff:
                    continue
                mono = "*".join(f"{v}^{e}" if e > 1 else v
                                for v, e in zip(series.vars, key) if e)
                parts.append(f"({coeff})*{mono}" if mono else f"({coeff})")
            return " + ".join(parts) if parts else "0"

        print(f"F(u,v) = {render(fgl.F)}")
        print(f"chi(u) = {render(fgl.chi)}")
        print(f"q(u,v) = {render(fgl.q)}")
    return 0


def cmd_expand(ns) -> int:
    n = _check_rank(ns.n)
    ctx = _context(n)
    word = validate_word(_parse_word(ns.word), n)
    spec = _specializer(ns.theory, ns.beta)
    expansion = expand_in_bs_basis(ctx, bs_class(ctx, word))
    rows = []
    for w in sorted(expansion, key=lambda p: (p.inversions(), p.images)):
        coeff = spec(expansion[w])
        if coeff:
            rows.append((w, coeff))
    if ns.format == "json":
        _emit_json({
            "command": "expand", "n": n, "word": list(word),
            "theory": ns.theory,
            "classes": [{"perm": list(w.images),
                         "word": list(reduced_word(w)),
                         "coeff": coeff_to_json(c)} for w, c in rows]})
    else:
        if not rows:
            print("0")
        for w, coeff in rows:
            label = ",".join(map(str, reduced_word(w))) or "e"
            print(f"Z_[{label}] (perm {list(w.images)}): "
                  f"{coeff_to_text(coeff)}")
    return 0


def cmd_pieri(ns) -> int:
    n = _check_rank(ns.n)
    ctx = _context(n)
    word = validate_word(_parse_word(ns.word), n)
    lam = _parse_weight(ns.weight, n)
    rows = pieri_exponents(ctx, word, lam)
    if ns.format == "json":
        _emit_json({
            "command": "pieri", "n": n, "word": list(word),
            "weight": list(lam.coords),
            "rows": [{"position": j + 1, "subword": list(sub),
                      "exponent": exponent}
                     for j, (sub, exponent) in enumerate(rows)]})
    else:
        for j, (sub, exponent) in enumerate(rows):
            label = ",".join(map(str, sub)) if sub else "e"
            print(f"j={j + 1}: Z_[{label}] exponent {exponent}")
    return 0


def cmd_selftest(ns) -> int:
    n = _check_rank(ns.n)
    ok = run_selftest(n, ns.theory, ns.beta)
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# Argument plumbing


def _add_common(parser, *, rank=True):
    if rank:
        parser.add_argument("--n", type=int, required=True,
                            help="rank of the flag variety (>= 2)")
    parser.add_argument("--theory", choices=("cobordism", "chow", "ktheory"),
                        default="cobordism")
    parser.add_argument("--beta", type=_parse_rational, default=Fraction(1),
                        help="rational parameter for the ktheory theory")
    parser.add_argument("--format", choices=("json", "text"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cobschub",
        description="Schubert calculus in the algebraic cobordism of "
                    "complete flag varieties")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bsclass", help="canonical form of a Bott-Samelson class")
    _add_common(p)
    p.add_argument("--word", required=True,
                   help="comma-separated simple-root indices; empty for the point")
    p.set_defaults(func=cmd_bsclass)

    p = sub.add_parser("product", help="decompose a product of two classes")
    _add_common(p)
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--verify", action="store_true",
                   help="also check the expansion against the ring product")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("chevalley",
                       help="expand c1(L(weight)) times a class")
    _add_common(p)
    p.add_argument("--word", required=True)
    p.add_argument("--weight", required=True,
                   help="comma-separated integer weight of length n")
    p.set_defaults(func=cmd_chevalley)

    p = sub.add_parser("fgl", help="dump the truncated formal group law")
    _add_common(p, rank=False)
    p.add_argument("--max-degree", type=int, default=5,
                   help="truncation degree for the law dump")
    p.set_defaults(func=cmd_fgl)

    p = sub.add_parser("expand",
                       help="expand a class over the reduced-word basis")
    _add_common(p)
    p.add_argument("--word", required=True)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("pieri", help="exponent table of a pulled-back line bundle")
    _add_common(p)
    p.add_argument("--word", required=True)
    p.add_argument("--weight", required=True)
    p.set_defaults(func=cmd_pieri)

    p = sub.add_parser("selftest", help="run the built-in verification suite")
    _add_common(p)
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        return ns.func(ns)
    except ResourceCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
