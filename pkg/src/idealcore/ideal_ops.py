"""The ideal calculus: sums, products, powers, intersections, colons,
radical membership, and the Serre-criterion radicality check.

Intersections go through the classic auxiliary-variable construction:
adjoin t, form t*I + (1-t)*K, and eliminate t with a block order.  The
auxiliary computation is allowed to be inhomogeneous; inputs and outputs
stay homogeneous ideals.  Colons are intersections of single-generator
quotients.  Products and powers minimalize their generating sets (by
exact linear algebra, not division) to stop generator counts from
exploding through colon chains.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from . import linalg
from .errors import CompleteIntersectionError, RingMismatchError
from .groebner import (FMASK, GBStats, GroebnerBasis, Ideal, W,
                       _engine_terms, _entry_to_polynomial, _groebner_engine,
                       _guard, _normalize_entry, _pack, _packed_key_fn,
                       _reduce_full, ideal_contains, ideal_member,
                       krull_dimension)
from .orders import DEGREVLEX, block_elimination
from .rings import Polynomial, RingContext


def _same_ring(left: Ideal, right: Ideal):
    if left.ring != right.ring:
        raise RingMismatchError("ideals live in different rings")


def unit_ideal(ring_ctx: RingContext) -> Ideal:
    return Ideal(ring_ctx, (ring_ctx.one(),))


def zero_ideal(ring_ctx: RingContext) -> Ideal:
    return Ideal(ring_ctx, ())


def is_unit_ideal(ideal: Ideal) -> bool:
    """True iff the ideal is the whole ring.

    Generators are homogeneous, so the ideal contains a unit exactly
    when some generator is a nonzero constant; no basis needed.
    """
    return any(g.degree() == 0 for g in ideal.generators)


def ideal_sum(left: Ideal, right: Ideal) -> Ideal:
    """Ideal generated by the union of the two generator lists."""
    _same_ring(left, right)
    return Ideal(left.ring, left.generators + right.generators)


def maximal_ideal_power(ring_ctx: RingContext, exponent: int) -> Ideal:
    """m^e, generated by every monomial of total degree e."""
    if exponent < 1:
        raise ValueError("exponent must be at least 1")
    exponents = linalg.monomials_of_degree(ring_ctx.nvars, exponent)
    ideal = Ideal(ring_ctx, tuple(ring_ctx.monomial(e) for e in exponents))
    _seed_monomial_gb(ideal, list(exponents))
    ideal._minimal = ideal
    return ideal


def minimalize_generators(ideal: Ideal) -> Ideal:
    """Minimal homogeneous generating set, lowest degree first.

    Decided degree by degree with exact linear algebra on graded slices
    (no division): a candidate is dropped exactly when it lies in the
    span of the multiples of the generators kept so far.  The result
    generates the same ideal and shares its caches.
    """
    if ideal._minimal is not None:
        return ideal._minimal
    if ideal.is_zero():
        ideal._minimal = ideal
        return ideal
    ring_ctx = ideal.ring
    by_degree: dict = {}
    for g in ideal.generators:
        by_degree.setdefault(g.degree(), []).append(g)
    kept: list = []
    for degree in sorted(by_degree):
        span = linalg.HomogeneousSpan(ring_ctx.field, ring_ctx.order)
        for g in kept:
            gap = degree - g.degree()
            for shift in linalg.monomials_of_degree(ring_ctx.nvars, gap):
                span.add(linalg.shifted_row(g, shift))
        for candidate in by_degree[degree]:
            if span.add(dict(candidate.terms)):
                kept.append(candidate)
    if len(kept) == len(ideal.generators):
        minimal = ideal
    else:
        minimal = Ideal(ring_ctx, kept)
        minimal._gb = ideal._gb          # same ideal, share canonical caches
        minimal._powers = ideal._powers
        minimal._mlevel = ideal._mlevel
    minimal._minimal = minimal
    ideal._minimal = minimal
    return minimal


def ideal_product(left: Ideal, right: Ideal) -> Ideal:
    """Ideal generated by all pairwise generator products, minimalized."""
    _same_ring(left, right)
    if left.is_zero() or right.is_zero():
        return zero_ideal(left.ring)
    gi = minimalize_generators(left).generators
    gk = minimalize_generators(right).generators
    products = [a * b for a in gi for b in gk]
    return minimalize_generators(Ideal(left.ring, products))


def ideal_power(ideal: Ideal, exponent: int) -> Ideal:
    """ideal**e by repeated product; e = 0 gives the unit ideal."""
    if exponent < 0:
        raise ValueError("exponent must be non-negative")
    if exponent == 0:
        return unit_ideal(ideal.ring)
    if exponent == 1:
        return ideal
    cached = ideal._powers.get(exponent)
    if cached is None:
        cached = ideal_product(ideal_power(ideal, exponent - 1), ideal)
        ideal._powers.setdefault(exponent, cached)
        cached = ideal._powers[exponent]
    return cached


# -- intersection ----------------------------------------------------

def _seed_monomial_gb(ideal: Ideal, monomials: list):
    elements = tuple(sorted((ideal.ring.monomial(e) for e in monomials),
                            key=lambda g: ideal.ring.order.key(g.terms[0][0]),
                            reverse=True))
    stats = GBStats(generators=len(monomials), size=len(monomials),
                    max_degree=max((sum(e) for e in monomials), default=0))
    ideal._gb.setdefault(DEGREVLEX, GroebnerBasis(ideal.ring, DEGREVLEX,
                                                  elements, stats))


def _monomial_exponents(ideal: Ideal):
    """Exponent tuples when every generator is a single term, else None."""
    out = []
    for g in ideal.generators:
        if len(g.terms) != 1:
            return None
        out.append(g.terms[0][0])
    return out


def _minimal_monomials(exponents) -> list:
    ordered = sorted(set(exponents), key=lambda e: (sum(e), e))
    kept: list = []
    for e in ordered:
        if not any(all(a <= b for a, b in zip(k, e)) for k in kept):
            kept.append(e)
    return kept


def _monomial_intersect(left: Ideal, right: Ideal) -> Ideal:
    le = _monomial_exponents(left)
    re = _monomial_exponents(right)
    lcms = [tuple(max(a, b) for a, b in zip(ea, eb)) for ea in le for eb in re]
    minimal = _minimal_monomials(lcms)
    out = Ideal(left.ring, tuple(left.ring.monomial(e) for e in minimal))
    _seed_monomial_gb(out, minimal)
    out._minimal = out
    return out


def _elimination_intersect(left: Ideal, right: Ideal) -> Ideal:
    """t*I + (1-t)*K, then strip everything involving t.

    The auxiliary variable is slotted in front so the specified block
    order (degrevlex on the first block, then degrevlex on the rest)
    eliminates it directly; the leftover block is plain degrevlex on the
    original variables, so the surviving elements are already the
    reduced degrevlex basis of the intersection and get cached as such.
    """
    ring_ctx = left.ring
    n = ring_ctx.nvars
    p = ring_ctx.field.char
    aux: list = []
    for f in minimalize_generators(left).generators:
        terms, _ = _engine_terms(f)
        aux.append({(m << W) | 1: c for m, c in terms.items()})
    for f in minimalize_generators(right).generators:
        terms, _ = _engine_terms(f)
        d = {(m << W): c for m, c in terms.items()}
        for m, c in terms.items():
            d[(m << W) | 1] = (-c) % p if p else -c
        aux.append(d)
    raw: dict = {}
    entries = _groebner_engine(aux, n + 1, block_elimination(1), p, stats=raw)
    kept = []
    for lmkey, lm, lc, terms in entries:
        if lm & FMASK:
            continue
        # under an elimination order a t-free leading monomial forces a
        # t-free element
        assert all((m & FMASK) == 0 for m, _ in terms)
        kept.append((lmkey, lm >> W, lc, tuple((m >> W, c) for m, c in terms)))
    polys = tuple(_entry_to_polynomial(ring_ctx, e) for e in kept)
    out = Ideal(ring_ctx, polys)
    stats = GBStats(generators=len(aux), size=len(polys), pairs=raw["pairs"],
                    zero_reductions=raw["zero_reductions"],
                    max_degree=raw["max_degree"])
    out._gb.setdefault(DEGREVLEX, GroebnerBasis(ring_ctx, DEGREVLEX, polys, stats))
    return out


def _cached_contains(big: Ideal, small: Ideal) -> bool | None:
    """Containment test that refuses to compute a fresh basis.

    Returns None when `big` has no cached basis yet; used by the
    intersection fast path, where computing one just for the precheck
    could cost more than the elimination it tries to avoid.
    """
    if not big._gb:
        return None
    return ideal_contains(big, small)


def ideal_intersect(left: Ideal, right: Ideal) -> Ideal:
    """I intersect K via the auxiliary-variable elimination construction.

    Structural shortcuts (zero or unit operands, one side containing the
    other, both sides monomial) return the exact same ideal without the
    elimination run.
    """
    _same_ring(left, right)
    if left.is_zero() or right.is_zero():
        return zero_ideal(left.ring)
    if is_unit_ideal(left):
        return right
    if is_unit_ideal(right):
        return left
    if _monomial_exponents(left) is not None and _monomial_exponents(right) is not None:
        return _monomial_intersect(left, right)
    if _cached_contains(right, left):
        return left
    if _cached_contains(left, right):
        return right
    return _elimination_intersect(left, right)


# -- colon -----------------------------------------------------------

def _reduced_gb_from_minimal(ring_ctx: RingContext, polys: Sequence[Polynomial]) -> tuple:
    """Interreduce a minimal Groebner basis into the reduced one."""
    n = ring_ctx.nvars
    p = ring_ctx.field.char
    rawkey = _packed_key_fn(DEGREVLEX, n)
    memo: dict = {}

    def keyof(m):
        k = memo.get(m)
        if k is None:
            k = rawkey(m)
            memo[m] = k
        return k

    guard = _guard(n)
    entries = [_normalize_entry(_engine_terms(f)[0], keyof, p) for f in polys]
    for pos in range(len(entries)):
        others = sorted(entries[:pos] + entries[pos + 1:])
        h = dict(entries[pos][3])
        h, _, _ = _reduce_full(h, others, keyof, guard, p)
        entries[pos] = _normalize_entry(h, keyof, p)
    entries.sort(reverse=True)
    return tuple(_entry_to_polynomial(ring_ctx, e) for e in entries)


def _quotient_by_single(numerator: Ideal, divisor: Polynomial) -> Ideal:
    """numerator : (g) as (1/g) * (numerator intersect (g))."""
    ring_ctx = numerator.ring
    if divisor.degree() == 0:
        return numerator
    meet = ideal_intersect(numerator, Ideal(ring_ctx, (divisor,)))
    if meet.is_zero():
        return meet
    gb = meet.groebner_basis(DEGREVLEX)
    quotients = [g.exact_div(divisor) for g in gb.elements]
    # leading monomials divide through, so the quotients are a minimal
    # Groebner basis already; interreduction makes it the reduced one
    elements = _reduced_gb_from_minimal(ring_ctx, quotients)
    out = Ideal(ring_ctx, elements)
    out._gb.setdefault(DEGREVLEX, GroebnerBasis(ring_ctx, DEGREVLEX, elements,
                                                GBStats(size=len(elements))))
    return out


def ideal_colon(numerator: Ideal, denominator: Ideal) -> Ideal:
    """numerator : denominator, the ideal of f with f*denominator inside.

    Computed as the intersection over the denominator's minimal
    generators g of (1/g)(numerator intersect (g)).  Before computing a
    generator's quotient the accumulated intersection is tested against
    it (acc : (g) contains acc iff acc*g stays in the numerator), which
    skips the elimination entirely once the intersection has stabilized.
    """
    _same_ring(numerator, denominator)
    if denominator.is_zero():
        raise ValueError("colon by the zero ideal is undefined")
    if numerator.is_zero():
        return numerator
    gens = sorted(minimalize_generators(denominator).generators,
                  key=lambda g: g.degree())
    acc: Ideal | None = None
    for g in gens:
        if acc is not None and all(ideal_member(a * g, numerator)
                                   for a in acc.generators):
            continue
        piece = _quotient_by_single(numerator, g)
        acc = piece if acc is None else ideal_intersect(acc, piece)
    assert acc is not None
    return acc


# -- radicals --------------------------------------------------------

def radical_member(f: Polynomial, ideal: Ideal) -> bool:
    """f in the radical of the ideal, by the trick of adjoining t and
    asking whether 1 lies in ideal + (1 - t*f)."""
    if f.ring != ideal.ring:
        raise RingMismatchError("polynomial and ideal rings differ")
    if f.is_zero() or ideal_member(f, ideal):
        return True
    if ideal.is_zero():
        return False
    p = f.ring.field.char
    aux: list = []
    for g in ideal.generators:
        terms, _ = _engine_terms(g)
        aux.append({(m << W): c for m, c in terms.items()})
    fterms, _ = _engine_terms(f)
    witness = {0: 1}
    for m, c in fterms.items():
        key = (m << W) | 1
        witness[key] = (-c) % p if p else -c
    aux.append(witness)
    entries = _groebner_engine(aux, f.ring.nvars + 1, DEGREVLEX, p,
                               stop_on_unit=True)
    return len(entries) == 1 and entries[0][0] == 0


@dataclass(frozen=True)
class RadicalityCheck:
    """Outcome of the Serre-criterion check, with both dimensions."""

    is_radical: bool
    codimension: int
    quotient_dimension: int
    singular_locus_dimension: int

    def __bool__(self) -> bool:
        return self.is_radical


def _determinant(matrix: list) -> Polynomial:
    size = len(matrix)
    if size == 1:
        return matrix[0][0]
    ring_ctx = matrix[0][0].ring
    total = ring_ctx.zero()
    for col in range(size):
        entry = matrix[0][col]
        if entry.is_zero():
            continue
        minor = [[row[c] for c in range(size) if c != col]
                 for row in matrix[1:]]
        term = entry * _determinant(minor)
        total = total - term if col % 2 else total + term
    return total


def ci_is_radical(ideal: Ideal) -> RadicalityCheck:
    """Radicality of a complete intersection via Serre's criterion.

    A complete intersection is Cohen-Macaulay, so it is reduced exactly
    when its singular locus is small: the ideal plus the codim-sized
    minors of the Jacobian must cut out something of strictly smaller
    dimension.  Refuses (rather than guessing) when the presented
    generators are not a complete intersection.
    """
    ring_ctx = ideal.ring
    gens = ideal.generators
    if not gens:
        raise CompleteIntersectionError("the zero ideal is not a complete intersection")
    dim_quotient = krull_dimension(ideal)
    if dim_quotient < 0:
        raise CompleteIntersectionError("the unit ideal is not a complete intersection")
    codim = ring_ctx.nvars - dim_quotient
    if len(gens) != codim:
        raise CompleteIntersectionError(
            f"{len(gens)} generators but codimension {codim}: "
            f"not presented as a complete intersection")
    jacobian = [[g.derivative(j) for j in range(ring_ctx.nvars)] for g in gens]
    minors = []
    for cols in combinations(range(ring_ctx.nvars), codim):
        det = _determinant([[row[c] for c in cols] for row in jacobian])
        if not det.is_zero():
            minors.append(det)
    singular = Ideal(ring_ctx, tuple(gens) + tuple(minors))
    dim_singular = krull_dimension(singular)
    return RadicalityCheck(is_radical=dim_singular < dim_quotient,
                           codimension=codim,
                           quotient_dimension=dim_quotient,
                           singular_locus_dimension=dim_singular)
