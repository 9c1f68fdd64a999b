"""Buchberger engine, normal forms, ideals, dimension, and the oracle.

Performance notes.  Inside the engine a monomial is a single integer:
one 16-bit field per variable plus a guard bit per field, so monomial
multiplication is integer addition, divisibility is two bit operations,
and lcms come from a mask trick.  Rational arithmetic is fraction-free:
polynomials are scaled to integer coefficients with content one, and
reduction cross-multiplies instead of dividing, so all coefficient work
happens on plain ints (exactness is never traded away; a tracked scalar
recovers true field-level normal forms at the boundary).  Pair handling
is normal selection (smallest lcm) with the coprime and chain criteria
in Gebauer-Moeller form.
"""

from __future__ import annotations

import bisect
import heapq
import time
from contextlib import contextmanager
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Sequence

from . import linalg
from .errors import HomogeneityError, RingMismatchError
from .orders import DEGREVLEX, MonomialOrder
from .rings import Polynomial, RingContext

# -- packed monomials ------------------------------------------------

W = 16
FMASK = (1 << W) - 1
_EXP_CAP = 1 << (W - 1)

_GUARDS: dict = {}
_FULLS: dict = {}


def _guard(n: int) -> int:
    g = _GUARDS.get(n)
    if g is None:
        g = sum(1 << (i * W + W - 1) for i in range(n))
        _GUARDS[n] = g
    return g


def _full(n: int) -> int:
    f = _FULLS.get(n)
    if f is None:
        f = (1 << (n * W)) - 1
        _FULLS[n] = f
    return f


def _pack(exps) -> int:
    acc = 0
    for i, e in enumerate(exps):
        if e >= _EXP_CAP:
            raise OverflowError(f"exponent {e} too large for the packed engine")
        acc |= e << (i * W)
    return acc


def _unpack(m: int, n: int) -> tuple:
    return tuple((m >> (i * W)) & FMASK for i in range(n))


def _pdeg(m: int) -> int:
    d = 0
    while m:
        d += m & FMASK
        m >>= W
    return d


def _divides(a: int, b: int, guard: int) -> bool:
    # componentwise a <= b, via guard-bit borrow detection
    return ((b | guard) - a) & guard == guard


def _plcm(a: int, b: int, guard: int) -> int:
    ge = ((a | guard) - b) & guard          # fields where a >= b
    sel = (ge >> (W - 1)) * FMASK           # widen each guard bit to its field
    return (a & sel) | (b & ~sel)


def _packed_key_fn(order: MonomialOrder, n: int):
    """Integer sort key on packed monomials matching order.key on tuples."""
    if order.kind == "degrevlex":
        shift = n * W
        full = _full(n)

        def key(m: int) -> int:
            d = 0
            t = m
            while t:
                d += t & FMASK
                t >>= W
            return (d << shift) | (full - m)

        return key
    if order.kind == "lex":
        def key(m: int) -> int:
            acc = 0
            for i in range(n):
                acc = (acc << W) | ((m >> (i * W)) & FMASK)
            return acc

        return key
    k = order.block
    head = _packed_key_fn(DEGREVLEX, k)
    tail = _packed_key_fn(DEGREVLEX, n - k)
    lowmask = (1 << (k * W)) - 1
    tail_bits = (n - k + 1) * W

    def key(m: int) -> int:
        return (head(m & lowmask) << tail_bits) | tail(m >> (k * W))

    return key


# -- engine polynomials ----------------------------------------------
# A reducer entry is (lmkey, lm, lc, terms) with terms a tuple of
# (packed, coefficient) pairs; entries are monic (over QQ coefficients
# are Fractions, over F_p reduced residues), so cancelling a term never
# rescales the rest of the polynomial and coefficients stay at their
# true field sizes instead of accumulating fraction-free multipliers.
# Reducer lists are kept sorted ascending by lmkey: a divisor never
# exceeds its multiple in a monomial order, so scans stop at the
# target's key.

_MISS = object()


def _engine_terms(f: Polynomial) -> dict:
    """Packed term dict for f (coefficients stay field elements)."""
    return {_pack(e): c for e, c in f.terms}


def _normalize_entry(h: dict, keyof, p: int):
    """Canonical monic reducer entry for a nonzero term dict (consumed)."""
    lm = max(h, key=keyof)
    lc = h[lm]
    if p:
        if lc != 1:
            inv = pow(lc, p - 2, p)
            for k in h:
                h[k] = h[k] * inv % p
    elif lc != 1:
        for k in h:
            h[k] /= lc
    return (keyof(lm), lm, 1, tuple(h.items()))


def _reduce_full(h: dict, reducers, keyof, guard: int, p: int,
                 cache: dict | None = None, top_only: bool = False):
    """Reduce term dict h (in place) by sorted monic reducer entries.

    With top_only the reduction stops at the first irreducible
    monomial, which is all Buchberger's criterion and membership tests
    need; full tail reduction is deferred to the final interreduction,
    where it happens once per basis element instead of on every S-poly.
    `cache` maps monomials to a dividing entry (or None); the caller
    owns invalidation when the reducer list grows.
    """
    if not h or not reducers:
        return h
    heap = [(-keyof(m), m) for m in h]
    heapq.heapify(heap)
    push = heapq.heappush
    pop = heapq.heappop
    if cache is None:
        cache = {}
    done = set()
    while heap:
        nk, m = pop(heap)
        if m in done or m not in h:
            continue
        hit = cache.get(m, _MISS)
        if hit is _MISS:
            hit = None
            mk = -nk
            mg = m | guard
            for entry in reducers:
                if entry[0] > mk:
                    break
                if ((mg - entry[1]) & guard) == guard:
                    hit = entry
                    break
            cache[m] = hit
        if hit is None:
            if top_only:
                return h
            done.add(m)
            continue
        shift = m - hit[1]
        c = h[m]
        if p:
            for gm, gc in hit[3]:
                mm = gm + shift
                v = (h.get(mm, 0) - c * gc) % p
                if v:
                    if mm not in h:
                        push(heap, (-keyof(mm), mm))
                    h[mm] = v
                else:
                    h.pop(mm, None)
        else:
            for gm, gc in hit[3]:
                mm = gm + shift
                v = h.get(mm)
                v = -c * gc if v is None else v - c * gc
                if v:
                    if mm not in h:
                        push(heap, (-keyof(mm), mm))
                    h[mm] = v
                else:
                    h.pop(mm, None)
    return h


def _spoly(ei, ej, lcm: int, p: int) -> dict:
    # both entries are monic, so the s-polynomial is a plain shifted
    # difference with no coefficient scaling at all
    si = lcm - ei[1]
    sj = lcm - ej[1]
    h: dict = {}
    if p:
        for m, c in ei[3]:
            h[m + si] = c
        for m, c in ej[3]:
            mm = m + sj
            v = (h.get(mm, 0) - c) % p
            if v:
                h[mm] = v
            else:
                h.pop(mm, None)
    else:
        for m, c in ei[3]:
            h[m + si] = c
        for m, c in ej[3]:
            mm = m + sj
            v = h.get(mm)
            v = -c if v is None else v - c
            if v:
                h[mm] = v
            else:
                h.pop(mm, None)
    return h


def _groebner_engine(dicts: list, n: int, order: MonomialOrder, p: int,
                     stop_on_unit: bool = False, stats: dict | None = None):
    """Reduced Groebner basis of the ideal the term dicts generate.

    Returns canonical reducer entries sorted descending by leading
    monomial.  The output is the unique reduced basis, so it does not
    depend on the input order.
    """
    rawkey = _packed_key_fn(order, n)
    keymemo: dict = {}

    def keyof(m: int) -> int:
        k = keymemo.get(m)
        if k is None:
            k = rawkey(m)
            keymemo[m] = k
        return k

    guard = _guard(n)
    G: list = []            # entries in arrival order (stable pair indices)
    scan: list = []         # the same entries sorted ascending by lmkey
    lms: list = []
    red_cache: dict = {}
    alive: dict = {}
    heap: list = []
    pairs_done = 0
    zero_reductions = 0
    max_degree = 0

    def push_pairs(t: int):
        lmt = lms[t]
        # chain criterion on surviving old pairs
        for pair in list(alive):
            lcm_old = alive[pair]
            if _divides(lmt, lcm_old, guard):
                i, j = pair
                if (_plcm(lms[i], lmt, guard) != lcm_old
                        and _plcm(lms[j], lmt, guard) != lcm_old):
                    del alive[pair]
        groups: dict = {}
        for i in range(t):
            groups.setdefault(_plcm(lms[i], lmt, guard), []).append(i)
        kept: list = []
        for lcm_new in sorted(groups, key=keyof):
            if any(other != lcm_new and _divides(other, lcm_new, guard)
                   for other in kept):
                continue
            kept.append(lcm_new)
        for lcm_new in kept:
            idxs = groups[lcm_new]
            if any(lms[i] + lmt == lcm_new for i in idxs):
                continue                      # coprime leading monomials
            i0 = min(idxs)
            alive[(i0, t)] = lcm_new
            heapq.heappush(heap, (keyof(lcm_new), i0, t))

    def absorb(h: dict) -> bool:
        """Add a nonzero reduced dict to the basis; True if it is a unit."""
        entry = _normalize_entry(h, keyof, p)
        G.append(entry)
        lms.append(entry[1])
        bisect.insort(scan, entry)
        stale = [m for m, v in red_cache.items()
                 if v is None and _divides(entry[1], m, guard)]
        for m in stale:
            del red_cache[m]
        push_pairs(len(G) - 1)
        return entry[1] == 0

    unit_found = False
    for d in dicts:
        h, _, _ = _reduce_full(dict(d), scan, keyof, guard, p, red_cache,
                               top_only=True)
        if h:
            if absorb(h) and stop_on_unit:
                unit_found = True
                break

    while alive and not unit_found:
        _, i, j = heapq.heappop(heap)
        lcm_ij = alive.pop((i, j), None)
        if lcm_ij is None:
            continue
        pairs_done += 1
        deg = _pdeg(lcm_ij)
        if deg > max_degree:
            max_degree = deg
        h = _spoly(G[i], G[j], lcm_ij, p)
        h, _, _ = _reduce_full(h, scan, keyof, guard, p, red_cache,
                               top_only=True)
        if not h:
            zero_reductions += 1
            continue
        if absorb(h) and stop_on_unit:
            unit_found = True

    if unit_found:
        one = 1 if p == 0 else 1
        final = [(keyof(0), 0, one, ((0, one),))]
    else:
        # minimal subset: drop entries whose lm is a multiple of another
        order_idx = sorted(range(len(G)), key=lambda i: keyof(lms[i]))
        minimal: list = []
        for i in order_idx:
            if any(_divides(lms[j], lms[i], guard) for j in minimal):
                continue
            minimal.append(i)
        final = [G[i] for i in minimal]
        # interreduce tails; leading monomials are pairwise indivisible
        for pos in range(len(final)):
            others = sorted(final[:pos] + final[pos + 1:])
            h = dict(final[pos][3])
            h, _, _ = _reduce_full(h, others, keyof, guard, p)
            final[pos] = _normalize_entry(h, keyof, p)
        final.sort(reverse=True)

    if stats is not None:
        stats["pairs"] = pairs_done
        stats["zero_reductions"] = zero_reductions
        stats["max_degree"] = max_degree
        stats["size"] = len(final)
    return final


def _entry_to_polynomial(ring: RingContext, entry, monic: bool = True) -> Polynomial:
    _, lm, lc, terms = entry
    n = ring.nvars
    if ring.field.char:
        return ring.polynomial({_unpack(m, n): c for m, c in terms})
    if monic:
        return ring.polynomial({_unpack(m, n): Fraction(c, lc) for m, c in terms})
    return ring.polynomial({_unpack(m, n): Fraction(c) for m, c in terms})


# -- statistics ------------------------------------------------------

@dataclass(frozen=True)
class GBStats:
    """Counters from one Buchberger run (seconds are wall-clock)."""

    generators: int = 0
    size: int = 0
    pairs: int = 0
    zero_reductions: int = 0
    max_degree: int = 0
    seconds: float = 0.0


_stat_sinks: list = []


@contextmanager
def collect_gb_stats():
    """Collect GBStats for every basis computed inside the block."""
    sink: list = []
    _stat_sinks.append(sink)
    try:
        yield sink
    finally:
        _stat_sinks.remove(sink)


def _record_stats(stats: GBStats):
    for sink in _stat_sinks:
        sink.append(stats)


# -- public surface --------------------------------------------------

@dataclass(frozen=True, eq=False)
class GroebnerBasis:
    """Reduced Groebner basis: the canonical fingerprint of an ideal.

    Elements are monic, no term of any element is divisible by the
    leading monomial of another, and the sequence is sorted descending
    by leading monomial, so two ideals are equal exactly when their
    bases under a common order carry identical term sequences.
    """

    ring: RingContext
    order: MonomialOrder
    elements: tuple
    stats: GBStats = dc_field(default_factory=GBStats)
    reduced: bool = True

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def _engine(self):
        cached = self.__dict__.get("_engine_cache")
        if cached is None:
            n = self.ring.nvars
            p = self.ring.field.char
            rawkey = _packed_key_fn(self.order, n)
            memo: dict = {}

            def keyof(m: int) -> int:
                k = memo.get(m)
                if k is None:
                    k = rawkey(m)
                    memo[m] = k
                return k

            entries = []
            for f in self.elements:
                h, _ = _engine_terms(f)
                entries.append(_normalize_entry(h, keyof, p))
            entries.sort()
            # the element list is fixed, so divisor lookups stay valid
            cached = (entries, keyof, _guard(n), p, {})
            self.__dict__["_engine_cache"] = cached
        return cached

    def reduces_to_zero(self, f: Polynomial) -> bool:
        if f.is_zero():
            return True
        if not self.elements:
            return False
        entries, keyof, guard, p, cache = self._engine
        h, _ = _engine_terms(f)
        h, _, _ = _reduce_full(h, entries, keyof, guard, p, cache,
                               top_only=True)
        return not h

    def normal_form(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.elements, self.order)


def buchberger(gens: Sequence[Polynomial],
               order: MonomialOrder | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by `gens`.

    Generators must be nonzero and share one ring; the output is
    deterministic and independent of generator order.  (Homogeneity is
    not required here: the elimination and radical constructions feed
    inhomogeneous inputs through this same engine.)
    """
    if not gens:
        raise ValueError("buchberger needs at least one generator")
    ring_ctx = gens[0].ring
    for g in gens:
        if g.ring != ring_ctx:
            raise RingMismatchError("generators live in different rings")
        if g.is_zero():
            raise ValueError("zero generator")
    order = order or ring_ctx.order
    started = time.perf_counter()
    raw: dict = {}
    dicts = [_engine_terms(g)[0] for g in gens]
    entries = _groebner_engine(dicts, ring_ctx.nvars, order,
                               ring_ctx.field.char, stats=raw)
    seconds = time.perf_counter() - started
    stats = GBStats(generators=len(gens), seconds=seconds, **raw)
    _record_stats(stats)
    elements = tuple(_entry_to_polynomial(ring_ctx, e) for e in entries)
    return GroebnerBasis(ring_ctx, order, elements, stats)


def normal_form(f: Polynomial, basis, order: MonomialOrder | None = None) -> Polynomial:
    """Remainder of f on division by `basis` under `order`.

    f minus the result lies in the ideal the basis generates and no term
    of the result is divisible by a basis leading monomial.  Against a
    Groebner basis the result is the unique normal form.
    """
    if isinstance(basis, GroebnerBasis):
        order = order or basis.order
        basis = basis.elements
    if f.is_zero() or not basis:
        return f
    ring_ctx = f.ring
    for g in basis:
        if g.ring != ring_ctx:
            raise RingMismatchError("basis element in a different ring")
        if g.is_zero():
            raise ValueError("zero basis element")
    order = order or ring_ctx.order
    n = ring_ctx.nvars
    p = ring_ctx.field.char
    rawkey = _packed_key_fn(order, n)
    memo: dict = {}

    def keyof(m: int) -> int:
        k = memo.get(m)
        if k is None:
            k = rawkey(m)
            memo[m] = k
        return k

    entries = []
    for g in basis:
        h, _ = _engine_terms(g)
        entries.append(_normalize_entry(h, keyof, p))
    entries.sort()
    h, scale = _engine_terms(f)
    h, num, den = _reduce_full(h, entries, keyof, _guard(n), p)
    if p:
        return ring_ctx.polynomial({_unpack(m, n): c for m, c in h.items()})
    total = Fraction(num * scale, den)
    return ring_ctx.polynomial(
        {_unpack(m, n): Fraction(c) / total for m, c in h.items()})


class Ideal:
    """Homogeneous ideal: generator list plus cached reduced bases.

    Generators must be homogeneous (the engine computes in the
    polynomial ring, where homogeneous input makes every result agree
    with the corresponding local-ring computation).  Zero generators are
    dropped.  Caches are write-once per order: concurrent fills race to
    the identical canonical value.
    """

    __slots__ = ("ring", "generators", "_gb", "_minimal", "_powers", "_mlevel")

    def __init__(self, ring_ctx: RingContext, generators: Sequence[Polynomial]):
        gens = []
        for idx, g in enumerate(generators):
            if not isinstance(g, Polynomial):
                raise TypeError(f"generator {idx} is not a Polynomial")
            if g.ring != ring_ctx:
                raise RingMismatchError(f"generator {idx} lives in another ring")
            if g.is_zero():
                continue
            homogeneous, _ = g.is_homogeneous()
            if not homogeneous:
                raise HomogeneityError(
                    f"generator {idx} ({g}) is not homogeneous; this engine "
                    f"restricts ideals to homogeneous generators")
            gens.append(g)
        self.ring = ring_ctx
        self.generators = tuple(gens)
        self._gb: dict = {}
        self._minimal = None
        self._powers: dict = {}
        self._mlevel: dict = {}

    def is_zero(self) -> bool:
        return not self.generators

    def groebner_basis(self, order: MonomialOrder | None = None) -> GroebnerBasis:
        order = order or self.ring.order
        gb = self._gb.get(order)
        if gb is None:
            if self.generators:
                gb = buchberger(self.generators, order)
            else:
                gb = GroebnerBasis(self.ring, order, ())
            self._gb.setdefault(order, gb)
            gb = self._gb[order]
        return gb

    def any_groebner_basis(self) -> GroebnerBasis:
        """Whatever reduced basis is cached, else the default-order one.

        Membership questions are order-independent, so any basis serves.
        """
        if self._gb:
            return next(iter(self._gb.values()))
        return self.groebner_basis()

    def __repr__(self):
        shown = ", ".join(str(g) for g in self.generators[:4])
        if len(self.generators) > 4:
            shown += f", ... ({len(self.generators)} generators)"
        return f"Ideal({shown})"


def ideal_member(f: Polynomial, ideal: Ideal) -> bool:
    """Exact membership test via normal form against a reduced basis."""
    if f.ring != ideal.ring:
        raise RingMismatchError("polynomial and ideal rings differ")
    if f.is_zero():
        return True
    if ideal.is_zero():
        return False
    return ideal.any_groebner_basis().reduces_to_zero(f)


def ideal_contains(big: Ideal, small: Ideal) -> bool:
    """True when every generator of `small` lies in `big`."""
    if big.ring != small.ring:
        raise RingMismatchError("ideals live in different rings")
    return all(ideal_member(g, big) for g in small.generators)


def ideal_equal(left: Ideal, right: Ideal) -> bool:
    """Ideal equality via identical reduced bases under the ring order."""
    if left.ring != right.ring:
        raise RingMismatchError("ideals live in different rings")
    order = left.ring.order
    return (left.groebner_basis(order).elements
            == right.groebner_basis(order).elements)


def krull_dimension(ideal: Ideal) -> int:
    """Dimension of the quotient ring, from leading-term combinatorics.

    The dimension equals the largest size of a variable subset touched
    by no leading monomial of the reduced basis.  The unit ideal has no
    such subset at all (the constant leading monomial has empty support)
    and reports -1 by convention.
    """
    n = ideal.ring.nvars
    if ideal.is_zero():
        return n
    gb = ideal.groebner_basis()
    supports = []
    for g in gb.elements:
        lm = g.leading_monomial(gb.order)
        supports.append(frozenset(i for i, e in enumerate(lm) if e))
    for size in range(n, -1, -1):
        for subset in combinations(range(n), size):
            chosen = set(subset)
            if all(not support <= chosen for support in supports):
                return size
    return -1


def truncated_membership_oracle(f: Polynomial, gens: Sequence[Polynomial],
                                degree_bound: int) -> bool:
    """Membership for homogeneous f decided by pure linear algebra.

    Homogeneous ideals are degree-graded, so f of degree d lies in the
    ideal exactly when it sits in the span of {monomial * generator}
    products of degree d.  Completely independent of the division route;
    only valid up to the stated degree bound.
    """
    homogeneous, deg = f.is_homogeneous()
    if not homogeneous:
        raise HomogeneityError("oracle input must be homogeneous")
    if f.is_zero():
        return True
    if deg > degree_bound:
        raise ValueError(f"degree {deg} exceeds the oracle bound {degree_bound}")
    if not gens:
        return False
    span = linalg.degree_span(tuple(gens), deg)
    return span.contains(dict(f.terms))
