"""Degree-graded exact linear algebra on homogeneous slices.

A homogeneous ideal is graded, so its degree-d piece is the span of
monomial multiples of its generators, and membership of a degree-d form
is a rank question.  Everything here is plain row reduction over the
coefficient field, deliberately independent of the division/Groebner
route so it can serve as a cross-check oracle for it.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import HomogeneityError


def monomials_of_degree(nvars: int, degree: int) -> tuple:
    """All exponent tuples of the given total degree, in a fixed order."""
    if nvars == 1:
        return ((degree,),)
    out = []
    for lead in range(degree, -1, -1):
        for rest in monomials_of_degree(nvars - 1, degree - lead):
            out.append((lead,) + rest)
    return tuple(out)


class HomogeneousSpan:
    """Incremental echelon basis of a subspace of one graded slice.

    Rows are sparse {monomial: coefficient} dicts; each stored row is
    normalized so its pivot (largest monomial under `order`) has
    coefficient one.
    """

    def __init__(self, field, order):
        self.field = field
        self.order = order
        self._pivots: dict = {}

    @property
    def dimension(self) -> int:
        return len(self._pivots)

    def _residual(self, row: dict) -> dict:
        row = dict(row)
        fld = self.field
        key = self.order.key
        while row:
            target = None
            target_key = None
            for mono in row:
                if mono in self._pivots:
                    k = key(mono)
                    if target is None or k > target_key:
                        target, target_key = mono, k
            if target is None:
                break
            c = row[target]
            for mono, pc in self._pivots[target].items():
                v = fld.sub(row.get(mono, fld.zero), fld.mul(c, pc))
                if v:
                    row[mono] = v
                else:
                    row.pop(mono, None)
        return row

    def add(self, row: dict) -> bool:
        """Insert a row; True if it enlarged the span."""
        res = self._residual(row)
        if not res:
            return False
        pivot = max(res, key=self.order.key)
        inv = self.field.invert(res[pivot])
        self._pivots[pivot] = {m: self.field.mul(c, inv) for m, c in res.items()}
        return True

    def contains(self, row: dict) -> bool:
        return not self._residual(row)


def shifted_row(poly, shift: tuple) -> dict:
    """Row for monomial * poly, as a sparse vector over the target slice."""
    return {tuple(a + b for a, b in zip(e, shift)): c for e, c in poly.terms}


def degree_span(generators: tuple, degree: int) -> HomogeneousSpan:
    """Span of the degree-`degree` slice of the ideal the generators generate.

    Generators must be homogeneous; results are cached per (generators,
    degree) because oracle workloads probe the same slice repeatedly.
    """
    return _degree_span_cached(tuple(generators), degree)


@lru_cache(maxsize=None)
def _degree_span_cached(generators: tuple, degree: int) -> HomogeneousSpan:
    ring = generators[0].ring
    span = HomogeneousSpan(ring.field, ring.order)
    for g in generators:
        homogeneous, gdeg = g.is_homogeneous()
        if not homogeneous:
            raise HomogeneityError(f"generator {g} is not homogeneous")
        if gdeg is None or gdeg > degree:
            continue
        for shift in monomials_of_degree(ring.nvars, degree - gdeg):
            span.add(shifted_row(g, shift))
    return span
