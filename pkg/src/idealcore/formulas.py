"""Closed-form core predictions for general-forms-plus-power ideals.

The test family: I = (f_1, ..., f_s) + m^(d+1) in n variables, with the
f_i general forms of degree d and 1 <= s < n forming a complete
intersection.  The predicted core is m^a * I^b with

    b = floor((d*n - s + 1) / (d + 1)),    a = d*n - s + 1 - (d+1)*b.

For d = 1 this prediction is a proved closed form (it equals
m^(n-s+1-2*floor((n-s+1)/2)) * I^(floor((n-s+1)/2))); for d >= 2 it is
an open conjecture which the engine probes instance by instance.
"""

from __future__ import annotations

import random

from .errors import ReductionSearchError
from .groebner import Ideal, krull_dimension
from .ideal_ops import ideal_power, ideal_product, ideal_sum, maximal_ideal_power
from .rings import RANDOM_COEFFICIENT_BOUND, RingContext, ring
from . import linalg

_RETRY_STRIDE = 1_000_003


def _validate(n: int, s: int, d: int):
    if n < 2:
        raise ValueError("need at least two variables")
    if not 1 <= s < n:
        raise ValueError("the form count must satisfy 1 <= s < n")
    if d < 1:
        raise ValueError("the form degree must be at least 1")


def conjectured_core_exponents(n: int, s: int, d: int) -> tuple[int, int]:
    """(a, b) with conjectured core(I) = m^a * I^b."""
    _validate(n, s, d)
    total = d * n - s + 1
    b = total // (d + 1)
    a = total - (d + 1) * b
    return a, b


def d1_closed_form_exponents(n: int, s: int) -> tuple[int, int]:
    """(a, b) from the proved linear-forms (d = 1) closed form."""
    _validate(n, s, 1)
    total = n - s + 1
    b = total // 2
    return total - 2 * b, b


def conjecture_ring(n: int, char: int = 0) -> RingContext:
    """Ring k[x1..xn] used by the construction helpers."""
    return ring(tuple(f"x{i + 1}" for i in range(n)), char=char)


def explicit_counterexample_forms(ring_ctx: RingContext) -> tuple:
    """The three fixed quadrics x1^2+x2*x4, x2^2+x3*x4, x3^2+x1*x4.

    Only meaningful for (n, s, d) = (4, 3, 2); used to pin the probe to
    the known counterexample instance instead of random forms.
    """
    if ring_ctx.nvars != 4:
        raise ValueError("the explicit forms need a four-variable ring")
    v = [ring_ctx.variable(i) for i in range(4)]
    return (v[0] * v[0] + v[1] * v[3],
            v[1] * v[1] + v[2] * v[3],
            v[2] * v[2] + v[0] * v[3])


def build_conjecture_ideal(n: int, s: int, d: int, seed: int, char: int = 0,
                           forms: tuple | None = None,
                           retries: int = 5) -> tuple[Ideal, tuple]:
    """I = (s forms of degree d) + m^(d+1), with a verified CI check.

    Random forms draw every degree-d coefficient uniformly from
    [-99, 99]; the complete-intersection property (codimension s) is
    verified through the dimension engine and failed draws regenerate
    with fresh derived seeds.  Passing `forms` overrides the random
    draw (the fixed counterexample instance does this) but still gets
    verified.  Returns the ideal and the forms used.
    """
    _validate(n, s, d)
    ring_ctx = conjecture_ring(n, char)
    monomials = linalg.monomials_of_degree(n, d)
    attempts = retries if forms is None else 1
    last_dim = None
    for attempt in range(attempts):
        if forms is None:
            rng = random.Random(seed * _RETRY_STRIDE + attempt)
            chosen = []
            for _ in range(s):
                mapping = {e: rng.randint(-RANDOM_COEFFICIENT_BOUND,
                                          RANDOM_COEFFICIENT_BOUND)
                           for e in monomials}
                chosen.append(ring_ctx.polynomial(mapping))
            if any(f.is_zero() for f in chosen):
                continue
        else:
            if any(f.ring != ring_ctx for f in forms):
                raise ValueError("explicit forms must live in the n-variable "
                                 "ring from conjecture_ring(n, char)")
            chosen = list(forms)
        forms_ideal = Ideal(ring_ctx, tuple(chosen))
        last_dim = krull_dimension(forms_ideal)
        if n - last_dim == s:
            full = ideal_sum(forms_ideal, maximal_ideal_power(ring_ctx, d + 1))
            return full, tuple(chosen)
    raise ReductionSearchError(
        f"forms failed the complete-intersection check after {attempts} draws "
        f"(last codimension {n - last_dim})")


def conjectured_core(n: int, s: int, d: int, ideal: Ideal) -> Ideal:
    """The predicted core m^a * I^b for an ideal built as above."""
    a, b = conjectured_core_exponents(n, s, d)
    power = ideal_power(ideal, b)
    if a == 0:
        return power
    return ideal_product(maximal_ideal_power(ideal.ring, a), power)
