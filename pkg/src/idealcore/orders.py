"""Monomial orders on exponent vectors.

Every order is total, multiplicative and a well-order (the constant
monomial is minimal), so Buchberger's algorithm terminates under any of
them.  Orders compare via `key`, which maps an exponent tuple to a flat
integer tuple; bigger key means bigger monomial.
"""

from __future__ import annotations

from dataclasses import dataclass


def _degrevlex_key(exps) -> tuple:
    # Total degree first; ties broken by the smallest exponent of the
    # last differing variable, hence the reversed negated tail.
    return (sum(exps), *(-e for e in reversed(exps)))


@dataclass(frozen=True)
class MonomialOrder:
    """A total order on monomials: degrevlex, lex, or block elimination.

    Block elimination with parameter k compares the first k exponents by
    degrevlex before the remaining ones (also by degrevlex), which makes
    it an elimination order for the first k variables.
    """

    kind: str
    block: int = 0

    def key(self, exps) -> tuple:
        """Sort key for an exponent tuple; ascending key = ascending monomial."""
        if self.kind == "degrevlex":
            return _degrevlex_key(exps)
        if self.kind == "lex":
            return tuple(exps)
        k = self.block
        return _degrevlex_key(exps[:k]) + _degrevlex_key(exps[k:])

    def __str__(self) -> str:
        if self.kind == "block":
            return f"block({self.block})"
        return self.kind


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")


def block_elimination(k: int) -> MonomialOrder:
    """Order eliminating the first k ring variables."""
    if k < 1:
        raise ValueError("block size must be at least 1")
    return MonomialOrder("block", k)
