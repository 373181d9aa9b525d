"""Expansion of the action map on Schubert classes.

A class indexed by w expands as the sum of (pullback of the left factor)
tensor (class of the right factor) over all length-additive factorizations
w = u * v.  Left factors with vanishing pullback contribute nothing, so the
sum only visits the labeled nonzero classes of each degree.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .pullback import CalibrationError, LabeledFamily, SignedMonomial

__all__ = ["ExpansionTerm", "ComoduleExpansion", "comodule_expansion", "coproduct_coefficient"]


class ExpansionTerm(NamedTuple):
    coeff: int
    monomial: tuple[tuple[int, int], ...]
    v: "WeylElement"  # noqa: F821


@dataclass
class ComoduleExpansion:
    w: "WeylElement"  # noqa: F821
    p: int
    terms: list[ExpansionTerm]

    def coefficient(self, monomial, v) -> int:
        for t in self.terms:
            if t.monomial == monomial and t.v == v:
                return t.coeff
        return 0


def comodule_expansion(w, family: LabeledFamily) -> ComoduleExpansion:
    """All terms of the expansion of the class of w, zero coefficients dropped."""
    if not family.covered:
        raise CalibrationError(
            f"no known presentation for {family.group.system.type} mod {family.p}; "
            "comodule labels unavailable"
        )
    group = family.group
    p = family.p
    lw = group.length(w)
    strata = group.strata_up_to(lw)
    acc: dict[tuple, list] = {}
    for j in range(lw + 1):
        pairs = family.nonzero_by_length(j)
        if not pairs:
            continue
        target = strata[lw - j]
        for u, su in pairs:
            pos = target.index_of.get((u.inverse.matrix @ w.matrix).tobytes())
            if pos is None:
                continue
            v = target.elements[pos]
            key = (su.degree, su.factors, lw - j, pos)
            slot = acc.get(key)
            if slot is None:
                acc[key] = [su.coeff % p, su.factors, v]
            else:
                slot[0] = (slot[0] + su.coeff) % p
    terms = [
        ExpansionTerm(c, factors, v)
        for (_, _, _, _), (c, factors, v) in sorted(acc.items())
        if c
    ]
    return ComoduleExpansion(w=w, p=p, terms=terms)


def coproduct_coefficient(w, left: SignedMonomial, right: SignedMonomial, family: LabeledFamily) -> int:
    """Signed count of factorizations of w matching (left, right) labels.

    Computes the coefficient of left (x) right in the image of the class of w
    under the composite of both pullbacks; the result is normalized by the
    signs of the requested monomials, so asking for (x8, x8) on a class
    mapping to x8^2 yields 2.
    """
    group = family.group
    p = family.p
    lw = group.length(w)
    j = left.degree // 2
    jr = right.degree // 2
    if left.degree % 2 or right.degree % 2 or j + jr != lw:
        raise ValueError("monomial degrees must be even and add up to the degree of w")
    right_ld = family.degree(right.degree)
    target = group.stratum(jr)
    total = 0
    for u, su in family.nonzero_by_length(j):
        if su.factors != left.factors:
            continue
        pos = target.index_of.get((u.inverse.matrix @ w.matrix).tobytes())
        if pos is None:
            continue
        sv = right_ld.label_at(pos)
        if sv.factors == right.factors:
            total = (total + su.coeff * sv.coeff) % p
    norm = pow(left.coeff * right.coeff % p, -1, p)
    return total * norm % p
