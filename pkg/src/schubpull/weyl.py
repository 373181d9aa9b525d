"""Weyl-group elements, length strata, reduced words and factorizations.

Elements are kept in canonical form as integer matrices acting on simple-root
coordinates (column j is the image of alpha_j), so equality of group elements
is equality of matrices regardless of which words produced them.  Strata are
enumerated breadth-first by length and never materialize the full group.
"""
from __future__ import annotations

from typing import Iterable, NamedTuple

import numpy as np

from .cartan import CartanType, RootSystem, build_root_system

__all__ = [
    "WeylElement",
    "LengthStratum",
    "Factorization",
    "WeylGroup",
    "parse_word_text",
    "poincare_coefficients",
]


class WeylElement:
    """A group element in canonical matrix form."""

    __slots__ = ("matrix", "key", "_word", "_inv")

    def __init__(self, matrix: np.ndarray, word: tuple[int, ...] | None = None):
        matrix = np.asarray(matrix, dtype=np.int64)
        matrix.setflags(write=False)
        self.matrix = matrix
        self.key = matrix.tobytes()
        self._word = word
        self._inv = None

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(self.matrix @ other.matrix)

    @property
    def inverse(self) -> "WeylElement":
        if self._inv is None:
            n = self.matrix.shape[0]
            inv = np.rint(np.linalg.inv(self.matrix)).astype(np.int64)
            if not np.array_equal(self.matrix @ inv, np.eye(n, dtype=np.int64)):
                raise RuntimeError("element matrix is not invertible over the integers")
            self._inv = WeylElement(inv)
            self._inv._inv = self
        return self._inv

    @property
    def word(self) -> tuple[int, ...] | None:
        """Lex-minimal reduced word, when already computed."""
        return self._word

    def __repr__(self):
        if self._word is not None:
            return "s" + "".join(str(i) for i in self._word) if self._word else "e"
        return f"WeylElement({self.matrix.tolist()})"


class LengthStratum:
    """All elements of one length, in lex-minimal reduced word order."""

    __slots__ = ("length", "elements", "index_of")

    def __init__(self, length: int, elements: list[WeylElement]):
        self.length = length
        self.elements = elements
        self.index_of = {w.key: i for i, w in enumerate(elements)}

    def position(self, w: WeylElement) -> int:
        return self.index_of[w.key]

    def __contains__(self, w):
        return isinstance(w, WeylElement) and w.key in self.index_of

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


class Factorization(NamedTuple):
    """A length-additive factorization u * v of some element."""

    u: WeylElement
    v: WeylElement


class WeylGroup:
    """Weyl group of a root system, with stratified enumeration by length."""

    def __init__(self, system):
        if not isinstance(system, RootSystem):
            system = build_root_system(system)
        self.system = system
        self.rank = system.rank
        n = self.rank
        eye = np.eye(n, dtype=np.int64)
        self.identity = WeylElement(eye, word=())
        self.simple = [
            WeylElement(system.reflection_matrix(tuple(int(v) for v in eye[i])), word=(i + 1,))
            for i in range(n)
        ]
        self._strata: list[LengthStratum] = [LengthStratum(0, [self.identity])]
        self._reflections: dict[tuple[int, ...], WeylElement] | None = None

    @property
    def longest_length(self) -> int:
        return self.system.num_positive_roots

    # -- basic operations ----------------------------------------------

    def simple_reflection(self, i: int) -> WeylElement:
        self.system._check_index(i)
        return self.simple[i - 1]

    def reflection_for_root(self, beta) -> WeylElement:
        """The reflection s_beta, an involution sending beta to -beta."""
        if self._reflections is None:
            self._reflections = {
                b: WeylElement(self.system.reflection_matrix(b))
                for b in self.system.positive_roots
            }
        t = tuple(int(v) for v in beta)
        if t not in self._reflections:
            raise ValueError(f"{t} is not a positive root of {self.system.type}")
        return self._reflections[t]

    def length(self, w: WeylElement) -> int:
        """Number of positive roots sent to negative roots."""
        images = w.matrix @ self.system._posmat
        return int(np.count_nonzero((images < 0).any(axis=0)))

    def parse_word(self, letters: Iterable[int]) -> WeylElement:
        """Multiply simple reflections left to right; the word need not be reduced."""
        m = self.identity.matrix
        for i in letters:
            self.system._check_index(int(i))
            m = m @ self.simple[int(i) - 1].matrix
        w = WeylElement(m)
        cached = self._lookup(w)
        return cached if cached is not None else w

    def _lookup(self, w: WeylElement) -> WeylElement | None:
        for stratum in self._strata:
            pos = stratum.index_of.get(w.key)
            if pos is not None:
                return stratum.elements[pos]
        return None

    def minimal_word(self, w: WeylElement) -> tuple[int, ...]:
        """Lexicographically least reduced word, by greedy left-descent removal."""
        if w._word is not None:
            return w._word
        word = []
        inv = w.inverse.matrix
        while True:
            neg = np.flatnonzero((inv < 0).any(axis=0))
            if len(neg) == 0:
                break
            i = int(neg[0])  # smallest left descent
            word.append(i + 1)
            inv = inv @ self.simple[i].matrix  # (s_i w)^{-1} = w^{-1} s_i
        w._word = tuple(word)
        return w._word

    # -- enumeration -----------------------------------------------------

    def strata_up_to(self, max_length: int) -> list[LengthStratum]:
        """Strata of lengths 0..max_length, computed once and cached.

        Expansion is breadth-first under right multiplication by simple
        reflections, accepting w*s_i exactly when it gains an inversion and
        deduplicating on canonical matrices.  Each element keeps the least
        word over all the expansions that reached it, which is its
        lex-minimal reduced word; strata are frozen in that order.
        """
        if not 0 <= max_length <= self.longest_length:
            raise ValueError(
                f"length {max_length} outside 0..{self.longest_length} for {self.system.type}"
            )
        while len(self._strata) <= max_length:
            k = len(self._strata) - 1
            frontier: dict[bytes, tuple[np.ndarray, tuple[int, ...]]] = {}
            for w in self._strata[k].elements:
                m = w.matrix
                for i in range(self.rank):
                    if (m[:, i] >= 0).all():  # ascent: w(alpha_i) stays positive
                        m2 = m @ self.simple[i].matrix
                        cand = w._word + (i + 1,)
                        old = frontier.get(m2.tobytes())
                        if old is None or cand < old[1]:
                            frontier[m2.tobytes()] = (m2, cand)
            elems = [
                WeylElement(m, word=word)
                for m, word in sorted(frontier.values(), key=lambda t: t[1])
            ]
            self._strata.append(LengthStratum(k + 1, elems))
        return self._strata[: max_length + 1]

    def stratum(self, k: int) -> LengthStratum:
        return self.strata_up_to(k)[k]

    # -- factorizations ----------------------------------------------------

    def factorizations(self, w: WeylElement) -> list[Factorization]:
        """All ordered pairs (u, v) with u*v = w and lengths adding up."""
        lw = self.length(w)
        strata = self.strata_up_to(lw)
        out = []
        for j in range(lw + 1):
            target = strata[lw - j]
            for u in strata[j].elements:
                vmat = u.inverse.matrix @ w.matrix
                pos = target.index_of.get(vmat.tobytes())
                if pos is not None:
                    out.append(Factorization(u, target.elements[pos]))
        return out


def parse_word_text(text: str) -> tuple[int, ...]:
    """Parse "4 3 2 1" or "4,3,2,1" into a word; empty text is the identity."""
    parts = text.replace(",", " ").split()
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise ValueError(f"cannot parse word from {text!r}") from None


def poincare_coefficients(system: RootSystem) -> list[int]:
    """Coefficients of prod_i (1 + q + ... + q^{e_i}) over the exponents.

    Entry k counts the Weyl-group elements of length k.
    """
    poly = [1]
    for e in system.exponents:
        out = [0] * (len(poly) + e)
        for i, c in enumerate(poly):
            for j in range(e + 1):
                out[i + j] += c
        poly = out
    return poly
