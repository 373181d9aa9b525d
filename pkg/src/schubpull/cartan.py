"""Root-system data for the simple Cartan types.

All roots and weights live in simple-root coordinates: a root is an integer
vector of coefficients in the basis alpha_1..alpha_n, a weight a rational one.
The invariant bilinear form is normalized so that short roots have squared
length 2; with this choice every coroot pairing used downstream is a small
integer and no ambient Euclidean realization is needed.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

__all__ = [
    "CartanType",
    "RootSystem",
    "build_root_system",
]

_RANK_RULES = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 3,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


@dataclass(frozen=True)
class CartanType:
    """A simple Cartan type, e.g. CartanType("F", 4)."""

    family: str
    rank: int

    def __post_init__(self):
        rule = _RANK_RULES.get(self.family)
        if rule is None or not isinstance(self.rank, int) or not rule(self.rank):
            raise ValueError(f"invalid Cartan type {self.family}{self.rank}")

    @classmethod
    def parse(cls, text: str) -> "CartanType":
        """Parse a label such as "G2", "E7" or "A 3"."""
        t = text.strip().replace(" ", "").replace("_", "")
        if len(t) < 2 or t[0].upper() not in _RANK_RULES or not t[1:].isdigit():
            raise ValueError(f"cannot parse Cartan type from {text!r}")
        return cls(t[0].upper(), int(t[1:]))

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


def _dynkin_data(ctype: CartanType):
    """Node norms (alpha_i, alpha_i) and edge list, nodes 1-based.

    Labeling follows the usual plates: chains are numbered along the diagram,
    the short end of B is node n, the long end of C is node n, F4 has long
    nodes 1,2 and short nodes 3,4, G2 has short node 1 and long node 2, and
    the E-series branch node is 2, attached to node 4.
    """
    n = ctype.rank
    fam = ctype.family
    path = [(i, i + 1) for i in range(1, n)]
    if fam == "A":
        return [2] * n, path
    if fam == "B":
        return [4] * (n - 1) + [2], path
    if fam == "C":
        return [2] * (n - 1) + [4], path
    if fam == "D":
        return [2] * n, [(i, i + 1) for i in range(1, n - 1)] + [(n - 2, n)]
    if fam == "E":
        chain = [(1, 3)] + [(i, i + 1) for i in range(3, n)]
        return [2] * n, chain + [(2, 4)]
    if fam == "F":
        return [4, 4, 2, 2], path
    return [2, 6], path  # G2


class RootSystem:
    """Positive roots, fundamental weights and coroot pairings of one type.

    Immutable after construction; instances are shared via
    :func:`build_root_system` and safe for concurrent reads.
    """

    def __init__(self, ctype: CartanType):
        self.type = ctype
        n = ctype.rank
        norms, edges = _dynkin_data(ctype)
        sym = np.zeros((n, n), dtype=np.int64)
        for i, d in enumerate(norms):
            sym[i, i] = d
        for i, j in edges:
            v = -max(norms[i - 1], norms[j - 1]) // 2
            sym[i - 1, j - 1] = v
            sym[j - 1, i - 1] = v
        self.sym = sym
        self.sym.setflags(write=False)
        self.rank = n

        # gcm[i, j] = <alpha_i^vee, alpha_j>; rows are exactly divisible.
        self.gcm = (2 * sym) // np.diag(sym)[:, None]
        self.gcm.setflags(write=False)
        # Convention used throughout: cartan_matrix[i, j] = <alpha_j^vee, alpha_i>.
        self.cartan_matrix = self.gcm.T.copy()
        self.cartan_matrix.setflags(write=False)
        self.symmetrizer = tuple(Fraction(int(sym[j, j]), 2) for j in range(n))

        self.positive_roots = self._close_positive_roots()
        self.root_index = {r: i for i, r in enumerate(self.positive_roots)}
        self._posmat = np.array(self.positive_roots, dtype=np.int64).T
        self._posmat.setflags(write=False)

        self.fundamental_weights = self._solve_fundamental_weights()
        self.exponents = self._exponents_from_heights()
        self._refl_cache: dict[tuple[int, ...], np.ndarray] = {}

    # -- construction -------------------------------------------------

    def _close_positive_roots(self):
        n = self.rank
        gcm = self.gcm
        simple = [tuple(int(v) for v in np.eye(n, dtype=np.int64)[i]) for i in range(n)]
        seen = set(simple)
        frontier = list(simple)
        while frontier:
            new = []
            for c in frontier:
                cv = np.array(c, dtype=np.int64)
                for i in range(n):
                    r = cv.copy()
                    r[i] -= int(gcm[i] @ cv)  # s_i(c)
                    if (r >= 0).all():
                        t = tuple(int(v) for v in r)
                        if t not in seen:
                            seen.add(t)
                            new.append(t)
            frontier = new
        return sorted(seen, key=lambda c: (sum(c), c))

    def _solve_fundamental_weights(self):
        # omega_i = sum_k m_k alpha_k with sum_k gcm[j, k] m_k = delta_ij,
        # solved exactly over the rationals.
        n = self.rank
        aug = [
            [Fraction(int(self.gcm[i, j])) for j in range(n)]
            + [Fraction(int(i == j)) for j in range(n)]
            for i in range(n)
        ]
        for c in range(n):
            r = next(r for r in range(c, n) if aug[r][c] != 0)
            aug[c], aug[r] = aug[r], aug[c]
            pv = aug[c][c]
            aug[c] = [x / pv for x in aug[c]]
            for r in range(n):
                if r != c and aug[r][c] != 0:
                    f = aug[r][c]
                    aug[r] = [a - f * b for a, b in zip(aug[r], aug[c])]
        return [tuple(aug[k][n + i] for k in range(n)) for i in range(n)]

    def _exponents_from_heights(self):
        # Conjugate partition of the height distribution of positive roots.
        heights = [sum(r) for r in self.positive_roots]
        counts = [heights.count(h) for h in range(1, max(heights) + 1)]
        exps = []
        m = 1
        while True:
            e = sum(1 for c in counts if c >= m)
            if e == 0:
                break
            exps.append(e)
            m += 1
        return tuple(sorted(exps))

    # -- pairings ------------------------------------------------------

    def _check_root(self, beta) -> tuple[int, ...]:
        t = tuple(int(v) for v in beta)
        if t not in self.root_index:
            raise ValueError(f"{t} is not a positive root of {self.type}")
        return t

    def _norm2(self, beta) -> int:
        b = np.array(beta, dtype=np.int64)
        return int(b @ self.sym @ b)

    def pair_with_root(self, beta, i: int) -> int:
        """<beta^vee, alpha_i> = 2 (beta, alpha_i) / (beta, beta)."""
        beta = self._check_root(beta)
        self._check_index(i)
        b = np.array(beta, dtype=np.int64)
        num = 2 * int(b @ self.sym[:, i - 1])
        den = self._norm2(beta)
        if num % den:
            raise RuntimeError(f"non-integral coroot pairing for {beta}, alpha_{i}")
        return num // den

    def pair_with_weight(self, beta, i: int) -> int:
        """<beta^vee, omega_i>, the coefficient of alpha_i^vee in beta^vee."""
        beta = self._check_root(beta)
        self._check_index(i)
        omega = self.fundamental_weights[i - 1]
        b = [Fraction(v) for v in beta]
        num = 2 * sum(
            b[r] * int(self.sym[r, c]) * omega[c]
            for r in range(self.rank)
            for c in range(self.rank)
        )
        val = num / self._norm2(beta)
        if val.denominator != 1:
            raise RuntimeError(f"non-integral weight pairing for {beta}, omega_{i}")
        return int(val)

    def _check_index(self, i: int):
        if not 1 <= i <= self.rank:
            raise ValueError(f"generator index {i} out of range 1..{self.rank}")

    def reflection_matrix(self, beta) -> np.ndarray:
        """Action matrix of the reflection in the hyperplane orthogonal to beta."""
        beta = self._check_root(beta)
        cached = self._refl_cache.get(beta)
        if cached is not None:
            return cached
        n = self.rank
        b = np.array(beta, dtype=np.int64)
        den = self._norm2(beta)
        pair = 2 * (b @ self.sym)  # 2 (beta, alpha_j), columnwise
        if (pair % den).any():
            raise RuntimeError(f"non-integral reflection for {beta}")
        m = np.eye(n, dtype=np.int64) - np.outer(b, pair // den)
        m.setflags(write=False)
        self._refl_cache[beta] = m
        return m

    @property
    def num_positive_roots(self) -> int:
        return len(self.positive_roots)

    def __repr__(self):
        return f"RootSystem({self.type})"


@lru_cache(maxsize=None)
def _cached_system(family: str, rank: int) -> RootSystem:
    return RootSystem(CartanType(family, rank))


def build_root_system(ctype) -> RootSystem:
    """Root system for a Cartan type given as CartanType, "F4", or (family, rank)."""
    if isinstance(ctype, str):
        ctype = CartanType.parse(ctype)
    elif isinstance(ctype, tuple):
        ctype = CartanType(*ctype)
    return _cached_system(ctype.family, ctype.rank)
