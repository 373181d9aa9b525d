"""Exact dense linear algebra over a prime field F_p.

Row reduction processes rows in chunks: each chunk is first cleared against
the accumulated echelon basis with a single matrix product (exact, since all
intermediate values stay far below 2**53), then echelonized by vectorized row
operations.  The result is the reduced row echelon form of the input span,
which is canonical, so the outcome does not depend on the chunk size.
"""
from __future__ import annotations

import numpy as np

__all__ = ["is_prime", "row_reduce", "QuotientSpace"]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    # residues < p <= 2**15 and inner dimension < 2**22 keep the float64
    # products exact
    prod = np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
    return prod % p


def row_reduce(rows, p: int, chunk: int = 512):
    """Reduced row echelon form over F_p.

    Returns (basis, pivot_columns): basis rows have unit pivots and zeros in
    every other pivot column, sorted by pivot column.
    """
    if not is_prime(p):
        raise ValueError(f"modulus {p} is not prime")
    rows = np.asarray(rows, dtype=np.int64)
    if rows.ndim != 2:
        raise ValueError("expected a 2-d array of rows")
    m, n = rows.shape
    basis = np.zeros((0, n), dtype=np.int64)
    piv: list[int] = []
    for lo in range(0, m, chunk):
        c = rows[lo : lo + chunk] % p
        if piv:
            c = (c - _matmul_mod(c[:, piv], basis, p)) % p
        used = np.zeros(len(c), dtype=bool)
        new_piv: list[int] = []
        new_rows: list[int] = []
        for col in range(n):
            nz = np.flatnonzero((c[:, col] != 0) & ~used)
            if len(nz) == 0:
                continue
            r = int(nz[0])
            used[r] = True
            c[r] = (c[r] * pow(int(c[r, col]), -1, p)) % p
            f = c[:, col].copy()
            f[r] = 0
            hit = np.flatnonzero(f)
            if len(hit):
                c[hit] = (c[hit] - np.outer(f[hit], c[r])) % p
            new_piv.append(col)
            new_rows.append(r)
        if new_piv:
            ech = c[new_rows]
            if piv:
                basis = (basis - _matmul_mod(basis[:, new_piv], ech, p)) % p
            merged = list(zip(piv, basis)) + list(zip(new_piv, ech))
            merged.sort(key=lambda t: t[0])
            piv = [t[0] for t in merged]
            basis = np.array([t[1] for t in merged], dtype=np.int64)
    return basis, piv


class QuotientSpace:
    """An F_p vector-space quotient with projection and section maps.

    Quotient coordinates are the free (non-pivot) columns of the relation
    span after elimination.
    """

    def __init__(self, p: int, ambient_dim: int, relation_basis: np.ndarray, pivot_columns):
        self.p = p
        self.ambient_dim = ambient_dim
        self.relation_basis = relation_basis
        self.pivot_columns = list(pivot_columns)
        pivset = set(self.pivot_columns)
        self.free_columns = [c for c in range(ambient_dim) if c not in pivset]
        self.dim = len(self.free_columns)

    @classmethod
    def from_relations(cls, ambient_dim: int, relations, p: int) -> "QuotientSpace":
        relations = np.asarray(relations, dtype=np.int64)
        if relations.size == 0:
            relations = relations.reshape(0, ambient_dim)
        if relations.shape[1] != ambient_dim:
            raise ValueError("relation length does not match ambient dimension")
        basis, piv = row_reduce(relations, p)
        return cls(p, ambient_dim, basis, piv)

    def _check(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=np.int64) % self.p
        if v.shape[-1] != self.ambient_dim:
            raise ValueError(
                f"vector length {v.shape[-1]} does not match ambient {self.ambient_dim}"
            )
        return v

    def project(self, v) -> np.ndarray:
        """Quotient coordinates of an ambient vector (or a batch of them)."""
        v = self._check(v)
        out = v[..., self.free_columns]
        if self.pivot_columns:
            out = (out - _matmul_mod(
                v[..., self.pivot_columns],
                self.relation_basis[:, self.free_columns],
                self.p,
            )) % self.p
        return out

    def lift(self, q) -> np.ndarray:
        """A section of project: embed quotient coordinates on the free columns."""
        q = np.asarray(q, dtype=np.int64) % self.p
        if q.shape[-1] != self.dim:
            raise ValueError(f"vector length {q.shape[-1]} does not match quotient {self.dim}")
        out = np.zeros(q.shape[:-1] + (self.ambient_dim,), dtype=np.int64)
        out[..., self.free_columns] = q
        return out

    def __repr__(self):
        return f"QuotientSpace(p={self.p}, ambient={self.ambient_dim}, dim={self.dim})"
