"""Classification of Schubert-class pullbacks along the projection to the group.

For word length k the degree-2k relations are built from the rule

    x cup [S_u]  =  sum <beta^vee, x> [S_{u s_beta}]

summed over positive roots beta with l(u s_beta) = l(u) + 1, where x runs over
the simple roots (adjoint lattice) or the fundamental weights (simply
connected).  The span of these rows is the degree-2k part of the kernel ideal;
classes are classified by their image in the quotient and, where the known
presentation of the target ring pins the degree down to a single monomial,
quotient values are converted into labeled monomials.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .cartan import CartanType, build_root_system
from .fplinalg import QuotientSpace, is_prime
from .weyl import LengthStratum, WeylElement, WeylGroup

__all__ = [
    "PullbackProblem",
    "RelationMatrix",
    "ClassificationResult",
    "SignedMonomial",
    "LabeledDegree",
    "LabeledFamily",
    "CalibrationError",
    "ConsistencyError",
    "build_relations",
    "classify",
    "calibrate",
    "kac_presentation",
    "expected_dims",
    "DEFAULT_ANCHORS",
]

TRIVIAL_CENTER = {"G2", "F4", "E8"}

LATTICES = ("adjoint", "simply_connected")

# Generator-anchoring convention: the image of this word is labeled +x_8.
DEFAULT_ANCHORS = {
    ("F", 4, 3): {8: (4, 3, 2, 1)},
    ("E", 6, 3): {8: (4, 3, 2, 1)},
    ("E", 7, 3): {8: (4, 3, 2, 1)},
}


class CalibrationError(RuntimeError):
    """Labels cannot be assigned (missing or degenerate anchor)."""


class ConsistencyError(RuntimeError):
    """Computed quotient disagrees with the known ring presentation."""


@dataclass(frozen=True)
class PullbackProblem:
    """One classification instance: type, prime, word length, lattice."""

    ctype: CartanType
    p: int
    k: int
    lattice: str = "adjoint"

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.k < 1:
            raise ValueError("word length k must be >= 1")
        if self.lattice not in LATTICES:
            raise ValueError(f"lattice must be one of {LATTICES}")
        if self.lattice == "simply_connected" and str(self.ctype) in TRIVIAL_CENTER:
            warnings.warn(
                f"{self.ctype} has trivial center; lattice flag ignored",
                stacklevel=2,
            )
            object.__setattr__(self, "lattice", "adjoint")

    @property
    def degree(self) -> int:
        return 2 * self.k


@dataclass
class RelationMatrix:
    """Degree-2k relation rows, one per (stratum k-1 element, generator)."""

    rows: np.ndarray
    row_labels: list[tuple[int, int]]
    columns: LengthStratum


def _p_adic_valuation(p: int, n: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def kac_presentation(ctype: CartanType, p: int, lattice: str = "adjoint"):
    """Known truncated-polynomial presentation of the mod-p Chow ring.

    Returns a tuple of (generator degree, truncation exponent) pairs, the
    empty tuple for a ring concentrated in degree 0, or None when the pair is
    not covered by the embedded table.  Type A is the adjoint group of n+1 by
    n+1 matrices, type C the adjoint symplectic group on 2n letters; their
    truncation exponent is the p-part of that matrix size.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if lattice not in LATTICES:
        raise ValueError(f"lattice must be one of {LATTICES}")
    fam, n = ctype.family, ctype.rank
    if str(ctype) in TRIVIAL_CENTER:
        lattice = "adjoint"
    if fam == "A" and lattice == "adjoint":
        return ((2, p ** _p_adic_valuation(p, n + 1)),)
    if fam == "C" and lattice == "adjoint" and p == 2:
        return ((2, 2 ** _p_adic_valuation(2, 2 * n)),)
    if fam == "G":
        return ((6, 2),) if p == 2 else None
    if fam == "F":
        if p == 2:
            return ((6, 2),)
        if p == 3:
            return ((8, 3),)
        return None
    if fam == "E" and n == 6:
        if p == 2:
            return ((6, 2),)
        if p == 3:
            if lattice == "simply_connected":
                return ((8, 3),)
            return ((2, 9), (8, 3))
        return None
    if fam == "E" and n == 7:
        if p == 2:
            gens = ((6, 2), (10, 2), (18, 2))
            return ((2, 2),) + gens if lattice == "adjoint" else gens
        if p == 3:
            return ((8, 3),)
        return None
    if fam == "E" and n == 8:
        if p == 2:
            return ((6, 8), (10, 4), (18, 2), (30, 2))
        if p == 3:
            return ((8, 3), (20, 3))
        if p == 5:
            return ((12, 5),)
        return None
    return None


def _graded_monomials(presentation) -> dict[int, list[tuple[tuple[int, int], ...]]]:
    """Monomial bases of the truncated polynomial algebra, by degree."""
    table: dict[int, list[tuple[tuple[int, int], ...]]] = {0: [()]}
    for d, trunc in presentation:
        new: dict[int, list] = {}
        for deg, monos in table.items():
            for e in range(trunc):
                for m in monos:
                    item = m + ((d, e),) if e else m
                    new.setdefault(deg + d * e, []).append(item)
        table = new
    return table


def expected_dims(ctype: CartanType, p: int, lattice: str = "adjoint"):
    """Graded dimensions of the known presentation; None when not covered."""
    pres = kac_presentation(ctype, p, lattice)
    if pres is None:
        return None
    return {deg: len(monos) for deg, monos in _graded_monomials(pres).items()}


def build_relations(problem: PullbackProblem, group: WeylGroup) -> RelationMatrix:
    """Relation rows for degree 2k, one per (u, generator index) pair."""
    sys = group.system
    k = problem.k
    strata = group.strata_up_to(k)
    below, columns = strata[k - 1], strata[k]
    n = sys.rank
    if problem.lattice == "adjoint":
        pair = sys.pair_with_root
    else:
        pair = sys.pair_with_weight
    pairings = np.array(
        [[pair(beta, i) % problem.p for i in range(1, n + 1)] for beta in sys.positive_roots],
        dtype=np.int64,
    )
    refl = [group.reflection_for_root(beta).matrix for beta in sys.positive_roots]
    rows = np.zeros((len(below) * n, len(columns)), dtype=np.int64)
    for a, u in enumerate(below.elements):
        mu = u.matrix
        for j, rm in enumerate(refl):
            pos = columns.index_of.get((mu @ rm).tobytes())
            if pos is not None:
                # at most one beta connects u to each column, so assignment
                # and accumulation agree
                rows[a * n : (a + 1) * n, pos] = pairings[j]
    labels = [(a, i) for a in range(len(below)) for i in range(1, n + 1)]
    return RelationMatrix(rows=rows, row_labels=labels, columns=columns)


class ClassificationResult:
    """Quotient of the degree-2k Schubert span by the relation span."""

    def __init__(self, problem, stratum, quotient, images, group):
        self.problem = problem
        self.stratum = stratum
        self.quotient = quotient
        self.images = images  # (len(stratum), quotient.dim) residues
        self.group = group

    def image_of(self, w: WeylElement) -> np.ndarray:
        return self.images[self.stratum.position(w)]

    def nonzero_positions(self) -> list[int]:
        return [i for i in range(len(self.stratum)) if self.images[i].any()]

    def value_partition(self) -> dict[tuple[int, ...], list[int]]:
        """Positions grouped by quotient value, nonzero values only."""
        out: dict[tuple[int, ...], list[int]] = {}
        for i in self.nonzero_positions():
            out.setdefault(tuple(int(x) for x in self.images[i]), []).append(i)
        return out


def classify(problem: PullbackProblem, group: WeylGroup | None = None) -> ClassificationResult:
    """Classify every class of degree 2k by its image in the quotient."""
    if group is None:
        group = WeylGroup(build_root_system(problem.ctype))
    if problem.k > group.longest_length:
        # no Schubert classes in this degree at all
        empty = LengthStratum(problem.k, [])
        quotient = QuotientSpace.from_relations(0, np.zeros((0, 0)), problem.p)
        return ClassificationResult(problem, empty, quotient, np.zeros((0, 0), np.int64), group)
    rel = build_relations(problem, group)
    ncols = len(rel.columns)
    quotient = QuotientSpace.from_relations(ncols, rel.rows, problem.p)
    if quotient.project(rel.rows).any():
        raise RuntimeError("relation rows do not project to zero")
    images = quotient.project(np.eye(ncols, dtype=np.int64))
    return ClassificationResult(problem, rel.columns, quotient, images, group)


@dataclass(frozen=True)
class SignedMonomial:
    """A scalar times a monomial in the ring generators; () is the unit."""

    coeff: int
    factors: tuple[tuple[int, int], ...] = ()

    @property
    def degree(self) -> int:
        return sum(d * e for d, e in self.factors)

    def is_zero(self) -> bool:
        return self.coeff == 0

    def label(self, p: int) -> str:
        if self.coeff == 0:
            return "0"
        body = "*".join(f"x{d}^{e}" for d, e in self.factors)
        if not body:
            return "1"
        if self.coeff == 1:
            return "+" + body
        if self.coeff == p - 1:
            return "-" + body
        return f"{self.coeff}*{body}"

    @classmethod
    def parse(cls, text: str, p: int) -> "SignedMonomial":
        t = text.strip()
        if t == "0":
            return cls(0)
        if t == "1":
            return cls(1)
        coeff = 1
        if t[0] == "+":
            t = t[1:]
        elif t[0] == "-":
            coeff = p - 1
            t = t[1:]
        parts = t.split("*")
        if parts and parts[0].isdigit():
            coeff = coeff * int(parts[0]) % p
            parts = parts[1:]
        factors = []
        for part in parts:
            if not part.startswith("x"):
                raise ValueError(f"bad monomial factor {part!r} in {text!r}")
            if "^" in part:
                d, e = part[1:].split("^")
            else:
                d, e = part[1:], "1"
            factors.append((int(d), int(e)))
        if coeff % p == 0:
            raise ValueError(f"coefficient vanishes mod {p} in {text!r}")
        return cls(coeff % p, tuple(sorted(factors)))


MONOMIAL_ONE = SignedMonomial(1, ())
MONOMIAL_ZERO = SignedMonomial(0, ())


class LabeledDegree:
    """Labels for one degree: a shared monomial and a scalar per element."""

    def __init__(self, degree, stratum, monomial, coeffs, result):
        self.degree = degree
        self.stratum = stratum
        self.monomial = monomial  # None when the degree could not be labeled
        self.coeffs = coeffs  # None exactly when monomial is None
        self.result = result  # raw classification, None for known-zero degrees

    @property
    def labeled(self) -> bool:
        return self.monomial is not None

    def label_at(self, pos: int) -> SignedMonomial:
        if not self.labeled:
            raise CalibrationError(f"degree {self.degree} carries unlabeled coordinates")
        c = int(self.coeffs[pos])
        return SignedMonomial(c, self.monomial) if c else MONOMIAL_ZERO

    def label_of(self, w: WeylElement) -> SignedMonomial:
        return self.label_at(self.stratum.position(w))

    def elements_with_label(self, sm: SignedMonomial) -> list[WeylElement]:
        if not self.labeled:
            raise CalibrationError(f"degree {self.degree} carries unlabeled coordinates")
        if sm.factors != self.monomial:
            return []
        return [
            self.stratum.elements[i]
            for i in np.flatnonzero(self.coeffs == sm.coeff)
        ]

    def nonzero(self) -> list[tuple[WeylElement, SignedMonomial]]:
        if not self.labeled:
            raise CalibrationError(f"degree {self.degree} carries unlabeled coordinates")
        return [
            (self.stratum.elements[i], SignedMonomial(int(c), self.monomial))
            for i, c in enumerate(self.coeffs)
            if c
        ]


class LabeledFamily:
    """Per-degree labeled classifications for one (type, prime, lattice).

    Degrees are classified lazily; degrees the presentation declares zero are
    answered without running the classifier.
    """

    def __init__(self, group, p: int, lattice: str = "adjoint", anchors=None):
        if isinstance(group, (CartanType, str)):
            group = WeylGroup(build_root_system(group))
        self.group = group
        self.p = p
        self.lattice = "adjoint" if str(group.system.type) in TRIVIAL_CENTER else lattice
        ctype = group.system.type
        self.presentation = kac_presentation(ctype, p, self.lattice)
        self.dims = expected_dims(ctype, p, self.lattice)
        if anchors is None:
            anchors = DEFAULT_ANCHORS.get((ctype.family, ctype.rank, p), {})
        self.anchors = dict(anchors)
        self._degrees: dict[int, LabeledDegree] = {}

    @property
    def covered(self) -> bool:
        return self.presentation is not None

    def degree(self, d: int) -> LabeledDegree:
        if d % 2 or d < 0:
            raise ValueError(f"degree must be a nonnegative even integer, got {d}")
        cached = self._degrees.get(d)
        if cached is not None:
            return cached
        k = d // 2
        if k == 0:
            stratum = self.group.stratum(0)
            ld = LabeledDegree(0, stratum, (), np.array([1]), None)
        elif self.covered and self.dims.get(d, 0) == 0:
            # the presentation rules the degree out; skip the classifier
            stratum = (
                self.group.stratum(k)
                if k <= self.group.longest_length
                else LengthStratum(k, [])
            )
            ld = LabeledDegree(d, stratum, (), np.zeros(len(stratum), np.int64), None)
        else:
            problem = PullbackProblem(self.group.system.type, self.p, k, self.lattice)
            result = classify(problem, self.group)
            ld = self._label(result)
        self._degrees[d] = ld
        return ld

    def _label(self, result: ClassificationResult) -> LabeledDegree:
        d = result.problem.degree
        stratum = result.stratum
        p = self.p
        if not self.covered:
            return LabeledDegree(d, stratum, None, None, result)
        exp = self.dims.get(d, 0)
        if result.quotient.dim != exp:
            raise ConsistencyError(
                f"{self.group.system.type} p={p} degree {d}: computed dimension "
                f"{result.quotient.dim}, presentation predicts {exp}"
            )
        if exp == 0:
            return LabeledDegree(d, stratum, (), np.zeros(len(stratum), np.int64), result)
        if exp > 1:
            return LabeledDegree(d, stratum, None, None, result)
        mono = _graded_monomials(self.presentation)[d][0]
        values = result.images[:, 0]
        if p == 2:
            return LabeledDegree(d, stratum, mono, values.astype(np.int64), result)
        if len(mono) > 1:
            # product of distinct generators: sign not determined by one degree
            return LabeledDegree(d, stratum, None, None, result)
        gen_deg, e = mono[0]
        if e == 1:
            scale = self._anchor_scale(gen_deg, result)
        else:
            scale = self._power_scale(gen_deg, e, result)
        coeffs = values * scale % p
        return LabeledDegree(d, stratum, mono, coeffs.astype(np.int64), result)

    def _anchor_scale(self, gen_deg: int, result: ClassificationResult) -> int:
        """Unit u with u * image = +1 on the class anchoring generator x_{gen_deg}."""
        word = self.anchors.get(gen_deg)
        if word is None:
            # no pinned representative: normalize on the first nonzero element
            nz = result.nonzero_positions()
            if not nz:
                raise CalibrationError(f"no nonzero class in degree {gen_deg}")
            anchor_val = int(result.images[nz[0], 0])
        else:
            w = self.group.parse_word(word)
            pos = result.stratum.index_of.get(w.key)
            if pos is None:
                raise CalibrationError(f"anchor word {word} is not reduced of length {result.problem.k}")
            anchor_val = int(result.images[pos, 0])
            if anchor_val == 0:
                raise CalibrationError(f"anchor word {word} maps to zero")
        return pow(anchor_val, -1, self.p)

    def _power_scale(self, gen_deg: int, e: int, result: ClassificationResult) -> int:
        """Unit fixing the sign of the x_{gen_deg}^e class via the coproduct.

        In the coproduct of +x^e the tensor x (x) x^{e-1} appears with
        coefficient e, so the signed count of matching factorizations of any
        representative divides out to the sign of its class.
        """
        from .comodule import coproduct_coefficient

        p = self.p
        nz = result.nonzero_positions()
        if not nz:
            raise CalibrationError(f"no nonzero class in degree {gen_deg * e}")
        w0 = result.stratum.elements[nz[0]]
        v0 = int(result.images[nz[0], 0])
        left = SignedMonomial(1, ((gen_deg, 1),))
        right = SignedMonomial(1, ((gen_deg, e - 1),))
        gamma = coproduct_coefficient(w0, left, right, self)
        target = e % p
        if target == 0 or gamma == 0:
            raise ConsistencyError(
                f"coproduct disambiguation degenerate in degree {gen_deg * e}"
            )
        sign0 = gamma * pow(target, -1, p) % p
        return sign0 * pow(v0, -1, p) % p

    # -- queries ---------------------------------------------------------

    def label_of(self, w: WeylElement) -> SignedMonomial:
        length = self.group.length(w)
        if length == 0:
            return MONOMIAL_ONE
        return self.degree(2 * length).label_of(w)

    def nonzero_by_length(self, length: int) -> list[tuple[WeylElement, SignedMonomial]]:
        if length == 0:
            return [(self.group.identity, MONOMIAL_ONE)]
        if 2 * length > self.max_nonzero_degree():
            return []
        return self.degree(2 * length).nonzero()

    def max_nonzero_degree(self) -> int:
        if not self.covered:
            return 2 * self.group.longest_length
        return sum(d * (t - 1) for d, t in self.presentation)


def calibrate(results: dict[int, ClassificationResult], anchors=None) -> dict[int, LabeledDegree]:
    """Label a family of per-degree classification results.

    All results must belong to one (type, prime, lattice); degrees the
    presentation predicts to be nonzero and that are needed for power-class
    disambiguation must be present.
    """
    if not results:
        return {}
    some = next(iter(results.values()))
    problem = some.problem
    family = LabeledFamily(some.group, problem.p, problem.lattice, anchors=anchors)
    for d, res in sorted(results.items()):
        if res.problem.degree != d:
            raise ValueError(f"result at key {d} has degree {res.problem.degree}")
        family._degrees[d] = family._label(res)
    return {d: family.degree(d) for d in sorted(results)}
