"""Expected-result corpus and comparison by group element.

Fixture files are plain text, one case per file: a header line of
key=value pairs (type, p, degree, label, lattice) followed by one word per
line, written as space-separated generator indices.  Comparison always happens
at the level of group elements, never word by word, so braid-equivalent
rewrites of the fixtures do not change any report.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .cartan import CartanType, build_root_system
from .pullback import (
    LabeledFamily,
    PullbackProblem,
    SignedMonomial,
    classify,
    kac_presentation,
    _p_adic_valuation,
)
from .weyl import WeylGroup, parse_word_text

__all__ = [
    "ExpectedCase",
    "VerificationReport",
    "fixture_dir",
    "load_cases",
    "parse_fixture",
    "run_case",
    "run_cases",
    "closed_form_check",
]

FIXTURE_ENV = "SCHUBPULL_FIXTURES"


@dataclass
class ExpectedCase:
    name: str
    ctype: CartanType
    p: int
    lattice: str
    degree: int
    label: SignedMonomial
    words: list[tuple[int, ...]]


@dataclass
class VerificationReport:
    case: str
    status: str  # "pass" | "fail"
    missing: list[str] = field(default_factory=list)
    extra: list[str] = field(default_factory=list)
    mismatches: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        return {
            "case": self.case,
            "status": self.status,
            "missing": self.missing,
            "extra": self.extra,
            "mismatches": self.mismatches,
        }


def fixture_dir() -> Path:
    override = os.environ.get(FIXTURE_ENV)
    if override:
        return Path(override)
    return Path(__file__).parent / "data" / "fixtures"


def parse_fixture(path) -> ExpectedCase:
    path = Path(path)
    lines = [ln.strip() for ln in path.read_text().splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError(f"{path}: empty fixture")
    header = dict(item.split("=", 1) for item in lines[0].split())
    required = {"type", "p", "degree", "label"}
    if not required <= header.keys():
        raise ValueError(f"{path}: header must define {sorted(required)}")
    p = int(header["p"])
    case = ExpectedCase(
        name=path.stem,
        ctype=CartanType.parse(header["type"]),
        p=p,
        lattice=header.get("lattice", "adjoint"),
        degree=int(header["degree"]),
        label=SignedMonomial.parse(header["label"], p),
        words=[parse_word_text(ln) for ln in lines[1:]],
    )
    if case.degree % 2:
        raise ValueError(f"{path}: degree must be even")
    return case


def load_cases(dirpath=None) -> list[ExpectedCase]:
    base = Path(dirpath) if dirpath else fixture_dir()
    return [parse_fixture(f) for f in sorted(base.glob("*.txt"))]


def _parse_case_elements(case: ExpectedCase, group: WeylGroup):
    k = case.degree // 2
    elements = []
    seen = set()
    for word in case.words:
        w = group.parse_word(word)
        if group.length(w) != k:
            raise ValueError(f"{case.name}: word {word} does not have length {k}")
        if w.key in seen:
            raise ValueError(f"{case.name}: duplicate element from word {word}")
        seen.add(w.key)
        elements.append(w)
    return elements


def run_case(case: ExpectedCase, family: LabeledFamily | None = None) -> VerificationReport:
    """Compare one fixture case against the computed labeled classification."""
    if family is None:
        family = LabeledFamily(WeylGroup(build_root_system(case.ctype)), case.p, case.lattice)
    group = family.group
    expected = _parse_case_elements(case, group)
    ld = family.degree(case.degree)
    computed = ld.elements_with_label(case.label)
    computed_keys = {w.key for w in computed}
    expected_keys = {w.key for w in expected}
    missing, mismatches = [], []
    for w in expected:
        if w.key not in computed_keys:
            missing.append(" ".join(map(str, group.minimal_word(w))))
            mismatches.append(
                f"{missing[-1]}: computed {ld.label_of(w).label(case.p)}, "
                f"expected {case.label.label(case.p)}"
            )
    extra = [
        " ".join(map(str, group.minimal_word(w)))
        for w in computed
        if w.key not in expected_keys
    ]
    status = "pass" if not missing and not extra else "fail"
    return VerificationReport(case.name, status, missing, extra, mismatches)


def run_cases(cases, threads: int = 1) -> list[VerificationReport]:
    """Run fixture cases, sharing one labeled family per (type, p, lattice)."""
    families: dict[tuple, LabeledFamily] = {}
    for case in cases:
        key = (str(case.ctype), case.p, case.lattice)
        if key not in families:
            families[key] = LabeledFamily(
                WeylGroup(build_root_system(case.ctype)), case.p, case.lattice
            )
    if threads <= 1:
        return [run_case(c, families[(str(c.ctype), c.p, c.lattice)]) for c in cases]
    # warm each family serially (classification caches are not synchronized),
    # then compare cases concurrently; report order stays the input order
    for case in cases:
        families[(str(case.ctype), case.p, case.lattice)].degree(case.degree)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [
            pool.submit(run_case, c, families[(str(c.ctype), c.p, c.lattice)])
            for c in cases
        ]
        return [f.result() for f in futures]


def closed_form_check(family: str, n: int, p: int) -> VerificationReport:
    """Check a matrix-group series against its closed-form truncation.

    family "A": adjoint group of the (n x n) general linear group, Cartan type
    A with rank n-1.  family "C": adjoint symplectic group on 2n letters,
    Cartan type C with rank n, p = 2 only.  Both rings are truncated
    polynomial algebras on one degree-2 generator t, with the truncation
    exponent the p-part of the matrix size; the check confirms the graded
    dimensions and that the degree-2 quotient is a single line.
    """
    if family == "A":
        if n < 2:
            raise ValueError("A-series needs matrix size n >= 2")
        ctype = CartanType("A", n - 1)
        size = n
    elif family == "C":
        if p != 2:
            raise ValueError("C-series closed form is for p = 2")
        ctype = CartanType("C", n)
        size = 2 * n
    else:
        raise ValueError("family must be 'A' or 'C'")
    name = f"closed_form_{family}_n{n}_p{p}"
    trunc = p ** _p_adic_valuation(p, size)
    group = WeylGroup(build_root_system(ctype))
    mismatches = []
    for k in range(1, trunc + 1):
        expected = 1 if k < trunc else 0
        result = classify(PullbackProblem(ctype, p, k), group)
        if result.quotient.dim != expected:
            mismatches.append(
                f"degree {2 * k}: dim {result.quotient.dim}, expected {expected}"
            )
        if k == 1 and expected == 1 and not result.nonzero_positions():
            mismatches.append("degree 2: no nonzero simple-reflection image")
    status = "pass" if not mismatches else "fail"
    return VerificationReport(name, status, mismatches=mismatches)
