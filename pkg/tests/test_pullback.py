"""Relation construction, classification and labeling."""
import numpy as np
import pytest

from schubpull import (
    CartanType,
    ConsistencyError,
    LabeledFamily,
    PullbackProblem,
    SignedMonomial,
    WeylGroup,
    build_relations,
    calibrate,
    classify,
    expected_dims,
    kac_presentation,
)


@pytest.fixture(scope="module")
def g2():
    return WeylGroup("G2")


@pytest.fixture(scope="module")
def f4p3():
    return LabeledFamily(WeylGroup("F4"), 3)


def test_g2_degree6_relation_rows(g2):
    problem = PullbackProblem(CartanType("G", 2), 2, 3)
    rel = build_relations(problem, g2)
    # columns ordered [sts, tst]; rows ordered (st, a), (st, b), (ts, a), (ts, b)
    assert [g2.minimal_word(w) for w in rel.columns] == [(1, 2, 1), (2, 1, 2)]
    assert rel.row_labels == [(0, 1), (0, 2), (1, 1), (1, 2)]
    assert rel.rows.tolist() == [[0, 0], [1, 1], [1, 1], [0, 0]]


def test_g2_degree6_exact_pairings(g2):
    # the four hexagonal degree-6 relations before reduction; note
    # <short^vee, long> = -3, which agrees with the -1 display modulo 2
    rs = g2.system
    assert rs.pair_with_root((1, 0), 1) == 2
    assert rs.pair_with_root((3, 2), 1) == 0
    assert rs.pair_with_root((1, 0), 2) == -3
    assert rs.pair_with_root((3, 2), 2) == 1
    assert rs.pair_with_root((2, 1), 1) == 1
    assert rs.pair_with_root((0, 1), 1) == -1
    assert rs.pair_with_root((2, 1), 2) == 0
    assert rs.pair_with_root((0, 1), 2) == 2


def test_simply_connected_degree2_rows_are_identity():
    for ctype in ("A3", "B3", "C3", "D4", "E6", "E7"):
        group = WeylGroup(ctype)
        problem = PullbackProblem(CartanType.parse(ctype), 2, 1, "simply_connected")
        rel = build_relations(problem, group)
        n = group.rank
        # row (identity, i) has its single 1 in the column of s_i
        col_of = {group.minimal_word(u)[0]: a for a, u in enumerate(rel.columns)}
        for (_, i), row in zip(rel.row_labels, rel.rows):
            expected = np.zeros(n, dtype=np.int64)
            expected[col_of[i]] = 1
            assert (row == expected).all()
        assert classify(problem, group).quotient.dim == 0


def test_simply_connected_degree2_dim_zero_all_types():
    import warnings

    for ctype in ("A2", "B2", "C3", "D4", "E6", "E7", "E8", "F4", "G2"):
        for p in (2, 3):
            group = WeylGroup(ctype)
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")  # trivial-center types warn by design
                problem = PullbackProblem(CartanType.parse(ctype), p, 1, "simply_connected")
            assert classify(problem, group).quotient.dim == 0


def test_a2_adjoint_mod3_degree2():
    # oracle: the rank-2 relation rows are the Cartan matrix, [[2,2],[2,2]] mod 3
    group = WeylGroup("A2")
    problem = PullbackProblem(CartanType("A", 2), 3, 1)
    rel = build_relations(problem, group)
    assert sorted(map(tuple, rel.rows.tolist())) == [(2, 2), (2, 2)]
    result = classify(problem, group)
    assert result.quotient.dim == 1


def test_classify_g2_mod2(g2):
    result = classify(PullbackProblem(CartanType("G", 2), 2, 3), g2)
    assert result.quotient.dim == 1
    nonzero = {g2.minimal_word(result.stratum.elements[i]) for i in result.nonzero_positions()}
    assert nonzero == {(1, 2, 1), (2, 1, 2)}
    assert classify(PullbackProblem(CartanType("G", 2), 2, 2), g2).quotient.dim == 0


def test_classify_beyond_longest_length_is_empty(g2):
    result = classify(PullbackProblem(CartanType("G", 2), 2, 8), g2)
    assert result.quotient.dim == 0
    assert len(result.stratum) == 0


def test_classify_f4_mod3_degree8(f4p3):
    ld = f4p3.degree(8)
    assert ld.result.quotient.dim == 1
    partition = ld.result.value_partition()
    assert sorted(len(v) for v in partition.values()) == [8, 8]


def test_f4_anchor_and_signs(f4p3):
    group = f4p3.group
    ld = f4p3.degree(8)
    anchor = group.parse_word((4, 3, 2, 1))
    assert ld.label_of(anchor) == SignedMonomial(1, ((8, 1),))
    other = group.parse_word((1, 2, 3, 2))
    assert ld.label_of(other) == SignedMonomial(2, ((8, 1),))
    assert ld.label_of(other).label(3) == "-x8^1"


def test_f4_minus_set_is_inverses_of_plus_set(f4p3):
    ld = f4p3.degree(8)
    plus = ld.elements_with_label(SignedMonomial(1, ((8, 1),)))
    minus = ld.elements_with_label(SignedMonomial(2, ((8, 1),)))
    assert {w.inverse.key for w in plus} == {w.key for w in minus}


def test_label_partition_refines_image_partition(f4p3):
    ld = f4p3.degree(8)
    images = ld.result.images
    for i in range(len(ld.stratum)):
        for j in range(i + 1, len(ld.stratum)):
            same_image = (images[i] == images[j]).all()
            same_label = ld.label_at(i) == ld.label_at(j)
            assert same_image == same_label


def test_mod2_single_label_per_degree():
    fam = LabeledFamily(WeylGroup("F4"), 2)
    ld = fam.degree(6)
    labels = {ld.label_at(i) for i in range(len(ld.stratum)) if not ld.label_at(i).is_zero()}
    assert labels == {SignedMonomial(1, ((6, 1),))}
    assert len(ld.elements_with_label(SignedMonomial(1, ((6, 1),)))) == 6


def test_expected_dims_tables():
    assert expected_dims(CartanType("G", 2), 2) == {0: 1, 6: 1}
    assert expected_dims(CartanType("F", 4), 3) == {0: 1, 8: 1, 16: 1}
    # adjoint A-type with p not dividing n+1: only degree 0
    assert expected_dims(CartanType("A", 2), 2) == {0: 1}
    assert expected_dims(CartanType("A", 1), 2) == {0: 1, 2: 1}
    assert expected_dims(CartanType("B", 3), 2) is None
    # adjoint E6 mod 3 has a rank-2 degree 8
    dims = expected_dims(CartanType("E", 6), 3, "adjoint")
    assert dims[8] == 2 and dims[2] == 1
    sc = expected_dims(CartanType("E", 6), 3, "simply_connected")
    assert sc == {0: 1, 8: 1, 16: 1}


def test_kac_presentation_lattice_sensitivity():
    assert kac_presentation(CartanType("E", 7), 2, "adjoint") == ((2, 2), (6, 2), (10, 2), (18, 2))
    assert kac_presentation(CartanType("E", 7), 2, "simply_connected") == ((6, 2), (10, 2), (18, 2))
    assert kac_presentation(CartanType("E", 7), 3, "adjoint") == ((8, 3),)
    assert kac_presentation(CartanType("E", 8), 5) == ((12, 5),)
    assert kac_presentation(CartanType("D", 4), 2) is None


def test_classified_dims_match_expected_table():
    cases = [
        ("G2", 2, "adjoint", range(1, 7)),
        ("F4", 2, "adjoint", range(1, 7)),
        ("A2", 3, "adjoint", range(1, 4)),
        ("A3", 2, "adjoint", range(1, 5)),
    ]
    for name, p, lattice, ks in cases:
        ctype = CartanType.parse(name)
        group = WeylGroup(name)
        dims = expected_dims(ctype, p, lattice)
        for k in ks:
            result = classify(PullbackProblem(ctype, p, k, lattice), group)
            assert result.quotient.dim == dims.get(2 * k, 0), (name, p, k)


def test_adjoint_e6_mod3_degree8_unlabeled():
    fam = LabeledFamily(WeylGroup("E6"), 3, "adjoint")
    ld = fam.degree(8)
    assert not ld.labeled
    assert ld.result.quotient.dim == 2
    with pytest.raises(Exception):
        ld.label_at(0)


def test_trivial_center_lattice_flag_warns():
    with pytest.warns(UserWarning):
        problem = PullbackProblem(CartanType("G", 2), 2, 3, "simply_connected")
    assert problem.lattice == "adjoint"


def test_calibrate_function_over_explicit_results(g2):
    ctype = CartanType("G", 2)
    results = {2 * k: classify(PullbackProblem(ctype, 2, k), g2) for k in range(1, 7)}
    labeled = calibrate(results)
    assert labeled[6].labeled
    nonzero = {g2.minimal_word(w) for w, _ in labeled[6].nonzero()}
    assert nonzero == {(1, 2, 1), (2, 1, 2)}
    assert all(not labeled[d].nonzero() for d in (2, 4, 8, 10, 12))


def test_calibrate_rejects_dimension_mismatch(g2):
    from schubpull import QuotientSpace
    from schubpull.pullback import ClassificationResult

    ctype = CartanType("G", 2)
    res = classify(PullbackProblem(ctype, 2, 3), g2)
    # doctor the quotient to the full space: dim 2 instead of the predicted 1
    fake_q = QuotientSpace.from_relations(2, np.zeros((0, 2)), 2)
    fake = ClassificationResult(
        res.problem, res.stratum, fake_q, fake_q.project(np.eye(2, dtype=np.int64)), g2
    )
    with pytest.raises(ConsistencyError):
        calibrate({6: fake})


def test_invalid_problem_parameters():
    with pytest.raises(ValueError):
        PullbackProblem(CartanType("G", 2), 4, 3)
    with pytest.raises(ValueError):
        PullbackProblem(CartanType("G", 2), 2, 0)
    with pytest.raises(ValueError):
        PullbackProblem(CartanType("G", 2), 2, 3, "weird")
