from __future__ import annotations

from fractions import Fraction

import pytest

from src.engine import pair_covariance, score_pmf
from src.oracle import (
    BudgetExceeded,
    JointLaw,
    MissingExactWeights,
    check_na_spot,
    check_nlod_nuod,
    disjoint_splits,
    enumerate_joint,
    exact_W_distribution,
    marginal_exact,
    marginal_from_joint,
    max_score_law,
    pair_covariance_exact,
    pair_joint_tail,
    product_law,
    tail_exact,
    term_count,
    tv_to_poisson,
    w_moments,
)
from src.outcome import OutcomeModel, chess


def test_classical_three_players_law(classical_joint_3):
    assert classical_joint_3.total == 8
    assert sum(classical_joint_3.weights.values()) == 8
    assert classical_joint_3.sorted_law() == {
        (1, 1, 1): Fraction(2, 8),
        (2, 1, 0): Fraction(6, 8),
    }
    assert max_score_law(classical_joint_3) == {1: Fraction(1, 4), 2: Fraction(3, 4)}
    assert classical_joint_3.probability((2, 0, 1)) == Fraction(1, 8)


def test_chess_two_players():
    joint = enumerate_joint(chess(), 2)
    assert joint.probabilities() == {
        (0, 2): Fraction(1, 4),
        (1, 1): Fraction(1, 2),
        (2, 0): Fraction(1, 4),
    }


def test_every_vector_conserves_total_score(chess_joint_4):
    expected = chess_joint_4.denominator * 4 * 3 // 2
    assert all(sum(scores) == expected for scores in chess_joint_4.weights)


def test_workers_do_not_change_the_law():
    serial = enumerate_joint(chess(), 4)
    parallel = enumerate_joint(chess(), 4, workers=2)
    assert serial.weights == parallel.weights
    assert serial.total == parallel.total


def test_marginals_match_engine(chess_joint_5):
    engine = score_pmf(chess(), 5)
    for player in range(5):
        exact = marginal_exact(chess_joint_5, player)
        for index, probability in exact.items():
            assert float(probability) == pytest.approx(engine.prob_at(index), abs=1e-14)
    as_pmf = marginal_from_joint(chess_joint_5, 2)
    assert as_pmf.probs.sum() == pytest.approx(1.0)


def test_term_count_and_budget():
    assert term_count(chess(), 4) == 3**6
    with pytest.raises(BudgetExceeded) as info:
        enumerate_joint(chess(), 6, budget=1000)
    assert info.value.required == 3**15
    assert info.value.budget == 1000


def test_float_only_model_is_rejected():
    model = OutcomeModel(denominator=1, support=[(0, 0.5), (1, 0.5)], name="float-only")
    with pytest.raises(MissingExactWeights):
        enumerate_joint(model, 3)


def test_w_distribution_examples(classical_joint_3):
    assert exact_W_distribution(classical_joint_3, 1.5) == [
        Fraction(2, 8),
        Fraction(6, 8),
        Fraction(0),
        Fraction(0),
    ]
    assert exact_W_distribution(classical_joint_3, -0.5) == [0, 0, 0, 1]


def test_chess_top_score_exceedance(chess_joint_4):
    threshold = 2.75
    p = tail_exact(chess_joint_4, threshold)
    assert p == Fraction(1, 64)
    stats = w_moments(exact_W_distribution(chess_joint_4, threshold))
    assert stats.mean == 4 * p
    # Two players cannot both win all their games.
    assert pair_joint_tail(chess_joint_4, 0, 1, threshold) == 0
    engine_cov, _ = pair_covariance(chess(), 4, threshold)
    assert float(pair_covariance_exact(chess_joint_4, threshold)) == pytest.approx(
        engine_cov, abs=1e-14
    )


def test_pair_joint_tail_needs_distinct_players(chess_joint_4):
    with pytest.raises(ValueError):
        pair_joint_tail(chess_joint_4, 1, 1, 1.0)


@pytest.mark.parametrize("threshold", [0.3, 1.1, 1.6, 2.2])
def test_w_variance_identity(chess_joint_4, threshold):
    n = 4
    w_pmf = exact_W_distribution(chess_joint_4, threshold)
    stats = w_moments(w_pmf)
    p = tail_exact(chess_joint_4, threshold)
    cov = pair_covariance_exact(chess_joint_4, threshold)
    assert stats.variance == n * p * (1 - p) + n * (n - 1) * cov
    assert stats.factorial2 == n * (n - 1) * pair_joint_tail(chess_joint_4, 0, 1, threshold)


def test_tv_to_poisson():
    assert tv_to_poisson([Fraction(1)], 0.0) == pytest.approx(0.0, abs=1e-15)
    assert tv_to_poisson([Fraction(0), Fraction(1)], 1.0) == pytest.approx(
        1 - 0.36787944117144233, abs=1e-12
    )


@pytest.mark.parametrize("joint_name", ["classical_joint_3", "classical_joint_4", "chess_joint_4"])
def test_orthant_dependence_holds(joint_name, request):
    joint = request.getfixturevalue(joint_name)
    report = check_nlod_nuod(joint)
    assert report.passed
    assert report.lower.name == "nlod" and report.upper.name == "nuod"
    assert Fraction(report.lower.max_violation_exact) <= 0


def test_orthant_check_is_tight_for_independent_scores(chess_joint_4):
    marginals = [marginal_exact(chess_joint_4, player) for player in range(3)]
    independent = product_law(marginals, denominator=2)
    report = check_nlod_nuod(independent)
    assert report.passed
    assert Fraction(report.lower.max_violation_exact) == 0
    assert Fraction(report.upper.max_violation_exact) == 0


def test_orthant_check_flags_positive_dependence():
    # Two perfectly correlated coordinates.
    joint = JointLaw(n=2, denominator=1, weights={(0, 0): 1, (1, 1): 1}, total=2)
    report = check_nlod_nuod(joint)
    assert not report.passed
    assert Fraction(report.lower.max_violation_exact) == Fraction(1, 4)


def test_upper_orthant_check_sees_sub_vectors():
    # The first three coordinates exceed 0 together with probability 1/4, not 1/8;
    # the fourth is constant and only enters through its "below support" threshold.
    joint = JointLaw(
        n=4,
        denominator=1,
        weights={(1, 1, 1, 0): 1, (1, 0, 0, 0): 1, (0, 1, 0, 0): 1, (0, 0, 1, 0): 1},
        total=4,
    )
    report = check_nlod_nuod(joint)
    assert not report.upper.passed
    assert Fraction(report.upper.max_violation_exact) == Fraction(1, 8)
    restricted = check_nlod_nuod(joint, grid=[0])
    assert Fraction(restricted.upper.max_violation_exact) == Fraction(1, 8)


def test_orthant_grid_restriction(chess_joint_4):
    # Scores run over 0..6 half-points; the top atom and the point below 0 are always kept.
    report = check_nlod_nuod(chess_joint_4, grid=[2, 3, 4])
    assert report.lower.grid_size == 4**4
    assert report.upper.grid_size == 4**4
    assert report.passed


def test_disjoint_split_count():
    for n in range(2, 6):
        assert sum(1 for _ in disjoint_splits(n)) == 3**n - 2 * 2**n + 1


def test_association_spot_check(chess_joint_4, classical_joint_4):
    for joint in (chess_joint_4, classical_joint_4):
        report = check_na_spot(joint, functions_per_split=20)
        assert report.passed
        assert report.grid_size == 20 * (3**4 - 2 * 2**4 + 1)
        assert "partial" in report.detail


def test_association_spot_check_is_seeded(classical_joint_3):
    first = check_na_spot(classical_joint_3, functions_per_split=5, seed=3)
    second = check_na_spot(classical_joint_3, functions_per_split=5, seed=3)
    assert first == second
