"""Test the Paranalyzer: evidence degrees, the twelve state partition and its
symmetries.
"""
import gymnasium as gym
import numpy as np
import pytest
from gymnasium.logger import ERROR
from hypothesis import given
from hypothesis import strategies as st

from paranav.common.exceptions import ConfigValidationError, DomainError
from paranav.core.paralogic import (
    AnalysisThresholds,
    Evidence,
    LogicalState,
    certainty_degree,
    classify,
    normalize_percent,
    paranalyzer,
    uncertainty_degree,
)

gym.logger.set_level(ERROR)

unit = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)
GRID = np.linspace(0.0, 1.0, 101)


def region_oracle(gce, gin, t):
    """Return every state whose region predicate holds, each tested on its own."""
    middle = t.vcfa < gce < t.vcve and t.vcpa < gin < t.vcic
    predicates = {
        1: gce >= t.vcve,
        2: gce <= t.vcfa,
        3: t.vcfa < gce < t.vcve and gin >= t.vcic,
        4: t.vcfa < gce < t.vcve and gin <= t.vcpa,
        5: middle and gce >= 0 and gin >= 0 and gce >= gin,
        6: middle and gce >= 0 and gin >= 0 and gce < gin,
        7: middle and gce >= 0 and gin < 0 and gce >= abs(gin),
        8: middle and gce >= 0 and gin < 0 and gce < abs(gin),
        9: middle and gce < 0 and gin < 0 and abs(gce) >= abs(gin),
        10: middle and gce < 0 and gin < 0 and abs(gce) < abs(gin),
        11: middle and gce < 0 and gin >= 0 and abs(gce) >= gin,
        12: middle and gce < 0 and gin >= 0 and abs(gce) < gin,
    }
    return [code for code, holds in predicates.items() if holds]


class TestDegrees:
    @pytest.mark.parametrize("raw, expected", [(100, 1.0), (0, 0.0), (55, 0.55)])
    def test_normalize_percent(self, raw, expected):
        assert normalize_percent(raw) == expected

    @pytest.mark.parametrize("raw", [-0.1, 100.5, float("nan"), "50"])
    def test_normalize_percent_out_of_range(self, raw):
        with pytest.raises(DomainError, match="Percent value"):
            normalize_percent(raw)

    @pytest.mark.parametrize(
        "mu, lambda_, gce",
        [(1.0, 0.0, 1.0), (0.5, 0.5, 0.0), (0.2, 0.9, -0.7)],
    )
    def test_certainty_degree(self, mu, lambda_, gce):
        assert certainty_degree(Evidence(mu, lambda_)) == pytest.approx(gce)

    @pytest.mark.parametrize(
        "mu, lambda_, gin",
        [(1.0, 1.0, 1.0), (0.5, 0.5, 0.0), (0.0, 0.0, -1.0)],
    )
    def test_uncertainty_degree(self, mu, lambda_, gin):
        assert uncertainty_degree(Evidence(mu, lambda_)) == pytest.approx(gin)

    @pytest.mark.parametrize("mu, lambda_", [(-0.01, 0.5), (0.5, 1.01), (None, 0.0)])
    def test_evidence_rejects_out_of_range(self, mu, lambda_):
        with pytest.raises(DomainError):
            Evidence(mu, lambda_)

    @given(mu=unit, lambda_=unit, delta=st.floats(min_value=1e-6, max_value=1.0))
    def test_monotonicity(self, mu, lambda_, delta):
        if mu + delta <= 1.0:
            higher = Evidence(mu + delta, lambda_)
            assert certainty_degree(higher) > certainty_degree(Evidence(mu, lambda_))
            assert uncertainty_degree(higher) > uncertainty_degree(
                Evidence(mu, lambda_)
            )
        if lambda_ + delta <= 1.0:
            higher = Evidence(mu, lambda_ + delta)
            assert certainty_degree(higher) < certainty_degree(Evidence(mu, lambda_))
            assert uncertainty_degree(higher) > uncertainty_degree(
                Evidence(mu, lambda_)
            )

    @given(mu=unit, lambda_=unit)
    def test_range(self, mu, lambda_):
        analysis = classify(Evidence(mu, lambda_))
        assert -1.0 <= analysis.gce <= 1.0
        assert -1.0 <= analysis.gin <= 1.0
        assert analysis.module_gce == abs(analysis.gce)
        assert analysis.module_gin == abs(analysis.gin)


class TestThresholds:
    def test_defaults_are_symmetric(self):
        assert AnalysisThresholds().symmetric
        assert not AnalysisThresholds(0.6, -0.5, 0.5, -0.5).symmetric

    def test_all_violations_are_reported(self):
        with pytest.raises(ConfigValidationError) as excinfo:
            AnalysisThresholds(vcve=0.0, vcfa=0.1, vcic=1.5, vcpa=-2.0)
        assert len(excinfo.value.violations) == 4

    def test_from_sequence(self):
        t = AnalysisThresholds.from_sequence("0.6,-0.4,0.7,-0.3")
        assert t == AnalysisThresholds(0.6, -0.4, 0.7, -0.3)

    def test_from_sequence_wrong_length(self):
        with pytest.raises(DomainError, match="four thresholds"):
            AnalysisThresholds.from_sequence("0.5,-0.5")


class TestClassify:
    @pytest.mark.parametrize(
        "mu, lambda_, state",
        [
            (1.0, 0.0, LogicalState.TRUE),
            (0.0, 1.0, LogicalState.FALSE),
            (1.0, 1.0, LogicalState.INCONSISTENT),
            (0.0, 0.0, LogicalState.PARACOMPLETE),
            (0.6, 0.3, LogicalState.QUASI_TRUE_TENDING_PARACOMPLETE),
        ],
    )
    def test_examples(self, mu, lambda_, state):
        assert classify(Evidence(mu, lambda_)).state is state

    def test_quasi_true_degrees(self):
        analysis = classify(Evidence(0.6, 0.3))
        assert analysis.gce == pytest.approx(0.3)
        assert analysis.gin == pytest.approx(-0.1)
        assert analysis.state.code == 7

    @pytest.mark.parametrize(
        "mu, lambda_, state",
        [
            (0.75, 0.25, LogicalState.TRUE),  # Gce >= vcve.
            (0.25, 0.75, LogicalState.FALSE),  # Gce <= vcfa.
            (0.75, 0.75, LogicalState.INCONSISTENT),  # Gin >= vcic.
            (0.25, 0.25, LogicalState.PARACOMPLETE),  # Gin <= vcpa.
        ],
    )
    def test_extreme_guards_include_the_threshold(self, mu, lambda_, state):
        assert classify(Evidence(mu, lambda_)).state is state

    def test_extreme_states_are_checked_in_order(self):
        """Certainty wins over inconsistency when both guards hold."""
        t = AnalysisThresholds(0.5, -0.5, 0.2, -0.5)
        assert classify(Evidence(1.0, 0.3), t).state is LogicalState.TRUE

    def test_grid_matches_region_oracle(self):
        t = AnalysisThresholds()
        for mu in GRID:
            for lambda_ in GRID:
                analysis = classify(Evidence(mu, lambda_), t)
                regions = region_oracle(analysis.gce, analysis.gin, t)
                assert regions == [analysis.state.code], (mu, lambda_)

    def test_grid_covers_every_state(self):
        states = {
            classify(Evidence(mu, lambda_)).state for mu in GRID for lambda_ in GRID
        }
        assert states == set(LogicalState)

    def test_swap_involution_on_grid(self):
        t = AnalysisThresholds()
        for mu in GRID:
            for lambda_ in GRID:
                e = Evidence(mu, lambda_)
                original = classify(e, t)
                swapped = classify(e.swapped(), t)
                assert swapped.gce == -original.gce
                assert swapped.gin == original.gin
                if original.gce != 0:
                    assert swapped.state is original.state.mirrored, (mu, lambda_)
                else:
                    assert swapped.state is original.state, (mu, lambda_)

    def test_mirrored_is_an_involution(self):
        for state in LogicalState:
            assert state.mirrored.mirrored is state
            assert state.mirrored.is_extreme == state.is_extreme

    def test_paranalyzer_uses_percent(self):
        assert paranalyzer(100, 0) is LogicalState.TRUE
        assert paranalyzer(60, 30) is LogicalState.QUASI_TRUE_TENDING_PARACOMPLETE
        with pytest.raises(DomainError):
            paranalyzer(120, 0)


class TestLogicalState:
    def test_codes(self):
        assert [state.code for state in LogicalState] == list(range(1, 13))

    def test_labels(self):
        assert LogicalState.QUASI_TRUE_TENDING_INCONSISTENT.label == (
            "QuasiTrueTendingInconsistent"
        )
        assert LogicalState.PARACOMPLETE.label == "Paracomplete"

    @pytest.mark.parametrize(
        "key", [3, "3", "INCONSISTENT", "inconsistent", "Inconsistent"]
    )
    def test_from_any(self, key):
        assert LogicalState.from_any(key) is LogicalState.INCONSISTENT

    @pytest.mark.parametrize("key", [0, 13, "Nope"])
    def test_from_any_unknown(self, key):
        with pytest.raises(DomainError):
            LogicalState.from_any(key)

    def test_every_state_has_a_description(self):
        for state in LogicalState:
            assert state.description
