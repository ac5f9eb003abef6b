import json
import math

import numpy as np
import pytest

from mixwit.exceptions import InvalidOrder, MixwitError
from mixwit.states import WernerParams, bell_state, werner_state
from mixwit.witnesses import (
    COLLISION,
    MIN_ENTROPY,
    VON_NEUMANN,
    WitnessReport,
    classical_mutual_information,
    conditional_renyi,
    log_negativity,
    majorization_criterion,
    majorizes,
    mixedness_witness,
    npt_check,
    purity,
    renyi_entropy,
    witness_report,
)

from conftest import random_product_state, random_state

WERNER_2_HALF = [0.625, 0.125, 0.125, 0.125]


def test_purity_values():
    assert purity(np.eye(5) / 5) == pytest.approx(0.2)
    assert purity(bell_state(3)) == pytest.approx(1.0)
    assert purity(werner_state(WernerParams(2, 0.5))) == pytest.approx(0.4375, abs=1e-14)


@pytest.mark.parametrize("order", [0.5, VON_NEUMANN, COLLISION, 3, MIN_ENTROPY])
def test_renyi_extremes(order):
    assert renyi_entropy(np.full(8, 1 / 8), order) == pytest.approx(3.0)
    assert renyi_entropy([1.0, 0.0, 0.0], order) == pytest.approx(0.0, abs=1e-15)


def test_renyi_collision_on_werner_spectrum():
    # (1 + 3 p^2) / 4 at p = 1/2
    assert renyi_entropy(WERNER_2_HALF, 2) == pytest.approx(-math.log2(0.4375), abs=1e-12)
    assert renyi_entropy(WERNER_2_HALF, 2) == pytest.approx(1.1926, abs=1e-4)
    with pytest.raises(MixwitError):
        renyi_entropy([0.5625, 0.125, 0.125, 0.125], 2)


def test_renyi_von_neumann_matches_shannon():
    p = np.array([0.5, 0.25, 0.25])
    assert renyi_entropy(p, 1) == pytest.approx(1.5)
    # the alpha -> 1 limit
    assert renyi_entropy(p, 1 + 1e-7) == pytest.approx(1.5, abs=1e-6)


@pytest.mark.parametrize("order", [0, -1, "two", float("nan")])
def test_invalid_order(order):
    with pytest.raises(InvalidOrder):
        renyi_entropy([0.5, 0.5], order)


def test_renyi_rejects_bad_vectors():
    with pytest.raises(MixwitError):
        renyi_entropy([0.5, 0.6], 1)
    with pytest.raises(MixwitError):
        renyi_entropy([1.5, -0.5], 1)


class TestConditional:
    def test_product_is_nonnegative(self):
        rho, _, _ = random_product_state(2, 3, seed=8)
        for order in (1, 2, math.inf):
            assert conditional_renyi(rho, (2, 3), order) >= -1e-12

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_bell(self, d):
        assert conditional_renyi(bell_state(d), (d, d), 2) == pytest.approx(-math.log2(d), abs=1e-12)

    def test_sides_differ_for_asymmetric_state(self):
        rho = random_state(2, 3, seed=9)
        s_ab = conditional_renyi(rho, (2, 3), 1, "B")
        s_ba = conditional_renyi(rho, (2, 3), 1, "A")
        assert s_ab != pytest.approx(s_ba)

    def test_bad_side(self):
        with pytest.raises(ValueError):
            conditional_renyi(np.eye(4) / 4, (2, 2), 1, "C")


class TestMajorization:
    def test_reflexive(self):
        p = [0.5, 0.3, 0.2]
        assert majorizes(p, p)

    def test_extreme_points(self):
        assert majorizes([1, 0, 0], [1 / 3] * 3)
        assert not majorizes([1 / 3] * 3, [1, 0, 0])

    def test_incomparable_pair(self):
        p, q = [0.5, 0.5, 0.0], [0.6, 0.2, 0.2]
        assert not majorizes(p, q)
        assert not majorizes(q, p)

    def test_padding(self):
        assert majorizes([1.0], [0.5, 0.5])

    def test_product_state_satisfies_criterion(self):
        rho, _, _ = random_product_state(3, 2, seed=10)
        assert majorization_criterion(rho, (3, 2))

    def test_bell_violates_criterion(self):
        assert not majorization_criterion(bell_state(2), (2, 2))


class TestWitnesses:
    def test_maximally_mixed_never_witnessed(self):
        for order in (1, 2, math.inf):
            assert not mixedness_witness(np.eye(9) / 9, (3, 3), order)

    def test_bell_witnessed(self):
        for order in (1, 2, math.inf):
            assert mixedness_witness(bell_state(2), (2, 2), order)

    def test_npt_bell(self):
        is_npt, min_eig = npt_check(bell_state(2), (2, 2))
        assert is_npt
        assert min_eig == pytest.approx(-0.5)

    def test_npt_product(self):
        rho, _, _ = random_product_state(2, 2, seed=11)
        is_npt, min_eig = npt_check(rho, (2, 2))
        assert not is_npt
        assert min_eig >= -1e-10

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_log_negativity_bell(self, d):
        assert log_negativity(bell_state(d), (d, d)) == pytest.approx(math.log2(d), abs=1e-12)

    def test_log_negativity_product(self):
        rho, _, _ = random_product_state(3, 3, seed=12)
        assert log_negativity(rho, (3, 3)) == pytest.approx(0.0, abs=1e-12)

    def test_classical_mutual_information(self):
        assert classical_mutual_information(bell_state(2), (2, 2)) == pytest.approx(1.0)
        rho, _, _ = random_product_state(2, 3, seed=13)
        assert classical_mutual_information(rho, (2, 3)) == pytest.approx(0.0, abs=1e-12)


class TestReport:
    def test_bell(self):
        rep = witness_report(bell_state(2), (2, 2))
        assert rep.npt and rep.s1_witness and rep.s2_witness and rep.sinf_witness
        assert rep.log_negativity == pytest.approx(1.0)
        assert rep.joint_purity == pytest.approx(1.0)
        assert rep.marginal_purity_a == pytest.approx(0.5)
        assert rep.any_mixedness_witness

    def test_maximally_mixed(self):
        rep = witness_report(np.eye(4) / 4, (2, 2))
        assert not (rep.npt or rep.any_mixedness_witness)

    def test_matches_single_functions(self):
        rho = random_state(2, 3, seed=14)
        rep = witness_report(rho, (2, 3))
        for name, order in (("s1", 1), ("s2", 2), ("sinf", math.inf)):
            expected = min(conditional_renyi(rho, (2, 3), order, side) for side in "AB")
            assert getattr(rep, f"{name}_cond_ab") == pytest.approx(expected, abs=1e-12)
            assert getattr(rep, f"{name}_witness") == mixedness_witness(rho, (2, 3), order)
        assert rep.npt == npt_check(rho, (2, 3))[0]
        assert rep.log_negativity == pytest.approx(log_negativity(rho, (2, 3)))

    def test_serialisation(self):
        rep = witness_report(bell_state(2), (2, 2))
        doc = json.loads(rep.to_json())
        assert list(doc) == WitnessReport.field_names()
        assert doc["npt"] is True
        assert WitnessReport(**doc) == rep
