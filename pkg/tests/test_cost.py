import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from blomkit.blom import SchemeParams, setup_original_scheme
from blomkit.cost import (
    CostLedger,
    CostModelSpec,
    cost_of_add,
    cost_of_mul,
    cost_of_reduction,
    digits,
    measured_dot,
    measured_key_agreement,
    measured_seed_expansion,
)
from blomkit.field import PrimeField


@pytest.mark.parametrize("n, expected", [(0, 1), (808, 3), (28, 2), (9, 1), (10, 2)])
def test_digits(n, expected):
    assert digits(n) == expected
    assert digits(n) == len(str(n))


def test_digits_other_radix():
    assert digits(255, 16) == 2
    assert digits(256, 2) == 9


@pytest.mark.parametrize(
    "a, b, mults, adds",
    [(7, 8, 1, 0), (28, 28, 4, 2), (3, 28, 2, 1)],
)
def test_cost_of_mul(a, b, mults, adds):
    c = cost_of_mul(a, b)
    assert (c.digit_mults, c.digit_adds) == (mults, adds)
    assert c.total_effort == mults + adds


@pytest.mark.parametrize("a, b, adds", [(0, 0, 1), (808, 406, 3), (9, 1214, 4)])
def test_cost_of_add(a, b, adds):
    assert cost_of_add(a, b).digit_adds == adds


@pytest.mark.parametrize("a, charge", [(808, 6), (25, 4), (0, 2)])
def test_cost_of_reduction(a, charge):
    c = cost_of_reduction(a, 29)
    assert c.reductions == 1
    assert c.reduction_ops == charge
    assert c.total_effort == charge


def test_weights_apply():
    spec = CostModelSpec(mult_weight=3, add_weight=2, reduction_weight=0.5)
    assert cost_of_mul(28, 28, spec).total_effort == 3 * 4 + 2 * 2
    assert cost_of_reduction(808, 29, spec).total_effort == 3


def test_spec_validation_and_json():
    with pytest.raises(ValueError):
        CostModelSpec(radix=1)
    with pytest.raises(ValueError):
        CostModelSpec(add_weight=-1)
    spec = CostModelSpec(radix=16, shortcut=True)
    assert CostModelSpec.from_json(spec.to_json()) == spec


ledgers = st.builds(
    CostLedger,
    st.integers(0, 10**6),
    st.integers(0, 10**6),
    st.integers(0, 10**3),
    st.integers(0, 10**6),
    st.integers(0, 10**7),
    st.integers(0, 10**3),
    st.integers(0, 10**3),
)


@given(ledgers, ledgers, ledgers)
def test_ledger_merge_is_componentwise(a, b, c):
    s = a + b
    assert s.digit_mults == a.digit_mults + b.digit_mults
    assert s.digit_adds == a.digit_adds + b.digit_adds
    assert s.reductions == a.reductions + b.reductions
    assert s.total_effort == a.total_effort + b.total_effort
    assert s.multiplications == a.multiplications + b.multiplications
    assert (a + b) + c == a + (b + c)
    assert sum([a, b, c]) == a + b + c


def test_dot_product_cost_is_sum_of_steps(f29):
    row, col = (3, 20, 24, 5), (28, 28, 1, 28)
    kv, ledger = measured_dot(row, col, f29)
    assert (kv.raw, kv.key) == (808, 25)
    acc = 3 * 28
    expected = cost_of_mul(3, 28)
    for a, g in zip(row[1:], col[1:]):
        expected += cost_of_mul(a, g) + cost_of_add(acc, a * g)
        acc += a * g
    expected += cost_of_reduction(808, 29)
    assert ledger == expected


def test_paper_pair_ledger(paper_inst):
    key, ledger = measured_key_agreement(paper_inst, 2, 5)
    assert key == 25
    # adjacency columns cost nothing to obtain: the ledger is the dot product alone
    _, dot_only = measured_dot((3, 20, 24, 5), (28, 28, 1, 28), paper_inst.field)
    assert ledger == dot_only
    assert (ledger.multiplications, ledger.additions, ledger.reductions) == (4, 3, 1)
    assert ledger.reduction_ops == digits(808) * digits(29)
    # 4 products: 3x28, 20x28, 24x1, 5x28 -> 2 + 4 + 2 + 2 digit mults
    assert ledger.digit_mults == 10

    key2, ledger2 = measured_key_agreement(paper_inst, 5, 2)
    assert key2 == key
    assert ledger2.reduction_ops == digits(1214) * digits(29)
    assert measured_key_agreement(paper_inst, 2, 5) == (key, ledger)


def test_seed_expansion_charges_lambda_minus_one_products(f29):
    col, ledger = measured_seed_expansion(4, 3, f29)
    assert col == (1, 4, 16, 6)
    # 4*4=16, 16*4=64
    assert ledger == cost_of_mul(4, 4) + cost_of_reduction(16, 29) + cost_of_mul(16, 4) + cost_of_reduction(64, 29)
    assert ledger.reductions == 2
    assert ledger.multiplications == 2
    _, none = measured_seed_expansion(4, 1, f29)
    assert none == CostLedger()


@pytest.mark.parametrize("shortcut", [False, True])
def test_measurement_transparency(shortcut):
    spec = CostModelSpec(shortcut=shortcut)
    rng = random.Random(1)
    for q in (29, 47, 97):
        f = PrimeField(q)
        inst = setup_original_scheme(SchemeParams(f, 8, 4), rng_seed=rng.getrandbits(32))
        for i in range(1, 9):
            for j in range(1, 9):
                if i != j:
                    assert measured_key_agreement(inst, i, j, spec)[0] == inst.key(i, j)


@pytest.mark.parametrize("shortcut", [False, True])
def test_measurement_transparency_modified(paper_inst, shortcut):
    spec = CostModelSpec(shortcut=shortcut)
    for i in range(1, 7):
        for j in range(1, 7):
            if i != j:
                assert measured_key_agreement(paper_inst, i, j, spec)[0] == paper_inst.key(i, j)


def test_shortcut_skips_unit_products(f29):
    spec = CostModelSpec(shortcut=True)
    _, ledger = measured_dot((5, 7), (1, 0), f29, spec)
    assert ledger.digit_mults == 0
    kv, ledger = measured_dot((5,), (28,), f29, spec)
    assert kv.key == 24
    assert ledger.digit_mults == 0 and ledger.digit_adds == 2


def test_self_agreement_rejected(paper_inst):
    with pytest.raises(ValueError):
        measured_key_agreement(paper_inst, 3, 3)
