import json
import random

import pytest

from frobsharp.arith import p_sum
from frobsharp.bounds import lambda_p
from frobsharp.delta_chain import (
    ChainError,
    DeltaChain,
    ExampleParams,
    ExtensionStep,
    Kind,
    dumps,
    example_family,
    loads,
    non_rationality_witness,
    simulate,
)

U, R = Kind.UNRAMIFIED, Kind.RAMIFIED


def steps(orders, kinds=None):
    kinds = kinds or [U] * len(orders)
    return [ExtensionStep(n, k, v) for n, (v, k) in enumerate(zip(orders, kinds))]


def test_hand_unrolled_chain():
    chain = simulate(3, 3, steps([4, 4, 1]))
    assert chain.deltas == (25, 7, 1, 0)
    assert chain.degrees == (27, 9, 3, 1)
    assert chain.differences == (18, 6, 1)


def test_zero_order_chain():
    chain = simulate(3, 1, steps([0]))
    assert chain.deltas == (0, 0)
    assert chain.degrees == (3, 1)


def test_mixed_kinds():
    chain = simulate(3, 3, steps([6, 3, 0], [U, R, U]))
    assert chain.deltas == (15, 3, 0, 0)
    assert chain.degrees == (9, 3, 3, 1)


def test_steps_stored_top_down():
    chain = simulate(3, 3, steps([4, 4, 1]))
    assert [st.level for st in chain.steps] == [2, 1, 0]


def test_p5_factor():
    # (p-1)/2 = 2
    chain = simulate(5, 2, steps([1, 1]))
    assert chain.deltas == (12, 2, 0)


def test_p2_needs_even_orders():
    assert simulate(2, 2, steps([4, 2])).deltas == (4, 1, 0)
    with pytest.raises(ChainError, match="even"):
        simulate(2, 2, steps([3, 2]))


@pytest.mark.parametrize(
    "bad",
    [
        [ExtensionStep(0, U, 1), ExtensionStep(0, U, 1)],
        [ExtensionStep(0, U, 1), ExtensionStep(2, U, 1)],
        [ExtensionStep(1, U, 1)],
    ],
)
def test_step_coverage_errors(bad):
    with pytest.raises(ChainError):
        simulate(3, 2, bad)


def test_non_decaying_orders_rejected():
    # p * Delta_(n+1) <= Delta_n holds exactly when v_n >= v_(n+1)
    with pytest.raises(ChainError, match="decay"):
        simulate(3, 2, steps([0, 5]))


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_random_chains_unroll(p):
    rng = random.Random(p)
    for _ in range(500):
        h = rng.randint(1, 8)
        orders = sorted((rng.randrange(0, 60) for _ in range(h)), reverse=True)
        if p == 2:
            orders = [2 * v for v in orders]
        kinds = [rng.choice([U, R]) for _ in range(h)]
        chain = simulate(p, h, steps(orders, kinds))
        assert 2 * chain.total_delta == (p - 1) * sum(v * p**n for n, v in enumerate(orders))
        assert sum(chain.differences) == chain.total_delta
        chain.check()


def test_check_detects_tampering():
    chain = simulate(3, 3, steps([4, 4, 1]))
    bad = DeltaChain(chain.p, chain.height, chain.steps, (26, 7, 1, 0), chain.degrees)
    with pytest.raises(ChainError, match="recurrence"):
        bad.check()
    bad = DeltaChain(chain.p, chain.height, chain.steps, chain.deltas, (9, 9, 3, 1))
    with pytest.raises(ChainError, match="degree"):
        bad.check()


@pytest.mark.parametrize(
    "params, d",
    [
        (ExampleParams("A", 3, i=2, j=1, r=1, ell=1), 25),
        (ExampleParams("B", 3, i=2, j=1, r=0, r_prime=1, ell=0), 15),
        (ExampleParams("A", 3, i=1, j=1, r=0, ell=1), 3),
    ],
)
def test_family_examples(params, d):
    chain, expected = example_family(params)
    assert expected == d
    assert 2 * chain.total_delta == (params.p - 1) * d
    assert non_rationality_witness(chain, params)
    assert chain.degrees[params.i] == params.p


def test_family_a_matches_hand_chain():
    chain, _ = example_family(ExampleParams("A", 3, i=2, j=1, r=1, ell=1))
    assert chain == simulate(3, 3, steps([4, 4, 1]))


def test_witness_false_for_ramified_height_one():
    chain = simulate(3, 1, [ExtensionStep(0, R, 2)])
    assert chain.degrees == (1, 1)
    assert not non_rationality_witness(chain, 0)
    assert not non_rationality_witness(chain, 1)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(family="A", p=3, i=1, j=2, r=0, ell=0),
        dict(family="B", p=3, i=1, j=1, r=0, ell=0),
        dict(family="A", p=3, i=1, j=1, r=2, ell=0),
        dict(family="B", p=5, i=3, j=1, r=0, r_prime=4, ell=0),
        dict(family="A", p=3, i=1, j=1, r=0, ell=-1),
        dict(family="C", p=3, i=1, j=1, r=0, ell=0),
        dict(family="A", p=4, i=1, j=1, r=0, ell=0),
    ],
)
def test_bad_params(kwargs):
    with pytest.raises(ValueError):
        ExampleParams(**kwargs)


def test_p_form_sharpness_realised():
    for p in (3, 5):
        for i in range(1, 7):
            for j in range(1, i + 1):
                _, d = example_family(ExampleParams("A", p, i=i, j=j, r=0, ell=1))
                assert d == p_sum(p, j, i)
                assert lambda_p(p, d).lam == i + 1


def test_json_document():
    params = ExampleParams("A", 3, i=2, j=1, r=1, ell=1)
    chain, d = example_family(params)
    text = dumps(chain, d, params)
    doc = json.loads(text)
    assert list(doc) == [
        "schema", "p", "height", "steps", "deltas", "degrees",
        "total_delta", "expected_d", "family_params",
    ]
    assert doc["schema"] == "delta-chain/1"
    assert doc["steps"][0] == {"level": 2, "kind": "Unramified", "diff_order": 1}
    assert doc["family_params"] == {"family": "A", "p": 3, "i": 2, "j": 1, "r": 1, "ell": 1}
    assert loads(text) == chain


def test_json_rejects_inconsistent_document():
    chain = simulate(3, 3, steps([4, 4, 1]))
    doc = chain.to_json_dict()
    doc["deltas"][0] = 24
    with pytest.raises(ChainError):
        loads(json.dumps(doc))
    doc["schema"] = "delta-chain/2"
    with pytest.raises(ChainError, match="schema"):
        loads(json.dumps(doc))
