import pytest

from netdecomp.sim import RoundLedger, SimConfig, randint_for, rng_for, uniform_for


def test_ledger_charge_and_absorb():
    inner = RoundLedger().charge("a", 3).charge("b", 2, multiplier=2)
    assert inner.total == 7
    outer = RoundLedger().charge("x", 1)
    outer.absorb(inner, multiplier=3, prefix="L1/")
    assert outer.total == 1 + 3 * 7
    assert [e.phase for e in outer.entries] == ["x", "L1/a", "L1/b"]


def test_ledger_json_roundtrip():
    led = RoundLedger().charge("p", 4, 2)
    again = RoundLedger.from_dict(led.to_dict())
    assert again.total == 8 and again.to_dict() == led.to_dict()


def test_ledger_rejects_negative():
    with pytest.raises(ValueError):
        RoundLedger().charge("p", -1)


def test_streams_are_reproducible_and_independent():
    a = uniform_for(1, "s", 5, 2)
    assert a == uniform_for(1, "s", 5, 2)
    assert 0.0 <= a < 1.0
    assert a != uniform_for(1, "s", 5, 3)
    assert a != uniform_for(2, "s", 5, 2)
    assert rng_for(3, "x", 1, 0).random() == rng_for(3, "x", 1, 0).random()
    draws = {randint_for(0, "r", v, 1, 6) for v in range(200)}
    assert draws == set(range(1, 7))


def test_simconfig_validation():
    with pytest.raises(ValueError):
        SimConfig(gamma_mode="bogus")
    with pytest.raises(ValueError):
        SimConfig(seed=-1)
