import math

import pytest

import wclass as w


def test_special_functions():
    assert w.hurwitz_zeta(2.0, 0.5) == pytest.approx(math.pi**2 / 2, rel=1e-13)
    assert w.hurwitz_zeta_alternating(1.0, 0.5) == pytest.approx(math.pi / 2, rel=1e-13)


def test_abel_value_and_tag():
    res = w.approx_value(w.ClassParams(r=1, beta=1), w.OperatorParams(alpha=1, delta=0.5), w.Exp())
    direct = 4 / math.pi * sum(
        (1 - math.exp(-(2 * k + 1) * 0.5)) / (2 * k + 1) ** 2 for k in range(200000)
    )
    assert res.value == pytest.approx(direct, abs=1e-5)
    assert res.justification.startswith("thZast1")


def test_expansion_matches_series():
    e = w.abel_expansion(2.5, 0.5, 200)
    s = w.approx_value_plain(w.ClassParams(r=2.5, beta=1), w.OperatorParams(alpha=0.5, delta=0.2), w.Exp(), 1e-14)
    assert e(0.2) == pytest.approx(s.value, abs=1e-9)


def test_oracle_three_way():
    cls = w.ClassParams(r=2, beta=1)
    op = w.OperatorParams(alpha=1, delta=0.3)
    series = w.approx_value(cls, op, w.Exp()).value
    K = w.operator_kernel_samples(cls, op, w.Exp(), 4096, 1 / (2 * math.pi))
    assert w.sign_condition_check(K, 1, w.SignMode.sine, [0.0]).passed
    assert 2 * math.pi * w.extremal_value(K, 1, w.SignMode.sine, [0.0]) == pytest.approx(series, abs=5e-4)
    assert w.l1_best_approx(K, 1).value == pytest.approx(series, abs=5e-3)


def test_errors_translate():
    with pytest.raises(ValueError):
        w.approx_value(w.ClassParams(), w.OperatorParams(delta=-1), w.Exp())
