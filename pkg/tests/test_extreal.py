"""Extended-real scalar helpers."""
from fractions import Fraction

import pytest

from youngcalc.errors import InfMinusInfError
from youngcalc.extreal import (INF, ext_add, ext_mul_scalar, ext_sub, is_inf,
                               number_from_json, number_to_json)


def test_addition_total():
    assert ext_add(1.0, 2.0) == 3.0
    assert is_inf(ext_add(INF, 5.0))
    assert is_inf(ext_add(INF, INF))


def test_inf_minus_inf_rejected():
    with pytest.raises(InfMinusInfError):
        ext_sub(INF, INF)
    assert is_inf(ext_sub(INF, 3.0))
    assert ext_sub(5.0, 3.0) == 2.0


def test_scalar_multiplication():
    assert ext_mul_scalar(2.0, 3.0) == 6.0
    assert is_inf(ext_mul_scalar(INF, 2.0))
    with pytest.raises(ValueError):
        ext_mul_scalar(INF, -1.0)


def test_json_round_trip_preserves_exactness():
    for v in (0, 1, Fraction(3, 7), 2.5, INF):
        back = number_from_json(number_to_json(v))
        assert back == v
    assert number_to_json(INF) == "inf"
    assert is_inf(number_from_json("inf"))
    assert number_from_json(number_to_json(Fraction(3, 7))) == Fraction(3, 7)


def test_check_nonneg_rejects_negative_and_nan():
    from youngcalc.extreal import check_nonneg
    with pytest.raises(ValueError):
        check_nonneg(-1.0)
    with pytest.raises(ValueError):
        check_nonneg(float("nan"))
    assert check_nonneg(0.0) == 0.0
