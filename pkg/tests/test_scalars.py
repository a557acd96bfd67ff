from fractions import Fraction

from rinehart.scalars import Scalar, format_scalar


def test_field_operations_exact():
    a = Scalar(Fraction(1, 2), Fraction(1, 3))
    b = Scalar(Fraction(-2, 5), Fraction(4))
    assert a + b == Scalar(Fraction(1, 10), Fraction(13, 3))
    assert a * b - b * a == Scalar(0)
    assert (a * b) / b == a
    assert a - a == Scalar(0)
    assert not (a - a)


def test_zero_is_unique():
    assert Scalar(0, 0) == 0
    assert Scalar(Fraction(0, 7), Fraction(0, 3)) == Scalar(0)


def test_integer_coercion_and_hash():
    assert Scalar(3) == 3
    assert hash(Scalar(3)) == hash(3)
    assert Scalar(3) * 2 == 6
    assert 1 - Scalar(Fraction(1, 2)) == Scalar(Fraction(1, 2))


def test_conjugate_and_division():
    i = Scalar(0, 1)
    assert i * i == -1
    assert (1 / i) == -i
    assert i.conjugate() == -i


def test_format():
    assert format_scalar(Scalar(0)) == "0"
    assert format_scalar(Scalar(Fraction(-3, 2))) == "-3/2"
    assert format_scalar(Scalar(0, 2)) == "2i"
    assert format_scalar(Scalar(Fraction(1, 2), Fraction(1, 3))) == "1/2+1/3i"
    assert format_scalar(Scalar(Fraction(1, 2), Fraction(-1, 3))) == "1/2-1/3i"
