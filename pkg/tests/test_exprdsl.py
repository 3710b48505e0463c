import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hhineq.exprdsl import (
    BinOp, Const, DomainError, Func, FuncExpr, Named, Neg, ParseError,
    UnknownIdentifier, Var, check_shape, differentiate, evaluate,
    evaluate_array, parse, to_string,
)
from hhineq.verify import gen_corpus

from conftest import INSTANTIATING_FUNCTIONS

X = Var()


class TestParse:
    def test_reciprocal(self):
        assert parse("1/x").root == BinOp("/", Const(1.0), X)

    def test_negated_log(self):
        assert parse("-ln(x)").root == Neg(Func("ln", X))

    def test_polynomial_value(self):
        assert evaluate(parse("x^2 + 1"), 2.0) == 5.0

    def test_power_binds_tighter_than_minus(self):
        assert parse("-x^2").root == Neg(BinOp("^", X, Const(2.0)))
        assert evaluate(parse("-x^2"), 3.0) == -9.0

    def test_power_is_right_associative(self):
        assert parse("2^3^2").root == BinOp("^", Const(2.0), BinOp("^", Const(3.0), Const(2.0)))
        assert evaluate(parse("2^3^2"), 0.0) == 512.0

    def test_negative_exponent(self):
        assert evaluate(parse("x^-2"), 2.0) == 0.25

    def test_left_associative_minus_and_divide(self):
        assert evaluate(parse("10 - 4 - 3"), 0.0) == 3.0
        assert evaluate(parse("16/4/2"), 0.0) == 2.0

    def test_named_constants(self):
        assert parse("e").root == Named("e")
        assert evaluate(parse("pi*x"), 1.0) == math.pi

    def test_scientific_notation(self):
        assert evaluate(parse("1.5e-3*x"), 2.0) == pytest.approx(3e-3)

    @pytest.mark.parametrize("text,offset", [
        ("x +", 3), ("(x", 2), ("x $ 2", 2), ("", 0), ("2 x", 2), ("ln x", 3),
    ])
    def test_syntax_error_offset(self, text, offset):
        with pytest.raises(ParseError) as info:
            parse(text)
        assert info.value.offset == offset

    def test_offset_counts_bytes(self):
        with pytest.raises(ParseError) as info:
            parse("x + é")
        assert info.value.offset == 4
        with pytest.raises(ParseError) as info:
            parse("é")
        assert info.value.offset == 0

    def test_unknown_identifier(self):
        with pytest.raises(UnknownIdentifier) as info:
            parse("x + sin(x)")
        assert info.value.offset == 4
        assert "sin" in str(info.value)


class TestEvaluate:
    def test_reciprocal(self):
        assert evaluate(parse("1/x"), 2.0) == 0.5

    def test_log_at_one(self):
        assert evaluate(parse("-ln(x)"), 1.0) == 0.0

    def test_exp(self):
        # mpmath: e^1.5 = 4.4816890703380648226...
        assert evaluate(parse("exp(x)"), 1.5) == pytest.approx(4.4816890703380648226, rel=1e-15)

    def test_recip_function(self):
        assert evaluate(parse("recip(x)"), 4.0) == 0.25

    @pytest.mark.parametrize("text,x,fragment", [
        ("ln(x)", 0.0, "ln(x)"),
        ("ln(x - 1)", 0.5, "ln(x - 1)"),
        ("sqrt(x)", -1.0, "sqrt(x)"),
        ("1/(x - 2)", 2.0, "1 / (x - 2)"),
        ("recip(x)", 0.0, "recip(x)"),
        ("x^0.5", -4.0, "x^0.5"),
    ])
    def test_domain_errors_name_the_node(self, text, x, fragment):
        with pytest.raises(DomainError) as info:
            evaluate(parse(text), x)
        assert to_string(info.value.node) == fragment

    def test_integer_power_of_negative_base(self):
        assert evaluate(parse("x^3"), -2.0) == -8.0

    def test_vectorised_matches_scalar(self):
        f = parse("x*ln(x) + exp(0.3*x) - 1/x")
        xs = np.linspace(0.5, 4, 17)
        vec = evaluate_array(f, xs)
        assert [evaluate(f, x) for x in xs] == list(vec)

    def test_deterministic(self):
        f = parse("sqrt(x)^3 + x^2.5 - exp(-x)")
        xs = np.linspace(0.1, 10, 101)
        assert evaluate_array(f, xs).tobytes() == evaluate_array(parse(f.text), xs).tobytes()


class TestDifferentiate:
    def test_cubic(self):
        assert evaluate(differentiate(parse("x^3")), 2.0) == 12.0

    def test_negated_log(self):
        assert evaluate(differentiate(parse("-ln(x)")), 2.0) == -0.5

    def test_product(self):
        assert evaluate(differentiate(parse("x*ln(x)")), math.e) == pytest.approx(2.0, rel=1e-15)

    def test_constant_folds_to_zero(self):
        assert differentiate(parse("3 + pi")).root == Const(0.0)

    def test_simplification(self):
        assert differentiate(parse("x")).root == Const(1.0)
        assert differentiate(parse("2*x")).root == Const(2.0)

    @pytest.mark.parametrize("text,x,exact", [
        ("sqrt(x)", 4.0, 0.25),
        ("recip(x)", 2.0, -0.25),
        ("exp(2*x)", 0.0, 2.0),
        ("2^x", 1.0, 2 * math.log(2)),
        ("x^x", 1.0, 1.0),
        ("x/(1 + x)", 1.0, 0.25),
    ])
    def test_rules(self, text, x, exact):
        assert evaluate(differentiate(parse(text)), x) == pytest.approx(exact, rel=1e-14, abs=1e-15)

    @pytest.mark.parametrize("degree", range(0, 7))
    def test_repeated_derivative_of_polynomial_vanishes(self, degree):
        text = " + ".join(f"{k + 1}*x^{k}" for k in range(degree + 1))
        f = parse(text)
        for _ in range(degree + 1):
            f = differentiate(f)
        xs = np.linspace(-3, 3, 13)
        assert np.all(evaluate_array(f, xs) == 0)

    def test_polynomial_leading_coefficient(self):
        f = parse("x^5 - 3*x^2")
        for _ in range(5):
            f = differentiate(f)
        assert evaluate(f, 0.7) == 120.0


def _corpus_functions():
    texts = list(INSTANTIATING_FUNCTIONS) + ["exp(x)", "x*ln(x)", "sqrt(x)", "x^2.5", "2^x"]
    texts += [c.f.text for c in gen_corpus(3, 30)]
    return texts


@pytest.mark.parametrize("text", _corpus_functions())
def test_derivative_matches_mpmath(text):
    f = parse(text)
    df = differentiate(f)
    mp.mp.dps = 30
    ns = {"ln": mp.log, "exp": mp.exp, "sqrt": mp.sqrt, "recip": lambda u: 1 / u,
          "e": mp.e, "pi": mp.pi}
    src = text.replace("^", "**")
    rng = np.random.default_rng(len(text))
    for x in rng.uniform(0.2, 8, size=100):
        exact = mp.diff(lambda t: eval(src, dict(ns, x=t)), mp.mpf(x))
        assert evaluate(df, x) == pytest.approx(float(exact), rel=1e-10, abs=1e-12)


@pytest.mark.parametrize("text", _corpus_functions())
def test_print_parse_round_trip(text):
    f = parse(text)
    assert parse(f.text) == f
    df = differentiate(f)
    again = parse(df.text)
    xs = np.linspace(0.3, 7, 23)
    np.testing.assert_allclose(evaluate_array(again, xs), evaluate_array(df, xs), rtol=1e-14)


# parser-reachable trees: constants are non-negative, negation is explicit
_leaves = st.one_of(
    st.just(X),
    st.builds(Const, st.floats(min_value=0, max_value=1e6, allow_nan=False)),
    st.sampled_from([Named("e"), Named("pi")]),
)
_trees = st.recursive(
    _leaves,
    lambda sub: st.one_of(
        st.builds(Neg, sub),
        st.builds(BinOp, st.sampled_from("+-*/^"), sub, sub),
        st.builds(Func, st.sampled_from(["ln", "exp", "sqrt", "recip"]), sub),
    ),
    max_leaves=12,
)


@settings(max_examples=300, deadline=None)
@given(_trees)
def test_round_trip_property(tree):
    assert parse(to_string(tree)).root == tree


class TestShape:
    def test_convex(self):
        assert check_shape(parse("1/(x^2)"), (1, 2), "convex").passed

    def test_concave(self):
        assert check_shape(parse("sqrt(x)"), (1, 4), "concave").passed

    def test_not_convex(self):
        rep = check_shape(parse("sqrt(x)"), (1, 4), "convex")
        assert not rep.passed
        # the widest pair alone already gives sqrt(2.5) - 1.5
        assert rep.max_violation >= math.sqrt(2.5) - 1.5 > 0

    def test_linear_is_both(self):
        for mode in ("convex", "concave"):
            rep = check_shape(parse("3*x - 1"), (0.5, 9), mode)
            assert rep.passed and rep.max_violation <= 1e-12

    @pytest.mark.parametrize("text", ["x^2", "exp(x)", "1/x", "x*ln(x)", "x^4 - x"])
    def test_negation_swaps_modes(self, text):
        f, g = parse(text), parse(f"-({text})")
        iv = (0.5, 3.0)
        a, b = check_shape(f, iv, "convex"), check_shape(g, iv, "concave")
        assert a.passed and b.passed
        assert a.max_violation == b.max_violation

    def test_passed_iff_within_tolerance(self):
        rep = check_shape(parse("sqrt(x)"), (1, 4), "convex", tol=10.0)
        assert rep.passed and rep.max_violation <= 10.0

    def test_callable_input(self):
        rep = check_shape(lambda xs: np.abs(xs - 2), (1, 3), "convex")
        assert rep.passed and rep.grid_size == 64

    def test_domain_error_propagates(self):
        with pytest.raises(DomainError):
            check_shape(parse("ln(x - 2)"), (1, 4), "concave")

    def test_bad_mode(self):
        with pytest.raises(ValueError):
            check_shape(parse("x"), (1, 2), "linear")


def test_funcexpr_is_callable():
    f = parse("x^2")
    assert isinstance(f, FuncExpr) and f(3.0) == 9.0 and str(f) == "x^2"
