#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qalg/eigen.hpp"
#include "qalg/matrix.hpp"
#include "qalg/ncexpr.hpp"
#include "qalg/operator.hpp"

using namespace qalg;

namespace {

Laurent mono(int k, Cplx c = 1.0) { return Laurent::monomial(k, c); }

// Random differential operator with small integer coefficients; all sums of
// products stay exact in doubles, so canonical forms can be compared exactly.
LinearOperator random_diff_op(std::mt19937& rng, int max_order, int max_deg) {
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<int> ord(0, max_order);
    LinearOperator op;
    int nterms = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < nterms; ++i) {
        Laurent c;
        for (int d = 0; d <= max_deg; ++d) c.add_term(d, Cplx(static_cast<double>(coef(rng))));
        if (c.is_zero()) c = Laurent::one();
        op += LinearOperator::derivative(ord(rng), RatFunc(c));
    }
    return op;
}

bool structurally_equal(const LinearOperator& a, const LinearOperator& b) {
    return (a - b).is_zero();
}

} // namespace

TEST_CASE("laurent arithmetic") {
    Laurent t = Laurent::t();
    CHECK(laurent_arith(t + Laurent::one(), t - Laurent::one(), LaurentOp::Mul) ==
          mono(2) - Laurent::one());
    CHECK(laurent_arith(mono(2), -1.0 * mono(2), LaurentOp::Add).is_zero());
    CHECK(laurent_arith(mono(-1), mono(3), LaurentOp::Mul) == mono(2));
}

TEST_CASE("laurent division") {
    Laurent a = (Laurent::t() + Laurent(0.5)) * (Laurent::t() - Laurent(0.5));
    CHECK(laurent_divide_exact(a, Laurent::t() + Laurent(0.5)) == Laurent::t() - Laurent(0.5));
    CHECK_THROWS_AS(laurent_divide_exact(Laurent::t() + Laurent::one(), mono(1, 2.0) + Laurent(3.0) * mono(0) + mono(2)),
                    NonPolynomialResult);
}

TEST_CASE("compose: canonical commutation") {
    auto d = LinearOperator::derivative(1);
    auto t = LinearOperator::mult(Laurent::t());
    auto dt = compose(d, t);
    // d o t = t d + 1
    CHECK(apply(dt, mono(0)) == Laurent::one());
    CHECK(structurally_equal(dt, LinearOperator::derivative(1, RatFunc(Laurent::t())) + LinearOperator::identity()));
}

TEST_CASE("compose: Leibniz expansion d^2 o t^2") {
    auto d2 = LinearOperator::derivative(2);
    auto t2 = LinearOperator::mult(mono(2));
    auto c = compose(d2, t2);
    auto expect = LinearOperator::derivative(2, RatFunc(mono(2))) +
                  LinearOperator::derivative(1, RatFunc(mono(1, 4.0))) +
                  2.0 * LinearOperator::identity();
    CHECK(structurally_equal(c, expect));
    // independent check: apply both sides to t^0..t^4
    for (int n = 0; n <= 4; ++n) {
        Laurent f = mono(n);
        Laurent lhs = apply(c, f);
        Laurent rhs = apply(d2, apply(t2, f));
        CHECK((lhs - rhs).norm2() == doctest::Approx(0.0));
    }
}

TEST_CASE("compose: shift conjugation") {
    auto T1 = LinearOperator::shift(Frac(1));
    auto t = LinearOperator::mult(Laurent::t());
    auto c = compose(T1, t);
    auto expect = LinearOperator::shift(Frac(1), RatFunc(Laurent::t() + Laurent::one()));
    CHECK(structurally_equal(c, expect));
}

TEST_CASE("commutator basics") {
    auto d = LinearOperator::derivative(1);
    auto t = LinearOperator::mult(Laurent::t());
    CHECK(structurally_equal(commutator(d, t), LinearOperator::identity()));

    std::mt19937 rng(7);
    for (int i = 0; i < 5; ++i) {
        auto a = random_diff_op(rng, 2, 2);
        CHECK(commutator(a, a).is_zero());
    }
}

TEST_CASE("commutator: E15 model closes as a Lie algebra") {
    // L1 = d/dt + a, L2 = i t d/dt + i a t, [L1, L2] = i L1
    Cplx a = 2.0;
    auto L1 = LinearOperator::derivative(1) + a * LinearOperator::identity();
    auto L2 = LinearOperator::derivative(1, RatFunc(mono(1, Cplx(0, 1)))) +
              LinearOperator::mult(mono(1, Cplx(0, 1) * a));
    auto lhs = commutator(L1, L2);
    auto rhs = Cplx(0, 1) * L1;
    CHECK(action_distance(lhs, rhs, -4, 12) == doctest::Approx(0.0));
}

TEST_CASE("apply: Euler operator and degree lowering tau") {
    auto euler = LinearOperator::derivative(1, RatFunc(Laurent::t()));
    CHECK(apply(euler, mono(3)) == mono(3, 3.0));

    // tau = (T^{1/2} - T^{-1/2}) / (2t)
    RatFunc half_over_t(Laurent(0.5), Laurent::t());
    auto tau = LinearOperator::shift(Frac(1, 2), half_over_t) +
               LinearOperator::shift(Frac(-1, 2), -half_over_t);
    CHECK(apply(tau, mono(2)) == Laurent::one());
    CHECK(apply(tau, mono(0)).is_zero());
}

TEST_CASE("apply: E1 printed L1 diagonal on monomials") {
    // L1 = -4 w t d/dt + E - 2 w (1+b) acting on t^n
    double w = 1.0, b = 0.5;
    Cplx E = -14.0;
    auto L1 = LinearOperator::derivative(1, RatFunc(mono(1, -4.0 * w))) +
              LinearOperator::mult(Laurent(E - 2.0 * w * (1.0 + b)));
    for (int n = 0; n <= 5; ++n) {
        Laurent r = apply(L1, mono(n));
        CHECK(r == mono(n, E - 2.0 * w * (1.0 + b) - 4.0 * w * n));
    }
}

TEST_CASE("apply throws on genuinely rational results") {
    // 1/t alone is still Laurent; a non-monomial denominator is not.
    RatFunc inv(Laurent::one(), Laurent::t() + Laurent::one());
    auto op = LinearOperator::shift(Frac(1), inv);
    CHECK_THROWS_AS(apply(op, mono(0)), NonPolynomialResult);
    auto mono_den = LinearOperator::shift(Frac(1), RatFunc(Laurent::one(), Laurent::t()));
    CHECK(apply(mono_den, mono(0)) == mono(-1));
}

TEST_CASE("nc_evaluate: symmetrizer over matrices") {
    MatrixRing ring{2};
    Mat X(2), Y(2);
    X.at(0, 0) = 1; X.at(1, 1) = 2;        // diag(1,2)
    Y.at(0, 1) = 1; Y.at(1, 0) = 1;        // [[0,1],[1,0]]
    std::map<Symbol, Mat> bind{{"X", X}, {"Y", Y}};

    auto xy = nc_evaluate(NCExpr::symm({"X", "Y"}), bind, ring);
    Mat expect = X * Y + Y * X;
    CHECK((xy - expect).frobenius() == doctest::Approx(0.0));

    // {L1,L1,L2} with L1 = diag(1,2), L2 = [[0,1],[1,0]]: brute-force
    // six-product sum gives 2(L1^2 L2 + L1 L2 L1 + L2 L1^2) = [[0,14],[14,0]].
    std::map<Symbol, Mat> bind2{{"L1", X}, {"L2", Y}};
    auto s = nc_evaluate(NCExpr::symm({"L1", "L1", "L2"}), bind2, ring);
    Mat brute(2);
    std::vector<std::vector<Mat>> words = {
        {X, X, Y}, {X, Y, X}, {X, X, Y}, {X, Y, X}, {Y, X, X}, {Y, X, X}};
    for (auto& w : words) brute = brute + w[0] * w[1] * w[2];
    CHECK((s - brute).frobenius() == doctest::Approx(0.0));
    CHECK(s.at(0, 1).real() == doctest::Approx(14.0));
    CHECK(s.at(1, 0).real() == doctest::Approx(14.0));
    CHECK(s.at(0, 0).real() == doctest::Approx(0.0));
}

TEST_CASE("nc_evaluate: unbound symbol") {
    MatrixRing ring{2};
    std::map<Symbol, Mat> bind;
    CHECK_THROWS_AS(nc_evaluate(NCExpr::sym("Q"), bind, ring), UnboundSymbol);
}

TEST_CASE("symmetrizer expansion conventions") {
    auto e = NCExpr::symm({"a", "b", "c"}).expanded();
    CHECK(e.terms().size() == 6);
    for (auto& t : e.terms()) {
        CHECK(t.coeff.real() == doctest::Approx(1.0));
        CHECK(t.word.size() == 3);
    }
    // idempotent expansion
    auto e2 = e.expanded();
    CHECK(e2.terms().size() == 6);

    auto p = NCExpr::symm({"a", "b"}).expanded();
    CHECK(p.terms().size() == 2);
}

TEST_CASE("composition is associative (exact on integer coefficients)") {
    std::mt19937 rng(42);
    for (int i = 0; i < 12; ++i) {
        auto a = random_diff_op(rng, 2, 2);
        auto b = random_diff_op(rng, 2, 2);
        auto c = random_diff_op(rng, 2, 2);
        CHECK(structurally_equal(compose(a, compose(b, c)), compose(compose(a, b), c)));
    }
}

TEST_CASE("commutator is bilinear, antisymmetric, satisfies Jacobi") {
    std::mt19937 rng(43);
    for (int i = 0; i < 8; ++i) {
        auto a = random_diff_op(rng, 2, 3);
        auto b = random_diff_op(rng, 2, 3);
        auto c = random_diff_op(rng, 2, 3);
        CHECK(structurally_equal(commutator(a, b), Cplx(-1.0) * commutator(b, a)));
        CHECK(structurally_equal(commutator(a + b, c), commutator(a, c) + commutator(b, c)));
        auto jac = commutator(commutator(a, b), c) + commutator(commutator(b, c), a) +
                   commutator(commutator(c, a), b);
        CHECK(jac.is_zero());
    }
}

TEST_CASE("master oracle: apply(compose(a,b), f) == apply(a, apply(b, f))") {
    std::mt19937 rng(44);
    for (int i = 0; i < 8; ++i) {
        auto a = random_diff_op(rng, 2, 2);
        auto b = random_diff_op(rng, 2, 2);
        auto ab = compose(a, b);
        for (int n = -4; n <= 12; ++n) {
            Laurent f = mono(n);
            Laurent lhs = apply(ab, f);
            Laurent rhs = apply(a, apply(b, f));
            CHECK((lhs - rhs).norm2() == doctest::Approx(0.0).epsilon(1e-12));
        }
    }
    // shift side
    RatFunc half_over_t(Laurent(0.5), Laurent::t());
    auto tau = LinearOperator::shift(Frac(1, 2), half_over_t) +
               LinearOperator::shift(Frac(-1, 2), -half_over_t);
    auto tt = compose(tau, tau);
    for (int n = 0; n <= 8; n += 2) {
        Laurent lhs = apply(tt, mono(n));
        Laurent rhs = apply(tau, apply(tau, mono(n)));
        CHECK((lhs - rhs).norm2() < 1e-10 * (1.0 + rhs.norm2()));
    }
}

TEST_CASE("normal ordering of d^k o t^j with negative j") {
    for (int k = 1; k <= 3; ++k) {
        for (int j = -4; j <= -1; ++j) {
            auto c = compose(LinearOperator::derivative(k), LinearOperator::mult(mono(j)));
            for (int n = -2; n <= 6; ++n) {
                Laurent f = mono(n);
                Laurent lhs = apply(c, f);
                Laurent rhs = mono(j) * f;
                rhs = rhs.derivative(k);
                CHECK((lhs - rhs).norm2() == doctest::Approx(0.0).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("mixed kinds are rejected") {
    auto d = LinearOperator::derivative(1);
    auto T = LinearOperator::shift(Frac(1));
    CHECK_THROWS_AS(compose(d, T), MixedKindError);
    CHECK_THROWS_AS(commutator(d, T), MixedKindError);
    // neutral operators combine with either kind
    auto m = LinearOperator::mult(mono(2));
    CHECK_NOTHROW(compose(m, T));
    CHECK_NOTHROW(compose(d, m));
}
