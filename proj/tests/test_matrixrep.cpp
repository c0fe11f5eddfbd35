#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qalg/eigen.hpp"
#include "qalg/matrix.hpp"

using namespace qalg;

namespace {

Laurent mono(int k, Cplx c = 1.0) { return Laurent::monomial(k, c); }

double eigen_multiset_distance(std::vector<Cplx> a, std::vector<Cplx> b) {
    if (a.size() != b.size()) return 1e300;
    double worst = 0.0;
    std::vector<bool> used(b.size(), false);
    for (auto& x : a) {
        int best = -1;
        double bd = 1e300;
        for (size_t j = 0; j < b.size(); ++j) {
            if (used[j]) continue;
            double d = std::abs(x - b[j]);
            if (d < bd) { bd = d; best = static_cast<int>(j); }
        }
        used[best] = true;
        worst = std::max(worst, bd);
    }
    return worst;
}

Mat random_matrix(std::mt19937& rng, int n, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Mat m(n);
    for (auto& v : m.a) v = Cplx(u(rng), u(rng)) * scale;
    return m;
}

// Characteristic polynomial via Newton's identities on power-sum traces.
std::vector<Cplx> char_poly(const Mat& m) {
    int n = m.n;
    std::vector<Cplx> p(n + 1, 0.0);
    Mat power = Mat::identity(n);
    for (int k = 1; k <= n; ++k) {
        power = m * power;
        for (int i = 0; i < n; ++i) p[k] += power.at(i, i);
    }
    std::vector<Cplx> e(n + 1, 0.0);
    e[0] = 1.0;
    for (int k = 1; k <= n; ++k) {
        Cplx s = 0.0;
        for (int i = 1; i <= k; ++i) s += std::pow(Cplx(-1.0), i - 1) * e[k - i] * p[i];
        e[k] = s / static_cast<double>(k);
    }
    std::vector<Cplx> c(n + 1, 0.0);
    for (int k = 0; k <= n; ++k) c[n - k] = std::pow(Cplx(-1.0), k) * e[k];
    return c;
}

Cplx poly_eval(const std::vector<Cplx>& c, Cplx x) {
    Cplx r = 0.0;
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) r = r * x + c[k];
    return r;
}

} // namespace

TEST_CASE("to_matrix: printed E1 L1 diagonal") {
    double w = 1.0, b = 0.5;
    Cplx E = -14.0;
    auto L1 = LinearOperator::derivative(1, RatFunc(mono(1, -4.0 * w))) +
              LinearOperator::mult(Laurent(E - 2.0 * w * (1.0 + b)));
    auto rep = to_matrix(L1, BasisSpec::monomial(3));
    CHECK(rep.spill == doctest::Approx(0.0));
    CHECK(rep.mat.at(0, 0).real() == doctest::Approx(-17.0));
    CHECK(rep.mat.at(1, 1).real() == doctest::Approx(-21.0));
    CHECK(rep.mat.at(2, 2).real() == doctest::Approx(-25.0));
    CHECK(rep.mat.at(0, 1) == Cplx(0.0));
}

TEST_CASE("to_matrix: identity on every basis family") {
    auto id = LinearOperator::identity();
    for (auto basis : {BasisSpec::monomial(4), BasisSpec::even_monomial(3),
                       BasisSpec::lattice(3, Cplx(0.7), Frac(1))}) {
        auto rep = to_matrix(id, basis);
        CHECK(rep.spill == doctest::Approx(0.0));
        CHECK((rep.mat - Mat::identity(basis.dim)).frobenius() == doctest::Approx(0.0));
    }
}

TEST_CASE("to_matrix: multiplication by t spills the top") {
    auto t = LinearOperator::mult(Laurent::t());
    auto rep = to_matrix(t, BasisSpec::monomial(3));
    CHECK(rep.spill == doctest::Approx(1.0));  // t * t^2 = t^3 falls outside
    CHECK(rep.mat.at(1, 0).real() == doctest::Approx(1.0));
    CHECK(rep.mat.at(2, 1).real() == doctest::Approx(1.0));
}

TEST_CASE("to_matrix: lattice rules") {
    Cplx offset = 0.0;
    int m = 3;
    // T^1 with coefficient vanishing at the top point keeps the span
    Laurent topstop = Laurent(Cplx(static_cast<double>(m - 1))) - Laurent::t();
    auto op = LinearOperator::shift(Frac(1), RatFunc(topstop));
    auto rep = to_matrix(op, BasisSpec::lattice(m, offset, Frac(1)));
    CHECK(rep.spill == doctest::Approx(0.0));
    // column n holds the action on the delta function at p_n
    CHECK(rep.mat.at(0, 1).real() == doctest::Approx(2.0));
    CHECK(rep.mat.at(1, 2).real() == doctest::Approx(1.0));

    auto leaky = LinearOperator::shift(Frac(1));
    auto rep2 = to_matrix(leaky, BasisSpec::lattice(m, offset, Frac(1)));
    CHECK(rep2.spill > 0.5);  // top point references f(m) outside the lattice

    auto d = LinearOperator::derivative(1);
    CHECK_THROWS_AS(to_matrix(d, BasisSpec::lattice(m, offset, Frac(1))), BasisKindMismatch);

    // half-integer shift on an integer lattice never lands on lattice points
    auto half = LinearOperator::shift(Frac(1, 2));
    auto rep3 = to_matrix(half, BasisSpec::lattice(m, offset, Frac(1)));
    CHECK(rep3.spill > 1.0);
}

TEST_CASE("to_matrix is a ring homomorphism on span-preserving operators") {
    auto euler = LinearOperator::derivative(1, RatFunc(Laurent::t()));
    auto d = LinearOperator::derivative(1);
    auto q = LinearOperator::mult(Laurent(2.5)) + LinearOperator::derivative(2, RatFunc(mono(2)));
    auto basis = BasisSpec::monomial(6);
    for (auto& [a, b] : std::vector<std::pair<LinearOperator, LinearOperator>>{
             {euler, d}, {q, euler}, {d, q}}) {
        auto ra = to_matrix(a, basis), rb = to_matrix(b, basis);
        CHECK(ra.spill == doctest::Approx(0.0));
        CHECK(rb.spill == doctest::Approx(0.0));
        auto rab = to_matrix(compose(a, b), basis);
        double rel = (rab.mat - ra.mat * rb.mat).frobenius() /
                     (1.0 + (ra.mat * rb.mat).frobenius());
        CHECK(rel < 1e-10);
        auto rcomm = to_matrix(commutator(a, b), basis);
        double rel2 = (rcomm.mat - (ra.mat * rb.mat - rb.mat * ra.mat)).frobenius() /
                      (1.0 + rcomm.mat.frobenius());
        CHECK(rel2 < 1e-10);
    }
}

TEST_CASE("eigenpairs: triangular short-circuits") {
    Mat m(2);
    m.at(0, 0) = 2.0; m.at(0, 1) = 1.0; m.at(1, 1) = 3.0;
    auto ep = eigenpairs(m);
    CHECK(eigen_multiset_distance(ep.values, {2.0, 3.0}) < 1e-14);
    for (int k = 0; k < 2; ++k) {
        Cplx r0 = m.at(0, 0) * ep.vectors.at(0, k) + m.at(0, 1) * ep.vectors.at(1, k) -
                  ep.values[k] * ep.vectors.at(0, k);
        Cplx r1 = m.at(1, 1) * ep.vectors.at(1, k) - ep.values[k] * ep.vectors.at(1, k);
        CHECK(std::sqrt(abs2(r0) + abs2(r1)) < 1e-8 * m.frobenius());
    }
}

TEST_CASE("eigenpairs: symmetric flip matrix") {
    Mat m(2);
    m.at(0, 1) = 1.0; m.at(1, 0) = 1.0;
    auto ep = eigenpairs(m);
    CHECK(eigen_multiset_distance(ep.values, {-1.0, 1.0}) < 1e-12);
    double s = 1.0 / std::sqrt(2.0);
    for (int k = 0; k < 2; ++k) {
        double lam = ep.values[k].real();
        CHECK(std::abs(ep.vectors.at(0, k)) == doctest::Approx(s).epsilon(1e-10));
        CHECK((ep.vectors.at(1, k) / ep.vectors.at(0, k)).real() == doctest::Approx(lam));
    }
}

TEST_CASE("eigenpairs: diagonal read-off is exact") {
    Mat m(4);
    std::vector<Cplx> d{1.5, -2.25, Cplx(0.5, 1.0), 7.0};
    for (int i = 0; i < 4; ++i) m.at(i, i) = d[i];
    auto ep = eigenpairs(m);
    CHECK(eigen_multiset_distance(ep.values, d) < 1e-12);
}

TEST_CASE("eigenpairs: general complex matrices vs characteristic polynomial") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 6; ++trial) {
        int n = 3 + static_cast<int>(rng() % 4);
        Mat m = random_matrix(rng, n);
        auto ep = eigenpairs(m);
        auto cp = char_poly(m);
        for (auto& lam : ep.values) {
            double scale = 0.0;
            Cplx xp = 1.0;
            for (int k = 0; k <= n; ++k) { scale += std::abs(cp[k] * xp); xp *= lam; }
            CHECK(std::abs(poly_eval(cp, lam)) < 1e-9 * (1.0 + scale));
        }
        for (int k = 0; k < n; ++k) {
            std::vector<Cplx> v(n), mv(n, 0.0);
            for (int i = 0; i < n; ++i) v[i] = ep.vectors.at(i, k);
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i) mv[i] += m.at(i, j) * v[j];
            double r = 0.0, vn = 0.0;
            for (int i = 0; i < n; ++i) {
                r += abs2(mv[i] - ep.values[k] * v[i]);
                vn += abs2(v[i]);
            }
            CHECK(std::sqrt(r) < 1e-8 * m.frobenius() * std::sqrt(vn));
        }
    }
}

TEST_CASE("eigenpairs: spectrum is similarity invariant") {
    std::mt19937 rng(12);
    Mat m = random_matrix(rng, 5);
    Mat s = Mat::identity(5) + random_matrix(rng, 5, 0.2);
    // invert s by Gauss-Jordan with partial pivoting
    Mat inv = Mat::identity(5), a = s;
    for (int col = 0; col < 5; ++col) {
        int piv = col;
        for (int r = col + 1; r < 5; ++r)
            if (std::abs(a.at(r, col)) > std::abs(a.at(piv, col))) piv = r;
        if (piv != col)
            for (int j = 0; j < 5; ++j) {
                std::swap(a.at(col, j), a.at(piv, j));
                std::swap(inv.at(col, j), inv.at(piv, j));
            }
        Cplx pv = a.at(col, col);
        for (int j = 0; j < 5; ++j) { a.at(col, j) /= pv; inv.at(col, j) /= pv; }
        for (int r = 0; r < 5; ++r) {
            if (r == col) continue;
            Cplx f = a.at(r, col);
            if (f == Cplx(0.0)) continue;
            for (int j = 0; j < 5; ++j) {
                a.at(r, j) -= f * a.at(col, j);
                inv.at(r, j) -= f * inv.at(col, j);
            }
        }
    }
    Mat conj = s * m * inv;
    auto e1 = eigenpairs(m), e2 = eigenpairs(conj);
    CHECK(eigen_multiset_distance(e1.values, e2.values) < 1e-8 * (1.0 + m.frobenius()));
}

TEST_CASE("matrix_residual basics") {
    std::mt19937 rng(13);
    BasisSpec basis = BasisSpec::monomial(4);
    RepMatrix a{random_matrix(rng, 4), 0.0, basis};

    auto comm = NCExpr::sym("L1") * NCExpr::sym("L1") - NCExpr::sym("L1") * NCExpr::sym("L1");
    CHECK(matrix_residual(comm, {{"L1", a}}) == doctest::Approx(0.0));

    auto rel = NCExpr::sym("L1") * NCExpr::sym("H") - NCExpr::sym("H") * NCExpr::sym("L1");
    RepMatrix hI{Mat::identity(4), 0.0, basis};
    CHECK(matrix_residual(rel, {{"L1", a}, {"H", hI}}) == doctest::Approx(0.0));
    RepMatrix hP = hI;
    hP.mat.at(2, 1) += 1.0;  // perturb one entry by 1
    double res = matrix_residual(rel, {{"L1", a}, {"H", hP}});
    CHECK(res > 0.1 / (1.0 + a.mat.frobenius() * hP.mat.frobenius()));

    RepMatrix wrong{random_matrix(rng, 3), 0.0, BasisSpec::monomial(3)};
    CHECK_THROWS_AS(matrix_residual(rel, {{"L1", a}, {"H", wrong}}), DimensionMismatch);
    CHECK_THROWS_AS(matrix_residual(NCExpr::sym("Zz"), {{"L1", a}}), UnboundSymbol);
}

TEST_CASE("matrix mode: E18 sl2 ladder relation at the quantized energy") {
    // X = -i(t d/dt + 1/2 + alpha/(2 sqrt(E))), A = (E/4) d/dt,
    // Ad = -4t(t d/dt + 1 + alpha/sqrt(E)). E = alpha^2/m^2 closes the top on
    // the sqrt(E) = -alpha/m branch: Ad t^{m-1} = -4(m + alpha/sqrt(E)) t^m.
    double alpha = 2.0;
    int m = 4;
    double rtE = -alpha / m;
    Cplx E = rtE * rtE;
    auto X = Cplx(0, -1) * (LinearOperator::derivative(1, RatFunc(Laurent::t())) +
                            LinearOperator::mult(Laurent(0.5 + alpha / (2.0 * rtE))));
    auto A = LinearOperator::derivative(1, RatFunc(Laurent(E * 0.25)));
    auto Ad = LinearOperator::derivative(1, RatFunc(mono(2, -4.0))) +
              LinearOperator::mult(mono(1, -4.0 * (1.0 + alpha / rtE)));
    auto basis = BasisSpec::monomial(m);
    std::map<Symbol, RepMatrix> bind{
        {"X", to_matrix(X, basis)}, {"A", to_matrix(A, basis)}, {"Ad", to_matrix(Ad, basis)}};
    CHECK(bind["Ad"].spill == doctest::Approx(0.0));
    auto rel = NCExpr::sym("A") * NCExpr::sym("X") - NCExpr::sym("X") * NCExpr::sym("A") -
               Cplx(0, -1) * NCExpr::sym("A");
    CHECK(matrix_residual(rel, bind) < 1e-12);
}
