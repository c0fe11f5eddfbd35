#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qalg/specfun.hpp"

using namespace qalg;

namespace {

// 16-point Gauss-Legendre rule on [-1,1], nodes found by Newton iteration on
// the Legendre recurrence. Independent of the hypergeometric code under test.
struct GaussRule {
    std::vector<double> x, w;
};

GaussRule gauss_legendre_16() {
    const int n = 16;
    GaussRule g;
    g.x.resize(n);
    g.w.resize(n);
    for (int i = 0; i < n; ++i) {
        double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (t * p1 - p0) / (t * t - 1.0);
            double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (t * p1 - p0) / (t * t - 1.0);
        g.x[i] = t;
        g.w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
    return g;
}

} // namespace

TEST_CASE("pochhammer") {
    CHECK(pochhammer(Cplx(3.7, 0.2), 0) == Cplx(1.0));
    CHECK(pochhammer(3.0, 2).real() == doctest::Approx(12.0));
    CHECK(std::abs(pochhammer(-2.0, 3)) == doctest::Approx(0.0));
}

TEST_CASE("terminating hypergeometric series") {
    CHECK(hyp_terminating({{-5.0, 1.3}, {0.7}, 0.0}).real() == doctest::Approx(1.0));

    Cplx b = 1.3, c = 0.7, z = 0.41;
    Cplx v = hyp_terminating({{-1.0, b}, {c}, z});
    CHECK(std::abs(v - (Cplx(1.0) - b / c * z)) < 1e-14);

    // reproducing-kernel sample of section 2: 2F1(-2, -5/2; 1/2; 1) = 16
    Cplx k = hyp_terminating({{-2.0, -2.5}, {0.5}, 1.0});
    CHECK(k.real() == doctest::Approx(16.0));

    // termination at the smallest nonpositive-integer upper parameter
    CHECK(hyp_terminating({{-1.0, -3.0}, {2.0}, 1.0}).real() ==
          doctest::Approx((1.0 + (-1.0) * (-3.0) / 2.0)));

    CHECK_THROWS_AS(hyp_terminating({{-4.0, 2.0}, {-2.0}, 0.3}), PoleInLowerParameter);
    CHECK_THROWS_AS(hyp_terminating({{0.5, 2.0}, {1.0}, 0.3}), NoTruncation);
}

TEST_CASE("hypergeometric series is symmetric in its parameter lists") {
    Cplx v1 = hyp_terminating({{-3.0, 1.7, 2.2}, {0.9, 1.4}, 0.6});
    Cplx v2 = hyp_terminating({{2.2, -3.0, 1.7}, {1.4, 0.9}, 0.6});
    CHECK(std::abs(v1 - v2) == doctest::Approx(0.0));
}

TEST_CASE("jacobi polynomials") {
    CHECK(jacobi_P(0, 0.3, 0.9, 0.42).real() == doctest::Approx(1.0));
    for (double x : {-0.7, 0.0, 0.3, 1.0})
        CHECK(jacobi_P(1, 0.0, 0.0, x).real() == doctest::Approx(x));
    CHECK(jacobi_P(2, 1.0, 1.0, 1.0).real() == doctest::Approx(3.0));
    CHECK_THROWS_AS(jacobi_P(3, -2.0, 0.5, 0.3), PoleInLowerParameter);
}

TEST_CASE("legendre orthogonality under 16-point quadrature") {
    auto g = gauss_legendre_16();
    for (int i = 0; i <= 4; ++i)
        for (int j = 0; j <= 4; ++j) {
            double acc = 0.0;
            for (int q = 0; q < 16; ++q)
                acc += g.w[q] * jacobi_P(i, 0.0, 0.0, g.x[q]).real() *
                       jacobi_P(j, 0.0, 0.0, g.x[q]).real();
            if (i == j) CHECK(acc == doctest::Approx(2.0 / (2.0 * i + 1.0)).epsilon(1e-10));
            else CHECK(std::abs(acc) < 1e-10);
        }
}

TEST_CASE("jacobi three-term recurrence holds for the series definition") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-0.9, 0.9);
    Cplx a = 0.37, b = 0.81;
    for (int n = 1; n <= 8; ++n) {
        for (int rep = 0; rep < 4; ++rep) {
            Cplx x = u(rng);
            double dn = n;
            Cplx n1 = 2.0 * (dn + 1.0) * (dn + a + b + 1.0) * (2.0 * dn + a + b);
            Cplx n2 = (2.0 * dn + a + b + 1.0) * (a * a - b * b);
            Cplx n3 = pochhammer(2.0 * dn + a + b, 3);
            Cplx n4 = 2.0 * (dn + a) * (dn + b) * (2.0 * dn + a + b + 2.0);
            Cplx res = n1 * jacobi_P(n + 1, a, b, x) -
                       (n2 + n3 * x) * jacobi_P(n, a, b, x) + n4 * jacobi_P(n - 1, a, b, x);
            double scale = std::abs(n3) * std::abs(jacobi_P(n, a, b, x));
            CHECK(std::abs(res) < 1e-10 * (1.0 + scale));
        }
    }
}

TEST_CASE("laguerre polynomials") {
    CHECK(laguerre_L(0, 0.7, 1.3).real() == doctest::Approx(1.0));
    for (double x : {0.0, 0.5, 2.0})
        CHECK(laguerre_L(1, 0.0, x).real() == doctest::Approx(1.0 - x));
    CHECK(laguerre_L(2, 1.0, 0.0).real() == doctest::Approx(3.0));
}

TEST_CASE("racah polynomials") {
    // 4-point family: alpha + 1 = -N with N = 3
    RacahParams p{-4.0, 1.7, 0.9, 0.6};
    CHECK(racah_R(0, p, 2.0).real() == doctest::Approx(1.0));
    for (int n = 0; n <= 3; ++n) CHECK(racah_R(n, p, 0.0).real() == doctest::Approx(1.0));

    // polynomial-in-lambda form agrees with the series on the lattice
    for (int n = 0; n <= 3; ++n) {
        Laurent poly = racah_poly_in_lambda(n, p);
        for (int x = 0; x <= 3; ++x) {
            Cplx lam = Cplx(x) * (Cplx(x) + p.gamma + p.delta + 1.0);
            CHECK(std::abs(poly.eval(lam) - racah_R(n, p, Cplx(x))) < 1e-12);
        }
    }

    // R_1 is degree one in lambda(x); its root lies inside the lattice range,
    // and R_2's two roots interlace the 3-point lambda lattice (positive family).
    RacahParams q{-3.0, 5.0, 0.9, 0.4};
    Laurent r1 = racah_poly_in_lambda(1, q);
    CHECK(r1.degree() == 1);
    double root1 = (-r1.coeff(0) / r1.coeff(1)).real();
    double lam0 = 0.0;
    double lam2 = (Cplx(2.0) * (Cplx(2.0) + q.gamma + q.delta + 1.0)).real();
    CHECK(root1 > lam0);
    CHECK(root1 < lam2);
    Laurent r2 = racah_poly_in_lambda(2, q);
    CHECK(r2.degree() == 2);
    Cplx A = r2.coeff(2), B = r2.coeff(1), C = r2.coeff(0);
    Cplx disc = std::sqrt(B * B - 4.0 * A * C);
    double ra = ((-B - disc) / (2.0 * A)).real(), rb = ((-B + disc) / (2.0 * A)).real();
    if (ra > rb) std::swap(ra, rb);
    double lam1 = (Cplx(1.0) * (Cplx(1.0) + q.gamma + q.delta + 1.0)).real();
    CHECK(ra > lam0);
    CHECK(ra < lam1);
    CHECK(rb > lam1);
    CHECK(rb < lam2);

    RacahParams bad{0.4, 1.7, 0.9, 0.6};
    CHECK_THROWS_AS(racah_R(1, bad, 1.0), NoTruncation);
}

TEST_CASE("dual Hahn polynomials") {
    int N = 4;
    Cplx g = 0.7, d = 0.4;
    CHECK(dual_hahn_R(0, g, d, N, 2.0).real() == doctest::Approx(1.0));
    for (int n = 0; n <= N; ++n) CHECK(dual_hahn_R(n, g, d, N, 0.0).real() == doctest::Approx(1.0));
    // three-term recurrence in n at lattice points:
    //   lambda(x) R_n = A_n R_{n+1} - (A_n + C_n) R_n + C_n R_{n-1}
    for (int x = 0; x <= N; ++x) {
        Cplx lam = Cplx(x) * (Cplx(x) + g + d + 1.0);
        for (int n = 1; n < N; ++n) {
            Cplx An = (Cplx(n) + g + 1.0) * (Cplx(n) - Cplx(N));
            Cplx Cn = Cplx(n) * (Cplx(n) - d - Cplx(N) - 1.0);
            Cplx res = An * dual_hahn_R(n + 1, g, d, N, Cplx(x)) +
                       Cn * dual_hahn_R(n - 1, g, d, N, Cplx(x)) -
                       (An + Cn) * dual_hahn_R(n, g, d, N, Cplx(x)) -
                       lam * dual_hahn_R(n, g, d, N, Cplx(x));
            CHECK(std::abs(res) < 1e-10 * (1.0 + std::abs(An) + std::abs(Cn)));
        }
    }
}
