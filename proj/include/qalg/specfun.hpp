#pragma once

#include <optional>
#include <vector>

#include "qalg/laurent.hpp"

namespace qalg {

// (x)_n = x (x+1) ... (x+n-1); empty product = 1.
inline Cplx pochhammer(Cplx x, int n) {
    Cplx r(1.0);
    for (int i = 0; i < n; ++i) r *= (x + Cplx(static_cast<double>(i)));
    return r;
}

inline bool is_nonpositive_integer(Cplx x, double tol = 1e-9) {
    double re = x.real();
    if (std::abs(x.imag()) > tol) return false;
    double r = std::round(re);
    return r <= 0.0 && std::abs(re - r) < tol;
}

// Terminating pFq series. At least one upper parameter must be a nonpositive
// integer; termination happens at the smallest such -N.
struct HypSeries {
    std::vector<Cplx> upper;
    std::vector<Cplx> lower;
    Cplx arg;
};

inline int hyp_termination_index(const std::vector<Cplx>& upper) {
    std::optional<int> best;
    for (auto& u : upper)
        if (is_nonpositive_integer(u)) {
            int N = static_cast<int>(std::llround(-u.real()));
            if (!best || N < *best) best = N;
        }
    if (!best) throw NoTruncation("no nonpositive-integer upper parameter");
    return *best;
}

inline Cplx hyp_terminating(const HypSeries& s) {
    int N = hyp_termination_index(s.upper);
    for (auto& l : s.lower)
        if (is_nonpositive_integer(l) && -l.real() < static_cast<double>(N) - 0.5)
            throw PoleInLowerParameter("lower parameter " + std::to_string(l.real()) +
                                       " with termination index " + std::to_string(N));
    Cplx sum(0.0), term(1.0);
    for (int k = 0; k <= N; ++k) {
        sum += term;
        if (k == N) break;
        Cplx factor(1.0);
        for (auto& u : s.upper) factor *= (u + Cplx(static_cast<double>(k)));
        for (auto& l : s.lower) factor /= (l + Cplx(static_cast<double>(k)));
        factor *= s.arg / Cplx(static_cast<double>(k + 1));
        term *= factor;
    }
    return sum;
}

// Same series with a Laurent-polynomial argument; returns the terminating sum
// as a polynomial. Used to build eigenfunction coefficient vectors exactly.
inline Laurent hyp_terminating_poly(const std::vector<Cplx>& upper, const std::vector<Cplx>& lower,
                                    const Laurent& arg) {
    int N = hyp_termination_index(upper);
    for (auto& l : lower)
        if (is_nonpositive_integer(l) && -l.real() < static_cast<double>(N) - 0.5)
            throw PoleInLowerParameter("lower parameter " + std::to_string(l.real()));
    Laurent sum = Laurent::zero(), term = Laurent::one();
    for (int k = 0; k <= N; ++k) {
        sum += term;
        if (k == N) break;
        Cplx factor(1.0);
        for (auto& u : upper) factor *= (u + Cplx(static_cast<double>(k)));
        for (auto& l : lower) factor /= (l + Cplx(static_cast<double>(k)));
        factor /= Cplx(static_cast<double>(k + 1));
        term = factor * (term * arg);
    }
    return sum;
}

// Jacobi P_n^{(a,b)}(x) = ((a+1)_n / n!) 2F1(-n, n+a+b+1; a+1; (1-x)/2)
inline Cplx jacobi_P(int n, Cplx a, Cplx b, Cplx x) {
    Cplx fac = pochhammer(a + 1.0, n);
    for (int i = 1; i <= n; ++i) fac /= static_cast<double>(i);
    HypSeries s{{Cplx(-n), Cplx(static_cast<double>(n)) + a + b + 1.0}, {a + 1.0}, (Cplx(1.0) - x) * 0.5};
    return fac * hyp_terminating(s);
}

// Generalized Laguerre L_n^{(alpha)}(x) = ((alpha+1)_n / n!) 1F1(-n; alpha+1; x)
inline Cplx laguerre_L(int n, Cplx alpha, Cplx x) {
    Cplx fac = pochhammer(alpha + 1.0, n);
    for (int i = 1; i <= n; ++i) fac /= static_cast<double>(i);
    HypSeries s{{Cplx(-n)}, {alpha + 1.0}, x};
    return fac * hyp_terminating(s);
}

struct RacahParams {
    Cplx alpha, beta, gamma, delta;
};

// Askey-scheme Racah polynomial
//   R_n(lambda(x)) = 4F3(-n, n+alpha+beta+1, -x, x+gamma+delta+1;
//                        alpha+1, beta+delta+1, gamma+1; 1)
// with lambda(x) = x(x+gamma+delta+1) and R_n(lambda(0)) = 1. One of the
// standard truncation conditions (alpha+1, beta+delta+1 or gamma+1 = -N)
// must hold; lattice index x is supplied directly.
inline Cplx racah_R(int n, const RacahParams& p, Cplx x) {
    bool trunc = is_nonpositive_integer(p.alpha + 1.0) || is_nonpositive_integer(p.beta + p.delta + 1.0) ||
                 is_nonpositive_integer(p.gamma + 1.0);
    if (!trunc) throw NoTruncation("no Racah truncation parameter is -N");
    HypSeries s{{Cplx(-n), Cplx(static_cast<double>(n)) + p.alpha + p.beta + 1.0, -x,
                 x + p.gamma + p.delta + 1.0},
                {p.alpha + 1.0, p.beta + p.delta + 1.0, p.gamma + 1.0},
                Cplx(1.0)};
    return hyp_terminating(s);
}

// R_n as a polynomial in lambda = x(x+gamma+delta+1):
// (-x)_k (x+gamma+delta+1)_k = prod_{j<k} (j(gamma+delta+1+j) - lambda)
inline Laurent racah_poly_in_lambda(int n, const RacahParams& p) {
    Laurent sum = Laurent::zero(), prod = Laurent::one();
    Cplx gd1 = p.gamma + p.delta + 1.0;
    Cplx num(1.0), den(1.0);
    for (int k = 0; k <= n; ++k) {
        sum += (num / den) * prod;
        if (k == n) break;
        Cplx kk(static_cast<double>(k));
        num *= (Cplx(-n) + kk) * (Cplx(static_cast<double>(n)) + p.alpha + p.beta + 1.0 + kk);
        den *= (p.alpha + 1.0 + kk) * (p.beta + p.delta + 1.0 + kk) * (p.gamma + 1.0 + kk) *
               Cplx(static_cast<double>(k + 1));
        prod *= (Laurent(kk * (gd1 + kk)) - Laurent::t());
    }
    return sum;
}

// Dual Hahn R_n(lambda(x); gamma, delta, N) = 3F2(-n, -x, x+gamma+delta+1;
//                                                 gamma+1, -N; 1)
inline Cplx dual_hahn_R(int n, Cplx gamma, Cplx delta, int N, Cplx x) {
    if (n > N) throw NoTruncation("dual Hahn degree beyond lattice");
    HypSeries s{{Cplx(-n), -x, x + gamma + delta + 1.0},
                {gamma + 1.0, Cplx(-N)},
                Cplx(1.0)};
    return hyp_terminating(s);
}

// Wilson-type polynomial in t^2 with real shifts,
//   w_n(t^2) = sum_k [(-n)_k (n+A+B+C+D-1)_k / ((A+B)_k (A+C)_k (A+D)_k k!)]
//              prod_{j<k} ((A+j)^2 - t^2)
// the Racah eigenfunctions of the generic sphere system in its model variable.
inline Laurent wilson_poly_in_t2(int n, Cplx A, Cplx B, Cplx C, Cplx D) {
    Laurent sum = Laurent::zero(), prod = Laurent::one();
    Cplx num(1.0), den(1.0);
    for (int k = 0; k <= n; ++k) {
        sum += (num / den) * prod;
        if (k == n) break;
        Cplx kk(static_cast<double>(k));
        num *= (Cplx(-n) + kk) * (Cplx(static_cast<double>(n)) + A + B + C + D - 1.0 + kk);
        den *= (A + B + kk) * (A + C + kk) * (A + D + kk) * Cplx(static_cast<double>(k + 1));
        Cplx Aj = A + kk;
        prod *= (Laurent(Aj * Aj) - Laurent::monomial(2, 1.0));
    }
    return sum;
}

} // namespace qalg
