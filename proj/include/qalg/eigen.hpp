#pragma once

#include <limits>

#include "qalg/matrix.hpp"

namespace qalg {

// Right eigenpairs: values[k] pairs with column k of vectors.
struct EigenPairs {
    std::vector<Cplx> values;
    Mat vectors;
};

namespace eig_detail {

struct Givens {
    Cplx c, s;  // [c, s; -conj(s), conj(c)], unitary
    int k;
};

inline Givens make_givens(Cplx x, Cplx z, int k) {
    double nx = std::abs(x), nz = std::abs(z);
    if (nz == 0.0) return {Cplx(1.0), Cplx(0.0), k};
    double r = std::hypot(nx, nz);
    Cplx c, s;
    if (nx == 0.0) {
        c = 0.0;
        s = std::conj(z) / nz;
    } else {
        c = nx / r;
        s = (x / nx) * std::conj(z) / r;
    }
    return {c, s, k};
}

// rows k,k+1 from the left: [c, s; -conj(s), conj(c)]
inline void apply_left(Mat& m, const Givens& g) {
    for (int j = 0; j < m.n; ++j) {
        Cplx x = m.at(g.k, j), z = m.at(g.k + 1, j);
        m.at(g.k, j) = g.c * x + g.s * z;
        m.at(g.k + 1, j) = -std::conj(g.s) * x + std::conj(g.c) * z;
    }
}

// columns k,k+1 from the right with the inverse rotation
inline void apply_right(Mat& m, const Givens& g) {
    for (int i = 0; i < m.n; ++i) {
        Cplx x = m.at(i, g.k), z = m.at(i, g.k + 1);
        m.at(i, g.k) = x * std::conj(g.c) + z * std::conj(g.s);
        m.at(i, g.k + 1) = -x * g.s + z * g.c;
    }
}

inline Cplx wilkinson_shift(const Mat& h, int hi) {
    Cplx a = h.at(hi - 1, hi - 1), b = h.at(hi - 1, hi);
    Cplx c = h.at(hi, hi - 1), d = h.at(hi, hi);
    Cplx tr2 = (a - d) * 0.5;
    Cplx disc = std::sqrt(tr2 * tr2 + b * c);
    Cplx mu1 = d + tr2 + disc, mu2 = d + tr2 - disc;
    return std::abs(mu1 - d) < std::abs(mu2 - d) ? mu1 : mu2;
}

// Householder reduction to upper Hessenberg, accumulating the unitary Q.
inline void hessenberg(Mat& a, Mat& q) {
    int n = a.n;
    for (int k = 0; k < n - 2; ++k) {
        double xnorm = 0.0;
        for (int i = k + 1; i < n; ++i) xnorm += abs2(a.at(i, k));
        xnorm = std::sqrt(xnorm);
        if (xnorm < 1e-300) continue;
        Cplx x0 = a.at(k + 1, k);
        Cplx alpha = (std::abs(x0) > 0.0 ? -(x0 / std::abs(x0)) : Cplx(-1.0)) * xnorm;
        std::vector<Cplx> v(n, 0.0);
        v[k + 1] = x0 - alpha;
        for (int i = k + 2; i < n; ++i) v[i] = a.at(i, k);
        double vn2 = 0.0;
        for (int i = k + 1; i < n; ++i) vn2 += abs2(v[i]);
        if (vn2 < 1e-300) continue;
        // A <- (I - 2 v v^H / v^H v) A (both sides), Q <- Q (I - 2 v v^H/..)
        for (int j = 0; j < n; ++j) {
            Cplx dot = 0.0;
            for (int i = k + 1; i < n; ++i) dot += std::conj(v[i]) * a.at(i, j);
            dot *= 2.0 / vn2;
            for (int i = k + 1; i < n; ++i) a.at(i, j) -= dot * v[i];
        }
        for (int i = 0; i < n; ++i) {
            Cplx dot = 0.0;
            for (int j = k + 1; j < n; ++j) dot += a.at(i, j) * v[j];
            dot *= 2.0 / vn2;
            for (int j = k + 1; j < n; ++j) a.at(i, j) -= dot * std::conj(v[j]);
        }
        for (int i = 0; i < n; ++i) {
            Cplx dot = 0.0;
            for (int j = k + 1; j < n; ++j) dot += q.at(i, j) * v[j];
            dot *= 2.0 / vn2;
            for (int j = k + 1; j < n; ++j) q.at(i, j) -= dot * std::conj(v[j]);
        }
    }
}

// Back-substitution for (T - lambda) y = 0 on an upper triangular T,
// pivot at index `piv`.
inline std::vector<Cplx> upper_null_vector(const Mat& t, Cplx lambda, int piv, double scale) {
    int n = t.n;
    std::vector<Cplx> y(n, 0.0);
    y[piv] = 1.0;
    double guard = std::max(scale, 1.0) * 1e-290;
    (void)guard;
    for (int k = piv - 1; k >= 0; --k) {
        Cplx acc = 0.0;
        for (int j = k + 1; j <= piv; ++j) acc += t.at(k, j) * y[j];
        Cplx d = t.at(k, k) - lambda;
        if (std::abs(d) < 1e-14 * std::max(scale, 1.0)) d = Cplx(1e-14 * std::max(scale, 1.0));
        y[k] = -acc / d;
    }
    return y;
}

inline void normalize_vector(std::vector<Cplx>& v) {
    int best = 0;
    double bm = -1.0;
    for (size_t i = 0; i < v.size(); ++i)
        if (std::abs(v[i]) > bm) { bm = std::abs(v[i]); best = static_cast<int>(i); }
    if (bm <= 0.0) return;
    Cplx phase = v[best] / std::abs(v[best]);
    double norm = 0.0;
    for (auto& x : v) norm += abs2(x);
    norm = std::sqrt(norm);
    for (auto& x : v) x /= (phase * norm);
}

// one inverse-iteration sweep on (M - lambda I) to polish a computed vector
inline void refine_eigenvector(const Mat& m, Cplx lambda, std::vector<Cplx>& v, double scale) {
    int n = m.n;
    Mat a = m;
    Cplx shift = lambda + Cplx(1e-13 * std::max(scale, 1.0));
    for (int i = 0; i < n; ++i) a.at(i, i) -= shift;
    // LU with partial pivoting
    std::vector<int> piv(n);
    for (int col = 0; col < n; ++col) {
        int p = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a.at(r, col)) > std::abs(a.at(p, col))) p = r;
        piv[col] = p;
        if (p != col)
            for (int j = 0; j < n; ++j) std::swap(a.at(col, j), a.at(p, j));
        Cplx d = a.at(col, col);
        if (std::abs(d) < 1e-300) d = Cplx(1e-300);
        for (int r = col + 1; r < n; ++r) {
            Cplx f = a.at(r, col) / d;
            a.at(r, col) = f;
            for (int j = col + 1; j < n; ++j) a.at(r, j) -= f * a.at(col, j);
        }
    }
    for (int sweep = 0; sweep < 2; ++sweep) {
        std::vector<Cplx> x = v;
        for (int col = 0; col < n; ++col)
            if (piv[col] != col) std::swap(x[col], x[piv[col]]);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < r; ++c) x[r] -= a.at(r, c) * x[c];
        for (int r = n - 1; r >= 0; --r) {
            for (int c = r + 1; c < n; ++c) x[r] -= a.at(r, c) * x[c];
            Cplx d = a.at(r, r);
            if (std::abs(d) < 1e-300) d = Cplx(1e-300);
            x[r] /= d;
        }
        double nn = 0.0;
        for (auto& y : x) nn += abs2(y);
        if (!(nn > 0.0) || !std::isfinite(nn)) return;
        nn = std::sqrt(nn);
        for (auto& y : x) y /= nn;
        v = x;
    }
    normalize_vector(v);
}

} // namespace eig_detail

// Hessenberg + Wilkinson-shifted QR for dense complex matrices (desk scale).
// Triangular inputs short-circuit to a diagonal read-off plus substitution.
inline EigenPairs eigenpairs(const Mat& m_in, double tol = 1e-12) {
    using namespace eig_detail;
    int n = m_in.n;
    if (n == 0) return {};
    EigenPairs out;
    out.vectors = Mat(n);
    double scale = m_in.frobenius();

    double lower = 0.0, upper = 0.0;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            if (i > j) lower += abs2(m_in.at(i, j));
            if (i < j) upper += abs2(m_in.at(i, j));
        }
    lower = std::sqrt(lower);
    upper = std::sqrt(upper);

    if (lower <= tol * std::max(scale, 1.0)) {
        // already upper triangular
        for (int i = 0; i < n; ++i) out.values.push_back(m_in.at(i, i));
        for (int i = 0; i < n; ++i) {
            auto y = upper_null_vector(m_in, out.values[i], i, scale);
            normalize_vector(y);
            for (int r = 0; r < n; ++r) out.vectors.at(r, i) = y[r];
        }
        return out;
    }
    if (upper <= tol * std::max(scale, 1.0)) {
        // lower triangular: transpose trick (forward substitution)
        Mat t(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) t.at(i, j) = m_in.at(n - 1 - i, n - 1 - j);
        for (int i = 0; i < n; ++i) out.values.push_back(m_in.at(i, i));
        for (int i = 0; i < n; ++i) {
            auto y = upper_null_vector(t, m_in.at(i, i), n - 1 - i, scale);
            std::vector<Cplx> v(n);
            for (int r = 0; r < n; ++r) v[r] = y[n - 1 - r];
            normalize_vector(v);
            for (int r = 0; r < n; ++r) out.vectors.at(r, i) = v[r];
        }
        return out;
    }

    Mat h = m_in;
    Mat q = Mat::identity(n);
    hessenberg(h, q);

    const double eps = std::numeric_limits<double>::epsilon();
    int hi = n - 1;
    int iter = 0, iter_cap = 100 * n, stuck = 0;
    while (hi > 0) {
        // deflate
        bool deflated = true;
        while (hi > 0 && deflated) {
            double s = std::abs(h.at(hi - 1, hi - 1)) + std::abs(h.at(hi, hi));
            if (s == 0.0) s = scale;
            if (std::abs(h.at(hi, hi - 1)) <= eps * 8.0 * s) {
                h.at(hi, hi - 1) = 0.0;
                --hi;
                stuck = 0;
            } else {
                deflated = false;
            }
        }
        if (hi == 0) break;
        int lo = hi;
        while (lo > 0) {
            double s = std::abs(h.at(lo - 1, lo - 1)) + std::abs(h.at(lo, lo));
            if (s == 0.0) s = scale;
            if (std::abs(h.at(lo, lo - 1)) <= eps * 8.0 * s) {
                h.at(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }
        if (++iter > iter_cap)
            throw NoConvergence("qr iteration cap at dim " + std::to_string(n) +
                                ", residual " + std::to_string(std::abs(h.at(hi, hi - 1))));
        Cplx mu = wilkinson_shift(h, hi);
        if (++stuck % 12 == 0) mu = h.at(hi, hi) + Cplx(std::abs(h.at(hi, hi - 1)));
        // Rotations from the QR factorization of the shifted window,
        // applied as a similarity to the full matrix.
        Mat r = h;
        for (int i = lo; i <= hi; ++i) r.at(i, i) -= mu;
        std::vector<Givens> rots;
        for (int k = lo; k < hi; ++k) {
            Givens g = make_givens(r.at(k, k), r.at(k + 1, k), k);
            apply_left(r, g);
            rots.push_back(g);
        }
        for (auto& g : rots) apply_left(h, g);
        for (auto& g : rots) apply_right(h, g);
        for (auto& g : rots) apply_right(q, g);
    }

    for (int i = 0; i < n; ++i) out.values.push_back(h.at(i, i));
    // clean below-diagonal dust so back-substitution sees a triangular matrix
    for (int j = 0; j < n; ++j)
        for (int i = j + 1; i < n; ++i) h.at(i, j) = 0.0;
    for (int i = 0; i < n; ++i) {
        auto y = upper_null_vector(h, out.values[i], i, scale);
        std::vector<Cplx> v(n, 0.0);
        for (int r = 0; r < n; ++r) {
            Cplx acc = 0.0;
            for (int k = 0; k <= i; ++k) acc += q.at(r, k) * y[k];
            v[r] = acc;
        }
        normalize_vector(v);
        refine_eigenvector(m_in, out.values[i], v, scale);
        for (int r = 0; r < n; ++r) out.vectors.at(r, i) = v[r];
    }
    return out;
}

inline EigenPairs eigenpairs(const RepMatrix& rep, double tol = 1e-12) {
    return eigenpairs(rep.mat, tol);
}

} // namespace qalg
