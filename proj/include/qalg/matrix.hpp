#pragma once

#include <limits>
#include <map>
#include <vector>

#include "qalg/ncexpr.hpp"

namespace qalg {

// Dense complex matrix, column-major.
struct Mat {
    int n = 0;
    std::vector<Cplx> a;

    Mat() = default;
    explicit Mat(int dim) : n(dim), a(static_cast<size_t>(dim) * dim, Cplx(0.0)) {}

    Cplx& at(int i, int j) { return a[static_cast<size_t>(j) * n + i]; }
    Cplx at(int i, int j) const { return a[static_cast<size_t>(j) * n + i]; }

    static Mat identity(int dim) {
        Mat m(dim);
        for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
        return m;
    }

    friend Mat operator+(const Mat& x, const Mat& y) {
        if (x.n != y.n) throw DimensionMismatch("matrix add");
        Mat r(x.n);
        for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.a[i] + y.a[i];
        return r;
    }
    friend Mat operator-(const Mat& x, const Mat& y) {
        if (x.n != y.n) throw DimensionMismatch("matrix sub");
        Mat r(x.n);
        for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.a[i] - y.a[i];
        return r;
    }
    friend Mat operator*(Cplx s, const Mat& x) {
        Mat r(x.n);
        for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = s * x.a[i];
        return r;
    }
    friend Mat operator*(const Mat& x, const Mat& y) {
        if (x.n != y.n) throw DimensionMismatch("matrix mul");
        Mat r(x.n);
        for (int j = 0; j < x.n; ++j)
            for (int k = 0; k < x.n; ++k) {
                Cplx v = y.at(k, j);
                if (v == Cplx(0.0)) continue;
                for (int i = 0; i < x.n; ++i) r.at(i, j) += x.at(i, k) * v;
            }
        return r;
    }

    double frobenius() const {
        double s = 0.0;
        for (auto& v : a) s += abs2(v);
        return std::sqrt(s);
    }

    double max_abs() const {
        double s = 0.0;
        for (auto& v : a) s = std::max(s, std::abs(v));
        return s;
    }
};

enum class BasisFamily { Monomial, EvenMonomial, Lattice };

// Monomial spans {t^n : 0 <= n < dim}; EvenMonomial spans {t^{2n}};
// Lattice spans delta functions on {offset + k*step : 0 <= k < dim}.
struct BasisSpec {
    BasisFamily family = BasisFamily::Monomial;
    int dim = 1;
    Cplx lattice_offset = 0.0;
    Frac lattice_step = Frac(1);

    static BasisSpec monomial(int m) { return {BasisFamily::Monomial, m, 0.0, Frac(1)}; }
    static BasisSpec even_monomial(int m) { return {BasisFamily::EvenMonomial, m, 0.0, Frac(1)}; }
    static BasisSpec lattice(int m, Cplx offset, Frac step) {
        return {BasisFamily::Lattice, m, offset, step};
    }

    Cplx point(int k) const { return lattice_offset + Cplx(static_cast<double>(k) * lattice_step.value()); }

    friend bool operator==(const BasisSpec& a, const BasisSpec& b) {
        return a.family == b.family && a.dim == b.dim &&
               a.lattice_offset == b.lattice_offset && a.lattice_step == b.lattice_step;
    }
};

// Truncation of an operator to a finite basis plus the 2-norm of whatever
// falls outside the span ("spill"). spill ~ 0 iff the operator restricts.
struct RepMatrix {
    Mat mat;
    double spill = 0.0;
    BasisSpec basis;
};

namespace detail {

inline void expand_in_monomials(const Laurent& f, int dim, int stride, int col, Mat& m, double& spill2) {
    for (auto& [k, c] : f.terms()) {
        if (k >= 0 && k % stride == 0 && k / stride < dim) m.at(k / stride, col) = c;
        else spill2 += abs2(c);
    }
}

} // namespace detail

inline RepMatrix to_matrix(const LinearOperator& op, const BasisSpec& basis) {
    RepMatrix rep;
    rep.basis = basis;
    rep.mat = Mat(basis.dim);
    double spill2 = 0.0;

    if (basis.family == BasisFamily::Lattice) {
        if (op.kind() == OpKind::Differential)
            throw BasisKindMismatch("differential operator on a lattice basis");
        // (op f)(p_j) = sum_i c_i(p_j) f(p_j + A_i); column n is the action on
        // the delta function at p_n. References outside the lattice count as spill.
        for (int j = 0; j < basis.dim; ++j) {
            Cplx pj = basis.point(j);
            for (const auto& term : op.terms()) {
                Frac A = term.action.shift ? term.action.step : Frac(0);
                Cplx val = Cplx(0.0);
                bool pole = std::abs(term.coeff.den().eval(pj)) < 1e-13;
                if (!pole) val = term.coeff.eval(pj);
                if (pole || !is_finite(val)) {
                    spill2 = std::numeric_limits<double>::infinity();
                    continue;
                }
                Frac pos = A / basis.lattice_step;
                bool on_lattice = pos.is_integer();
                int target = j + static_cast<int>(pos.num);
                if (on_lattice && target >= 0 && target < basis.dim) {
                    // row j of column `target`? No: op e_n lives at rows j with p_j + A = p_n,
                    // i.e. column n = j + A/step receives entry at row j.
                    rep.mat.at(j, target) += val;
                } else {
                    spill2 += abs2(val);
                }
            }
        }
    } else {
        int stride = basis.family == BasisFamily::EvenMonomial ? 2 : 1;
        for (int col = 0; col < basis.dim; ++col) {
            Laurent b = Laurent::monomial(stride * col, 1.0);
            Laurent g = apply(op, b);
            detail::expand_in_monomials(g, basis.dim, stride, col, rep.mat, spill2);
        }
    }
    rep.spill = std::sqrt(spill2);
    return rep;
}

struct MatrixRing {
    int n = 0;
    using Elem = Mat;
    Elem zero() const { return Mat(n); }
    Elem one() const { return Mat::identity(n); }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem scale(Cplx s, const Elem& a) const { return s * a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
};

// Frobenius norm of the evaluated expression, relative to the largest
// single-term contribution.
inline double matrix_residual(const NCExpr& expr, const std::map<Symbol, RepMatrix>& bindings) {
    if (bindings.empty()) throw DimensionMismatch("no bindings");
    const BasisSpec& b0 = bindings.begin()->second.basis;
    std::map<Symbol, Mat> mats;
    for (auto& [s, rm] : bindings) {
        if (!(rm.basis == b0)) throw DimensionMismatch("bindings on different bases");
        mats.emplace(s, rm.mat);
    }
    MatrixRing ring{b0.dim};
    Mat total = ring.zero();
    double max_term = 0.0;
    const NCExpr flat = expr.expanded();
    for (const auto& term : flat.terms()) {
        Mat part = nc_evaluate_word(term, mats, ring);
        max_term = std::max(max_term, part.frobenius());
        total = total + part;
    }
    return total.frobenius() / (1.0 + max_term);
}

} // namespace qalg
