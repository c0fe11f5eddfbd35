#pragma once

#include <algorithm>
#include <vector>

#include "qalg/ratfunc.hpp"

namespace qalg {

enum class OpKind { Neutral, Differential, Shift };

// Action of one term: either d/dt^order or the shift f(t) -> f(t + step).
struct Action {
    bool shift = false;
    int order = 0;  // derivative order, >= 0
    Frac step;      // shift step, rational (half-integers in practice)

    static Action derivative(int k) { return Action{false, k, Frac(0)}; }
    static Action shifted(Frac a) { return Action{true, 0, a}; }
    bool is_identity() const { return shift ? step.is_zero() : order == 0; }

    friend bool operator==(const Action& a, const Action& b) {
        if (a.is_identity() && b.is_identity()) return true;
        if (a.shift != b.shift) return false;
        return a.shift ? a.step == b.step : a.order == b.order;
    }
    friend bool operator<(const Action& a, const Action& b) {
        bool ia = a.is_identity(), ib = b.is_identity();
        if (ia != ib) return ia;
        if (ia && ib) return false;
        if (a.shift != b.shift) return !a.shift;
        return a.shift ? a.step < b.step : a.order < b.order;
    }
};

struct OpTerm {
    RatFunc coeff;
    Action action;
};

class LinearOperator {
public:
    LinearOperator() = default;

    static LinearOperator zero() { return LinearOperator(); }
    static LinearOperator from_terms(std::vector<OpTerm> terms) {
        LinearOperator op;
        op.terms_ = std::move(terms);
        op.canonicalize();
        return op;
    }
    static LinearOperator identity() { return mult(Laurent::one()); }
    static LinearOperator mult(const Laurent& c) { return mult(RatFunc(c)); }
    static LinearOperator mult(const RatFunc& c) {
        LinearOperator op;
        if (!c.is_zero()) op.terms_.push_back({c, Action::derivative(0)});
        return op;
    }
    // c(t) * d^k/dt^k
    static LinearOperator derivative(int k, const RatFunc& c = RatFunc(Cplx(1.0))) {
        LinearOperator op;
        if (!c.is_zero()) op.terms_.push_back({c, Action::derivative(k)});
        return op;
    }
    // c(t) * T^step,  (T^A f)(t) = f(t + A)
    static LinearOperator shift(Frac step, const RatFunc& c = RatFunc(Cplx(1.0))) {
        LinearOperator op;
        if (!c.is_zero()) op.terms_.push_back({c, Action::shifted(step)});
        op.canonicalize();
        return op;
    }

    const std::vector<OpTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    OpKind kind() const {
        for (auto& t : terms_) {
            if (t.action.is_identity()) continue;
            return t.action.shift ? OpKind::Shift : OpKind::Differential;
        }
        return OpKind::Neutral;
    }

    LinearOperator& operator+=(const LinearOperator& o) {
        check_compatible(*this, o);
        for (auto& t : o.terms_) terms_.push_back(t);
        canonicalize();
        return *this;
    }
    LinearOperator& operator-=(const LinearOperator& o) { return *this += Cplx(-1.0) * o; }
    friend LinearOperator operator+(LinearOperator a, const LinearOperator& b) { return a += b; }
    friend LinearOperator operator-(LinearOperator a, const LinearOperator& b) { return a -= b; }
    friend LinearOperator operator*(Cplx s, const LinearOperator& a) {
        LinearOperator r;
        if (s == Cplx(0.0)) return r;
        r.terms_ = a.terms_;
        for (auto& t : r.terms_) t.coeff = s * t.coeff;
        return r;
    }

    double coeff_norm_estimate() const {
        double s = 0.0;
        for (auto& t : terms_) s = std::max(s, t.coeff.norm_estimate());
        return s;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (auto& t : terms_) {
            if (!s.empty()) s += "  +  ";
            s += "[" + t.coeff.str() + "]";
            if (t.action.shift && !t.action.step.is_zero()) s += " T^" + t.action.step.str();
            else if (!t.action.shift && t.action.order > 0) s += " D^" + std::to_string(t.action.order);
        }
        return s;
    }

    void canonicalize() {
        OpKind k = kind();
        for (auto& t : terms_)
            if (t.action.is_identity())
                t.action = (k == OpKind::Shift) ? Action::shifted(Frac(0)) : Action::derivative(0);
        std::sort(terms_.begin(), terms_.end(),
                  [](const OpTerm& a, const OpTerm& b) { return a.action < b.action; });
        std::vector<OpTerm> merged;
        for (auto& t : terms_) {
            if (!merged.empty() && merged.back().action == t.action) merged.back().coeff += t.coeff;
            else merged.push_back(t);
        }
        terms_.clear();
        for (auto& t : merged)
            if (!t.coeff.is_zero()) terms_.push_back(t);
    }

    static void check_compatible(const LinearOperator& a, const LinearOperator& b) {
        OpKind ka = a.kind(), kb = b.kind();
        if (ka != OpKind::Neutral && kb != OpKind::Neutral && ka != kb) throw MixedKindError();
    }

private:
    std::vector<OpTerm> terms_;
};

// Normal-ordered product a o b.
//   differential: d^k o c(t) = sum_i C(k,i) c^(i)(t) d^(k-i)
//   shift:        T^A o c(t) = c(t+A) T^A
inline LinearOperator compose(const LinearOperator& a, const LinearOperator& b) {
    LinearOperator::check_compatible(a, b);
    OpKind k = a.kind() == OpKind::Neutral ? b.kind() : a.kind();
    std::vector<OpTerm> out;
    for (const auto& ta : a.terms()) {
        for (const auto& tb : b.terms()) {
            if (k == OpKind::Shift) {
                Frac A = ta.action.shift ? ta.action.step : Frac(0);
                Frac B = tb.action.shift ? tb.action.step : Frac(0);
                RatFunc c = ta.coeff * tb.coeff.shifted(Cplx(A.value()));
                out.push_back({c, Action::shifted(A + B)});
            } else {
                int k1 = ta.action.order, k2 = tb.action.order;
                RatFunc der = tb.coeff;
                for (int i = 0; i <= k1; ++i) {
                    Cplx bin(static_cast<double>(binomial(k1, i)));
                    out.push_back({bin * (ta.coeff * der), Action::derivative(k1 - i + k2)});
                    if (i < k1) der = der.derivative();
                }
            }
        }
    }
    return LinearOperator::from_terms(std::move(out));
}

inline LinearOperator commutator(const LinearOperator& a, const LinearOperator& b) {
    return compose(a, b) - compose(b, a);
}

// Action on a Laurent polynomial as a rational function (no division yet).
inline RatFunc apply_ratfunc(const LinearOperator& op, const Laurent& f) {
    RatFunc acc;
    for (const auto& t : op.terms()) {
        RatFunc contrib;
        if (t.action.shift && !t.action.step.is_zero()) {
            contrib = t.coeff * RatFunc(f).shifted(Cplx(t.action.step.value()));
        } else {
            contrib = t.coeff * RatFunc(f.derivative(t.action.order));
        }
        acc += contrib;
    }
    return acc;
}

// Exact action on a Laurent polynomial. Throws NonPolynomialResult when the
// combined rational coefficients fail to cancel (wrong basis for the operator).
inline Laurent apply(const LinearOperator& op, const Laurent& f, double tol = 1e-9) {
    return apply_ratfunc(op, f).as_laurent(tol);
}

// max_n || apply(op, t^n) ||_2 over the window, without normalization.
inline double action_norm(const LinearOperator& op, int lo, int hi) {
    double m = 0.0;
    for (int n = lo; n <= hi; ++n) {
        Laurent r = apply(op, Laurent::monomial(n, 1.0));
        m = std::max(m, r.norm2());
    }
    return m;
}

// Relative action distance between two operators on the monomial window.
inline double action_distance(const LinearOperator& a, const LinearOperator& b, int lo, int hi) {
    double worst = 0.0;
    for (int n = lo; n <= hi; ++n) {
        Laurent fa = apply(a, Laurent::monomial(n, 1.0));
        Laurent fb = apply(b, Laurent::monomial(n, 1.0));
        double d = (fa - fb).norm2();
        double s = 1.0 + std::max(fa.norm2(), fb.norm2());
        worst = std::max(worst, d / s);
    }
    return worst;
}

} // namespace qalg
