#pragma once

#include <cmath>
#include <map>
#include <string>

#include "qalg/error.hpp"
#include "qalg/scalar.hpp"

namespace qalg {

// Laurent polynomial in one variable t: map exponent -> coefficient.
// Canonical form never stores zero coefficients.
class Laurent {
public:
    Laurent() = default;
    explicit Laurent(Cplx c) {
        if (c != Cplx(0.0)) terms_[0] = c;
    }

    static Laurent zero() { return Laurent(); }
    static Laurent one() { return Laurent(Cplx(1.0)); }
    static Laurent t() { return monomial(1, 1.0); }
    static Laurent monomial(int k, Cplx c) {
        Laurent p;
        if (c != Cplx(0.0)) p.terms_[k] = c;
        return p;
    }

    const std::map<int, Cplx>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const {
        return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second == Cplx(1.0);
    }

    Cplx coeff(int k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Cplx(0.0) : it->second;
    }

    int degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }
    int low() const { return terms_.empty() ? 0 : terms_.begin()->first; }

    Cplx leading() const { return terms_.empty() ? Cplx(0.0) : terms_.rbegin()->second; }

    void set(int k, Cplx c) {
        if (c == Cplx(0.0)) terms_.erase(k);
        else terms_[k] = c;
    }

    void add_term(int k, Cplx c) {
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            if (c != Cplx(0.0)) terms_[k] = c;
        } else {
            it->second += c;
            if (it->second == Cplx(0.0)) terms_.erase(it);
        }
    }

    Laurent& operator+=(const Laurent& o) {
        for (auto& [k, c] : o.terms_) add_term(k, c);
        return *this;
    }
    Laurent& operator-=(const Laurent& o) {
        for (auto& [k, c] : o.terms_) add_term(k, -c);
        return *this;
    }
    friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
    friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
    friend Laurent operator-(const Laurent& a) {
        Laurent r;
        for (auto& [k, c] : a.terms_) r.terms_[k] = -c;
        return r;
    }

    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        Laurent r;
        for (auto& [ka, ca] : a.terms_)
            for (auto& [kb, cb] : b.terms_) r.add_term(ka + kb, ca * cb);
        return r;
    }
    friend Laurent operator*(Cplx s, const Laurent& a) {
        Laurent r;
        if (s == Cplx(0.0)) return r;
        for (auto& [k, c] : a.terms_) r.terms_[k] = s * c;
        return r;
    }
    Laurent& operator*=(const Laurent& o) { return *this = *this * o; }
    Laurent& operator*=(Cplx s) { return *this = s * *this; }

    friend bool operator==(const Laurent& a, const Laurent& b) { return a.terms_ == b.terms_; }

    // d/dt, exact on Laurent exponents (k t^{k-1} including negative k).
    Laurent derivative() const {
        Laurent r;
        for (auto& [k, c] : terms_)
            if (k != 0) r.terms_[k - 1] = static_cast<double>(k) * c;
        return r;
    }

    Laurent derivative(int n) const {
        Laurent r = *this;
        for (int i = 0; i < n; ++i) r = r.derivative();
        return r;
    }

    // f(t) -> f(t + A); requires low() >= 0 (shift of negative powers is not Laurent).
    Laurent shifted(Cplx A) const {
        if (!terms_.empty() && low() < 0)
            throw Error("Laurent::shifted on negative exponents");
        Laurent r;
        for (auto& [k, c] : terms_) {
            Cplx apow(1.0);
            for (int i = k; i >= 0; --i) {
                r.add_term(i, c * static_cast<double>(binomial(k, k - i)) * apow);
                apow *= A;
            }
        }
        return r;
    }

    Cplx eval(Cplx x) const {
        Cplx r(0.0);
        for (auto& [k, c] : terms_) {
            Cplx xp(1.0);
            int ak = k < 0 ? -k : k;
            for (int i = 0; i < ak; ++i) xp *= x;
            if (k < 0) xp = Cplx(1.0) / xp;
            r += c * xp;
        }
        return r;
    }

    double norm2() const {
        double s = 0.0;
        for (auto& [k, c] : terms_) { (void)k; s += abs2(c); }
        return std::sqrt(s);
    }

    double max_abs() const {
        double s = 0.0;
        for (auto& [k, c] : terms_) { (void)k; s = std::max(s, std::abs(c)); }
        return s;
    }

    // Drop coefficients below eps * max_abs(); used only where stated.
    Laurent chopped(double eps) const {
        double floor = eps * max_abs();
        Laurent r;
        for (auto& [k, c] : terms_)
            if (std::abs(c) > floor) r.terms_[k] = c;
        return r;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (!s.empty()) s += " + ";
            s += "(" + std::to_string(it->second.real());
            if (it->second.imag() != 0.0) s += (it->second.imag() > 0 ? "+" : "") + std::to_string(it->second.imag()) + "i";
            s += ")";
            if (it->first != 0) s += "t^" + std::to_string(it->first);
        }
        return s;
    }

private:
    std::map<int, Cplx> terms_;
};

enum class LaurentOp { Add, Mul };

inline Laurent laurent_arith(const Laurent& a, const Laurent& b, LaurentOp op) {
    return op == LaurentOp::Add ? a + b : a * b;
}

// Exact long division a / b over Laurent polynomials. Fails with
// NonPolynomialResult when the remainder exceeds tol * scale.
inline Laurent laurent_divide_exact(const Laurent& a, const Laurent& b, double tol = 1e-9) {
    if (b.is_zero()) throw Error("division by zero polynomial");
    if (a.is_zero()) return Laurent::zero();
    Laurent rem = a, q;
    double scale = a.max_abs();
    int bdeg = b.degree();
    Cplx blead = b.leading();
    // Divide from the top; a Laurent quotient may have arbitrarily low exponents,
    // bounded here by the inputs' supports.
    int guard = (a.degree() - a.low()) + (b.degree() - b.low()) + 4;
    while (!rem.is_zero() && guard-- > 0) {
        int rdeg = rem.degree();
        Cplx f = rem.leading() / blead;
        int shift = rdeg - bdeg;
        q.add_term(shift, f);
        Laurent sub;
        for (auto& [k, c] : b.terms()) sub.add_term(k + shift, c * f);
        rem -= sub;
        rem = rem.chopped(1e-14);
    }
    if (!rem.is_zero() && rem.max_abs() > tol * std::max(1.0, scale))
        throw NonPolynomialResult("remainder " + std::to_string(rem.max_abs()));
    return q;
}

} // namespace qalg
