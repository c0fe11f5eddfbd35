#pragma once

#include <map>
#include <optional>
#include <vector>

#include "qalg/laurent.hpp"

namespace qalg {

// Rational function num / prod_i (t - r_i)^{k_i}. The numerator is a plain
// polynomial (lowest exponent >= 0); the denominator is kept factored with
// exact rational roots. Every denominator that arises here comes from shift
// compositions of 1/t-type coefficients, so its roots live on the
// half-integer (more generally rational) lattice and stay exact under
// t -> t + A. Cancellation is synthetic division with an exactness check.
class RatFunc {
public:
    RatFunc() : num_(Laurent::zero()) {}
    RatFunc(Laurent n) : num_(std::move(n)) { normalize(); }
    RatFunc(Cplx c) : num_(Laurent(c)) {}
    RatFunc(Laurent n, const Laurent& den) : num_(std::move(n)) {
        factor_denominator(den);
        normalize();
    }

    const Laurent& num() const { return num_; }
    Laurent den() const {
        Laurent d = Laurent::one();
        for (auto& [r, k] : den_roots_) {
            Laurent lin = Laurent::t() - Laurent(Cplx(r.value()));
            for (int i = 0; i < k; ++i) d *= lin;
        }
        return d;
    }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_roots_.empty(); }

    // Exact Laurent value; throws NonPolynomialResult if a factor fails to cancel.
    Laurent as_laurent(double tol = 1e-9) const {
        Laurent out = num_;
        for (auto& [r, k] : den_roots_) {
            for (int i = 0; i < k; ++i) {
                if (r.is_zero()) {
                    Laurent shifted;
                    for (auto& [e, c] : out.terms()) shifted.add_term(e - 1, c);
                    out = shifted;
                } else {
                    out = divide_linear(out, Cplx(r.value()), tol);
                }
            }
        }
        return out;
    }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        RatFunc r;
        r.den_roots_ = a.den_roots_;
        for (auto& [root, k] : b.den_roots_) {
            auto it = r.den_roots_.find(root);
            if (it == r.den_roots_.end()) r.den_roots_[root] = k;
            else it->second = std::max(it->second, k);
        }
        Laurent na = a.num_, nb = b.num_;
        for (auto& [root, k] : r.den_roots_) {
            int ka = 0, kb = 0;
            if (auto it = a.den_roots_.find(root); it != a.den_roots_.end()) ka = it->second;
            if (auto it = b.den_roots_.find(root); it != b.den_roots_.end()) kb = it->second;
            Laurent lin = Laurent::t() - Laurent(Cplx(root.value()));
            for (int i = ka; i < k; ++i) na *= lin;
            for (int i = kb; i < k; ++i) nb *= lin;
        }
        r.num_ = na + nb;
        r.normalize();
        return r;
    }
    friend RatFunc operator-(const RatFunc& a) {
        RatFunc r = a;
        r.num_ = -r.num_;
        return r;
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        RatFunc r;
        r.num_ = a.num_ * b.num_;
        r.den_roots_ = a.den_roots_;
        for (auto& [root, k] : b.den_roots_) r.den_roots_[root] += k;
        r.normalize();
        return r;
    }
    friend RatFunc operator*(Cplx s, const RatFunc& a) {
        RatFunc r = a;
        r.num_ = s * r.num_;
        if (r.num_.is_zero()) r.den_roots_.clear();
        return r;
    }
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

    RatFunc derivative() const {
        if (den_roots_.empty()) return RatFunc(num_.derivative());
        // (n/d)' = (n' d - n d') / d^2
        Laurent d = den();
        RatFunc r;
        r.num_ = num_.derivative() * d - num_ * d.derivative();
        r.den_roots_ = den_roots_;
        for (auto& [root, k] : r.den_roots_) k *= 2;
        r.normalize();
        return r;
    }

    // f(t) -> f(t + A); exact on the factored denominator when A is rational.
    RatFunc shifted(Cplx A) const {
        RatFunc r;
        r.num_ = num_.shifted(A);
        if (den_roots_.empty()) return r;
        if (std::abs(A.imag()) < 1e-300) {
            if (auto fa = to_frac(A.real())) {
                for (auto& [root, k] : den_roots_) r.den_roots_[root - *fa] = k;
                r.normalize();
                return r;
            }
        }
        throw Error("RatFunc::shifted with non-rational step on a rational denominator");
    }

    Cplx eval(Cplx x) const {
        Cplx d(1.0);
        for (auto& [root, k] : den_roots_)
            for (int i = 0; i < k; ++i) d *= (x - Cplx(root.value()));
        return num_.eval(x) / d;
    }

    double norm_estimate() const {
        double d = 1.0;
        for (auto& [root, k] : den_roots_) d *= std::pow(std::max(std::abs(root.value()), 0.5), k);
        return num_.max_abs() / d;
    }

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_roots_ == b.den_roots_;
    }

    std::string str() const {
        if (den_roots_.empty()) return num_.str();
        std::string s = "(" + num_.str() + ") /";
        for (auto& [root, k] : den_roots_) {
            s += " (t-" + root.str() + ")";
            if (k > 1) s += "^" + std::to_string(k);
        }
        return s;
    }

private:
    static std::optional<Frac> to_frac(double x, int max_den = 64) {
        for (int d = 1; d <= max_den; ++d) {
            double n = x * d;
            double rn = std::round(n);
            if (std::abs(n - rn) < 1e-9 * std::max(1.0, std::abs(n)) && std::abs(rn) < 9.0e15)
                return Frac(static_cast<std::int64_t>(rn), d);
        }
        return std::nullopt;
    }

    // exact division by (t - r), r != 0, via synthetic division on the
    // polynomial part; throws when the remainder is not negligible
    static Laurent divide_linear(const Laurent& p, Cplx r, double tol) {
        if (p.is_zero()) return p;
        int lo = p.low(), hi = p.degree();
        int n = hi - lo;  // degree of the polynomial part
        if (n == 0)
            throw NonPolynomialResult("constant over (t - " + std::to_string(r.real()) + ")");
        std::vector<Cplx> a(static_cast<size_t>(n + 1));
        for (int e = lo; e <= hi; ++e) a[static_cast<size_t>(e - lo)] = p.coeff(e);
        std::vector<Cplx> b(static_cast<size_t>(n), 0.0);
        Cplx acc = 0.0;
        for (int i = n; i >= 1; --i) {
            acc = a[static_cast<size_t>(i)] + r * acc;
            b[static_cast<size_t>(i - 1)] = acc;
        }
        Cplx rem = a[0] + r * acc;
        if (std::abs(rem) > tol * std::max(1.0, p.max_abs()))
            throw NonPolynomialResult("factor (t - " + std::to_string(r.real()) +
                                      ") does not divide, remainder " +
                                      std::to_string(std::abs(rem)));
        Laurent out;
        for (int i = 0; i < n; ++i) out.add_term(lo + i, b[static_cast<size_t>(i)]);
        return out;
    }

    void factor_denominator(const Laurent& den) {
        if (den.is_zero()) throw Error("RatFunc: zero denominator");
        Laurent d = den;
        // monomial content first
        if (d.low() > 0) {
            den_roots_[Frac(0)] += d.low();
            Laurent m;
            for (auto& [e, c] : d.terms()) m.add_term(e - d.low(), c);
            d = m;
        } else if (d.low() < 0) {
            Laurent m;
            for (auto& [e, c] : d.terms()) m.add_term(e - d.low(), c);
            num_ = num_ * Laurent::monomial(-d.low(), 1.0);
            d = m;
        }
        // scalar factor
        Cplx lead = d.leading();
        num_ = (Cplx(1.0) / lead) * num_;
        d = (Cplx(1.0) / lead) * d;
        // rational-root scan over the half-integer lattice (and small thirds)
        int guard = d.degree() + 2;
        while (d.degree() > 0 && guard-- > 0) {
            bool found = false;
            double bound = 2.0 * d.max_abs() + 1.0;
            for (int dd : {1, 2, 3, 4, 6, 8}) {
                long kmax = static_cast<long>(bound * dd) + 1;
                for (long k = -kmax; k <= kmax && !found; ++k) {
                    Frac cand(k, dd);
                    if (std::abs(d.eval(Cplx(cand.value()))) <
                        1e-10 * std::max(1.0, d.max_abs())) {
                        try {
                            d = divide_linear(d, Cplx(cand.value()), 1e-8);
                            den_roots_[cand] += 1;
                            found = true;
                        } catch (const NonPolynomialResult&) {
                        }
                    }
                }
                if (found) break;
            }
            if (!found) break;
        }
        if (d.degree() > 0)
            throw Error("RatFunc: denominator has no rational factorization: " + den.str());
        if (!d.is_one()) {
            Cplx c = d.coeff(0);
            num_ = (Cplx(1.0) / c) * num_;
        }
    }

    void normalize() {
        if (num_.is_zero()) {
            den_roots_.clear();
            return;
        }
        // move the numerator's monomial content against root-0 factors
        if (num_.low() != 0) {
            auto it = den_roots_.find(Frac(0));
            int have = it == den_roots_.end() ? 0 : it->second;
            int use = std::min(have, num_.low() > 0 ? num_.low() : 0);
            if (num_.low() < 0) {
                den_roots_[Frac(0)] = have - num_.low();
                Laurent m;
                for (auto& [e, c] : num_.terms()) m.add_term(e - num_.low(), c);
                num_ = m;
            } else if (use > 0) {
                if (use == have) den_roots_.erase(Frac(0));
                else den_roots_[Frac(0)] = have - use;
                Laurent m;
                for (auto& [e, c] : num_.terms()) m.add_term(e - use, c);
                num_ = m;
            }
        }
        // cancel whatever factors divide exactly
        for (auto it = den_roots_.begin(); it != den_roots_.end();) {
            bool erased = false;
            while (it->second > 0) {
                if (it->first.is_zero()) break;  // handled above
                try {
                    Laurent q = divide_linear(num_, Cplx(it->first.value()), 1e-12);
                    num_ = q;
                    --it->second;
                } catch (const NonPolynomialResult&) {
                    break;
                }
            }
            if (it->second == 0) {
                it = den_roots_.erase(it);
                erased = true;
            }
            if (!erased) ++it;
        }
    }

    Laurent num_;
    std::map<Frac, int> den_roots_;
};

} // namespace qalg
