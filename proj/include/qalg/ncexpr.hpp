#pragma once

#include <map>
#include <string>
#include <vector>

#include "qalg/error.hpp"
#include "qalg/operator.hpp"

namespace qalg {

using Symbol = std::string;

// One factor of a word: a generator symbol or a symmetrizer node
// {a,b} = ab+ba, {a,b,c} = sum of all six orderings.
struct NCFactor {
    bool symmetrizer = false;
    Symbol sym;
    std::vector<Symbol> args;

    static NCFactor s(Symbol x) { return NCFactor{false, std::move(x), {}}; }
    static NCFactor symm(std::vector<Symbol> xs) { return NCFactor{true, {}, std::move(xs)}; }
};

struct NCTerm {
    Cplx coeff;
    std::vector<NCFactor> word;
};

class NCExpr {
public:
    NCExpr() = default;

    static NCExpr zero() { return NCExpr(); }
    static NCExpr scalar(Cplx c) {
        NCExpr e;
        if (c != Cplx(0.0)) e.terms_.push_back({c, {}});
        return e;
    }
    static NCExpr sym(Symbol s) {
        NCExpr e;
        e.terms_.push_back({Cplx(1.0), {NCFactor::s(std::move(s))}});
        return e;
    }
    static NCExpr symm(std::vector<Symbol> xs) {
        NCExpr e;
        e.terms_.push_back({Cplx(1.0), {NCFactor::symm(std::move(xs))}});
        return e;
    }

    const std::vector<NCTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    friend NCExpr operator+(const NCExpr& a, const NCExpr& b) {
        NCExpr r = a;
        r.terms_.insert(r.terms_.end(), b.terms_.begin(), b.terms_.end());
        return r;
    }
    friend NCExpr operator-(const NCExpr& a, const NCExpr& b) { return a + Cplx(-1.0) * b; }
    friend NCExpr operator*(Cplx s, const NCExpr& a) {
        NCExpr r;
        if (s == Cplx(0.0)) return r;
        r.terms_ = a.terms_;
        for (auto& t : r.terms_) t.coeff *= s;
        return r;
    }
    // word concatenation
    friend NCExpr operator*(const NCExpr& a, const NCExpr& b) {
        NCExpr r;
        for (auto& ta : a.terms_)
            for (auto& tb : b.terms_) {
                NCTerm t;
                t.coeff = ta.coeff * tb.coeff;
                t.word = ta.word;
                t.word.insert(t.word.end(), tb.word.begin(), tb.word.end());
                r.terms_.push_back(std::move(t));
            }
        return r;
    }
    NCExpr& operator+=(const NCExpr& o) { return *this = *this + o; }
    NCExpr& operator-=(const NCExpr& o) { return *this = *this - o; }

    // Expand symmetrizers into plain words and merge identical words.
    // Idempotent: expanding an expanded expression changes nothing.
    NCExpr expanded() const {
        std::map<std::vector<Symbol>, Cplx> acc;
        for (const auto& t : terms_) {
            std::vector<std::vector<Symbol>> words{{}};
            for (const auto& f : t.word) {
                std::vector<std::vector<Symbol>> next;
                if (!f.symmetrizer) {
                    for (auto& w : words) {
                        auto w2 = w;
                        w2.push_back(f.sym);
                        next.push_back(std::move(w2));
                    }
                } else {
                    for (auto& order : orderings(f.args)) {
                        for (auto& w : words) {
                            auto w2 = w;
                            w2.insert(w2.end(), order.begin(), order.end());
                            next.push_back(std::move(w2));
                        }
                    }
                }
                words = std::move(next);
            }
            for (auto& w : words) {
                auto it = acc.find(w);
                if (it == acc.end()) acc.emplace(std::move(w), t.coeff);
                else it->second += t.coeff;
            }
        }
        NCExpr r;
        for (auto& [w, c] : acc) {
            if (c == Cplx(0.0)) continue;
            NCTerm t;
            t.coeff = c;
            for (auto& s : w) t.word.push_back(NCFactor::s(s));
            r.terms_.push_back(std::move(t));
        }
        return r;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto& t : terms_) {
            if (!out.empty()) out += " + ";
            out += "(" + std::to_string(t.coeff.real());
            if (t.coeff.imag() != 0.0)
                out += (t.coeff.imag() > 0 ? "+" : "") + std::to_string(t.coeff.imag()) + "i";
            out += ")";
            for (auto& f : t.word) {
                if (f.symmetrizer) {
                    out += "{";
                    for (size_t i = 0; i < f.args.size(); ++i) out += (i ? "," : "") + f.args[i];
                    out += "}";
                } else {
                    out += " " + f.sym;
                }
            }
        }
        return out;
    }

private:
    static std::vector<std::vector<Symbol>> orderings(const std::vector<Symbol>& xs) {
        std::vector<std::vector<Symbol>> out;
        if (xs.size() == 2) {
            out = {{xs[0], xs[1]}, {xs[1], xs[0]}};
        } else if (xs.size() == 3) {
            const Symbol &a = xs[0], &b = xs[1], &c = xs[2];
            out = {{a, b, c}, {a, c, b}, {b, a, c}, {b, c, a}, {c, a, b}, {c, b, a}};
        } else {
            throw Error("symmetrizer arity must be 2 or 3");
        }
        return out;
    }

    std::vector<NCTerm> terms_;
};

// Ring over LinearOperator for nc_evaluate.
struct OperatorRing {
    using Elem = LinearOperator;
    Elem zero() const { return LinearOperator::zero(); }
    Elem one() const { return LinearOperator::identity(); }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem scale(Cplx s, const Elem& a) const { return s * a; }
    Elem mul(const Elem& a, const Elem& b) const { return compose(a, b); }
};

// Evaluate one expanded word left-to-right in the ring.
template <class Ring>
typename Ring::Elem nc_evaluate_word(const NCTerm& term,
                                     const std::map<Symbol, typename Ring::Elem>& bindings,
                                     const Ring& ring) {
    auto acc = ring.one();
    for (const auto& f : term.word) {
        auto it = bindings.find(f.sym);
        if (it == bindings.end()) throw UnboundSymbol(f.sym);
        acc = ring.mul(acc, it->second);
    }
    return ring.scale(term.coeff, acc);
}

// Expand symmetrizers, multiply words out left-to-right, sum the terms.
template <class Ring>
typename Ring::Elem nc_evaluate(const NCExpr& expr,
                                const std::map<Symbol, typename Ring::Elem>& bindings,
                                const Ring& ring) {
    auto result = ring.zero();
    const NCExpr flat = expr.expanded();
    for (const auto& term : flat.terms())
        result = ring.add(result, nc_evaluate_word(term, bindings, ring));
    return result;
}

} // namespace qalg
