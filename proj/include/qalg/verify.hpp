#pragma once

#include <random>
#include <sstream>

#include "qalg/systems.hpp"

namespace qalg {

struct Tolerances {
    double relation = 1e-10;
    double spectrum = 1e-9;
    double eigenvector = 1e-8;
    double closure_tight = 1e-10;
    double closure_loose = 1e-3;
    double spill_gate = 1e-8;
    double variant_fail_floor = 1e-3;
    double detune = 0.37;
};

enum class CheckStatus { Pass, Fail, NotApplicable };

inline const char* status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::NotApplicable: return "not-applicable";
    }
    return "?";
}

struct RelationRecord {
    std::string name;
    std::string mode;  // action | matrix
    double residual = 0.0;
    CheckStatus status = CheckStatus::NotApplicable;
    bool printed_variant = false;
    std::string note;
};

struct VariantRecord {
    std::string name;
    double residual = 0.0;
    bool expect_pass = false;
    CheckStatus status = CheckStatus::NotApplicable;
    std::string note;
};

struct ClosureRecord {
    bool applicable = false;
    std::string quantity;  // what was measured
    Cplx value_at_rule = 0.0;
    double spill_at_rule = 0.0;
    double spill_detuned = 0.0;
    CheckStatus status = CheckStatus::NotApplicable;
    std::string note;
};

struct SpectrumRecord {
    Symbol op;
    std::vector<Cplx> computed, closed_form;
    double max_err = 0.0;
    CheckStatus status = CheckStatus::NotApplicable;
    std::string note;
};

struct EigenvectorRecord {
    Symbol op;
    int index = 0;
    OracleTag tag = OracleTag::None;
    double distance = 0.0;
    CheckStatus status = CheckStatus::NotApplicable;
};

struct LadderRecord {
    std::string name;
    double residual = 0.0;
    CheckStatus status = CheckStatus::NotApplicable;
    std::string note;
};

struct LedgerEntry {
    std::string topic;
    std::string detail;
};

struct VerificationReport {
    SystemId id{};
    SystemParams params;
    Cplx energy = 0.0;
    int dim = 0;
    std::string mode;
    std::vector<RelationRecord> relations;
    std::vector<VariantRecord> variants;
    std::optional<ClosureRecord> closure;
    std::vector<SpectrumRecord> spectra;
    std::vector<EigenvectorRecord> eigenvectors;
    std::vector<LadderRecord> ladders;
    std::vector<LedgerEntry> ledger;
    std::vector<std::string> notes;

    bool ok() const {
        for (auto& r : relations)
            if (r.status == CheckStatus::Fail) return false;
        for (auto& v : variants)
            if (v.status == CheckStatus::Fail) return false;
        if (closure && closure->status == CheckStatus::Fail) return false;
        for (auto& s : spectra)
            if (s.status == CheckStatus::Fail) return false;
        for (auto& e : eigenvectors)
            if (e.status == CheckStatus::Fail) return false;
        for (auto& l : ladders)
            if (l.status == CheckStatus::Fail) return false;
        return true;
    }
};

inline double eigen_multiset_distance(const std::vector<Cplx>& a, const std::vector<Cplx>& b) {
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
        if (best < 0) return 1e300;
        used[best] = true;
        worst = std::max(worst, bd);
    }
    return worst;
}

// sin of the angle between two complex vectors; 0 when projectively equal
inline double projective_distance(const std::vector<Cplx>& u, const std::vector<Cplx>& v) {
    Cplx dot = 0.0;
    double nu = 0.0, nv = 0.0;
    for (size_t i = 0; i < u.size(); ++i) {
        dot += std::conj(u[i]) * v[i];
        nu += abs2(u[i]);
        nv += abs2(v[i]);
    }
    if (nu == 0.0 || nv == 0.0) return 1.0;
    double c2 = abs2(dot) / (nu * nv);
    return std::sqrt(std::max(0.0, 1.0 - c2));
}

namespace vdetail {

// Bindings for action mode: generators plus R = [L1, L2].
inline std::map<Symbol, LinearOperator> action_bindings(const SystemInstance& sys) {
    std::map<Symbol, LinearOperator> bind = sys.generators;
    auto l1 = bind.find("L1");
    auto l2 = bind.find("L2");
    if (l1 != bind.end() && l2 != bind.end())
        bind["R"] = commutator(l1->second, l2->second);
    return bind;
}

// Size estimate of a per-term contribution: the individual words of a
// relation may act rationally even when the sum is polynomial, so the
// normalizer samples off the pole lattice instead of dividing.
inline double contribution_norm(const RatFunc& rf) {
    double worst = 0.0;
    for (double x : {0.379, -1.217, 2.083}) worst = std::max(worst, std::abs(rf.eval(Cplx(x))));
    return worst;
}

// max over window monomials of ||sum||/(1 + max term contribution)
inline double action_residual(const NCExpr& expr, const std::map<Symbol, LinearOperator>& bind,
                              int lo, int hi, int stride) {
    OperatorRing ring;
    const NCExpr flat = expr.expanded();
    std::vector<LinearOperator> term_ops;
    for (const auto& term : flat.terms()) term_ops.push_back(nc_evaluate_word(term, bind, ring));
    double worst = 0.0;
    for (int n = lo; n <= hi; n += stride) {
        Laurent f = Laurent::monomial(n, 1.0);
        std::vector<RatFunc> contribs;
        RatFunc total;
        double den = 1.0;
        for (auto& op : term_ops) {
            RatFunc contrib = apply_ratfunc(op, f);
            den = std::max(den, 1.0 + contribution_norm(contrib));
            total += contrib;
            contribs.push_back(std::move(contrib));
        }
        double num;
        try {
            num = total.as_laurent(1e-6).norm2();
        } catch (const NonPolynomialResult&) {
            // The final division can lose to cancellation for the largest
            // casimir sums. Summing pointwise values off the pole lattice is
            // numerically benign and bounds the same defect.
            num = 0.0;
            for (double r : {0.53, 1.21, 1.87, 2.63}) {
                for (double th : {0.41, 2.17, 4.03}) {
                    Cplx x = std::polar(r, th);
                    Cplx v = 0.0;
                    for (auto& cb : contribs) v += cb.eval(x);
                    num = std::max(num, std::abs(v));
                }
            }
        }
        worst = std::max(worst, num / den);
    }
    return worst;
}

// Residual normalized per window function instead of per relation term; used
// for the expect-fail records of flagged printed variants, where the defect
// should register against the function scale, not against the largest term
// of a huge casimir.
inline double raw_action_residual(const NCExpr& expr, const std::map<Symbol, LinearOperator>& bind,
                                  int lo, int hi, int stride) {
    OperatorRing ring;
    const NCExpr flat = expr.expanded();
    std::vector<LinearOperator> term_ops;
    for (const auto& term : flat.terms()) term_ops.push_back(nc_evaluate_word(term, bind, ring));
    double worst = 0.0;
    for (int n = lo; n <= hi; n += stride) {
        Laurent f = Laurent::monomial(n, 1.0);
        RatFunc total;
        for (auto& op : term_ops) total += apply_ratfunc(op, f);
        Laurent value;
        try {
            value = total.as_laurent(1e-6);
        } catch (const NonPolynomialResult&) {
            return 1e300;
        }
        worst = std::max(worst, value.norm2() / (1.0 + f.norm2()));
    }
    return worst;
}

inline std::vector<Symbol> split_symbols(const Symbol& s) {
    std::vector<Symbol> out;
    std::string cur;
    for (char ch : s) {
        if (ch == '+') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (ch != ' ') {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

} // namespace vdetail

// --------------------------------------------------------------------------
// action-mode verification of every relation, ladder and model variant
// --------------------------------------------------------------------------
inline void verify_action(const SystemInstance& sys, VerificationReport& rep,
                          const Tolerances& tol = {}) {
    auto bind = vdetail::action_bindings(sys);
    int lo = sys.window_lo, hi = sys.window_hi, stride = sys.window_stride;

    for (const auto& rel : sys.relations) {
        RelationRecord rec;
        rec.name = rel.name;
        rec.mode = "action";
        rec.printed_variant = rel.printed_variant;
        rec.note = rel.note;
        int rel_lo = lo, rel_hi = hi;
        bool na = false;
        for (auto& qname : sys.quantized_window_relations) {
            if (qname != rel.name) continue;
            // holds on the quantized invariant block only
            if (sys.quantized_block_dim && sys.quantized_block_dim(sys.energy)) {
                int m = *sys.quantized_block_dim(sys.energy);
                rel_lo = 0;
                rel_hi = sys.window_stride * (m - 1);
            } else {
                na = true;
            }
        }
        if (na) {
            rec.status = CheckStatus::NotApplicable;
            rec.note += std::string(rec.note.empty() ? "" : "; ") +
                        "holds on the quantized block; E is not quantized";
            rep.relations.push_back(std::move(rec));
            continue;
        }
        try {
            if (rel.printed_variant) {
                rec.residual = vdetail::raw_action_residual(rel.expr, bind, rel_lo, rel_hi, stride);
                rec.status = rec.residual > tol.variant_fail_floor ? CheckStatus::Pass
                                                                   : CheckStatus::Fail;
            } else {
                rec.residual = vdetail::action_residual(rel.expr, bind, rel_lo, rel_hi, stride);
                rec.status = rec.residual < tol.relation ? CheckStatus::Pass : CheckStatus::Fail;
            }
        } catch (const Error& e) {
            rec.status = rel.printed_variant ? CheckStatus::Pass : CheckStatus::Fail;
            rec.residual = 1e300;
            rec.note += std::string(rec.note.empty() ? "" : "; ") + e.what();
        }
        rep.relations.push_back(std::move(rec));
    }

    for (const auto& var : sys.variants) {
        VariantRecord rec;
        rec.name = var.name;
        rec.expect_pass = var.expect_pass;
        rec.note = var.note;
        auto vbind = bind;
        vbind[var.target] = var.op;
        auto l1 = vbind.find("L1");
        auto l2 = vbind.find("L2");
        if (l1 != vbind.end() && l2 != vbind.end())
            vbind["R"] = commutator(l1->second, l2->second);
        double worst = 0.0;
        try {
            for (const auto& rel : sys.relations) {
                if (rel.printed_variant) continue;
                bool quantized_only = false;
                for (auto& qname : sys.quantized_window_relations)
                    if (qname == rel.name) quantized_only = true;
                if (quantized_only) continue;
                double r = var.expect_pass
                               ? vdetail::action_residual(rel.expr, vbind, lo, hi, stride)
                               : vdetail::raw_action_residual(rel.expr, vbind, lo, hi, stride);
                worst = std::max(worst, r);
            }
        } catch (const Error&) {
            worst = 1e300;
        }
        rec.residual = worst;
        rec.status = var.expect_pass
                         ? (worst < tol.relation ? CheckStatus::Pass : CheckStatus::Fail)
                         : (worst > tol.variant_fail_floor ? CheckStatus::Pass : CheckStatus::Fail);
        rep.variants.push_back(std::move(rec));
    }
}

inline void check_ladders(const SystemInstance& sys, VerificationReport& rep,
                          const Tolerances& tol = {}) {
    if (!sys.ladder) return;
    auto bind = vdetail::action_bindings(sys);
    OperatorRing ring;
    const LadderSpec& lad = *sys.ladder;
    LinearOperator A = nc_evaluate(lad.lower_def, bind, ring);
    LinearOperator Ad = nc_evaluate(lad.raise_def, bind, ring);
    bind["A"] = A;
    bind["Ad"] = Ad;

    int lo = sys.window_lo, hi = sys.window_hi, stride = sys.window_stride;
    auto push = [&](std::string name, double res, std::string note) {
        LadderRecord rec;
        rec.name = std::move(name);
        rec.residual = res;
        rec.status = res < tol.relation ? CheckStatus::Pass : CheckStatus::Fail;
        rec.note = std::move(note);
        rep.ladders.push_back(std::move(rec));
    };
    if (lad.lower_explicit)
        push("A matches printed closed form", action_distance(A, *lad.lower_explicit, lo, hi),
             lad.note);
    if (lad.raise_explicit)
        push("Ad matches printed closed form", action_distance(Ad, *lad.raise_explicit, lo, hi),
             "");
    for (const auto& rel : lad.relations) {
        LadderRecord rec;
        rec.name = rel.name;
        rec.note = rel.note;
        try {
            if (rel.printed_variant) {
                rec.residual = vdetail::raw_action_residual(rel.expr, bind, lo, hi, stride);
                rec.status = rec.residual > tol.variant_fail_floor ? CheckStatus::Pass
                                                                   : CheckStatus::Fail;
                rec.note += std::string(rec.note.empty() ? "" : "; ") + "printed variant";
            } else {
                rec.residual = vdetail::action_residual(rel.expr, bind, lo, hi, stride);
                rec.status = rec.residual < tol.relation ? CheckStatus::Pass : CheckStatus::Fail;
            }
        } catch (const Error& e) {
            rec.residual = 1e300;
            rec.status = rel.printed_variant ? CheckStatus::Pass : CheckStatus::Fail;
            rec.note += std::string(rec.note.empty() ? "" : "; ") + e.what();
        }
        rep.ladders.push_back(std::move(rec));
    }
}

// --------------------------------------------------------------------------
// matrix-mode verification with the spill gate
// --------------------------------------------------------------------------
struct S9Quotient {
    std::map<Symbol, RepMatrix> mats;
    double leakage = 0.0;
    int dim = 0;
};
inline S9Quotient s9_quotient(const SystemInstance& sys, int m);

inline void verify_matrix(const SystemInstance& sys, int m, VerificationReport& rep,
                          const Tolerances& tol = {}) {
    if (!sys.matrix_mode) {
        RelationRecord rec;
        rec.name = "(all relations)";
        rec.mode = "matrix";
        rec.status = CheckStatus::NotApplicable;
        rec.note = "no closed finite-dimensional model";
        rep.relations.push_back(std::move(rec));
        return;
    }
    std::map<Symbol, RepMatrix> mats;
    std::map<Symbol, bool> gated;
    BasisSpec basis = sys.make_basis(m);
    if (sys.id == SystemId::S9) {
        // matrix mode runs on the quotient representation in the L1 eigenbasis
        auto q = s9_quotient(sys, m);
        basis = q.mats.begin()->second.basis;
        for (auto& [sym, rm] : q.mats) {
            gated[sym] = q.leakage / (1.0 + rm.mat.frobenius()) > tol.spill_gate;
            mats.emplace(sym, rm);
        }
    } else {
        for (auto& [sym, op] : sys.generators) {
            RepMatrix rm = to_matrix(op, basis);
            double rel_spill = rm.spill / (1.0 + rm.mat.frobenius());
            gated[sym] = rel_spill > tol.spill_gate;
            mats.emplace(sym, std::move(rm));
        }
    }
    if (mats.count("L1") && mats.count("L2")) {
        RepMatrix r;
        r.basis = basis;
        r.mat = mats.at("L1").mat * mats.at("L2").mat - mats.at("L2").mat * mats.at("L1").mat;
        r.spill = 0.0;
        gated["R"] = gated.at("L1") || gated.at("L2");
        mats.emplace("R", std::move(r));
    }

    for (const auto& rel : sys.relations) {
        RelationRecord rec;
        rec.name = rel.name;
        rec.mode = "matrix";
        rec.printed_variant = rel.printed_variant;
        rec.note = rel.note;
        // gate: any symbol used whose generator does not restrict to the span
        bool gate = false;
        const NCExpr flat = rel.expr.expanded();
        for (auto& term : flat.terms())
            for (auto& f : term.word)
                if (gated.count(f.sym) && gated.at(f.sym)) gate = true;
        if (gate) {
            rec.status = CheckStatus::NotApplicable;
            rec.note += std::string(rec.note.empty() ? "" : "; ") + "spill gate";
        } else {
            try {
                rec.residual = matrix_residual(rel.expr, mats);
                if (rel.printed_variant)
                    rec.status = rec.residual > tol.variant_fail_floor ? CheckStatus::Pass
                                                                       : CheckStatus::Fail;
                else
                    rec.status =
                        rec.residual < tol.relation ? CheckStatus::Pass : CheckStatus::Fail;
            } catch (const Error& e) {
                rec.status = CheckStatus::Fail;
                rec.note += std::string(rec.note.empty() ? "" : "; ") + e.what();
            }
        }
        rep.relations.push_back(std::move(rec));
    }
}

// --------------------------------------------------------------------------
// spectra and eigenvectors against closed forms and polynomial oracles
// --------------------------------------------------------------------------
inline void check_spectra(const SystemInstance& sys, int m, VerificationReport& rep,
                          const Tolerances& tol = {}) {
    if (!sys.matrix_mode) return;
    BasisSpec basis = sys.make_basis(m);
    int dim = basis.dim;
    for (const auto& rule : sys.spectrum_rules) {
        if (!rule.closed) continue;
        SpectrumRecord rec;
        rec.op = rule.op;
        try {
            LinearOperator op;
            for (auto& s : vdetail::split_symbols(rule.op)) op += sys.generators.at(s);
            RepMatrix rm = to_matrix(op, basis);
            if (rm.spill / (1.0 + rm.mat.frobenius()) > tol.spill_gate) {
                rec.status = CheckStatus::NotApplicable;
                rec.note = "operator does not restrict to the span at this energy";
                rep.spectra.push_back(std::move(rec));
                continue;
            }
            auto ep = eigenpairs(rm.mat);
            rec.computed = ep.values;
            rec.closed_form = rule.closed(dim);
            rec.max_err = eigen_multiset_distance(rec.computed, rec.closed_form);
            rec.status = rec.max_err < tol.spectrum ? CheckStatus::Pass : CheckStatus::Fail;
        } catch (const Error& e) {
            rec.status = CheckStatus::Fail;
            rec.note = e.what();
        }
        rep.spectra.push_back(std::move(rec));
    }
}

inline void check_eigenvectors(const SystemInstance& sys, int m, VerificationReport& rep,
                               const Tolerances& tol = {}) {
    if (!sys.matrix_mode) return;
    BasisSpec basis = sys.make_basis(m);
    int dim = basis.dim;
    for (const auto& rule : sys.spectrum_rules) {
        if (!rule.closed || !rule.eigenvectors) continue;
        LinearOperator op;
        for (auto& s : vdetail::split_symbols(rule.op)) op += sys.generators.at(s);
        RepMatrix rm = to_matrix(op, basis);
        if (rm.spill / (1.0 + rm.mat.frobenius()) > tol.spill_gate) continue;
        auto ep = eigenpairs(rm.mat);
        auto lambdas = rule.closed(dim);
        auto oracle = rule.eigenvectors(dim);
        double mat_scale = rm.mat.frobenius();
        for (int n = 0; n < dim && n < static_cast<int>(oracle.size()); ++n) {
            EigenvectorRecord rec;
            rec.op = rule.op;
            rec.index = n;
            rec.tag = rule.oracle;
            // gather computed eigenvectors close to lambda_n; compare by
            // subspace angle when the eigenvalue is (near-)degenerate
            std::vector<int> close;
            double best = 1e300;
            int besti = 0;
            for (int k = 0; k < dim; ++k) {
                double d = std::abs(ep.values[k] - lambdas[n]);
                if (d < best) { best = d; besti = k; }
                if (d < 1e-6 * (1.0 + mat_scale)) close.push_back(k);
            }
            if (close.empty()) close.push_back(besti);
            // lattice orientation is a convention: the mirrored lattice is the
            // equally valid one, so lattice oracles are compared both ways
            std::vector<std::vector<Cplx>> candidates{oracle[n]};
            if (basis.family == BasisFamily::Lattice) {
                std::vector<Cplx> revd(oracle[n].rbegin(), oracle[n].rend());
                candidates.push_back(std::move(revd));
            }
            double bestdist = 1e300;
            for (auto& orc : candidates) {
                double dist;
                if (close.size() == 1) {
                    std::vector<Cplx> u(dim);
                    for (int i = 0; i < dim; ++i) u[i] = ep.vectors.at(i, close[0]);
                    dist = projective_distance(u, orc);
                } else {
                    std::vector<Cplx> v = orc;
                    double nv = 0.0;
                    for (auto& x : v) nv += abs2(x);
                    for (int idx : close) {
                        Cplx dot = 0.0;
                        double nu = 0.0;
                        for (int i = 0; i < dim; ++i) {
                            dot += std::conj(ep.vectors.at(i, idx)) * v[i];
                            nu += abs2(ep.vectors.at(i, idx));
                        }
                        for (int i = 0; i < dim; ++i) v[i] -= ep.vectors.at(i, idx) * dot / nu;
                    }
                    double rem = 0.0;
                    for (auto& x : v) rem += abs2(x);
                    dist = std::sqrt(rem / std::max(nv, 1e-300));
                }
                bestdist = std::min(bestdist, dist);
            }
            rec.distance = bestdist;
            rec.status = rec.distance < tol.eigenvector ? CheckStatus::Pass : CheckStatus::Fail;
            rep.eigenvectors.push_back(std::move(rec));
        }
    }
}

// --------------------------------------------------------------------------
// S9 finite representation: the quotient by the invariant subspace above
// level mu = m. Generators are expanded exactly in the L1 eigenbasis
// w_0..w_m; spill is the quotient leakage (the L3 down-coefficient at level
// m+1), which vanishes exactly at mu = m.
// --------------------------------------------------------------------------
inline S9Quotient s9_quotient(const SystemInstance& sys, int m) {
    S9Quotient out;
    out.dim = m + 1;
    int D = m + 3;  // working window
    auto l1rep = to_matrix(sys.generators.at("L1"), BasisSpec::even_monomial(D));
    auto ep = eigenpairs(l1rep.mat);
    double a = sys.params.get("a"), b = sys.params.get("b");
    // order eigenvectors by the L1 eigenvalue index n
    auto lam = [&](int n) {
        return Cplx(-4.0 * n * (n + a + b + 1.0) - 2.0 * (a + 1.0) * (b + 1.0) + 0.5);
    };
    std::vector<int> order(D);
    for (int n = 0; n < D; ++n) {
        double bd = 1e300;
        int best = 0;
        for (int k = 0; k < D; ++k)
            if (std::abs(ep.values[k] - lam(n)) < bd) { bd = std::abs(ep.values[k] - lam(n)); best = k; }
        order[n] = best;
    }
    // LU of the eigenvector matrix to expand polynomials in the w basis
    Mat V(D);
    for (int n = 0; n < D; ++n)
        for (int r = 0; r < D; ++r) V.at(r, n) = ep.vectors.at(r, order[n]);
    auto expand = [&](const Laurent& f) {
        std::vector<Cplx> rhs(D, 0.0);
        for (int r = 0; r < D; ++r) rhs[r] = f.coeff(2 * r);
        Mat A = V;
        std::vector<Cplx> x = rhs;
        for (int col = 0; col < D; ++col) {
            int piv = col;
            for (int r = col + 1; r < D; ++r)
                if (std::abs(A.at(r, col)) > std::abs(A.at(piv, col))) piv = r;
            if (piv != col)
                for (int j = 0; j < D; ++j) std::swap(A.at(col, j), A.at(piv, j));
            if (piv != col) std::swap(x[col], x[piv]);
            for (int r = 0; r < D; ++r) {
                if (r == col) continue;
                Cplx f2 = A.at(r, col) / A.at(col, col);
                if (f2 == Cplx(0.0)) continue;
                for (int j = col; j < D; ++j) A.at(r, j) -= f2 * A.at(col, j);
                x[r] -= f2 * x[col];
            }
        }
        for (int r = 0; r < D; ++r) x[r] /= A.at(r, r);
        return x;
    };
    // leakage: component of L3 w_{m+1} onto w_m
    {
        Laurent w;
        for (int r = 0; r < D; ++r) w += Laurent::monomial(2 * r, V.at(r, m + 1));
        auto coeffs = expand(apply(sys.generators.at("L3"), w));
        out.leakage = std::abs(coeffs[static_cast<size_t>(m)]);
    }
    BasisSpec qb = BasisSpec::even_monomial(m + 1);  // labels the quotient basis
    for (auto& [sym, op] : sys.generators) {
        RepMatrix rm;
        rm.basis = qb;
        rm.mat = Mat(m + 1);
        rm.spill = out.leakage;
        for (int n = 0; n <= m; ++n) {
            Laurent w;
            for (int r = 0; r < D; ++r) w += Laurent::monomial(2 * r, V.at(r, n));
            auto coeffs = expand(apply(op, w));
            for (int r = 0; r <= m; ++r) rm.mat.at(r, n) = coeffs[static_cast<size_t>(r)];
        }
        out.mats.emplace(sym, std::move(rm));
    }
    return out;
}

// --------------------------------------------------------------------------
// closure / quantization checks
// --------------------------------------------------------------------------
inline double closure_spill(SystemId id, const SystemParams& params, Cplx E, int m) {
    if (id == SystemId::E8) {
        // degeneration of the Jacobi parameter: branch +1 pins b = -m, -1 pins a = -m
        double al = params.get("alpha"), be = params.get("beta"), ga = params.get("gamma");
        Cplx rta = std::sqrt(Cplx(al)), rtg = std::sqrt(Cplx(-ga));
        Cplx ja = E / (4.0 * rtg) - be / (4.0 * rta);
        Cplx jb = -E / (4.0 * rtg) - be / (4.0 * rta);
        double dm = static_cast<double>(m);
        return std::min(std::abs(ja + dm), std::abs(jb + dm));
    }
    if (id == SystemId::S9) {
        SystemInstance sys = build(id, params, E);
        return s9_quotient(sys, m).leakage;
    }
    SystemInstance sys = build(id, params, E);
    BasisSpec basis = sys.make_basis(m);
    double spill2 = 0.0;
    for (auto& [sym, op] : sys.generators) {
        RepMatrix rm = to_matrix(op, basis);
        spill2 += rm.spill * rm.spill;
    }
    return std::sqrt(spill2);
}

inline ClosureRecord check_closure(SystemId id, int m, const SystemParams& params, int branch,
                                   const Tolerances& tol = {}) {
    ClosureRecord rec;
    QuantizedValue qv;
    try {
        qv = quantized_energy(id, m, params, branch);
    } catch (const NoQuantization& e) {
        rec.status = CheckStatus::NotApplicable;
        rec.note = e.what();
        return rec;
    }
    rec.applicable = true;
    rec.value_at_rule = qv.value;
    try {
        if (!qv.is_energy) {
            // parameter quantization (E6): detune the parameter instead
            SystemParams tuned = params;
            tuned.vals[qv.param] = qv.value.real();
            SystemParams detuned = params;
            detuned.vals[qv.param] = qv.value.real() + tol.detune;
            Cplx E = params.get_or("energy", 1.3);
            rec.quantity = "generator spill at " + qv.param + " = -m";
            rec.spill_at_rule = closure_spill(id, tuned, Cplx(E), m);
            rec.spill_detuned = closure_spill(id, detuned, Cplx(E), m);
        } else {
            rec.quantity = id == SystemId::E8 ? "distance of the Jacobi parameter from -m"
                           : id == SystemId::S9 ? "quotient leakage in the L1 eigenbasis"
                                                : "generator spill";
            rec.spill_at_rule = closure_spill(id, params, qv.value, m);
            rec.spill_detuned = closure_spill(id, params, qv.value + tol.detune, m);
        }
        bool tight = rec.spill_at_rule < tol.closure_tight;
        bool loose = rec.spill_detuned > tol.closure_loose;
        rec.status = (tight && loose) ? CheckStatus::Pass : CheckStatus::Fail;
    } catch (const Error& e) {
        rec.status = CheckStatus::Fail;
        rec.note = e.what();
    }
    return rec;
}

// --------------------------------------------------------------------------
// E1 normalization adjudication: derive k_n^2/k_{n-1}^2 from the ladder pair,
// compare both printed formulas, then test the reproducing-kernel identity
// for the surviving form.
// --------------------------------------------------------------------------
struct E1NormalizationRecord {
    std::vector<Cplx> derived_ratio;    // k_n^2/k_{n-1}^2, n = 1..m-1
    std::vector<Cplx> printed_recurrence;
    std::vector<Cplx> printed_closed_form;
    bool recurrence_survives = false;
    bool closed_form_survives = false;
    double kernel_residual_corrected = 0.0;  // vs 2F1(1-m, 1-m-a; 1+b; 64 z)
    double kernel_residual_printed = 0.0;    // vs 2F1(-m, -m-a; b; z)
    std::string note;
};

inline E1NormalizationRecord check_e1_normalization(int m, double a, double b, double w = 1.0) {
    E1NormalizationRecord rec;
    SystemParams p{{{"omega", w}, {"a", a}, {"b", b}}, +1};
    Cplx E = quantized_energy(SystemId::E1, m, p, +1).value;
    SystemInstance sys = build(SystemId::E1, p, E);
    auto bind = vdetail::action_bindings(sys);
    OperatorRing ring;
    LinearOperator A = nc_evaluate(sys.ladder->lower_def, bind, ring);
    LinearOperator Ad = nc_evaluate(sys.ladder->raise_def, bind, ring);
    for (int n = 1; n < m; ++n) {
        // <A t^n, t^{n-1}> = <t^n, Ad t^{n-1}>  =>  k_n^2/k_{n-1}^2 = P_n / Q_n
        Cplx Qn = apply(A, Laurent::monomial(n, 1.0)).coeff(n - 1);
        Cplx Pn = apply(Ad, Laurent::monomial(n - 1, 1.0)).coeff(n);
        rec.derived_ratio.push_back(Pn / Qn);
        double dn = n, dm = m;
        rec.printed_recurrence.push_back(
            Cplx(64.0 * (dm - dn) * (dm - dn + a) / (dn * (b + dn))));
        rec.printed_closed_form.push_back(Cplx(256.0 * (dm - dn + 1.0) * (dm - dn + 1.0 + a) /
                                               (dn * (b + dn - 1.0))));
    }
    double err_rec = 0.0, err_closed = 0.0;
    for (size_t i = 0; i < rec.derived_ratio.size(); ++i) {
        double s = 1.0 + std::abs(rec.derived_ratio[i]);
        err_rec = std::max(err_rec, std::abs(rec.derived_ratio[i] - rec.printed_recurrence[i]) / s);
        err_closed =
            std::max(err_closed, std::abs(rec.derived_ratio[i] - rec.printed_closed_form[i]) / s);
    }
    rec.recurrence_survives = err_rec < 1e-10;
    rec.closed_form_survives = err_closed < 1e-10;
    // kernel: sum_{n<m} k_n^2 z^n with k_0 = 1 and the derived ratios
    std::vector<Cplx> k2{Cplx(1.0)};
    for (auto& r : rec.derived_ratio) k2.push_back(k2.back() * r);
    for (double z : {0.013, -0.007, 0.004, 0.0022, -0.0035}) {
        Cplx sum = 0.0, zp = 1.0;
        for (int n = 0; n < m; ++n) { sum += k2[static_cast<size_t>(n)] * zp; zp *= z; }
        Cplx corrected = hyp_terminating(
            {{Cplx(1.0 - m), Cplx(1.0 - m - a)}, {Cplx(1.0 + b)}, Cplx(64.0 * z)});
        Cplx printed = hyp_terminating({{Cplx(-m), Cplx(-m - a)}, {Cplx(b)}, Cplx(z)});
        rec.kernel_residual_corrected =
            std::max(rec.kernel_residual_corrected, std::abs(sum - corrected) / (1.0 + std::abs(sum)));
        rec.kernel_residual_printed =
            std::max(rec.kernel_residual_printed, std::abs(sum - printed) / (1.0 + std::abs(sum)));
    }
    rec.note = "the printed recurrence is the operator-derived one; the printed closed form and "
               "kernel parameters correspond to it only after m -> m-1, b -> b+1, z -> 64z";
    return rec;
}

} // namespace qalg
