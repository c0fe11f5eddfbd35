#pragma once

#include "qalg/systems/nondegenerate.hpp"

namespace qalg::detail {

using namespace qalg::nc;
using namespace qalg::ops;

// ---------------------------------------------------------------------------
// E18, the 2D Coulomb system. The model annihilates t^{m-1} on the
// sqrt(E) = -alpha/m branch, so the builder negates the principal root; the
// printed [A,Ad] = 2iHX has its sign flipped relative to the model (pinned
// by the original-basis [L1,L2] = HX under A = L1 + i L2).
// ---------------------------------------------------------------------------
inline void populate_e18(SystemInstance& sys) {
    double al = sys.params.get("alpha");
    Cplx E = sys.energy;
    Cplx s = -std::sqrt(E);

    sys.generators["H"] = M(Laurent(E));
    sys.generators["X"] = D(1, RatFunc(mono(1, Cplx(0, -1)))) +
                          M(Laurent(Cplx(0, -1) * (0.5 + al / (2.0 * s))));
    sys.generators["A"] = D(1, RatFunc(Laurent(E / 4.0)));
    sys.generators["Ad"] = D(1, RatFunc(mono(2, -4.0))) + M(mono(1, -4.0 * (1.0 + al / s)));
    {
        OperatorRing ring;
        std::map<Symbol, LinearOperator> bind{{"A", sys.generators["A"]},
                                              {"Ad", sys.generators["Ad"]}};
        sys.generators["L1"] = nc_evaluate(K(0.5) * (S("A") + S("Ad")), bind, ring);
        sys.generators["L2"] = nc_evaluate(K(Cplx(0, -0.5)) * (S("A") - S("Ad")), bind, ring);
    }
    sys.build_notes.push_back("sqrt(E) taken on the negated principal branch; the printed "
                              "annihilation display -4(Em - alpha sqrt(E))/E assumes it");

    sys.relations.push_back({"[L1,X]=L2", comm(S("L1"), S("X")) - S("L2"), false, ""});
    sys.relations.push_back({"[L2,X]=-L1", comm(S("L2"), S("X")) + S("L1"), false, ""});
    sys.relations.push_back({"[L1,L2]=HX", comm(S("L1"), S("L2")) - S("H") * S("X"), false, ""});
    sys.relations.push_back({"casimir",
                             S("L1") * S("L1") + S("L2") * S("L2") - S("H") * S("X") * S("X") +
                                 K(0.25) * S("H") - K(0.25 * al * al),
                             false, ""});
    sys.relations.push_back({"[A,X]=-iA", comm(S("A"), S("X")) + K(Cplx(0, 1)) * S("A"), false, ""});
    sys.relations.push_back({"[Ad,X]=iAd", comm(S("Ad"), S("X")) - K(Cplx(0, 1)) * S("Ad"), false, ""});
    sys.relations.push_back({"[A,Ad]=-2iHX",
                             comm(S("A"), S("Ad")) + K(Cplx(0, 2)) * S("H") * S("X"), false,
                             "sign corrected; pinned by [L1,L2] = HX under A = L1 + i L2"});
    sys.relations.push_back({"[A,Ad]=2iHX printed",
                             comm(S("A"), S("Ad")) - K(Cplx(0, 2)) * S("H") * S("X"), true,
                             "printed sl2 display"});
    sys.relations.push_back({"sl2 casimir",
                             symm({"A", "Ad"}) - K(2.0) * S("H") * S("X") * S("X") +
                                 K(0.5) * S("H") - K(0.5 * al * al),
                             false, ""});

    LadderSpec lad;
    lad.lower_def = S("A");
    lad.raise_def = S("Ad");
    lad.lower_explicit = sys.generators["A"];
    lad.raise_explicit = sys.generators["Ad"];
    lad.relations.push_back({"[A,X]=-iA", comm(S("A"), S("X")) + K(Cplx(0, 1)) * S("A"), false, ""});
    lad.relations.push_back({"[Ad,X]=iAd", comm(S("Ad"), S("X")) - K(Cplx(0, 1)) * S("Ad"), false, ""});
    sys.ladder = lad;

    Cplx ss = s;
    sys.spectrum_rules.push_back(
        {"X", OracleTag::None,
         [ss, al](int m) {
             std::vector<Cplx> v;
             for (int n = 0; n < m; ++n)
                 v.push_back(Cplx(0, -1) * (Cplx(static_cast<double>(n)) + 0.5 + al / (2.0 * ss)));
             return v;
         },
         nullptr});
}

// ---------------------------------------------------------------------------
// Shared S3 relation set (differential and difference models).
// ---------------------------------------------------------------------------
inline void s3_relations(SystemInstance& sys, double a, bool functional_printed_only) {
    sys.relations.push_back({"[L1,X]=2L2", comm(S("L1"), S("X")) - K(2.0) * S("L2"), false, ""});
    sys.relations.push_back({"[L2,X]",
                             comm(S("L2"), S("X")) -
                                 (K(-1.0) * S("X") * S("X") - K(2.0) * S("L1") + S("H") +
                                  K(a * a - 0.25)),
                             false, ""});
    sys.relations.push_back({"[L1,L2]",
                             comm(S("L1"), S("L2")) -
                                 (K(-1.0) * symm({"L1", "X"}) + K(2.0 * a * a - 1.0) * S("X")),
                             false, ""});
    NCExpr func = K(1.0 / 6.0) * symm({"L1", "X", "X"}) - S("H") * S("L1") + S("L2") * S("L2") +
                  S("L1") * S("L1") - K(a * a - 7.0 / 6.0) * S("X") * S("X") -
                  K(a * a + 5.0 / 12.0) * S("L1") + K(1.0 / 6.0) * S("H") -
                  K(5.0 / 24.0 * (4.0 * a * a - 1.0));
    if (functional_printed_only) {
        sys.relations.push_back({"functional relation", func, false, ""});
    } else {
        // the lattice irrep shifts the quartic casimir value; the model-exact
        // form adds (2a - 4/3) H - g(a)
        double g = -2.0 * a * a * a + 10.0 / 3.0 * a * a - 3.5 * a + 7.0 / 6.0;
        sys.relations.push_back({"functional relation", func + K(2.0 * a - 4.0 / 3.0) * S("H") - K(g),
                                 false,
                                 "casimir value of the lattice irrep; differs from print by "
                                 "(2a-4/3)H - g(a)"});
        sys.relations.push_back({"functional relation printed", func, true, ""});
    }
}

// ---------------------------------------------------------------------------
// S3 differential model. X and the printed gauge constants c0, c1 are kept;
// L1 is rebuilt from the recurrence data the relations force (its diagonal is
// pinned by [L2,X], the raising band by [L1,L2] with the printed lowering
// gauge n(n - c1 + 2c0 + 1)), and L2 := [L1,X]/2. Whether the printed
// displays match is recorded as model variants.
// ---------------------------------------------------------------------------
inline void populate_s3(SystemInstance& sys) {
    double a = sys.params.get("a");
    Cplx E = sys.energy;
    Cplx r1 = std::sqrt(4.0 * E - 1.0);
    Cplx c0_printed = a - 1.0 + r1 / 2.0;
    Cplx c1_printed = 0.75 * (2.0 * a + r1) +
                      0.25 * std::sqrt(4.0 * a * a + 16.0 * a - 12.0 * E - 13.0 -
                                       4.0 * (a - 2.0) * r1);
    Cplx kap_printed = 2.0 * c0_printed - c1_printed + 1.0;

    // Reconstruction: [L2,X] pins the L1 diagonal p(n), [L1,L2] pins the
    // band product G_n; the lowering gauge is n(n+kappa) with kappa a root of
    // the deflated G. c0 is then the one free structural constant, fixed by
    // the functional relation (whose defect is a pure scalar in this model).
    auto assemble = [&](Cplx c0, Cplx kap_hint, Cplx* kap_out) {
        auto pdiag = [&](double n) {
            Cplx x = 2.0 * n + c0;
            return (E + a * a - 0.25 + x * x) / 2.0;
        };
        auto G = [&](int n) {
            Cplx g = 0.0;
            for (int j = 0; j <= n; ++j)
                g += (2.0 * j + c0) * (2.0 * pdiag(j) - (2.0 * a * a - 1.0)) / 2.0;
            return g;
        };
        // G is a quartic in n with a root at n = -1; deflate and take the
        // cubic root closest to the hint as -1-kappa
        std::vector<Cplx> gv{G(0), G(1), G(2), G(3), G(4)};
        // coefficients of G(n) = sum g_k n^k via Newton forward differences
        std::vector<Cplx> c = gv;
        for (int lvl = 1; lvl <= 4; ++lvl)
            for (int i = 4; i >= lvl; --i) c[i] = (c[i] - c[i - 1]) / Cplx(static_cast<double>(lvl));
        // expand Newton form to monomials
        std::vector<Cplx> poly{c[4]};
        for (int k = 3; k >= 0; --k) {
            // poly = poly*(n-k) + c[k]
            std::vector<Cplx> next(poly.size() + 1, 0.0);
            for (size_t i = 0; i < poly.size(); ++i) {
                next[i + 1] += poly[i];
                next[i] -= Cplx(static_cast<double>(k)) * poly[i];
            }
            next[0] += c[k];
            poly = next;
        }
        // deflate the known root at n = -1 (synthetic division by (n+1))
        std::vector<Cplx> cubic(poly.size() - 1, 0.0);
        {
            Cplx acc = 0.0;
            for (int i = static_cast<int>(poly.size()) - 1; i >= 1; --i) {
                acc = poly[static_cast<size_t>(i)] + Cplx(-1.0) * acc;
                cubic[static_cast<size_t>(i - 1)] = acc;
            }
        }
        // roots of the cubic via the companion matrix
        Mat comp(3);
        for (int i = 0; i < 3; ++i) comp.at(i, 2) = -cubic[static_cast<size_t>(i)] / cubic[3];
        comp.at(1, 0) = 1.0;
        comp.at(2, 1) = 1.0;
        auto ep = eigenpairs(comp);
        Cplx kap = kap_hint;
        double best = 1e300;
        for (auto& root : ep.values) {
            Cplx cand = -1.0 - root;
            if (std::abs(cand - kap_hint) < best) {
                best = std::abs(cand - kap_hint);
                kap = cand;
            }
        }
        if (kap_out) *kap_out = kap;
        auto q = [&](int n) {
            double dn = n;
            return G(n) / ((dn + 1.0) * (dn + 1.0 + kap));
        };
        Cplx qc = q(0);
        Cplx qb = q(1) - qc;
        Cplx qa = (q(2) - 2.0 * qb - qc) / 2.0;
        Cplx pc = pdiag(0);
        Cplx pb = pdiag(1) - pc;
        Cplx pa = (pdiag(2) - 2.0 * pb - pc) / 2.0;
        return tridiagonal_operator(qa, qb, qc, pa, pb, pc, 1.0, 1.0 + kap, 0.0);
    };

    auto x_of = [&](Cplx c0) {
        return D(1, RatFunc(mono(1, Cplx(0, 2)))) + M(Laurent(Cplx(0, 1) * c0));
    };
    // scalar defect of the functional relation as a function of c0
    auto defect = [&](Cplx c0) {
        auto L1 = assemble(c0, kap_printed, nullptr);
        auto X = x_of(c0);
        auto L2 = Cplx(0.5) * commutator(L1, X);
        OperatorRing ring;
        std::map<Symbol, LinearOperator> bind{
            {"L1", L1}, {"L2", L2}, {"X", X}, {"H", M(Laurent(E))}};
        NCExpr func = K(1.0 / 6.0) * symm({"L1", "X", "X"}) - S("H") * S("L1") +
                      S("L2") * S("L2") + S("L1") * S("L1") -
                      K(a * a - 7.0 / 6.0) * S("X") * S("X") - K(a * a + 5.0 / 12.0) * S("L1") +
                      K(1.0 / 6.0) * S("H") - K(5.0 / 24.0 * (4.0 * a * a - 1.0));
        auto dop = nc_evaluate(func, bind, ring);
        return apply(dop, Laurent::one()).coeff(0);
    };
    Cplx c0 = c0_printed;
    {
        // Newton iteration on the scalar defect
        for (int it = 0; it < 24; ++it) {
            Cplx f = defect(c0);
            if (std::abs(f) < 1e-12) break;
            Cplx h(1e-6);
            Cplx fp = (defect(c0 + h) - f) / h;
            if (std::abs(fp) < 1e-14) break;
            c0 -= f / fp;
        }
    }
    Cplx kap = kap_printed;
    sys.generators["H"] = M(Laurent(E));
    sys.generators["X"] = x_of(c0);
    sys.generators["L1"] = assemble(c0, kap_printed, &kap);
    sys.generators["L2"] = Cplx(0.5) * commutator(sys.generators["L1"], sys.generators["X"]);
    {
        std::ostringstream os;
        os << "c0 solved from the functional relation: " << c0.real();
        if (std::abs(c0.imag()) > 1e-12) os << (c0.imag() > 0 ? "+" : "") << c0.imag() << "i";
        os << " (printed " << c0_printed.real();
        if (std::abs(c0_printed.imag()) > 1e-12)
            os << (c0_printed.imag() > 0 ? "+" : "") << c0_printed.imag() << "i";
        os << ", |diff| " << std::abs(c0 - c0_printed) << ")";
        sys.build_notes.push_back(os.str());
    }
    sys.build_notes.push_back("L1 rebuilt from the relation-forced recurrence data; L2 := [L1,X]/2");

    s3_relations(sys, a, true);

    // printed displays as variants, with the printed radical constants
    Cplx kappa = c1_printed * c1_printed + 1.5 * c0_printed * c0_printed -
                 2.0 * c0_printed * c1_printed + 3.0 * c0_printed - 3.0 * c1_printed -
                 0.5 * a * a + 0.5 * E + 19.0 / 18.0;
    Laurent tp1 = Laurent::t() + Laurent::one();
    auto l1_printed = D(2, RatFunc(Laurent::t() * tp1 * tp1)) +
                      D(1, RatFunc(tp1 * (mono(1, c1_printed) +
                                          Laurent(c1_printed + 2.0 * c0_printed - 1.0)))) +
                      M(mono(1, kappa) + Laurent((a * a + c0_printed * c0_printed + E) / 2.0 - 0.125));
    sys.variants.push_back({"L1 as printed", "L1", l1_printed, false,
                            "printed second-order display with the c0, c1 radicals"});
    auto l2_printed = D(2, RatFunc(mono(3, Cplx(0, -1)) + mono(1, Cplx(0, 1)))) +
                      D(1, RatFunc(mono(2, Cplx(0, -1) * c1_printed) +
                                   Laurent(Cplx(0, -1) * (2.0 + 2.0 * c0_printed - c1_printed)))) +
                      M(mono(1, Cplx(0, -1) * kappa));
    sys.variants.push_back({"L2 as printed", "L2", l2_printed, false, ""});

    LadderSpec lad;
    lad.raise_def = S("L1") + K(Cplx(0, 1)) * S("L2") +
                    K(0.5) * (S("X") * S("X") - K(E) + K(0.25 - a * a));
    lad.lower_def = S("L1") - K(Cplx(0, 1)) * S("L2") +
                    K(0.5) * (S("X") * S("X") - K(E) + K(0.25 - a * a));
    lad.relations.push_back({"[A,X]=2iA", comm(S("A"), S("X")) - K(Cplx(0, 2)) * S("A"), false, ""});
    lad.relations.push_back({"[Ad,X]=-2iAd", comm(S("Ad"), S("X")) + K(Cplx(0, 2)) * S("Ad"),
                             false, ""});
    {
        // the quartic ladder identity holds with the irrep's casimir scalar,
        // computed here; the printed asymmetric 4E/E scalar is the variant
        NCExpr head = symm({"A", "Ad"}) - K(0.5) * S("X") * S("X") * S("X") * S("X") +
                      K(E - a * a + 2.75) * S("X") * S("X");
        OperatorRing ring;
        std::map<Symbol, LinearOperator> bind = sys.generators;
        bind["R"] = commutator(sys.generators["L1"], sys.generators["L2"]);
        bind["A"] = nc_evaluate(lad.lower_def, bind, ring);
        bind["Ad"] = nc_evaluate(lad.raise_def, bind, ring);
        Cplx scalar = apply(nc_evaluate(head, bind, ring), Laurent::one()).coeff(0);
        lad.relations.push_back({"{A,Ad} functional relation", head - K(scalar), false,
                                 "with the irrep casimir scalar computed from the model"});
        lad.relations.push_back(
            {"{A,Ad} functional relation printed",
             head + K((4.0 * E + 4.0 * a * a + 8.0 * a + 3.0) *
                      (E + 4.0 * a * a - 8.0 * a + 3.0) / 32.0),
             true, "printed scalar with the asymmetric 4E / E factors"});
    }
    sys.ladder = lad;

    Cplx cc0 = c0;
    sys.spectrum_rules.push_back(
        {"X", OracleTag::None,
         [cc0](int m) {
             std::vector<Cplx> v;
             for (int n = 0; n < m; ++n) v.push_back(Cplx(0, 1) * (2.0 * n + cc0));
             return v;
         },
         nullptr});
}

// ---------------------------------------------------------------------------
// S3 difference model on the integer lattice. X is the printed operator
// (times i, solving the -iX display); L2 := [L1,X]/2 where the printed L2
// display does not even act on even polynomials. The model realizes the
// relations at H = -(m+a)^2 + 2a - 3/4 with m+1 lattice points; the printed
// quantization -(m-a)^2 + 1/4 belongs to the differential model.
// ---------------------------------------------------------------------------
inline void populate_s3diff(SystemInstance& sys) {
    double a = sys.params.get("a");
    int mpar = static_cast<int>(sys.params.get("m"));
    double dm = static_cast<double>(mpar);

    Laurent fplus = (Laurent(Cplx(0.5 - a)) - Laurent::t()) *
                    (Laurent(Cplx(dm + a - 0.5)) - Laurent::t());
    Laurent fminus = (Laurent(Cplx(0.5 - a)) + Laurent::t()) *
                     (Laurent(Cplx(dm + a - 0.5)) + Laurent::t());
    RatFunc cxp(fplus * Laurent(0.5), Laurent::t());
    RatFunc cxm(fminus * Laurent(0.5), Laurent::t());
    sys.generators["X"] = Cplx(0, 1) * (Sh(Frac(1), cxp) + Sh(Frac(-1), -1.0 * cxm));
    sys.generators["L1"] = M(mono(2, -1.0) + Laurent(Cplx(a * a - 0.25)));
    sys.generators["L2"] =
        Cplx(0.5) * commutator(sys.generators["L1"], sys.generators["X"]);
    sys.generators["H"] = M(Laurent(sys.energy));
    sys.build_notes.push_back("L2 := [L1,X]/2; the printed display's shift coefficients do not "
                              "preserve even polynomials");

    {
        // printed L2 as a flagged variant
        Laurent one_m_2t = Laurent::one() - mono(1, 2.0);
        Laurent one_p_2t = Laurent::one() + mono(1, 2.0);
        RatFunc clp(one_m_2t * fplus * Laurent(0.25), Laurent::t());
        RatFunc clm(one_p_2t * fminus * Laurent(0.25), Laurent::t());
        sys.variants.push_back({"L2 as printed", "L2", Sh(Frac(1), clp) + Sh(Frac(-1), clm), false,
                                "printed (1 -+ 2t) coefficients"});
    }

    s3_relations(sys, a, false);

    sys.window_stride = 2;
    sys.window_lo = 0;
    sys.window_hi = 12;

    // lattice: bottom point kills the T^{-1} coefficient, top point the T^{+1};
    // both close with m+1 points starting at a - 1/2 (equivalently 1/2 - a - m)
    struct Candidate { double offset; int count; };
    std::vector<Candidate> found;
    for (double p0 : {a - 0.5, 0.5 - a - dm}) {
        for (int count = mpar; count <= mpar + 2; ++count) {
            double top = p0 + count - 1;
            double fm_at_p0 = std::abs((0.5 - a + p0) * (dm + a - 0.5 + p0));
            double fp_at_top = std::abs((0.5 - a - top) * (dm + a - 0.5 - top));
            bool pole = false;
            for (int k = 0; k < count; ++k)
                if (std::abs(p0 + k) < 1e-9) pole = true;
            if (!pole && fm_at_p0 < 1e-9 && fp_at_top < 1e-9) found.push_back({p0, count});
        }
    }
    if (!found.empty()) {
        sys.lattice_basis = BasisSpec::lattice(found.front().count, Cplx(found.front().offset),
                                               Frac(1));
        sys.build_notes.push_back("lattice offset " + std::to_string(found.front().offset) +
                                  ", " + std::to_string(found.front().count) +
                                  " points for model parameter m = " + std::to_string(mpar));
    } else {
        sys.matrix_mode = false;
        sys.build_notes.push_back("lattice search failed: no offset closes both boundaries");
    }
    sys.basis_family = BasisFamily::Lattice;

    // X has the equally spaced spectrum i(2n - m) on the lattice; its
    // eigenfunctions are the dual Hahn values R_n(lambda(x); a-1, a-1, m)
    int count = sys.lattice_basis ? sys.lattice_basis->dim : mpar + 1;
    sys.spectrum_rules.push_back(
        {"X", OracleTag::DualHahn,
         [mpar, count](int) {
             std::vector<Cplx> v;
             for (int n = 0; n < count; ++n) v.push_back(Cplx(0, 2.0 * n - mpar));
             return v;
         },
         [a, mpar, count](int) {
             std::vector<std::vector<Cplx>> vecs;
             int N = count - 1;
             for (int n = 0; n < count; ++n) {
                 std::vector<Cplx> v(count, 0.0);
                 for (int x = 0; x <= N; ++x)
                     v[static_cast<size_t>(x)] =
                         dual_hahn_R(n, Cplx(a - 1.0), Cplx(a - 1.0), N, Cplx(static_cast<double>(x)));
                 vecs.push_back(v);
             }
             return vecs;
         }});
}

// ---------------------------------------------------------------------------
// E14. X = 1/t on the Laurent window; printed [X,L2] = 2iL2 is a typo for
// 2iL1 (degree count alone rules the printed form out).
// ---------------------------------------------------------------------------
inline void populate_e14(SystemInstance& sys) {
    double al = sys.params.get("alpha");
    Cplx E = sys.energy;
    sys.generators["H"] = M(Laurent(E));
    sys.generators["X"] = M(mono(-1));
    sys.generators["L1"] = D(1, RatFunc(Laurent(Cplx(0, 1))));
    sys.generators["L2"] = D(2, RatFunc(mono(2, -1.0))) + D(1, RatFunc(mono(1, -2.0))) +
                           M(mono(2, al * E) + Laurent(Cplx(-0.25)));

    sys.relations.push_back({"[X,L1]=iX^2",
                             comm(S("X"), S("L1")) - K(Cplx(0, 1)) * S("X") * S("X"), false, ""});
    sys.relations.push_back({"[X,L2]=2iL1", comm(S("X"), S("L2")) - K(Cplx(0, 2)) * S("L1"), false,
                             "printed right-hand side 2iL2 is a typo for 2iL1"});
    sys.relations.push_back({"[X,L2]=2iL2 printed",
                             comm(S("X"), S("L2")) - K(Cplx(0, 2)) * S("L2"), true, ""});
    sys.relations.push_back({"[L1,L2]",
                             comm(S("L1"), S("L2")) -
                                 (K(Cplx(0, 1)) * symm({"X", "L2"}) + K(Cplx(0, 0.5)) * S("X")),
                             false, ""});
    NCExpr sym_l2_x2 = S("L2") * S("X") * S("X") + S("X") * S("X") * S("L2");
    sys.relations.push_back({"casimir",
                             S("L1") * S("L1") - K(0.5) * sym_l2_x2 + K(al) * S("H") -
                                 K(1.25) * S("X") * S("X"),
                             false, ""});

    sys.window_lo = -4;
    sys.window_hi = 10;
    sys.matrix_mode = false;
}

// ---------------------------------------------------------------------------
// E6. The model quantizes the constant a = -m (the Staeckel-equivalent S5
// energy). Printed (1-2a)X in [L1,L2] is corrected to (1-2a^2)X (matching the
// sibling S3 relation), and the printed functional identity is replaced by
// the operator-derived one, which again parallels S3's.
// ---------------------------------------------------------------------------
inline void populate_e6(SystemInstance& sys) {
    double a = sys.params.get("a");
    Cplx E = sys.energy;
    Cplx s = std::sqrt(E);

    sys.generators["H"] = M(Laurent(E));
    sys.generators["X"] = Cplx(s) * (D(1, RatFunc(mono(2))) + M(mono(1, a + 1.0) + Laurent::one()));
    sys.generators["L1"] =
        Cplx(-s) * (D(2, RatFunc(mono(3))) + D(1, RatFunc(mono(2, 2.0 * a + 3.0) + mono(1, 2.0))) +
                    M(mono(1, (a + 1.0) * (a + 1.0)) + Laurent(Cplx(a + 1.0))));
    sys.generators["L2"] = D(2, RatFunc(mono(2, -1.0))) +
                           D(1, RatFunc(mono(1, -2.0 * (a + 1.0)) + Laurent(Cplx(-2.0)))) +
                           M(Laurent(Cplx(-a - 0.5)));

    sys.relations.push_back({"[L1,X]=H-X^2",
                             comm(S("L1"), S("X")) - S("H") + S("X") * S("X"), false, ""});
    sys.relations.push_back({"[L2,X]=2L1", comm(S("L2"), S("X")) - K(2.0) * S("L1"), false, ""});
    sys.relations.push_back({"[L1,L2]",
                             comm(S("L1"), S("L2")) -
                                 (symm({"X", "L2"}) + K(1.0 - 2.0 * a * a) * S("X")),
                             false, "printed (1-2a)X corrected to (1-2a^2)X"});
    sys.relations.push_back({"[L1,L2] printed",
                             comm(S("L1"), S("L2")) -
                                 (symm({"X", "L2"}) + K(1.0 - 2.0 * a) * S("X")),
                             true, ""});
    NCExpr cas_canon = S("L1") * S("L1") - S("H") * S("L2") + K(1.0 / 6.0) * symm({"L2", "X", "X"}) +
                       K(7.0 / 6.0 - a * a) * S("X") * S("X") - K(1.0 / 6.0) * S("H");
    sys.relations.push_back({"casimir", cas_canon, false,
                             "operator-derived; parallels the printed S3 functional relation"});
    NCExpr cas_printed = S("L1") * S("L1") - S("H") * S("L2") - K(2.0) * symm({"L1", "X"}) +
                         K(0.5) * S("H") + K(0.5 - a * a) * S("X") * S("X");
    sys.relations.push_back({"casimir printed", cas_printed, true, ""});

    Cplx ss = s;
    double aa = a;
    sys.spectrum_rules.push_back(
        {"L1", OracleTag::ExplicitProduct,
         [ss, aa](int m) {
             std::vector<Cplx> v;
             for (int n = 0; n < m; ++n) v.push_back(-ss * (2.0 * n + aa + 1.0));
             return v;
         },
         [ss, aa](int m) {
             // lower-Hessenberg two-term recurrence: eigenvector for lambda_k has
             // v_n = 0 below k and v_{n} = v_{n-1} (n-1+a+1)^2 / (2(n-k)) * (-1)
             std::vector<std::vector<Cplx>> vecs;
             for (int k = 0; k < m; ++k) {
                 std::vector<Cplx> v(m, 0.0);
                 v[k] = 1.0;
                 for (int n = k + 1; n < m; ++n) {
                     Cplx up = -(Cplx(n - 1.0 + aa + 1.0) * Cplx(n - 1.0 + aa + 1.0));
                     v[n] = v[n - 1] * up / (2.0 * (n - k));
                 }
                 vecs.push_back(v);
             }
             return vecs;
         }});
    sys.spectrum_rules.push_back(
        {"L2", OracleTag::Laguerre,
         [aa](int m) {
             std::vector<Cplx> v;
             for (int n = 0; n < m; ++n)
                 v.push_back(Cplx(-(n * n + n + 2.0 * aa * n + aa + 0.5)));
             return v;
         },
         [aa](int m) {
             // upper triangular; for lambda_k the support is n <= k with
             // v_{n-1} = v_n * (-2n) / (diag_{n-1} - diag_k) matching the
             // generalized-Laguerre family
             std::vector<std::vector<Cplx>> vecs;
             auto diag = [aa](double n) { return -(n * n + n + 2.0 * aa * n + aa + 0.5); };
             for (int k = 0; k < m; ++k) {
                 std::vector<Cplx> v(m, 0.0);
                 v[k] = 1.0;
                 for (int n = k; n >= 1; --n)
                     v[n - 1] = v[n] * Cplx(-2.0 * n) / Cplx(diag(n - 1.0) - diag(k));
                 vecs.push_back(v);
             }
             return vecs;
         }});
}

// ---------------------------------------------------------------------------
// E5 and E4: exact as printed.
// ---------------------------------------------------------------------------
inline void populate_e5(SystemInstance& sys) {
    double al = sys.params.get("alpha");
    Cplx E = sys.energy;
    sys.generators["H"] = M(Laurent(E));
    sys.generators["X"] = M(mono(1));
    sys.generators["L1"] = D(1, RatFunc(Laurent(Cplx(-al / 2.0))));
    sys.generators["L2"] = D(2, RatFunc(Laurent(Cplx(-al / 4.0)))) +
                           M(mono(2, E / al) + mono(4, -1.0 / al));

    sys.relations.push_back({"[L1,X]=-alpha/2", comm(S("L1"), S("X")) + K(al / 2.0), false, ""});
    sys.relations.push_back({"[L2,X]=L1", comm(S("L2"), S("X")) - S("L1"), false, ""});
    sys.relations.push_back({"[L1,L2]",
                             comm(S("L1"), S("L2")) -
                                 (K(2.0) * S("X") * S("X") * S("X") - S("H") * S("X")),
                             false, ""});
    sys.relations.push_back({"casimir",
                             S("X") * S("X") * S("X") * S("X") - S("H") * S("X") * S("X") +
                                 S("L1") * S("L1") + K(al) * S("L2"),
                             false, ""});
    sys.matrix_mode = false;
}

inline void populate_e4(SystemInstance& sys) {
    double al = sys.params.get("alpha");
    Cplx E = sys.energy;
    sys.generators["H"] = M(Laurent(E));
    sys.generators["X"] = M(mono(1, Cplx(0, al)));
    sys.generators["L1"] = D(1, RatFunc(Laurent(Cplx(0, 1)))) + M(Laurent(E / 2.0));
    sys.generators["L2"] = D(1, RatFunc(mono(2, -al))) +
                           M(mono(4, Cplx(0, al * al * al / 4.0)) + mono(1, -al) +
                             Laurent(Cplx(0, 1) * E * E / (4.0 * al)));

    sys.relations.push_back({"[L1,X]=-alpha", comm(S("L1"), S("X")) + K(al), false, ""});
    sys.relations.push_back({"[L2,X]=iX^2",
                             comm(S("L2"), S("X")) - K(Cplx(0, 1)) * S("X") * S("X"), false, ""});
    sys.relations.push_back(
        {"[L1,L2]",
         comm(S("L1"), S("L2")) -
             (K(Cplx(0, -1)) * S("X") * S("X") * S("X") - K(Cplx(0, 1)) * S("H") * S("X") +
              K(Cplx(0, 1)) * symm({"L1", "X"})),
         false, ""});
    sys.relations.push_back({"casimir",
                             S("X") * S("X") * S("X") * S("X") - K(2.0 / 3.0) * symm({"L1", "X", "X"}) +
                                 K(2.0) * S("H") * S("X") * S("X") + S("H") * S("H") +
                                 K(Cplx(0, 4.0 * al)) * S("L2"),
                             false, ""});
    sys.matrix_mode = false;
}

} // namespace qalg::detail
