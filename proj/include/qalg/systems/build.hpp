#pragma once

#include "qalg/systems/degenerate.hpp"
#include "qalg/systems/nondegenerate.hpp"

namespace qalg {

inline const std::vector<SystemInfo>& catalog() {
    static const std::vector<SystemInfo> table = [] {
        std::vector<SystemInfo> v;
        auto add = [&](SystemId id, std::string cls, std::string type, bool degen, bool quant,
                       int branches, std::vector<std::string> names, SystemParams defaults) {
            v.push_back({id, std::move(cls), std::move(type), degen, quant, branches,
                         std::move(names), std::move(defaults)});
        };
        add(SystemId::E1, "L1^2 L2 + f(a_i,H) L2^2", "differential", false, true, 1,
            {"omega", "a", "b"}, {{{"omega", 1.0}, {"a", 0.5}, {"b", 0.5}}, +1});
        add(SystemId::E2, "L1^3 + f(a_i,H) L2^2", "differential", false, true, 2,
            {"omega", "b", "c"}, {{{"omega", 1.0}, {"b", 0.4}, {"c", 0.5}}, +1});
        add(SystemId::E10, "L1^3 + f(a_i,H) L1 L2", "differential", false, true, 1,
            {"alpha", "beta", "gamma"}, {{{"alpha", 0.4}, {"beta", 0.3}, {"gamma", -1.0}}, +1});
        add(SystemId::E15, "L1^3 + 0", "differential", false, false, 1, {"a"},
            {{{"a", 2.0}}, +1});
        add(SystemId::E8, "L1^2 L2 + 0", "differential", false, true, 2,
            {"alpha", "beta", "gamma"}, {{{"alpha", 1.0}, {"beta", 0.7}, {"gamma", -1.0}}, +1});
        add(SystemId::S9, "L1 L2 (L1+L2) + f(a_i,H) L1 L2", "difference", false, true, 1,
            {"a", "b", "c"}, {{{"a", 0.3}, {"b", 0.4}, {"c", 0.6}}, +1});
        add(SystemId::E20, "0 + f(a_i,H) L1 L2", "differential", false, true, 1,
            {"alpha", "beta", "gamma"}, {{{"alpha", 1.1}, {"beta", 0.4}, {"gamma", 0.3}}, +1});
        add(SystemId::E18, "0 + L1 L2 + A X^2", "differential", true, true, 1, {"alpha"},
            {{{"alpha", 2.0}}, +1});
        add(SystemId::S3, "X^4 + L1 L2", "differential", true, true, 1, {"a"},
            {{{"a", 0.3}}, +1});
        add(SystemId::S3diff, "X^4 + L1 L2", "difference", true, true, 1, {"a", "m"},
            {{{"a", 0.3}, {"m", 4.0}}, +1});
        add(SystemId::E14, "X^4 + X^2 L1 + L2^2 + 0", "differential", true, false, 1, {"alpha"},
            {{{"alpha", 0.8}}, +1});
        add(SystemId::E6, "0 + X^2 L1 + L2^2 + A L1", "differential", true, true, 1, {"a"},
            {{{"a", -3.0}}, +1});
        add(SystemId::E5, "X^4 + L1^2", "differential", true, false, 1, {"alpha"},
            {{{"alpha", 1.0}}, +1});
        add(SystemId::E4, "0 + X^2 L1 + L2", "differential", true, false, 1, {"alpha"},
            {{{"alpha", 1.0}}, +1});
        return v;
    }();
    return table;
}

inline const SystemInfo& system_info(SystemId id) {
    for (auto& s : catalog())
        if (s.id == id) return s;
    throw Error("unknown system");
}

inline void check_admissible(SystemId id, const SystemParams& p) {
    switch (id) {
        case SystemId::E1:
        case SystemId::E2:
            if (p.get("omega") == 0.0) throw InadmissibleParams("omega must be nonzero");
            break;
        case SystemId::E10:
            if (p.get("gamma") >= 0.0)
                throw InadmissibleParams("gamma < 0 required for the real-energy branch");
            break;
        case SystemId::E8:
            if (p.get("alpha") == 0.0 || p.get("gamma") == 0.0)
                throw InadmissibleParams("alpha and gamma must be nonzero");
            break;
        case SystemId::E20:
            if (std::abs(p.get("beta")) + std::abs(p.get("gamma")) == 0.0)
                throw InadmissibleParams("beta and gamma cannot both vanish");
            break;
        case SystemId::E5:
        case SystemId::E4:
            if (p.get("alpha") == 0.0) throw InadmissibleParams("alpha must be nonzero");
            break;
        default:
            break;
    }
}

inline SystemInstance build(SystemId id, const SystemParams& params, Cplx E) {
    check_admissible(id, params);
    SystemInstance sys;
    sys.id = id;
    sys.params = params;
    sys.energy = E;
    switch (id) {
        case SystemId::E1: detail::populate_e1(sys); break;
        case SystemId::E2: detail::populate_e2(sys); break;
        case SystemId::E10: detail::populate_e10(sys); break;
        case SystemId::E15: detail::populate_e15(sys); break;
        case SystemId::E8: detail::populate_e8(sys); break;
        case SystemId::S9: detail::populate_s9(sys); break;
        case SystemId::E20: detail::populate_e20(sys); break;
        case SystemId::E18: detail::populate_e18(sys); break;
        case SystemId::S3: detail::populate_s3(sys); break;
        case SystemId::S3diff: {
            // the difference model exists at the quantized level; its H-value
            // follows from (a, m) (engine-determined, see populate_s3diff)
            double a = params.get("a");
            double m = params.get("m");
            sys.energy = Cplx(-(m + a) * (m + a) + 2.0 * a - 0.75);
            detail::populate_s3diff(sys);
            break;
        }
        case SystemId::E14: detail::populate_e14(sys); break;
        case SystemId::E6: detail::populate_e6(sys); break;
        case SystemId::E5: detail::populate_e5(sys); break;
        case SystemId::E4: detail::populate_e4(sys); break;
    }
    return sys;
}

// Canonical quantization rules (operator-derived). Printed variants that
// disagree are available from quantized_energy_printed for the reports.
inline QuantizedValue quantized_energy(SystemId id, int m, const SystemParams& p, int branch) {
    if (m < 1) throw InadmissibleParams("m must be >= 1");
    double dm = static_cast<double>(m);
    switch (id) {
        case SystemId::E1: {
            double w = p.get("omega"), a = p.get("a"), b = p.get("b");
            return {true, "", Cplx(2.0 * w * (2.0 * dm + a + b))};
        }
        case SystemId::E2: {
            double w = p.get("omega"), b = p.get("b"), c = p.get("c");
            double eps = branch >= 0 ? 1.0 : -1.0;
            return {true, "", Cplx(4.0 * w * dm + 2.0 * eps * w * c + b * b / (16.0 * w * w))};
        }
        case SystemId::E10: {
            double al = p.get("alpha"), be = p.get("beta"), ga = p.get("gamma");
            Cplx s = std::sqrt(Cplx(-ga));
            return {true, "", -2.0 * s * dm - al * be / ga - be * be * be / (ga * ga)};
        }
        case SystemId::E8: {
            double al = p.get("alpha"), be = p.get("beta"), ga = p.get("gamma");
            Cplx rtg = std::sqrt(Cplx(-ga)), rta = std::sqrt(Cplx(al));
            Cplx ep = 4.0 * dm * rtg - rtg * be / rta;
            return {true, "", branch >= 0 ? ep : -ep};
        }
        case SystemId::S9: {
            double a = p.get("a"), b = p.get("b"), c = p.get("c");
            return {true, "", detail::s9_energy_of_mu(a, b, c, Cplx(dm))};
        }
        case SystemId::E20: {
            double al = p.get("alpha"), be = p.get("beta"), ga = p.get("gamma");
            // -m u^3 + 2 alpha u^2 + 2(beta^2+gamma^2) = 0, u = sqrt(E) > 0
            auto f = [&](double u) {
                return -dm * u * u * u + 2.0 * al * u * u + 2.0 * (be * be + ga * ga);
            };
            double lo = 1e-9, hi = 1.0;
            while (f(hi) > 0.0 && hi < 1e8) hi *= 2.0;
            if (f(hi) > 0.0) throw NoRealRoot("E20 bisection bracket not found");
            for (int it = 0; it < 200; ++it) {
                double mid = 0.5 * (lo + hi);
                (f(mid) > 0.0 ? lo : hi) = mid;
            }
            double u = 0.5 * (lo + hi);
            return {true, "", Cplx(u * u)};
        }
        case SystemId::E18: {
            double al = p.get("alpha");
            return {true, "", Cplx(al * al / (dm * dm))};
        }
        case SystemId::S3: {
            double a = p.get("a");
            return {true, "", Cplx(-(dm - a) * (dm - a) + 0.25)};
        }
        case SystemId::S3diff: {
            double a = p.get("a");
            return {true, "", Cplx(-(dm + a) * (dm + a) + 2.0 * a - 0.75)};
        }
        case SystemId::E6:
            return {false, "a", Cplx(-dm)};
        default:
            throw NoQuantization(std::string(system_name(id)) +
                                 " has no finite-dimensional restriction");
    }
}

// The formulas exactly as printed, for the discrepancy ledger.
inline std::optional<Cplx> quantized_energy_printed(SystemId id, int m, const SystemParams& p,
                                                    int branch) {
    double dm = static_cast<double>(m);
    switch (id) {
        case SystemId::E1: {
            double w = p.get("omega"), a = p.get("a"), b = p.get("b");
            return Cplx(-2.0 * w * (2.0 * dm + a + b));
        }
        case SystemId::E2: {
            double w = p.get("omega"), b = p.get("b"), c = p.get("c");
            double eps = branch >= 0 ? 1.0 : -1.0;
            return Cplx(4.0 * w * (dm + 2.0 * eps * c) + b * b / (16.0 * w * w));
        }
        case SystemId::E10: {
            double al = p.get("alpha"), be = p.get("beta"), ga = p.get("gamma");
            Cplx rt = std::sqrt(Cplx(ga));
            return Cplx(0, 2.0) * rt * dm - al * be / ga - be * be * be / ga;
        }
        case SystemId::E8: {
            double al = p.get("alpha"), be = p.get("beta"), ga = p.get("gamma");
            Cplx rtg = std::sqrt(Cplx(-ga)), rta = std::sqrt(Cplx(al));
            double eps = branch >= 0 ? 1.0 : -1.0;
            return 2.0 * rtg * (2.0 * dm + 2.0 + eps * be / (2.0 * rta));
        }
        case SystemId::E20: {
            double al = p.get("alpha"), be = p.get("beta"), ga = p.get("gamma");
            // printed EE8: -m u^3 + 2 a u^2 + beta^2 + gamma^2 = 0 (a read as alpha)
            auto f = [&](double u) {
                return -dm * u * u * u + 2.0 * al * u * u + (be * be + ga * ga);
            };
            double lo = 1e-9, hi = 1.0;
            while (f(hi) > 0.0 && hi < 1e8) hi *= 2.0;
            if (f(hi) > 0.0) return std::nullopt;
            for (int it = 0; it < 200; ++it) {
                double mid = 0.5 * (lo + hi);
                (f(mid) > 0.0 ? lo : hi) = mid;
            }
            double u = 0.5 * (lo + hi);
            return Cplx(u * u);
        }
        case SystemId::S9: {
            double a = p.get("a"), b = p.get("b"), c = p.get("c");
            return detail::s9_energy_printed(a, b, c, Cplx(dm));
        }
        case SystemId::S3diff: {
            double a = p.get("a");
            return Cplx(-(dm - a) * (dm - a) + 0.25);
        }
        default:
            return std::nullopt;
    }
}

inline std::vector<Cplx> closed_spectrum(SystemId id, const Symbol& op, int m,
                                         const SystemParams& params, Cplx E) {
    SystemInstance sys = build(id, params, E);
    for (auto& rule : sys.spectrum_rules)
        if (rule.op == op && rule.closed) return rule.closed(m);
    throw NoRule(std::string(system_name(id)) + " has no closed spectrum for " + op);
}

inline RepMatrix s9_l1_matrix(const SystemParams& params, int m) {
    double a = params.get("a"), b = params.get("b"), c = params.get("c");
    Cplx E = detail::s9_energy_of_mu(a, b, c, Cplx(static_cast<double>(m)));
    SystemInstance sys = build(SystemId::S9, params, E);
    return to_matrix(sys.generators.at("L1"), BasisSpec::even_monomial(m));
}

} // namespace qalg
