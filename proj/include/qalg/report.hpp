#pragma once

#include <cstdio>
#include <json.hpp>

#include "qalg/run.hpp"

namespace qalg {

// All floats are serialized as strings with 17 significant digits so reports
// are byte-identical across runs and round-trip exactly.
inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string fmt17(Cplx z) {
    if (z.imag() == 0.0) return fmt17(z.real());
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
    return buf;
}

using Json = nlohmann::ordered_json;

inline Json report_to_json(const VerificationReport& rep, unsigned seed) {
    Json j;
    j["system"] = system_name(rep.id);
    Json pj;
    for (auto& [k, v] : rep.params.vals) pj[k] = fmt17(v);
    j["params"] = pj;
    j["branch"] = rep.params.branch;
    j["energy"] = fmt17(rep.energy);
    j["dim"] = rep.dim;
    j["mode"] = rep.mode;
    Json rels = Json::array();
    for (auto& r : rep.relations) {
        Json e;
        e["name"] = r.name + (r.mode == "matrix" ? " [matrix]" : "");
        e["residual"] = fmt17(r.residual);
        e["status"] = status_name(r.status);
        e["note"] = r.note + (r.printed_variant ? (r.note.empty() ? "" : "; ") +
                                                      std::string("flagged printed variant")
                                                : "");
        rels.push_back(e);
    }
    j["relations"] = rels;
    Json clo;
    if (rep.closure) {
        clo["quantity"] = rep.closure->quantity;
        clo["value_at_rule"] = fmt17(rep.closure->value_at_rule);
        clo["spill_at_E"] = fmt17(rep.closure->spill_at_rule);
        clo["spill_detuned"] = fmt17(rep.closure->spill_detuned);
        clo["status"] = status_name(rep.closure->status);
        if (!rep.closure->note.empty()) clo["note"] = rep.closure->note;
    }
    j["closure"] = clo;
    Json spec = Json::array();
    for (auto& s : rep.spectra) {
        Json e;
        e["op"] = s.op;
        Json comp = Json::array(), closed = Json::array();
        for (auto& v : s.computed) comp.push_back(fmt17(v));
        for (auto& v : s.closed_form) closed.push_back(fmt17(v));
        e["computed"] = comp;
        e["closed_form"] = closed;
        e["max_err"] = fmt17(s.max_err);
        e["status"] = status_name(s.status);
        if (!s.note.empty()) e["note"] = s.note;
        spec.push_back(e);
    }
    j["spectra"] = spec;
    Json eig = Json::array();
    for (auto& e : rep.eigenvectors) {
        Json x;
        x["op"] = e.op;
        x["index"] = e.index;
        const char* tags[] = {"none", "jacobi", "laguerre", "racah", "dual-hahn", "explicit-product"};
        x["oracle"] = tags[static_cast<int>(e.tag)];
        x["distance"] = fmt17(e.distance);
        x["status"] = status_name(e.status);
        eig.push_back(x);
    }
    j["eigenvectors"] = eig;
    Json lad = Json::array();
    for (auto& l : rep.ladders) {
        Json x;
        x["name"] = l.name;
        x["residual"] = fmt17(l.residual);
        x["status"] = status_name(l.status);
        if (!l.note.empty()) x["note"] = l.note;
        lad.push_back(x);
    }
    j["ladders"] = lad;
    Json led = Json::array();
    for (auto& e : rep.ledger) {
        Json x;
        x["topic"] = e.topic;
        x["detail"] = e.detail;
        led.push_back(x);
    }
    j["ledger"] = led;
    Json notes = Json::array();
    for (auto& n : rep.notes) notes.push_back(n);
    j["notes"] = notes;
    j["ok"] = rep.ok();
    j["seed"] = seed;
    j["version"] = "1.0.0";
    return j;
}

} // namespace qalg
