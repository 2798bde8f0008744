#ifndef MZV_TOOLS_REPORT_IO_HPP
#define MZV_TOOLS_REPORT_IO_HPP

// Report serialization for the CLI: JSON and CSV renderings of suite reports
// and single verification records. Numeric values travel as decimal strings
// (format_number output), never as binary floats.

#include <cstdio>
#include <string>

#include <json.hpp>

#include "mzv/suite.hpp"

namespace mzv_cli {

inline std::string double_str(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline nlohmann::json record_json(const mzv::CaseRecord& r, bool with_time) {
    nlohmann::json j;
    j["id"] = mzv::identity_name(r.id);
    j["case"] = {
        {"k", r.k},
        {"params", {{"alpha", r.alpha}, {"beta", r.beta}, {"gamma", r.gamma}}},
        {"aux", r.aux},
    };
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["abs_diff"] = double_str(r.abs_diff);
    j["err_bound"] = double_str(r.err_bound);
    j["pass"] = r.pass;
    j["terms"] = r.terms;
    if (with_time) j["time_ms"] = r.time_ms;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

inline nlohmann::json report_json(const mzv::Report& rep, bool with_time = true) {
    nlohmann::json j;
    j["overall_pass"] = rep.overall_pass;
    j["passed"] = rep.passed;
    j["failed"] = rep.failed;
    j["records"] = nlohmann::json::array();
    for (const auto& r : rep.records) j["records"].push_back(record_json(r, with_time));
    return j;
}

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

inline std::string record_csv_row(const mzv::CaseRecord& r) {
    std::string row;
    auto push = [&](const std::string& f) {
        if (!row.empty()) row += ',';
        row += csv_escape(f);
    };
    push(mzv::identity_name(r.id));
    push(r.k);
    push(r.alpha);
    push(r.beta);
    push(r.gamma);
    push(r.aux);
    push(r.lhs);
    push(r.rhs);
    push(double_str(r.abs_diff));
    push(double_str(r.err_bound));
    push(r.pass ? "true" : "false");
    push(std::to_string(r.terms));
    push(double_str(r.time_ms));
    push(r.note);
    return row;
}

inline std::string report_csv(const mzv::Report& rep) {
    std::string out =
        "id,k,alpha,beta,gamma,aux,lhs,rhs,abs_diff,err_bound,pass,terms,time_ms,note\n";
    for (const auto& r : rep.records) out += record_csv_row(r) + "\n";
    return out;
}

inline std::string record_text(const mzv::CaseRecord& r) {
    std::string out = (r.pass ? "[pass] " : "[FAIL] ");
    out += mzv::identity_name(r.id);
    if (!r.k.empty()) out += " k=(" + r.k + ")";
    if (!r.aux.empty()) out += " " + r.aux;
    if (r.exact) {
        out += " exact checks=" + std::to_string(r.terms);
    } else {
        out += " |lhs-rhs|=" + double_str(r.abs_diff) + " err=" + double_str(r.err_bound);
    }
    char t[32];
    std::snprintf(t, sizeof(t), " (%.1f ms)", r.time_ms);
    out += t;
    if (!r.note.empty()) out += " -- " + r.note;
    return out;
}

}  // namespace mzv_cli

#endif
