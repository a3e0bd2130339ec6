#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

// Verification report rows and deterministic CSV/JSON emission.
// CSV columns are fixed: identity_id, param_json, lhs, rhs, residual,
// terms_used, converged, pass.

namespace qortho {

struct VerifyRow {
    std::string identity_id;
    std::map<std::string, double> params;  // ordered => deterministic JSON
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    int terms_used = 0;
    bool converged = true;
    bool pass = false;

    std::string param_json() const {
        nlohmann::ordered_json j;
        for (const auto& [k, v] : params) j[k] = fmt_num_raw(v);
        // values were formatted as strings to keep byte-stable output
        std::string s = j.dump();
        return s;
    }

    static std::string fmt_num_raw(double v) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.12g", v);
        return buf;
    }
};

inline std::string format_number(double v) { return VerifyRow::fmt_num_raw(v); }

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

// Rows are sorted by (identity_id, param_json) before writing.
inline void sort_rows(std::vector<VerifyRow>& rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const VerifyRow& a, const VerifyRow& b) {
        if (a.identity_id != b.identity_id) return a.identity_id < b.identity_id;
        return a.param_json() < b.param_json();
    });
}

inline std::string rows_to_csv(std::vector<VerifyRow> rows) {
    sort_rows(rows);
    std::ostringstream os;
    os << "identity_id,param_json,lhs,rhs,residual,terms_used,converged,pass\n";
    for (const auto& r : rows) {
        os << csv_escape(r.identity_id) << ',' << csv_escape(r.param_json()) << ','
           << format_number(r.lhs) << ',' << format_number(r.rhs) << ','
           << format_number(r.residual) << ',' << r.terms_used << ','
           << (r.converged ? "true" : "false") << ',' << (r.pass ? "true" : "false") << '\n';
    }
    return os.str();
}

inline std::string rows_to_json(std::vector<VerifyRow> rows) {
    sort_rows(rows);
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json j;
        j["identity_id"] = r.identity_id;
        nlohmann::ordered_json pj;
        for (const auto& [k, v] : r.params) pj[k] = format_number(v);
        j["params"] = pj;
        j["lhs"] = format_number(r.lhs);
        j["rhs"] = format_number(r.rhs);
        j["residual"] = format_number(r.residual);
        j["terms_used"] = r.terms_used;
        j["converged"] = r.converged;
        j["pass"] = r.pass;
        arr.push_back(j);
    }
    return arr.dump(2) + "\n";
}

inline void write_report(const std::vector<VerifyRow>& rows, const std::string& path,
                         const std::string& format) {
    std::string body;
    if (format == "csv") body = rows_to_csv(rows);
    else if (format == "json") body = rows_to_json(rows);
    else throw std::invalid_argument("write_report: format must be csv or json");
    if (path.empty() || path == "-") {
        std::fputs(body.c_str(), stdout);
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("write_report: cannot open " + path);
    f << body;
}

}  // namespace qortho
