#pragma once

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "verify.hpp"

namespace hfrank {

enum class Format { json, csv, text };

inline Format parse_format(const std::string& s) {
    if (s == "json") return Format::json;
    if (s == "csv") return Format::csv;
    if (s == "text") return Format::text;
    throw ParseError("unknown format '" + s + "'");
}

inline std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

// Stable key order, byte-identical across runs for the same inputs.
inline std::string emit_report(const std::vector<Verdict>& verdicts, Format fmt) {
    switch (fmt) {
        case Format::json: {
            nlohmann::ordered_json out = nlohmann::ordered_json::array();
            for (const auto& v : verdicts) {
                nlohmann::ordered_json jv;
                jv["model"] = v.model;
                jv["overall"] = v.overall();
                jv["checks"] = nlohmann::ordered_json::array();
                for (const auto& c : v.checks)
                    jv["checks"].push_back({{"id", c.id},
                                            {"pass", c.pass},
                                            {"lhs", c.lhs},
                                            {"rhs", c.rhs},
                                            {"context", c.context}});
                out.push_back(jv);
            }
            return out.dump(2) + "\n";
        }
        case Format::csv: {
            std::string out = "model,check,pass,lhs,rhs,context\n";
            for (const auto& v : verdicts)
                for (const auto& c : v.checks)
                    out += csv_quote(v.model) + "," + csv_quote(c.id) + "," +
                           (c.pass ? "pass" : "FAIL") + "," + csv_quote(c.lhs) + "," +
                           csv_quote(c.rhs) + "," + csv_quote(c.context) + "\n";
            return out;
        }
        case Format::text: {
            std::ostringstream out;
            for (const auto& v : verdicts) {
                out << "== " << v.model << ": " << (v.overall() ? "pass" : "FAIL") << "\n";
                for (const auto& c : v.checks) {
                    out << "   " << (c.pass ? "[pass] " : "[FAIL] ") << c.id;
                    if (!c.lhs.empty() || !c.rhs.empty()) out << "  " << c.lhs << " vs " << c.rhs;
                    if (!c.context.empty()) out << "  (" << c.context << ")";
                    out << "\n";
                }
            }
            return out.str();
        }
    }
    return {};
}

}  // namespace hfrank
