#pragma once

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "boundq/exactla.hpp"
#include "boundq/pi1.hpp"

namespace boundq::cli {

using Json = nlohmann::json;  // object keys are kept sorted

inline constexpr const char* version = "boundq 0.1.0";

enum class ExitCode : int { ok = 0, check_failed = 1, input_error = 2, unknown = 3 };

struct Report {
    std::string command;
    std::string field;
    Json payload = Json::object();
    std::vector<std::string> unknowns;
    std::vector<std::string> failures;

    ExitCode exit_code() const
    {
        if (!failures.empty()) return ExitCode::check_failed;
        if (!unknowns.empty()) return ExitCode::unknown;
        return ExitCode::ok;
    }
    std::string state() const
    {
        switch (exit_code()) {
        case ExitCode::check_failed: return "check-failed";
        case ExitCode::unknown: return "partial";
        default: return "ok";
        }
    }
    Json to_json() const
    {
        Json j = payload;
        j["command"] = command;
        j["field"] = field;
        j["version"] = version;
        j["status"] = {{"state", state()}, {"unknowns", unknowns}, {"failures", failures}};
        return j;
    }
};

/// Rationals as "p/q" strings, GF(p) residues as integers.
inline Json scalar_json(const Scalar& s)
{
    if (s.field().is_prime_field()) return static_cast<long long>(s.residue());
    return s.to_string();
}

inline Json tri_json(Tri t) { return to_string(t); }

namespace detail {

inline std::string text_value(const Json& v)
{
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

inline void text_lines(std::ostringstream& os, const Json& j, const std::string& indent)
{
    for (auto it = j.begin(); it != j.end(); ++it) {
        const Json& v = it.value();
        if (v.is_object() && !v.empty()) {
            os << indent << it.key() << ":\n";
            text_lines(os, v, indent + "  ");
        } else if (v.is_array() && !v.empty() && (v.front().is_object() || v.front().is_array())) {
            os << indent << it.key() << ":\n";
            for (const auto& x : v) os << indent << "  - " << x.dump() << "\n";
        } else if (v.is_array() && !v.empty()) {
            os << indent << it.key() << ":\n";
            for (const auto& x : v) os << indent << "  - " << text_value(x) << "\n";
        } else {
            os << indent << it.key() << ": " << text_value(v) << "\n";
        }
    }
}

}  // namespace detail

inline std::string emit(const Report& r, bool json)
{
    Json j = r.to_json();
    if (json) return j.dump(2) + "\n";
    std::ostringstream os;
    detail::text_lines(os, j, "");
    return os.str();
}

}  // namespace boundq::cli
