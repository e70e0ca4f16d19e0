#pragma once

// Run configuration, read from JSON:
//
//   {"dimension": 3, "frequency": 0.0,
//    "profile": {"kind": "expression", "text": "(1+0.2*x)^2"},
//    "m_max": 40, "node_count": 64}
//
// "profile" may instead be {"kind": "chebyshev", "coefficients": [...]}.

#include <fstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "steklov/dn_map.hpp"
#include "steklov/errors.hpp"
#include "steklov/expression.hpp"
#include "steklov/warping.hpp"

namespace steklov {

struct ChebyshevSpec {
    std::vector<double> coefficients;
};

struct ExpressionSpec {
    std::string text;
};

using ProfileSpec = std::variant<ChebyshevSpec, ExpressionSpec>;

struct RunConfig {
    int dimension = 2;
    double frequency = 0.0;
    ProfileSpec profile_spec = ChebyshevSpec{{1.0}};
    int m_max = kDefaultMMax;
    int node_count = static_cast<int>(kDefaultNodeCount);
    std::string output_path;
};

namespace detail {

template <class T>
T required(const nlohmann::json& j, const char* field, const char* path) {
    if (!j.contains(field)) throw ConfigError(path, "missing");
    try {
        return j.at(field).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path, e.what());
    }
}

inline bool is_integer(const nlohmann::json& v) {
    return v.is_number_integer() || v.is_number_unsigned();
}

} // namespace detail

inline RunConfig parse_config(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("$", "expected a JSON object");
    RunConfig c;

    if (!j.contains("dimension") || !detail::is_integer(j["dimension"])) {
        throw ConfigError("dimension", "expected an integer");
    }
    c.dimension = j["dimension"].get<int>();
    if (c.dimension < 2) throw ConfigError("dimension", "must be >= 2");

    if (!j.contains("frequency") || !j["frequency"].is_number()) {
        throw ConfigError("frequency", "expected a number");
    }
    c.frequency = j["frequency"].get<double>();

    if (!j.contains("profile") || !j["profile"].is_object()) {
        throw ConfigError("profile", "expected an object");
    }
    const auto& p = j["profile"];
    const auto kind = detail::required<std::string>(p, "kind", "profile.kind");
    if (kind == "chebyshev") {
        if (!p.contains("coefficients") || !p["coefficients"].is_array() || p["coefficients"].empty()) {
            throw ConfigError("profile.coefficients", "expected a non-empty array of numbers");
        }
        ChebyshevSpec spec;
        for (const auto& v : p["coefficients"]) {
            if (!v.is_number()) throw ConfigError("profile.coefficients", "expected numbers");
            spec.coefficients.push_back(v.get<double>());
        }
        c.profile_spec = std::move(spec);
    } else if (kind == "expression") {
        if (!p.contains("text") || !p["text"].is_string()) {
            throw ConfigError("profile.text", "expected a string");
        }
        c.profile_spec = ExpressionSpec{p["text"].get<std::string>()};
    } else {
        throw ConfigError("profile.kind", "expected \"chebyshev\" or \"expression\"");
    }

    if (j.contains("m_max")) {
        if (!detail::is_integer(j["m_max"])) throw ConfigError("m_max", "expected an integer");
        c.m_max = j["m_max"].get<int>();
        if (c.m_max < 0) throw ConfigError("m_max", "must be >= 0");
    }
    if (j.contains("node_count")) {
        if (!detail::is_integer(j["node_count"])) throw ConfigError("node_count", "expected an integer");
        c.node_count = j["node_count"].get<int>();
        if (c.node_count < 16) throw ConfigError("node_count", "must be >= 16");
    }
    if (j.contains("output_path")) {
        if (!j["output_path"].is_string()) throw ConfigError("output_path", "expected a string");
        c.output_path = j["output_path"].get<std::string>();
    }
    return c;
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("$", "cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("$", e.what());
    }
    return parse_config(j);
}

/// Chebyshev coefficients of the configured warping function.
inline std::vector<double> profile_coefficients(const RunConfig& c) {
    if (const auto* cheb = std::get_if<ChebyshevSpec>(&c.profile_spec)) return cheb->coefficients;
    return parse_expression(std::get<ExpressionSpec>(c.profile_spec).text,
                            static_cast<std::size_t>(c.node_count));
}

inline WarpingProfile make_profile(const RunConfig& c) {
    return make_profile(profile_coefficients(c), c.dimension, c.frequency);
}

} // namespace steklov
