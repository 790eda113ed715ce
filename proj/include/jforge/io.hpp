#pragma once

#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include "jforge/correspond.hpp"

namespace jforge::io {

using nlohmann::json;

inline constexpr const char* kFormatVersion = "jforge/1";

// Parsed structure file: one of the five payload kinds.
using Structure = std::variant<jacobi::JacobiStructure, algebroid::AlgebroidData,
                               correspond::TripleData, poly::Multivector, jacobi::FirstOrderOp>;

// --- canonical serialization (terms sorted by index tuple, then exponent
// vector; object keys alphabetical) ---

json chart_to_json(const poly::Chart& c);
poly::ChartPtr chart_from_json(const json& j);

json polynomial_to_json(const poly::Polynomial& p);
poly::Polynomial polynomial_from_json(const json& j, const poly::ChartPtr& chart);

json multivector_payload(const poly::Multivector& m);
poly::Multivector multivector_from_payload(const json& j, const poly::ChartPtr& chart);

json structure_to_json(const jacobi::JacobiStructure& s);
json structure_to_json(const algebroid::AlgebroidData& a);
json structure_to_json(const correspond::TripleData& t);
json structure_to_json(const poly::Multivector& m);
json structure_to_json(const jacobi::FirstOrderOp& op);

Structure parse_structure(const json& j);
Structure load_structure(const std::string& path);
void save_json(const json& j, const std::string& path);

// canonical text dump (sorted keys, no whitespace variation)
std::string canonical_dump(const json& j);

// FNV-1a 64-bit digest of the canonical dump
std::string digest(const json& j);

struct Certificate {
    std::string operation;
    std::string input_digest;
    std::string verdict;  // pass | fail | not-applicable
    json detail;          // residuals / witnesses / report, exact payloads
    double wall_time_ms = 0.0;
    std::string mode = "exact";
    std::optional<double> tolerance;
};

json certificate_to_json(const Certificate& c);

// --- small helpers shared with the CLI ---

std::vector<Scalar> parse_point_exact(const std::string& csv);
std::vector<double> parse_point_float(const std::string& csv);
Scalar scalar_from_string(const std::string& s);  // "3", "-1/2"

}  // namespace jforge::io
