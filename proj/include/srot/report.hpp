#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "srot/bounds.hpp"
#include "srot/core.hpp"
#include "srot/harness.hpp"
#include "srot/riccati.hpp"

// File formats and text output: instance JSON, sweep config, report
// JSONL/CSV. All floating-point output uses 17 significant digits.
namespace srot::report {

/// "%.17g"; non-finite values render as "null" (JSON) or "" (CSV) by the
/// callers below.
std::string format_double(double x);

/// Minimal insertion-ordered JSON object writer.
class JsonObject {
public:
    JsonObject& add(std::string_view key, double value);
    JsonObject& add(std::string_view key, std::optional<double> value);
    JsonObject& add(std::string_view key, std::uint64_t value);
    JsonObject& add(std::string_view key, int value);
    JsonObject& add(std::string_view key, bool value);
    JsonObject& add(std::string_view key, std::string_view value);
    JsonObject& add(std::string_view key, const char* value) { return add(key, std::string_view(value)); }
    JsonObject& add(std::string_view key, const std::optional<std::string>& value);
    JsonObject& add_raw(std::string_view key, std::string_view json);

    std::string str() const { return "{" + body_ + "}"; }

private:
    void key(std::string_view k);
    std::string body_;
};

/// Quoted JSON string literal.
std::string json_escape(std::string_view s);

/// {"dim0", "dim1", "A0", "A1", "B"}; matrices as arrays of row arrays.
/// Throws ParseError on malformed input or non-finite entries, and
/// DimensionMismatch when shapes disagree with dim0/dim1.
BlockOperator parse_instance(std::string_view json_text);
std::string instance_to_json(const BlockOperator& block);

struct SweepConfig {
    harness::GenConfig base;
    std::size_t trials = 0;
    std::vector<double> ratio_grid;
    bool record_timing = false;
    unsigned threads = 1;
};

/// `key = value` lines; '#' starts a comment. Keys: dim0, dim1, D, d, span,
/// conjugate, seed, trials, ratio_grid (comma separated), record_timing,
/// threads. Throws ConfigInvalid.
SweepConfig parse_sweep_config(std::string_view text);

/// Field order shared by the JSONL and CSV report formats.
const std::vector<std::string>& report_columns();

std::string to_jsonl(const harness::TrialReport& r);
std::string summary_to_jsonl(const harness::SweepSummary& s);
std::string csv_header();
std::string to_csv(const harness::TrialReport& r);
std::string summary_to_csv(const harness::SweepSummary& s);

std::string to_json(const bounds::BoundEvaluation& e);
std::string to_json(const riccati::IdentityResiduals& r);

}  // namespace srot::report
