#include "srot/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "srot/errors.hpp"

namespace srot::report {

namespace {

std::string json_number(std::optional<double> x) {
    if (!x || !std::isfinite(*x)) return "null";
    return format_double(*x);
}

std::string csv_number(std::optional<double> x) {
    if (!x || !std::isfinite(*x)) return "";
    return format_double(*x);
}

std::string csv_quote(std::string_view s) {
    if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

Matrix parse_matrix(const nlohmann::json& j, std::size_t rows, std::size_t cols, const char* name) {
    if (!j.is_array() || j.size() != rows) {
        throw Error(ErrorKind::DimensionMismatch, std::string(name) + " has the wrong number of rows");
    }
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const auto& row = j[i];
        if (!row.is_array() || row.size() != cols) {
            throw Error(ErrorKind::DimensionMismatch,
                        std::string(name) + " row " + std::to_string(i) + " has the wrong length");
        }
        for (std::size_t k = 0; k < cols; ++k) {
            if (!row[k].is_number()) {
                throw Error(ErrorKind::ParseError, std::string(name) + " has a non-numeric entry");
            }
            const double x = row[k].get<double>();
            if (!std::isfinite(x)) throw Error(ErrorKind::ParseError, std::string(name) + " has a non-finite entry");
            m(i, k) = x;
        }
    }
    return m;
}

std::string matrix_json(const Matrix& m) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        s += i ? ",[" : "[";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) s += ",";
            s += format_double(m(i, j));
        }
        s += "]";
    }
    return s + "]";
}

}  // namespace

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string json_escape(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out + "\"";
}

void JsonObject::key(std::string_view k) {
    if (!body_.empty()) body_ += ",";
    body_ += json_escape(k) + ":";
}

JsonObject& JsonObject::add(std::string_view k, double value) { return add(k, std::optional<double>(value)); }

JsonObject& JsonObject::add(std::string_view k, std::optional<double> value) {
    key(k);
    body_ += json_number(value);
    return *this;
}

JsonObject& JsonObject::add(std::string_view k, std::uint64_t value) {
    key(k);
    body_ += std::to_string(value);
    return *this;
}

JsonObject& JsonObject::add(std::string_view k, int value) {
    key(k);
    body_ += std::to_string(value);
    return *this;
}

JsonObject& JsonObject::add(std::string_view k, bool value) {
    key(k);
    body_ += value ? "true" : "false";
    return *this;
}

JsonObject& JsonObject::add(std::string_view k, std::string_view value) {
    key(k);
    body_ += json_escape(value);
    return *this;
}

JsonObject& JsonObject::add(std::string_view k, const std::optional<std::string>& value) {
    if (!value) return add_raw(k, "null");
    return add(k, std::string_view(*value));
}

JsonObject& JsonObject::add_raw(std::string_view k, std::string_view json) {
    key(k);
    body_ += json;
    return *this;
}

BlockOperator parse_instance(std::string_view json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
    if (!j.is_object()) throw Error(ErrorKind::ParseError, "instance must be a JSON object");
    for (const char* k : {"dim0", "dim1", "A0", "A1", "B"}) {
        if (!j.contains(k)) throw Error(ErrorKind::ParseError, std::string("missing key \"") + k + "\"");
    }
    if (!j["dim0"].is_number_unsigned() || !j["dim1"].is_number_unsigned() || j["dim0"].get<std::size_t>() == 0 ||
        j["dim1"].get<std::size_t>() == 0) {
        throw Error(ErrorKind::ParseError, "dim0 and dim1 must be positive integers");
    }
    const auto dim0 = j["dim0"].get<std::size_t>();
    const auto dim1 = j["dim1"].get<std::size_t>();
    return make_block_operator(SymMatrix(parse_matrix(j["A0"], dim0, dim0, "A0")),
                               SymMatrix(parse_matrix(j["A1"], dim1, dim1, "A1")),
                               parse_matrix(j["B"], dim0, dim1, "B"));
}

std::string instance_to_json(const BlockOperator& block) {
    return JsonObject()
        .add("dim0", static_cast<std::uint64_t>(block.dim0()))
        .add("dim1", static_cast<std::uint64_t>(block.dim1()))
        .add_raw("A0", matrix_json(block.a0().matrix()))
        .add_raw("A1", matrix_json(block.a1().matrix()))
        .add_raw("B", matrix_json(block.b()))
        .str();
}

SweepConfig parse_sweep_config(std::string_view text) {
    SweepConfig cfg;
    auto fail = [](std::size_t line, const std::string& what) {
        throw Error(ErrorKind::ConfigInvalid, "line " + std::to_string(line) + ": " + what);
    };
    auto to_double = [&](std::size_t line, const std::string& s) {
        double x = 0.0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
        if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(x)) {
            fail(line, "expected a number, got '" + s + "'");
        }
        return x;
    };
    auto to_uint = [&](std::size_t line, const std::string& s) {
        std::uint64_t x = 0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
        if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
            fail(line, "expected a non-negative integer, got '" + s + "'");
        }
        return x;
    };
    auto to_bool = [&](std::size_t line, const std::string& s) {
        if (s == "true" || s == "1" || s == "yes") return true;
        if (s == "false" || s == "0" || s == "no") return false;
        fail(line, "expected a boolean, got '" + s + "'");
        return false;
    };

    bool have_grid = false;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(lineno, "expected key = value");
        const std::string k = trim(std::string_view(line).substr(0, eq));
        const std::string val = trim(std::string_view(line).substr(eq + 1));

        if (k == "dim0") cfg.base.dim0 = to_uint(lineno, val);
        else if (k == "dim1") cfg.base.dim1 = to_uint(lineno, val);
        else if (k == "D") cfg.base.D = to_double(lineno, val);
        else if (k == "d") cfg.base.d = to_double(lineno, val);
        else if (k == "span") cfg.base.span = to_double(lineno, val);
        else if (k == "ratio") cfg.base.ratio = to_double(lineno, val);
        else if (k == "conjugate") cfg.base.conjugate = to_bool(lineno, val);
        else if (k == "seed") cfg.base.seed = to_uint(lineno, val);
        else if (k == "trials") cfg.trials = to_uint(lineno, val);
        else if (k == "record_timing") cfg.record_timing = to_bool(lineno, val);
        else if (k == "threads") cfg.threads = static_cast<unsigned>(to_uint(lineno, val));
        else if (k == "ratio_grid") {
            have_grid = true;
            cfg.ratio_grid.clear();
            // Empty items (",," or a trailing comma) are errors, not skipped.
            std::size_t from = 0;
            while (true) {
                const auto comma = val.find(',', from);
                const auto item = std::string_view(val).substr(from, comma == std::string::npos ? comma : comma - from);
                cfg.ratio_grid.push_back(to_double(lineno, trim(item)));
                if (comma == std::string::npos) break;
                from = comma + 1;
            }
        } else {
            fail(lineno, "unknown key '" + k + "'");
        }
    }
    if (!have_grid) cfg.ratio_grid = {cfg.base.ratio};
    harness::validate(cfg.base);
    return cfg;
}

const std::vector<std::string>& report_columns() {
    static const std::vector<std::string> cols = {
        "seed",     "dims",   "D",       "d",      "v",
        "region",   "distance", "bound", "margin", "apriori",
        "x_norm",   "riccati_residual", "lemma_max_residual", "method", "elapsed_ms",
        "fixed_point_deviation", "error"};
    return cols;
}

std::string to_jsonl(const harness::TrialReport& r) {
    const std::string dims = "[" + std::to_string(r.dim0) + "," + std::to_string(r.dim1) + "]";
    return JsonObject()
        .add("seed", r.seed)
        .add_raw("dims", dims)
        .add("D", r.D)
        .add("d", r.d)
        .add("v", r.v)
        .add("region", to_string(r.region))
        .add("distance", r.distance)
        .add("bound", r.bound)
        .add("margin", r.margin)
        .add("apriori", r.apriori)
        .add("x_norm", r.x_norm)
        .add("riccati_residual", r.riccati_residual)
        .add("lemma_max_residual", r.lemma_max_residual)
        .add("method", r.method.empty() ? std::optional<std::string>() : std::optional<std::string>(r.method))
        .add("elapsed_ms", r.elapsed_ms)
        .add("fixed_point_deviation", r.fixed_point_deviation)
        .add("error", r.error)
        .str();
}

std::string summary_to_jsonl(const harness::SweepSummary& s) {
    return JsonObject()
        .add("record", "summary")
        .add("count", static_cast<std::uint64_t>(s.count))
        .add("failures", static_cast<std::uint64_t>(s.failures))
        .add("violations", static_cast<std::uint64_t>(s.violations))
        .add("min_margin", s.min_margin)
        .add("max_distance_bound_ratio", s.max_distance_bound_ratio)
        .str();
}

std::string csv_header() {
    std::string s;
    for (const auto& c : report_columns()) s += (s.empty() ? "" : ",") + c;
    return s;
}

std::string to_csv(const harness::TrialReport& r) {
    const std::vector<std::string> cells = {
        std::to_string(r.seed),
        std::to_string(r.dim0) + "x" + std::to_string(r.dim1),
        csv_number(r.D),
        csv_number(r.d),
        csv_number(r.v),
        std::string(to_string(r.region)),
        csv_number(r.distance),
        csv_number(r.bound),
        csv_number(r.margin),
        csv_number(r.apriori),
        csv_number(r.x_norm),
        csv_number(r.riccati_residual),
        csv_number(r.lemma_max_residual),
        r.method,
        csv_number(r.elapsed_ms),
        csv_number(r.fixed_point_deviation),
        csv_quote(r.error.value_or("")),
    };
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + cells[i];
    return s;
}

std::string summary_to_csv(const harness::SweepSummary& s) {
    return "summary,count=" + std::to_string(s.count) + ",failures=" + std::to_string(s.failures) +
           ",violations=" + std::to_string(s.violations) + ",min_margin=" + csv_number(s.min_margin) +
           ",max_distance_bound_ratio=" + csv_number(s.max_distance_bound_ratio);
}

std::string to_json(const bounds::BoundEvaluation& e) {
    return JsonObject()
        .add("D", e.point.D)
        .add("d", e.point.d)
        .add("v", e.point.v)
        .add("region", to_string(e.point.region))
        .add("r_V", e.r_V)
        .add("kappa", e.kappa)
        .add("M1", e.M1)
        .add("M2", e.M2)
        .add("M", e.M)
        .add("projection_bound", e.projection_bound)
        .add("apriori_bound", e.apriori_bound)
        .str();
}

std::string to_json(const riccati::IdentityResiduals& r) {
    std::string pairs = "[";
    for (std::size_t i = 0; i < r.per_pair.size(); ++i) {
        const auto& p = r.per_pair[i];
        if (i) pairs += ",";
        pairs += JsonObject()
                     .add("lambda", p.lambda)
                     .add("id1_residual", p.id1_residual)
                     .add("id2_residual", p.id2_residual)
                     .add("id3_residual", p.id3_residual)
                     .add("rotated", p.rotated)
                     .str();
    }
    pairs += "]";
    return JsonObject().add_raw("per_pair", pairs).add("max_residual", r.max_residual).str();
}

}  // namespace srot::report
