#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <json.hpp>

#include "srot/errors.hpp"
#include "srot/harness.hpp"
#include "srot/report.hpp"
#include "srot/sharpness.hpp"

using namespace srot;
using namespace srot::report;

namespace {

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an srot::Error");
    return ErrorKind::ParseError;
}

const char* kInstance = R"({"dim0": 1, "dim1": 2, "A0": [[1]], "A1": [[-2, 0], [0, 2]], "B": [[0, 0.5]]})";

}  // namespace

TEST_CASE("format_double keeps 17 significant digits") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(1.0) == "1");
    CHECK(std::stod(format_double(M_PI)) == M_PI);
}

TEST_CASE("json_escape") {
    CHECK(json_escape("a\"b\\c\n") == R"("a\"b\\c\n")");
    CHECK(json_escape(std::string(1, '\x01')) == R"("\u0001")");
}

TEST_CASE("parse_instance round trip") {
    const auto block = parse_instance(kInstance);
    CHECK(block.dim0() == 1);
    CHECK(block.dim1() == 2);
    CHECK(block.b()(0, 1) == 0.5);
    const auto again = parse_instance(instance_to_json(block));
    CHECK((again.perturbed().matrix() - block.perturbed().matrix()).max_abs() == 0.0);

    const auto ms = examples::ms55_build(2, 1, 0.1 / 3, std::sqrt(0.02));
    const auto ms2 = parse_instance(instance_to_json(ms));
    CHECK((ms2.b() - ms.b()).max_abs() == 0.0);
}

TEST_CASE("parse_instance rejects malformed input") {
    CHECK(kind_of([] { parse_instance("{"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { parse_instance("[1, 2]"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { parse_instance(R"({"dim0": 1, "dim1": 2, "A0": [[1]], "A1": [[-2, 0], [0, 2]]})"); }) ==
          ErrorKind::ParseError);
    CHECK(kind_of([] {
              parse_instance(R"({"dim0": 1, "dim1": 2, "A0": [[1]], "A1": [[-2, 0], [0, 2]], "B": [[0, "x"]]})");
          }) == ErrorKind::ParseError);
    CHECK(kind_of([] {
              parse_instance(R"({"dim0": 1, "dim1": 2, "A0": [[1]], "A1": [[-2, 0], [0, 2]], "B": [[0, NaN]]})");
          }) == ErrorKind::ParseError);
    CHECK(kind_of([] {
              parse_instance(R"({"dim0": 1, "dim1": 2, "A0": [[1]], "A1": [[-2, 0], [0, 2]], "B": [[0, 1e999]]})");
          }) == ErrorKind::ParseError);
    CHECK(kind_of([] {
              parse_instance(R"({"dim0": 1, "dim1": 2, "A0": [[1]], "A1": [[-2, 0], [0, 2]], "B": [[0, 1, 2]]})");
          }) == ErrorKind::DimensionMismatch);
    CHECK(kind_of([] {
              parse_instance(R"({"dim0": 1, "dim1": 2, "A0": [[1]], "A1": [[-2, 1], [0, 2]], "B": [[0, 1]]})");
          }) == ErrorKind::DimensionMismatch);
    CHECK(kind_of([] {
              parse_instance(R"({"dim0": 0, "dim1": 2, "A0": [], "A1": [[-2, 0], [0, 2]], "B": []})");
          }) == ErrorKind::ParseError);
}

TEST_CASE("parse_sweep_config") {
    const auto cfg = parse_sweep_config(
        "# sweep\n"
        "dim0 = 3\n"
        "dim1 = 5   # trailing comment\n"
        "D = 4\n"
        "d = 0.5\n"
        "conjugate = true\n"
        "seed = 17\n"
        "trials = 20\n"
        "ratio_grid = 0.2, 0.5,1.0\n"
        "\n"
        "threads = 2\n");
    CHECK(cfg.base.dim0 == 3);
    CHECK(cfg.base.dim1 == 5);
    CHECK(cfg.base.d == 0.5);
    CHECK(cfg.base.conjugate);
    CHECK(cfg.base.seed == 17);
    CHECK(cfg.trials == 20);
    CHECK(cfg.ratio_grid == std::vector<double>{0.2, 0.5, 1.0});
    CHECK(cfg.threads == 2);
    CHECK_FALSE(cfg.record_timing);

    CHECK(kind_of([] { parse_sweep_config("bogus = 1\n"); }) == ErrorKind::ConfigInvalid);
    CHECK(kind_of([] { parse_sweep_config("dim0 = x\n"); }) == ErrorKind::ConfigInvalid);
    CHECK(kind_of([] { parse_sweep_config("dim0 3\n"); }) == ErrorKind::ConfigInvalid);
    CHECK(kind_of([] { parse_sweep_config("d = inf\n"); }) == ErrorKind::ConfigInvalid);
    CHECK(kind_of([] { parse_sweep_config("trials = 5\nratio_grid = 0.2,\n"); }) == ErrorKind::ConfigInvalid);
    CHECK(kind_of([] { parse_sweep_config("ratio_grid = 0.2,,0.5\n"); }) == ErrorKind::ConfigInvalid);
    CHECK(kind_of([] { parse_sweep_config("d = 3\n"); }) == ErrorKind::ConfigInvalid);
}

TEST_CASE("JSONL report carries every column in order") {
    const auto r = harness::run_trial(harness::GenConfig{}, {.record_timing = false});
    const std::string line = to_jsonl(r);
    CHECK(line.find('\n') == std::string::npos);
    const auto j = nlohmann::json::parse(line);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    auto sorted_cols = report_columns();
    std::sort(sorted_cols.begin(), sorted_cols.end());
    CHECK(keys == sorted_cols);  // nlohmann orders keys; content must match
    CHECK(line.rfind("{\"seed\":", 0) == 0);
    CHECK(j["dims"] == nlohmann::json::array({4, 6}));
    CHECK(j["distance"].get<double>() == r.distance);
    CHECK(j["bound"].get<double>() == r.bound);
    CHECK(j["error"].is_null());
    CHECK(j["region"] == to_string(r.region));
}

TEST_CASE("failed trials serialize NaN fields as null") {
    harness::GenConfig cfg;
    cfg.ratio = 3.0;
    const auto r = harness::run_trial(cfg);
    const auto j = nlohmann::json::parse(to_jsonl(r));
    CHECK(j["distance"].is_null());
    CHECK(j["error"].is_string());
}

TEST_CASE("CSV report matches the header") {
    const auto r = harness::run_trial(harness::GenConfig{}, {.record_timing = false});
    auto count = [](const std::string& s) { return std::count(s.begin(), s.end(), ','); };
    CHECK(count(csv_header()) == count(to_csv(r)));
    CHECK(csv_header().rfind("seed,dims,", 0) == 0);
    CHECK(to_csv(r).find(",4x6,") != std::string::npos);
}

TEST_CASE("summary records") {
    harness::SweepSummary s;
    s.count = 3;
    s.violations = 1;
    s.min_margin = -0.5;
    const auto j = nlohmann::json::parse(summary_to_jsonl(s));
    CHECK(j["record"] == "summary");
    CHECK(j["count"] == 3);
    CHECK(j["violations"] == 1);
    CHECK(j["min_margin"].get<double>() == -0.5);
    CHECK(j["max_distance_bound_ratio"].is_null());
    CHECK(summary_to_csv(s).rfind("summary,count=3", 0) == 0);
}

TEST_CASE("bound evaluation JSON") {
    const auto j = nlohmann::json::parse(to_json(bounds::m_total(4, 1, 0.5)));
    CHECK(j["region"] == "Omega1_0");
    CHECK(j["M"].get<double>() == bounds::m1(4, 1, 0.5));
    CHECK(j["M2"].is_null());
}
