// srot: subspace rotation bounds for off-diagonally perturbed block operators.
//
// Exit codes: 0 success / all margins pass, 1 a bound violation or failed
// check, 2 invalid input or configuration.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "srot/bounds.hpp"
#include "srot/errors.hpp"
#include "srot/harness.hpp"
#include "srot/report.hpp"
#include "srot/riccati.hpp"
#include "srot/sharpness.hpp"
#include "srot/spectral.hpp"

namespace {

using srot::report::format_double;
using srot::report::JsonObject;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kInvalid = 2;

// Agreement demanded between measured distances and closed forms.
constexpr double kClosedFormTolerance = 1e-6;

std::string opt(std::optional<double> x) { return x ? format_double(*x) : "undefined"; }

void print_bound_text(const srot::bounds::BoundEvaluation& e) {
    std::cout << "region            " << to_string(e.point.region) << "\n"
              << "r_V               " << format_double(e.r_V) << "\n"
              << "kappa             " << opt(e.kappa) << "\n"
              << "M1                " << opt(e.M1) << "\n"
              << "M2                " << opt(e.M2) << "\n"
              << "M                 " << format_double(e.M) << "\n"
              << "projection_bound  " << format_double(e.projection_bound) << "\n"
              << "apriori_bound     " << opt(e.apriori_bound) << "\n";
}

int cmd_bound(double D, double d, double v, bool json) {
    const auto e = srot::bounds::m_total(D, d, v);
    if (json) {
        std::cout << srot::report::to_json(e) << "\n";
    } else {
        print_bound_text(e);
    }
    return kOk;
}

int cmd_trial(const srot::harness::GenConfig& cfg, bool json) {
    srot::harness::validate(cfg);
    const auto r = srot::harness::run_trial(cfg);
    if (json) {
        std::cout << srot::report::to_jsonl(r) << "\n";
    } else {
        const auto cols = srot::report::report_columns();
        std::istringstream cells(srot::report::to_csv(r));
        for (const auto& c : cols) {
            std::string cell;
            std::getline(cells, cell, ',');
            std::cout << c << std::string(c.size() < 24 ? 24 - c.size() : 1, ' ') << cell << "\n";
        }
        if (r.error) std::cout << "error: " << *r.error << "\n";
    }
    return r.ok() && !r.violates_bound() ? kOk : kViolation;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw srot::Error(srot::ErrorKind::ConfigInvalid, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int cmd_sweep(const std::string& config_path, const std::string& out_path, const std::string& format) {
    const auto cfg = srot::report::parse_sweep_config(read_file(config_path));
    srot::harness::TrialOptions options;
    options.record_timing = cfg.record_timing;
    const auto result = srot::harness::run_sweep(cfg.base, cfg.trials, cfg.ratio_grid, options, cfg.threads);

    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw srot::Error(srot::ErrorKind::ConfigInvalid, "cannot write " + out_path);
    if (format == "csv") {
        out << srot::report::csv_header() << "\n";
        for (const auto& r : result.reports) out << srot::report::to_csv(r) << "\n";
        out << srot::report::summary_to_csv(result.summary) << "\n";
    } else {
        for (const auto& r : result.reports) out << srot::report::to_jsonl(r) << "\n";
        out << srot::report::summary_to_jsonl(result.summary) << "\n";
    }

    const auto& s = result.summary;
    std::cerr << "trials " << s.count << ", failures " << s.failures << ", violations " << s.violations
              << ", min margin " << opt(s.min_margin) << ", max distance/bound " << opt(s.max_distance_bound_ratio)
              << "\n";
    return s.failures == 0 && s.violations == 0 ? kOk : kViolation;
}

struct ExampleArgs {
    std::string family;
    double gamma = 0.0;
    double a = 0.0;
    std::optional<double> b;
    std::optional<double> v;
    bool json = false;
};

int cmd_example(const ExampleArgs& args) {
    namespace ex = srot::examples;
    const double D = 2.0 * args.gamma;
    const double d = args.gamma - args.a;
    auto need = [](const std::optional<double>& x, const char* flag) {
        if (!x) throw srot::Error(srot::ErrorKind::ConfigInvalid, std::string("this family needs ") + flag);
        return *x;
    };

    JsonObject obj;
    obj.add("family", std::string_view(args.family)).add("gamma", args.gamma).add("a", args.a);
    double measured = 0.0;
    double closed_form = 0.0;
    double norm = 0.0;

    if (args.family == "almosel1") {
        norm = need(args.v, "--v");
        const auto m = srot::harness::measure(ex::almosel_build(args.gamma, args.a, 0.0, norm));
        measured = m.distance;
        closed_form = ex::almosel_case1_expected(d, norm);
        obj.add("b1", 0.0).add("b2", norm);
    } else if (args.family == "almosel2") {
        norm = need(args.b, "--b");
        const auto p = ex::almosel_case2_params(args.gamma, args.a, norm);
        const auto m = srot::harness::measure(ex::almosel_build(args.gamma, args.a, p.b1, p.b2));
        measured = m.distance;
        closed_form = srot::bounds::sin_arctan(srot::bounds::m2(D, d, norm));
        obj.add("z0", p.z0).add("t", p.t).add("b1", p.b1).add("b2", p.b2);
        if (m.omega0.size() == 1) obj.add("omega0", m.omega0.front());
    } else if (args.family == "ms55") {
        norm = need(args.b, "--b");
        const auto p = ex::ms55_case_params(args.gamma, args.a, norm);
        const auto k = ex::ms55_kappas(args.gamma, args.a, p.b1, p.b2);
        const auto m = srot::harness::measure(ex::ms55_build(args.gamma, args.a, p.b1, p.b2));
        measured = m.distance;
        closed_form = srot::bounds::sin_arctan(k.kappa1 + k.kappa2);
        obj.add("beta", p.beta).add("b1", p.b1).add("b2", p.b2).add("kappa1", k.kappa1).add("kappa2", k.kappa2);
    } else {
        throw srot::Error(srot::ErrorKind::ConfigInvalid, "unknown family " + args.family);
    }

    const auto e = srot::bounds::m_total(D, d, norm);
    const bool matches = std::abs(measured - closed_form) <= kClosedFormTolerance * std::max(closed_form, 1e-300);
    const bool within = measured <= e.projection_bound + srot::harness::kMarginTolerance;
    obj.add("D", D)
        .add("d", d)
        .add("v", norm)
        .add("region", to_string(e.point.region))
        .add("measured_distance", measured)
        .add("closed_form", closed_form)
        .add("bound", e.projection_bound)
        .add("closed_form_matches", matches)
        .add("within_bound", within);

    if (args.json) {
        std::cout << obj.str() << "\n";
    } else {
        std::cout << "family             " << args.family << "\n"
                  << "D, d, v            " << format_double(D) << ", " << format_double(d) << ", "
                  << format_double(norm) << "\n"
                  << "region             " << to_string(e.point.region) << "\n"
                  << "measured distance  " << format_double(measured) << "\n"
                  << "closed form        " << format_double(closed_form) << "\n"
                  << "bound              " << format_double(e.projection_bound) << "\n";
    }
    return matches && within ? kOk : kViolation;
}

int cmd_check_identities(const std::string& path, bool json) {
    const auto block = srot::report::parse_instance(read_file(path));
    const auto disp = srot::spectral::find_disposition(block);
    const auto partition = srot::spectral::perturbed_partition(block, disp);
    const auto x = srot::riccati::extract_angular_operator(partition, block);
    const auto res = srot::riccati::verify_lemma_identities(x, block);
    constexpr double kIdentityTolerance = 1e-8;

    if (json) {
        std::cout << JsonObject()
                         .add("x_norm", x.norm)
                         .add("riccati_residual", x.riccati_residual)
                         .add_raw("identities", srot::report::to_json(res))
                         .str()
                  << "\n";
    } else {
        std::cout << "||X||             " << format_double(x.norm) << "\n"
                  << "Riccati residual  " << format_double(x.riccati_residual) << "\n";
        for (const auto& p : res.per_pair) {
            std::cout << (p.rotated ? "  rotated " : "  lambda  ") << format_double(p.lambda) << "  id1 "
                      << format_double(p.id1_residual) << "  id2 " << format_double(p.id2_residual) << "  id3 "
                      << format_double(p.id3_residual) << "\n";
        }
        std::cout << "max residual      " << format_double(res.max_residual) << "\n";
    }
    return res.max_residual <= kIdentityTolerance ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Subspace rotation bounds for off-diagonal perturbations of block operators"};
    app.require_subcommand(1);

    double D = 0.0, d = 0.0, v = 0.0;
    bool json = false;
    auto* bound = app.add_subcommand("bound", "Evaluate the estimating functions at (D, d, v)");
    bound->add_option("--D", D, "Gap length |Delta|")->required();
    bound->add_option("--d", d, "Distance between the unperturbed spectral parts")->required();
    bound->add_option("--v", v, "Perturbation norm ||V||")->required();
    bound->add_flag("--json", json);

    srot::harness::GenConfig gen;
    auto* trial = app.add_subcommand("trial", "Run one random verification trial");
    trial->add_option("--seed", gen.seed)->required();
    trial->add_option("--dim0", gen.dim0)->required();
    trial->add_option("--dim1", gen.dim1)->required();
    trial->add_option("--D", gen.D)->required();
    trial->add_option("--d", gen.d)->required();
    trial->add_option("--ratio", gen.ratio, "Target ||B|| / d")->required();
    trial->add_option("--span", gen.span, "Spread of spec(A1) outside the gap");
    trial->add_flag("--conjugate", gen.conjugate, "Apply a random block-orthogonal change of basis");
    trial->add_flag("--json", json);

    std::string config_path, out_path, format = "jsonl";
    auto* sweep = app.add_subcommand("sweep", "Run a seeded batch of trials from a config file");
    sweep->add_option("--config", config_path)->required()->check(CLI::ExistingFile);
    sweep->add_option("--out", out_path)->required();
    sweep->add_option("--format", format)->check(CLI::IsMember({"jsonl", "csv"}));

    ExampleArgs ex;
    auto* example = app.add_subcommand("example", "Measure a sharpness family against its closed form");
    example->add_option("family", ex.family)->required()->check(CLI::IsMember({"almosel1", "almosel2", "ms55"}));
    example->add_option("--gamma", ex.gamma)->required();
    example->add_option("--a", ex.a)->required();
    example->add_option("--b", ex.b, "||B|| for almosel2 and ms55");
    example->add_option("--v", ex.v, "||B|| for almosel1");
    example->add_flag("--json", ex.json);

    std::string instance_path;
    auto* check = app.add_subcommand("check-identities", "Audit the |X| eigenvector identities on an instance");
    check->add_option("--instance", instance_path)->required()->check(CLI::ExistingFile);
    check->add_flag("--json", json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kInvalid;
    }

    try {
        if (*bound) return cmd_bound(D, d, v, json);
        if (*trial) return cmd_trial(gen, json);
        if (*sweep) return cmd_sweep(config_path, out_path, format);
        if (*example) return cmd_example(ex);
        if (*check) return cmd_check_identities(instance_path, json);
    } catch (const srot::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind()) {
            case srot::ErrorKind::DomainError:
            case srot::ErrorKind::ConfigInvalid:
            case srot::ErrorKind::ParseError:
            case srot::ErrorKind::DimensionMismatch:
            case srot::ErrorKind::DispositionViolated:
                return kInvalid;
            default:
                return kViolation;
        }
    }
    return kInvalid;
}
