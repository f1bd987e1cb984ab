#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "slassure/argument.hpp"
#include "slassure/engine.hpp"
#include "slassure/simgen.hpp"
#include "slassure/trace_io.hpp"

namespace fs = std::filesystem;
using namespace slassure;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFindings = 1;
constexpr int kExitFailure = 2;

std::optional<std::uint64_t> env_seed() {
    if (const char* env = std::getenv("SL_ASSURE_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw SchemaError("SL_ASSURE_SEED is not a valid integer");
        }
    }
    return std::nullopt;
}

struct SimulateOptions {
    std::string preset;
    std::string scenario_path;
    std::optional<std::uint64_t> seed;
    std::string out_path = "log.jsonl";
};

int cmd_simulate(const SimulateOptions& opt) {
    ScenarioSpec spec;
    if (!opt.preset.empty()) {
        const ScenarioSpec* preset = find_preset(opt.preset);
        if (!preset) {
            std::cerr << "unknown preset: " << opt.preset << "\n";
            return kExitFailure;
        }
        spec = *preset;
    } else {
        spec = read_scenario_file(opt.scenario_path);
    }
    if (opt.seed) {
        spec.seed = *opt.seed;
    } else if (auto fallback = env_seed()) {
        spec.seed = *fallback;
    }

    const auto log = generate_log(spec);
    std::ofstream out(opt.out_path);
    if (!out) throw SchemaError("cannot write " + opt.out_path);
    write_frame_log(out, log);
    std::cout << "wrote " << log.size() << " frames to " << opt.out_path << "\n";
    return kExitOk;
}

int cmd_validate(const std::string& argument_path) {
    const ArgumentGraph graph = parse_argument_file(argument_path);
    const auto findings = validate_argument(graph);
    bool has_error = false;
    for (const auto& f : findings) {
        std::cout << to_string(f.severity) << " " << f.node_id << " " << f.message
                  << "\n";
        if (f.severity == Severity::error) has_error = true;
    }
    return has_error ? kExitFindings : kExitOk;
}

struct ReplayOptions {
    std::string argument_path;
    std::string claim_id;
    std::string spi_id;
    std::string log_path;
    std::string preset;
    std::string scenario_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> window;
    std::optional<double> theta;
    std::optional<double> distance;
    std::optional<double> prior_weight;
    std::optional<double> base_rate;
    std::string out_dir = ".";
    std::vector<std::string> formats;
};

int cmd_replay(const ReplayOptions& opt) {
    const ArgumentGraph graph = parse_argument_file(opt.argument_path);

    const SpiSpec* attached = nullptr;
    if (!opt.spi_id.empty()) {
        attached = graph.spi_by_id(opt.spi_id);
        if (!attached) {
            std::cerr << "unknown SPI id: " << opt.spi_id << "\n";
            return kExitFailure;
        }
    } else {
        attached = graph.spi_for_claim(opt.claim_id);
    }

    const bool has_overrides = opt.window || opt.theta || opt.distance ||
                               opt.prior_weight || opt.base_rate;
    if (!attached && !has_overrides) {
        std::cerr << "no SPI spec for claim " << opt.claim_id << "\n";
        return kExitFailure;
    }

    SpiSpec spec;
    if (attached) {
        spec = *attached;
    } else {
        spec.id = "cli-override";
        spec.claim_id = opt.claim_id;
    }
    if (opt.window) spec.window_size = *opt.window;
    if (opt.theta) spec.threshold = *opt.theta;
    if (opt.distance) spec.max_distance = *opt.distance;
    if (opt.prior_weight) spec.prior_weight = *opt.prior_weight;
    if (opt.base_rate) spec.base_rate = *opt.base_rate;
    spec.validate();

    std::vector<FrameRecord> log;
    if (!opt.log_path.empty()) {
        log = read_frame_log_file(opt.log_path);
    } else {
        ScenarioSpec scenario;
        if (!opt.preset.empty()) {
            const ScenarioSpec* preset = find_preset(opt.preset);
            if (!preset) {
                std::cerr << "unknown preset: " << opt.preset << "\n";
                return kExitFailure;
            }
            scenario = *preset;
        } else {
            scenario = read_scenario_file(opt.scenario_path);
        }
        if (opt.seed) {
            scenario.seed = *opt.seed;
        } else if (auto fallback = env_seed()) {
            scenario.seed = *fallback;
        }
        log = generate_log(scenario);
    }

    const ReplayResult result = run_replay(graph, opt.claim_id, log, spec);
    for (const auto& warning : result.warnings) {
        std::cerr << "WARN " << warning << "\n";
    }

    fs::create_directories(opt.out_dir);
    const bool want_csv = opt.formats.empty() ||
                          std::find(opt.formats.begin(), opt.formats.end(), "csv") !=
                              opt.formats.end();
    const bool want_json = opt.formats.empty() ||
                           std::find(opt.formats.begin(), opt.formats.end(), "json") !=
                               opt.formats.end();
    if (want_csv) {
        std::ofstream out(fs::path(opt.out_dir) / "trace.csv");
        write_trace_csv(out, result.trace);
    }
    if (want_json) {
        std::ofstream out(fs::path(opt.out_dir) / "trace.json");
        write_trace_json(out, result.trace);
    }

    // Beta pdf plot data for the initial and final opinions.
    const auto emit_beta = [&](const Opinion& op, const std::string& name) {
        std::ofstream out(fs::path(opt.out_dir) / name);
        if (op.is_dogmatic()) {
            out << "x,density\n";  // no finite Beta for a dogmatic opinion
            return;
        }
        write_beta_samples_csv(out, opinion_to_beta(op, spec.prior_weight), 501);
    };
    emit_beta(result.trace.initial, "beta_initial.csv");
    emit_beta(result.trace.final_opinion, "beta_final.csv");

    const Opinion& before = result.trace.initial;
    const Opinion& after = result.trace.final_opinion;
    std::cout << "claim=" << opt.claim_id << " windows=" << result.trace.points.size()
              << " b:" << format_float(before.b) << "→" << format_float(after.b)
              << " d:" << format_float(before.d) << "→" << format_float(after.d)
              << " u:" << format_float(before.u) << "→" << format_float(after.u)
              << "\n";
    return kExitOk;
}

struct ReportOptions {
    std::vector<std::string> trace_paths;
    std::string out_path;
    std::string format = "text";
};

int cmd_report(const ReportOptions& opt) {
    std::vector<ConfidenceTrace> traces;
    for (const auto& path : opt.trace_paths) {
        traces.push_back(read_trace_json_file(path));
    }
    const auto reports = build_report(traces);

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!opt.out_path.empty()) {
        file.open(opt.out_path);
        if (!file) throw SchemaError("cannot write " + opt.out_path);
        out = &file;
    }
    if (opt.format == "json") {
        write_report_json(*out, reports);
    } else {
        write_report_text(*out, reports);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Subjective-Logic runtime confidence updates for assurance arguments"};
    app.require_subcommand(1);

    std::string validate_argument_path;
    auto* validate = app.add_subcommand("validate", "validate an argument file");
    validate->add_option("--argument", validate_argument_path, "argument JSON file")
        ->required();

    SimulateOptions sim;
    auto* simulate = app.add_subcommand("simulate", "generate a synthetic frame log");
    auto* sim_preset = simulate->add_option("--preset", sim.preset, "preset scenario name");
    simulate->add_option("--scenario", sim.scenario_path, "scenario spec JSON file")
        ->excludes(sim_preset);
    simulate->add_option("--seed", sim.seed, "RNG seed override");
    simulate->add_option("--out", sim.out_path, "output JSON-lines path");

    ReplayOptions rep;
    auto* replay = app.add_subcommand("replay", "replay a log against a claim");
    replay->add_option("--argument", rep.argument_path, "argument JSON file")->required();
    replay->add_option("--claim", rep.claim_id, "claim id")->required();
    replay->add_option("--spi", rep.spi_id, "SPI id (defaults to the claim's attachment)");
    auto* rep_log = replay->add_option("--log", rep.log_path, "frame log JSON-lines file");
    auto* rep_preset = replay->add_option("--preset", rep.preset, "preset scenario name")
                           ->excludes(rep_log);
    replay->add_option("--scenario", rep.scenario_path, "scenario spec JSON file")
        ->excludes(rep_log)
        ->excludes(rep_preset);
    replay->add_option("--seed", rep.seed, "RNG seed override");
    replay->add_option("--window", rep.window, "window size k override");
    replay->add_option("--theta", rep.theta, "violation threshold override");
    replay->add_option("--distance", rep.distance, "max detection distance override");
    replay->add_option("--prior-weight", rep.prior_weight, "prior weight W override");
    replay->add_option("--base-rate", rep.base_rate, "base rate a override");
    replay->add_option("--out", rep.out_dir, "output directory");
    replay->add_option("--format", rep.formats, "trace formats to write")
        ->check(CLI::IsMember({"csv", "json"}));

    ReportOptions report_opt;
    auto* report = app.add_subcommand("report", "consolidate trace files into a report");
    report->add_option("traces", report_opt.trace_paths, "trace JSON files")
        ->required()
        ->expected(-1);
    report->add_option("--out", report_opt.out_path, "output path (default stdout)");
    report->add_option("--format", report_opt.format, "report format")
        ->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitFailure;
    }

    try {
        if (validate->parsed()) return cmd_validate(validate_argument_path);
        if (simulate->parsed()) {
            if (sim.preset.empty() && sim.scenario_path.empty()) {
                std::cerr << "simulate requires --preset or --scenario\n";
                return kExitFailure;
            }
            return cmd_simulate(sim);
        }
        if (replay->parsed()) {
            if (rep.log_path.empty() && rep.preset.empty() && rep.scenario_path.empty()) {
                std::cerr << "replay requires --log, --preset, or --scenario\n";
                return kExitFailure;
            }
            return cmd_replay(rep);
        }
        if (report->parsed()) return cmd_report(report_opt);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitFailure;
}
