#include "slassure/trace_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include "json.hpp"

namespace slassure {

using nlohmann::ordered_json;

std::string format_float(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

void write_trace_csv(std::ostream& out, const ConfidenceTrace& trace) {
    out << "window_index,frame_start,frame_end,partial,r,s,spi_b,spi_d,spi_u,"
           "claim_b,claim_d,claim_u,projected_p,first_order,beta_alpha,beta_beta,"
           "beta_variance\n";
    for (const auto& p : trace.points) {
        out << p.window_index << ',' << p.frame_start << ',' << p.frame_end << ','
            << (p.partial ? 1 : 0) << ',' << format_float(p.r) << ','
            << format_float(p.s) << ',' << format_float(p.spi_opinion.b) << ','
            << format_float(p.spi_opinion.d) << ',' << format_float(p.spi_opinion.u)
            << ',' << format_float(p.claim_after.b) << ','
            << format_float(p.claim_after.d) << ',' << format_float(p.claim_after.u)
            << ',' << format_float(p.metrics_after.projected_probability) << ','
            << format_float(p.metrics_after.first_order) << ','
            << format_float(p.beta_after ? p.beta_after->alpha : 0.0) << ','
            << format_float(p.beta_after ? p.beta_after->beta : 0.0) << ','
            << format_float(p.metrics_after.beta_variance) << '\n';
    }
}

namespace {

ordered_json opinion_to_json(const Opinion& op) {
    return {{"b", op.b}, {"d", op.d}, {"u", op.u}, {"a", op.a}};
}

Opinion opinion_from_json(const ordered_json& j) {
    return Opinion::make(j.at("b").get<double>(), j.at("d").get<double>(),
                         j.at("u").get<double>(), j.at("a").get<double>());
}

ordered_json config_to_json(const SpiSpec& spec) {
    return {{"id", spec.id},
            {"claim_id", spec.claim_id},
            {"window_size", spec.window_size},
            {"threshold", spec.threshold},
            {"max_distance", spec.max_distance},
            {"prior_weight", spec.prior_weight},
            {"base_rate", spec.base_rate}};
}

SpiSpec config_from_json(const ordered_json& j) {
    SpiSpec spec;
    spec.id = j.at("id").get<std::string>();
    spec.claim_id = j.at("claim_id").get<std::string>();
    spec.window_size = j.at("window_size").get<std::int64_t>();
    spec.threshold = j.at("threshold").get<double>();
    spec.max_distance = j.at("max_distance").get<double>();
    spec.prior_weight = j.at("prior_weight").get<double>();
    spec.base_rate = j.at("base_rate").get<double>();
    return spec;
}

}  // namespace

void write_trace_json(std::ostream& out, const ConfidenceTrace& trace) {
    ordered_json doc;
    doc["format"] = "sl-assure-trace/1";
    doc["claim_id"] = trace.claim_id;
    doc["spi_id"] = trace.spi_id;
    doc["config"] = config_to_json(trace.config);
    doc["initial"] = opinion_to_json(trace.initial);
    doc["final"] = opinion_to_json(trace.final_opinion);
    auto points = ordered_json::array();
    for (const auto& p : trace.points) {
        ordered_json jp;
        jp["window_index"] = p.window_index;
        jp["frame_start"] = p.frame_start;
        jp["frame_end"] = p.frame_end;
        jp["partial"] = p.partial;
        jp["r"] = p.r;
        jp["s"] = p.s;
        jp["spi"] = opinion_to_json(p.spi_opinion);
        jp["claim_before"] = opinion_to_json(p.claim_before);
        jp["claim_after"] = opinion_to_json(p.claim_after);
        jp["projected_p"] = p.metrics_after.projected_probability;
        jp["first_order"] = p.metrics_after.first_order;
        if (p.beta_after) {
            jp["beta_alpha"] = p.beta_after->alpha;
            jp["beta_beta"] = p.beta_after->beta;
        } else {
            jp["beta_alpha"] = nullptr;
            jp["beta_beta"] = nullptr;
        }
        jp["beta_variance"] = p.metrics_after.beta_variance;
        points.push_back(std::move(jp));
    }
    doc["points"] = std::move(points);
    out << doc.dump(2) << '\n';
}

ConfidenceTrace read_trace_json(std::istream& in) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const ordered_json::exception& e) {
        throw SchemaError(std::string("malformed trace JSON: ") + e.what());
    }
    try {
        if (doc.value("format", "") != "sl-assure-trace/1") {
            throw SchemaError("missing or unsupported trace format "
                              "(expected sl-assure-trace/1)");
        }
        ConfidenceTrace trace;
        trace.claim_id = doc.at("claim_id").get<std::string>();
        trace.spi_id = doc.at("spi_id").get<std::string>();
        trace.config = config_from_json(doc.at("config"));
        trace.initial = opinion_from_json(doc.at("initial"));
        trace.final_opinion = opinion_from_json(doc.at("final"));
        for (const auto& jp : doc.at("points")) {
            TracePoint p;
            p.window_index = jp.at("window_index").get<std::size_t>();
            p.frame_start = jp.at("frame_start").get<std::int64_t>();
            p.frame_end = jp.at("frame_end").get<std::int64_t>();
            p.partial = jp.at("partial").get<bool>();
            p.r = jp.at("r").get<double>();
            p.s = jp.at("s").get<double>();
            p.spi_opinion = opinion_from_json(jp.at("spi"));
            p.claim_before = opinion_from_json(jp.at("claim_before"));
            p.claim_after = opinion_from_json(jp.at("claim_after"));
            p.metrics_after.projected_probability = jp.at("projected_p").get<double>();
            p.metrics_after.first_order = jp.at("first_order").get<double>();
            p.metrics_after.beta_variance = jp.at("beta_variance").get<double>();
            if (!jp.at("beta_alpha").is_null()) {
                p.beta_after = BetaParams{jp.at("beta_alpha").get<double>(),
                                          jp.at("beta_beta").get<double>()};
            }
            trace.points.push_back(std::move(p));
        }
        return trace;
    } catch (const ordered_json::exception& e) {
        throw SchemaError(std::string("trace schema violation: ") + e.what());
    }
}

ConfidenceTrace read_trace_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open trace file " + path);
    return read_trace_json(in);
}

void write_beta_samples_csv(std::ostream& out, const BetaParams& params,
                            std::size_t n_points) {
    out << "x,density\n";
    for (const auto& [x, density] : beta_pdf_samples(params, n_points)) {
        out << format_float(x) << ',' << format_float(density) << '\n';
    }
}

std::vector<ClaimReport> build_report(const std::vector<ConfidenceTrace>& traces) {
    std::map<std::string, ClaimReport> by_claim;
    for (const auto& trace : traces) {
        auto& report = by_claim[trace.claim_id];
        report.claim_id = trace.claim_id;

        ClaimReport::Run run;
        run.spi_id = trace.spi_id;
        run.config = trace.config;
        run.initial = trace.initial;
        run.final_opinion = trace.final_opinion;
        run.total_windows = trace.points.size();
        run.min_belief = trace.initial.b;
        run.min_belief_window = 0;
        for (const auto& p : trace.points) {
            if (p.s > 0.0) ++run.violation_windows;
            if (p.claim_after.b < run.min_belief) {
                run.min_belief = p.claim_after.b;
                run.min_belief_window = p.window_index;
            }
        }
        run.final_metrics = confidence_metrics(trace.final_opinion,
                                               trace.config.prior_weight);
        report.runs.push_back(std::move(run));
    }

    std::vector<ClaimReport> reports;
    for (auto& [claim_id, report] : by_claim) {
        std::sort(report.runs.begin(), report.runs.end(),
                  [](const ClaimReport::Run& a, const ClaimReport::Run& b) {
                      return std::tie(a.config.window_size, a.config.threshold,
                                      a.config.max_distance, a.config.prior_weight,
                                      a.config.base_rate, a.spi_id) <
                             std::tie(b.config.window_size, b.config.threshold,
                                      b.config.max_distance, b.config.prior_weight,
                                      b.config.base_rate, b.spi_id);
                  });
        for (std::size_t i = 1; i < report.runs.size(); ++i) {
            if (report.runs[i].config.threshold != report.runs[0].config.threshold) {
                report.differing_thresholds = true;
            }
        }
        reports.push_back(std::move(report));
    }
    return reports;
}

namespace {

std::string opinion_line(const Opinion& op) {
    std::ostringstream out;
    out << "(b=" << format_float(op.b) << ", d=" << format_float(op.d)
        << ", u=" << format_float(op.u) << ", a=" << format_float(op.a) << ")";
    return out.str();
}

}  // namespace

void write_report_text(std::ostream& out, const std::vector<ClaimReport>& reports) {
    for (const auto& report : reports) {
        out << "claim " << report.claim_id << "\n";
        if (report.differing_thresholds) {
            out << "  note: runs use differing thresholds\n";
        }
        for (const auto& run : report.runs) {
            out << "  spi " << run.spi_id << " (k=" << run.config.window_size
                << ", theta=" << format_float(run.config.threshold)
                << ", d=" << format_float(run.config.max_distance)
                << ", W=" << format_float(run.config.prior_weight)
                << ", a=" << format_float(run.config.base_rate) << ")\n";
            out << "    windows: " << run.total_windows
                << "  violation windows: " << run.violation_windows << "\n";
            out << "    initial: " << opinion_line(run.initial) << "\n";
            out << "    final:   " << opinion_line(run.final_opinion) << "\n";
            out << "    min belief: " << format_float(run.min_belief) << " at window "
                << run.min_belief_window << "\n";
            out << "    final metrics: first_order=" << format_float(run.final_metrics.first_order)
                << " projected_p=" << format_float(run.final_metrics.projected_probability)
                << " beta_variance=" << format_float(run.final_metrics.beta_variance)
                << "\n";
        }
    }
}

void write_report_json(std::ostream& out, const std::vector<ClaimReport>& reports) {
    ordered_json doc;
    doc["format"] = "sl-assure-report/1";
    auto claims = ordered_json::array();
    for (const auto& report : reports) {
        ordered_json jc;
        jc["claim_id"] = report.claim_id;
        jc["differing_thresholds"] = report.differing_thresholds;
        auto runs = ordered_json::array();
        for (const auto& run : report.runs) {
            ordered_json jr;
            jr["spi_id"] = run.spi_id;
            jr["config"] = config_to_json(run.config);
            jr["initial"] = opinion_to_json(run.initial);
            jr["final"] = opinion_to_json(run.final_opinion);
            jr["total_windows"] = run.total_windows;
            jr["violation_windows"] = run.violation_windows;
            jr["min_belief"] = run.min_belief;
            jr["min_belief_window"] = run.min_belief_window;
            jr["final_metrics"] = {
                {"first_order", run.final_metrics.first_order},
                {"projected_p", run.final_metrics.projected_probability},
                {"beta_variance", run.final_metrics.beta_variance}};
            runs.push_back(std::move(jr));
        }
        jc["runs"] = std::move(runs);
        claims.push_back(std::move(jc));
    }
    doc["claims"] = std::move(claims);
    out << doc.dump(2) << '\n';
}

}  // namespace slassure
