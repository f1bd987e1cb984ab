#include "slassure/argument.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "json.hpp"

namespace slassure {

using nlohmann::ordered_json;

std::string to_string(NodeKind kind) {
    switch (kind) {
        case NodeKind::goal: return "goal";
        case NodeKind::strategy: return "strategy";
        case NodeKind::context: return "context";
        case NodeKind::assumption: return "assumption";
        case NodeKind::evidence: return "evidence";
    }
    return "goal";
}

NodeKind node_kind_from_string(const std::string& s) {
    if (s == "goal") return NodeKind::goal;
    if (s == "strategy") return NodeKind::strategy;
    if (s == "context") return NodeKind::context;
    if (s == "assumption") return NodeKind::assumption;
    if (s == "evidence") return NodeKind::evidence;
    throw SchemaError("unknown node kind: " + s);
}

std::string to_string(Severity severity) {
    switch (severity) {
        case Severity::info: return "INFO";
        case Severity::warning: return "WARN";
        case Severity::error: return "ERROR";
    }
    return "INFO";
}

ArgumentGraph::ArgumentGraph(std::vector<ArgumentNode> nodes, std::vector<Edge> edges,
                             std::vector<SpiSpec> spis)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), spis_(std::move(spis)) {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (!index_.emplace(nodes_[i].id, i).second) {
            throw SchemaError("duplicate node id " + nodes_[i].id);
        }
    }
}

const ArgumentNode& ArgumentGraph::node(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw UnknownClaim("unknown node " + id);
    return nodes_[it->second];
}

bool ArgumentGraph::has_node(const std::string& id) const { return index_.contains(id); }

std::vector<std::string> ArgumentGraph::children_of(const std::string& id) const {
    std::vector<std::string> out;
    for (const auto& e : edges_) {
        if (e.from == id) out.push_back(e.to);
    }
    return out;
}

const SpiSpec* ArgumentGraph::spi_for_claim(const std::string& claim_id) const {
    for (const auto& spi : spis_) {
        if (spi.claim_id == claim_id) return &spi;
    }
    return nullptr;
}

const SpiSpec* ArgumentGraph::spi_by_id(const std::string& spi_id) const {
    for (const auto& spi : spis_) {
        if (spi.id == spi_id) return &spi;
    }
    return nullptr;
}

Opinion ArgumentGraph::claim_opinion(const std::string& claim_id) const {
    const auto& n = node(claim_id);
    if (n.kind != NodeKind::goal) {
        throw KindMismatch("node " + claim_id + " is a " + to_string(n.kind) +
                           ", not a goal");
    }
    if (!n.opinion) throw Error("claim " + claim_id + " has no opinion");
    return *n.opinion;
}

ArgumentGraph ArgumentGraph::with_claim_opinion(const std::string& claim_id,
                                                const Opinion& op) const {
    const auto& n = node(claim_id);
    if (n.kind != NodeKind::goal) {
        throw KindMismatch("node " + claim_id + " is a " + to_string(n.kind) +
                           ", not a goal");
    }
    ArgumentGraph out = *this;
    out.nodes_[out.index_.at(claim_id)].opinion = op;
    return out;
}

namespace {

Opinion opinion_from_json(const ordered_json& j) {
    return Opinion::make(j.at("b").get<double>(), j.at("d").get<double>(),
                         j.at("u").get<double>(), j.value("a", 0.5));
}

void check_acyclic(const ArgumentGraph& graph) {
    // Iterative DFS with coloring over the supported-by edges.
    enum class Color { white, grey, black };
    std::map<std::string, Color> color;
    for (const auto& n : graph.nodes()) color[n.id] = Color::white;

    std::function<void(const std::string&)> visit = [&](const std::string& id) {
        color[id] = Color::grey;
        for (const auto& child : graph.children_of(id)) {
            if (color[child] == Color::grey) {
                throw CycleError("cycle through node " + child);
            }
            if (color[child] == Color::white) visit(child);
        }
        color[id] = Color::black;
    };
    for (const auto& n : graph.nodes()) {
        if (color[n.id] == Color::white) visit(n.id);
    }
}

}  // namespace

ArgumentGraph parse_argument(std::istream& in) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const ordered_json::exception& e) {
        throw SchemaError(std::string("malformed JSON: ") + e.what());
    }
    try {
        if (doc.value("format", "") != "sl-assure/1") {
            throw SchemaError("missing or unsupported format (expected sl-assure/1)");
        }
        const auto& jnodes = doc.at("nodes");
        if (!jnodes.is_array() || jnodes.empty()) {
            throw SchemaError("nodes must be a non-empty array");
        }

        std::vector<ArgumentNode> nodes;
        for (const auto& jn : jnodes) {
            ArgumentNode n;
            n.id = jn.at("id").get<std::string>();
            n.kind = node_kind_from_string(jn.at("kind").get<std::string>());
            n.text = jn.value("text", "");
            n.undeveloped = jn.value("undeveloped", false);
            if (jn.contains("opinion")) {
                if (n.kind != NodeKind::goal && n.kind != NodeKind::evidence) {
                    throw SchemaError("node " + n.id + ": opinions allowed on goal and "
                                      "evidence nodes only");
                }
                n.opinion = opinion_from_json(jn.at("opinion"));
            }
            if (jn.contains("evidence")) {
                const auto& je = jn.at("evidence");
                n.evidence = EvidenceCounts{je.at("r").get<double>(),
                                            je.at("s").get<double>(), je.value("W", 2.0)};
            }
            nodes.push_back(std::move(n));
        }

        std::vector<Edge> edges;
        for (const auto& je : doc.value("edges", ordered_json::array())) {
            edges.push_back(Edge{je.at("from").get<std::string>(),
                                 je.at("to").get<std::string>()});
        }

        std::vector<SpiSpec> spis;
        for (const auto& js : doc.value("spis", ordered_json::array())) {
            SpiSpec spi;
            spi.id = js.at("id").get<std::string>();
            spi.claim_id = js.at("claim_id").get<std::string>();
            spi.window_size = js.value("window_size", spi.window_size);
            spi.threshold = js.value("threshold", spi.threshold);
            spi.max_distance = js.value("max_distance", spi.max_distance);
            spi.prior_weight = js.value("prior_weight", spi.prior_weight);
            spi.base_rate = js.value("base_rate", spi.base_rate);
            spi.validate();
            spis.push_back(std::move(spi));
        }

        ArgumentGraph graph(std::move(nodes), std::move(edges), std::move(spis));

        for (const auto& e : graph.edges()) {
            if (!graph.has_node(e.from)) throw DanglingReference("edge from unknown " + e.from);
            if (!graph.has_node(e.to)) throw DanglingReference("edge to unknown " + e.to);
        }
        std::set<std::string> spi_claims;
        for (const auto& spi : graph.spis()) {
            if (!graph.has_node(spi.claim_id)) {
                throw DanglingReference("spi " + spi.id + " targets unknown claim " +
                                        spi.claim_id);
            }
            if (!spi_claims.insert(spi.claim_id).second) {
                throw SchemaError("claim " + spi.claim_id + " has more than one SPI");
            }
        }
        check_acyclic(graph);

        // Derive missing opinions from evidence counts; the attached SPI's
        // base rate applies when one exists, 0.5 otherwise.
        std::vector<ArgumentNode> final_nodes = graph.nodes();
        for (auto& n : final_nodes) {
            if (!n.opinion && n.evidence &&
                (n.kind == NodeKind::goal || n.kind == NodeKind::evidence)) {
                const SpiSpec* spi = graph.spi_for_claim(n.id);
                n.opinion = opinion_from_evidence(*n.evidence,
                                                  spi ? spi->base_rate : 0.5);
            }
        }
        return ArgumentGraph(std::move(final_nodes),
                             std::vector<Edge>(graph.edges()),
                             std::vector<SpiSpec>(graph.spis()));
    } catch (const ordered_json::exception& e) {
        throw SchemaError(std::string("schema violation: ") + e.what());
    }
}

ArgumentGraph parse_argument(const std::string& text) {
    std::istringstream in(text);
    return parse_argument(in);
}

ArgumentGraph parse_argument_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open argument file " + path);
    return parse_argument(in);
}

std::string serialize_argument(const ArgumentGraph& graph) {
    ordered_json doc;
    doc["format"] = "sl-assure/1";
    auto jnodes = ordered_json::array();
    for (const auto& n : graph.nodes()) {
        ordered_json jn;
        jn["id"] = n.id;
        jn["kind"] = to_string(n.kind);
        jn["text"] = n.text;
        if (n.opinion) {
            jn["opinion"] = {{"b", n.opinion->b}, {"d", n.opinion->d},
                             {"u", n.opinion->u}, {"a", n.opinion->a}};
        }
        if (n.evidence) {
            jn["evidence"] = {{"r", n.evidence->r}, {"s", n.evidence->s},
                              {"W", n.evidence->W}};
        }
        if (n.undeveloped) jn["undeveloped"] = true;
        jnodes.push_back(std::move(jn));
    }
    doc["nodes"] = std::move(jnodes);
    auto jedges = ordered_json::array();
    for (const auto& e : graph.edges()) {
        jedges.push_back({{"from", e.from}, {"to", e.to}});
    }
    doc["edges"] = std::move(jedges);
    auto jspis = ordered_json::array();
    for (const auto& spi : graph.spis()) {
        jspis.push_back({{"id", spi.id},
                         {"claim_id", spi.claim_id},
                         {"window_size", spi.window_size},
                         {"threshold", spi.threshold},
                         {"max_distance", spi.max_distance},
                         {"prior_weight", spi.prior_weight},
                         {"base_rate", spi.base_rate}});
    }
    doc["spis"] = std::move(jspis);
    return doc.dump(2) + "\n";
}

std::vector<Finding> validate_argument(const ArgumentGraph& graph) {
    std::vector<Finding> findings;
    for (const auto& n : graph.nodes()) {
        if (n.kind != NodeKind::goal) continue;
        if (n.undeveloped) {
            findings.push_back({Severity::warning, n.id, "undeveloped goal"});
            continue;
        }
        if (graph.children_of(n.id).empty()) {
            findings.push_back({Severity::error, n.id,
                                "goal lacks support and is not marked undeveloped"});
        }
        if (!n.opinion) {
            findings.push_back({Severity::warning, n.id, "claim lacks initial opinion"});
        }
    }
    for (const auto& spi : graph.spis()) {
        if (graph.node(spi.claim_id).kind != NodeKind::goal) {
            findings.push_back({Severity::error, spi.claim_id,
                                "SPI " + spi.id + " attached to non-goal node"});
        }
    }
    return findings;
}

}  // namespace slassure
