#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "slassure/monitor.hpp"
#include "slassure/opinion.hpp"

namespace slassure {

enum class NodeKind { goal, strategy, context, assumption, evidence };

std::string to_string(NodeKind kind);
NodeKind node_kind_from_string(const std::string& s);

struct ArgumentNode {
    std::string id;
    NodeKind kind = NodeKind::goal;
    std::string text;
    std::optional<Opinion> opinion;              // goals and evidence only
    std::optional<EvidenceCounts> evidence;
    bool undeveloped = false;
};

struct Edge {
    std::string from;  // parent (supported-by)
    std::string to;    // child
    friend bool operator==(const Edge&, const Edge&) = default;
};

enum class Severity { info, warning, error };

struct Finding {
    Severity severity = Severity::info;
    std::string node_id;
    std::string message;
};

/// GSN-subset assurance argument: immutable value; updates return new graphs.
class ArgumentGraph {
  public:
    ArgumentGraph() = default;
    ArgumentGraph(std::vector<ArgumentNode> nodes, std::vector<Edge> edges,
                  std::vector<SpiSpec> spis);

    const std::vector<ArgumentNode>& nodes() const { return nodes_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<SpiSpec>& spis() const { return spis_; }

    const ArgumentNode& node(const std::string& id) const;
    bool has_node(const std::string& id) const;
    std::vector<std::string> children_of(const std::string& id) const;

    const SpiSpec* spi_for_claim(const std::string& claim_id) const;
    const SpiSpec* spi_by_id(const std::string& spi_id) const;

    Opinion claim_opinion(const std::string& claim_id) const;
    ArgumentGraph with_claim_opinion(const std::string& claim_id, const Opinion& op) const;

  private:
    std::vector<ArgumentNode> nodes_;
    std::vector<Edge> edges_;
    std::vector<SpiSpec> spis_;
    std::map<std::string, std::size_t> index_;
};

/// Parses the sl-assure/1 JSON document; derives opinions from evidence
/// counts where not explicit; rejects cycles, dangling references, invalid
/// opinions, and multiple SPIs on one claim.
ArgumentGraph parse_argument(std::istream& in);
ArgumentGraph parse_argument(const std::string& text);
ArgumentGraph parse_argument_file(const std::string& path);

std::string serialize_argument(const ArgumentGraph& graph);

/// Structural soundness findings (structure errors are rejected at parse
/// time; this reports argumentation-level issues).
std::vector<Finding> validate_argument(const ArgumentGraph& graph);

std::string to_string(Severity severity);

}  // namespace slassure
