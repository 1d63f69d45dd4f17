#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tvws/regulatory.hpp"

namespace tvws::reassign {

/// Which contour counts as a tower's coverage footprint when testing overlap.
enum class CoverageBasis { Protection, Fcc };

std::string_view to_string(CoverageBasis b);
CoverageBasis coverage_basis_from_string(std::string_view s);

/// Towers as nodes, with an edge wherever two coverage disks overlap
/// (center distance strictly less than the radius sum). Simple and undirected.
struct InterferenceGraph {
  std::vector<std::string> nodes;          // tower ids, input order
  std::vector<std::pair<int, int>> edges;  // node-index pairs, first < second

  int n() const { return static_cast<int>(nodes.size()); }
  std::vector<std::vector<int>> adjacency() const;
  std::vector<int> degrees() const;
};

/// Solver output. Valid iff every edge's endpoints sit at least
/// min_separation channels apart (2 = non-adjacent reuse).
struct ChannelAssignment {
  std::map<std::string, int> channels;  // tower id -> channel
  int distinct_channels_used = 0;
  int min_separation = 2;
  std::vector<std::pair<std::string, std::string>> violations;  // offending edges

  bool valid() const { return violations.empty(); }
};

reg::Radius coverage_radius(const reg::Transmitter& tx, const reg::RegulatoryParams& p,
                            CoverageBasis basis = CoverageBasis::Fcc);

/// Throws on duplicate tower ids.
InterferenceGraph build_interference_graph(const std::vector<reg::Transmitter>& towers,
                                           const reg::RegulatoryParams& p,
                                           CoverageBasis basis = CoverageBasis::Fcc);

/// Deterministic greedy coloring: nodes in descending-degree order (ties by
/// id), each taking the lowest in-band channel at least min_separation away
/// from every already-assigned neighbor. Throws, naming the node, when the
/// band runs out.
ChannelAssignment greedy_reassign(const InterferenceGraph& g, const prop::BandPlan& band = {},
                                  int min_separation = 2);

/// Exhaustive minimum over channel subsets of growing size. Deterministic:
/// picks the lexicographically first feasible subset, then the
/// lexicographically smallest assignment over it in node order. Guarded to
/// 12 nodes. Throws when no in-band assignment exists.
ChannelAssignment optimal_reassign_bruteforce(const InterferenceGraph& g,
                                              const prop::BandPlan& band = {},
                                              int min_separation = 2);

/// Edges whose endpoints sit closer than a.min_separation channels apart.
/// Throws if any graph node is missing from the assignment.
std::vector<std::pair<std::string, std::string>> validate_assignment(
    const InterferenceGraph& g, const ChannelAssignment& a);

}  // namespace tvws::reassign
