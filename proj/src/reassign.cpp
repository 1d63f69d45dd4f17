#include "tvws/reassign.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "tvws/geo.hpp"

namespace tvws::reassign {

std::string_view to_string(CoverageBasis b) {
  return b == CoverageBasis::Protection ? "protection" : "fcc";
}

CoverageBasis coverage_basis_from_string(std::string_view s) {
  if (s == "protection") return CoverageBasis::Protection;
  if (s == "fcc") return CoverageBasis::Fcc;
  throw std::invalid_argument("unknown coverage basis '" + std::string(s) + "'");
}

std::vector<std::vector<int>> InterferenceGraph::adjacency() const {
  std::vector<std::vector<int>> adj(nodes.size());
  for (const auto& [a, b] : edges) {
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  }
  return adj;
}

std::vector<int> InterferenceGraph::degrees() const {
  std::vector<int> deg(nodes.size(), 0);
  for (const auto& [a, b] : edges) {
    ++deg[static_cast<std::size_t>(a)];
    ++deg[static_cast<std::size_t>(b)];
  }
  return deg;
}

reg::Radius coverage_radius(const reg::Transmitter& tx, const reg::RegulatoryParams& p,
                            CoverageBasis basis) {
  return basis == CoverageBasis::Protection ? reg::protection_radius(tx, p)
                                            : reg::fcc_grade_b_radius(tx, p);
}

InterferenceGraph build_interference_graph(const std::vector<reg::Transmitter>& towers,
                                           const reg::RegulatoryParams& p, CoverageBasis basis) {
  InterferenceGraph g;
  g.nodes.reserve(towers.size());
  std::unordered_set<std::string> seen;
  std::vector<double> radius;
  radius.reserve(towers.size());
  for (const reg::Transmitter& tx : towers) {
    if (!seen.insert(tx.id).second) {
      throw std::invalid_argument("duplicate tower id '" + tx.id + "'");
    }
    g.nodes.push_back(tx.id);
    radius.push_back(coverage_radius(tx, p, basis).km);
  }
  for (std::size_t i = 0; i < towers.size(); ++i) {
    for (std::size_t j = i + 1; j < towers.size(); ++j) {
      const double d = geo::haversine_distance(towers[i].location, towers[j].location);
      if (d < radius[i] + radius[j]) {
        g.edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
      }
    }
  }
  return g;
}

namespace {

int count_distinct(const std::map<std::string, int>& channels) {
  std::set<int> used;
  for (const auto& [id, c] : channels) used.insert(c);
  return static_cast<int>(used.size());
}

}  // namespace

ChannelAssignment greedy_reassign(const InterferenceGraph& g, const prop::BandPlan& band,
                                  int min_separation) {
  if (min_separation < 1) throw std::invalid_argument("min_separation must be >= 1");

  const std::vector<std::vector<int>> adj = g.adjacency();
  const std::vector<int> deg = g.degrees();
  std::vector<int> order(g.nodes.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (deg[static_cast<std::size_t>(a)] != deg[static_cast<std::size_t>(b)]) {
      return deg[static_cast<std::size_t>(a)] > deg[static_cast<std::size_t>(b)];
    }
    return g.nodes[static_cast<std::size_t>(a)] < g.nodes[static_cast<std::size_t>(b)];
  });

  std::vector<int> channel(g.nodes.size(), 0);
  for (int node : order) {
    int picked = 0;
    for (int c = band.first_channel; c <= band.last_channel(); ++c) {
      bool ok = true;
      for (int nb : adj[static_cast<std::size_t>(node)]) {
        const int cn = channel[static_cast<std::size_t>(nb)];
        if (cn != 0 && std::abs(c - cn) < min_separation) {
          ok = false;
          break;
        }
      }
      if (ok) {
        picked = c;
        break;
      }
    }
    if (picked == 0) {
      throw std::runtime_error("band exhausted: no feasible channel for tower '" +
                               g.nodes[static_cast<std::size_t>(node)] + "'");
    }
    channel[static_cast<std::size_t>(node)] = picked;
  }

  ChannelAssignment a;
  a.min_separation = min_separation;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) a.channels[g.nodes[i]] = channel[i];
  a.distinct_channels_used = count_distinct(a.channels);
  a.violations = validate_assignment(g, a);
  return a;
}

namespace {

// Backtracking feasibility check restricted to one channel subset. Nodes are
// tried in input order with channels ascending, so the first hit is the
// lexicographically smallest assignment over this subset.
bool assign_over_subset(const std::vector<std::vector<int>>& adj,
                        const std::vector<int>& subset, int min_separation, std::size_t node,
                        std::vector<int>& channel) {
  if (node == channel.size()) return true;
  for (int c : subset) {
    bool ok = true;
    for (int nb : adj[node]) {
      const int cn = channel[static_cast<std::size_t>(nb)];
      if (cn != 0 && std::abs(c - cn) < min_separation) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    channel[node] = c;
    if (assign_over_subset(adj, subset, min_separation, node + 1, channel)) return true;
    channel[node] = 0;
  }
  return false;
}

// Largest clique size via the subset-DP; fine for the 12-node cap.
int max_clique_size(const InterferenceGraph& g) {
  const int n = g.n();
  std::vector<unsigned> adjbit(static_cast<std::size_t>(n), 0);
  for (const auto& [a, b] : g.edges) {
    adjbit[static_cast<std::size_t>(a)] |= 1u << b;
    adjbit[static_cast<std::size_t>(b)] |= 1u << a;
  }
  std::vector<char> clique(std::size_t{1} << n, 0);
  clique[0] = 1;
  int best = 0;
  for (unsigned m = 1; m < (1u << n); ++m) {
    const int v = std::countr_zero(m);
    const unsigned rest = m & (m - 1);
    clique[m] = clique[rest] && ((adjbit[static_cast<std::size_t>(v)] & rest) == rest);
    if (clique[m]) best = std::max(best, std::popcount(m));
  }
  return best;
}

// Most channels selectable from the ascending subset pairwise at least
// min_separation apart (the left-to-right sweep is maximal).
int separated_capacity(const std::vector<int>& subset, int min_separation) {
  int count = 0;
  int last = std::numeric_limits<int>::min();
  for (int c : subset) {
    if (count == 0 || c - last >= min_separation) {
      ++count;
      last = c;
    }
  }
  return count;
}

// k-subsets of {first..last} in lexicographic order.
bool next_subset(std::vector<int>& subset, int first, int last) {
  const int k = static_cast<int>(subset.size());
  for (int i = k - 1; i >= 0; --i) {
    if (subset[static_cast<std::size_t>(i)] < last - (k - 1 - i)) {
      ++subset[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j) {
        subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
      }
      return true;
    }
  }
  (void)first;
  return false;
}

}  // namespace

ChannelAssignment optimal_reassign_bruteforce(const InterferenceGraph& g,
                                              const prop::BandPlan& band, int min_separation) {
  if (min_separation < 1) throw std::invalid_argument("min_separation must be >= 1");
  if (g.n() > 12) {
    throw std::invalid_argument("brute-force solver capped at 12 nodes, got " +
                                std::to_string(g.n()));
  }

  ChannelAssignment a;
  a.min_separation = min_separation;
  if (g.nodes.empty()) return a;

  const std::vector<std::vector<int>> adj = g.adjacency();
  const int first = band.first_channel;
  const int last = band.last_channel();

  // Two sound prunes keep infeasible inputs from exhausting every subset: an
  // assignment never uses more distinct channels than there are nodes, and a
  // clique's channels must be pairwise min_separation apart within the subset.
  const int omega = max_clique_size(g);
  const int max_k = std::min(band.n_channels, g.n());

  for (int k = 1; k <= max_k; ++k) {
    std::vector<int> subset(static_cast<std::size_t>(k));
    std::iota(subset.begin(), subset.end(), first);
    do {
      if (separated_capacity(subset, min_separation) < omega) continue;
      std::vector<int> channel(g.nodes.size(), 0);
      if (assign_over_subset(adj, subset, min_separation, 0, channel)) {
        for (std::size_t i = 0; i < g.nodes.size(); ++i) a.channels[g.nodes[i]] = channel[i];
        a.distinct_channels_used = count_distinct(a.channels);
        a.violations = validate_assignment(g, a);
        return a;
      }
    } while (next_subset(subset, first, last));
  }
  throw std::runtime_error("no in-band assignment satisfies the separation constraint");
}

std::vector<std::pair<std::string, std::string>> validate_assignment(
    const InterferenceGraph& g, const ChannelAssignment& a) {
  std::vector<std::pair<std::string, std::string>> bad;
  for (const std::string& id : g.nodes) {
    if (!a.channels.contains(id)) {
      throw std::invalid_argument("tower '" + id + "' has no assigned channel");
    }
  }
  for (const auto& [i, j] : g.edges) {
    const std::string& a_id = g.nodes[static_cast<std::size_t>(i)];
    const std::string& b_id = g.nodes[static_cast<std::size_t>(j)];
    if (std::abs(a.channels.at(a_id) - a.channels.at(b_id)) < a.min_separation) {
      bad.emplace_back(a_id, b_id);
    }
  }
  return bad;
}

}  // namespace tvws::reassign
