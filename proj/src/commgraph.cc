// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "resilient/commgraph.h"

#include <algorithm>
#include <deque>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "resilient/rng.h"

namespace resilient {

CommGraph::CommGraph(int n) {
  if (n < 0) throw std::invalid_argument("negative robot count");
  adjacency_.resize(n);
}

bool CommGraph::AddEdge(RobotId u, RobotId v) {
  if (u == v) throw std::invalid_argument("self-loop on robot " + std::to_string(u));
  if (u < 0 || v < 0 || u >= num_robots() || v >= num_robots()) {
    throw std::out_of_range("edge endpoint outside robot range");
  }
  auto& nu = adjacency_[u];
  auto it = std::lower_bound(nu.begin(), nu.end(), v);
  if (it != nu.end() && *it == v) return false;
  nu.insert(it, v);
  auto& nv = adjacency_[v];
  nv.insert(std::lower_bound(nv.begin(), nv.end(), u), u);
  ++num_edges_;
  return true;
}

bool CommGraph::HasEdge(RobotId u, RobotId v) const {
  const auto& nu = adjacency_.at(u);
  return std::binary_search(nu.begin(), nu.end(), v);
}

std::vector<std::pair<RobotId, RobotId>> CommGraph::Edges() const {
  std::vector<std::pair<RobotId, RobotId>> edges;
  for (RobotId u = 0; u < num_robots(); ++u) {
    for (RobotId v : adjacency_[u]) {
      if (u < v) edges.emplace_back(u, v);
    }
  }
  return edges;
}

bool CommGraph::IsConnected() const {
  if (num_robots() == 0) return true;
  const std::vector<int> dist = BfsDistances(*this, 0);
  return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

CommGraph CompleteGraph(int n) {
  CommGraph g(n);
  for (RobotId u = 0; u < n; ++u) {
    for (RobotId v = u + 1; v < n; ++v) g.AddEdge(u, v);
  }
  return g;
}

CommGraph PathGraph(int n) {
  CommGraph g(n);
  for (RobotId u = 0; u + 1 < n; ++u) g.AddEdge(u, u + 1);
  return g;
}

CommGraph RandomConnectedGraph(int n, double edge_probability, uint64_t seed) {
  if (n < 1) throw std::invalid_argument("graph needs at least one robot");
  if (!(edge_probability >= 0.0 && edge_probability <= 1.0)) {
    throw std::invalid_argument("edge probability must lie in [0, 1]");
  }
  Rng rng(seed);
  CommGraph g(n);
  if (n >= 2) {
    // Decode a uniform Pruefer sequence into its tree.
    std::uniform_int_distribution<int> label(0, n - 1);
    std::vector<int> code(n - 2);
    for (int& c : code) c = label(rng);
    std::vector<int> degree(n, 1);
    for (int c : code) ++degree[c];
    for (int c : code) {
      int leaf = 0;
      while (degree[leaf] != 1) ++leaf;
      g.AddEdge(leaf, c);
      --degree[leaf];
      --degree[c];
    }
    int u = -1;
    for (int v = 0; v < n; ++v) {
      if (degree[v] == 1) {
        if (u < 0) {
          u = v;
        } else {
          g.AddEdge(u, v);
          break;
        }
      }
    }
  }
  std::bernoulli_distribution extra(edge_probability);
  for (RobotId u = 0; u < n; ++u) {
    for (RobotId v = u + 1; v < n; ++v) {
      if (g.HasEdge(u, v)) continue;
      if (extra(rng)) g.AddEdge(u, v);
    }
  }
  return g;
}

std::vector<int> BfsDistances(const CommGraph& g, RobotId source) {
  std::vector<int> dist(g.num_robots(), -1);
  std::deque<RobotId> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const RobotId u = queue.front();
    queue.pop_front();
    for (RobotId v : g.neighbors(u)) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

int Diameter(const CommGraph& g) {
  int diameter = 0;
  for (RobotId s = 0; s < g.num_robots(); ++s) {
    for (int d : BfsDistances(g, s)) {
      if (d < 0) throw std::invalid_argument("diameter of disconnected graph");
      diameter = std::max(diameter, d);
    }
  }
  return diameter;
}

std::vector<std::vector<RobotId>> CliquePartition(const CommGraph& g) {
  const int n = g.num_robots();
  std::vector<bool> assigned(n, false);
  std::vector<std::vector<RobotId>> groups;
  for (RobotId seed = 0; seed < n; ++seed) {
    if (assigned[seed]) continue;
    std::vector<RobotId> clique{seed};
    assigned[seed] = true;
    for (RobotId cand = seed + 1; cand < n; ++cand) {
      if (assigned[cand]) continue;
      const bool adjacent_to_all = std::all_of(
          clique.begin(), clique.end(),
          [&](RobotId m) { return g.HasEdge(m, cand); });
      if (adjacent_to_all) {
        clique.push_back(cand);
        assigned[cand] = true;
      }
    }
    groups.push_back(std::move(clique));
  }
  return groups;
}

void WriteEdgeList(const CommGraph& g, std::ostream& os) {
  os << g.num_robots() << '\n';
  for (const auto& [u, v] : g.Edges()) os << u << ' ' << v << '\n';
}

CommGraph ReadEdgeList(std::istream& is) {
  std::string line;
  int line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(is, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_line()) throw std::invalid_argument("edge list: missing robot count");
  int n = 0;
  {
    std::istringstream first(line);
    if (!(first >> n) || n < 0) {
      throw std::invalid_argument("edge list line 1: bad robot count");
    }
  }
  CommGraph g(n);
  while (next_line()) {
    std::istringstream row(line);
    RobotId u, v;
    std::string rest;
    if (!(row >> u >> v) || (row >> rest)) {
      throw std::invalid_argument("edge list line " + std::to_string(line_no) +
                                  ": expected `u v`");
    }
    try {
      g.AddEdge(u, v);
    } catch (const std::exception& e) {
      throw std::invalid_argument("edge list line " + std::to_string(line_no) +
                                  ": " + e.what());
    }
  }
  return g;
}

}  // namespace resilient
