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

#ifndef RESILIENT_COMMGRAPH_H_
#define RESILIENT_COMMGRAPH_H_

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "resilient/objective.h"

namespace resilient {

// Undirected simple graph over robots 0..n-1. Neighbor lists are kept sorted.
class CommGraph {
 public:
  explicit CommGraph(int n = 0);

  int num_robots() const { return static_cast<int>(adjacency_.size()); }
  int num_edges() const { return num_edges_; }

  // Adds {u, v}; returns false if it already existed. Self-loops throw.
  bool AddEdge(RobotId u, RobotId v);
  bool HasEdge(RobotId u, RobotId v) const;
  const std::vector<RobotId>& neighbors(RobotId r) const {
    return adjacency_.at(r);
  }
  // Edges as (u, v) with u < v, in lexicographic order.
  std::vector<std::pair<RobotId, RobotId>> Edges() const;
  bool IsConnected() const;

  friend bool operator==(const CommGraph&, const CommGraph&) = default;

 private:
  std::vector<std::vector<RobotId>> adjacency_;
  int num_edges_ = 0;
};

CommGraph CompleteGraph(int n);
CommGraph PathGraph(int n);

// Uniform random labeled spanning tree (random Pruefer sequence) plus every
// other edge independently with probability `edge_probability`.
CommGraph RandomConnectedGraph(int n, double edge_probability, uint64_t seed);

// Hop distances from `source`; -1 for unreachable robots.
std::vector<int> BfsDistances(const CommGraph& g, RobotId source);

// Exact diameter via BFS from every robot. Throws on a disconnected graph.
int Diameter(const CommGraph& g);

// Greedy clique cover: starting from the lowest unassigned robot, grow a
// maximal clique by adding the lowest-id unassigned robot adjacent to every
// current member.
std::vector<std::vector<RobotId>> CliquePartition(const CommGraph& g);

// Edge-list text: `n` on the first line, then one `u v` pair per line.
void WriteEdgeList(const CommGraph& g, std::ostream& os);
CommGraph ReadEdgeList(std::istream& is);

}  // namespace resilient

#endif  // RESILIENT_COMMGRAPH_H_
