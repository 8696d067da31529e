#pragma once

#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "diplab/engine.hpp"
#include "diplab/graph.hpp"

namespace diplab::test {

// Graph from 1-based edge pairs.
inline Graph graph_of(std::size_t n, std::initializer_list<std::pair<int, int>> edges) {
  Graph g(n);
  for (auto [u, v] : edges) g.add_edge(static_cast<NodeIndex>(u - 1), static_cast<NodeIndex>(v - 1));
  return g;
}

// House: square 1-2-3-4 plus roof 5 on 1 and 2.
inline Graph house() { return graph_of(5, {{1, 2}, {2, 3}, {3, 4}, {4, 1}, {1, 5}, {2, 5}}); }

// Gem: path 1-2-3-4 plus a hub 5 adjacent to every path node.
inline Graph gem() { return graph_of(5, {{1, 2}, {2, 3}, {3, 4}, {1, 5}, {2, 5}, {3, 5}, {4, 5}}); }

// Domino: two squares sharing the edge 2-5.
inline Graph domino() {
  return graph_of(6, {{1, 2}, {2, 3}, {3, 6}, {6, 5}, {5, 4}, {4, 1}, {2, 5}});
}

// Honest certificates passed through an edit.
class TamperProver : public Prover {
 public:
  using Edit = std::function<void(Certificates&, const ProverContext&)>;
  explicit TamperProver(Edit edit) : edit_(std::move(edit)) {}
  std::string name() const override { return "tamper"; }
  Certificates certify(const Protocol& protocol, const ProverContext& ctx) const override {
    Certificates certs = protocol.honest(ctx);
    edit_(certs, ctx);
    return certs;
  }

 private:
  Edit edit_;
};

}  // namespace diplab::test
