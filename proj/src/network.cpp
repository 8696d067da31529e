#include "diplab/network.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "diplab/errors.hpp"

namespace diplab {

namespace {

constexpr unsigned kMaxIdExponent = 8;

Element saturating_power(std::size_t base, unsigned exponent) {
  Element result = 1;
  const Element cap = Element{1} << 100;
  for (unsigned i = 0; i < exponent; ++i) {
    result *= base;
    if (result > cap) return cap;
  }
  return result;
}

std::vector<NodeId> default_ids(std::size_t n) {
  std::vector<NodeId> ids(n);
  std::iota(ids.begin(), ids.end(), NodeId{1});
  return ids;
}

}  // namespace

NetworkConfig::NetworkConfig(Graph graph) : NetworkConfig(std::move(graph), {}) {}

NetworkConfig::NetworkConfig(Graph graph, std::vector<NodeId> ids,
                             std::optional<unsigned> id_exponent)
    : graph_(std::move(graph)), ids_(std::move(ids)) {
  const std::size_t n = graph_.size();
  if (ids_.empty()) ids_ = default_ids(n);
  if (ids_.size() != n) {
    throw InvalidArgument("ids: expected " + std::to_string(n) + " entries, got " +
                          std::to_string(ids_.size()));
  }
  if (!is_connected(graph_)) throw InvalidArgument("network graph must be connected");

  NodeId largest = 0;
  for (NodeIndex v = 0; v < n; ++v) {
    if (ids_[v] == 0) throw InvalidArgument("ids must be positive");
    if (!index_.emplace(ids_[v], v).second) {
      throw InvalidArgument("duplicate id " + std::to_string(ids_[v]));
    }
    largest = std::max(largest, ids_[v]);
  }

  if (id_exponent) {
    id_exponent_ = *id_exponent;
    if (saturating_power(n, id_exponent_) < largest) {
      throw InvalidArgument("id " + std::to_string(largest) + " exceeds n^" +
                            std::to_string(id_exponent_));
    }
  } else {
    id_exponent_ = 2;
    while (saturating_power(n, id_exponent_) < largest) {
      if (++id_exponent_ > kMaxIdExponent) {
        throw InvalidArgument("id " + std::to_string(largest) + " is not polynomial in n=" +
                              std::to_string(n));
      }
    }
  }
}

std::optional<NodeIndex> NetworkConfig::index_of(NodeId id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Element NetworkConfig::max_id_bound() const { return saturating_power(size(), id_exponent_); }

std::vector<NodeIndex> NetworkConfig::indices_by_id() const {
  std::vector<NodeIndex> order(size());
  std::iota(order.begin(), order.end(), NodeIndex{0});
  std::sort(order.begin(), order.end(), [&](NodeIndex a, NodeIndex b) { return ids_[a] < ids_[b]; });
  return order;
}

}  // namespace diplab
