#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "cnp/graph.hpp"

namespace cnp {

/// Per-component cost that the search minimizes. The total objective is the
/// sum of cost(|C|) over residual components:
///   pairwise  C(|C|, 2)          (number of connected node pairs)
///   excess    max(|C| - W, 0)    (nodes above the component-size cap W)
class Objective {
 public:
  enum class Kind { kPairwise, kExcess };

  static Objective pairwise() { return Objective(Kind::kPairwise, 0); }
  static Objective excess(std::int64_t cap);

  Kind kind() const { return kind_; }
  std::int64_t cap() const { return cap_; }

  std::uint64_t cost(std::int64_t size) const {
    if (kind_ == Kind::kPairwise) return static_cast<std::uint64_t>(size) * static_cast<std::uint64_t>(size - 1) / 2;
    return size > cap_ ? static_cast<std::uint64_t>(size - cap_) : 0;
  }

  std::uint64_t evaluate(std::span<const std::int64_t> sizes) const;

  friend bool operator==(const Objective&, const Objective&) = default;

 private:
  Objective(Kind kind, std::int64_t cap) : kind_(kind), cap_(cap) {}
  Kind kind_;
  std::int64_t cap_;
};

std::uint64_t evaluate_pairwise(const ComponentLabeling& labeling);
/// Throws std::invalid_argument when cap < 1.
std::uint64_t evaluate_excess(const ComponentLabeling& labeling, std::int64_t cap);

/// Recomputes the objective of a deleted set from scratch.
std::uint64_t evaluate_set(const Graph& graph, std::span<const NodeId> removed, const Objective& objective);

/// Deleted set S together with the component structure of G[V \ S] and the
/// cached objective. Both move operations keep the objective exact.
///
/// Components live in recycled slots; a slot id is meaningful only until the
/// next move.
class SolutionState {
 public:
  SolutionState(const Graph& graph, Objective objective, std::span<const NodeId> removed = {});

  const Graph& graph() const { return *graph_; }
  const Objective& objective_function() const { return objective_; }
  std::uint64_t objective() const { return value_; }

  bool in_s(NodeId v) const { return in_s_[v] != 0; }
  std::span<const std::uint8_t> in_s_mask() const { return in_s_; }
  std::span<const NodeId> removed() const { return s_list_; }
  std::size_t removed_count() const { return s_list_.size(); }
  std::vector<NodeId> sorted_removed() const;

  int component_of(NodeId v) const { return label_[v]; }
  std::int64_t component_size(int slot) const { return static_cast<std::int64_t>(members_[slot].size()); }
  std::span<const NodeId> members(int slot) const { return members_[slot]; }
  /// Slots of all residual components, in no particular order.
  std::span<const int> components() const { return active_; }
  int component_count() const { return static_cast<int>(active_.size()); }

  /// f(S \ {u}) - f(S), evaluated in O(deg(u)) without changing the state.
  std::int64_t delta_reinsert(NodeId u) const;

  void move_to_s(NodeId v);
  void move_from_s(NodeId u);

  /// Applies the moves needed to make S equal to `target`.
  void assign(std::span<const NodeId> target);

  /// Canonical snapshot with component ids 0..T-1.
  ComponentLabeling labeling() const;

 private:
  int acquire_slot();
  void release_slot(int slot);
  void detach(NodeId v);
  void detach_from(NodeId v, int slot);
  void attach(NodeId v, int slot);

  const Graph* graph_;
  Objective objective_;
  std::uint64_t value_ = 0;

  std::vector<std::uint8_t> in_s_;
  std::vector<NodeId> s_list_;
  std::vector<int> s_pos_;

  std::vector<int> label_;
  std::vector<int> member_pos_;
  std::vector<std::vector<NodeId>> members_;
  std::vector<int> free_slots_;
  std::vector<int> active_;
  std::vector<int> active_pos_;

  // Scratch for traversals and distinct-slot detection.
  mutable std::vector<std::uint32_t> slot_mark_;
  mutable std::uint32_t slot_stamp_ = 0;
  std::vector<std::uint32_t> node_mark_;
  std::uint32_t node_stamp_ = 0;
  std::vector<NodeId> queue_;
  std::vector<NodeId> frontier_;
  mutable std::vector<int> slot_scratch_;
};

/// Text format: one line `K f`, then K node ids.
struct SolutionRecord {
  std::vector<NodeId> nodes;
  std::uint64_t objective = 0;
};

void write_solution(std::ostream& out, const SolutionRecord& record);
/// Throws ParseError on malformed input (header count must match the ids).
SolutionRecord read_solution(std::istream& in);

}  // namespace cnp
