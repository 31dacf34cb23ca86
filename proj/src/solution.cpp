#include "cnp/solution.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace cnp {

Objective Objective::excess(std::int64_t cap) {
  if (cap < 1) throw std::invalid_argument("component-size cap W must be >= 1");
  return Objective(Kind::kExcess, cap);
}

std::uint64_t Objective::evaluate(std::span<const std::int64_t> sizes) const {
  std::uint64_t total = 0;
  for (auto s : sizes) total += cost(s);
  return total;
}

std::uint64_t evaluate_pairwise(const ComponentLabeling& labeling) {
  return Objective::pairwise().evaluate(labeling.sizes);
}

std::uint64_t evaluate_excess(const ComponentLabeling& labeling, std::int64_t cap) {
  return Objective::excess(cap).evaluate(labeling.sizes);
}

std::uint64_t evaluate_set(const Graph& graph, std::span<const NodeId> removed, const Objective& objective) {
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(graph.num_nodes()), 0);
  for (NodeId v : removed) {
    if (v < 0 || v >= graph.num_nodes()) throw RangeError("node id " + std::to_string(v) + " out of range");
    mask[v] = 1;
  }
  return objective.evaluate(components_of(graph, mask).sizes);
}

SolutionState::SolutionState(const Graph& graph, Objective objective, std::span<const NodeId> removed)
    : graph_(&graph), objective_(objective) {
  const auto n = static_cast<std::size_t>(graph.num_nodes());
  in_s_.assign(n, 0);
  s_pos_.assign(n, -1);
  member_pos_.assign(n, -1);
  node_mark_.assign(n, 0);
  for (NodeId v : removed) {
    if (v < 0 || v >= graph.num_nodes()) throw RangeError("node id " + std::to_string(v) + " out of range");
    if (in_s_[v]) throw std::invalid_argument("duplicate node " + std::to_string(v) + " in deleted set");
    in_s_[v] = 1;
    s_pos_[v] = static_cast<int>(s_list_.size());
    s_list_.push_back(v);
  }
  ComponentLabeling initial = components_of(graph, in_s_);
  label_.assign(n, kInS);
  for (int c = 0; c < initial.count; ++c) acquire_slot();
  for (NodeId v = 0; v < graph.num_nodes(); ++v)
    if (initial.label[v] != kInS) attach(v, initial.label[v]);
  value_ = objective_.evaluate(initial.sizes);
}

std::vector<NodeId> SolutionState::sorted_removed() const {
  std::vector<NodeId> out(s_list_);
  std::sort(out.begin(), out.end());
  return out;
}

int SolutionState::acquire_slot() {
  int slot;
  if (!free_slots_.empty()) {
    slot = free_slots_.back();
    free_slots_.pop_back();
  } else {
    slot = static_cast<int>(members_.size());
    members_.emplace_back();
    active_pos_.push_back(-1);
    slot_mark_.push_back(0);
  }
  active_pos_[slot] = static_cast<int>(active_.size());
  active_.push_back(slot);
  return slot;
}

void SolutionState::release_slot(int slot) {
  assert(members_[slot].empty());
  int pos = active_pos_[slot];
  int last = active_.back();
  active_[pos] = last;
  active_pos_[last] = pos;
  active_.pop_back();
  active_pos_[slot] = -1;
  free_slots_.push_back(slot);
}

void SolutionState::detach(NodeId v) {
  detach_from(v, label_[v]);
  member_pos_[v] = -1;
  label_[v] = kInS;
}

void SolutionState::detach_from(NodeId v, int slot) {
  auto& list = members_[slot];
  int pos = member_pos_[v];
  NodeId last = list.back();
  list[pos] = last;
  member_pos_[last] = pos;
  list.pop_back();
}

void SolutionState::attach(NodeId v, int slot) {
  label_[v] = slot;
  member_pos_[v] = static_cast<int>(members_[slot].size());
  members_[slot].push_back(v);
}

std::int64_t SolutionState::delta_reinsert(NodeId u) const {
  if (!in_s_[u]) throw std::logic_error("delta_reinsert: node " + std::to_string(u) + " is not in S");
  if (++slot_stamp_ == 0) {
    std::fill(slot_mark_.begin(), slot_mark_.end(), 0);
    slot_stamp_ = 1;
  }
  std::int64_t merged = 1;
  std::int64_t before = 0;
  for (NodeId w : graph_->neighbors(u)) {
    int c = label_[w];
    if (c == kInS || slot_mark_[c] == slot_stamp_) continue;
    slot_mark_[c] = slot_stamp_;
    const auto size = static_cast<std::int64_t>(members_[c].size());
    merged += size;
    before += static_cast<std::int64_t>(objective_.cost(size));
  }
  return static_cast<std::int64_t>(objective_.cost(merged)) - before;
}

void SolutionState::move_to_s(NodeId v) {
  if (in_s_[v]) throw std::logic_error("move_to_s: node " + std::to_string(v) + " is already in S");
  const int slot = label_[v];
  const std::int64_t old_size = static_cast<std::int64_t>(members_[slot].size());
  detach(v);
  in_s_[v] = 1;
  s_pos_[v] = static_cast<int>(s_list_.size());
  s_list_.push_back(v);

  value_ -= objective_.cost(old_size);
  if (members_[slot].empty()) {
    release_slot(slot);
    return;
  }

  // Two tags per call: seeds are pre-tagged, visited nodes carry `reached`.
  if (node_stamp_ >= UINT32_MAX - 2) {
    std::fill(node_mark_.begin(), node_mark_.end(), 0);
    node_stamp_ = 0;
  }
  const std::uint32_t seed_tag = ++node_stamp_;
  const std::uint32_t reached = ++node_stamp_;

  std::vector<NodeId>& seeds = queue_;
  seeds.clear();
  for (NodeId w : graph_->neighbors(v)) {
    if (in_s_[w]) continue;
    seeds.push_back(w);
    node_mark_[w] = seed_tag;
  }

  // Each traversal either reaches every remaining seed, in which case the
  // rest of the old component is connected and keeps its slot, or exhausts
  // a piece that moves to a fresh slot.
  std::size_t remaining = seeds.size();
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const NodeId seed = seeds[i];
    if (node_mark_[seed] == reached) continue;
    node_mark_[seed] = reached;
    if (--remaining == 0) break;
    std::vector<NodeId>& piece = frontier_;
    piece.clear();
    piece.push_back(seed);
    bool all_seeds = false;
    for (std::size_t head = 0; head < piece.size() && !all_seeds; ++head) {
      for (NodeId y : graph_->neighbors(piece[head])) {
        if (in_s_[y] || node_mark_[y] == reached) continue;
        if (node_mark_[y] == seed_tag && --remaining == 0) all_seeds = true;
        node_mark_[y] = reached;
        piece.push_back(y);
      }
    }
    if (all_seeds) break;
    const int fresh = acquire_slot();
    for (NodeId x : piece) {
      detach_from(x, slot);
      attach(x, fresh);
    }
    value_ += objective_.cost(static_cast<std::int64_t>(piece.size()));
  }
  value_ += objective_.cost(static_cast<std::int64_t>(members_[slot].size()));
}

void SolutionState::move_from_s(NodeId u) {
  if (!in_s_[u]) throw std::logic_error("move_from_s: node " + std::to_string(u) + " is not in S");
  const std::int64_t delta = delta_reinsert(u);

  int pos = s_pos_[u];
  NodeId last = s_list_.back();
  s_list_[pos] = last;
  s_pos_[last] = pos;
  s_list_.pop_back();
  s_pos_[u] = -1;
  in_s_[u] = 0;

  // Distinct adjacent slots; the largest absorbs the others.
  slot_scratch_.clear();
  if (++slot_stamp_ == 0) {
    std::fill(slot_mark_.begin(), slot_mark_.end(), 0);
    slot_stamp_ = 1;
  }
  int target = -1;
  for (NodeId w : graph_->neighbors(u)) {
    int c = label_[w];
    if (c == kInS || slot_mark_[c] == slot_stamp_) continue;
    slot_mark_[c] = slot_stamp_;
    slot_scratch_.push_back(c);
    if (target < 0 || members_[c].size() > members_[target].size()) target = c;
  }
  if (target < 0) target = acquire_slot();
  for (int c : slot_scratch_) {
    if (c == target) continue;
    for (NodeId x : members_[c]) {
      label_[x] = target;
      member_pos_[x] = static_cast<int>(members_[target].size());
      members_[target].push_back(x);
    }
    members_[c].clear();
    release_slot(c);
  }
  attach(u, target);
  value_ = static_cast<std::uint64_t>(static_cast<std::int64_t>(value_) + delta);
}

void SolutionState::assign(std::span<const NodeId> target) {
  std::vector<std::uint8_t> wanted(in_s_.size(), 0);
  for (NodeId v : target) wanted[v] = 1;
  for (NodeId v : target)
    if (!in_s_[v]) move_to_s(v);
  std::vector<NodeId> extra;
  for (NodeId v : s_list_)
    if (!wanted[v]) extra.push_back(v);
  for (NodeId v : extra) move_from_s(v);
}

ComponentLabeling SolutionState::labeling() const {
  ComponentLabeling out;
  out.label.assign(in_s_.size(), kInS);
  std::vector<int> compact(members_.size(), -1);
  // Number components by their smallest member so equal partitions compare equal.
  std::vector<std::pair<NodeId, int>> order;
  for (int slot : active_) order.emplace_back(*std::min_element(members_[slot].begin(), members_[slot].end()), slot);
  std::sort(order.begin(), order.end());
  for (auto [first, slot] : order) {
    compact[slot] = out.count++;
    out.sizes.push_back(static_cast<std::int64_t>(members_[slot].size()));
  }
  for (std::size_t v = 0; v < in_s_.size(); ++v)
    if (label_[v] != kInS) out.label[v] = compact[label_[v]];
  return out;
}

void write_solution(std::ostream& out, const SolutionRecord& record) {
  out << record.nodes.size() << ' ' << record.objective << '\n';
  for (NodeId v : record.nodes) out << v << '\n';
}

SolutionRecord read_solution(std::istream& in) {
  SolutionRecord record;
  std::int64_t k = 0;
  if (!(in >> k >> record.objective) || k < 0) throw ParseError(1, "expected header 'K f'");
  for (std::int64_t i = 0; i < k; ++i) {
    std::int64_t v = 0;
    if (!(in >> v)) throw ParseError(static_cast<std::size_t>(i) + 2, "expected " + std::to_string(k) + " node ids");
    if (v < 0 || v > INT32_MAX) throw RangeError("node id " + std::to_string(v) + " out of range");
    record.nodes.push_back(static_cast<NodeId>(v));
  }
  std::string extra;
  if (in >> extra) throw ParseError(static_cast<std::size_t>(k) + 2, "trailing data after " + std::to_string(k) + " ids");
  return record;
}

}  // namespace cnp
