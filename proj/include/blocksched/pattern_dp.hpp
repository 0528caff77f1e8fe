#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "blocksched/budget.hpp"
#include "blocksched/model.hpp"

namespace bsched {

// Histograms of color-class sizes 0..k: `a` for the classes used by the
// anchor, `b` for all other classes.
struct Pattern {
  std::vector<int> a;
  std::vector<int> b;
  auto operator<=>(const Pattern&) const = default;
};

std::string to_string(const Pattern& p);

// Persistent sample coloring. Labels of `right` are mapped through
// `right_map` into the labels of this node.
struct WitnessNode {
  int vertex = -1;
  int color = -1;
  std::shared_ptr<const WitnessNode> left;
  std::shared_ptr<const WitnessNode> right;
  std::vector<std::uint8_t> right_map;
};

class PatternSet {
 public:
  struct Entry {
    Pattern pattern;
    std::vector<std::uint8_t> card;    // per color label
    std::vector<std::uint8_t> anchor;  // per color label, 1 if used by the anchor
    std::shared_ptr<const WitnessNode> witness;
  };

  PatternSet(int m, int k) : m_(m), k_(k) {}

  int m() const { return m_; }
  int k() const { return k_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<Entry>& entries() const { return entries_; }
  bool contains(const Pattern& p) const;
  // Keeps the first entry per (a, b); returns false for duplicates.
  bool insert(Entry e);
  std::vector<Pattern> patterns() const;  // sorted
  // (vertex, color label) pairs of the stored witness of entry i.
  std::vector<std::pair<int, int>> coloring(std::size_t i) const;

 private:
  int m_;
  int k_;
  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

Pattern make_pattern(std::vector<int> a, std::vector<int> b);

// P(empty set): m unused colors.
PatternSet empty_pattern(int m, int k);
PatternSet simplicial_pattern(int v, int m, int k);
// MP(v, d) from MP(v, d-1) and P_d(v).
PatternSet merge_child_patterns(const PatternSet& merged, const PatternSet& next,
                                const Budget& budget = Budget());
// P(U + u) from P(U) and P(u).
PatternSet merge_block_vertex(const PatternSet& subset, const PatternSet& vertex,
                              const Budget& budget = Budget());
// P_d(v) from P(B - v).
PatternSet lift_block_to_cut(const PatternSet& subset, int v, const Budget& budget = Budget());

class PatternObserver {
 public:
  virtual ~PatternObserver() = default;
  virtual void on_subset(int /*block*/, const std::vector<int>& /*U*/, const PatternSet&) {}
  virtual void on_lift(int /*v*/, int /*d*/, const PatternSet&) {}
  virtual void on_merge(int /*v*/, int /*d*/, const PatternSet&) {}
  virtual void on_vertex(int /*v*/, const PatternSet&) {}
};

// P(root) for the component containing `root`, which is treated as the
// top of the recursion. Throws BudgetExceeded.
PatternSet all_patterns(const BlockCutTree& tree, int root, int m, int k,
                        const Budget& budget = Budget(), PatternObserver* observer = nullptr);

// Unit jobs on identical machines: a schedule with at most k jobs per
// machine, or nullopt.
std::optional<Schedule> decide_bounded_makespan(const Instance& inst, int k,
                                                const Budget& budget = Budget());

// Smallest feasible k, searched upward from ceil(n/m) to the greedy value.
struct ExactUnitResult {
  Schedule schedule;
  int k = 0;
};
ExactUnitResult exact_unit_cmax(const Instance& inst, const Budget& budget = Budget());

}  // namespace bsched
