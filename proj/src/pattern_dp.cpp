#include "blocksched/pattern_dp.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

#include "blocksched/errors.hpp"
#include "blocksched/greedy.hpp"

namespace bsched {

namespace {

constexpr std::size_t kEntryBytes = 192;

struct Tracker {
  const Budget& budget;
  std::size_t entries = 0;
  std::size_t ticks = 0;

  void add(std::size_t count) {
    entries += count;
    budget.check_memory(entries * kEntryBytes);
    if ((++ticks & 255) == 0) budget.check_time();
  }
  void tick() {
    if ((++ticks & 255) == 0) budget.check_time();
  }
};

std::string key_of(const Pattern& p) {
  std::string s;
  s.reserve(p.a.size() + p.b.size());
  for (int x : p.a) s.push_back(static_cast<char>(x));
  for (int x : p.b) s.push_back(static_cast<char>(x));
  return s;
}

Pattern pattern_of(const std::vector<std::uint8_t>& card,
                   const std::vector<std::uint8_t>& anchor, int k) {
  Pattern p{std::vector<int>(k + 1, 0), std::vector<int>(k + 1, 0)};
  for (std::size_t l = 0; l < card.size(); ++l) (anchor[l] ? p.a : p.b)[card[l]]++;
  return p;
}

void decode(const WitnessNode* node, const std::vector<std::uint8_t>& map,
            std::vector<std::pair<int, int>>& out) {
  while (node) {
    if (node->vertex >= 0) out.emplace_back(node->vertex, map[node->color]);
    if (node->right) {
      std::vector<std::uint8_t> inner(node->right_map.size());
      for (std::size_t l = 0; l < inner.size(); ++l) inner[l] = map[node->right_map[l]];
      decode(node->right.get(), inner, out);
    }
    node = node->left.get();
  }
}

enum class MergeKind { Cut, Block };

// All ways of identifying the m labels of `rhs` with the m labels of `lhs`.
// Each rhs label picks an lhs color class (role, cardinality); states are
// deduplicated by (remaining lhs classes, accumulated result classes).
void merge_pair(const PatternSet::Entry& lhs, const PatternSet::Entry& rhs, MergeKind kind,
                int m, int k, PatternSet& out, Tracker& tr) {
  const int k1 = k + 1, k2 = 2 * k1;
  std::string start(2 * k2, '\0');
  for (int l = 0; l < m; ++l) start[lhs.anchor[l] * k1 + lhs.card[l]]++;

  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    if (rhs.anchor[x] != rhs.anchor[y]) return rhs.anchor[x] > rhs.anchor[y];
    return rhs.card[x] > rhs.card[y];
  });

  struct Node {
    std::string key;
    int prev;
    int choice;
  };
  std::vector<std::vector<Node>> layers(m + 1);
  layers[0].push_back({start, -1, -1});
  for (int t = 0; t < m; ++t) {
    const int lab = order[t];
    const int c2 = rhs.card[lab];
    const bool r_anchor = rhs.anchor[lab] != 0;
    std::unordered_map<std::string, int> seen;
    const auto& cur = layers[t];
    auto& next = layers[t + 1];
    for (int idx = 0; idx < static_cast<int>(cur.size()); ++idx) {
      tr.tick();
      const std::string& key = cur[idx].key;
      for (int cls = 0; cls < k2; ++cls) {
        if (key[cls] == 0) continue;
        const int role1 = cls / k1, c1 = cls % k1;
        int nc, nrole;
        if (kind == MergeKind::Cut) {
          if (r_anchor != (role1 == 1)) continue;
          nc = r_anchor ? c1 + c2 - 1 : c1 + c2;
          nrole = role1;
        } else {
          if (r_anchor && role1 != 0) continue;
          nc = c1 + c2;
          nrole = r_anchor ? 1 : role1;
        }
        if (nc > k || nc < 0) continue;
        std::string nk = key;
        nk[cls]--;
        nk[k2 + nrole * k1 + nc]++;
        if (seen.emplace(nk, static_cast<int>(next.size())).second)
          next.push_back({std::move(nk), idx, cls});
      }
    }
    if (next.empty()) return;
  }

  for (int fin = 0; fin < static_cast<int>(layers[m].size()); ++fin) {
    const std::string& key = layers[m][fin].key;
    Pattern p{std::vector<int>(k1), std::vector<int>(k1)};
    for (int c = 0; c < k1; ++c) {
      p.b[c] = key[k2 + c];
      p.a[c] = key[k2 + k1 + c];
    }
    if (out.contains(p)) continue;

    std::vector<int> choice(m);
    for (int t = m, at = fin; t > 0; --t) {
      choice[t - 1] = layers[t][at].choice;
      at = layers[t][at].prev;
    }
    std::vector<std::vector<int>> pool(k2);
    for (int l = m - 1; l >= 0; --l) pool[lhs.anchor[l] * k1 + lhs.card[l]].push_back(l);
    PatternSet::Entry e;
    e.pattern = p;
    e.card = lhs.card;
    e.anchor = lhs.anchor;
    auto node = std::make_shared<WitnessNode>();
    node->left = lhs.witness;
    node->right = rhs.witness;
    node->right_map.assign(m, 0);
    for (int t = 0; t < m; ++t) {
      const int rl = order[t];
      const int ll = pool[choice[t]].back();
      pool[choice[t]].pop_back();
      node->right_map[rl] = static_cast<std::uint8_t>(ll);
      const bool r_anchor = rhs.anchor[rl] != 0;
      if (kind == MergeKind::Cut) {
        e.card[ll] = static_cast<std::uint8_t>(lhs.card[ll] + rhs.card[rl] - (r_anchor ? 1 : 0));
      } else {
        e.card[ll] = static_cast<std::uint8_t>(lhs.card[ll] + rhs.card[rl]);
        if (r_anchor) e.anchor[ll] = 1;
      }
    }
    e.witness = std::move(node);
    out.insert(std::move(e));
    tr.add(1);
  }
}

PatternSet merge_sets(const PatternSet& lhs, const PatternSet& rhs, MergeKind kind, Tracker& tr) {
  const int m = lhs.m(), k = lhs.k();
  PatternSet out(m, k);
  for (const auto& x : lhs.entries())
    for (const auto& y : rhs.entries()) merge_pair(x, y, kind, m, k, out, tr);
  return out;
}

bool is_empty_seed(const PatternSet& s) {
  if (s.size() != 1) return false;
  const auto& e = s.entries()[0];
  return !e.witness && std::all_of(e.card.begin(), e.card.end(), [](auto c) { return c == 0; });
}

PatternSet lift_impl(const PatternSet& subset, int v, Tracker& tr) {
  const int m = subset.m(), k = subset.k();
  PatternSet out(m, k);
  for (const auto& e : subset.entries()) {
    for (int c = 0; c < k; ++c) {
      int label = -1;
      for (int l = 0; l < m; ++l)
        if (!e.anchor[l] && e.card[l] == c) {
          label = l;
          break;
        }
      if (label < 0) continue;
      PatternSet::Entry ne;
      ne.card = e.card;
      ne.card[label] = static_cast<std::uint8_t>(c + 1);
      ne.anchor.assign(m, 0);
      ne.anchor[label] = 1;
      ne.pattern = pattern_of(ne.card, ne.anchor, k);
      auto node = std::make_shared<WitnessNode>();
      node->vertex = v;
      node->color = label;
      node->left = e.witness;
      ne.witness = std::move(node);
      if (out.insert(std::move(ne))) tr.add(1);
    }
  }
  return out;
}

int key_without(const std::vector<int>& block, int v) {
  for (int x : block)
    if (x != v) return x;
  return std::numeric_limits<int>::max();
}

struct Recursion {
  const BlockCutTree& tree;
  int m;
  int k;
  Tracker& tr;
  PatternObserver* obs;

  PatternSet vertex(int v, int parent_block) {
    std::vector<int> kids;
    for (int b : tree.blocks_of(v))
      if (b != parent_block) kids.push_back(b);
    std::stable_sort(kids.begin(), kids.end(), [&](int x, int y) {
      return key_without(tree.block(x), v) < key_without(tree.block(y), v);
    });
    PatternSet merged = simplicial_pattern(v, m, k);
    int d = 0;
    for (int b : kids) {
      ++d;
      PatternSet sub = empty_pattern(m, k);
      std::vector<int> U;
      for (int u : tree.block(b)) {
        if (u == v) continue;
        PatternSet pu = vertex(u, b);
        U.push_back(u);
        sub = is_empty_seed(sub) ? std::move(pu) : merge_sets(sub, pu, MergeKind::Block, tr);
        if (obs) obs->on_subset(b, U, sub);
      }
      PatternSet pd = lift_impl(sub, v, tr);
      if (obs) obs->on_lift(v, d, pd);
      merged = d == 1 ? std::move(pd) : merge_sets(merged, pd, MergeKind::Cut, tr);
      if (obs) obs->on_merge(v, d, merged);
    }
    if (obs) obs->on_vertex(v, merged);
    return merged;
  }
};

}  // namespace

std::string to_string(const Pattern& p) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < p.a.size(); ++i) os << (i ? "," : "") << p.a[i];
  os << ';';
  for (std::size_t i = 0; i < p.b.size(); ++i) os << (i ? "," : "") << p.b[i];
  os << ')';
  return os.str();
}

Pattern make_pattern(std::vector<int> a, std::vector<int> b) {
  return Pattern{std::move(a), std::move(b)};
}

bool PatternSet::contains(const Pattern& p) const { return index_.count(key_of(p)) != 0; }

bool PatternSet::insert(Entry e) {
  auto [it, fresh] = index_.emplace(key_of(e.pattern), entries_.size());
  if (!fresh) return false;
  entries_.push_back(std::move(e));
  return true;
}

std::vector<Pattern> PatternSet::patterns() const {
  std::vector<Pattern> out;
  for (const auto& e : entries_) out.push_back(e.pattern);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<int, int>> PatternSet::coloring(std::size_t i) const {
  std::vector<std::uint8_t> id(m_);
  std::iota(id.begin(), id.end(), 0);
  std::vector<std::pair<int, int>> out;
  decode(entries_.at(i).witness.get(), id, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PatternSet empty_pattern(int m, int k) {
  PatternSet s(m, k);
  PatternSet::Entry e;
  e.card.assign(m, 0);
  e.anchor.assign(m, 0);
  e.pattern = pattern_of(e.card, e.anchor, k);
  s.insert(std::move(e));
  return s;
}

PatternSet simplicial_pattern(int v, int m, int k) {
  PatternSet s(m, k);
  if (k < 1 || m < 1) return s;
  PatternSet::Entry e;
  e.card.assign(m, 0);
  e.anchor.assign(m, 0);
  e.card[0] = 1;
  e.anchor[0] = 1;
  e.pattern = pattern_of(e.card, e.anchor, k);
  auto node = std::make_shared<WitnessNode>();
  node->vertex = v;
  node->color = 0;
  e.witness = std::move(node);
  s.insert(std::move(e));
  return s;
}

PatternSet merge_child_patterns(const PatternSet& merged, const PatternSet& next,
                                const Budget& budget) {
  Tracker tr{budget};
  return merge_sets(merged, next, MergeKind::Cut, tr);
}

PatternSet merge_block_vertex(const PatternSet& subset, const PatternSet& vertex,
                              const Budget& budget) {
  if (is_empty_seed(subset)) return vertex;
  Tracker tr{budget};
  return merge_sets(subset, vertex, MergeKind::Block, tr);
}

PatternSet lift_block_to_cut(const PatternSet& subset, int v, const Budget& budget) {
  Tracker tr{budget};
  return lift_impl(subset, v, tr);
}

PatternSet all_patterns(const BlockCutTree& tree, int root, int m, int k, const Budget& budget,
                        PatternObserver* observer) {
  if (root < 0 || root >= tree.n()) throw InvalidInput("root vertex out of range");
  Tracker tr{budget};
  Recursion rec{tree, m, k, tr, observer};
  return rec.vertex(root, -1);
}

std::optional<Schedule> decide_bounded_makespan(const Instance& inst, int k,
                                                const Budget& budget) {
  if (inst.env.kind != EnvKind::Identical || !inst.unit_jobs())
    throw InvalidInput("bounded makespan decision needs unit jobs on identical machines");
  const int n = inst.n(), m = inst.m();
  const auto& g = inst.graph;
  if (n == 0) return Schedule{};
  if (k < 1 || g.max_block_size() > m) return std::nullopt;
  if (static_cast<long long>(k) * m < n) return std::nullopt;

  Schedule s;
  s.assign.assign(n, -1);
  if (g.component_count() == 1) {
    PatternSet top = all_patterns(g, 0, m, k, budget);
    if (top.empty()) return std::nullopt;
    for (auto [v, c] : top.coloring(0)) s.assign[v] = c;
    return s;
  }

  // Join the components through an extra vertex carrying its own color.
  std::vector<std::vector<int>> blocks = g.blocks();
  for (int r : g.roots()) blocks.push_back({g.block(r).front(), n});
  const BlockCutTree joined = BlockCutTree::from_blocks(n + 1, blocks);
  PatternSet top = all_patterns(joined, n, m + 1, k, budget);
  std::vector<int> unit(k + 1, 0);
  unit[1] = 1;
  for (std::size_t i = 0; i < top.size(); ++i) {
    if (top.entries()[i].pattern.a != unit) continue;
    const auto col = top.coloring(i);
    int dummy = -1;
    for (auto [v, c] : col)
      if (v == n) dummy = c;
    for (auto [v, c] : col)
      if (v != n) s.assign[v] = c > dummy ? c - 1 : c;
    return s;
  }
  return std::nullopt;
}

ExactUnitResult exact_unit_cmax(const Instance& inst, const Budget& budget) {
  if (inst.env.kind != EnvKind::Identical || !inst.unit_jobs())
    throw InvalidInput("exact unit makespan needs unit jobs on identical machines");
  if (inst.graph.max_block_size() > inst.m()) throw Infeasible("a block is larger than m");
  const int n = inst.n(), m = inst.m();
  if (n == 0) return {Schedule{}, 0};
  Schedule upper = m >= 2 ? greedy_unit_load_bound(inst).schedule : greedy_schedule(inst);
  const int k0 = static_cast<int>(boost::rational_cast<std::int64_t>(makespan(inst, upper)));
  for (int k = (n + m - 1) / m; k < k0; ++k) {
    if (auto s = decide_bounded_makespan(inst, k, budget)) return {*s, k};
  }
  return {upper, k0};
}

}  // namespace bsched
