#include "blocksched/tw_fptas.hpp"

#include <algorithm>
#include <cstring>
#include <functional>
#include <numeric>
#include <string>
#include <unordered_map>

#include "blocksched/errors.hpp"

namespace bsched {

namespace {

using Perm = std::vector<std::uint8_t>;

struct Table {
  std::vector<int> jobs;
  std::vector<std::int32_t> loads;  // m per state
  std::vector<std::int8_t> assign;  // |jobs| per state, machine labels
  std::vector<std::int8_t> full;    // n per state, only without trimming
  std::vector<int> back1, back2;
  std::vector<std::uint8_t> perm1, perm2;  // m per state, symmetric mode only
  std::unordered_map<std::string, int> index;
  int size() const { return static_cast<int>(back1.size()); }
};

struct Intermediate {
  int sp;
  int x1;
  std::vector<std::int32_t> loads;
  Perm pi1;
};

class Solver {
 public:
  Solver(const Instance& inst, const TreeDecomposition& td, std::int64_t C, Rational eps,
         const Budget& budget, const FptasOptions& opts)
      : inst_(inst), td_(td), budget_(budget), n_(inst.n()), m_(inst.m()) {
    trim_ = opts.trim;
    sym_ = opts.symmetry < 0 ? inst.env.kind == EnvKind::Identical : opts.symmetry != 0;
    if (!trim_) sym_ = false;
    if (sym_ && inst.env.kind != EnvKind::Identical)
      throw InvalidInput("machine symmetry needs identical machines");
    if (m_ > 127) throw InvalidInput("too many machines for the treewidth DP");
    const ScaledTimes st = scaled_times(inst);
    // floor(t * n / (eps * C)) units of eps*C/n; capacity floor(n / eps).
    const __int128 num = eps.numerator(), den = eps.denominator();
    rp_.assign(m_, std::vector<std::int64_t>(n_, 0));
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < n_; ++j)
        rp_[i][j] = static_cast<std::int64_t>(static_cast<__int128>(st.t[i][j]) * n_ * den /
                                              (num * C));
    cap_ = static_cast<std::int64_t>(static_cast<__int128>(n_) * den / num);
    if (cap_ > INT32_MAX) throw InvalidInput("epsilon too small for the load grid");
  }

  std::optional<Schedule> run() {
    tables_.assign(td_.bags.size(), Table{});
    std::vector<int> post;
    std::vector<std::pair<int, bool>> stack{{td_.root, false}};
    while (!stack.empty()) {
      auto [v, done] = stack.back();
      stack.pop_back();
      if (done) {
        post.push_back(v);
        continue;
      }
      stack.push_back({v, true});
      for (auto it = td_.children[v].rbegin(); it != td_.children[v].rend(); ++it)
        stack.push_back({*it, false});
    }
    for (int v : post) {
      Table& t = tables_[v];
      t.jobs = td_.bags[v];
      std::sort(t.jobs.begin(), t.jobs.end());
      if (td_.children[v].empty())
        leaf(t);
      else
        join(t, tables_[td_.children[v][0]], tables_[td_.children[v][1]]);
      if (t.size() == 0) return std::nullopt;
    }
    return decode();
  }

 private:
  std::vector<std::vector<std::int8_t>> bag_assignments(const std::vector<int>& jobs) const {
    std::vector<std::vector<std::int8_t>> out;
    std::vector<std::int8_t> cur(jobs.size(), -1);
    std::function<void(std::size_t, int)> rec = [&](std::size_t p, int used) {
      if (p == jobs.size()) {
        out.push_back(cur);
        return;
      }
      const int hi = sym_ ? std::min(m_ - 1, used) : m_ - 1;
      for (int l = 0; l <= hi; ++l) {
        bool clash = false;
        for (std::size_t q = 0; q < p; ++q)
          if (cur[q] == l && inst_.graph.adjacent(jobs[p], jobs[q])) clash = true;
        if (clash) continue;
        cur[p] = static_cast<std::int8_t>(l);
        rec(p + 1, std::max(used, l + 1));
      }
    };
    rec(0, 0);
    return out;
  }

  std::string key_of(const std::int32_t* loads, const std::int8_t* assign, int bag,
                     const std::int8_t* full) const {
    std::string k(reinterpret_cast<const char*>(loads), m_ * sizeof(std::int32_t));
    k.append(reinterpret_cast<const char*>(assign), bag);
    if (full) k.append(reinterpret_cast<const char*>(full), n_);
    return k;
  }

  void charge(const Table& t) {
    bytes_ += 64 + m_ * 4 + t.jobs.size() + (sym_ ? 2 * m_ : 0) + (trim_ ? 0 : n_);
    budget_.check_memory(bytes_);
    if ((++ticks_ & 1023) == 0) budget_.check_time();
  }

  bool insert(Table& t, const std::vector<std::int32_t>& loads, const std::vector<std::int8_t>& assign,
              const std::vector<std::int8_t>* full, int b1, int b2, const Perm* p1, const Perm* p2) {
    const int bag = static_cast<int>(t.jobs.size());
    auto [it, fresh] = t.index.emplace(
        key_of(loads.data(), assign.data(), bag, full ? full->data() : nullptr), t.size());
    if (!fresh) return false;
    t.loads.insert(t.loads.end(), loads.begin(), loads.end());
    t.assign.insert(t.assign.end(), assign.begin(), assign.end());
    if (full) t.full.insert(t.full.end(), full->begin(), full->end());
    t.back1.push_back(b1);
    t.back2.push_back(b2);
    if (sym_) {
      t.perm1.insert(t.perm1.end(), p1->begin(), p1->end());
      t.perm2.insert(t.perm2.end(), p2->begin(), p2->end());
    }
    charge(t);
    return true;
  }

  // Relabels so bag jobs take 0,1,.. in order and the rest sort by load.
  Perm canonical(const std::vector<std::int32_t>& loads, const std::vector<std::int8_t>& assign) const {
    Perm kappa(m_, 255);
    int next = 0;
    for (auto l : assign)
      if (kappa[l] == 255) kappa[l] = static_cast<std::uint8_t>(next++);
    std::vector<int> rest;
    for (int l = 0; l < m_; ++l)
      if (kappa[l] == 255) rest.push_back(l);
    std::stable_sort(rest.begin(), rest.end(), [&](int a, int b) { return loads[a] > loads[b]; });
    for (int l : rest) kappa[l] = static_cast<std::uint8_t>(next++);
    return kappa;
  }

  void leaf(Table& t) {
    const Perm id = identity();
    for (const auto& a : bag_assignments(t.jobs)) {
      std::vector<std::int32_t> loads(m_, 0);
      bool ok = true;
      for (std::size_t p = 0; p < t.jobs.size(); ++p) {
        loads[a[p]] += static_cast<std::int32_t>(rp_[a[p]][t.jobs[p]]);
        if (loads[a[p]] > cap_) ok = false;
      }
      if (!ok) continue;
      std::vector<std::int8_t> full;
      if (!trim_) {
        full.assign(n_, -1);
        for (std::size_t p = 0; p < t.jobs.size(); ++p) full[t.jobs[p]] = a[p];
      }
      insert(t, loads, a, trim_ ? nullptr : &full, -1, -1, &id, &id);
    }
  }

  Perm identity() const {
    Perm p(m_);
    std::iota(p.begin(), p.end(), 0);
    return p;
  }

  // Label maps from child state x into the node's labels that agree with
  // s' on the shared jobs. Without symmetry only the identity qualifies.
  void arrangements(const Table& child, int x, const std::vector<std::pair<int, int>>& shared,
                    const std::vector<std::int8_t>& sp, std::vector<Perm>& out) const {
    out.clear();
    const int cb = static_cast<int>(child.jobs.size());
    const std::int8_t* ca = child.assign.data() + static_cast<std::size_t>(x) * cb;
    if (!sym_) {
      for (auto [cp, np] : shared)
        if (ca[cp] != sp[np]) return;
      out.push_back(identity());
      return;
    }
    Perm pi(m_, 255);
    std::vector<char> taken(m_, 0);
    for (auto [cp, np] : shared) {
      const int c = ca[cp], v = sp[np];
      if (pi[c] == 255) {
        if (taken[v]) return;
        pi[c] = static_cast<std::uint8_t>(v);
        taken[v] = 1;
      } else if (pi[c] != v) {
        return;
      }
    }
    const std::int32_t* cl = child.loads.data() + static_cast<std::size_t>(x) * m_;
    std::vector<int> free_c, free_n;
    for (int l = 0; l < m_; ++l) {
      if (pi[l] == 255) free_c.push_back(l);
      if (!taken[l]) free_n.push_back(l);
    }
    std::stable_sort(free_c.begin(), free_c.end(), [&](int a, int b) { return cl[a] < cl[b]; });
    std::vector<std::int32_t> vals;
    for (int l : free_c) vals.push_back(cl[l]);
    do {
      Perm p = pi;
      std::vector<char> used(free_c.size(), 0);
      for (std::size_t pos = 0; pos < free_n.size(); ++pos) {
        for (std::size_t c = 0; c < free_c.size(); ++c)
          if (!used[c] && cl[free_c[c]] == vals[pos]) {
            used[c] = 1;
            p[free_c[c]] = static_cast<std::uint8_t>(free_n[pos]);
            break;
          }
      }
      out.push_back(std::move(p));
    } while (std::next_permutation(vals.begin(), vals.end()));
  }

  std::vector<std::pair<int, int>> shared_positions(const Table& child, const Table& node) const {
    std::vector<std::pair<int, int>> out;
    for (std::size_t cp = 0; cp < child.jobs.size(); ++cp) {
      auto it = std::lower_bound(node.jobs.begin(), node.jobs.end(), child.jobs[cp]);
      if (it != node.jobs.end() && *it == child.jobs[cp])
        out.emplace_back(static_cast<int>(cp), static_cast<int>(it - node.jobs.begin()));
    }
    return out;
  }

  // Groups child states by the labels of the shared jobs (all in one group
  // under symmetry, where labels are matched by arrangement instead).
  std::unordered_map<std::string, std::vector<int>> group(const Table& child,
                                                          const std::vector<std::pair<int, int>>& shared) const {
    std::unordered_map<std::string, std::vector<int>> g;
    const int cb = static_cast<int>(child.jobs.size());
    for (int x = 0; x < child.size(); ++x) {
      std::string k;
      if (!sym_)
        for (auto [cp, np] : shared) k.push_back(child.assign[static_cast<std::size_t>(x) * cb + cp]);
      g[k].push_back(x);
    }
    return g;
  }

  std::string projection(const std::vector<std::int8_t>& sp,
                         const std::vector<std::pair<int, int>>& shared) const {
    std::string k;
    if (!sym_)
      for (auto [cp, np] : shared) k.push_back(sp[np]);
    return k;
  }

  void join(Table& t, const Table& c1, const Table& c2) {
    const auto sh1 = shared_positions(c1, t), sh2 = shared_positions(c2, t);
    const int bag = static_cast<int>(t.jobs.size());
    std::vector<char> in1(bag, 0), in2(bag, 0);
    for (auto [cp, np] : sh1) in1[np] = 1;
    for (auto [cp, np] : sh2) in2[np] = 1;
    const auto g1 = group(c1, sh1), g2 = group(c2, sh2);
    const auto assigns = bag_assignments(t.jobs);

    std::vector<Intermediate> mids;
    std::unordered_map<std::string, int> mid_index;
    std::vector<Perm> arr;
    for (int s = 0; s < static_cast<int>(assigns.size()); ++s) {
      const auto& sp = assigns[s];
      std::vector<std::int32_t> intro(m_, 0);
      for (int p = 0; p < bag; ++p)
        if (!in1[p] && !in2[p]) intro[sp[p]] += static_cast<std::int32_t>(rp_[sp[p]][t.jobs[p]]);
      auto it = g1.find(projection(sp, sh1));
      if (it == g1.end()) continue;
      for (int x1 : it->second) {
        arrangements(c1, x1, sh1, sp, arr);
        const std::int32_t* l1 = c1.loads.data() + static_cast<std::size_t>(x1) * m_;
        for (auto& pi : arr) {
          std::vector<std::int32_t> loads = intro;
          bool ok = true;
          for (int l = 0; l < m_; ++l) {
            loads[pi[l]] += l1[l];
          }
          for (int l = 0; l < m_; ++l)
            if (loads[l] > cap_) ok = false;
          if (!ok) continue;
          std::string key(reinterpret_cast<const char*>(loads.data()), m_ * sizeof(std::int32_t));
          key.append(reinterpret_cast<const char*>(&s), sizeof(s));
          if (!trim_) key.append(reinterpret_cast<const char*>(&x1), sizeof(x1));
          if (mid_index.emplace(key, static_cast<int>(mids.size())).second) {
            mids.push_back({s, x1, std::move(loads), std::move(pi)});
            bytes_ += 64 + m_ * 5;
            budget_.check_memory(bytes_);
          }
        }
      }
      budget_.check_time();
    }

    for (const auto& mid : mids) {
      const auto& sp = assigns[mid.sp];
      std::vector<std::int32_t> both(m_, 0);
      for (int p = 0; p < bag; ++p)
        if (in1[p] && in2[p]) both[sp[p]] += static_cast<std::int32_t>(rp_[sp[p]][t.jobs[p]]);
      auto it = g2.find(projection(sp, sh2));
      if (it == g2.end()) continue;
      for (int x2 : it->second) {
        arrangements(c2, x2, sh2, sp, arr);
        const std::int32_t* l2 = c2.loads.data() + static_cast<std::size_t>(x2) * m_;
        for (auto& pi : arr) {
          std::vector<std::int32_t> loads = mid.loads;
          bool ok = true;
          for (int l = 0; l < m_; ++l) loads[pi[l]] += l2[l];
          for (int l = 0; l < m_; ++l) {
            loads[l] -= both[l];
            if (loads[l] > cap_) ok = false;
          }
          if (!ok) continue;
          std::vector<std::int8_t> full;
          if (!trim_) {
            full.assign(n_, -1);
            const std::int8_t* f1 = c1.full.data() + static_cast<std::size_t>(mid.x1) * n_;
            const std::int8_t* f2 = c2.full.data() + static_cast<std::size_t>(x2) * n_;
            for (int j = 0; j < n_; ++j) full[j] = f1[j] >= 0 ? f1[j] : f2[j];
            for (int p = 0; p < bag; ++p) full[t.jobs[p]] = sp[p];
          }
          if (sym_) {
            const Perm kappa = canonical(loads, sp);
            std::vector<std::int32_t> cl(m_);
            for (int l = 0; l < m_; ++l) cl[kappa[l]] = loads[l];
            std::vector<std::int8_t> ca(bag);
            for (int p = 0; p < bag; ++p) ca[p] = static_cast<std::int8_t>(kappa[sp[p]]);
            Perm p1(m_), p2(m_);
            for (int l = 0; l < m_; ++l) {
              p1[l] = kappa[mid.pi1[l]];
              p2[l] = kappa[pi[l]];
            }
            insert(t, cl, ca, nullptr, mid.x1, x2, &p1, &p2);
          } else {
            insert(t, loads, sp, trim_ ? nullptr : &full, mid.x1, x2, nullptr, nullptr);
          }
        }
      }
    }
  }

  std::optional<Schedule> decode() const {
    Schedule s;
    s.assign.assign(n_, -1);
    struct Item {
      int node;
      int state;
      Perm map;
    };
    std::vector<Item> stack{{td_.root, 0, identity()}};
    while (!stack.empty()) {
      Item it = std::move(stack.back());
      stack.pop_back();
      const Table& t = tables_[it.node];
      const int bag = static_cast<int>(t.jobs.size());
      for (int p = 0; p < bag; ++p) {
        const int machine = it.map[t.assign[static_cast<std::size_t>(it.state) * bag + p]];
        if (s.assign[t.jobs[p]] >= 0 && s.assign[t.jobs[p]] != machine) return std::nullopt;
        s.assign[t.jobs[p]] = machine;
      }
      const auto& ch = td_.children[it.node];
      if (ch.empty()) continue;
      for (int side = 0; side < 2; ++side) {
        Perm map(m_);
        for (int l = 0; l < m_; ++l) {
          const int via = sym_ ? (side == 0 ? t.perm1 : t.perm2)[static_cast<std::size_t>(it.state) * m_ + l] : l;
          map[l] = it.map[via];
        }
        stack.push_back({ch[side], side == 0 ? t.back1[it.state] : t.back2[it.state], std::move(map)});
      }
    }
    for (int a : s.assign)
      if (a < 0) return std::nullopt;
    return s;
  }

  const Instance& inst_;
  const TreeDecomposition& td_;
  const Budget& budget_;
  int n_, m_;
  bool sym_ = false;
  bool trim_ = true;
  std::vector<std::vector<std::int64_t>> rp_;
  std::int64_t cap_ = 0;
  std::vector<Table> tables_;
  std::size_t bytes_ = 0;
  std::size_t ticks_ = 0;
};

}  // namespace

std::optional<Schedule> fptas_feasible(const Instance& inst, const TreeDecomposition& td,
                                       std::int64_t C, Rational eps, const Budget& budget,
                                       const FptasOptions& opts) {
  if (eps <= 0) throw InvalidInput("epsilon must be positive");
  if (C <= 0) return std::nullopt;
  if (inst.n() == 0) return Schedule{};
  Solver solver(inst, td, C, eps, budget, opts);
  return solver.run();
}

Schedule fptas(const Instance& inst, Rational eps, const Budget& budget, const FptasOptions& opts) {
  if (inst.graph.max_block_size() > inst.m()) throw Infeasible("a block is larger than m");
  const int n = inst.n();
  if (n == 0) return Schedule{};
  const TreeDecomposition td = tree_decomposition(inst.graph);
  const ScaledTimes st = scaled_times(inst);
  std::int64_t lo = 0, tmax = 0;
  for (int j = 0; j < n; ++j) {
    std::int64_t best = st.t[0][j];
    for (int i = 0; i < inst.m(); ++i) {
      best = std::min(best, st.t[i][j]);
      tmax = std::max(tmax, st.t[i][j]);
    }
    lo = std::max(lo, best);
  }
  std::int64_t hi = n * tmax;
  std::optional<Schedule> best;
  ExactTime best_ms;
  auto consider = [&](const std::optional<Schedule>& s) {
    if (!s) return false;
    const ExactTime ms = makespan(inst, *s);
    if (!best || ms < best_ms) {
      best = s;
      best_ms = ms;
    }
    return true;
  };
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (consider(fptas_feasible(inst, td, mid, eps, budget, opts)))
      hi = mid;
    else
      lo = mid + 1;
  }
  if (!best) consider(fptas_feasible(inst, td, hi, eps, budget, opts));
  if (!best) throw Infeasible("no schedule found");
  return *best;
}

}  // namespace bsched
