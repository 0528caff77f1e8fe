#include "blocksched/kblock.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "blocksched/errors.hpp"

namespace bsched {

using boost::multiprecision::cpp_int;

namespace {

void require_uniform(const Instance& inst) {
  if (inst.env.kind == EnvKind::Unrelated)
    throw InvalidInput("algorithm needs identical or uniform machines");
}

cpp_int ipow(std::int64_t base, int exp) {
  cpp_int r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

Schedule k_approx(const Instance& inst, const Budget& budget) {
  require_uniform(inst);
  const auto& g = inst.graph;
  const int n = g.n(), m = inst.m();
  if (g.max_block_size() > m) throw Infeasible("a block is larger than m");
  const auto speeds = inst.speeds();
  std::vector<int> fastest(m);
  std::iota(fastest.begin(), fastest.end(), 0);
  std::stable_sort(fastest.begin(), fastest.end(),
                   [&](int a, int b) { return speeds[a] > speeds[b]; });

  std::vector<std::vector<int>> sorted_jobs(g.block_count());
  std::vector<std::vector<int>> block_cuts(g.block_count());
  for (int b = 0; b < g.block_count(); ++b) {
    for (int v : g.block(b)) (g.is_cut(v) ? block_cuts[b] : sorted_jobs[b]).push_back(v);
    std::stable_sort(sorted_jobs[b].begin(), sorted_jobs[b].end(),
                     [&](int x, int y) { return inst.proc[x] > inst.proc[y]; });
  }

  const auto& cuts = g.cut_preorder();
  std::vector<std::vector<int>> earlier(cuts.size());
  for (std::size_t a = 0; a < cuts.size(); ++a)
    for (std::size_t b = 0; b < a; ++b)
      if (g.adjacent(cuts[a], cuts[b])) earlier[a].push_back(cuts[b]);

  Schedule sigma;
  sigma.assign.assign(n, -1);
  std::optional<Schedule> best;
  ExactTime best_ms;

  auto complete = [&]() {
    budget.check_time();
    for (int b = 0; b < g.block_count(); ++b) {
      int skip = 0;
      for (std::size_t i = 0; i < sorted_jobs[b].size(); ++i) {
        auto held = [&](int pos) {
          for (int c : block_cuts[b])
            if (sigma.assign[c] == fastest[pos]) return true;
          return false;
        };
        while (held(static_cast<int>(i) + skip)) ++skip;
        sigma.assign[sorted_jobs[b][i]] = fastest[i + skip];
      }
    }
    const ExactTime ms = makespan(inst, sigma);
    if (!best || ms < best_ms) {
      best = sigma;
      best_ms = ms;
    }
  };

  std::function<void(std::size_t)> rec = [&](std::size_t depth) {
    if (depth == cuts.size()) {
      complete();
      return;
    }
    const int v = cuts[depth];
    for (int i = 0; i < m; ++i) {
      bool clash = false;
      for (int u : earlier[depth])
        if (sigma.assign[u] == i) clash = true;
      if (clash) continue;
      sigma.assign[v] = i;
      rec(depth + 1);
    }
    sigma.assign[v] = -1;
  };
  rec(0);
  if (!best) throw Infeasible("no valid cut-vertex assignment");
  return *best;
}

ConfigurationSearch::ConfigurationSearch(const Instance& inst, ExactTime guess, Rational eps,
                                         const Budget& budget)
    : inst_(inst), guess_(guess), budget_(budget) {
  require_uniform(inst);
  if (eps <= 0) throw InvalidInput("epsilon must be positive");
  if (guess <= 0) throw InvalidInput("guess must be positive");
  const auto& g = inst.graph;
  const int n = g.n(), m = inst.m();
  d_ = eps.denominator();
  q_ = eps.numerator() + eps.denominator();
  blocks_ = g.block_count();

  r_.assign(n, 0);
  int top_r = 0;
  for (int j = 0; j < n; ++j) {
    int r = 0;
    cpp_int qp = q_, dp = d_;
    while (qp <= cpp_int(inst.proc[j]) * dp) {
      ++r;
      qp *= q_;
      dp *= d_;
    }
    r_[j] = r;
    top_r = std::max(top_r, r);
  }

  const auto speeds = inst.speeds();
  const std::int64_t cn = guess.numerator(), cd = guess.denominator();
  e_.assign(m, 0);
  for (int i = 0; i < m; ++i) {
    const cpp_int target_num = cpp_int(cn) * speeds[i];
    // smallest e with (q/d)^e >= cn*s/cd
    int e = 0;
    if (target_num <= cd) {
      cpp_int dp = d_, qp = q_;
      while (dp * cd >= target_num * qp) {
        --e;
        dp *= d_;
        qp *= q_;
      }
    } else {
      cpp_int qp = 1, dp = 1;
      while (qp * cd < target_num * dp) {
        ++e;
        qp *= q_;
        dp *= d_;
      }
    }
    e_[i] = e;
  }
  order_.resize(m);
  std::iota(order_.begin(), order_.end(), 0);
  std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
    if (e_[a] != e_[b]) return e_[a] < e_[b];
    return speeds[a] < speeds[b];
  });
  const int top_e = m > 0 ? e_[order_.back()] : 0;
  if (n > 0 && top_r > top_e) rejected_early_ = true;

  // (q/d)^tau >= blocks / eps
  tau_ = 0;
  {
    cpp_int qp = 1, dp = 1;
    while (qp * eps.numerator() < cpp_int(std::max(blocks_, 1)) * eps.denominator() * dp) {
      ++tau_;
      qp *= q_;
      dp *= d_;
    }
  }
  width_ = tau_ + 1;
  basis_.assign(m + 1, 0);
  for (int p = 0; p < m; ++p) basis_[p + 1] = std::max(e_[order_[p]] - tau_, 0);

  cut_index_.assign(n, -1);
  for (std::size_t c = 0; c < g.cut_vertices().size(); ++c) cut_index_[g.cut_vertices()[c]] = static_cast<int>(c);
  simplicial_.assign(blocks_, {});
  count_by_r_.assign(blocks_, std::vector<int>(top_r + 1, 0));
  for (int b = 0; b < blocks_; ++b)
    for (int v : g.block(b))
      if (!g.is_cut(v)) {
        simplicial_[b].push_back(v);
        ++count_by_r_[b][r_[v]];
      }

  weight_.resize(top_r + 1);
  for (int x = 0; x <= top_r; ++x) weight_[x] = ipow(q_, x) * ipow(d_, top_r - x) * cd;
  limit_.resize(m);
  const cpp_int dtop = ipow(d_, top_r);
  for (int i = 0; i < m; ++i) limit_[i] = cpp_int(cn) * speeds[i] * dtop;
}

std::string ConfigurationSearch::key(const Config& c) {
  return std::string(reinterpret_cast<const char*>(c.data()), c.size() * sizeof(std::uint16_t));
}

ConfigurationSearch::Config ConfigurationSearch::initial() const {
  const int cuts = inst_.graph.cut_count();
  Config u(blocks_ + blocks_ * width_ + cuts, 0);
  const int top = static_cast<int>(weight_.size()) - 1;
  for (int s = 0; s < blocks_; ++s)
    for (int t = 0; t < width_ && t <= top; ++t) u[blocks_ + s * width_ + t] = count_by_r_[s][t];
  for (int c = 0; c < cuts; ++c) u[blocks_ + blocks_ * width_ + c] = 1;
  return u;
}

ConfigurationSearch::Config ConfigurationSearch::convert(const Config& u, int from, int to) const {
  if (from == to) return u;
  Config out = u;
  const int top = static_cast<int>(weight_.size()) - 1;
  auto cnt = [&](int s, int r) { return r >= 0 && r <= top ? count_by_r_[s][r] : 0; };
  for (int s = 0; s < blocks_; ++s) {
    const std::uint16_t* band = &u[blocks_ + s * width_];
    int small = u[s];
    for (int t = 0; t < width_ && from + t < to; ++t) small += band[t];
    for (int r = from + tau_ + 1; r < to; ++r) small += cnt(s, r);
    out[s] = static_cast<std::uint16_t>(small);
    for (int t = 0; t < width_; ++t) {
      const int exponent = to + t;
      out[blocks_ + s * width_ + t] = static_cast<std::uint16_t>(
          exponent <= from + tau_ ? band[exponent - from] : cnt(s, exponent));
    }
  }
  return out;
}

void ConfigurationSearch::expand(const Config& u, int pred, int pos, Layer& out) {
  const auto& g = inst_.graph;
  const int machine = order_[pos];
  const int l = basis_[pos + 1];
  const int top = static_cast<int>(weight_.size()) - 1;
  const int cuts = g.cut_count();
  const int flag0 = blocks_ + blocks_ * width_;
  const cpp_int& limit = limit_[machine];

  std::vector<char> blocked(blocks_, 0);
  Choice choice;
  choice.per_block.assign(blocks_, -1);
  Config next = u;

  std::function<void(int, const cpp_int&)> blocks_rec;
  blocks_rec = [&](int s, const cpp_int& sum) {
    if (s == blocks_) {
      budget_.check_time();
      auto [it, fresh] = out.index.emplace(key(next), static_cast<int>(out.configs.size()));
      if (fresh) {
        out.configs.push_back(next);
        out.prev.push_back(pred);
        out.choice.push_back(choice);
        bytes_ += 96 + next.size() * 6 + choice.cuts.size() * 4;
        budget_.check_memory(bytes_);
      }
      return;
    }
    blocks_rec(s + 1, sum);
    if (blocked[s]) return;
    if (next[s] > 0) {
      --next[s];
      choice.per_block[s] = -2;
      blocks_rec(s + 1, sum);
      choice.per_block[s] = -1;
      ++next[s];
    }
    for (int t = 0; t < width_ && l + t <= top; ++t) {
      std::uint16_t& slot = next[blocks_ + s * width_ + t];
      if (slot == 0) continue;
      const cpp_int ns = sum + weight_[l + t];
      if (ns > limit) break;
      --slot;
      choice.per_block[s] = static_cast<std::int16_t>(t);
      blocks_rec(s + 1, ns);
      choice.per_block[s] = -1;
      ++slot;
    }
  };

  std::function<void(int, const cpp_int&)> cuts_rec = [&](int c, const cpp_int& sum) {
    if (c == cuts) {
      blocks_rec(0, sum);
      return;
    }
    cuts_rec(c + 1, sum);
    if (next[flag0 + c] == 0) return;
    const int v = g.cut_vertices()[c];
    for (int b : g.blocks_of(v))
      if (blocked[b]) return;
    const cpp_int ns = sum + weight_[r_[v]];
    if (ns > limit) return;
    for (int b : g.blocks_of(v)) blocked[b] = 1;
    next[flag0 + c] = 0;
    choice.cuts.push_back(v);
    cuts_rec(c + 1, ns);
    choice.cuts.pop_back();
    next[flag0 + c] = 1;
    for (int b : g.blocks_of(v)) blocked[b] = 0;
  };
  cuts_rec(0, cpp_int(0));
}

bool ConfigurationSearch::run() {
  layers_.clear();
  accepted_ = false;
  if (rejected_early_) return false;
  const int m = inst_.m();
  Layer first;
  Config u0 = initial();
  first.index.emplace(key(u0), 0);
  first.configs.push_back(std::move(u0));
  first.prev.push_back(-1);
  first.choice.push_back({});
  layers_.push_back(std::move(first));
  for (int pos = 0; pos < m; ++pos) {
    Layer next;
    const Layer& cur = layers_[pos];
    for (int idx = 0; idx < static_cast<int>(cur.configs.size()); ++idx)
      expand(convert(cur.configs[idx], basis_[pos], basis_[pos + 1]), idx, pos, next);
    layers_.push_back(std::move(next));
    if (layers_.back().configs.empty()) return false;
  }
  const Config zero(layers_.back().configs.front().size(), 0);
  accepted_ = layers_.back().index.count(key(zero)) != 0;
  return accepted_;
}

std::optional<Schedule> ConfigurationSearch::schedule() const {
  if (!accepted_) return std::nullopt;
  const int m = inst_.m();
  const Config zero(layers_.back().configs.front().size(), 0);
  int at = layers_.back().index.at(key(zero));
  std::vector<const Choice*> path(m);
  for (int pos = m; pos >= 1; --pos) {
    path[pos - 1] = &layers_[pos].choice[at];
    at = layers_[pos].prev[at];
  }
  Schedule s;
  s.assign.assign(inst_.n(), -1);
  std::vector<std::vector<int>> pool = simplicial_;
  for (int pos = 0; pos < m; ++pos) {
    const int machine = order_[pos];
    const int l = basis_[pos + 1];
    for (int v : path[pos]->cuts) s.assign[v] = machine;
    for (int b = 0; b < blocks_; ++b) {
      const int c = path[pos]->per_block[b];
      if (c == -1) continue;
      auto it = std::find_if(pool[b].begin(), pool[b].end(), [&](int j) {
        return c == -2 ? r_[j] < l : r_[j] == l + c;
      });
      if (it == pool[b].end()) return std::nullopt;
      s.assign[*it] = machine;
      pool[b].erase(it);
    }
  }
  for (int a : s.assign)
    if (a < 0) return std::nullopt;
  return s;
}

ConfigurationSearch::Config ConfigurationSearch::residual(int layer,
                                                          const std::vector<char>& scheduled) const {
  const auto& g = inst_.graph;
  const int l = basis_[layer];
  Config u(blocks_ + blocks_ * width_ + g.cut_count(), 0);
  for (int s = 0; s < blocks_; ++s)
    for (int j : simplicial_[s]) {
      if (scheduled[j]) continue;
      if (r_[j] < l)
        ++u[s];
      else if (r_[j] - l < width_)
        ++u[blocks_ + s * width_ + (r_[j] - l)];
    }
  for (int c = 0; c < g.cut_count(); ++c)
    if (!scheduled[g.cut_vertices()[c]]) u[blocks_ + blocks_ * width_ + c] = 1;
  return u;
}

bool ConfigurationSearch::contains_residual(int layer, const Schedule& sigma) const {
  if (layer < 0 || layer >= static_cast<int>(layers_.size())) return false;
  std::vector<char> on_prefix(inst_.m(), 0);
  for (int p = 0; p < layer; ++p) on_prefix[order_[p]] = 1;
  std::vector<char> scheduled(inst_.n(), 0);
  for (int j = 0; j < inst_.n(); ++j) scheduled[j] = on_prefix[sigma.assign[j]];
  return layers_[layer].index.count(key(residual(layer, scheduled))) != 0;
}

std::optional<Schedule> ptas_core(const Instance& inst, ExactTime guess, Rational eps,
                                  const Budget& budget) {
  ConfigurationSearch search(inst, guess, eps, budget);
  if (!search.run()) return std::nullopt;
  return search.schedule();
}

Rational internal_epsilon(Rational eps) {
  if (eps <= 0) throw InvalidInput("epsilon must be positive");
  for (int t = 1; t < 62; ++t) {
    const Rational x(1, std::int64_t(1) << t);
    if ((1 + x) * (1 + x) <= 1 + eps) return x;
  }
  throw InvalidInput("epsilon too small");
}

Schedule ptas_uniform(const Instance& inst, Rational eps, const Budget& budget) {
  require_uniform(inst);
  const int n = inst.n();
  if (inst.graph.max_block_size() > inst.m()) throw Infeasible("a block is larger than m");
  if (n == 0) return Schedule{};
  const Rational inner = internal_epsilon(eps);

  Schedule best = k_approx(inst, budget);
  const ExactTime upper = makespan(inst, best);
  ExactTime best_ms = upper;
  auto consider = [&](const std::optional<Schedule>& s) {
    if (!s) return false;
    const ExactTime ms = makespan(inst, *s);
    if (ms < best_ms) {
      best = *s;
      best_ms = ms;
    }
    return true;
  };

  const int k = inst.graph.block_count();
  if (k <= 1) {
    consider(ptas_core(inst, upper, inner, budget));
    return best;
  }
  const ExactTime lower = upper / k;
  if (consider(ptas_core(inst, lower, inner, budget))) return best;

  std::int64_t scale = 1;
  for (auto s : inst.speeds()) scale = std::lcm(scale, s);
  std::int64_t q_lo = boost::rational_cast<std::int64_t>(lower * scale);  // floor
  if (ExactTime(q_lo, scale) > lower) --q_lo;
  std::int64_t q_hi = boost::rational_cast<std::int64_t>(upper * scale);
  while (q_hi - q_lo > 1) {
    std::int64_t mid;
    if (q_lo > 0 && q_hi > 2 * q_lo) {
      mid = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(q_lo) * q_hi));
      mid = std::clamp(mid, q_lo + 1, q_hi - 1);
    } else {
      mid = q_lo + (q_hi - q_lo) / 2;
    }
    if (consider(ptas_core(inst, ExactTime(mid, scale), inner, budget)))
      q_hi = mid;
    else
      q_lo = mid;
  }
  return best;
}

}  // namespace bsched
