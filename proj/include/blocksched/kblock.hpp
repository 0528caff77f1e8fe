#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "blocksched/budget.hpp"
#include "blocksched/model.hpp"

namespace bsched {

// Best schedule over all valid cut-vertex assignments, filling each block
// greedily onto the fastest free machines. At most k times the optimum
// for a graph with k blocks.
Schedule k_approx(const Instance& inst, const Budget& budget = Budget());

// Configuration dynamic program for one makespan guess on uniform machines.
// Processing times are rounded down and capacities up to powers of 1+eps.
class ConfigurationSearch {
 public:
  ConfigurationSearch(const Instance& inst, ExactTime guess, Rational eps,
                      const Budget& budget = Budget());

  // Runs the machine-by-machine expansion; true iff the empty
  // configuration is reached.
  bool run();
  std::optional<Schedule> schedule() const;

  bool rejected_early() const { return rejected_early_; }
  int tau() const { return tau_; }
  // Machines in processing order (non-decreasing capacity).
  const std::vector<int>& machine_order() const { return order_; }
  int basis(int layer) const { return basis_[layer]; }
  std::size_t layer_size(int layer) const { return layers_[layer].configs.size(); }
  // True iff the residual configuration of `sigma` after the first `layer`
  // machines of machine_order() is a member of U_layer.
  bool contains_residual(int layer, const Schedule& sigma) const;

 private:
  using Config = std::vector<std::uint16_t>;
  struct Choice {
    std::vector<std::int16_t> per_block;  // -1 none, -2 small, t >= 0 band
    std::vector<int> cuts;
  };
  struct Layer {
    std::vector<Config> configs;
    std::vector<int> prev;
    std::vector<Choice> choice;
    std::unordered_map<std::string, int> index;
  };

  Config initial() const;
  Config convert(const Config& u, int from, int to) const;
  Config residual(int layer, const std::vector<char>& scheduled) const;
  static std::string key(const Config& c);
  void expand(const Config& u, int pred, int machine_pos, Layer& out);

  const Instance& inst_;
  ExactTime guess_;
  const Budget& budget_;
  std::int64_t q_ = 1, d_ = 1;  // 1 + eps = q / d
  int blocks_ = 0;
  int tau_ = 0;
  int width_ = 0;  // tau + 1 bands
  std::vector<int> r_;        // rounded exponent per job
  std::vector<int> e_;        // capacity exponent per machine (original ids)
  std::vector<int> order_;
  std::vector<int> basis_;    // basis per layer, layer 0 = 0
  std::vector<int> cut_index_;
  std::vector<std::vector<int>> simplicial_;     // per block
  std::vector<std::vector<int>> count_by_r_;     // per block, indexed by exponent
  std::vector<boost::multiprecision::cpp_int> weight_;  // scaled (1+eps)^x
  std::vector<boost::multiprecision::cpp_int> limit_;   // scaled C * s_i
  std::vector<Layer> layers_;
  bool rejected_early_ = false;
  bool accepted_ = false;
  std::size_t bytes_ = 0;
};

std::optional<Schedule> ptas_core(const Instance& inst, ExactTime guess, Rational eps,
                                  const Budget& budget = Budget());

// Largest 1/2^t with (1 + x)^2 <= 1 + eps.
Rational internal_epsilon(Rational eps);

// (1+eps)-approximation seeded by k_approx.
Schedule ptas_uniform(const Instance& inst, Rational eps, const Budget& budget = Budget());

}  // namespace bsched
