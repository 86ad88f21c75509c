#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "plenoptic/reality.hpp"
#include "plenoptic/walk.hpp"

namespace plenoptic {

/// Cap on the work of an exhaustive enumeration, counted as
/// (outcomes of V_0..V_t) x (paths).
struct EnumerationBudget {
  double max_terms = 1e8;
  double max_states = 16.0 * 1024 * 1024;  // size of the dense joint pmf
};

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(double cost, double cap);
  double cost() const { return cost_; }

 private:
  double cost_;
};

/// Work estimate m^{(t+1)L} 2^t for alphabet size m.
double enumeration_cost(int alphabet_size, int L, int t);

struct ExactEntropies {
  std::vector<double> joint;        // joint[k] = H(V_0..V_k), k = 0..t
  std::vector<double> conditional;  // conditional[k - 1] = H(V_k | V_0..V_{k-1}), k = 1..t
  double block = 0.0;               // H(V_1..V_t | V_0) = sum of conditional
  double cost = 0.0;
};

/// Exact entropies of the view process by summing over every path and every
/// realization of the touched wall or field. Discrete realities only.
ExactEntropies exact_conditional_entropy(const WalkParams& walk, const RealitySpec& reality, int L, int t,
                                         const EnumerationBudget& budget = {});

/// Bayes error of the MAP estimate of W_1 from (V_0, V_1).
double exact_pe(const WalkParams& walk, const RealitySpec& reality, int L, const EnumerationBudget& budget = {});

}  // namespace plenoptic
