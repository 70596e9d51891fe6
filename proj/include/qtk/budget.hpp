#pragma once

#include <cstdint>

#include "qtk/gate_matrix.hpp"
#include "qtk/state.hpp"

namespace qtk {

// Precision budget of an approximate period-finding circuit.
struct FidelityBudget {
  double useful_lower_bound = 0;  // p - 2 sqrt(p) eps
  double half_likelihood_eps = 0; // sqrt(p) / 4: below it the useful outcome keeps half its weight
  double per_gate_delta = 0;      // eps / d
};

FidelityBudget fidelity_budget(double p_useful, double epsilon, int depth);

// Haar-random unitary of the given dimension.
Matrix random_unitary(int dim, Rng& rng);

// One product of `depth` random unitaries on `arity` qutrits next to the same product with
// every factor moved by at most `delta` in operator norm.
struct ProductTrial {
  double distance = 0;       // ||U - V||
  double factor_sum = 0;     // sum of the per-factor distances
  double bound = 0;          // depth * delta
};
ProductTrial perturbed_product_trial(int depth, int arity, double delta, Rng& rng);

// Random unit u, v with ||u - v|| <= eps and a random subspace G; compares ||P_G v||^2
// with p - 2 sqrt(p) eps for p = ||P_G u||^2.
struct ProjectionTrial {
  double p = 0;
  double projected = 0;
  double bound = 0;
};
ProjectionTrial useful_probability_trial(int dim, int subspace_dim, double epsilon, Rng& rng);

}  // namespace qtk
