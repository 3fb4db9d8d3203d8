#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "minimax/linalg.hpp"

namespace minimax {

// Directed communication graph. neighbors[k] is N_k: the agents whose
// intermediate iterates agent k averages (edge l -> k). Indices are 0-based and
// every N_k contains k.
struct Graph {
  int num_agents = 0;
  std::vector<std::vector<int>> neighbors;

  friend bool operator==(const Graph&, const Graph&) = default;
};

// Left-stochastic (columns sum to one) K x K matrix, a(l, k) = weight agent k
// puts on agent l. Zero whenever l is not in N_k.
struct CombinationMatrix {
  Mat weights;

  int size() const { return static_cast<int>(weights.rows()); }
  double operator()(int l, int k) const { return weights(l, k); }
};

struct SpectralInfo {
  Vec perron;                 // A p = p, sum(p) = 1, p > 0
  double mixing_rate = 0.0;   // second largest eigenvalue modulus
  double condition = 1.0;     // ||V|| ||V^-1|| of the eigenvector basis
  double rho2_estimate = 0.0; // mixing_rate^2 * condition^2, order-of-magnitude only
  int perron_iterations = 0;
};

struct Assumption6Report {
  bool columns_sum_to_one = false;
  double max_column_error = 0.0;
  bool primitive = false;          // A^K entrywise positive
  bool strongly_connected = false;
  bool nonnegative = false;

  bool ok() const { return columns_sum_to_one && primitive && strongly_connected && nonnegative; }
};

Graph build_ring(int num_agents);
Graph build_random_connected(int num_agents, double edge_prob, std::uint64_t seed);
Graph graph_from_matrix(const CombinationMatrix& a);

bool is_strongly_connected(const Graph& g);
void validate_graph(const Graph& g);

CombinationMatrix averaging_rule(const Graph& g);

SpectralInfo perron_vector(const CombinationMatrix& a);
Assumption6Report validate_assumption6(const CombinationMatrix& a);

// One pure combination step: x_k <- sum_l a(l,k) x_l, applied to every row of
// `values` (rows = coordinates, columns = agents).
Mat combine(const CombinationMatrix& a, const Mat& values);

}  // namespace minimax
