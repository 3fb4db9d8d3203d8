#include "minimax/topology.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <queue>

#include <Eigen/Eigenvalues>

#include "minimax/errors.hpp"
#include "minimax/rng.hpp"

namespace minimax {

namespace {

constexpr int kPowerMaxIter = 10000;
constexpr double kPowerTol = 1e-12;

void check_agents(int num_agents) {
  if (num_agents < 1) throw InvalidArgument("graph needs at least one agent");
}

// Reachability from node 0 along l -> k edges (forward) or k -> l (backward).
std::vector<bool> reach(const Graph& g, bool forward) {
  const int n = g.num_agents;
  std::vector<std::vector<int>> adj(n);
  for (int k = 0; k < n; ++k) {
    for (int l : g.neighbors[k]) {
      if (forward) {
        adj[l].push_back(k);
      } else {
        adj[k].push_back(l);
      }
    }
  }
  std::vector<bool> seen(n, false);
  std::queue<int> q;
  q.push(0);
  seen[0] = true;
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int v : adj[u]) {
      if (!seen[v]) {
        seen[v] = true;
        q.push(v);
      }
    }
  }
  return seen;
}

// Boolean pattern of A^r entrywise positive, for some r in [1, max_power].
bool pattern_power_positive(const Mat& w, int max_power, int* first_power = nullptr) {
  const int n = static_cast<int>(w.rows());
  using BoolMat = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;
  BoolMat base = (w.array() > 0.0).matrix();
  BoolMat cur = base;
  for (int r = 1; r <= max_power; ++r) {
    if (cur.all()) {
      if (first_power != nullptr) *first_power = r;
      return true;
    }
    BoolMat next = BoolMat::Constant(n, n, false);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int m = 0; m < n; ++m) {
          if (cur(i, m) && base(m, j)) {
            next(i, j) = true;
            break;
          }
        }
      }
    }
    cur = std::move(next);
  }
  return false;
}

}  // namespace

Graph build_ring(int num_agents) {
  check_agents(num_agents);
  Graph g{num_agents, std::vector<std::vector<int>>(num_agents)};
  for (int k = 0; k < num_agents; ++k) {
    auto& nk = g.neighbors[k];
    nk = {(k + num_agents - 1) % num_agents, k, (k + 1) % num_agents};
    std::sort(nk.begin(), nk.end());
    nk.erase(std::unique(nk.begin(), nk.end()), nk.end());
  }
  return g;
}

Graph build_random_connected(int num_agents, double edge_prob, std::uint64_t seed) {
  check_agents(num_agents);
  if (!(edge_prob > 0.0 && edge_prob <= 1.0)) {
    throw InvalidArgument("edge probability must lie in (0, 1]");
  }
  Rng rng(seed);
  Graph g;
  for (int attempt = 0; attempt < 100; ++attempt) {
    g = Graph{num_agents, std::vector<std::vector<int>>(num_agents)};
    for (int k = 0; k < num_agents; ++k) {
      for (int l = 0; l < num_agents; ++l) {
        if (l == k || rng.uniform() < edge_prob) g.neighbors[k].push_back(l);
      }
    }
    if (is_strongly_connected(g)) return g;
  }
  // Give up on rejection sampling and overlay a ring on the last draw.
  const Graph ring = build_ring(num_agents);
  for (int k = 0; k < num_agents; ++k) {
    auto& nk = g.neighbors[k];
    nk.insert(nk.end(), ring.neighbors[k].begin(), ring.neighbors[k].end());
    std::sort(nk.begin(), nk.end());
    nk.erase(std::unique(nk.begin(), nk.end()), nk.end());
  }
  return g;
}

Graph graph_from_matrix(const CombinationMatrix& a) {
  const int n = a.size();
  Graph g{n, std::vector<std::vector<int>>(n)};
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      if (a(l, k) != 0.0 || l == k) g.neighbors[k].push_back(l);
    }
  }
  return g;
}

bool is_strongly_connected(const Graph& g) {
  if (g.num_agents < 1) return false;
  const auto fwd = reach(g, true);
  const auto bwd = reach(g, false);
  return std::all_of(fwd.begin(), fwd.end(), [](bool b) { return b; }) &&
         std::all_of(bwd.begin(), bwd.end(), [](bool b) { return b; });
}

void validate_graph(const Graph& g) {
  check_agents(g.num_agents);
  if (static_cast<int>(g.neighbors.size()) != g.num_agents) {
    throw InvalidArgument("neighbor list count does not match number of agents");
  }
  for (int k = 0; k < g.num_agents; ++k) {
    const auto& nk = g.neighbors[k];
    if (std::find(nk.begin(), nk.end(), k) == nk.end()) {
      throw InvalidArgument("agent " + std::to_string(k) + " is missing its self-loop");
    }
    for (int l : nk) {
      if (l < 0 || l >= g.num_agents) throw InvalidArgument("neighbor index out of range");
    }
  }
  if (!is_strongly_connected(g)) throw InvalidArgument("graph is not strongly connected");
}

CombinationMatrix averaging_rule(const Graph& g) {
  validate_graph(g);
  const int n = g.num_agents;
  Mat w = Mat::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    std::vector<int> nk = g.neighbors[k];
    std::sort(nk.begin(), nk.end());
    nk.erase(std::unique(nk.begin(), nk.end()), nk.end());
    const double share = 1.0 / static_cast<double>(nk.size());
    // The last entry absorbs the rounding so that the column sums to 1.0
    // exactly when accumulated in index order: the partial sum is >= 1/2,
    // so 1 - partial is exact.
    double partial = 0.0;
    for (std::size_t j = 0; j + 1 < nk.size(); ++j) {
      w(nk[j], k) = share;
      partial += share;
    }
    w(nk.back(), k) = 1.0 - partial;
  }
  return CombinationMatrix{std::move(w)};
}

SpectralInfo perron_vector(const CombinationMatrix& a) {
  const int n = a.size();
  if (n < 1 || a.weights.cols() != n) throw InvalidArgument("combination matrix must be square");
  const Mat& w = a.weights;
  if ((w.array() < 0.0).any()) throw SpectralError("combination matrix has negative entries");
  const int wielandt = (n - 1) * (n - 1) + 1;
  if (!pattern_power_positive(w, wielandt)) {
    throw SpectralError("combination matrix is not primitive (no power is entrywise positive)");
  }

  SpectralInfo info;
  if (n == 1) {
    info.perron = Vec::Ones(1);
    info.mixing_rate = 0.0;
    info.condition = 1.0;
    info.rho2_estimate = 0.0;
    return info;
  }

  // Right Perron vector by power iteration. Start at 1/K plus a fixed
  // alternating perturbation.
  Vec p(n);
  for (int i = 0; i < n; ++i) p(i) = 1.0 / n * (1.0 + 0.01 * ((i % 2 == 0) ? 1.0 : -1.0));
  p /= p.sum();
  int it = 0;
  double resid = 0.0;
  for (; it < kPowerMaxIter; ++it) {
    Vec next = w * p;
    next /= next.sum();
    resid = (w * next - next).lpNorm<Eigen::Infinity>();
    p = std::move(next);
    if (resid <= kPowerTol) break;
  }
  if (resid > kPowerTol) throw SpectralError("power iteration for the Perron vector did not converge");
  // Polish with one direct solve of (A - I) p = 0, sum(p) = 1; keep it when it
  // lowers the residual.
  {
    Mat m = w - Mat::Identity(n, n);
    m.row(n - 1).setOnes();
    Vec rhs = Vec::Zero(n);
    rhs(n - 1) = 1.0;
    const Vec q = m.fullPivLu().solve(rhs);
    const double rq = (w * q - q).lpNorm<Eigen::Infinity>();
    if ((q.array() > 0.0).all() && rq < resid) p = q / q.sum();
  }
  if ((p.array() <= 0.0).any()) throw SpectralError("Perron vector has non-positive entries");
  info.perron = p;
  info.perron_iterations = it + 1;

  // Mixing rate: largest modulus among the eigenvalues other than the Perron
  // root. The eigenvector basis gives the condition number.
  Eigen::EigenSolver<Mat> es(w);
  if (es.info() != Eigen::Success) throw SpectralError("eigendecomposition failed");
  const Eigen::VectorXcd lambda = es.eigenvalues();
  Eigen::Index root = 0;
  (lambda.array() - 1.0).abs().minCoeff(&root);
  info.mixing_rate = 0.0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (i != root) info.mixing_rate = std::max(info.mixing_rate, std::abs(lambda(i)));
  }
  if (!(info.mixing_rate < 1.0)) throw SpectralError("mixing rate is not below one");

  const Eigen::MatrixXcd vecs = es.eigenvectors();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(vecs);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  info.condition = smin > 0.0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
  info.rho2_estimate = info.mixing_rate * info.mixing_rate * info.condition * info.condition;
  return info;
}

Assumption6Report validate_assumption6(const CombinationMatrix& a) {
  Assumption6Report r;
  const int n = a.size();
  if (n < 1 || a.weights.cols() != n) return r;
  const Mat& w = a.weights;
  r.nonnegative = !(w.array() < 0.0).any();
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    double s = 0.0;
    for (int l = 0; l < n; ++l) s += w(l, k);
    worst = std::max(worst, std::abs(s - 1.0));
  }
  r.max_column_error = worst;
  r.columns_sum_to_one = worst <= 1e-12;
  r.primitive = r.nonnegative && pattern_power_positive(w, n);
  Graph g{n, std::vector<std::vector<int>>(n)};
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      if (w(l, k) != 0.0) g.neighbors[k].push_back(l);
    }
  }
  r.strongly_connected = is_strongly_connected(g);
  return r;
}

Mat combine(const CombinationMatrix& a, const Mat& values) {
  if (values.cols() != a.size()) throw InvalidArgument("values must have one column per agent");
  return values * a.weights;
}

}  // namespace minimax
