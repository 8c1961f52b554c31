#pragma once

// Weighted random walks on graphs and complexes: lambda_2, representation
// angles through the coset-graph Laplacian, per-link bound checks and the
// trickling-down constant.

#include <optional>
#include <string>
#include <vector>

#include "hdx/complex.hpp"
#include "hdx/groups.hpp"

namespace hdx {

enum class Solver { Auto, Dense, Lanczos };

const char* to_string(Solver s) noexcept;

inline constexpr std::size_t kDenseLimit = 4096;
inline constexpr double kDenseTol = 1e-9;
inline constexpr double kIterativeTol = 1e-7;
inline constexpr double kPositiveThreshold = 1e-9;

struct Lambda2Options {
  double tol = 0;  // 0 selects the solver default
  Solver solver = Solver::Auto;
  // Report 1 for disconnected graphs instead of throwing Disconnected.
  bool allow_disconnected = false;
  std::size_t dense_limit = kDenseLimit;
};

struct Lambda2Result {
  double lambda2 = 0;
  double lambda_min = 0;  // most negative eigenvalue (informational)
  Solver solver = Solver::Dense;
  bool connected = true;
};

// Second-largest eigenvalue of M = D^-1 W, computed on D^-1/2 W D^-1/2.
Lambda2Result lambda2(const WeightedGraph& g, const Lambda2Options& opt = {});

// All eigenvalues of M in ascending order (dense).
std::vector<double> walk_spectrum(const WeightedGraph& g);

// max_u |sum_v M[u][v] - 1|.
double stochasticity_defect(const WeightedGraph& g);

// 1 - (smallest eigenvalue of L = I - M above kPositiveThreshold).
double laplacian_angle(const WeightedGraph& g);

// CC(G, (A, B)) as a weighted bipartite graph.
WeightedGraph coset_graph(const FiniteGroup& g, const Subgroup& a, const Subgroup& b);

// epsilon_G(A, B) through the Laplacian of CC(G, {A, B}). Throws Spec unless
// A, B are proper and generate G.
double representation_angle(const FiniteGroup& g, const Subgroup& a, const Subgroup& b);

struct LinkResult {
  Face face;
  std::uint64_t size = 0;  // vertices
  double lambda2 = 0;
  bool regular = true;
  bool bipartite_symmetric = true;
  bool pass = true;
};

struct LinkBoundReport {
  double gamma = 0;
  std::vector<LinkResult> links;  // in X(d-2) order
  bool all_pass = true;
  std::optional<Face> witness;  // first failing face
  double max_lambda2 = -1;
};

// lambda_2 of every (d-2)-link against gamma (with solver tolerance), plus
// regularity of each link graph. Links are processed by `workers` threads.
LinkBoundReport link_bound_check(const PureComplex& x, double gamma, const Lambda2Options& opt = {}, int workers = 1);

struct TricklingResult {
  bool applicable = false;
  double gamma = 0;
  double threshold = 0;  // 1/d
  double gamma_prime = 0;
};

// gamma' = gamma / (1 - (d-1) gamma) when 0 < gamma <= 1/d.
TricklingResult trickling(double gamma, int d);

// lambda_2 of the weighted 1-skeleton (diagnostic).
Lambda2Result global_lambda2(const PureComplex& x, const Lambda2Options& opt = {});

}  // namespace hdx
