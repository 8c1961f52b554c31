#pragma once

// Reference computations that share no code with the library: naive field
// tables, brute-force matrix groups, coset graphs with dense spectra, Weyl
// orbits, the necklace count and the order of SL_n.

#include <Eigen/Dense>
#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace oracle {

// A finite field of order q <= 16 given by addition and multiplication tables.
struct SmallField {
  int q = 0;
  std::vector<std::vector<int>> add, mul;

  int neg(int a) const {
    for (int b = 0; b < q; ++b)
      if (add[a][b] == 0) return b;
    return -1;
  }
};

inline SmallField prime_field(int p) {
  SmallField f;
  f.q = p;
  f.add.assign(p, std::vector<int>(p));
  f.mul.assign(p, std::vector<int>(p));
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b) {
      f.add[a][b] = (a + b) % p;
      f.mul[a][b] = (a * b) % p;
    }
  return f;
}

// F_4 = {0, 1, w, w+1} coded as 0..3 with w^2 = w + 1.
inline SmallField f4() {
  SmallField f;
  f.q = 4;
  f.add.assign(4, std::vector<int>(4));
  f.mul.assign(4, std::vector<int>(4));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      f.add[a][b] = a ^ b;
      // (a1 w + a0)(b1 w + b0) with w^2 = w + 1.
      const int a0 = a & 1, a1 = a >> 1, b0 = b & 1, b1 = b >> 1;
      const int c2 = a1 & b1;
      const int c1 = ((a1 & b0) ^ (a0 & b1)) ^ c2;
      const int c0 = (a0 & b0) ^ c2;
      f.mul[a][b] = c1 * 2 + c0;
    }
  return f;
}

using Mat = std::vector<int>;  // row-major n x n

inline Mat mat_mul(const SmallField& f, int n, const Mat& a, const Mat& b) {
  Mat c(static_cast<std::size_t>(n * n), 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int s = 0;
      for (int k = 0; k < n; ++k) s = f.add[s][f.mul[a[i * n + k]][b[k * n + j]]];
      c[i * n + j] = s;
    }
  return c;
}

inline Mat identity(int n) {
  Mat m(static_cast<std::size_t>(n * n), 0);
  for (int i = 0; i < n; ++i) m[i * n + i] = 1;
  return m;
}

// E + s e_{ij}.
inline Mat elementary(int n, int i, int j, int s) {
  Mat m = identity(n);
  m[i * n + j] = s;
  return m;
}

// Brute-force BFS closure by right multiplication with generators.
struct BruteGroup {
  const SmallField* field = nullptr;
  int n = 0;
  std::vector<Mat> elems;
  std::map<Mat, int> index;

  static BruteGroup generate(const SmallField& f, int n, const std::vector<Mat>& gens) {
    BruteGroup g;
    g.field = &f;
    g.n = n;
    g.add(identity(n));
    for (std::size_t head = 0; head < g.elems.size(); ++head)
      for (const auto& s : gens) {
        Mat x = mat_mul(f, n, g.elems[head], s);
        if (!g.index.count(x)) g.add(std::move(x));
      }
    return g;
  }

  void add(Mat m) {
    index.emplace(m, static_cast<int>(elems.size()));
    elems.push_back(std::move(m));
  }

  int mul(int a, int b) const { return index.at(mat_mul(*field, n, elems[a], elems[b])); }
  std::size_t order() const { return elems.size(); }
};

// Second-largest eigenvalue of D^-1 A for a weighted adjacency matrix.
inline double walk_lambda2(const Eigen::MatrixXd& a) {
  const auto n = a.rows();
  Eigen::VectorXd d = a.rowwise().sum();
  Eigen::MatrixXd s(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) s(i, j) = a(i, j) / std::sqrt(d(i) * d(j));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(n - 2);
}

// Bipartite graph on left cosets gA and gB, joined when they intersect
// (one edge per group element), for subgroups given as element-id sets.
inline Eigen::MatrixXd coset_graph(const BruteGroup& g, const std::set<int>& a, const std::set<int>& b) {
  auto cosets = [&](const std::set<int>& h) {
    std::vector<int> label(g.order(), -1);
    int next = 0;
    for (int x = 0; x < static_cast<int>(g.order()); ++x) {
      if (label[x] >= 0) continue;
      for (int y : h) label[g.mul(x, y)] = next;
      ++next;
    }
    return std::make_pair(label, next);
  };
  auto [la, na] = cosets(a);
  auto [lb, nb] = cosets(b);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(na + nb, na + nb);
  for (std::size_t x = 0; x < g.order(); ++x) {
    m(la[x], na + lb[x]) += 1;
    m(na + lb[x], la[x]) += 1;
  }
  // Multiplicities collapse to 0/1 adjacency: an edge is a pair of cosets.
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = m(i, j) > 0 ? 1 : 0;
  return m;
}

inline std::set<int> subgroup_of(const BruteGroup& g, const std::vector<Mat>& elems) {
  std::set<int> out;
  for (const auto& e : elems) out.insert(g.index.at(e));
  return out;
}

// Heisenberg model of U_{A2}(F_p): upper unitriangular 3x3.
inline double a2_lambda2(int p) {
  auto f = prime_field(p);
  std::vector<Mat> ga, gb, gens;
  for (int s = 0; s < p; ++s) {
    ga.push_back(elementary(3, 0, 1, s));
    gb.push_back(elementary(3, 1, 2, s));
  }
  gens = {ga[1], gb[1]};
  auto g = BruteGroup::generate(f, 3, gens);
  return walk_lambda2(coset_graph(g, subgroup_of(g, ga), subgroup_of(g, gb)));
}

// U_{B2}(F_p) inside Sp_4 for the form antidiag(1, 1, -1, -1): short root
// E + s(e_01 - e_23), long root E + u e_12.
inline Mat sp4_short(const SmallField& f, int s) {
  Mat m = identity(4);
  m[0 * 4 + 1] = s;
  m[2 * 4 + 3] = f.neg(s);
  return m;
}

inline Mat sp4_form(const SmallField& f) {
  Mat o(16, 0);
  o[0 * 4 + 3] = 1;
  o[1 * 4 + 2] = 1;
  o[2 * 4 + 1] = f.neg(1);
  o[3 * 4 + 0] = f.neg(1);
  return o;
}

inline BruteGroup b2_group(const SmallField& f) {
  return BruteGroup::generate(f, 4, {sp4_short(f, 1), elementary(4, 1, 2, 1)});
}

inline double b2_lambda2(int p) {
  auto f = prime_field(p);
  auto g = b2_group(f);
  std::vector<Mat> ga, gb;
  for (int s = 0; s < p; ++s) {
    ga.push_back(sp4_short(f, s));
    gb.push_back(elementary(4, 1, 2, s));
  }
  return walk_lambda2(coset_graph(g, subgroup_of(g, ga), subgroup_of(g, gb)));
}

// Number of monic irreducibles of degree n over F_q.
inline std::uint64_t necklace(std::uint64_t q, int n) {
  auto mobius = [](int k) {
    int r = 1;
    for (int p = 2; p * p <= k; ++p)
      if (k % p == 0) {
        k /= p;
        if (k % p == 0) return 0;
        r = -r;
      }
    return k > 1 ? -r : r;
  };
  std::int64_t s = 0;
  for (int d = 1; d <= n; ++d)
    if (n % d == 0) {
      std::int64_t t = 1;
      for (int i = 0; i < n / d; ++i) t *= static_cast<std::int64_t>(q);
      s += mobius(d) * t;
    }
  return static_cast<std::uint64_t>(s / n);
}

// Positive roots as the Weyl orbit of the simple roots, with reflections
// s_i(beta) = beta - <beta, alpha_i^vee> alpha_i and <alpha_j, alpha_i^vee> = A(i, j).
inline std::size_t weyl_positive_roots(const std::vector<std::vector<int>>& a) {
  const int r = static_cast<int>(a.size());
  std::set<std::vector<int>> roots;
  std::vector<std::vector<int>> frontier;
  for (int i = 0; i < r; ++i) {
    std::vector<int> e(r, 0);
    e[i] = 1;
    roots.insert(e);
    frontier.push_back(e);
  }
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& b : frontier)
      for (int i = 0; i < r; ++i) {
        int pair = 0;
        for (int j = 0; j < r; ++j) pair += b[j] * a[i][j];
        auto c = b;
        c[i] -= pair;
        if (roots.insert(c).second) next.push_back(c);
      }
    frontier = std::move(next);
  }
  return static_cast<std::size_t>(std::count_if(roots.begin(), roots.end(), [](const std::vector<int>& v) {
    return std::all_of(v.begin(), v.end(), [](int x) { return x >= 0; });
  }));
}

// |SL_n(F_Q)| = |GL_n(F_Q)| / (Q - 1) = prod_{i<n} (Q^n - Q^i) / (Q - 1).
inline std::string sl_order(int n, std::uint64_t q) {
  using boost::multiprecision::cpp_int;
  cpp_int qn = 1;
  for (int i = 0; i < n; ++i) qn *= q;
  cpp_int gl = 1, qi = 1;
  for (int i = 0; i < n; ++i) {
    gl *= qn - qi;
    qi *= q;
  }
  const cpp_int out = gl / (q - 1);
  return out.str();
}

}  // namespace oracle
