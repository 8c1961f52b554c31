#include "hdx/spectra.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <random>
#include <thread>

namespace hdx {

const char* to_string(Solver s) noexcept {
  switch (s) {
    case Solver::Auto: return "auto";
    case Solver::Dense: return "dense";
    case Solver::Lanczos: return "lanczos";
  }
  return "?";
}

namespace {

struct Csr {
  std::vector<std::size_t> offsets;
  std::vector<VertexId> nbr;
  std::vector<double> val;  // symmetrized weights w / sqrt(d_u d_v)
  std::vector<double> deg;
};

Csr symmetrized(const WeightedGraph& g) {
  Csr c;
  c.deg.assign(g.n, 0.0);
  for (const auto& [u, v, w] : g.edges) {
    c.deg[u] += w;
    c.deg[v] += w;
  }
  for (std::size_t i = 0; i < g.n; ++i)
    if (c.deg[i] <= 0) throw Error(ErrorKind::Disconnected, "graph has an isolated vertex");
  c.offsets.assign(g.n + 1, 0);
  for (const auto& [u, v, w] : g.edges) {
    ++c.offsets[u + 1];
    ++c.offsets[v + 1];
  }
  for (std::size_t i = 0; i < g.n; ++i) c.offsets[i + 1] += c.offsets[i];
  c.nbr.resize(c.offsets.back());
  c.val.resize(c.offsets.back());
  std::vector<std::size_t> fill(c.offsets.begin(), c.offsets.end() - 1);
  for (const auto& [u, v, w] : g.edges) {
    const double s = w / std::sqrt(c.deg[u] * c.deg[v]);
    c.nbr[fill[u]] = v;
    c.val[fill[u]++] = s;
    c.nbr[fill[v]] = u;
    c.val[fill[v]++] = s;
  }
  return c;
}

Eigen::MatrixXd dense_operator(const WeightedGraph& g) {
  Csr c = symmetrized(g);
  const auto n = static_cast<Eigen::Index>(g.n);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t u = 0; u < g.n; ++u)
    for (std::size_t e = c.offsets[u]; e < c.offsets[u + 1]; ++e)
      a(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(c.nbr[e])) += c.val[e];
  return a;
}

Lambda2Result lanczos(const WeightedGraph& g, double tol) {
  const Csr c = symmetrized(g);
  const std::size_t n = g.n;
  using Vec = Eigen::VectorXd;
  auto apply = [&](const Vec& x) {
    Vec y = Vec::Zero(static_cast<Eigen::Index>(n));
    for (std::size_t u = 0; u < n; ++u) {
      double s = 0;
      for (std::size_t e = c.offsets[u]; e < c.offsets[u + 1]; ++e) s += c.val[e] * x[static_cast<Eigen::Index>(c.nbr[e])];
      y[static_cast<Eigen::Index>(u)] = s;
    }
    return y;
  };
  // Top eigenvector of D^-1/2 W D^-1/2 is D^1/2 1.
  Vec top(static_cast<Eigen::Index>(n));
  for (std::size_t u = 0; u < n; ++u) top[static_cast<Eigen::Index>(u)] = std::sqrt(c.deg[u]);
  top.normalize();

  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> normal;
  Vec q(static_cast<Eigen::Index>(n));
  for (auto& x : q) x = normal(rng);
  q -= top.dot(q) * top;
  q.normalize();

  const std::size_t max_steps = std::min<std::size_t>(n - 1, 2000);
  std::vector<Vec> basis;
  std::vector<double> alpha, beta;
  Lambda2Result res;
  res.solver = Solver::Lanczos;
  for (std::size_t j = 0; j < max_steps; ++j) {
    basis.push_back(q);
    Vec w = apply(q);
    alpha.push_back(q.dot(w));
    // Full reorthogonalization, twice, against the basis and the deflated
    // top eigenvector.
    for (int pass = 0; pass < 2; ++pass) {
      w -= top.dot(w) * top;
      for (const auto& b : basis) w -= b.dot(w) * b;
    }
    const double b = w.norm();
    const std::size_t m = alpha.size();
    const bool exhausted = b < 1e-12 || m == max_steps;
    if (exhausted || m % 5 == 0) {
      Eigen::MatrixXd t = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
      for (std::size_t i = 0; i < m; ++i) {
        t(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = alpha[i];
        if (i + 1 < m) {
          t(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i + 1)) = beta[i];
          t(static_cast<Eigen::Index>(i + 1), static_cast<Eigen::Index>(i)) = beta[i];
        }
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
      const auto last = static_cast<Eigen::Index>(m - 1);
      const double theta = es.eigenvalues()[last];
      const double resid = b * std::abs(es.eigenvectors()(last, last));
      if (exhausted || resid < tol) {
        if (b >= 1e-12 && resid >= tol) throw ResourceError("Lanczos iteration did not converge", m);
        res.lambda2 = theta;
        res.lambda_min = es.eigenvalues()[0];
        return res;
      }
    }
    beta.push_back(b);
    q = w / b;
  }
  // n == 1 after deflation: the remaining space is one-dimensional.
  res.lambda2 = alpha.empty() ? 0.0 : alpha.back();
  res.lambda_min = res.lambda2;
  return res;
}

}  // namespace

std::vector<double> walk_spectrum(const WeightedGraph& g) {
  if (g.n == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_operator(g), Eigen::EigenvaluesOnly);
  std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  return out;
}

Lambda2Result lambda2(const WeightedGraph& g, const Lambda2Options& opt) {
  if (g.n < 2) throw Error(ErrorKind::Spec, "lambda2 needs at least two vertices");
  Lambda2Result res;
  if (!is_connected(g)) {
    if (!opt.allow_disconnected) throw Error(ErrorKind::Disconnected, "graph is disconnected; lambda2 would be 1");
    res.lambda2 = 1.0;
    res.connected = false;
    return res;
  }
  Solver s = opt.solver;
  if (s == Solver::Auto) s = g.n <= opt.dense_limit ? Solver::Dense : Solver::Lanczos;
  if (s == Solver::Lanczos && g.n > 2) return lanczos(g, opt.tol > 0 ? opt.tol : kIterativeTol);
  auto ev = walk_spectrum(g);
  res.solver = Solver::Dense;
  res.lambda2 = ev[ev.size() - 2];
  res.lambda_min = ev.front();
  return res;
}

double stochasticity_defect(const WeightedGraph& g) {
  std::vector<double> deg(g.n, 0.0), row(g.n, 0.0);
  for (const auto& [u, v, w] : g.edges) {
    deg[u] += w;
    deg[v] += w;
  }
  for (const auto& [u, v, w] : g.edges) {
    row[u] += w / deg[u];
    row[v] += w / deg[v];
  }
  double worst = 0;
  for (double r : row) worst = std::max(worst, std::abs(r - 1.0));
  return worst;
}

double laplacian_angle(const WeightedGraph& g) {
  if (g.n > kDenseLimit) throw ResourceError("Laplacian spectrum limited to dense-size graphs", g.n);
  auto ev = walk_spectrum(g);
  double mu = 2.0;
  for (double e : ev) {
    const double l = 1.0 - e;
    if (l > kPositiveThreshold) mu = std::min(mu, l);
  }
  return 1.0 - mu;
}

WeightedGraph coset_graph(const FiniteGroup& g, const Subgroup& a, const Subgroup& b) {
  return one_skeleton(build_coset_complex(g, {a, b}).complex);
}

double representation_angle(const FiniteGroup& g, const Subgroup& a, const Subgroup& b) {
  if (a.order() >= g.order() || b.order() >= g.order())
    throw Error(ErrorKind::Spec, "representation angle needs proper subgroups");
  if (generated_by(g, {&a, &b}).order() != g.order())
    throw Error(ErrorKind::Spec, "subgroups do not generate the group");
  return laplacian_angle(coset_graph(g, a, b));
}

LinkBoundReport link_bound_check(const PureComplex& x, double gamma, const Lambda2Options& opt, int workers) {
  if (x.dim() < 1) throw Error(ErrorKind::Spec, "link bounds need dimension >= 1");
  LinkBoundReport rep;
  rep.gamma = gamma;
  const auto fs = faces(x, x.dim() - 2);
  rep.links.resize(fs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    try {
      for (std::size_t i = next++; i < fs.size(); i = next++) {
        LinkResult& r = rep.links[i];
        r.face = fs[i];
        PureComplex l = link(x, fs[i]);
        WeightedGraph gr = one_skeleton(l);
        r.size = gr.n;
        std::vector<std::size_t> deg(gr.n, 0);
        for (const auto& [u, v, w] : gr.edges) {
          ++deg[u];
          ++deg[v];
        }
        r.regular = std::adjacent_find(deg.begin(), deg.end(), std::not_equal_to<>()) == deg.end();
        const double tol = opt.tol > 0 ? opt.tol : kDenseTol;
        if (gr.n <= opt.dense_limit && opt.solver != Solver::Lanczos) {
          auto ev = walk_spectrum(gr);
          r.lambda2 = is_connected(gr) ? ev[ev.size() - 2] : 1.0;
          for (std::size_t a = 0, b = ev.size() - 1; a < b; ++a, --b)
            if (std::abs(ev[a] + ev[b]) > 1e-8) r.bipartite_symmetric = false;
        } else {
          Lambda2Options o = opt;
          o.allow_disconnected = true;
          r.lambda2 = lambda2(gr, o).lambda2;
        }
        r.pass = r.lambda2 <= gamma + tol;
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  const int n_workers = std::max(1, workers);
  if (n_workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  for (const auto& r : rep.links) {
    rep.max_lambda2 = std::max(rep.max_lambda2, r.lambda2);
    if (!r.pass && rep.all_pass) {
      rep.all_pass = false;
      rep.witness = r.face;
    }
  }
  return rep;
}

TricklingResult trickling(double gamma, int d) {
  if (d < 1) throw Error(ErrorKind::Spec, "dimension must be at least 1");
  TricklingResult t;
  t.gamma = gamma;
  t.threshold = 1.0 / d;
  t.applicable = gamma > 0 && gamma <= t.threshold;
  if (t.applicable) t.gamma_prime = gamma / (1.0 - (d - 1) * gamma);
  return t;
}

Lambda2Result global_lambda2(const PureComplex& x, const Lambda2Options& opt) {
  Lambda2Options o = opt;
  o.allow_disconnected = true;
  return lambda2(one_skeleton(x), o);
}

}  // namespace hdx
