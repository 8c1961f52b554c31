#include <doctest.h>

#include <cmath>
#include <random>

#include "hdx/spectra.hpp"
#include "hdx/unipotent.hpp"
#include "oracles.hpp"

using namespace hdx;

namespace {

WeightedGraph complete(int n) {
  WeightedGraph g;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(static_cast<VertexId>(i), static_cast<VertexId>(j), 1.0);
  return g;
}

WeightedGraph cycle(int n) {
  WeightedGraph g;
  for (int i = 0; i < n; ++i) g.add_edge(static_cast<VertexId>(i), static_cast<VertexId>((i + 1) % n), 1.0);
  return g;
}

WeightedGraph rank2_graph(Rank2Type type, std::uint64_t p, unsigned m = 1) {
  UnipotentGroup u(type, make_galois_field(p, m));
  return coset_graph(u, u.root_subgroup(0), u.root_subgroup(1));
}

double lambda2_of(const WeightedGraph& g, Solver s = Solver::Auto) {
  Lambda2Options o;
  o.allow_disconnected = true;
  o.solver = s;
  return lambda2(g, o).lambda2;
}

}  // namespace

TEST_CASE("closed forms") {
  for (int n : {3, 5, 10}) CHECK(lambda2_of(complete(n)) == doctest::Approx(-1.0 / (n - 1)).epsilon(1e-12));
  for (int n : {5, 8, 13}) CHECK(lambda2_of(cycle(n)) == doctest::Approx(std::cos(2 * M_PI / n)).epsilon(1e-12));
  WeightedGraph edge;
  edge.add_edge(0, 1, 1.0);
  CHECK(lambda2_of(edge) == doctest::Approx(-1.0));
  auto spec = walk_spectrum(cycle(6));
  CHECK(spec.front() == doctest::Approx(-1.0));
  CHECK(spec.back() == doctest::Approx(1.0));
  CHECK(stochasticity_defect(complete(7)) < 1e-12);
}

TEST_CASE("disconnected graphs") {
  WeightedGraph g;
  g.add_edge(0, 1, 1.0);
  g.add_edge(2, 3, 1.0);
  try {
    lambda2(g);
    FAIL("expected Disconnected");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Disconnected);
  }
  Lambda2Options o;
  o.allow_disconnected = true;
  auto r = lambda2(g, o);
  CHECK(r.lambda2 == 1.0);
  CHECK_FALSE(r.connected);
}

TEST_CASE("A1xA1 links are complete bipartite with lambda2 = 0") {
  for (auto [p, m] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
    auto g = rank2_graph(Rank2Type::A1xA1, static_cast<std::uint64_t>(p), static_cast<unsigned>(m));
    const std::size_t q = static_cast<std::size_t>(std::pow(p, m));
    CHECK(g.n == 2 * q);
    CHECK(g.edges.size() == q * q);
    CHECK(std::abs(lambda2_of(g)) <= 1e-12);
  }
}

TEST_CASE("rank-2 link spectra match the matrix-model oracles") {
  for (int p : {2, 3, 5, 7}) {
    const double a2 = lambda2_of(rank2_graph(Rank2Type::A2, static_cast<std::uint64_t>(p)));
    CHECK(a2 == doctest::Approx(oracle::a2_lambda2(p)).epsilon(1e-9));
    CHECK(a2 <= 1 / std::sqrt(p) + 1e-9);
  }
  for (int p : {3, 5, 7}) {
    const double b2 = lambda2_of(rank2_graph(Rank2Type::B2, static_cast<std::uint64_t>(p)));
    CHECK(b2 == doctest::Approx(oracle::b2_lambda2(p)).epsilon(1e-9));
    CHECK(b2 <= std::sqrt(2.0 / p) + 1e-9);
  }
  for (int p : {5, 7}) {
    CHECK(std::abs(lambda2_of(rank2_graph(Rank2Type::A2, static_cast<std::uint64_t>(p))) - 1 / std::sqrt(p)) <= 1e-9);
    CHECK(std::abs(lambda2_of(rank2_graph(Rank2Type::B2, static_cast<std::uint64_t>(p))) - std::sqrt(2.0 / p)) <= 1e-9);
  }
  // Over F_2 the B2 link is disconnected.
  CHECK(lambda2_of(rank2_graph(Rank2Type::B2, 2)) == 1.0);
}

TEST_CASE("G2 links stay below the prime-field bound") {
  auto g3 = rank2_graph(Rank2Type::G2, 3);
  CHECK(g3.n == 486);
  CHECK(lambda2_of(g3) <= gamma_bound(Rank2Type::G2, 3, 1).value + 1e-9);
  auto g5 = rank2_graph(Rank2Type::G2, 5);
  CHECK(g5.n == 6250);
  const double it = lambda2_of(g5);
  CHECK(it <= gamma_bound(Rank2Type::G2, 5, 1).value + 1e-7);
  CHECK(it == doctest::Approx(std::sqrt(3.0 / 5)).epsilon(1e-7));
}

TEST_CASE("dense and Lanczos solvers agree") {
  auto g = rank2_graph(Rank2Type::B2, 5);
  CHECK(std::abs(lambda2_of(g, Solver::Dense) - lambda2_of(g, Solver::Lanczos)) <= 1e-6);
  auto g3 = rank2_graph(Rank2Type::G2, 3);
  CHECK(std::abs(lambda2_of(g3, Solver::Dense) - lambda2_of(g3, Solver::Lanczos)) <= 1e-6);
  // A random weighted graph with a Hamiltonian cycle for connectivity.
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<VertexId> pick(0, 599);
  std::uniform_real_distribution<double> w(0.5, 2.0);
  WeightedGraph r = cycle(600);
  for (int i = 0; i < 2000; ++i) {
    VertexId a = pick(rng), b = pick(rng);
    if (a != b) r.add_edge(a, b, w(rng));
  }
  CHECK(std::abs(lambda2_of(r, Solver::Dense) - lambda2_of(r, Solver::Lanczos)) <= 1e-6);
}

TEST_CASE("representation angle through the Laplacian") {
  UnipotentGroup u(Rank2Type::A2, make_galois_field(5, 1));
  const double eps = representation_angle(u, u.root_subgroup(0), u.root_subgroup(1));
  CHECK(eps == doctest::Approx(1 / std::sqrt(5.0)).epsilon(1e-9));
  CHECK_THROWS_AS(representation_angle(u, u.root_subgroup(0), u.root_subgroup(0)), Error);
  CHECK_THROWS_AS(representation_angle(u, whole_group(u), u.root_subgroup(0)), Error);
}

TEST_CASE("trickling-down arithmetic") {
  auto t5 = trickling(1 / std::sqrt(5.0), 2);
  CHECK(t5.applicable);
  CHECK(t5.gamma_prime == doctest::Approx((1 / std::sqrt(5.0)) / (1 - 1 / std::sqrt(5.0))));
  CHECK(t5.gamma_prime == doctest::Approx(0.8090).epsilon(1e-4));
  auto t2 = trickling(1 / std::sqrt(2.0), 2);
  CHECK_FALSE(t2.applicable);
  CHECK(t2.threshold == 0.5);
  CHECK_FALSE(trickling(0.0, 2).applicable);
  CHECK(trickling(0.25, 3).gamma_prime == doctest::Approx(0.5));
  CHECK_THROWS_AS(trickling(0.1, 0), Error);
}

TEST_CASE("link bound checks are independent of the worker count") {
  UnipotentGroup u(Rank2Type::A2, make_galois_field(3, 1));
  auto cc = build_coset_complex(u, {u.root_subgroup(0), u.root_subgroup(1), u.root_subgroup(2)});
  auto one = link_bound_check(cc.complex, 1.0, {}, 1);
  auto four = link_bound_check(cc.complex, 1.0, {}, 4);
  REQUIRE(one.links.size() == four.links.size());
  for (std::size_t i = 0; i < one.links.size(); ++i) {
    CHECK(one.links[i].face == four.links[i].face);
    CHECK(one.links[i].lambda2 == four.links[i].lambda2);
  }
  auto strict = link_bound_check(cc.complex, -2.0);
  CHECK_FALSE(strict.all_pass);
  CHECK(strict.witness.has_value());
}
