#include <doctest.h>

#include <random>

#include "hdx/algebra.hpp"
#include "hdx/poly.hpp"
#include "oracles.hpp"

using namespace hdx;

namespace {

template <class F>
void check_field_axioms(const F& f, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, f.order() - 1);
  for (int i = 0; i < samples; ++i) {
    const Elem a = pick(rng), b = pick(rng), c = pick(rng);
    CHECK(f.add(a, b) == f.add(b, a));
    CHECK(f.mul(a, b) == f.mul(b, a));
    CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
    CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
    CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
    CHECK(f.add(a, f.neg(a)) == 0);
    CHECK(f.sub(a, b) == f.add(a, f.neg(b)));
    if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
  }
}

}  // namespace

TEST_CASE("prime fields") {
  CHECK(is_prime(2));
  CHECK(is_prime(65521));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
  for (std::uint64_t p : {2, 3, 5, 7, 65521}) check_field_axioms(PrimeField(p), 200, p);
  CHECK_THROWS_AS(PrimeField(4), Error);
  CHECK_THROWS_AS(PrimeField(7).inv(0), Error);
  CHECK(PrimeField(7).from_int(-1) == 6);
  CHECK_THROWS(PrimeField(7).from_code(7));
}

TEST_CASE("extension fields satisfy the field axioms") {
  for (auto [p, m] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}, {5, 2}, {2, 8}, {3, 5}, {2, 16}})
    check_field_axioms(make_galois_field(static_cast<std::uint64_t>(p), static_cast<std::size_t>(m)), 300,
                       static_cast<std::uint64_t>(p * 100 + m));
}

TEST_CASE("F_4 agrees with the hand-built table") {
  auto k = make_galois_field(2, 2);
  auto o = oracle::f4();
  REQUIRE(k.order() == 4);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      CHECK(k.add(static_cast<Elem>(a), static_cast<Elem>(b)) == static_cast<Elem>(o.add[a][b]));
      CHECK(k.mul(static_cast<Elem>(a), static_cast<Elem>(b)) == static_cast<Elem>(o.mul[a][b]));
    }
}

TEST_CASE("multiplicative group has order q - 1") {
  for (auto [p, m] : std::vector<std::pair<int, int>>{{2, 2}, {2, 4}, {3, 3}, {7, 2}}) {
    auto k = make_galois_field(static_cast<std::uint64_t>(p), static_cast<std::size_t>(m));
    for (Elem a = 1; a < k.order(); ++a) CHECK(k.pow(a, k.order() - 1) == 1);
    // The Frobenius is additive.
    for (Elem a = 0; a < k.order(); ++a)
      for (Elem b = 0; b < k.order(); b += 3)
        CHECK(k.pow(k.add(a, b), static_cast<std::uint64_t>(p)) ==
              k.add(k.pow(a, static_cast<std::uint64_t>(p)), k.pow(b, static_cast<std::uint64_t>(p))));
  }
}

TEST_CASE("quotient ring k[t]/(f) is a field of order |k|^deg f") {
  auto k = make_galois_field(2, 2);
  Poly f = poly::first_irreducible(k, 2);
  QuotientRing r(k, f, 't');
  CHECK(r.order() == 16);
  CHECK(r.prime_degree() == 4);
  check_field_axioms(r, 500, 7);
  for (Elem a = 1; a < r.order(); ++a) CHECK(r.pow(a, 15) == 1);
  // t is a root of f.
  const Elem t = r.variable_class();
  Elem v = 0;
  for (std::size_t i = f.size(); i-- > 0;) v = r.add(r.mul(v, t), r.embed(f[i]));
  CHECK(v == 0);

  auto k5 = make_galois_field(5, 1);
  QuotientRing r5(k5, poly::first_irreducible(k5, 3), 't');
  CHECK(r5.order() == 125);
  check_field_axioms(r5, 500, 11);
}

TEST_CASE("codes are base-p digit strings across the tower") {
  auto k = make_galois_field(3, 2);
  QuotientRing r(k, poly::first_irreducible(k, 2), 't');
  // Addition is digit-wise mod 3.
  for (Elem a = 0; a < r.order(); a += 7)
    for (Elem b = 0; b < r.order(); b += 5) {
      Elem x = a, y = b, sum = 0, scale = 1;
      for (int i = 0; i < 4; ++i) {
        sum += ((x % 3 + y % 3) % 3) * scale;
        x /= 3;
        y /= 3;
        scale *= 3;
      }
      CHECK(r.add(a, b) == sum);
    }
}

TEST_CASE("irreducible counts match the necklace formula") {
  for (auto [p, m] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {5, 1}, {2, 2}, {3, 2}})
    for (int n = 1; n <= (p * m <= 3 ? 6 : 4); ++n) {
      auto k = make_galois_field(static_cast<std::uint64_t>(p), static_cast<std::size_t>(m));
      CAPTURE(p);
      CAPTURE(m);
      CAPTURE(n);
      CHECK(poly::enumerate_irreducibles(k, static_cast<std::size_t>(n)).size() ==
            oracle::necklace(k.order(), n));
    }
}

TEST_CASE("first irreducible is lexicographically first") {
  auto f2 = make_galois_field(2, 1);
  CHECK(poly::to_string(f2, poly::first_irreducible(f2, 2), 't') == "t^2+t+1");
  CHECK(poly::to_string(f2, poly::first_irreducible(f2, 3), 't') == "t^3+t+1");
  auto f5 = make_galois_field(5, 1);
  CHECK(poly::to_string(f5, poly::first_irreducible(f5, 2), 't') == "t^2+2");
  auto list = poly::enumerate_irreducibles(f2, 4);
  REQUIRE(list.size() == 3);
  CHECK(poly::to_string(f2, list[0], 't') == "t^4+t+1");
}

TEST_CASE("polynomial parsing and factors") {
  auto f2 = make_galois_field(2, 1);
  CHECK(poly::parse(f2, "t^2+t+1") == Poly{1, 1, 1});
  CHECK(poly::parse(f2, "1,1,1") == Poly{1, 1, 1});
  CHECK(poly::parse(f2, "t^2 + 1") == Poly{1, 0, 1});
  CHECK_FALSE(poly::is_irreducible(f2, Poly{1, 0, 1}));
  CHECK(poly::find_factor(f2, Poly{1, 0, 1}) == Poly{1, 1});
  CHECK_THROWS_AS(poly::parse(f2, "t^^2"), Error);
  CHECK_THROWS_AS(poly::is_irreducible(f2, Poly{1}), Error);
  auto f3 = make_galois_field(3, 1);
  Poly a{1, 2, 0, 1}, b{2, 1};
  auto [q, r] = poly::divmod(f3, a, b);
  CHECK(poly::add(f3, poly::mul(f3, q, b), r) == a);
  auto inv = poly::inverse_mod(f3, Poly{1, 1}, poly::first_irreducible(f3, 3));
  CHECK(poly::mod_reduce(f3, poly::mul(f3, inv, Poly{1, 1}), poly::first_irreducible(f3, 3)) == Poly{1});
}
