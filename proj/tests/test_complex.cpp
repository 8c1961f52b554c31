#include <doctest.h>

#include <random>

#include "hdx/complex.hpp"
#include "hdx/unipotent.hpp"

using namespace hdx;

namespace {

// Two triangles {0,1,2}, {1,2,3} with types 0,1,2,0.
PureComplex bowtie() { return PureComplex(2, {0, 1, 2, 0}, {0, 1, 2, 3}, {{0, 1, 2}, {3, 2, 1}}); }

// All subgroups generated by at most two elements, deduplicated.
std::vector<Subgroup> small_subgroups(const FiniteGroup& g) {
  std::vector<Subgroup> out;
  auto add = [&](Subgroup s) {
    for (const auto& t : out)
      if (t == s) return;
    out.push_back(std::move(s));
  };
  for (ElemId a = 0; a < g.order(); ++a) add(closure(g, {a}));
  const std::size_t cyclic = out.size();
  for (std::size_t i = 0; i < cyclic; ++i)
    for (std::size_t j = i + 1; j < cyclic; ++j) {
      std::vector<ElemId> gens(out[i].elements());
      gens.insert(gens.end(), out[j].elements().begin(), out[j].elements().end());
      add(closure(g, gens));
    }
  return out;
}

}  // namespace

TEST_CASE("faces, weights and links of a small complex") {
  auto x = bowtie();
  CHECK(x.face_count() == 2);
  CHECK(faces(x, 0).size() == 4);
  CHECK(faces(x, 1).size() == 5);
  CHECK(faces(x, -1).size() == 1);
  CHECK(weight(x, {1, 2}) == 2);
  CHECK(weight(x, {0, 1}) == 1);
  CHECK(weight(x, {1}) == 4);
  CHECK(weight(x, {}) == 12);
  CHECK(weight(x, {0, 1, 2}) == 1);
  CHECK_THROWS_AS(weight(x, {0, 3}), Error);
  CHECK(factorial(5) == 120);

  auto l = link(x, {1});
  CHECK(l.dim() == 1);
  CHECK(l.vertex_count() == 3);
  CHECK(l.face_count() == 2);
  CHECK(l.vertex_label(0) == 0);
  CHECK(l.vertex_label(2) == 3);
  CHECK(is_connected(l));
  auto le = link(x, {1, 2});
  CHECK(le.dim() == 0);
  CHECK(le.vertex_count() == 2);
  CHECK_FALSE(is_connected(le));

  CHECK(is_partite(x));
  CHECK(check_balanced(x).balanced);
  auto g = one_skeleton(x);
  CHECK(g.n == 4);
  CHECK(g.edges.size() == 5);
  auto prof = degree_profile(x);
  REQUIRE(prof.size() == 3);
  CHECK(prof[0].min == 1);
  CHECK(prof[1].max == 2);

  // Dimensions -1..d-2: the whole complex and the four vertex links.
  auto rep = connectivity_report(x);
  REQUIRE(rep.size() == 2);
  CHECK(rep[0].k == -1);
  CHECK(rep[0].all());
  CHECK(rep[1].faces == 4);
  CHECK(rep[1].all());
  auto rep1 = connectivity_report(x, 1);
  REQUIRE(rep1.size() == 3);
  CHECK(rep1[2].faces == 5);
  CHECK(rep1[2].connected == 4);  // only {1,2} has two vertices in its link
}

TEST_CASE("non-partite and disconnected complexes") {
  PureComplex bad(1, {0, 0}, {0, 1}, {{0, 1}});
  CHECK_FALSE(is_partite(bad));
  PureComplex two(1, {0, 1, 0, 1}, {0, 1, 2, 3}, {{0, 1}, {2, 3}});
  CHECK_FALSE(is_connected(two));
  CHECK_THROWS_AS(PureComplex(2, {0, 1}, {0, 1}, {{0, 1}}), Error);
  CHECK_THROWS_AS(PureComplex(1, {0, 1}, {0, 1}, {{0, 5}}), Error);
}

TEST_CASE("A1xA1 coset complex is K_{q,q}") {
  UnipotentGroup u(Rank2Type::A1xA1, make_galois_field(3, 1));
  auto cc = build_coset_complex(u, {u.root_subgroup(0), u.root_subgroup(1)});
  CHECK(cc.complex.vertex_count() == 6);
  CHECK(cc.complex.face_count() == 9);
  CHECK(sharp_transitivity_check(cc, u));
  CHECK(cc.core.order() == 1);
}

TEST_CASE("coset complex structure under sampled group elements") {
  // H_i = root subgroups of a, b and a+b in U_{B2}(F_3).
  UnipotentGroup u(Rank2Type::B2, make_galois_field(3, 1));
  std::vector<Subgroup> h{u.root_subgroup(0), u.root_subgroup(1), u.root_subgroup(2)};
  auto cc = build_coset_complex(u, h);
  const auto& x = cc.complex;
  CHECK(x.dim() == 2);
  CHECK(x.face_count() == u.order());
  CHECK(x.vertex_count() == 3 * 27);
  CHECK(is_partite(x));
  CHECK(check_balanced(x).balanced);
  for (const auto& tau : faces(x, 0)) CHECK(check_balanced(link(x, tau)).balanced);
  std::mt19937_64 rng(3);
  CHECK(check_left_action(cc, u, 30, rng));
  auto iso = check_link_isomorphism(cc, u, h, 50, rng);
  CHECK(iso.ok);
  CHECK(iso.sampled == 50);
  // Vertex gH_i is labelled by its minimal coset element.
  for (int i = 0; i < 3; ++i)
    for (ElemId g = 0; g < u.order(); g += 5) {
      const auto v = cc.vertex_of(i, g);
      CHECK(x.vertex_type(v) == i);
      CHECK(cc.cosets[static_cast<std::size_t>(i)].label[x.vertex_label(v)] ==
            cc.cosets[static_cast<std::size_t>(i)].label[g]);
    }
}

TEST_CASE("connectivity holds exactly when the subgroups generate the group") {
  for (auto [type, p] : std::vector<std::pair<Rank2Type, int>>{{Rank2Type::A2, 2}, {Rank2Type::A2, 3}, {Rank2Type::B2, 2}}) {
    UnipotentGroup u(type, make_galois_field(static_cast<std::uint64_t>(p), 1));
    auto subs = small_subgroups(u);
    int connected = 0, disconnected = 0;
    for (std::size_t i = 0; i < subs.size(); ++i)
      for (std::size_t j = i; j < subs.size(); ++j) {
        if (subs[i].order() == u.order() || subs[j].order() == u.order()) continue;
        auto cc = build_coset_complex(u, {subs[i], subs[j]});
        const bool gen = generated_by(u, {&subs[i], &subs[j]}).order() == u.order();
        CHECK(is_connected(cc.complex) == gen);
        (gen ? connected : disconnected) += 1;
      }
    CHECK(connected > 0);
    CHECK(disconnected > 0);
  }
}
