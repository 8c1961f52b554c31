// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "hdx/instance.hpp"
#include "hdx/poly.hpp"
#include "hdx/unipotent.hpp"
#include "oracles.hpp"

using namespace hdx;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + std::string("FAILED ") + what;
    }
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

std::string fmt(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::uint64_t peak_rss_mb() {
  std::ifstream in("/proc/self/status");
  std::string line;
  while (std::getline(in, line))
    if (line.rfind("VmHWM:", 0) == 0) return std::stoull(line.substr(6)) / 1024;
  return 0;
}

InstanceSpec spec(std::uint64_t p, Mode mode, const std::string& f = "auto:2") {
  InstanceSpec s;
  s.p = p;
  s.f = f;
  s.mode = mode;
  return s;
}

const Clause* clause(const Certificate& c, const std::string& name) {
  for (const auto& cl : c.clauses)
    if (cl.name == name) return &cl;
  return nullptr;
}

double link_lambda2(Rank2Type type, std::uint64_t p, unsigned m = 1, Solver solver = Solver::Auto) {
  UnipotentGroup u(type, make_galois_field(p, m));
  Lambda2Options o;
  o.allow_disconnected = true;
  o.solver = solver;
  return lambda2(coset_graph(u, u.root_subgroup(0), u.root_subgroup(1)), o).lambda2;
}

// The explicit SL_3(F_4) instance, shared by several criteria.
struct Sl3 {
  Instance inst{spec(2, Mode::Explicit, "t^2+t+1")};
  ExplicitBuild build;
  Certificate cert;
  double seconds = 0;
};

Sl3& sl3() {
  static Sl3 s = [] {
    Sl3 out;
    const auto t0 = std::chrono::steady_clock::now();
    out.build = build_explicit(out.inst);
    out.cert = verify_explicit(out.inst, out.build);
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
  }();
  return s;
}

Outcome criterion1() {
  Outcome o;
  auto& s = sl3();
  const auto& X = s.build.complex.complex;
  auto f4 = oracle::f4();
  std::vector<oracle::Mat> gens;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j)
        for (int a : {1, 2}) gens.push_back(oracle::elementary(3, i, j, a));
  const auto bfs = oracle::BruteGroup::generate(f4, 3, gens).order();
  const std::uint64_t q = 4, formula = q * q * q * (q * q * q - 1) * (q * q - 1);
  o.require(s.build.group->order() == 60480 && formula == 60480 && bfs == 60480, "group order");
  o.note("|G| = " + std::to_string(s.build.group->order()) + " (formula " + std::to_string(formula) + ", oracle BFS " +
         std::to_string(bfs) + ")");
  auto prof = degree_profile(X);
  bool per_type = prof.size() == 3;
  for (int i = 0; i < 3 && per_type; ++i)
    per_type = s.cert.counts.at("vertices_type_" + std::to_string(i)) == 7560 && prof[static_cast<std::size_t>(i)].min == 8 &&
               prof[static_cast<std::size_t>(i)].max == 8;
  o.require(per_type && X.vertex_count() == 3 * 7560, "3 x 7560 vertices of degree 8");
  o.require(X.face_count() == 60480, "60480 triangles");
  o.require(is_partite(X), "3-partite");
  bool links_ok = true;
  for (const auto& l : connectivity_report(X)) links_ok = links_ok && l.all();
  o.require(links_ok, "links connected");
  o.note("3 x 7560 vertices, 60480 triangles, 3-partite, all links connected, degree 8 = 2^3");
  o.require(s.seconds < 300 && peak_rss_mb() < 4096, "runtime/memory");
  o.note("build + verify " + fmt(s.seconds, 1) + " s, peak RSS " + std::to_string(peak_rss_mb()) + " MB");
  return o;
}

Outcome criterion2() {
  Outcome o;
  for (std::uint64_t p : {5, 7}) {
    const double a2 = link_lambda2(Rank2Type::A2, p), b2 = link_lambda2(Rank2Type::B2, p);
    const double pa = oracle::a2_lambda2(static_cast<int>(p)), pb = oracle::b2_lambda2(static_cast<int>(p));
    o.require(std::abs(a2 - 1 / std::sqrt(double(p))) <= 1e-9 && std::abs(a2 - pa) <= 1e-9, "A2 p=" + std::to_string(p));
    o.require(std::abs(b2 - std::sqrt(2.0 / double(p))) <= 1e-9 && std::abs(b2 - pb) <= 1e-9, "B2 p=" + std::to_string(p));
    o.note("p=" + std::to_string(p) + ": A2 " + fmt(a2, 9) + ", B2 " + fmt(b2, 9));
  }
  for (std::uint64_t p : {2, 3}) {
    const double a2 = link_lambda2(Rank2Type::A2, p), b2 = link_lambda2(Rank2Type::B2, p);
    o.require(a2 <= 1 / std::sqrt(double(p)) + 1e-9, "A2 p=" + std::to_string(p) + " bound");
    o.require(b2 <= std::sqrt(2.0 / double(p)) + 1e-9, "B2 p=" + std::to_string(p) + " bound");
    o.note("p=" + std::to_string(p) + " measured: A2 " + fmt(a2) + ", B2 " + fmt(b2));
  }
  return o;
}

Outcome criterion3() {
  Outcome o;
  for (std::uint64_t p : {3, 5}) {
    UnipotentGroup u(Rank2Type::G2, make_galois_field(p, 1));
    auto g = coset_graph(u, u.root_subgroup(0), u.root_subgroup(1));
    Lambda2Options opt;
    opt.allow_disconnected = true;
    const double l = lambda2(g, opt).lambda2;
    const double bound = std::sqrt(std::sqrt(3.0 / double(p)) + 1.0 / double(p * p));
    o.require(l <= bound + 1e-9, "G2 p=" + std::to_string(p));
    o.note("p=" + std::to_string(p) + ": " + std::to_string(g.n) + " vertices, lambda2 " + fmt(l) + " <= " + fmt(bound));
  }
  return o;
}

Outcome criterion4() {
  Outcome o;
  for (auto [p, m] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
    UnipotentGroup u(Rank2Type::A1xA1, make_galois_field(p, m));
    auto g = coset_graph(u, u.root_subgroup(0), u.root_subgroup(1));
    const std::uint64_t q = u.order() == p * p ? p : p * p;
    const double l = lambda2(g).lambda2;
    o.require(g.n == 2 * q && g.edges.size() == q * q && std::abs(l) <= 1e-12, "q=" + std::to_string(q));
    o.note("q=" + std::to_string(q) + ": K_{" + std::to_string(q) + "," + std::to_string(q) + "}, |lambda2| = " +
           fmt(std::abs(l), 15));
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  auto& s = sl3();
  auto gcm = s.inst.gcm();
  std::size_t pairs = 0;
  for (const auto& [J, gj] : s.build.local) {
    o.require(gj.order() == abstract_local_order(gcm, J, s.inst.q()), "|phi(U_" + format_set(J) + ")|");
    for (const auto& [K, gk] : s.build.local) {
      auto r = ip_check(gj, gk, s.build.local.at(J & K));
      o.require(r.ok && r.computed == r.expected, "IP " + format_set(J) + " " + format_set(K));
      ++pairs;
    }
  }
  o.note(std::to_string(s.build.local.size()) + " local groups of order |k|^|Phi_J+|, " + std::to_string(pairs) +
         " intersection pairs exact");
  o.require(s.build.complex.core.order() == 1 && sharp_transitivity_check(s.build.complex, *s.build.group),
            "sharp transitivity");
  o.note("|H_0 cap H_1 cap H_2| = " + std::to_string(s.build.complex.core.order()));
  return o;
}

Outcome criterion6() {
  Outcome o;
  auto c5 = verify(Instance(spec(5, Mode::Certificate)));
  const double g5 = 1 / std::sqrt(5.0);
  o.require(std::abs(c5.gamma.value - g5) <= 1e-12 && c5.gamma.value <= 0.5, "F5 gamma");
  o.require(c5.trickling.applicable && std::abs(c5.trickling.gamma_prime - g5 / (1 - g5)) <= 1e-12 &&
                std::abs(c5.trickling.gamma_prime - 0.8090) <= 1e-4,
            "F5 gamma'");
  o.require(c5.surjective.value_or(false) && c5.local_injective.value_or(false) && c5.ip.value_or(false),
            "F5 hypotheses");
  bool links = c5.links.size() == 3;
  for (const auto& l : c5.links) links = links && l.pass && std::abs(l.lambda2 - g5) <= 1e-9;
  o.require(links && c5.certified(), "F5 certificate");
  o.note("F5: gamma " + fmt(c5.gamma.value) + ", gamma' " + fmt(c5.trickling.gamma_prime) + ", |G| " + c5.group_order +
         ", certified");
  auto c2 = verify(Instance(spec(2, Mode::Certificate)));
  o.require(!c2.trickling.applicable && std::abs(c2.gamma.value - 1 / std::sqrt(2.0)) <= 1e-12, "F2 not applicable");
  o.note("F2: gamma " + fmt(c2.gamma.value) + " > 1/2, NotApplicable");
  return o;
}

Outcome criterion7() {
  Outcome o;
  auto& s = sl3();
  const auto* bal = clause(s.cert, "balanced_weights");
  o.require(bal && bal->ok, "balanced weights");
  const auto* iso = clause(s.cert, "link_isomorphism");
  o.require(iso && iso->ok && iso->detail.find("200") != std::string::npos, "link isomorphism");
  o.note(bal ? bal->detail : "no balance clause");
  o.note("link isomorphism: " + (iso ? iso->detail : std::string("missing")));

  std::size_t relations = 0;
  for (std::uint64_t p : {2, 3, 5}) {
    auto k = make_galois_field(p, 1);
    KmsMap phi(k, poly::first_irreducible(k, 2), 2);
    const auto gcm = cartan_preset("A~2");
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        auto r = check_kms_relations(phi, gcm, i, j);
        o.require(r.ok, "relations p=" + std::to_string(p));
        relations += r.checked;
      }
  }
  o.note(std::to_string(relations) + " commutator relations over F2, F3, F5");

  double worst = 0;
  for (auto [type, p] : std::vector<std::pair<Rank2Type, std::uint64_t>>{{Rank2Type::A2, 7}, {Rank2Type::B2, 7}, {Rank2Type::G2, 3}})
    worst = std::max(worst, std::abs(link_lambda2(type, p, 1, Solver::Dense) - link_lambda2(type, p, 1, Solver::Lanczos)));
  o.require(worst <= 1e-6, "dense vs Lanczos");
  o.note("dense vs Lanczos max difference " + fmt(worst, 12));

  auto again = build_explicit(s.inst);
  const bool same_complex = complex_file_text(s.inst, s.build) == complex_file_text(s.inst, again);
  const bool same_cert = certificate_json(s.cert) == certificate_json(verify_explicit(s.inst, again));
  Instance f5(spec(5, Mode::Certificate));
  const bool same_bundle = bundle_file_text(f5) == bundle_file_text(Instance(spec(5, Mode::Certificate)));
  o.require(same_complex && same_cert && same_bundle, "determinism");
  o.note("complex file, certificate JSON and bundle file byte-identical on rerun");
  return o;
}

Outcome criterion8() {
  Outcome o;
  auto& s = sl3();
  const auto& G = *s.build.group;
  auto sub = [&](IndexSet J) { return G.subgroup_of(s.build.local.at(J)); };
  struct Family {
    std::string name;
    std::vector<Subgroup> h;
  };
  // H_0 = phi(U_{1,2}), H_1 = phi(U_{0,2}), H_2 = phi(U_{0,1}).
  const std::vector<Family> families{
      {"full", {sub(0b110), sub(0b101), sub(0b011)}},
      {"H_0 -> <U_1>", {sub(0b010), sub(0b101), sub(0b011)}},
      {"U_0 dropped everywhere", {sub(0b110), sub(0b100), sub(0b010)}},
      {"U_1, U_2 dropped from H_0, H_1", {sub(0b000), sub(0b001), sub(0b011)}},
  };
  int agree = 0;
  for (const auto& f : families) {
    std::vector<const Subgroup*> ptrs;
    for (const auto& h : f.h) ptrs.push_back(&h);
    const bool generates = generated_by(G, ptrs).order() == G.order();
    const bool connected = is_connected(build_coset_complex(G, f.h).complex);
    o.require(generates == connected, f.name);
    agree += generates == connected;
    o.note(f.name + ": generates " + (generates ? "yes" : "no") + ", connected " + (connected ? "yes" : "no"));
  }
  o.require(agree == 4, "connectivity iff generation");

  const auto& full = s.build.local.at(0b001);
  auto truncated = MatrixGroup::from_elements(full.context(), {full.element(0)});
  auto r = ip_check(s.build.local.at(0b011), s.build.local.at(0b101), truncated);
  o.require(!r.ok && r.witness.has_value() && !truncated.find(*r.witness).has_value(), "truncated ip_check");
  o.note("truncated phi(U_{0}) rejected with witness, computed " + std::to_string(r.computed) + " vs expected " +
         std::to_string(r.expected));
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"explicit SL_3(F_4) complex", criterion1},
      {"A2 / B2 link spectral equalities", criterion2},
      {"G2 triple-edge bound", criterion3},
      {"A1xA1 complete bipartite links", criterion4},
      {"intersection property, injectivity, sharp transitivity", criterion5},
      {"trickling-down certificate", criterion6},
      {"property suites", criterion7},
      {"negative controls", criterion8},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] criterion %zu: %s (%.1f s) | %s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), sec,
                o.detail.c_str());
    std::fflush(stdout);
    failed += !o.ok;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
