#include "hdx/instance.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <random>

#include "detail.hpp"
#include "hdx/poly.hpp"
#include "hdx/unipotent.hpp"

namespace hdx {

using ojson = nlohmann::ordered_json;

const char* to_string(Mode m) noexcept { return m == Mode::Explicit ? "explicit" : "certificate"; }

Mode parse_mode(const std::string& s) {
  if (s == "explicit") return Mode::Explicit;
  if (s == "certificate") return Mode::Certificate;
  throw Error(ErrorKind::Spec, "mode must be 'explicit' or 'certificate', got '" + s + "'");
}

InstanceSpec spec_from_json(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text.empty() ? "{}" : text);
  } catch (const std::exception& e) {
    throw Error(ErrorKind::Spec, std::string("malformed instance JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::Spec, "instance JSON must be an object");
  InstanceSpec s;
  try {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const auto& key = it.key();
      const auto& v = it.value();
      if (key == "preset") s.preset = v.get<std::string>();
      else if (key == "gcm") s.gcm = v.is_string() ? v.get<std::string>() : v.dump();
      else if (key == "p") s.p = v.get<std::uint64_t>();
      else if (key == "m") s.m = v.get<unsigned>();
      else if (key == "f") s.f = v.get<std::string>();
      else if (key == "mode") s.mode = parse_mode(v.get<std::string>());
      else if (key == "budget") s.budget = v.get<std::uint64_t>();
      else if (key == "tol") s.tol = v.get<double>();
      else if (key == "workers") s.workers = v.get<int>();
      else throw Error(ErrorKind::Spec, "unknown instance field '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Spec, std::string("bad instance field type: ") + e.what());
  }
  return s;
}

std::string spec_to_json(const InstanceSpec& s) {
  ojson j;
  j["preset"] = s.preset;
  if (!s.gcm.empty()) j["gcm"] = s.gcm;
  j["p"] = s.p;
  j["m"] = s.m;
  j["f"] = s.f;
  j["mode"] = to_string(s.mode);
  j["budget"] = s.budget;
  j["tol"] = s.tol;
  j["workers"] = s.workers;
  return j.dump();
}

namespace {

CartanMatrix resolve_gcm(const InstanceSpec& s, std::string& diagram) {
  if (!s.gcm.empty()) {
    diagram = "custom";
    return parse_cartan_matrix(s.gcm);
  }
  diagram = s.preset;
  return cartan_preset(s.preset);
}

GaloisField resolve_field(const InstanceSpec& s) {
  if (!is_prime(s.p)) throw Error(ErrorKind::Spec, "p = " + std::to_string(s.p) + " is not prime");
  if (s.m < 1) throw Error(ErrorKind::Spec, "extension degree m must be at least 1");
  if (poly::checked_pow(s.p, s.m) > kTableThreshold) throw Error(ErrorKind::Spec, "|k| = p^m must be at most 2^16");
  return make_galois_field(s.p, s.m);
}

Poly resolve_f(const GaloisField& k, const std::string& text) {
  Poly f;
  if (text.rfind("auto:", 0) == 0) {
    int deg = 0;
    try {
      deg = std::stoi(text.substr(5));
    } catch (...) {
      throw Error(ErrorKind::Spec, "malformed '" + text + "'; expected auto:<degree>");
    }
    if (deg < 2) throw Error(ErrorKind::Spec, "f must have degree >= 2 (got auto:" + std::to_string(deg) + ")");
    return poly::first_irreducible(k, static_cast<std::size_t>(deg));
  }
  f = poly::parse(k, text);
  if (poly::degree(f) < 2) throw Error(ErrorKind::Spec, "f must have degree >= 2");
  if (f.back() != 1) throw Error(ErrorKind::Spec, "f must be monic");
  if (!poly::is_irreducible(k, f))
    throw Error(ErrorKind::Spec, "f = " + poly::to_string(k, f, 't') + " is reducible (factor " +
                                     poly::to_string(k, poly::find_factor(k, f), 't') + ")");
  return f;
}

}  // namespace

namespace detail {

std::string join_failures(const std::vector<std::string>& items, std::size_t limit) {
  std::string out;
  for (std::size_t i = 0; i < items.size() && i < limit; ++i) out += (i ? "; " : "") + items[i];
  if (items.size() > limit) out += "; ... (" + std::to_string(items.size()) + " total)";
  return out;
}

std::string format_face(const PureComplex& x, const Face& f) {
  std::string out = "(";
  for (std::size_t i = 0; i < f.size(); ++i)
    out += (i ? "," : "") + std::to_string(f[i]) + ":" + std::to_string(x.vertex_type(f[i]));
  return out + ")";
}

}  // namespace detail

using detail::format_face;
using detail::join_failures;

Instance::Instance(InstanceSpec spec)
    : spec_(std::move(spec)), gcm_(resolve_gcm(spec_, diagram_)), k_(resolve_field(spec_)), f_(resolve_f(k_, spec_.f)) {
  if (gcm_.rank() < 2) throw Error(ErrorKind::Spec, "diagram must have at least two nodes");
  for (int i = 0; i < gcm_.rank(); ++i)
    for (int j = i + 1; j < gcm_.rank(); ++j) classify_pair(gcm_, i, j);
  if (!is_d_spherical(gcm_)) throw Error(ErrorKind::NonSpherical, "diagram is not d-spherical");
  if (!is_purely_d_spherical(gcm_)) throw Error(ErrorKind::Spec, "diagram must be purely d-spherical and non-spherical");
  if (spec_.workers < 1) throw Error(ErrorKind::Spec, "workers must be at least 1");
  if (spec_.budget < 1) throw Error(ErrorKind::Spec, "budget must be positive");
  if (spec_.tol < 0) throw Error(ErrorKind::Spec, "tolerance must be non-negative");
  type_a_ = affine_type_a_rank(gcm_) > 0;
}

std::string Instance::f_text() const { return poly::to_string(k_, f_, 't'); }

std::string Instance::g_text() const { return poly::to_string(k_.base(), k_.modulus(), 'x'); }

std::uint64_t Instance::ring_order() const { return poly::checked_pow(k_.order(), static_cast<std::size_t>(poly::degree(f_))); }

KmsMap Instance::kms() const {
  if (!type_a_) throw Error(ErrorKind::Unsupported, "the matrix model is implemented for affine type A diagrams only");
  return KmsMap(k_, f_, d());
}

std::string Instance::predicted_order() const {
  if (!type_a_) return "";
  return sl_order_string(d() + 1, ring_order());
}

std::uint64_t Instance::degree_bound() const {
  std::uint64_t best = 0;
  for (int i = 0; i <= d(); ++i) best = std::max(best, abstract_local_order(gcm_, gcm_.all() & ~(IndexSet{1} << i), q()));
  return best;
}

std::vector<std::string> Certificate::failed() const {
  std::vector<std::string> out;
  for (const auto& c : clauses)
    if (!c.ok) out.push_back(c.name);
  return out;
}

// ---------------------------------------------------------------------------

namespace detail {

std::map<IndexSet, MatrixGroup> local_groups(const Instance& inst, const KmsMap& phi, std::uint64_t budget) {
  std::map<IndexSet, MatrixGroup> out;
  for (IndexSet J : spherical_subsets(inst.gcm()))
    out.emplace(J, MatrixGroup::closure(phi.context(), phi.generators(J), budget));
  return out;
}

void base_fields(const Instance& inst, Certificate& c) {
  c.diagram = inst.diagram();
  c.gcm = inst.gcm().to_json();
  c.d = inst.d();
  c.p = inst.spec().p;
  c.m = inst.spec().m;
  c.g = inst.g_text();
  c.f = inst.f_text();
  c.group_order = inst.predicted_order();
  c.degree_bound = inst.degree_bound();
  c.gamma = gamma_bound(inst.gcm(), inst.spec().p, inst.spec().m);
  c.trickling = trickling(c.gamma.value, inst.d());
}

// Subgroup-level hypotheses shared by every mode.
void subgroup_checks(const Instance& inst, const KmsMap& phi, const std::map<IndexSet, MatrixGroup>& local,
                     Certificate& c) {
  const auto& gcm = inst.gcm();
  const IndexSet all = gcm.all();
  {
    std::vector<std::string> bad;
    for (const auto& [J, grp] : local) {
      const std::uint64_t want = abstract_local_order(gcm, J, inst.q());
      if (grp.order() != want)
        bad.push_back("|phi(U_" + format_set(J) + ")| = " + std::to_string(grp.order()) + " != " + std::to_string(want));
    }
    c.local_injective = bad.empty();
    c.clauses.push_back({"local_injectivity", bad.empty(),
                         bad.empty() ? std::to_string(local.size()) + " local groups have order q^|Phi_J+|" : join_failures(bad)});
  }
  {
    std::vector<std::string> bad;
    std::uint64_t pairs = 0;
    for (const auto& [J, gj] : local)
      for (const auto& [K, gk] : local) {
        ++pairs;
        auto r = ip_check(gj, gk, local.at(J & K));
        if (!r.ok)
          bad.push_back("phi(U_" + format_set(J) + ") cap phi(U_" + format_set(K) + ") has order " +
                        std::to_string(r.computed) + ", expected " + std::to_string(r.expected) + ", witness " +
                        format_matrix(phi.context(), *r.witness));
      }
    c.ip = bad.empty();
    c.clauses.push_back({"intersection_property", bad.empty(),
                         bad.empty() ? std::to_string(pairs) + " pairs (J, K) checked" : join_failures(bad)});
  }
  {
    std::vector<std::string> bad;
    std::uint64_t checked = 0;
    for (int i = 0; i < gcm.rank(); ++i)
      for (int j = i + 1; j < gcm.rank(); ++j) {
        auto r = check_kms_relations(phi, gcm, i, j);
        checked += r.checked;
        if (!r.ok) bad.push_back(r.failure);
      }
    c.clauses.push_back({"kms_relations", bad.empty(),
                         bad.empty() ? std::to_string(checked) + " relation instances hold" : join_failures(bad)});
  }
  {
    std::vector<std::string> bad;
    for (const auto& [J, grp] : local) {
      if (set_size(J) < 2) continue;
      std::vector<Matrix> gens;
      for (int i : set_members(J)) {
        const auto& part = local.at(J & ~(IndexSet{1} << i));
        for (ElemId x = 0; x < part.order(); ++x) gens.push_back(part.element(x));
      }
      auto gen = MatrixGroup::closure(phi.context(), gens, grp.order() + 1);
      if (gen.order() != grp.order()) bad.push_back("phi(U_" + format_set(J) + ") not generated by its faces");
    }
    c.clauses.push_back({"local_generation", bad.empty(),
                         bad.empty() ? "phi(U_J) = <phi(U_{J-i})> for all spherical J, |J| >= 2" : join_failures(bad)});
  }
  {
    auto s = surjectivity_by_root_subgroups(phi);
    c.surjective = s.surjective;
    std::string detail = "root-subgroup spans reach dim " + std::to_string(s.ring_dimension) + " over F_p";
    if (!s.surjective) {
      detail = "spans:";
      for (const auto& [pos, dim] : s.span_dims)
        detail += " (" + std::to_string(pos.first) + "," + std::to_string(pos.second) + "):" + std::to_string(dim);
    }
    c.clauses.push_back({"surjective", s.surjective, detail});
  }
  {
    MatrixGroup core = local.at(all & ~IndexSet{1});
    for (int i = 1; i <= inst.d(); ++i) core = intersect(core, local.at(all & ~(IndexSet{1} << i)));
    c.sharp_transitive = core.order() == 1;
    c.clauses.push_back({"sharp_transitive", core.order() == 1,
                         "|H_0 cap ... cap H_d| = " + std::to_string(core.order())});
  }
}

// One representative link per cotype pair {i, j}: CC(U_ij(k), (U_i, U_j))
// from the abstract group, and from phi(U_ij) when a matrix model exists.
std::vector<CotypeLink> representative_links(const Instance& inst, const std::map<IndexSet, MatrixGroup>* local,
                                             const KmsMap* phi, double gamma, double tol) {
  std::vector<CotypeLink> out;
  const auto& gcm = inst.gcm();
  Lambda2Options opt;
  opt.allow_disconnected = true;
  opt.tol = tol;
  for (int i = 0; i < gcm.rank(); ++i)
    for (int j = i + 1; j < gcm.rank(); ++j) {
      const Rank2Type type = classify_pair(gcm, i, j);
      UnipotentGroup u(type, inst.k());
      const bool i_short = short_node(gcm, i, j) == i;
      const Subgroup ui = u.root_subgroup(i_short ? 0 : 1);
      const Subgroup uj = u.root_subgroup(i_short ? 1 : 0);
      WeightedGraph gr = coset_graph(u, ui, uj);
      CotypeLink l;
      l.cotype = format_set((IndexSet{1} << i) | (IndexSet{1} << j));
      l.rank2_type = to_string(type);
      l.size = gr.n;
      l.count = 1;
      l.lambda2 = lambda2(gr, opt).lambda2;
      if (local && phi) {
        const IndexSet ij = (IndexSet{1} << i) | (IndexSet{1} << j);
        const auto& big = local->at(ij);
        SubgroupView view(whole_group(big));
        Subgroup a = view.localize(big.subgroup_of(local->at(IndexSet{1} << i)));
        Subgroup b = view.localize(big.subgroup_of(local->at(IndexSet{1} << j)));
        l.lambda2_matrix = lambda2(coset_graph(view, a, b), opt).lambda2;
      }
      const double slack = tol > 0 ? tol : (gr.n <= kDenseLimit ? kDenseTol : kIterativeTol);
      l.pass = l.lambda2 <= gamma + slack && (!l.lambda2_matrix || *l.lambda2_matrix <= gamma + slack);
      out.push_back(l);
    }
  return out;
}

void link_clause(Certificate& c) {
  std::vector<std::string> bad;
  for (const auto& l : c.links)
    if (!l.pass) bad.push_back("cotype " + l.cotype + " lambda2 = " + std::to_string(l.lambda2));
  c.clauses.push_back({"link_spectral_bound", bad.empty(),
                       bad.empty() ? "all links satisfy lambda2 <= gamma = " + std::to_string(c.gamma.value)
                                   : join_failures(bad)});
}

}  // namespace detail

using detail::link_clause;
using detail::local_groups;
using detail::representative_links;

ExplicitBuild build_explicit(const Instance& inst) {
  KmsMap phi = inst.kms();
  const auto predicted = sl_order(inst.d() + 1, inst.ring_order());
  if (!predicted || *predicted > inst.spec().budget)
    throw ResourceError("explicit mode would enumerate |G| = |SL_" + std::to_string(inst.d() + 1) + "(F_" +
                            std::to_string(inst.ring_order()) + ")| = " + inst.predicted_order() +
                            " elements, above the budget of " + std::to_string(inst.spec().budget) +
                            "; use certificate mode or raise the budget",
                        0);
  ExplicitBuild b;
  b.group = std::make_unique<MatrixGroup>(
      MatrixGroup::closure(phi.context(), phi.generators(inst.gcm().all()), inst.spec().budget));
  b.local = local_groups(inst, phi, inst.spec().budget);
  for (int i = 0; i <= inst.d(); ++i) b.h.push_back(b.group->subgroup_of(b.local.at(inst.gcm().all() & ~(IndexSet{1} << i))));
  b.complex = build_coset_complex(*b.group, b.h);
  return b;
}

namespace detail {

void complex_checks(const Instance& inst, const PureComplex& X, Certificate& c) {
  const int d = inst.d();
  const IndexSet all = inst.gcm().all();
  c.counts["vertices"] = X.vertex_count();
  c.counts["maximal_faces"] = X.face_count();
  {
    std::vector<std::uint64_t> per_type(static_cast<std::size_t>(d + 1), 0);
    bool ok = is_partite(X) && X.dim() == d;
    for (VertexId v = 0; v < X.vertex_count(); ++v) {
      const int t = X.vertex_type(v);
      if (t < 0 || t > d) ok = false;
      else ++per_type[static_cast<std::size_t>(t)];
    }
    std::string detail;
    for (int i = 0; i <= d; ++i) {
      c.counts["vertices_type_" + std::to_string(i)] = per_type[static_cast<std::size_t>(i)];
      detail += (i ? " + " : "") + std::to_string(per_type[static_cast<std::size_t>(i)]);
    }
    c.clauses.push_back({"pure_partite", ok, std::to_string(d + 1) + "-partite, vertices " + detail + ", " +
                                                 std::to_string(X.face_count()) + " maximal faces"});
  }
  {
    auto levels = connectivity_report(X);
    bool ok = true;
    std::string detail;
    for (const auto& l : levels) {
      ok = ok && l.all();
      detail += (detail.empty() ? "" : "; ") + std::string("dim ") + std::to_string(l.k) + ": " +
                std::to_string(l.connected) + "/" + std::to_string(l.faces) + " links connected";
    }
    c.clauses.push_back({"links_connected", ok, detail});
  }
  {
    bool ok = true;
    std::string detail;
    for (const auto& t : degree_profile(X)) {
      const auto want = abstract_local_order(inst.gcm(), all & ~(IndexSet{1} << t.type), inst.q());
      if (t.min != t.max || t.min != want) ok = false;
      detail += (detail.empty() ? "" : "; ") + std::string("type ") + std::to_string(t.type) + ": " +
                std::to_string(t.min) + ".." + std::to_string(t.max) + " (q^l = " + std::to_string(want) + ")";
    }
    c.clauses.push_back({"vertex_degree", ok, detail});
  }
  {
    Lambda2Options lo;
    lo.tol = inst.spec().tol;
    auto rep = link_bound_check(X, c.gamma.value, lo, inst.spec().workers);
    std::map<IndexSet, CotypeLink> by_cotype;
    bool regular = true;
    for (const auto& r : rep.links) {
      IndexSet types = 0;
      for (VertexId v : r.face) types |= IndexSet{1} << X.vertex_type(v);
      const IndexSet cot = all & ~types;
      auto& l = by_cotype[cot];
      if (l.count == 0) {
        auto mem = set_members(cot);
        l.cotype = format_set(cot);
        l.rank2_type = to_string(classify_pair(inst.gcm(), mem[0], mem[1]));
        l.size = r.size;
        l.lambda2 = r.lambda2;
      }
      ++l.count;
      l.lambda2 = std::max(l.lambda2, r.lambda2);
      l.pass = l.pass && r.pass;
      regular = regular && r.regular && r.bipartite_symmetric;
    }
    for (auto& [cot, l] : by_cotype) c.links.push_back(l);
    link_clause(c);
    if (!rep.all_pass) c.clauses.back().detail += ", witness " + format_face(X, *rep.witness);
    c.clauses.push_back({"link_regularity", regular, "link graphs are regular with spectra symmetric about 0"});
  }
  {
    bool ok = true;
    Face witness;
    std::uint64_t checked = 0;
    auto top = check_balanced(X);
    checked += top.checked;
    if (!top.balanced) {
      ok = false;
      witness = top.witness;
    }
    for (int k = 0; k < d && ok; ++k)
      for (const auto& tau : faces(X, k)) {
        auto r = check_balanced(link(X, tau));
        checked += r.checked;
        if (!r.balanced) {
          ok = false;
          witness = tau;
          break;
        }
      }
    c.clauses.push_back({"balanced_weights", ok,
                         ok ? std::to_string(checked) + " exact identities" : "fails at " + format_face(X, witness)});
  }
}

}  // namespace detail

Certificate verify_explicit(const Instance& inst, const ExplicitBuild& build, const VerifyOptions& opt) {
  Certificate c;
  c.mode = Mode::Explicit;
  c.source = "spec";
  detail::base_fields(inst, c);
  KmsMap phi = inst.kms();
  const auto& G = *build.group;
  const auto& X = build.complex.complex;
  const int d = inst.d();
  const IndexSet all = inst.gcm().all();

  c.counts["group_order"] = G.order();
  const bool order_ok = std::to_string(G.order()) == inst.predicted_order();
  c.clauses.push_back({"group_order", order_ok,
                       "BFS closure " + std::to_string(G.order()) + " vs order formula " + inst.predicted_order()});
  detail::subgroup_checks(inst, phi, build.local, c);
  if (!order_ok) c.surjective = false;
  detail::complex_checks(inst, X, c);
  {
    // Vertex classes are cosets: |G/H_i| * |H_i| = |G| and deg(gH_i) = |H_i|.
    bool ok = true;
    std::string detail;
    for (int i = 0; i <= d; ++i) {
      const auto n = build.complex.cosets[static_cast<std::size_t>(i)].reps.size();
      const auto hi = build.h[static_cast<std::size_t>(i)].order();
      if (n * hi != G.order()) ok = false;
      for (VertexId v = build.complex.offsets[static_cast<std::size_t>(i)];
           v < build.complex.offsets[static_cast<std::size_t>(i)] + n; ++v)
        if (X.degree(v) != hi) ok = false;
      detail += (detail.empty() ? "" : "; ") + std::string("|G/H_") + std::to_string(i) + "| = " + std::to_string(n) +
                ", |H_" + std::to_string(i) + "| = " + std::to_string(hi);
    }
    c.clauses.push_back({"coset_structure", ok, detail});
  }
  {
    const bool sharp = sharp_transitivity_check(build.complex, G);
    c.sharp_transitive = c.sharp_transitive.value_or(true) && sharp;
    c.clauses.push_back({"sharp_transitive_action", sharp,
                         "|core| = " + std::to_string(build.complex.core.order()) + ", maximal faces " +
                             std::to_string(X.face_count()) + " vs |G| " + std::to_string(G.order())});
  }
  {
    // <H_{T+i} : i not in T> = H_T for every face type T up to dimension d-2.
    bool ok = true;
    std::string bad;
    for (IndexSet T = 0; T < all; ++T) {
      if (set_size(T) > d - 1) continue;
      Subgroup ht = whole_group(G);
      for (int i : set_members(T)) ht = intersect(ht, build.h[static_cast<std::size_t>(i)]);
      std::vector<Subgroup> parts;
      for (int i = 0; i <= d; ++i)
        if (!set_contains(T, i)) parts.push_back(intersect(ht, build.h[static_cast<std::size_t>(i)]));
      std::vector<const Subgroup*> ptrs;
      for (const auto& s : parts) ptrs.push_back(&s);
      if (generated_by(G, ptrs).order() != ht.order()) {
        ok = false;
        bad = "fails for T = " + format_set(T);
      }
    }
    c.clauses.push_back({"generation_criterion", ok, ok ? "<H_{T+i}> = H_T for all |T| <= d-1" : bad});
  }
  std::mt19937_64 rng(opt.seed);
  {
    auto r = check_link_isomorphism(build.complex, G, build.h, opt.link_iso_samples, rng);
    c.clauses.push_back({"link_isomorphism", r.ok,
                         r.ok ? std::to_string(r.sampled) + " sampled faces" : "fails at " + format_face(X, r.witness)});
  }
  {
    const bool ok = check_left_action(build.complex, G, opt.action_samples, rng);
    c.clauses.push_back({"left_action", ok, std::to_string(opt.action_samples) + " sampled group elements"});
  }
  if (opt.global_spectrum) {
    Lambda2Options lo;
    lo.tol = inst.spec().tol;
    c.global_lambda2 = global_lambda2(X, lo).lambda2;
  }
  return c;
}

Certificate verify_certificate(const Instance& inst) {
  Certificate c;
  c.mode = Mode::Certificate;
  c.source = "spec";
  detail::base_fields(inst, c);
  if (!inst.type_a()) {
    c.links = representative_links(inst, nullptr, nullptr, c.gamma.value, inst.spec().tol);
    link_clause(c);
    c.clauses.push_back({"matrix_model", false,
                         "no matrix model for this diagram; surjectivity, injectivity and the intersection property "
                         "are not checked"});
    return c;
  }
  KmsMap phi = inst.kms();
  auto local = local_groups(inst, phi, inst.spec().budget);
  detail::subgroup_checks(inst, phi, local, c);
  for (const auto& [J, grp] : local) c.counts["subgroup_" + format_set(J)] = grp.order();
  // Connectivity of X and of all links through generation at subgroup level.
  bool gen_ok = c.surjective.value_or(false);
  for (const auto& cl : c.clauses)
    if (cl.name == "local_generation") gen_ok = gen_ok && cl.ok;
  c.clauses.push_back({"links_connected", gen_ok, "<H_i> = G by surjectivity; <H_{T+i}> = H_T by local generation"});
  c.links = representative_links(inst, &local, &phi, c.gamma.value, inst.spec().tol);
  link_clause(c);
  return c;
}

Certificate verify(const Instance& inst, const VerifyOptions& opt) {
  if (inst.spec().mode == Mode::Explicit) {
    auto b = build_explicit(inst);
    return verify_explicit(inst, b, opt);
  }
  return verify_certificate(inst);
}

// ---------------------------------------------------------------------------

std::string certificate_json(const Certificate& c) {
  ojson j;
  j["schema_version"] = 1;
  j["mode"] = to_string(c.mode);
  j["source"] = c.source;
  j["diagram"] = c.diagram;
  j["gcm"] = ojson::parse(c.gcm.empty() ? "null" : c.gcm);
  j["d"] = c.d;
  j["p"] = c.p;
  j["m"] = c.m;
  j["g"] = c.g;
  j["f"] = c.f;
  j["group_order"] = c.group_order;
  j["degree_bound"] = c.degree_bound;
  j["gamma"] = c.gamma.value;
  j["gamma_formula"] = c.gamma.formula;
  j["gamma_applicable"] = c.trickling.applicable;
  j["trickling_threshold"] = c.trickling.threshold;
  j["gamma_prime"] = c.trickling.applicable ? ojson(c.trickling.gamma_prime) : ojson(nullptr);
  ojson links = ojson::array();
  for (const auto& l : c.links) {
    ojson e;
    e["cotype"] = l.cotype;
    e["type"] = l.rank2_type;
    e["size"] = l.size;
    e["count"] = l.count;
    e["lambda2"] = l.lambda2;
    if (l.lambda2_matrix) e["lambda2_matrix"] = *l.lambda2_matrix;
    e["pass"] = l.pass;
    links.push_back(e);
  }
  j["links"] = links;
  auto opt_bool = [](const std::optional<bool>& b) { return b ? ojson(*b) : ojson(nullptr); };
  j["hypotheses"] = {{"surjective", opt_bool(c.surjective)},
                     {"local_injective", opt_bool(c.local_injective)},
                     {"ip", opt_bool(c.ip)},
                     {"sharp_transitive", opt_bool(c.sharp_transitive)}};
  ojson clauses = ojson::array();
  for (const auto& cl : c.clauses) clauses.push_back({{"name", cl.name}, {"ok", cl.ok}, {"detail", cl.detail}});
  j["clauses"] = clauses;
  j["failed"] = c.failed();
  j["certified"] = c.certified();
  j["global_lambda2"] = c.global_lambda2 ? ojson(*c.global_lambda2) : ojson(nullptr);
  ojson counts = ojson::object();
  for (const auto& [k, v] : c.counts) counts[k] = v;
  j["counts"] = counts;
  return j.dump(2);
}

BuildSummary build_to_file(const Instance& inst, const std::string& path) {
  BuildSummary s;
  s.mode = inst.spec().mode;
  s.path = path;
  s.group_order = inst.predicted_order();
  if (s.mode == Mode::Explicit) {
    auto b = build_explicit(inst);
    s.group_order = std::to_string(b.group->order());
    for (const auto& cp : b.complex.cosets) s.vertices_per_type.push_back(cp.reps.size());
    s.faces = b.complex.complex.face_count();
    for (const auto& t : degree_profile(b.complex.complex)) s.degree_per_type.push_back(t.max);
    for (const auto& [J, g] : b.local) s.subgroup_orders[format_set(J)] = g.order();
    if (!path.empty()) write_complex_file(path, inst, b);
  } else {
    KmsMap phi = inst.kms();
    for (const auto& [J, g] : local_groups(inst, phi, inst.spec().budget)) s.subgroup_orders[format_set(J)] = g.order();
    if (!path.empty()) write_bundle_file(path, inst);
  }
  return s;
}

std::string summary_json(const BuildSummary& s) {
  ojson j;
  j["mode"] = to_string(s.mode);
  j["group_order"] = s.group_order;
  if (s.mode == Mode::Explicit) {
    j["vertices_per_type"] = s.vertices_per_type;
    j["maximal_faces"] = s.faces;
    j["degree_per_type"] = s.degree_per_type;
  }
  ojson subs = ojson::object();
  for (const auto& [k, v] : s.subgroup_orders) subs[k] = v;
  j["subgroup_orders"] = subs;
  j["path"] = s.path;
  return j.dump(2);
}

std::vector<FamilyRow> family(const InstanceSpec& base, const std::vector<int>& degrees) {
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (degrees[i] < 2) throw Error(ErrorKind::Spec, "family degrees must be >= 2 (got " + std::to_string(degrees[i]) + ")");
    if (i > 0 && degrees[i] <= degrees[i - 1]) throw Error(ErrorKind::Spec, "family degrees must be strictly ascending");
  }
  std::vector<FamilyRow> rows;
  for (int deg : degrees) {
    InstanceSpec s = base;
    s.f = "auto:" + std::to_string(deg);
    s.mode = Mode::Certificate;
    Instance inst(s);
    Certificate c = verify_certificate(inst);
    FamilyRow r;
    r.degree = deg;
    r.f = inst.f_text();
    r.group_order = inst.predicted_order();
    r.degree_bound = inst.degree_bound();
    r.gamma = c.gamma.value;
    r.trickling = c.trickling;
    r.certified = c.certified();
    rows.push_back(r);
  }
  return rows;
}

std::string family_json(const std::vector<FamilyRow>& rows) {
  ojson arr = ojson::array();
  for (const auto& r : rows) {
    ojson j;
    j["degree"] = r.degree;
    j["f"] = r.f;
    j["group_order"] = r.group_order;
    j["degree_bound"] = r.degree_bound;
    j["gamma"] = r.gamma;
    j["gamma_applicable"] = r.trickling.applicable;
    j["gamma_prime"] = r.trickling.applicable ? ojson(r.trickling.gamma_prime) : ojson(nullptr);
    j["certified"] = r.certified;
    arr.push_back(j);
  }
  return arr.dump(2);
}

}  // namespace hdx
