#include "hdx/complex.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace hdx {

void WeightedGraph::add_edge(VertexId u, VertexId v, double w) {
  if (u == v) throw Error(ErrorKind::Spec, "self-loops are not allowed");
  if (!(w > 0)) throw Error(ErrorKind::Spec, "edge weights must be positive");
  if (u > v) std::swap(u, v);
  if (v >= n) n = v + 1;
  edges.emplace_back(u, v, w);
}

PureComplex::PureComplex(int dim, std::vector<int> vertex_type, std::vector<std::uint64_t> vertex_label,
                         std::vector<Face> fs)
    : dim_(dim), vertex_type_(std::move(vertex_type)), vertex_label_(std::move(vertex_label)), faces_(std::move(fs)) {
  if (vertex_label_.size() != vertex_type_.size()) throw Error(ErrorKind::Integrity, "vertex tables differ in size");
  for (auto& f : faces_) {
    std::sort(f.begin(), f.end());
    if (static_cast<int>(f.size()) != dim_ + 1) throw Error(ErrorKind::Integrity, "maximal face of the wrong size");
    for (VertexId v : f)
      if (v >= vertex_type_.size()) throw Error(ErrorKind::Integrity, "face refers to an unknown vertex");
    if (std::adjacent_find(f.begin(), f.end()) != f.end()) throw Error(ErrorKind::Integrity, "face repeats a vertex");
  }
  std::sort(faces_.begin(), faces_.end());
  faces_.erase(std::unique(faces_.begin(), faces_.end()), faces_.end());
  inc_offsets_.assign(vertex_type_.size() + 1, 0);
  for (const auto& f : faces_)
    for (VertexId v : f) ++inc_offsets_[v + 1];
  std::partial_sum(inc_offsets_.begin(), inc_offsets_.end(), inc_offsets_.begin());
  inc_faces_.assign(inc_offsets_.back(), 0);
  std::vector<std::uint32_t> fill(inc_offsets_.begin(), inc_offsets_.end() - 1);
  for (std::uint32_t i = 0; i < faces_.size(); ++i)
    for (VertexId v : faces_[i]) inc_faces_[fill[v]++] = i;
}

std::vector<std::uint32_t> PureComplex::incident(VertexId v) const {
  return {inc_faces_.begin() + inc_offsets_[v], inc_faces_.begin() + inc_offsets_[v + 1]};
}

bool PureComplex::contains_maximal(const Face& f) const { return std::binary_search(faces_.begin(), faces_.end(), f); }

namespace {

template <class Fn>
void for_each_subset(const Face& f, int size, Fn&& fn) {
  const int n = static_cast<int>(f.size());
  if (size < 0 || size > n) return;
  std::vector<int> idx(static_cast<std::size_t>(size));
  std::iota(idx.begin(), idx.end(), 0);
  Face sub(static_cast<std::size_t>(size));
  while (true) {
    for (int i = 0; i < size; ++i) sub[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
    fn(sub);
    int i = size - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - size + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < size; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

bool contains_face(const Face& big, const Face& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
  std::vector<std::size_t> parent;
};

}  // namespace

std::vector<std::pair<Face, std::uint64_t>> face_counts(const PureComplex& x, int k) {
  if (k < -1 || k > x.dim()) throw Error(ErrorKind::Spec, "face dimension out of range");
  if (k == -1) return {{Face{}, x.face_count()}};
  std::vector<Face> all;
  for (const auto& f : x.maximal_faces()) for_each_subset(f, k + 1, [&](const Face& s) { all.push_back(s); });
  std::sort(all.begin(), all.end());
  std::vector<std::pair<Face, std::uint64_t>> out;
  for (auto& f : all) {
    if (!out.empty() && out.back().first == f)
      ++out.back().second;
    else
      out.emplace_back(std::move(f), 1);
  }
  return out;
}

std::vector<Face> faces(const PureComplex& x, int k) {
  std::vector<Face> out;
  for (auto& [f, c] : face_counts(x, k)) out.push_back(std::move(f));
  return out;
}

std::uint64_t factorial(int n) {
  std::uint64_t r = 1;
  for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
  return r;
}

std::uint64_t weight(const PureComplex& x, const Face& tau_in) {
  Face tau = tau_in;
  std::sort(tau.begin(), tau.end());
  const int k = static_cast<int>(tau.size()) - 1;
  std::uint64_t count = 0;
  if (tau.empty()) {
    count = x.face_count();
  } else {
    if (tau[0] >= x.vertex_count()) throw Error(ErrorKind::Spec, "face refers to an unknown vertex");
    for (auto id : x.incident(tau[0]))
      if (contains_face(x.maximal_faces()[id], tau)) ++count;
  }
  if (count == 0) throw Error(ErrorKind::Spec, "not a face of the complex");
  return factorial(x.dim() - k) * count;
}

PureComplex link(const PureComplex& x, const Face& tau_in) {
  Face tau = tau_in;
  std::sort(tau.begin(), tau.end());
  if (tau.empty()) return x;
  const int dim = x.dim() - static_cast<int>(tau.size());
  std::vector<Face> rest;
  for (auto id : x.incident(tau[0])) {
    const Face& f = x.maximal_faces()[id];
    if (!contains_face(f, tau)) continue;
    Face r;
    std::set_difference(f.begin(), f.end(), tau.begin(), tau.end(), std::back_inserter(r));
    rest.push_back(std::move(r));
  }
  if (rest.empty()) throw Error(ErrorKind::Spec, "not a face of the complex");
  std::vector<VertexId> verts;
  for (const auto& r : rest) verts.insert(verts.end(), r.begin(), r.end());
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  std::vector<int> types;
  std::vector<std::uint64_t> labels;
  for (VertexId v : verts) {
    types.push_back(x.vertex_type(v));
    labels.push_back(v);
  }
  for (auto& r : rest)
    for (auto& v : r) v = static_cast<VertexId>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
  return PureComplex(dim, std::move(types), std::move(labels), std::move(rest));
}

WeightedGraph one_skeleton(const PureComplex& x) {
  WeightedGraph g;
  g.n = x.vertex_count();
  if (x.dim() < 1) return g;
  const double scale = static_cast<double>(factorial(x.dim() - 1));
  for (const auto& [f, c] : face_counts(x, 1)) g.add_edge(f[0], f[1], scale * static_cast<double>(c));
  return g;
}

bool is_connected(const WeightedGraph& g) {
  if (g.n <= 1) return true;
  UnionFind uf(g.n);
  for (const auto& [u, v, w] : g.edges) uf.unite(u, v);
  const auto root = uf.find(0);
  for (std::size_t i = 1; i < g.n; ++i)
    if (uf.find(i) != root) return false;
  return true;
}

bool is_connected(const PureComplex& x) {
  if (x.vertex_count() <= 1) return true;
  UnionFind uf(x.vertex_count());
  for (const auto& f : x.maximal_faces())
    for (std::size_t i = 1; i < f.size(); ++i) uf.unite(f[0], f[i]);
  const auto root = uf.find(0);
  for (std::size_t i = 1; i < x.vertex_count(); ++i)
    if (uf.find(i) != root) return false;
  return true;
}

BalanceReport check_balanced(const PureComplex& x) {
  BalanceReport rep;
  const int d = x.dim();
  for (int k = -1; k < d && rep.balanced; ++k) {
    const auto lower = face_counts(x, k);
    const auto upper = face_counts(x, k + 1);
    std::vector<std::uint64_t> sums(lower.size(), 0);
    const std::uint64_t wu = factorial(d - k - 1);
    for (const auto& [sigma, c] : upper) {
      for_each_subset(sigma, k + 1, [&](const Face& tau) {
        auto it = std::lower_bound(lower.begin(), lower.end(), tau,
                                   [](const auto& entry, const Face& f) { return entry.first < f; });
        if (it == lower.end() || it->first != tau) {
          rep.balanced = false;
          rep.witness = tau;
          return;
        }
        sums[static_cast<std::size_t>(it - lower.begin())] += wu * c;
      });
    }
    const std::uint64_t wl = factorial(d - k);
    for (std::size_t i = 0; i < lower.size() && rep.balanced; ++i) {
      ++rep.checked;
      if (sums[i] != wl * lower[i].second) {
        rep.balanced = false;
        rep.witness = lower[i].first;
      }
    }
  }
  return rep;
}

bool is_partite(const PureComplex& x) {
  for (const auto& f : x.maximal_faces()) {
    std::vector<int> t;
    for (VertexId v : f) t.push_back(x.vertex_type(v));
    std::sort(t.begin(), t.end());
    if (std::adjacent_find(t.begin(), t.end()) != t.end()) return false;
  }
  return true;
}

std::vector<ConnectivityLevel> connectivity_report(const PureComplex& x, int max_k) {
  if (max_k == -100) max_k = x.dim() - 2;
  std::vector<ConnectivityLevel> out;
  for (int k = -1; k <= max_k; ++k) {
    ConnectivityLevel level;
    level.k = k;
    for (const auto& tau : faces(x, k)) {
      ++level.faces;
      if (is_connected(link(x, tau))) ++level.connected;
    }
    out.push_back(level);
  }
  return out;
}

std::vector<TypeDegree> degree_profile(const PureComplex& x) {
  std::map<int, TypeDegree> by_type;
  for (VertexId v = 0; v < x.vertex_count(); ++v) {
    const int t = x.vertex_type(v);
    const std::size_t deg = x.degree(v);
    auto [it, fresh] = by_type.try_emplace(t, TypeDegree{t, deg, deg});
    if (!fresh) {
      it->second.min = std::min(it->second.min, deg);
      it->second.max = std::max(it->second.max, deg);
    }
  }
  std::vector<TypeDegree> out;
  for (auto& [t, d] : by_type) out.push_back(d);
  return out;
}

// --------------------------------------------------------------------------

CosetComplex build_coset_complex(const FiniteGroup& g, const std::vector<Subgroup>& h) {
  if (h.empty()) throw Error(ErrorKind::Spec, "coset complex needs at least one subgroup");
  CosetComplex c;
  std::vector<int> types;
  std::vector<std::uint64_t> labels;
  VertexId offset = 0;
  c.core = h[0];
  for (std::size_t i = 0; i < h.size(); ++i) {
    c.cosets.push_back(coset_partition(g, h[i]));
    c.offsets.push_back(offset);
    for (ElemId rep : c.cosets.back().reps) {
      types.push_back(static_cast<int>(i));
      labels.push_back(rep);
    }
    offset += static_cast<VertexId>(c.cosets.back().reps.size());
    if (i > 0) c.core = intersect(c.core, h[i]);
  }
  std::vector<Face> fs;
  fs.reserve(g.order());
  for (std::uint64_t x = 0; x < g.order(); ++x) {
    Face f(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) f[i] = c.vertex_of(static_cast<int>(i), static_cast<ElemId>(x));
    fs.push_back(std::move(f));
  }
  c.complex = PureComplex(static_cast<int>(h.size()) - 1, std::move(types), std::move(labels), std::move(fs));
  return c;
}

bool sharp_transitivity_check(const CosetComplex& c, const FiniteGroup& g) {
  return c.core.order() == 1 && c.complex.face_count() == g.order();
}

bool check_left_action(const CosetComplex& c, const FiniteGroup& g, int samples, std::mt19937_64& rng) {
  const auto& x = c.complex;
  std::uniform_int_distribution<std::uint64_t> pick(0, g.order() - 1);
  std::uniform_int_distribution<std::size_t> pick_face(0, x.face_count() - 1);
  const std::size_t per_sample = std::min<std::size_t>(x.face_count(), 2000);
  for (int s = 0; s < samples; ++s) {
    const auto elem = static_cast<ElemId>(pick(rng));
    for (std::size_t j = 0; j < per_sample; ++j) {
      const Face& f = x.maximal_faces()[per_sample == x.face_count() ? j : pick_face(rng)];
      Face img;
      for (VertexId v : f) {
        const int t = x.vertex_type(v);
        const VertexId w = c.vertex_of(t, g.multiply(elem, static_cast<ElemId>(x.vertex_label(v))));
        if (x.vertex_type(w) != t) return false;
        img.push_back(w);
      }
      std::sort(img.begin(), img.end());
      if (!x.contains_maximal(img)) return false;
    }
  }
  return true;
}

LinkIsoReport check_link_isomorphism(const CosetComplex& c, const FiniteGroup& g, const std::vector<Subgroup>& h,
                                     int samples, std::mt19937_64& rng) {
  const auto& x = c.complex;
  const int types = static_cast<int>(h.size());
  const IndexSet all = (IndexSet{1} << types) - 1;
  // Face counts of CC(H_T, (H_{T+i})_{i not in T}) per proper nonempty T.
  std::map<IndexSet, std::vector<std::size_t>> direct;
  auto direct_counts = [&](IndexSet T) -> const std::vector<std::size_t>& {
    auto it = direct.find(T);
    if (it != direct.end()) return it->second;
    Subgroup ht = whole_group(g);
    for (int i : set_members(T)) ht = intersect(ht, h[static_cast<std::size_t>(i)]);
    SubgroupView view(ht);
    std::vector<Subgroup> parts;
    for (int i = 0; i < types; ++i)
      if (!set_contains(T, i)) parts.push_back(view.localize(intersect(ht, h[static_cast<std::size_t>(i)])));
    CosetComplex y = build_coset_complex(view, parts);
    std::vector<std::size_t> counts;
    for (int k = 0; k <= y.complex.dim(); ++k) counts.push_back(face_counts(y.complex, k).size());
    return direct.emplace(T, std::move(counts)).first->second;
  };
  LinkIsoReport rep;
  std::uniform_int_distribution<std::size_t> pick_face(0, x.face_count() - 1);
  std::uniform_int_distribution<IndexSet> pick_type(1, all - 1);
  for (int s = 0; s < samples; ++s) {
    const Face& sigma = x.maximal_faces()[pick_face(rng)];
    const IndexSet T = pick_type(rng);
    Face tau;
    for (VertexId v : sigma)
      if (set_contains(T, x.vertex_type(v))) tau.push_back(v);
    PureComplex l = link(x, tau);
    std::vector<std::size_t> counts;
    for (int k = 0; k <= l.dim(); ++k) counts.push_back(face_counts(l, k).size());
    ++rep.sampled;
    if (counts != direct_counts(T)) {
      rep.ok = false;
      rep.witness = tau;
      return rep;
    }
  }
  return rep;
}

}  // namespace hdx
