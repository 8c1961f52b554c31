#pragma once

// Pure partite simplicial complexes given by their maximal faces, coset
// complexes CC(G, (H_i)), faces, balanced weights, links and the structural
// checks run on them.

#include <cstdint>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "hdx/groups.hpp"
#include "hdx/rootdata.hpp"

namespace hdx {

using VertexId = std::uint32_t;
using Face = std::vector<VertexId>;  // sorted

struct WeightedGraph {
  std::size_t n = 0;
  std::vector<std::tuple<VertexId, VertexId, double>> edges;  // u < v, weight > 0

  void add_edge(VertexId u, VertexId v, double w);
};

class PureComplex {
 public:
  PureComplex() = default;
  // `faces` holds (dim+1)-tuples; they are sorted and deduplicated.
  PureComplex(int dim, std::vector<int> vertex_type, std::vector<std::uint64_t> vertex_label, std::vector<Face> faces);

  int dim() const noexcept { return dim_; }
  std::size_t vertex_count() const noexcept { return vertex_type_.size(); }
  std::size_t face_count() const noexcept { return faces_.size(); }
  const std::vector<Face>& maximal_faces() const noexcept { return faces_; }
  int vertex_type(VertexId v) const { return vertex_type_[v]; }
  const std::vector<int>& vertex_types() const noexcept { return vertex_type_; }
  // For coset complexes the canonical coset representative; for links the
  // vertex id in the parent complex.
  std::uint64_t vertex_label(VertexId v) const { return vertex_label_[v]; }
  // Ids of the maximal faces containing v.
  std::vector<std::uint32_t> incident(VertexId v) const;
  std::size_t degree(VertexId v) const { return inc_offsets_[v + 1] - inc_offsets_[v]; }
  bool contains_maximal(const Face& f) const;

 private:
  int dim_ = -1;
  std::vector<int> vertex_type_;
  std::vector<std::uint64_t> vertex_label_;
  std::vector<Face> faces_;
  std::vector<std::uint32_t> inc_offsets_;
  std::vector<std::uint32_t> inc_faces_;
};

// X(k) with the number of maximal faces containing each face, sorted.
// k = -1 yields the empty face.
std::vector<std::pair<Face, std::uint64_t>> face_counts(const PureComplex& x, int k);
std::vector<Face> faces(const PureComplex& x, int k);

std::uint64_t factorial(int n);

// (d - k)! * #{sigma in X(d) : tau subset sigma}; throws Spec when tau is
// not a face.
std::uint64_t weight(const PureComplex& x, const Face& tau);

// {sigma \ tau : tau subset sigma in X(d)} as a complex of dimension
// d - |tau|, vertices renumbered in increasing parent id.
PureComplex link(const PureComplex& x, const Face& tau);

// Weighted 1-skeleton: w(e) = (d - 1)! * #{maximal faces containing e}.
WeightedGraph one_skeleton(const PureComplex& x);

bool is_connected(const WeightedGraph& g);
bool is_connected(const PureComplex& x);

struct BalanceReport {
  bool balanced = true;
  std::uint64_t checked = 0;
  Face witness;
};
// sum_{sigma in X(k+1), sigma contains tau} w(sigma) = w(tau) for all
// -1 <= k < d, in exact integers.
BalanceReport check_balanced(const PureComplex& x);

bool is_partite(const PureComplex& x);

struct ConnectivityLevel {
  int k = 0;              // dimension of the faces whose links were checked
  std::uint64_t faces = 0;
  std::uint64_t connected = 0;
  bool all() const { return faces == connected; }
};
// Links of every face of dimension -1..max_k (default d - 2).
std::vector<ConnectivityLevel> connectivity_report(const PureComplex& x, int max_k = -100);

struct TypeDegree {
  int type = 0;
  std::size_t min = 0;
  std::size_t max = 0;
};
std::vector<TypeDegree> degree_profile(const PureComplex& x);

// --------------------------------------------------------------------------
// Coset complexes.

struct CosetComplex {
  PureComplex complex;
  std::vector<CosetPartition> cosets;  // per type
  std::vector<VertexId> offsets;       // first vertex id of each type
  Subgroup core;                       // intersection of all H_i

  VertexId vertex_of(int type, ElemId g) const { return offsets[static_cast<std::size_t>(type)] + cosets[static_cast<std::size_t>(type)].label[g]; }
};

// Vertices g H_i (type i), maximal faces {g H_0, ..., g H_d}.
CosetComplex build_coset_complex(const FiniteGroup& g, const std::vector<Subgroup>& h);

bool sharp_transitivity_check(const CosetComplex& c, const FiniteGroup& g);

// Left multiplication by sampled g sends maximal faces to maximal faces and
// preserves types.
bool check_left_action(const CosetComplex& c, const FiniteGroup& g, int samples, std::mt19937_64& rng);

struct LinkIsoReport {
  bool ok = true;
  int sampled = 0;
  Face witness;
};
// For sampled faces tau of type T, the link of tau and CC(H_T, (H_{T+i}))
// have equal face counts in every dimension.
LinkIsoReport check_link_isomorphism(const CosetComplex& c, const FiniteGroup& g, const std::vector<Subgroup>& h,
                                     int samples, std::mt19937_64& rng);

}  // namespace hdx
