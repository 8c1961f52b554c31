#pragma once

// Generalized Cartan matrices, spherical subsets, rank-2 root systems with
// their commutator structure constants, affinization of type A_n and the
// link spectral bounds attached to Dynkin edge multiplicities.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hdx/error.hpp"

namespace hdx {

// Subsets of the index set I = {0..rank-1} as bit masks.
using IndexSet = std::uint32_t;

inline int set_size(IndexSet s) { return __builtin_popcount(s); }
inline bool set_contains(IndexSet s, int i) { return (s >> i) & 1u; }
std::vector<int> set_members(IndexSet s);
std::string format_set(IndexSet s);

// Entry (i, j) is <alpha_j, alpha_i^vee>, so A(i, j) * A(j, i) is the
// Dynkin edge multiplicity for spherical pairs.
class CartanMatrix {
 public:
  CartanMatrix() = default;
  explicit CartanMatrix(std::vector<std::vector<int>> rows);

  int rank() const noexcept { return rank_; }
  int operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * rank_ + j)]; }
  IndexSet all() const noexcept { return rank_ >= 32 ? ~IndexSet{0} : (IndexSet{1} << rank_) - 1; }
  std::vector<std::vector<int>> rows() const;
  CartanMatrix restrict_to(IndexSet subset) const;
  std::string to_json() const;

  bool operator==(const CartanMatrix& o) const { return rank_ == o.rank_ && a_ == o.a_; }

 private:
  int rank_ = 0;
  std::vector<int> a_;
};

// Parses "[[2,-1],[-1,2]]" style integer matrices.
CartanMatrix parse_cartan_matrix(const std::string& text);

// Presets: "A~n" (untwisted affine A_n, n >= 2), "G~2", and the spherical
// "An" (n >= 1), "B2", "G2".
CartanMatrix cartan_preset(const std::string& name);

enum class Rank2Type { A1xA1, A2, B2, G2 };

const char* to_string(Rank2Type t) noexcept;

// Classification by A(i,j) * A(j,i): 0 -> A1xA1, 1 -> A2, 2 -> B2, 3 -> G2.
Rank2Type classify_pair(const CartanMatrix& gcm, int i, int j);

// Which node of the pair plays the short simple root of the rank-2 system
// (for A1xA1 and A2 this is simply i).
int short_node(const CartanMatrix& gcm, int i, int j);

// Root as integer coefficients over the simple roots of its system.
using RootVector = std::vector<int>;

int height(const RootVector& r);

// Height, then larger coefficient on the earlier simple root first. For
// rank 2 with a short and b long this yields a, b, a+b, 2a+b, 3a+b, 3a+2b.
bool root_order_less(const RootVector& x, const RootVector& y);

// Positive roots of the rank-2 system, coefficients over (short a, long b),
// in root order.
std::vector<RootVector> positive_roots(Rank2Type type);

// Positive roots of the spherical subsystem indexed by `subset`, by
// root-string generation. Coefficients are over the members of `subset` in
// increasing index order.
std::vector<RootVector> positive_roots(const CartanMatrix& gcm, IndexSet subset);

// True when the Coxeter group of the sub-diagram is finite, decided by
// positive definiteness of the Coxeter bilinear form.
bool is_spherical(const CartanMatrix& gcm, IndexSet subset);

// All spherical subsets (including the empty set), sorted by (size, mask).
std::vector<IndexSet> spherical_subsets(const CartanMatrix& gcm);

bool is_d_spherical(const CartanMatrix& gcm);
bool is_purely_d_spherical(const CartanMatrix& gcm);

// One factor of a commutator expansion:
//   [x_r(u), x_s(t)] = prod_terms x_root(coeff * u^pow_u * t^pow_t)
// with [g, h] = g^-1 h^-1 g h, factors multiplied left to right.
struct CommutatorTerm {
  int root;  // index into positive_roots(type)
  int coeff;
  int pow_u;
  int pow_t;
};

// Expansion of [x_r(u), x_s(t)] for positive roots r, s with s before r in
// root order (s < r as indices). Empty when the root groups commute.
const std::vector<CommutatorTerm>& commutator_terms(Rank2Type type, int r, int s);

// Structure constants of [x_alpha(s), x_beta(u)] for the given ordered pair
// of root indices, as (root index gamma, C) with gamma = k alpha + l beta.
struct StructureConstant {
  int root;
  int coeff;
  int k;  // power of the first argument
  int l;  // power of the second argument
};
std::vector<StructureConstant> structure_constants(Rank2Type type, int alpha, int beta);

// Link spectral bound from the worst Dynkin edge of a 2-spherical GCM over
// F_q, q = p^m.
struct GammaBound {
  double value = 0;
  int edge_multiplicity = 0;  // 0..3
  std::string formula;
};
GammaBound gamma_bound(const CartanMatrix& gcm, std::uint64_t p, unsigned m);

// Spherical bound for a single rank-2 type (used for per-link checks).
GammaBound gamma_bound(Rank2Type type, std::uint64_t p, unsigned m);

struct AffinizationData {
  CartanMatrix spherical;     // type A_n on nodes 1..n (stored 0-based)
  CartanMatrix affine;        // node 0 attached as alpha_0 = -gamma + delta
  RootVector highest_root;    // over alpha_1..alpha_n
  std::map<std::pair<int, int>, Rank2Type> pair_types;  // i < j over affine nodes
};

// Affinization of a Cartan matrix of type A_n, n >= 2.
AffinizationData affinize(const CartanMatrix& spherical);

// n when `gcm` is the untwisted affine A_n matrix (cycle on n+1 nodes), else 0.
int affine_type_a_rank(const CartanMatrix& gcm);

}  // namespace hdx
