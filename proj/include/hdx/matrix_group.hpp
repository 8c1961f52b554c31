#pragma once

// SL_{n+1}(R) for R = k[t]/(f): elementary root matrices, the map phi_f from
// the affine type-A KMS generators, enumerated matrix groups and the
// subgroup-level checks (local injectivity, intersection property,
// surjectivity).

#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "hdx/algebra.hpp"
#include "hdx/groups.hpp"
#include "hdx/rootdata.hpp"

namespace hdx {

using Matrix = std::vector<Elem>;  // row-major

struct SLContext {
  SLContext(QuotientRing ring, int size);

  QuotientRing ring;
  int n;               // matrix size
  unsigned key_width;  // bytes per entry in canonical keys
};

Matrix identity_matrix(const SLContext& ctx);
Matrix mat_mul(const SLContext& ctx, const Matrix& a, const Matrix& b);
Matrix mat_sub(const SLContext& ctx, const Matrix& a, const Matrix& b);
// Gauss-Jordan; throws Math on singular input.
Matrix mat_inverse(const SLContext& ctx, const Matrix& a);
Elem determinant(const SLContext& ctx, Matrix a);
Matrix commutator(const SLContext& ctx, const Matrix& g, const Matrix& h);  // g^-1 h^-1 g h
// Big-endian fixed-width bytes of the entries, row-major.
std::string matrix_key(const SLContext& ctx, const Matrix& a);
Matrix matrix_from_key(const SLContext& ctx, const std::string& key);
std::string format_matrix(const SLContext& ctx, const Matrix& a);

// E + s e_{row,col} (0-based, row != col).
Matrix root_element(const SLContext& ctx, int row, int col, Elem s);

// Matrix position of a root of A_n given by signed coefficients over
// alpha_1..alpha_n: alpha_i + ... + alpha_j sits at (i-1, j), its negative
// at (j, i-1). Throws Spec for non-roots.
std::pair<int, int> root_position(const RootVector& root);

// phi_f on the generators of the affine A_d KMS group:
//   u_i(lambda) -> x_{alpha_i}(lambda) for i != 0, u_0(lambda) -> x_{-gamma}(lambda t).
class KmsMap {
 public:
  KmsMap(GaloisField k, Poly f, int d);

  const SLContext& context() const noexcept { return ctx_; }
  const GaloisField& base() const noexcept { return k_; }
  int rank() const noexcept { return d_ + 1; }
  int dimension() const noexcept { return d_; }

  Matrix image(int node, Elem lambda) const;
  // Nilpotent N_i with image(i, lambda) = E + lambda N_i.
  Matrix nilpotent(int node) const;
  // Images of u_j(lambda), j in J, lambda over an F_p-basis of k.
  std::vector<Matrix> generators(IndexSet J) const;

 private:
  GaloisField k_;
  SLContext ctx_;
  int d_;
};

// An enumerated group of matrices with ids in canonical-key order.
class MatrixGroup final : public FiniteGroup {
 public:
  static MatrixGroup closure(const SLContext& ctx, const std::vector<Matrix>& gens, std::uint64_t budget = 1ull << 27);
  // Takes the element list as given (deduplicated), without closure checks.
  static MatrixGroup from_elements(const SLContext& ctx, std::vector<Matrix> elems);

  std::uint64_t order() const override { return elems_.size(); }
  ElemId identity() const override { return identity_; }
  ElemId multiply(ElemId a, ElemId b) const override;
  ElemId inverse(ElemId a) const override;
  std::string key(ElemId a) const override { return keys_[a]; }
  std::string format(ElemId a) const override { return format_matrix(*ctx_, elems_[a]); }

  const SLContext& context() const { return *ctx_; }
  const Matrix& element(ElemId a) const { return elems_[a]; }
  const std::vector<std::string>& keys() const noexcept { return keys_; }
  std::optional<ElemId> find(const Matrix& m) const;
  std::optional<ElemId> find_key(const std::string& k) const;
  // Image of another enumerated group contained in this one.
  Subgroup subgroup_of(const MatrixGroup& sub) const;
  bool contains_all(const MatrixGroup& sub) const;

 private:
  MatrixGroup(const SLContext& ctx, std::vector<Matrix> elems);

  std::shared_ptr<const SLContext> ctx_;
  std::vector<Matrix> elems_;
  std::vector<std::string> keys_;
  std::unordered_map<std::string, ElemId> index_;
  ElemId identity_ = 0;
};

// Set intersection by canonical keys.
MatrixGroup intersect(const MatrixGroup& a, const MatrixGroup& b);

struct IpResult {
  bool ok = true;
  std::uint64_t computed = 0;  // |S cap T|
  std::uint64_t expected = 0;
  std::optional<Matrix> witness;  // in the symmetric difference
};

IpResult ip_check(const MatrixGroup& s, const MatrixGroup& t, const MatrixGroup& expected);

// |U_J| = q^{|Phi_J^+|} for the abstract local group of the affine A_d GCM.
std::uint64_t abstract_local_order(const CartanMatrix& gcm, IndexSet J, std::uint64_t q);

// Checks that phi_f(u_i), phi_f(u_j) satisfy the defining commutator
// relations of the rank-2 type of {i, j} (A1xA1 or A2) for all arguments in
// k, with root images built from Lie brackets of the nilpotents.
struct RelationReport {
  bool ok = true;
  std::uint64_t checked = 0;
  std::string failure;
};
RelationReport check_kms_relations(const KmsMap& phi, const CartanMatrix& gcm, int i, int j);

// Surjectivity onto SL_{d+1}(R) without enumerating it: the F_p-spans S_alpha
// of {s : x_alpha(s) in the image} are grown under the type-A commutator rule
// [x_alpha(s), x_beta(u)] = x_{alpha+beta}(+-su); surjective when every
// S_alpha is all of R.
struct SurjectivityReport {
  bool surjective = false;
  int ring_dimension = 0;                 // dim_{F_p} R
  std::vector<std::pair<std::pair<int, int>, int>> span_dims;  // matrix position -> dim S_alpha
};
SurjectivityReport surjectivity_by_root_subgroups(const KmsMap& phi);

// |SL_n(F_Q)| = Q^{n(n-1)/2} prod_{i=2..n} (Q^i - 1) as a decimal string.
std::string sl_order_string(int n, std::uint64_t Q);
// The same order when it fits in 64 bits.
std::optional<std::uint64_t> sl_order(int n, std::uint64_t Q);

}  // namespace hdx
