#include "hdx/matrix_group.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <deque>
#include <limits>
#include <unordered_set>

#include "hdx/poly.hpp"
#include "hdx/unipotent.hpp"

namespace hdx {

SLContext::SLContext(QuotientRing r, int size) : ring(std::move(r)), n(size) {
  if (n < 2) throw Error(ErrorKind::Spec, "matrix size must be at least 2");
  key_width = 1;
  while (key_width < 8 && (std::uint64_t{1} << (8 * key_width)) < ring.order()) ++key_width;
}

Matrix identity_matrix(const SLContext& ctx) {
  Matrix m(static_cast<std::size_t>(ctx.n * ctx.n), 0);
  for (int i = 0; i < ctx.n; ++i) m[static_cast<std::size_t>(i * ctx.n + i)] = 1;
  return m;
}

Matrix mat_mul(const SLContext& ctx, const Matrix& a, const Matrix& b) {
  const int n = ctx.n;
  const auto& R = ctx.ring;
  Matrix c(static_cast<std::size_t>(n * n), 0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const Elem x = a[static_cast<std::size_t>(i * n + k)];
      if (x == 0) continue;
      for (int j = 0; j < n; ++j) {
        const Elem y = b[static_cast<std::size_t>(k * n + j)];
        if (y == 0) continue;
        auto& dst = c[static_cast<std::size_t>(i * n + j)];
        dst = R.add(dst, R.mul(x, y));
      }
    }
  return c;
}

Matrix mat_sub(const SLContext& ctx, const Matrix& a, const Matrix& b) {
  Matrix c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = ctx.ring.sub(a[i], b[i]);
  return c;
}

Matrix mat_inverse(const SLContext& ctx, const Matrix& a) {
  const int n = ctx.n;
  const auto& R = ctx.ring;
  Matrix m = a, inv = identity_matrix(ctx);
  auto at = [n](Matrix& x, int r, int c) -> Elem& { return x[static_cast<std::size_t>(r * n + c)]; };
  for (int col = 0; col < n; ++col) {
    int piv = col;
    while (piv < n && at(m, piv, col) == 0) ++piv;
    if (piv == n) throw Error(ErrorKind::Math, "singular matrix");
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(at(m, piv, j), at(m, col, j));
        std::swap(at(inv, piv, j), at(inv, col, j));
      }
    const Elem s = R.inv(at(m, col, col));
    for (int j = 0; j < n; ++j) {
      at(m, col, j) = R.mul(at(m, col, j), s);
      at(inv, col, j) = R.mul(at(inv, col, j), s);
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || at(m, r, col) == 0) continue;
      const Elem f = at(m, r, col);
      for (int j = 0; j < n; ++j) {
        at(m, r, j) = R.sub(at(m, r, j), R.mul(f, at(m, col, j)));
        at(inv, r, j) = R.sub(at(inv, r, j), R.mul(f, at(inv, col, j)));
      }
    }
  }
  return inv;
}

Elem determinant(const SLContext& ctx, Matrix m) {
  const int n = ctx.n;
  const auto& R = ctx.ring;
  auto at = [n, &m](int r, int c) -> Elem& { return m[static_cast<std::size_t>(r * n + c)]; };
  Elem det = 1;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    while (piv < n && at(piv, col) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(at(piv, j), at(col, j));
      det = R.neg(det);
    }
    det = R.mul(det, at(col, col));
    const Elem s = R.inv(at(col, col));
    for (int r = col + 1; r < n; ++r) {
      if (at(r, col) == 0) continue;
      const Elem f = R.mul(at(r, col), s);
      for (int j = col; j < n; ++j) at(r, j) = R.sub(at(r, j), R.mul(f, at(col, j)));
    }
  }
  return det;
}

Matrix commutator(const SLContext& ctx, const Matrix& g, const Matrix& h) {
  return mat_mul(ctx, mat_mul(ctx, mat_inverse(ctx, g), mat_inverse(ctx, h)), mat_mul(ctx, g, h));
}

std::string matrix_key(const SLContext& ctx, const Matrix& a) {
  std::string out;
  out.reserve(a.size() * ctx.key_width);
  for (Elem v : a)
    for (unsigned b = ctx.key_width; b-- > 0;) out.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
  return out;
}

Matrix matrix_from_key(const SLContext& ctx, const std::string& key) {
  const std::size_t entries = static_cast<std::size_t>(ctx.n * ctx.n);
  if (key.size() != entries * ctx.key_width) throw Error(ErrorKind::Integrity, "matrix key has the wrong length");
  Matrix m(entries, 0);
  for (std::size_t i = 0; i < entries; ++i) {
    Elem v = 0;
    for (unsigned b = 0; b < ctx.key_width; ++b) v = (v << 8) | static_cast<unsigned char>(key[i * ctx.key_width + b]);
    m[i] = ctx.ring.from_code(v);
  }
  return m;
}

std::string format_matrix(const SLContext& ctx, const Matrix& a) {
  std::string out = "[";
  for (int i = 0; i < ctx.n; ++i) {
    if (i) out += "; ";
    for (int j = 0; j < ctx.n; ++j) {
      if (j) out += ", ";
      out += ctx.ring.format(a[static_cast<std::size_t>(i * ctx.n + j)]);
    }
  }
  return out + "]";
}

Matrix root_element(const SLContext& ctx, int row, int col, Elem s) {
  if (row == col || row < 0 || col < 0 || row >= ctx.n || col >= ctx.n)
    throw Error(ErrorKind::Spec, "root element needs an off-diagonal position");
  Matrix m = identity_matrix(ctx);
  m[static_cast<std::size_t>(row * ctx.n + col)] = s;
  return m;
}

std::pair<int, int> root_position(const RootVector& root) {
  int first = -1, last = -1, sign = 0;
  for (int i = 0; i < static_cast<int>(root.size()); ++i) {
    const int c = root[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if ((c != 1 && c != -1) || (sign && c != sign) || (last >= 0 && last != i - 1))
      throw Error(ErrorKind::Spec, "not a root of type A");
    sign = c;
    if (first < 0) first = i;
    last = i;
  }
  if (!sign) throw Error(ErrorKind::Spec, "zero vector is not a root");
  // alpha_{first+1} + ... + alpha_{last+1} -> (first, last + 1)
  return sign > 0 ? std::pair{first, last + 1} : std::pair{last + 1, first};
}

// ---------------------------------------------------------------------------

KmsMap::KmsMap(GaloisField k, Poly f, int d)
    : k_(k), ctx_(QuotientRing(std::move(k), std::move(f), 't'), d + 1), d_(d) {
  if (d < 1) throw Error(ErrorKind::Spec, "dimension must be at least 1");
  if (ctx_.ring.degree() < 2) throw Error(ErrorKind::Spec, "quotient polynomial f must have degree >= 2");
}

Matrix KmsMap::nilpotent(int node) const {
  if (node < 0 || node > d_) throw Error(ErrorKind::Spec, "node index out of range");
  Matrix m(static_cast<std::size_t>(ctx_.n * ctx_.n), 0);
  if (node == 0)
    m[static_cast<std::size_t>(d_ * ctx_.n)] = ctx_.ring.variable_class();
  else
    m[static_cast<std::size_t>((node - 1) * ctx_.n + node)] = 1;
  return m;
}

Matrix KmsMap::image(int node, Elem lambda) const {
  if (lambda >= k_.order()) throw Error(ErrorKind::Spec, "argument is not an element of k");
  const Elem s = ctx_.ring.embed(lambda);
  if (node == 0) return root_element(ctx_, d_, 0, ctx_.ring.mul(s, ctx_.ring.variable_class()));
  if (node < 0 || node > d_) throw Error(ErrorKind::Spec, "node index out of range");
  return root_element(ctx_, node - 1, node, s);
}

std::vector<Matrix> KmsMap::generators(IndexSet J) const {
  std::vector<Matrix> out;
  const std::uint64_t p = k_.characteristic();
  for (int j : set_members(J)) {
    if (j > d_) throw Error(ErrorKind::Spec, "node index out of range");
    Elem basis = 1;
    for (std::size_t e = 0; e < k_.prime_degree(); ++e, basis *= p) out.push_back(image(j, basis));
  }
  return out;
}

// ---------------------------------------------------------------------------

MatrixGroup::MatrixGroup(const SLContext& ctx, std::vector<Matrix> elems) : ctx_(std::make_shared<SLContext>(ctx)) {
  std::vector<std::pair<std::string, Matrix>> tagged;
  tagged.reserve(elems.size());
  for (auto& m : elems) {
    std::string k = matrix_key(ctx, m);
    tagged.emplace_back(std::move(k), std::move(m));
  }
  std::sort(tagged.begin(), tagged.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  tagged.erase(std::unique(tagged.begin(), tagged.end(), [](const auto& a, const auto& b) { return a.first == b.first; }),
               tagged.end());
  elems_.reserve(tagged.size());
  keys_.reserve(tagged.size());
  index_.reserve(tagged.size());
  for (auto& [k, m] : tagged) {
    index_.emplace(k, static_cast<ElemId>(keys_.size()));
    keys_.push_back(std::move(k));
    elems_.push_back(std::move(m));
  }
  auto id = find(identity_matrix(ctx));
  if (!id) throw Error(ErrorKind::Integrity, "element set does not contain the identity");
  identity_ = *id;
}

MatrixGroup MatrixGroup::closure(const SLContext& ctx, const std::vector<Matrix>& gens, std::uint64_t budget) {
  for (const auto& g : gens)
    if (determinant(ctx, g) != 1) throw Error(ErrorKind::Integrity, "generator does not have determinant 1");
  std::unordered_set<std::string> seen;
  std::vector<Matrix> found;
  std::deque<std::size_t> frontier;
  Matrix e = identity_matrix(ctx);
  seen.insert(matrix_key(ctx, e));
  found.push_back(e);
  frontier.push_back(0);
  while (!frontier.empty()) {
    const std::size_t x = frontier.front();
    frontier.pop_front();
    for (const auto& g : gens) {
      Matrix y = mat_mul(ctx, found[x], g);
      if (!seen.insert(matrix_key(ctx, y)).second) continue;
      if (found.size() >= budget) throw ResourceError("group closure exceeded element budget", found.size());
      found.push_back(std::move(y));
      frontier.push_back(found.size() - 1);
    }
  }
  return MatrixGroup(ctx, std::move(found));
}

MatrixGroup MatrixGroup::from_elements(const SLContext& ctx, std::vector<Matrix> elems) {
  return MatrixGroup(ctx, std::move(elems));
}

std::optional<ElemId> MatrixGroup::find(const Matrix& m) const { return find_key(matrix_key(*ctx_, m)); }

std::optional<ElemId> MatrixGroup::find_key(const std::string& k) const {
  auto it = index_.find(k);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

ElemId MatrixGroup::multiply(ElemId a, ElemId b) const {
  auto id = find(mat_mul(*ctx_, elems_[a], elems_[b]));
  if (!id) throw Error(ErrorKind::Integrity, "product left the enumerated group");
  return *id;
}

ElemId MatrixGroup::inverse(ElemId a) const {
  auto id = find(mat_inverse(*ctx_, elems_[a]));
  if (!id) throw Error(ErrorKind::Integrity, "inverse left the enumerated group");
  return *id;
}

Subgroup MatrixGroup::subgroup_of(const MatrixGroup& sub) const {
  std::vector<ElemId> ids;
  ids.reserve(sub.order());
  for (const auto& k : sub.keys()) {
    auto id = find_key(k);
    if (!id) throw Error(ErrorKind::Integrity, "subgroup element missing from the ambient group");
    ids.push_back(*id);
  }
  return Subgroup(this, std::move(ids));
}

bool MatrixGroup::contains_all(const MatrixGroup& sub) const {
  return std::all_of(sub.keys().begin(), sub.keys().end(), [&](const std::string& k) { return index_.count(k) > 0; });
}

MatrixGroup intersect(const MatrixGroup& a, const MatrixGroup& b) {
  std::vector<Matrix> out;
  std::size_t i = 0, j = 0;
  while (i < a.order() && j < b.order()) {
    const auto& ka = a.keys()[i];
    const auto& kb = b.keys()[j];
    if (ka < kb) {
      ++i;
    } else if (kb < ka) {
      ++j;
    } else {
      out.push_back(a.element(static_cast<ElemId>(i)));
      ++i;
      ++j;
    }
  }
  return MatrixGroup::from_elements(a.context(), std::move(out));
}

IpResult ip_check(const MatrixGroup& s, const MatrixGroup& t, const MatrixGroup& expected) {
  MatrixGroup got = intersect(s, t);
  IpResult r;
  r.computed = got.order();
  r.expected = expected.order();
  for (ElemId x = 0; x < got.order() && !r.witness; ++x)
    if (!expected.find_key(got.keys()[x])) r.witness = got.element(x);
  for (ElemId x = 0; x < expected.order() && !r.witness; ++x)
    if (!got.find_key(expected.keys()[x])) r.witness = expected.element(x);
  r.ok = !r.witness;
  return r;
}

std::uint64_t abstract_local_order(const CartanMatrix& gcm, IndexSet J, std::uint64_t q) {
  return poly::checked_pow(q, positive_roots(gcm, J).size());
}

// ---------------------------------------------------------------------------

RelationReport check_kms_relations(const KmsMap& phi, const CartanMatrix& gcm, int i, int j) {
  const auto& ctx = phi.context();
  const auto& k = phi.base();
  RelationReport rep;
  Rank2Type type = classify_pair(gcm, i, j);
  if (type != Rank2Type::A1xA1 && type != Rank2Type::A2)
    throw Error(ErrorKind::Unsupported, "relation check implemented for simply-laced pairs");
  if (i > j) std::swap(i, j);
  UnipotentGroup U(type, k);
  // Root images: N_a, N_b and, for A2, N_{a+b} = [N_a, N_b].
  std::vector<Matrix> nil{phi.nilpotent(i), phi.nilpotent(j)};
  if (type == Rank2Type::A2)
    nil.push_back(mat_sub(ctx, mat_mul(ctx, nil[0], nil[1]), mat_mul(ctx, nil[1], nil[0])));
  auto psi = [&](ElemId u) {
    Matrix m = identity_matrix(ctx);
    auto c = U.coords(u);
    for (std::size_t r = 0; r < c.size(); ++r) {
      Matrix x = identity_matrix(ctx);
      for (std::size_t e = 0; e < x.size(); ++e)
        x[e] = ctx.ring.add(x[e], ctx.ring.mul(ctx.ring.embed(c[r]), nil[r][e]));
      m = mat_mul(ctx, m, x);
    }
    return m;
  };
  auto fail = [&](const std::string& what, Elem a, Elem b) {
    rep.ok = false;
    rep.failure = what + " fails at (" + k.format(a) + ", " + k.format(b) + ") for nodes {" + std::to_string(i) + "," +
                  std::to_string(j) + "}";
  };
  const Elem q = k.order();
  for (Elem lam = 0; lam < q && rep.ok; ++lam)
    for (Elem mu = 0; mu < q && rep.ok; ++mu) {
      // u_i(lam) u_i(mu) = u_i(lam + mu), and the same for j.
      for (int node : {i, j}) {
        if (mat_mul(ctx, phi.image(node, lam), phi.image(node, mu)) != phi.image(node, k.add(lam, mu))) {
          fail("additivity", lam, mu);
          break;
        }
        ++rep.checked;
      }
      if (!rep.ok) break;
      // [u_j(mu), u_i(lam)] as computed in U_{ij}(k), pushed through psi.
      ElemId a = U.element(0, lam), b = U.element(1, mu);
      ElemId c = U.multiply(U.multiply(U.inverse(b), U.inverse(a)), U.multiply(b, a));
      if (commutator(ctx, phi.image(j, mu), phi.image(i, lam)) != psi(c)) fail("commutator relation", lam, mu);
      ++rep.checked;
    }
  return rep;
}

namespace {

// F_p-subspace of R, with elements as base-p digit vectors of their codes.
class FpSpan {
 public:
  FpSpan(std::uint64_t p, int dim) : p_(p), dim_(dim), pivots_(static_cast<std::size_t>(dim)) {}

  bool add(Elem code) {
    std::vector<std::uint64_t> v = digits(code);
    for (int c = dim_ - 1; c >= 0; --c) {
      if (v[static_cast<std::size_t>(c)] == 0) continue;
      auto& row = pivots_[static_cast<std::size_t>(c)];
      if (row.empty()) {
        // normalize pivot to 1
        const std::uint64_t inv = modinv(v[static_cast<std::size_t>(c)]);
        for (auto& x : v) x = x * inv % p_;
        row = v;
        basis_.push_back(code);
        return true;
      }
      const std::uint64_t f = v[static_cast<std::size_t>(c)];
      for (int j = 0; j < dim_; ++j)
        v[static_cast<std::size_t>(j)] = (v[static_cast<std::size_t>(j)] + (p_ - f) * row[static_cast<std::size_t>(j)]) % p_;
    }
    return false;
  }
  int dimension() const { return static_cast<int>(basis_.size()); }
  const std::vector<Elem>& basis() const { return basis_; }

 private:
  std::vector<std::uint64_t> digits(Elem code) const {
    std::vector<std::uint64_t> v(static_cast<std::size_t>(dim_), 0);
    for (int i = 0; i < dim_; ++i, code /= p_) v[static_cast<std::size_t>(i)] = code % p_;
    return v;
  }
  std::uint64_t modinv(std::uint64_t a) const {
    std::uint64_t r = 1, e = p_ - 2;
    while (e) {
      if (e & 1) r = r * a % p_;
      a = a * a % p_;
      e >>= 1;
    }
    return r;
  }

  std::uint64_t p_;
  int dim_;
  std::vector<std::vector<std::uint64_t>> pivots_;
  std::vector<Elem> basis_;
};

}  // namespace

SurjectivityReport surjectivity_by_root_subgroups(const KmsMap& phi) {
  const auto& R = phi.context().ring;
  const int n = phi.context().n;
  const std::uint64_t p = R.characteristic();
  const int dim = static_cast<int>(R.prime_degree());
  std::vector<FpSpan> span;
  span.reserve(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n * n; ++i) span.emplace_back(p, dim);
  auto S = [&](int r, int c) -> FpSpan& { return span[static_cast<std::size_t>(r * n + c)]; };
  const auto& k = phi.base();
  for (int node = 0; node <= phi.dimension(); ++node) {
    Elem basis = 1;
    for (std::size_t e = 0; e < k.prime_degree(); ++e, basis *= p) {
      if (node == 0)
        S(n - 1, 0).add(R.mul(R.embed(basis), R.variable_class()));
      else
        S(node - 1, node).add(R.embed(basis));
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        if (r == c) continue;
        for (int l = 0; l < n; ++l) {
          if (l == r || l == c) continue;
          // [x_{rc}(s), x_{cl}(u)] = x_{rl}(su)
          auto a = S(r, c).basis();
          auto b = S(c, l).basis();
          for (Elem x : a)
            for (Elem y : b)
              if (S(r, l).add(R.mul(x, y))) changed = true;
        }
      }
  }
  SurjectivityReport rep;
  rep.ring_dimension = dim;
  rep.surjective = true;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      if (r == c) continue;
      rep.span_dims.push_back({{r, c}, S(r, c).dimension()});
      if (S(r, c).dimension() != dim) rep.surjective = false;
    }
  return rep;
}

std::string sl_order_string(int n, std::uint64_t Q) {
  using boost::multiprecision::cpp_int;
  cpp_int q = Q, r = 1;
  for (int i = 0; i < n * (n - 1) / 2; ++i) r *= q;
  for (int i = 2; i <= n; ++i) {
    cpp_int qi = 1;
    for (int j = 0; j < i; ++j) qi *= q;
    r *= qi - 1;
  }
  return r.str();
}

std::optional<std::uint64_t> sl_order(int n, std::uint64_t Q) {
  using boost::multiprecision::cpp_int;
  cpp_int v(sl_order_string(n, Q));
  if (v > cpp_int(std::numeric_limits<std::uint64_t>::max())) return std::nullopt;
  return static_cast<std::uint64_t>(v);
}

}  // namespace hdx
