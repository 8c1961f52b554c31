#include "hdx/rootdata.hpp"

#include "hdx/algebra.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace hdx {

std::vector<int> set_members(IndexSet s) {
  std::vector<int> out;
  for (int i = 0; s; ++i, s >>= 1)
    if (s & 1u) out.push_back(i);
  return out;
}

std::string format_set(IndexSet s) {
  std::string out = "{";
  bool first = true;
  for (int i : set_members(s)) {
    if (!first) out += ',';
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

CartanMatrix::CartanMatrix(std::vector<std::vector<int>> rows) {
  rank_ = static_cast<int>(rows.size());
  if (rank_ < 1 || rank_ > 31) throw Error(ErrorKind::Spec, "Cartan matrix rank must be in [1, 31]");
  for (const auto& row : rows)
    if (static_cast<int>(row.size()) != rank_) throw Error(ErrorKind::Spec, "Cartan matrix must be square");
  a_.reserve(static_cast<std::size_t>(rank_ * rank_));
  for (const auto& row : rows) a_.insert(a_.end(), row.begin(), row.end());
  for (int i = 0; i < rank_; ++i) {
    if ((*this)(i, i) != 2) throw Error(ErrorKind::Spec, "Cartan matrix diagonal entries must be 2");
    for (int j = 0; j < rank_; ++j) {
      if (i == j) continue;
      if ((*this)(i, j) > 0) throw Error(ErrorKind::Spec, "Cartan matrix off-diagonal entries must be <= 0");
      if (((*this)(i, j) == 0) != ((*this)(j, i) == 0))
        throw Error(ErrorKind::Spec, "Cartan matrix must satisfy A(i,j) = 0 <=> A(j,i) = 0");
    }
  }
}

std::vector<std::vector<int>> CartanMatrix::rows() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(rank_));
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) out[static_cast<std::size_t>(i)].push_back((*this)(i, j));
  return out;
}

CartanMatrix CartanMatrix::restrict_to(IndexSet subset) const {
  auto idx = set_members(subset);
  std::vector<std::vector<int>> rows;
  for (int i : idx) {
    std::vector<int> row;
    for (int j : idx) row.push_back((*this)(i, j));
    rows.push_back(std::move(row));
  }
  return CartanMatrix(std::move(rows));
}

std::string CartanMatrix::to_json() const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < rank_; ++i) {
    if (i) os << ',';
    os << '[';
    for (int j = 0; j < rank_; ++j) os << (j ? "," : "") << (*this)(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

CartanMatrix parse_cartan_matrix(const std::string& text) {
  std::vector<std::vector<int>> rows;
  std::vector<int> cur;
  int depth = 0;
  std::string num;
  auto flush = [&] {
    if (!num.empty()) {
      cur.push_back(std::stoi(num));
      num.clear();
    }
  };
  for (char ch : text) {
    if (ch == '[') {
      ++depth;
    } else if (ch == ']') {
      flush();
      if (depth == 2) {
        rows.push_back(cur);
        cur.clear();
      }
      --depth;
    } else if (ch == '-' || std::isdigit(static_cast<unsigned char>(ch))) {
      num += ch;
    } else if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
      flush();
    } else {
      throw Error(ErrorKind::Spec, "unexpected character in Cartan matrix: '" + std::string(1, ch) + "'");
    }
    if (depth < 0 || depth > 2) throw Error(ErrorKind::Spec, "malformed Cartan matrix");
  }
  if (depth != 0 || rows.empty()) throw Error(ErrorKind::Spec, "malformed Cartan matrix");
  return CartanMatrix(std::move(rows));
}

namespace {

CartanMatrix type_a(int n) {
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i) {
    rows[i][i] = 2;
    if (i + 1 < n) rows[i][i + 1] = rows[i + 1][i] = -1;
  }
  return CartanMatrix(rows);
}

}  // namespace

CartanMatrix cartan_preset(const std::string& name) {
  if (name == "G~2") return CartanMatrix({{2, -1, 0}, {-1, 2, -1}, {0, -3, 2}});
  if (name == "G2") return CartanMatrix({{2, -1}, {-3, 2}});
  if (name == "B2") return CartanMatrix({{2, -2}, {-1, 2}});
  if (name.size() >= 3 && name[0] == 'A' && name[1] == '~') {
    int n = std::stoi(name.substr(2));
    if (n < 2) throw Error(ErrorKind::Spec, "preset A~n requires n >= 2");
    return affinize(type_a(n)).affine;
  }
  if (name.size() >= 2 && name[0] == 'A' && std::isdigit(static_cast<unsigned char>(name[1]))) {
    int n = std::stoi(name.substr(1));
    if (n < 1) throw Error(ErrorKind::Spec, "preset An requires n >= 1");
    return type_a(n);
  }
  throw Error(ErrorKind::Spec, "unknown diagram preset '" + name + "'");
}

const char* to_string(Rank2Type t) noexcept {
  switch (t) {
    case Rank2Type::A1xA1: return "A1xA1";
    case Rank2Type::A2: return "A2";
    case Rank2Type::B2: return "B2";
    case Rank2Type::G2: return "G2";
  }
  return "?";
}

Rank2Type classify_pair(const CartanMatrix& gcm, int i, int j) {
  if (i == j) throw Error(ErrorKind::Spec, "classify_pair needs distinct nodes");
  const int prod = gcm(i, j) * gcm(j, i);
  switch (prod) {
    case 0: return Rank2Type::A1xA1;
    case 1: return Rank2Type::A2;
    case 2: return Rank2Type::B2;
    case 3: return Rank2Type::G2;
    default:
      throw Error(ErrorKind::NonSpherical, "pair {" + std::to_string(i) + "," + std::to_string(j) +
                                               "} has A_ij*A_ji = " + std::to_string(prod) + " >= 4");
  }
}

int short_node(const CartanMatrix& gcm, int i, int j) {
  // |A(i,j)| > |A(j,i)| means alpha_i is the shorter root.
  return std::abs(gcm(j, i)) > std::abs(gcm(i, j)) ? j : i;
}

int height(const RootVector& r) {
  int h = 0;
  for (int c : r) h += c;
  return h;
}

bool root_order_less(const RootVector& x, const RootVector& y) {
  const int hx = height(x), hy = height(y);
  if (hx != hy) return hx < hy;
  return std::lexicographical_compare(y.begin(), y.end(), x.begin(), x.end());
}

std::vector<RootVector> positive_roots(Rank2Type type) {
  switch (type) {
    case Rank2Type::A1xA1: return {{1, 0}, {0, 1}};
    case Rank2Type::A2: return {{1, 0}, {0, 1}, {1, 1}};
    case Rank2Type::B2: return {{1, 0}, {0, 1}, {1, 1}, {2, 1}};
    case Rank2Type::G2: return {{1, 0}, {0, 1}, {1, 1}, {2, 1}, {3, 1}, {3, 2}};
  }
  return {};
}

std::vector<RootVector> positive_roots(const CartanMatrix& gcm, IndexSet subset) {
  if (!is_spherical(gcm, subset)) throw Error(ErrorKind::NonSpherical, "subset " + format_set(subset) + " is not spherical");
  const auto idx = set_members(subset);
  const std::size_t n = idx.size();
  std::set<RootVector> known;
  std::vector<RootVector> layer;
  for (std::size_t i = 0; i < n; ++i) {
    RootVector r(n, 0);
    r[i] = 1;
    known.insert(r);
    layer.push_back(r);
  }
  // Grow height by height: beta + alpha_i is a root iff q > 0 where
  // p - q = <beta, alpha_i^vee> and p is the length of the downward string.
  while (!layer.empty()) {
    std::set<RootVector> next;
    for (const auto& beta : layer) {
      for (std::size_t i = 0; i < n; ++i) {
        int p = 0;
        RootVector down = beta;
        while (true) {
          down[i] -= 1;
          if (!known.count(down)) break;
          ++p;
        }
        int pairing = 0;
        for (std::size_t j = 0; j < n; ++j) pairing += beta[j] * gcm(idx[i], idx[j]);
        if (p - pairing > 0) {
          RootVector up = beta;
          up[i] += 1;
          if (!known.count(up)) next.insert(up);
        }
      }
    }
    layer.assign(next.begin(), next.end());
    known.insert(next.begin(), next.end());
  }
  std::vector<RootVector> out(known.begin(), known.end());
  std::sort(out.begin(), out.end(), root_order_less);
  return out;
}

namespace {

double coxeter_angle_cos(int product) {
  switch (product) {
    case 0: return 0.0;                                   // m = 2
    case 1: return std::cos(std::numbers::pi / 3);        // m = 3
    case 2: return std::cos(std::numbers::pi / 4);        // m = 4
    case 3: return std::cos(std::numbers::pi / 6);        // m = 6
    default: return 1.0;                                  // m = infinity
  }
}

}  // namespace

bool is_spherical(const CartanMatrix& gcm, IndexSet subset) {
  const auto idx = set_members(subset);
  const auto n = static_cast<Eigen::Index>(idx.size());
  if (n == 0) return true;
  Eigen::MatrixXd b(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) {
      if (r == c) {
        b(r, c) = 1.0;
        continue;
      }
      const int prod = gcm(idx[r], idx[c]) * gcm(idx[c], idx[r]);
      b(r, c) = -coxeter_angle_cos(prod);
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() > 1e-9;
}

std::vector<IndexSet> spherical_subsets(const CartanMatrix& gcm) {
  std::vector<IndexSet> out;
  for (IndexSet s = 0; s <= gcm.all(); ++s)
    if (is_spherical(gcm, s)) out.push_back(s);
  std::sort(out.begin(), out.end(), [](IndexSet a, IndexSet b) {
    return set_size(a) != set_size(b) ? set_size(a) < set_size(b) : a < b;
  });
  return out;
}

bool is_d_spherical(const CartanMatrix& gcm) {
  const int d = gcm.rank() - 1;
  for (IndexSet s = 0; s <= gcm.all(); ++s)
    if (set_size(s) == d && !is_spherical(gcm, s)) return false;
  return true;
}

bool is_purely_d_spherical(const CartanMatrix& gcm) {
  // Every spherical subset extends to a spherical subset of size d, and the
  // whole index set is not spherical.
  const int d = gcm.rank() - 1;
  if (is_spherical(gcm, gcm.all())) return false;
  for (IndexSet s : spherical_subsets(gcm)) {
    bool extends = false;
    for (IndexSet t = 0; t <= gcm.all() && !extends; ++t)
      if ((t & s) == s && set_size(t) == d && is_spherical(gcm, t)) extends = true;
    if (!extends) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Commutator tables. Root indices follow positive_roots(type); the expansion
// of [x_r(u), x_s(t)] for s < r. Derived from Chevalley bases of the
// faithful representations sl_3, sp_4 and the 7-dimensional G2 module, with
// root vectors e_{a+b} = [e_a, e_b], e_{2a+b} = [e_a, e_{a+b}]/2,
// e_{3a+b} = [e_a, e_{2a+b}]/3, e_{3a+2b} = [e_b, e_{3a+b}].

namespace {

using Table = std::map<std::pair<int, int>, std::vector<CommutatorTerm>>;

const Table& table_for(Rank2Type type) {
  static const Table a1xa1{};
  static const Table a2{
      {{1, 0}, {{2, -1, 1, 1}}},
  };
  static const Table b2{
      {{1, 0}, {{2, -1, 1, 1}, {3, 1, 1, 2}}},
      {{2, 0}, {{3, -2, 1, 1}}},
  };
  static const Table g2{
      {{1, 0}, {{2, -1, 1, 1}, {3, 1, 1, 2}, {4, -1, 1, 3}, {5, -1, 2, 3}}},
      {{2, 0}, {{3, -2, 1, 1}, {4, 3, 1, 2}, {5, -3, 2, 1}}},
      {{3, 0}, {{4, -3, 1, 1}}},
      {{3, 2}, {{5, 3, 1, 1}}},
      {{4, 1}, {{5, -1, 1, 1}}},
  };
  switch (type) {
    case Rank2Type::A1xA1: return a1xa1;
    case Rank2Type::A2: return a2;
    case Rank2Type::B2: return b2;
    case Rank2Type::G2: return g2;
  }
  return a1xa1;
}

struct Monomial {
  int root;
  long long coeff;
  int k;  // degree in s
  int l;  // degree in u
};

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

const std::vector<CommutatorTerm>& commutator_terms(Rank2Type type, int r, int s) {
  static const std::vector<CommutatorTerm> none{};
  if (s >= r) throw Error(ErrorKind::Spec, "commutator_terms expects s < r in root order");
  const auto& table = table_for(type);
  auto it = table.find({r, s});
  return it == table.end() ? none : it->second;
}

std::vector<StructureConstant> structure_constants(Rank2Type type, int alpha, int beta) {
  const auto roots = positive_roots(type);
  const int n = static_cast<int>(roots.size());
  if (alpha < 0 || beta < 0 || alpha >= n || beta >= n || alpha == beta)
    throw Error(ErrorKind::Spec, "structure_constants needs two distinct positive roots");
  // [x_alpha(s), x_beta(u)] as a word of monomial factors, then collected into
  // root order. For alpha later than beta this is a table lookup; otherwise
  // it is the inverse of [x_beta(u), x_alpha(s)] re-collected.
  std::vector<Monomial> word;
  if (alpha > beta) {
    for (const auto& t : commutator_terms(type, alpha, beta)) word.push_back({t.root, t.coeff, t.pow_u, t.pow_t});
  } else {
    const auto& terms = commutator_terms(type, beta, alpha);
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) word.push_back({it->root, -it->coeff, it->pow_t, it->pow_u});
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < word.size(); ++i) {
      Monomial a = word[i], b = word[i + 1];
      if (a.root == b.root) {
        // Same root forces the same (k, l), so the arguments add.
        a.coeff += b.coeff;
        word.erase(word.begin() + static_cast<long>(i) + 1);
        if (a.coeff == 0)
          word.erase(word.begin() + static_cast<long>(i));
        else
          word[i] = a;
        changed = true;
        break;
      }
      if (a.root > b.root) {
        // x_r(U) x_s(T) = x_s(T) x_r(U) [x_r(U), x_s(T)]
        std::vector<Monomial> repl{b, a};
        for (const auto& t : commutator_terms(type, a.root, b.root))
          repl.push_back({t.root, t.coeff * ipow(a.coeff, t.pow_u) * ipow(b.coeff, t.pow_t),
                          a.k * t.pow_u + b.k * t.pow_t, a.l * t.pow_u + b.l * t.pow_t});
        word.erase(word.begin() + static_cast<long>(i), word.begin() + static_cast<long>(i) + 2);
        word.insert(word.begin() + static_cast<long>(i), repl.begin(), repl.end());
        changed = true;
        break;
      }
    }
  }
  std::vector<StructureConstant> out;
  for (const auto& m : word) out.push_back({m.root, static_cast<int>(m.coeff), m.k, m.l});
  return out;
}

// ---------------------------------------------------------------------------

GammaBound gamma_bound(Rank2Type type, std::uint64_t p, unsigned m) {
  const double pd = static_cast<double>(p);
  const double q = std::pow(pd, static_cast<double>(m));
  switch (type) {
    case Rank2Type::A1xA1: return {0.0, 0, "0"};
    case Rank2Type::A2: return {1.0 / std::sqrt(pd), 1, "1/sqrt(p)"};
    case Rank2Type::B2: return {std::sqrt(2.0 / pd), 2, "sqrt(2/p)"};
    case Rank2Type::G2:
      if (m == 1) return {std::sqrt(std::sqrt(3.0 / pd) + 1.0 / (pd * pd)), 3, "sqrt(sqrt(3/p)+1/p^2)"};
      return {std::pow(188.0 / q, 1.0 / 16.0), 3, "(188/q)^(1/16)"};
  }
  return {};
}

GammaBound gamma_bound(const CartanMatrix& gcm, std::uint64_t p, unsigned m) {
  if (!is_prime(p)) throw Error(ErrorKind::Spec, "gamma_bound needs a prime characteristic");
  Rank2Type worst = Rank2Type::A2;  // "at most single edges"
  int worst_mult = 1;
  for (int i = 0; i < gcm.rank(); ++i)
    for (int j = i + 1; j < gcm.rank(); ++j) {
      Rank2Type t = classify_pair(gcm, i, j);
      int mult = gcm(i, j) * gcm(j, i);
      if (mult > worst_mult) {
        worst_mult = mult;
        worst = t;
      }
    }
  return gamma_bound(worst, p, m);
}

int affine_type_a_rank(const CartanMatrix& gcm) {
  const int r = gcm.rank();
  if (r < 3) return 0;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      if (i == j) continue;
      const bool adjacent = (j == (i + 1) % r) || (i == (j + 1) % r);
      if (gcm(i, j) != (adjacent ? -1 : 0)) return 0;
    }
  return r - 1;
}

AffinizationData affinize(const CartanMatrix& spherical) {
  const int n = spherical.rank();
  if (n < 2) throw Error(ErrorKind::Unsupported, "affinization implemented for type A_n with n >= 2");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int expect = i == j ? 2 : (std::abs(i - j) == 1 ? -1 : 0);
      if (spherical(i, j) != expect)
        throw Error(ErrorKind::Unsupported, "affinization implemented only for type A_n Cartan matrices");
    }
  AffinizationData out;
  out.spherical = spherical;
  // The highest root of A_n is alpha_1 + ... + alpha_n: the unique positive
  // root of maximal height.
  auto roots = positive_roots(spherical, spherical.all());
  out.highest_root = roots.back();
  // Affine node 0: A(0,i) = <alpha_i, -gamma^vee>, A(i,0) = <-gamma, alpha_i^vee>.
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(n + 1), std::vector<int>(static_cast<std::size_t>(n + 1), 0));
  rows[0][0] = 2;
  for (int i = 1; i <= n; ++i) {
    int pair_i0 = 0, pair_0i = 0;
    for (int j = 1; j <= n; ++j) {
      pair_i0 -= out.highest_root[static_cast<std::size_t>(j - 1)] * spherical(i - 1, j - 1);
      // gamma^vee = sum of coroots for simply-laced types
      pair_0i -= out.highest_root[static_cast<std::size_t>(j - 1)] * spherical(j - 1, i - 1);
    }
    rows[static_cast<std::size_t>(i)][0] = pair_i0;
    rows[0][static_cast<std::size_t>(i)] = pair_0i;
    for (int j = 1; j <= n; ++j) rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = spherical(i - 1, j - 1);
  }
  out.affine = CartanMatrix(rows);
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) out.pair_types[{i, j}] = classify_pair(out.affine, i, j);
  return out;
}

}  // namespace hdx
