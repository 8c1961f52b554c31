#include "hdx/algebra.hpp"

#include "hdx/poly.hpp"

namespace hdx {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Spec: return "spec";
    case ErrorKind::Math: return "math";
    case ErrorKind::NonSpherical: return "non-spherical";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Resource: return "resource";
    case ErrorKind::Integrity: return "integrity";
    case ErrorKind::Disconnected: return "disconnected";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d <= n / d; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (!is_prime(p)) throw Error(ErrorKind::Spec, "field characteristic " + std::to_string(p) + " is not prime");
}

Elem PrimeField::pow(Elem a, std::uint64_t e) const noexcept {
  Elem r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Elem PrimeField::inv(Elem a) const {
  if (a == 0) throw Error(ErrorKind::Math, "inverse of zero");
  return pow(a, p_ - 2);
}

Elem PrimeField::from_int(std::int64_t v) const noexcept {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += static_cast<std::int64_t>(p_);
  return static_cast<Elem>(r);
}

Elem PrimeField::from_code(std::uint64_t code) const {
  if (code >= p_)
    throw Error(ErrorKind::Spec, "coefficient " + std::to_string(code) + " out of range for F_" + std::to_string(p_));
  return code;
}

std::string PrimeField::format(Elem a) const { return std::to_string(a); }

// ---------------------------------------------------------------------------

template <class Base>
QuotientField<Base>::QuotientField(Base base, Poly modulus, char var)
    : base_(std::move(base)), modulus_(std::move(modulus)), var_(var) {
  poly::trim(modulus_);
  if (modulus_.size() < 2) throw Error(ErrorKind::Spec, "quotient modulus must have degree >= 1");
  if (modulus_.back() != base_.one()) throw Error(ErrorKind::Spec, "quotient modulus must be monic");
  if (!poly::is_irreducible(base_, modulus_)) {
    Poly factor = poly::find_factor(base_, modulus_);
    throw Error(ErrorKind::Spec, "modulus " + poly::to_string(base_, modulus_, var_) +
                                     " is reducible (factor " + poly::to_string(base_, factor, var_) + ")");
  }
  base_order_ = base_.order();
  p_ = base_.characteristic();
  order_ = poly::checked_pow(base_order_, degree());
  if (order_ > (std::uint64_t{1} << 62)) throw Error(ErrorKind::Resource, "field order exceeds 2^62");
  if (order_ <= kTableThreshold) build_tables();
}

template <class Base>
Elem QuotientField<Base>::add(Elem a, Elem b) const noexcept {
  if (p_ == 2) return a ^ b;
  Elem r = 0, scale = 1;
  while (a || b) {
    Elem da = a % p_, db = b % p_;
    Elem s = da + db;
    if (s >= p_) s -= p_;
    r += s * scale;
    scale *= p_;
    a /= p_;
    b /= p_;
  }
  return r;
}

template <class Base>
Elem QuotientField<Base>::neg(Elem a) const noexcept {
  if (p_ == 2) return a;
  Elem r = 0, scale = 1;
  while (a) {
    Elem d = a % p_;
    r += (d ? p_ - d : 0) * scale;
    scale *= p_;
    a /= p_;
  }
  return r;
}

template <class Base>
Elem QuotientField<Base>::sub(Elem a, Elem b) const noexcept {
  return add(a, neg(b));
}

template <class Base>
Poly QuotientField<Base>::to_poly(Elem a) const {
  Poly r;
  while (a) {
    r.push_back(a % base_order_);
    a /= base_order_;
  }
  return r;
}

template <class Base>
Elem QuotientField<Base>::from_poly(const Poly& p) const {
  Poly r = poly::mod_reduce(base_, p, modulus_);
  Elem code = 0;
  for (std::size_t i = r.size(); i-- > 0;) code = code * base_order_ + r[i];
  return code;
}

template <class Base>
Elem QuotientField<Base>::mul_slow(Elem a, Elem b) const {
  return from_poly(poly::mul(base_, to_poly(a), to_poly(b)));
}

template <class Base>
Elem QuotientField<Base>::inv_slow(Elem a) const {
  if (a == 0) throw Error(ErrorKind::Math, "inverse of zero");
  return from_poly(poly::inverse_mod(base_, to_poly(a), modulus_));
}

template <class Base>
Elem QuotientField<Base>::mul(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  if (tables_) return tables_->exp[tables_->log[a] + tables_->log[b]];
  return mul_slow(a, b);
}

template <class Base>
Elem QuotientField<Base>::inv(Elem a) const {
  if (a == 0) throw Error(ErrorKind::Math, "inverse of zero");
  if (tables_) {
    const std::uint64_t n = order_ - 1;
    return tables_->exp[(n - tables_->log[a]) % n];
  }
  return inv_slow(a);
}

template <class Base>
Elem QuotientField<Base>::pow(Elem a, std::uint64_t e) const {
  Elem r = one();
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

template <class Base>
Elem QuotientField<Base>::variable_class() const {
  return from_poly(Poly{base_.zero(), base_.one()});
}

template <class Base>
Elem QuotientField<Base>::from_int(std::int64_t v) const noexcept {
  return base_.from_int(v);
}

template <class Base>
Elem QuotientField<Base>::from_code(std::uint64_t code) const {
  if (code >= order_)
    throw Error(ErrorKind::Spec, "element code " + std::to_string(code) + " out of range for field of order " +
                                     std::to_string(order_));
  return code;
}

template <class Base>
std::string QuotientField<Base>::format(Elem a) const {
  if (degree() == 1) return base_.format(a);
  return poly::to_string(base_, to_poly(a), var_);
}

template <class Base>
void QuotientField<Base>::build_tables() {
  if (order_ < 2) return;
  const std::uint64_t n = order_ - 1;
  auto tables = std::make_shared<LogTables>();
  tables->log.assign(order_, 0);
  tables->exp.assign(2 * n, 0);
  // Search for a primitive element: one whose powers reach every nonzero code.
  for (Elem g = 1; g < order_; ++g) {
    std::vector<bool> seen(order_, false);
    Elem x = 1;
    std::uint64_t k = 0;
    bool primitive = true;
    for (; k < n; ++k) {
      if (seen[x]) {
        primitive = false;
        break;
      }
      seen[x] = true;
      tables->exp[k] = static_cast<std::uint32_t>(x);
      tables->log[x] = static_cast<std::uint32_t>(k);
      x = mul_slow(x, g);
    }
    if (primitive && x == 1) {
      for (std::uint64_t i = n; i < 2 * n; ++i) tables->exp[i] = tables->exp[i - n];
      tables_ = std::move(tables);
      return;
    }
  }
  throw Error(ErrorKind::Integrity, "no primitive element found; modulus is not irreducible");
}

template class QuotientField<PrimeField>;
template class QuotientField<GaloisField>;

GaloisField make_galois_field(std::uint64_t p, std::size_t m) {
  PrimeField fp(p);
  if (m < 1) throw Error(ErrorKind::Spec, "extension degree must be at least 1");
  if (m == 1) return GaloisField(fp, Poly{0, 1}, 'x');
  return GaloisField(fp, poly::first_irreducible(fp, m), 'x');
}

GaloisField make_galois_field(std::uint64_t p, const Poly& modulus) {
  return GaloisField(PrimeField(p), modulus, 'x');
}

}  // namespace hdx
