#pragma once

// Exact arithmetic over prime fields F_p, extensions F_{p^m} = F_p[x]/(g) and
// quotient rings k[t]/(f) for irreducible f over k.
//
// Elements of every field are encoded as integer codes: the residue
// sum_i c_i y^i over the base field is stored as sum_i code(c_i) * |base|^i.
// Flattening the tower, a code is the base-p expansion of all prime-field
// digits, which makes addition digit-wise mod p at every level.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "hdx/error.hpp"

namespace hdx {

using Elem = std::uint64_t;

// Coefficients in ascending degree order with no trailing zeros. The zero
// polynomial is the empty vector.
using Poly = std::vector<Elem>;

bool is_prime(std::uint64_t n) noexcept;

class PrimeField {
 public:
  explicit PrimeField(std::uint64_t p);

  std::uint64_t characteristic() const noexcept { return p_; }
  std::uint64_t order() const noexcept { return p_; }
  std::size_t prime_degree() const noexcept { return 1; }

  Elem zero() const noexcept { return 0; }
  Elem one() const noexcept { return 1; }
  bool is_zero(Elem a) const noexcept { return a == 0; }

  Elem add(Elem a, Elem b) const noexcept {
    Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem sub(Elem a, Elem b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  Elem neg(Elem a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const noexcept {
    return static_cast<Elem>((static_cast<unsigned __int128>(a) * b) % p_);
  }
  Elem inv(Elem a) const;
  Elem pow(Elem a, std::uint64_t e) const noexcept;

  Elem from_int(std::int64_t v) const noexcept;
  // Validates that code < order().
  Elem from_code(std::uint64_t code) const;
  std::string format(Elem a) const;

  bool operator==(const PrimeField& other) const noexcept { return p_ == other.p_; }

 private:
  std::uint64_t p_;
};

// Base[y]/(modulus) for a monic irreducible modulus over Base. With
// Base = PrimeField this is F_{p^m}; with Base = GaloisField it is k[t]/(f).
template <class Base>
class QuotientField {
 public:
  using BaseField = Base;

  // `modulus` must be monic and irreducible over `base`; `var` names the
  // adjoined variable in formatted output.
  QuotientField(Base base, Poly modulus, char var);

  const Base& base() const noexcept { return base_; }
  const Poly& modulus() const noexcept { return modulus_; }
  char variable() const noexcept { return var_; }
  std::size_t degree() const noexcept { return modulus_.size() - 1; }
  std::uint64_t order() const noexcept { return order_; }
  std::uint64_t characteristic() const noexcept { return base_.characteristic(); }
  std::size_t prime_degree() const noexcept { return degree() * base_.prime_degree(); }

  Elem zero() const noexcept { return 0; }
  Elem one() const noexcept { return 1; }
  bool is_zero(Elem a) const noexcept { return a == 0; }

  Elem add(Elem a, Elem b) const noexcept;
  Elem sub(Elem a, Elem b) const noexcept;
  Elem neg(Elem a) const noexcept;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem pow(Elem a, std::uint64_t e) const;

  // Residue as a polynomial over the base field.
  Poly to_poly(Elem a) const;
  // Reduces an arbitrary polynomial over the base field modulo the modulus.
  Elem from_poly(const Poly& p) const;
  // Constant residue of a base-field element.
  Elem embed(Elem base_elem) const noexcept { return base_elem; }
  // Residue class of the adjoined variable.
  Elem variable_class() const;
  Elem from_int(std::int64_t v) const noexcept;
  Elem from_code(std::uint64_t code) const;
  std::string format(Elem a) const;

  bool operator==(const QuotientField& other) const {
    return base_ == other.base_ && modulus_ == other.modulus_;
  }

 private:
  struct LogTables {
    std::vector<std::uint32_t> log;   // log[a] for a != 0
    std::vector<std::uint32_t> exp;   // exp[i], i in [0, 2(order-1))
  };

  Elem mul_slow(Elem a, Elem b) const;
  Elem inv_slow(Elem a) const;
  void build_tables();

  Base base_;
  Poly modulus_;
  char var_;
  std::uint64_t order_ = 0;
  std::uint64_t base_order_ = 0;
  std::uint64_t p_ = 0;
  std::shared_ptr<const LogTables> tables_;
};

using GaloisField = QuotientField<PrimeField>;
using QuotientRing = QuotientField<GaloisField>;

extern template class QuotientField<PrimeField>;
extern template class QuotientField<GaloisField>;

// Log/antilog tables are precomputed for fields up to this order.
inline constexpr std::uint64_t kTableThreshold = std::uint64_t{1} << 16;

// F_{p^m} with the lexicographically first monic irreducible of degree m as
// modulus (for m = 1 the modulus is x, giving F_p itself).
GaloisField make_galois_field(std::uint64_t p, std::size_t m);
GaloisField make_galois_field(std::uint64_t p, const Poly& modulus);

}  // namespace hdx
