#pragma once

// Univariate polynomial arithmetic over any of the field types in
// algebra.hpp. Polynomials are plain coefficient vectors (see hdx::Poly); the
// field object supplies coefficient arithmetic.

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hdx/algebra.hpp"

namespace hdx::poly {

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

template <class F>
Poly add(const F& field, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    Elem x = i < a.size() ? a[i] : 0;
    Elem y = i < b.size() ? b[i] : 0;
    r[i] = field.add(x, y);
  }
  trim(r);
  return r;
}

template <class F>
Poly sub(const F& field, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    Elem x = i < a.size() ? a[i] : 0;
    Elem y = i < b.size() ? b[i] : 0;
    r[i] = field.sub(x, y);
  }
  trim(r);
  return r;
}

template <class F>
Poly mul(const F& field, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = field.add(r[i + j], field.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

template <class F>
Poly scale(const F& field, const Poly& a, Elem c) {
  Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = field.mul(a[i], c);
  trim(r);
  return r;
}

// Returns (quotient, remainder).
template <class F>
std::pair<Poly, Poly> divmod(const F& field, const Poly& a, const Poly& modulus) {
  if (modulus.empty()) throw Error(ErrorKind::Math, "polynomial division by zero modulus");
  Poly rem = a;
  trim(rem);
  if (rem.size() < modulus.size()) return {Poly{}, rem};
  const std::size_t dm = modulus.size() - 1;
  const Elem lead_inv = field.inv(modulus.back());
  Poly quot(rem.size() - dm, 0);
  for (std::size_t i = rem.size(); i-- > dm;) {
    if (rem[i] == 0) continue;
    Elem c = field.mul(rem[i], lead_inv);
    quot[i - dm] = c;
    for (std::size_t j = 0; j <= dm; ++j)
      rem[i - dm + j] = field.sub(rem[i - dm + j], field.mul(c, modulus[j]));
  }
  trim(rem);
  trim(quot);
  return {quot, rem};
}

template <class F>
Poly mod_reduce(const F& field, const Poly& a, const Poly& modulus) {
  return divmod(field, a, modulus).second;
}

template <class F>
Poly make_monic(const F& field, const Poly& a) {
  if (a.empty()) return a;
  return scale(field, a, field.inv(a.back()));
}

// Monic gcd.
template <class F>
Poly gcd(const F& field, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod_reduce(field, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(field, a);
}

// Inverse of a modulo `modulus`, assuming gcd(a, modulus) = 1.
template <class F>
Poly inverse_mod(const F& field, const Poly& a, const Poly& modulus) {
  Poly r0 = modulus, r1 = mod_reduce(field, a, modulus);
  Poly s0{}, s1{field.one()};
  if (r1.empty()) throw Error(ErrorKind::Math, "inverse of zero");
  while (r1.size() > 1) {
    auto [q, r] = divmod(field, r0, r1);
    Poly s = sub(field, s0, mul(field, q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
    if (r1.empty()) throw Error(ErrorKind::Math, "element is not invertible modulo the modulus");
  }
  return scale(field, s1, field.inv(r1[0]));
}

// Monic polynomial of degree n whose lower coefficients are the base-q
// digits of `index` (c_0 least significant). Enumerating index = 0.. walks
// the monic polynomials of degree n in lexicographic order of the
// descending-degree coefficient list.
template <class F>
Poly monic_from_index(const F& field, std::size_t n, std::uint64_t index) {
  Poly r(n + 1, 0);
  const std::uint64_t q = field.order();
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = index % q;
    index /= q;
  }
  r[n] = field.one();
  return r;
}

inline std::uint64_t checked_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (r > (~std::uint64_t{0}) / base) throw Error(ErrorKind::Resource, "integer overflow in q^n");
    r *= base;
  }
  return r;
}

// Trial division by every monic polynomial of degree <= deg/2.
template <class F>
bool is_irreducible(const F& field, const Poly& g_in) {
  Poly g = g_in;
  trim(g);
  if (g.size() <= 1) throw Error(ErrorKind::Math, "irreducibility of a constant polynomial is undefined");
  const std::size_t n = g.size() - 1;
  for (std::size_t d = 1; d <= n / 2; ++d) {
    const std::uint64_t count = checked_pow(field.order(), d);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      if (mod_reduce(field, g, monic_from_index(field, d, idx)).empty()) return false;
    }
  }
  return true;
}

// A monic nontrivial factor of g, or empty if g is irreducible.
template <class F>
Poly find_factor(const F& field, const Poly& g) {
  const std::size_t n = g.size() - 1;
  for (std::size_t d = 1; d <= n / 2; ++d) {
    const std::uint64_t count = checked_pow(field.order(), d);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Poly cand = monic_from_index(field, d, idx);
      if (mod_reduce(field, g, cand).empty()) return cand;
    }
  }
  return {};
}

template <class F>
std::vector<Poly> enumerate_irreducibles(const F& field, std::size_t n) {
  if (n < 1) throw Error(ErrorKind::Spec, "degree must be at least 1");
  std::vector<Poly> out;
  const std::uint64_t count = checked_pow(field.order(), n);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    Poly cand = monic_from_index(field, n, idx);
    if (is_irreducible(field, cand)) out.push_back(std::move(cand));
  }
  return out;
}

template <class F>
Poly first_irreducible(const F& field, std::size_t n) {
  if (n < 1) throw Error(ErrorKind::Spec, "degree must be at least 1");
  const std::uint64_t count = checked_pow(field.order(), n);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    Poly cand = monic_from_index(field, n, idx);
    if (is_irreducible(field, cand)) return cand;
  }
  throw Error(ErrorKind::Integrity, "no irreducible polynomial found");
}

// Human form, e.g. "t^2+t+1". Coefficients are printed with the field's own
// formatter; compound coefficients are parenthesised.
template <class F>
std::string to_string(const F& field, const Poly& a, char var) {
  if (a.empty()) return "0";
  std::string out;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] == 0) continue;
    if (!out.empty()) out += '+';
    std::string c = field.format(a[i]);
    bool compound = c.find_first_of("+x t") != std::string::npos || !std::isdigit(static_cast<unsigned char>(c[0]));
    if (i == 0) {
      out += compound && a.size() > 1 ? "(" + c + ")" : c;
      continue;
    }
    if (a[i] != 1) out += compound ? "(" + c + ")" : c;
    out += var;
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

// Coefficient list "c0,c1,..." (ascending, integer codes).
template <class F>
std::string to_coefficient_list(const F&, const Poly& a) {
  if (a.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(a[i]);
  }
  return out;
}

namespace detail {
inline std::uint64_t parse_uint(std::string_view s, std::string_view whole) {
  if (s.empty()) throw Error(ErrorKind::Spec, "malformed polynomial '" + std::string(whole) + "'");
  std::uint64_t v = 0;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch)))
      throw Error(ErrorKind::Spec, "malformed polynomial '" + std::string(whole) + "'");
    v = v * 10 + static_cast<std::uint64_t>(ch - '0');
  }
  return v;
}
}  // namespace detail

// Accepts either a comma-separated coefficient list (low to high) or a human
// form such as "t^2+t+1", "3t^2+2", "x^3+x+1". Coefficients are integer codes
// of field elements; the variable may be any single letter.
template <class F>
Poly parse(const F& field, std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw Error(ErrorKind::Spec, "empty polynomial");
  Poly out;
  auto put = [&](std::size_t deg, Elem c) {
    if (out.size() <= deg) out.resize(deg + 1, 0);
    out[deg] = field.add(out[deg], c);
  };
  if (s.find(',') != std::string::npos || std::all_of(s.begin(), s.end(), [](char ch) {
        return std::isdigit(static_cast<unsigned char>(ch));
      })) {
    std::size_t deg = 0, start = 0;
    while (start <= s.size()) {
      std::size_t end = s.find(',', start);
      if (end == std::string::npos) end = s.size();
      put(deg++, field.from_code(detail::parse_uint(std::string_view(s).substr(start, end - start), text)));
      start = end + 1;
    }
    trim(out);
    return out;
  }
  std::size_t pos = 0;
  while (pos < s.size()) {
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') {
      negative = s[pos] == '-';
      ++pos;
    }
    std::size_t end = s.find_first_of("+-", pos);
    if (end == std::string::npos) end = s.size();
    std::string_view term = std::string_view(s).substr(pos, end - pos);
    pos = end;
    std::size_t vpos = 0;
    while (vpos < term.size() && std::isdigit(static_cast<unsigned char>(term[vpos]))) ++vpos;
    Elem coeff = field.one();
    if (vpos > 0) coeff = field.from_code(detail::parse_uint(term.substr(0, vpos), text));
    std::string_view rest = term.substr(vpos);
    if (!rest.empty() && rest[0] == '*') rest.remove_prefix(1);
    std::size_t deg = 0;
    if (!rest.empty()) {
      if (!std::isalpha(static_cast<unsigned char>(rest[0])))
        throw Error(ErrorKind::Spec, "malformed polynomial '" + std::string(text) + "'");
      rest.remove_prefix(1);
      deg = 1;
      if (!rest.empty()) {
        if (rest[0] != '^') throw Error(ErrorKind::Spec, "malformed polynomial '" + std::string(text) + "'");
        deg = detail::parse_uint(rest.substr(1), text);
      }
    } else if (vpos == 0) {
      throw Error(ErrorKind::Spec, "malformed polynomial '" + std::string(text) + "'");
    }
    put(deg, negative ? field.neg(coeff) : coeff);
  }
  trim(out);
  return out;
}

}  // namespace hdx::poly
