#include "hdx/unipotent.hpp"

#include "hdx/poly.hpp"

namespace hdx {

UnipotentGroup::UnipotentGroup(Rank2Type type, GaloisField field)
    : type_(type), field_(std::move(field)), roots_(positive_roots(type)), q_(field_.order()) {
  if (q_ > kTableThreshold) throw Error(ErrorKind::Resource, "unipotent groups need a field of order <= 2^16");
  order_ = poly::checked_pow(q_, roots_.size());
  if (order_ > (std::uint64_t{1} << 32)) throw Error(ErrorKind::Resource, "unipotent group order exceeds 2^32");
  key_width_ = 1;
  while ((std::uint64_t{1} << (8 * key_width_)) < q_) ++key_width_;
}

UnipotentGroup::Coords UnipotentGroup::coords(ElemId a) const {
  Coords c(roots_.size());
  std::uint64_t x = a;
  for (std::size_t i = roots_.size(); i-- > 0;) {
    c[i] = x % q_;
    x /= q_;
  }
  return c;
}

ElemId UnipotentGroup::id(const Coords& c) const {
  std::uint64_t x = 0;
  for (Elem v : c) x = x * q_ + v;
  return static_cast<ElemId>(x);
}

ElemId UnipotentGroup::element(int root, Elem value) const {
  Coords c(roots_.size(), 0);
  c.at(static_cast<std::size_t>(root)) = field_.from_code(value);
  return id(c);
}

UnipotentGroup::Coords UnipotentGroup::collect(std::vector<Factor> word) const {
  std::size_t i = 0;
  while (i + 1 < word.size()) {
    Factor a = word[i], b = word[i + 1];
    if (a.value == 0) {
      word.erase(word.begin() + static_cast<long>(i));
      if (i > 0) --i;
      continue;
    }
    if (b.value == 0) {
      word.erase(word.begin() + static_cast<long>(i) + 1);
      continue;
    }
    if (a.root == b.root) {
      word[i].value = field_.add(a.value, b.value);
      word.erase(word.begin() + static_cast<long>(i) + 1);
      continue;
    }
    if (a.root < b.root) {
      ++i;
      continue;
    }
    // x_r(u) x_s(t) = x_s(t) x_r(u) [x_r(u), x_s(t)]
    const auto& terms = commutator_terms(type_, a.root, b.root);
    std::vector<Factor> repl{b, a};
    for (const auto& t : terms) {
      Elem v = field_.mul(field_.from_int(t.coeff), field_.mul(field_.pow(a.value, static_cast<std::uint64_t>(t.pow_u)),
                                                                 field_.pow(b.value, static_cast<std::uint64_t>(t.pow_t))));
      repl.push_back({t.root, v});
    }
    word.erase(word.begin() + static_cast<long>(i), word.begin() + static_cast<long>(i) + 2);
    word.insert(word.begin() + static_cast<long>(i), repl.begin(), repl.end());
    if (i > 0) --i;
  }
  Coords c(roots_.size(), 0);
  for (const auto& f : word) c[static_cast<std::size_t>(f.root)] = field_.add(c[static_cast<std::size_t>(f.root)], f.value);
  return c;
}

ElemId UnipotentGroup::multiply(ElemId a, ElemId b) const {
  std::vector<Factor> word;
  word.reserve(2 * roots_.size());
  Coords ca = coords(a), cb = coords(b);
  for (std::size_t i = 0; i < ca.size(); ++i)
    if (ca[i]) word.push_back({static_cast<int>(i), ca[i]});
  for (std::size_t i = 0; i < cb.size(); ++i)
    if (cb[i]) word.push_back({static_cast<int>(i), cb[i]});
  return id(collect(std::move(word)));
}

ElemId UnipotentGroup::inverse(ElemId a) const {
  Coords ca = coords(a);
  std::vector<Factor> word;
  for (std::size_t i = ca.size(); i-- > 0;)
    if (ca[i]) word.push_back({static_cast<int>(i), field_.neg(ca[i])});
  return id(collect(std::move(word)));
}

std::string UnipotentGroup::key(ElemId a) const {
  std::string out;
  for (Elem v : coords(a))
    for (unsigned b = key_width_; b-- > 0;) out.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
  return out;
}

std::string UnipotentGroup::format(ElemId a) const {
  static const char* names[] = {"a", "b", "a+b", "2a+b", "3a+b", "3a+2b"};
  std::string out;
  Coords c = coords(a);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!c[i]) continue;
    out += "x_" + std::string(names[i]) + "(" + field_.format(c[i]) + ")";
  }
  return out.empty() ? "1" : out;
}

Subgroup UnipotentGroup::root_subgroup(int root) const {
  std::vector<ElemId> ids;
  for (Elem v = 0; v < q_; ++v) ids.push_back(element(root, v));
  return Subgroup(this, std::move(ids));
}

}  // namespace hdx
