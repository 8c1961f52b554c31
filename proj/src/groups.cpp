#include "hdx/groups.hpp"

#include <algorithm>
#include <deque>

namespace hdx {

Subgroup::Subgroup(const FiniteGroup* group, std::vector<ElemId> ids) : group_(group), ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

bool Subgroup::contains(ElemId a) const { return std::binary_search(ids_.begin(), ids_.end(), a); }

std::int64_t Subgroup::index_of(ElemId a) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), a);
  if (it == ids_.end() || *it != a) return -1;
  return it - ids_.begin();
}

Subgroup closure(const FiniteGroup& g, const std::vector<ElemId>& gens, std::uint64_t budget) {
  const std::uint64_t n = g.order();
  std::vector<bool> seen(n, false);
  std::vector<ElemId> found;
  std::deque<ElemId> frontier;
  const ElemId e = g.identity();
  seen[e] = true;
  found.push_back(e);
  frontier.push_back(e);
  std::vector<ElemId> gs;
  for (ElemId x : gens)
    if (x != e) gs.push_back(x);
  while (!frontier.empty()) {
    ElemId x = frontier.front();
    frontier.pop_front();
    for (ElemId s : gs) {
      ElemId y = g.multiply(x, s);
      if (seen[y]) continue;
      seen[y] = true;
      found.push_back(y);
      if (found.size() > budget) throw ResourceError("subgroup closure exceeded element budget", found.size());
      frontier.push_back(y);
    }
  }
  return Subgroup(&g, std::move(found));
}

Subgroup trivial_subgroup(const FiniteGroup& g) { return Subgroup(&g, {g.identity()}); }

Subgroup whole_group(const FiniteGroup& g) {
  std::vector<ElemId> all(g.order());
  for (std::uint64_t i = 0; i < g.order(); ++i) all[i] = static_cast<ElemId>(i);
  return Subgroup(&g, std::move(all));
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  std::vector<ElemId> out;
  std::set_intersection(a.elements().begin(), a.elements().end(), b.elements().begin(), b.elements().end(),
                        std::back_inserter(out));
  return Subgroup(&a.group(), std::move(out));
}

Subgroup generated_by(const FiniteGroup& g, const std::vector<const Subgroup*>& parts) {
  std::vector<ElemId> gens;
  for (const Subgroup* s : parts) gens.insert(gens.end(), s->elements().begin(), s->elements().end());
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return closure(g, gens);
}

CosetPartition coset_partition(const FiniteGroup& g, const Subgroup& h) {
  const std::uint64_t n = g.order();
  if (h.order() == 0 || n % h.order() != 0)
    throw Error(ErrorKind::Integrity, "subgroup order " + std::to_string(h.order()) +
                                          " does not divide group order " + std::to_string(n));
  constexpr std::uint32_t kUnset = ~std::uint32_t{0};
  CosetPartition out;
  out.label.assign(n, kUnset);
  out.reps.reserve(n / h.order());
  for (std::uint64_t x = 0; x < n; ++x) {
    if (out.label[x] != kUnset) continue;
    const auto c = static_cast<std::uint32_t>(out.reps.size());
    out.reps.push_back(static_cast<ElemId>(x));
    for (ElemId y : h.elements()) {
      ElemId z = g.multiply(static_cast<ElemId>(x), y);
      if (out.label[z] != kUnset) throw Error(ErrorKind::Integrity, "coset overlap: subgroup is not closed");
      out.label[z] = c;
    }
  }
  if (out.reps.size() * h.order() != n) throw Error(ErrorKind::Integrity, "coset partition size mismatch");
  return out;
}

std::vector<ElemId> coset_reps(const FiniteGroup& g, const Subgroup& h) { return coset_partition(g, h).reps; }

SubgroupView::SubgroupView(Subgroup h) : h_(std::move(h)) {
  auto idx = h_.index_of(h_.group().identity());
  if (idx < 0) throw Error(ErrorKind::Integrity, "subgroup does not contain the identity");
  identity_ = static_cast<ElemId>(idx);
}

ElemId SubgroupView::local_id(ElemId parent) const {
  auto idx = h_.index_of(parent);
  if (idx < 0) throw Error(ErrorKind::Integrity, "product left the subgroup");
  return static_cast<ElemId>(idx);
}

ElemId SubgroupView::multiply(ElemId a, ElemId b) const {
  return local_id(h_.group().multiply(h_.elements()[a], h_.elements()[b]));
}

ElemId SubgroupView::inverse(ElemId a) const { return local_id(h_.group().inverse(h_.elements()[a])); }

Subgroup SubgroupView::localize(const Subgroup& sub) const {
  std::vector<ElemId> ids;
  ids.reserve(sub.order());
  for (ElemId x : sub.elements()) ids.push_back(local_id(x));
  return Subgroup(this, std::move(ids));
}

}  // namespace hdx
