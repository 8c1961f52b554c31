#pragma once

// Finite groups with enumerated elements, subgroups as sorted id sets, BFS
// closure and left-coset partitions.

#include <cstdint>
#include <string>
#include <vector>

#include "hdx/error.hpp"

namespace hdx {

using ElemId = std::uint32_t;

// A finite group whose elements are numbered 0..order()-1 so that id order
// agrees with the order of canonical keys.
class FiniteGroup {
 public:
  virtual ~FiniteGroup() = default;

  virtual std::uint64_t order() const = 0;
  virtual ElemId identity() const = 0;
  virtual ElemId multiply(ElemId a, ElemId b) const = 0;
  virtual ElemId inverse(ElemId a) const = 0;
  // Canonical byte serialization; equal keys iff equal elements.
  virtual std::string key(ElemId a) const = 0;
  virtual std::string format(ElemId a) const { return std::to_string(a); }
};

class Subgroup {
 public:
  Subgroup() = default;
  Subgroup(const FiniteGroup* group, std::vector<ElemId> ids);  // sorts and dedups

  const FiniteGroup& group() const { return *group_; }
  const std::vector<ElemId>& elements() const noexcept { return ids_; }
  std::uint64_t order() const noexcept { return ids_.size(); }
  bool contains(ElemId a) const;
  // Position of `a` in elements(), or -1.
  std::int64_t index_of(ElemId a) const;

  bool operator==(const Subgroup& o) const { return ids_ == o.ids_; }

 private:
  const FiniteGroup* group_ = nullptr;
  std::vector<ElemId> ids_;
};

// Closure of `gens` under multiplication (finite, so inverses come for free).
// Throws ResourceError once more than `budget` elements are reached.
Subgroup closure(const FiniteGroup& g, const std::vector<ElemId>& gens, std::uint64_t budget = 1ull << 27);

Subgroup trivial_subgroup(const FiniteGroup& g);
Subgroup whole_group(const FiniteGroup& g);

Subgroup intersect(const Subgroup& a, const Subgroup& b);

// <S_1 u ... u S_k>.
Subgroup generated_by(const FiniteGroup& g, const std::vector<const Subgroup*>& parts);

// Left cosets gH labelled 0..|G|/|H|-1 in order of their minimal element;
// reps[c] is that minimal element, which also has the minimal key.
struct CosetPartition {
  std::vector<std::uint32_t> label;  // per element of G
  std::vector<ElemId> reps;
};

CosetPartition coset_partition(const FiniteGroup& g, const Subgroup& h);
std::vector<ElemId> coset_reps(const FiniteGroup& g, const Subgroup& h);

// A subgroup viewed as a group in its own right; ids are positions in the
// parent subgroup's element list.
class SubgroupView final : public FiniteGroup {
 public:
  explicit SubgroupView(Subgroup h);

  std::uint64_t order() const override { return h_.order(); }
  ElemId identity() const override { return identity_; }
  ElemId multiply(ElemId a, ElemId b) const override;
  ElemId inverse(ElemId a) const override;
  std::string key(ElemId a) const override { return h_.group().key(h_.elements()[a]); }
  std::string format(ElemId a) const override { return h_.group().format(h_.elements()[a]); }

  ElemId parent_id(ElemId a) const { return h_.elements()[a]; }
  ElemId local_id(ElemId parent) const;
  Subgroup localize(const Subgroup& sub) const;

 private:
  Subgroup h_;
  ElemId identity_ = 0;
};

}  // namespace hdx
