#pragma once

// The abstract rank-2 unipotent groups U = U_{ij}(k): normal forms
// prod_{alpha in Phi+} x_alpha(lambda_alpha) in root order, multiplied by
// collection with the commutator tables of rootdata.

#include <vector>

#include "hdx/algebra.hpp"
#include "hdx/groups.hpp"
#include "hdx/rootdata.hpp"

namespace hdx {

class UnipotentGroup final : public FiniteGroup {
 public:
  using Coords = std::vector<Elem>;
  // One factor x_root(value) of a word.
  struct Factor {
    int root;
    Elem value;
  };

  UnipotentGroup(Rank2Type type, GaloisField field);

  Rank2Type type() const noexcept { return type_; }
  const GaloisField& field() const noexcept { return field_; }
  const std::vector<RootVector>& roots() const noexcept { return roots_; }
  int root_count() const noexcept { return static_cast<int>(roots_.size()); }

  std::uint64_t order() const override { return order_; }
  ElemId identity() const override { return 0; }
  ElemId multiply(ElemId a, ElemId b) const override;
  ElemId inverse(ElemId a) const override;
  std::string key(ElemId a) const override;
  std::string format(ElemId a) const override;

  Coords coords(ElemId a) const;
  ElemId id(const Coords& c) const;
  // x_root(value).
  ElemId element(int root, Elem value) const;

  // Collects an arbitrary word into normal-form coordinates.
  Coords collect(std::vector<Factor> word) const;

  // {x_root(lambda) : lambda in k}.
  Subgroup root_subgroup(int root) const;

 private:
  Rank2Type type_;
  GaloisField field_;
  std::vector<RootVector> roots_;
  std::uint64_t q_;
  std::uint64_t order_;
  unsigned key_width_;
};

}  // namespace hdx
