#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "relframe/linalg.hpp"

namespace relframe {

/// Group elements are identifiers 0..order-1.
using Element = int;

inline constexpr int kDefaultAssociativityCap = 64;

/// Finite group given by its multiplication table, validated eagerly.
class FiniteGroup {
 public:
  using Table = std::vector<std::vector<Element>>;

  /// Z_n with mult(i, j) = (i + j) mod n.
  static FiniteGroup cyclic(int n);
  /// S_n with elements ordered lexicographically by permutation and
  /// (p*q)(i) = p(q(i)).
  static FiniteGroup symmetric(int n);
  /// Throws InvalidTable, NoIdentity, NoInverse or NotAssociative. When no
  /// identity is supplied it is located in the table. Associativity is
  /// checked exhaustively up to `associativity_cap` elements and on a
  /// seeded sample of cap^3 triples above it.
  static FiniteGroup from_table(Table table, std::optional<Element> identity = std::nullopt,
                                std::vector<std::string> labels = {},
                                int associativity_cap = kDefaultAssociativityCap);

  int order() const noexcept { return static_cast<int>(table_.size()); }
  Element identity() const noexcept { return identity_; }
  Element multiply(Element g, Element h) const { return table_[check(g)][check(h)]; }
  Element inverse(Element g) const { return inverse_[check(g)]; }
  bool is_central(Element h) const;
  const Table& table() const noexcept { return table_; }
  const std::string& label(Element g) const { return labels_[check(g)]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  /// Element by label, or by decimal id when no label matches.
  std::optional<Element> find(const std::string& label_or_id) const;

  /// Structural equality of the multiplication tables.
  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.identity_ == b.identity_ && a.table_ == b.table_;
  }

 private:
  FiniteGroup() = default;
  std::size_t check(Element g) const;

  Table table_;
  Element identity_ = 0;
  std::vector<Element> inverse_;
  std::vector<std::string> labels_;
};

/// Unitary representation of a finite group; construction validates
/// unitarity, U(e) = I and the homomorphism law for every pair.
class UnitaryRep {
 public:
  UnitaryRep(const FiniteGroup& group, std::vector<ComplexMatrix> matrices,
             double tol = tolerance());
  UnitaryRep(std::shared_ptr<const FiniteGroup> group, std::vector<ComplexMatrix> matrices,
             double tol = tolerance());

  const FiniteGroup& group() const noexcept { return *group_; }
  const std::shared_ptr<const FiniteGroup>& shared_group() const noexcept { return group_; }
  Index dim() const noexcept { return dim_; }
  const ComplexMatrix& matrix(Element g) const;
  const std::vector<ComplexMatrix>& matrices() const noexcept { return matrices_; }
  bool is_trivial(double tol = tolerance()) const;

 private:
  std::shared_ptr<const FiniteGroup> group_;
  Index dim_ = 0;
  std::vector<ComplexMatrix> matrices_;
};

/// Left-regular representation: U(g)|h> = |gh>.
UnitaryRep regular_representation(const FiniteGroup& group);
UnitaryRep trivial_representation(const FiniteGroup& group, Index dim);
/// Completes a representation from the images of a generating set by
/// closing under products. Throws InvalidRepresentation if the generators
/// do not reach every element or the completion is not a homomorphism.
UnitaryRep representation_from_generators(const FiniteGroup& group, Index dim,
                                          const std::map<Element, ComplexMatrix>& images,
                                          double tol = tolerance());

/// U(g) a U(g)†.
ComplexMatrix act(const UnitaryRep& rep, Element g, const ComplexMatrix& a);

/// g -> U1(g) ⊗ U2(g); throws GroupMismatch for different groups.
UnitaryRep tensor_rep(const UnitaryRep& first, const UnitaryRep& second);

bool same_group(const UnitaryRep& a, const UnitaryRep& b);
bool same_representation(const UnitaryRep& a, const UnitaryRep& b, double tol = tolerance());
void require_same_group(const UnitaryRep& a, const UnitaryRep& b, const std::string& context);

}  // namespace relframe
