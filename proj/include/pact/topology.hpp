#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pact/groupoid.hpp"
#include "pact/partition.hpp"
#include "pact/subset.hpp"

namespace pact {

/// Finite (hence Alexandrov) topology, stored as the minimal open
/// neighbourhood of each point. A set is open iff it contains the minimal
/// open set of each of its points.
class FiniteTopology {
 public:
  /// Points are indexed in the order of `labels`. Throws ValidationError if
  /// x ∉ min_open(x) or the preorder condition fails, StructuralError on size
  /// mismatch or duplicate labels.
  FiniteTopology(std::vector<std::string> labels, std::vector<Subset> min_open);

  /// Name-based form used by instance files. The carrier is put in
  /// lexicographic order; points missing from `min_open` get {x}.
  static FiniteTopology from_named(std::vector<std::string> carrier,
                                   const std::vector<std::pair<std::string, std::vector<std::string>>>& min_open);

  static FiniteTopology discrete(std::vector<std::string> labels);
  static FiniteTopology indiscrete(std::vector<std::string> labels);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  std::size_t index(std::string_view label) const;  // throws StructuralError
  const Subset& min_open(std::size_t i) const { return min_open_.at(i); }

  bool operator==(const FiniteTopology&) const = default;

 private:
  std::vector<std::string> labels_;
  std::vector<Subset> min_open_;
};

/// Throws StructuralError if S is not a subset of the carrier.
bool is_open(const FiniteTopology& T, const Subset& S);
bool is_closed(const FiniteTopology& T, const Subset& S);
Subset closure(const FiniteTopology& T, const Subset& S);
/// Smallest open set containing S (union of minimal opens).
Subset open_hull(const FiniteTopology& T, const Subset& S);

/// Every open set, by enumeration. Exponential; intended for small carriers
/// (throws PreconditionError beyond 20 points).
std::vector<Subset> open_sets(const FiniteTopology& T);

/// Product topology; point (a, b) has index a * T2.size() + b and label "(a,b)".
FiniteTopology product(const FiniteTopology& T1, const FiniteTopology& T2);

/// Subspace on S; points are the members of S in increasing index order.
FiniteTopology subspace(const FiniteTopology& T, const Subset& S);

inline constexpr std::size_t kQuotientCarrierCap = 64;

/// Quotient topology: a set of classes is open iff its preimage is open.
/// Class i is labelled `class_labels[i]`. Throws PreconditionError when the
/// carrier exceeds kQuotientCarrierCap points.
FiniteTopology quotient(const FiniteTopology& T, const Partition& classes,
                        std::vector<std::string> class_labels);

/// f is a total map from T_dom's points to T_cod's points.
bool is_continuous(std::span<const std::size_t> f, const FiniteTopology& T_dom, const FiniteTopology& T_cod);
bool is_open_map(std::span<const std::size_t> f, const FiniteTopology& T_dom, const FiniteTopology& T_cod);

/// Any two distinct points have disjoint open neighbourhoods.
bool is_hausdorff(const FiniteTopology& T);

/// Star-openness conditions for a topology on a groupoid, together with the
/// continuity hypotheses they depend on.
struct StarOpenReport {
  bool inv_homeomorphism = false;
  bool d_continuous = false;
  bool r_continuous = false;
  bool mul_continuous = false;  // on G² with the subspace topology of G×G

  bool d_fibers_open = false;
  bool r_fibers_open = false;
  bool identities_discrete = false;  // G₀ discrete in the subspace topology

  bool continuity_ok() const { return inv_homeomorphism && d_continuous && r_continuous && mul_continuous; }
  bool star_open() const { return d_fibers_open; }
};

/// Throws StructuralError if T_G's carrier is not G's element list. Throws
/// InvariantViolation if one of the two implications that hold for every
/// finite topology fails:
///   inv a homeomorphism   ⟹ (d-fibers open ⟺ r-fibers open)
///   d continuous, G₀ discrete ⟹ d-fibers open
/// The converse of the second is not asserted.
StarOpenReport star_open_report(const Groupoid& G, const FiniteTopology& T_G);

}  // namespace pact
