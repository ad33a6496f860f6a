#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pact/morphisms.hpp"
#include "pact/partial_action.hpp"
#include "pact/partition.hpp"
#include "pact/report.hpp"
#include "pact/topology.hpp"

namespace pact {

/// A global action together with an embedding of a partial action into it.
/// Any globalization, not only the enveloping one, can be described this way.
struct Globalization {
  std::shared_ptr<const PartialAction> base;
  std::shared_ptr<const PartialAction> action;
  std::vector<Point> embedding;  // base point ↦ action point
};

/// A global action viewed as its own globalization (identity embedding).
Globalization self_globalization(std::shared_ptr<const PartialAction> global_action);

/// The enveloping action M_G = (G ×_p M)/∼ with
///   (g,x) ∼ (h,y)  iff  r(g) = r(h), x ∈ M_{g⁻¹h}, y = α_{h⁻¹g}(x),
/// anchor t([h,x]) = r(h), action β_g[h,x] = [gh,x] and ι(x) = [p(x),x].
struct EnvelopingAction {
  std::shared_ptr<const PartialAction> base;
  std::vector<std::pair<Elem, Point>> pairs;  // G ×_p M in canonical order
  Partition classes;                          // over `pairs`; class i is point i of `action`
  std::shared_ptr<const PartialAction> action;
  std::vector<Point> embedding;

  /// Least member of class c, which names it as "[g,x]".
  std::pair<Elem, Point> representative(std::size_t c) const { return pairs[classes.classes[c].front()]; }
  Globalization as_globalization() const { return {base, action, embedding}; }
};

/// Builds the enveloping action. The relation is checked to be an
/// equivalence and β to be independent of representatives. On a tainted base
/// a failing check throws PreconditionError with a witness; on a validated
/// base it throws InvariantViolation.
EnvelopingAction globalize(std::shared_ptr<const PartialAction> A);

/// Builds an "envelope" from an arbitrary partition of G ×_p M, defining β by
/// representatives and skipping every check. The result is tainted. Used to
/// inject faults into verify_globalization.
EnvelopingAction envelope_from_partition(std::shared_ptr<const PartialAction> A, const Partition& classes);

/// Checks a globalization against the defining conditions, exhaustively:
///   "(i)"   ι(X_g) = ι(X) ∩ β_g(ι(X) ∩ Y_{g⁻¹})
///   "(ii)"  β_g(ι(x)) = ι(α_g(x)) for x ∈ X_{g⁻¹}
///   "(iii)" Y_g = ⋃_{r(h)=r(g)} β_h(ι(X_{d(h)}))
/// plus "embedding" (ι injective) and "global" (β global).
ValidationReport verify_globalization(const Globalization& E);
inline ValidationReport verify_globalization(const EnvelopingAction& E) {
  return verify_globalization(E.as_globalization());
}

struct RestrictBack {
  std::shared_ptr<const PartialAction> restricted;  // β restricted to ι(X)
  GMap isomorphism;                                 // base → restricted, x ↦ ι(x)
};

/// Restricts β to ι(X) and returns the validated isomorphism from the base.
RestrictBack restrict_back(const Globalization& E);
inline RestrictBack restrict_back(const EnvelopingAction& E) { return restrict_back(E.as_globalization()); }

/// Isomorphism E1 → E2 of two globalizations of the same base, given on
/// β₁_h(ι₁(x)) by β₂_h(ι₂(x)). Throws PreconditionError for different bases
/// and InvariantViolation (with a witness) if the formula is not a well
/// defined bijective G-map.
GMap compare_globalizations(const Globalization& E1, const Globalization& E2);

inline constexpr std::size_t kEnvelopeTopologyCap = 64;  // |G|·|M|

struct EnvelopeTopologyReport {
  TopologicalActionReport preconditions;
  bool checked = false;       // false when preconditions fail or the size cap is hit
  std::string skipped_reason;

  bool pi_open = false;
  bool iota_open_embedding = false;  // injective, continuous and open into M_G
  bool iota_homeomorphism = false;   // additionally onto M_G
  bool beta_continuous = false;      // on G ×_t M_G
  bool fiber_formula_holds = false;  // π⁻¹(π((V×U)∩M̄)) for every basic V×U
  bool item4_holds = false;          // ι(U) ∩ (M_G)_{d(g)} = ι(U ∩ M_{d(g)})
  bool MG_hausdorff = false;
  bool relation_closed = false;      // ∼ closed in M̄ × M̄
  bool graph_closed = false;         // Gr(α) closed in G × M × M
  bool graph_open = false;

  std::optional<FiniteTopology> envelope_topology;  // quotient topology on M_G
};

/// Topological properties of the enveloping action for topologies on G and
/// M. Skips the checks (with a reason) unless the base is a graph open
/// continuous partial action of a star open topological groupoid, and when
/// |G|·|M| exceeds kEnvelopeTopologyCap. When π is open, MG_hausdorff and
/// relation_closed must agree; otherwise InvariantViolation.
EnvelopeTopologyReport envelope_topology(const EnvelopingAction& E, const FiniteTopology& T_G,
                                         const FiniteTopology& T_M);

}  // namespace pact
