#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "pact/partial_action.hpp"
#include "pact/report.hpp"

namespace pact {

/// A G-map φ between two partial actions of the same groupoid.
struct GMap {
  std::shared_ptr<const PartialAction> source;
  std::shared_ptr<const PartialAction> target;
  std::vector<Point> table;  // source point ↦ target point

  Point operator()(Point x) const { return table.at(x); }
  bool is_bijective() const;
};

/// Conditions "(i)" (x ∈ X_g ⟹ φ(x) ∈ X̃_g) and "(ii)" (φ ∘ α_g = α̃_g ∘ φ on
/// X_{g⁻¹}), with (g, x) witnesses. Throws PreconditionError if the actions
/// are over different groupoids, StructuralError for an ill-sized table.
ValidationReport validate_gmap(const PartialAction& source, const PartialAction& target,
                               const std::vector<Point>& table);
ValidationReport validate_gmap(const GMap& f);

/// Identity G-map on A.
GMap identity_gmap(std::shared_ptr<const PartialAction> A);

/// g ∘ f. Throws PreconditionError unless target(f) equals source(g).
GMap compose_gmaps(const GMap& f, const GMap& g);

/// Inverse of a bijective G-map, checked to be a G-map itself.
GMap inverse_gmap(const GMap& f);

/// Searches for an isomorphism A → B by backtracking over orbits in canonical
/// order. Candidates are pruned by anchor, the set of domains containing a
/// point, orbit size and stabilizer order. The first isomorphism found is
/// returned, so A → A yields the identity. Throws PreconditionError if the
/// groupoids differ.
std::optional<GMap> find_isomorphism(std::shared_ptr<const PartialAction> A,
                                     std::shared_ptr<const PartialAction> B);

}  // namespace pact
