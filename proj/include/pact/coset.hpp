#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pact/globalization.hpp"
#include "pact/morphisms.hpp"
#include "pact/partial_action.hpp"
#include "pact/partition.hpp"

namespace pact {

/// H̄^x: H^x = d⁻¹(p(x)) modulo h₁ ∼ h₂ iff r(h₁) = r(h₂) and h₂⁻¹h₁ ∈ stab(x),
/// with the global action δ_g(h̄) = (gh)‾ and anchor t(h̄) = r(h).
struct CosetSpace {
  std::shared_ptr<const PartialAction> base;
  Point basepoint = 0;
  Subset hx;                   // over groupoid elements
  std::vector<Elem> elements;  // members of hx, ascending
  Partition classes;           // over `elements`; class i is point i of `delta`
  std::shared_ptr<const PartialAction> delta;

  Elem representative(std::size_t c) const { return elements[classes.classes[c].front()]; }
  std::size_t class_of(Elem h) const;  // npos if h ∉ H^x
};

/// Builds H̄^x and δ, checking that the relation is an equivalence, that δ is
/// independent of representatives, validated and global, and that classes are
/// singletons when the base is free. Classes are labelled "[h]" by their
/// least element. Throws StructuralError for a point outside the carrier.
CosetSpace build_coset_action(std::shared_ptr<const PartialAction> A, Point x);

/// φ(h̄) = β_h(ι(x)) from δ to the globalization, checked to be well defined,
/// bijective and a G-map in both directions. Throws PreconditionError if the
/// base is not transitive or E is over a different base.
GMap theorem1_check(const CosetSpace& C, const Globalization& E);
inline GMap theorem1_check(const CosetSpace& C, const EnvelopingAction& E) {
  return theorem1_check(C, E.as_globalization());
}

struct IsotropyRestrictionReport {
  std::shared_ptr<const PartialAction> beta;   // β^(p(x)) on the anchor fiber of E
  std::shared_ptr<const PartialAction> delta;  // δ^(p(x)), the left coset action
  std::optional<GMap> isomorphism;             // δ^(p(x)) → β^(p(x))
};

/// Group case only: compares the isotropy restriction of a globalization with
/// the coset action of the isotropy group. Throws UnsupportedError for a
/// groupoid with more than one object, PreconditionError for a non transitive
/// base.
IsotropyRestrictionReport isotropy_restriction_check(std::shared_ptr<const PartialAction> A, Point x,
                                                     const Globalization& E);
inline IsotropyRestrictionReport isotropy_restriction_check(std::shared_ptr<const PartialAction> A, Point x,
                                                            const EnvelopingAction& E) {
  return isotropy_restriction_check(std::move(A), x, E.as_globalization());
}

}  // namespace pact
