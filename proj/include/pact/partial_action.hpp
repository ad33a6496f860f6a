#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pact/groupoid.hpp"
#include "pact/partition.hpp"
#include "pact/report.hpp"
#include "pact/subset.hpp"
#include "pact/topology.hpp"

namespace pact {

/// Index of a carrier point.
using Point = std::size_t;

/// Name-based description of a partial action, as read from an instance file.
///
/// Omitted entries are filled in: an identity's domain defaults to its anchor
/// fiber and its map to the identity on that domain; a missing α_g is the
/// inverse of a listed α_{g⁻¹}; a missing X_g is the image of α_g. When both
/// α_g and α_{g⁻¹} are listed they are checked against each other.
struct PartialActionData {
  std::vector<std::string> carrier;
  std::vector<std::pair<std::string, std::string>> anchor;
  std::vector<std::pair<std::string, std::vector<std::string>>> domains;
  std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> maps;

  bool operator==(const PartialActionData&) const = default;
};

/// Validation against the partial action conditions. Labels:
///   "(i)"      identity domains disjoint, covering, equal to anchor fibers; α_e = id
///   "anchor"   anchor value is not an identity
///   "range"    X_g ⊄ X_{r(g)}
///   "bijection" α_g is not a bijection X_{g⁻¹} → X_g
///   "inverse-consistency"  listed α_{g⁻¹} differs from α_g⁻¹
///   "(ii)"     α_g(X_{g⁻¹} ∩ X_h) != X_g ∩ X_{gh}
///   "(iii)"    α_g(α_h(x)) != α_{gh}(x)
/// A non-surjective anchor is a warning, not a violation.
/// Throws StructuralError for names that do not resolve.
ValidationReport validate_partial_action(const Groupoid& G, const PartialActionData& data);

/// A partial action α = (X_g, α_g) of a finite groupoid on a finite carrier.
class PartialAction {
 public:
  /// Validates; throws ValidationError. The carrier is put in lexicographic order.
  static PartialAction from_data(std::shared_ptr<const Groupoid> G, const PartialActionData& data);

  /// Skips validation. The result is tainted and so is anything derived
  /// from it. Structural errors still throw.
  static PartialAction from_data_unchecked(std::shared_ptr<const Groupoid> G, const PartialActionData& data);

  /// Index-based construction used by the library's own constructions.
  /// `maps[g][x]` is α_g(x) for x ∈ X_{g⁻¹} and npos elsewhere. Points keep
  /// the given order. Throws ValidationError unless `validate` is false.
  static PartialAction from_tables(std::shared_ptr<const Groupoid> G, std::vector<std::string> points,
                                   std::vector<Elem> anchor, std::vector<Subset> domains,
                                   std::vector<std::vector<Point>> maps, bool validate = true);

  PartialActionData to_data() const;

  const Groupoid& groupoid() const noexcept { return *groupoid_; }
  const std::shared_ptr<const Groupoid>& groupoid_ptr() const noexcept { return groupoid_; }

  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<std::string>& points() const noexcept { return points_; }
  const std::string& point(Point x) const { return points_.at(x); }
  std::optional<Point> find(std::string_view name) const;
  Point index(std::string_view name) const;  // throws StructuralError

  Elem anchor(Point x) const { return anchor_[x]; }
  /// X_g.
  const Subset& domain(Elem g) const { return domains_[g]; }
  /// α_g(x), or nullopt when x ∉ X_{g⁻¹}.
  std::optional<Point> apply(Elem g, Point x) const {
    auto y = maps_[g][x];
    if (y == npos) return std::nullopt;
    return y;
  }
  /// α_g(x); throws InvariantViolation when undefined.
  Point act(Elem g, Point x) const;
  const std::vector<Point>& map_table(Elem g) const { return maps_[g]; }

  bool tainted() const noexcept { return tainted_; }

  bool operator==(const PartialAction& other) const;

 private:
  PartialAction() = default;

  std::shared_ptr<const Groupoid> groupoid_;
  std::vector<std::string> points_;
  std::vector<Elem> anchor_;
  std::vector<Subset> domains_;
  std::vector<std::vector<Point>> maps_;
  bool tainted_ = false;

  friend ValidationReport validate_partial_action(const PartialAction& A);
};

/// Re-runs the checks on an already built action (no inverse-consistency
/// check: built actions store one table per element).
ValidationReport validate_partial_action(const PartialAction& A);

/// X_g = X_{r(g)} for every g. Cross-checked against α_{gh} = α_g ∘ α_h on
/// every composable pair; disagreement throws InvariantViolation.
bool is_global(const PartialAction& A);

struct OrbitRelation {
  Partition orbits;                     // classes of the transitive closure
  std::vector<std::vector<char>> one_step;  // x ∼ y iff some α_g sends x to y
  bool one_step_transitive = true;
  std::optional<std::array<Point, 3>> witness;  // x ∼ y, y ∼ z, x ≁ z
  bool tainted = false;
};

/// The orbit equivalence relation. On untainted input the one-step relation
/// must already be transitive; otherwise InvariantViolation.
OrbitRelation orbit_relation(const PartialAction& A);

/// G^x · x.
Subset orbit_of(const PartialAction& A, Point x);

struct OrbitMap {
  Subset domain;             // G^x = {g : x ∈ X_{g⁻¹}}
  std::vector<Point> table;  // g ↦ α_g(x), npos off G^x
};

OrbitMap orbit_map(const PartialAction& A, Point x);

/// {g ∈ G^x : α_g(x) = x}; checked to be a subgroup of G_{p(x)}.
Subset stabilizer(const PartialAction& A, Point x);

struct Classification {
  bool transitive = false;
  bool free = false;
  bool operator==(const Classification&) const = default;
};

Classification classify(const PartialAction& A);

/// Restriction to S: S_g = S ∩ β_g(S ∩ Y_{g⁻¹}), maps restricted. Points
/// keep their names and relative order.
PartialAction restrict(const PartialAction& B, const Subset& S);

/// β_g(S ∩ Y_{g⁻¹}) ⊆ S for all g.
bool is_invariant(const PartialAction& B, const Subset& S);

/// Smallest β-invariant subset containing S, as ⋃_{r(h)=e} β_h(S_{d(h)})
/// over identities e, with S_g from restrict.
Subset invariant_closure(const PartialAction& B, const Subset& S);

/// α^(e): the isotropy group G_e acting on X_e.
PartialAction restrict_to_isotropy(const PartialAction& A, Elem e);

/// Same action with groupoid elements and points renamed. `G_renamed` must
/// be the groupoid renamed by `elem_renaming`.
PartialAction relabel(const PartialAction& A, std::shared_ptr<const Groupoid> G_renamed,
                      const std::map<std::string, std::string>& elem_renaming,
                      const std::map<std::string, std::string>& point_renaming);

/// Γ_α ⊆ G×X and Gr(α) ⊆ G×X×X, with point indices as in
/// product(T_G, T_X) and product(product(T_G, T_X), T_X).
struct ActionGraph {
  Subset gamma;
  Subset full_graph;
};

ActionGraph action_graph(const PartialAction& A);

struct ActionGraphReport {
  bool graph_open = false;
  bool graph_closed = false;
};

/// Throws StructuralError on carrier mismatch.
ActionGraphReport action_graphs(const PartialAction& A, const FiniteTopology& T_G, const FiniteTopology& T_X);

/// Continuity hypotheses of the topological layer.
struct TopologicalActionReport {
  StarOpenReport groupoid;
  bool graph_open = false;
  bool anchor_continuous = false;
  bool action_continuous = false;     // α : Γ_α → X
  bool maps_homeomorphisms = false;   // each α_g : X_{g⁻¹} → X_g

  bool action_ok() const { return graph_open && anchor_continuous && action_continuous && maps_homeomorphisms; }
  bool ok() const { return action_ok() && groupoid.continuity_ok() && groupoid.star_open(); }
};

TopologicalActionReport check_topological_action(const PartialAction& A, const FiniteTopology& T_G,
                                                 const FiniteTopology& T_X);

struct OrbitSpace {
  Partition orbits;
  std::vector<std::string> labels;      // "{x,y,...}"
  std::vector<std::size_t> projection;  // point ↦ class
  std::optional<FiniteTopology> topology;
  // Filled when a carrier topology is given.
  std::optional<bool> preimage_formula_holds;  // π⁻¹(π(U)) = ⋃_g α_g(U ∩ X_{g⁻¹}) for every open U
  std::optional<bool> projection_open;
  std::optional<bool> topological_action;      // hypotheses under which openness is asserted
};

/// Orbit space X/G. With T_X (and optionally T_G, discrete by default) it also
/// builds the quotient topology and checks the preimage formula for every
/// open U. If the action satisfies check_topological_action, π_G must be open
/// and the formula must hold; otherwise InvariantViolation.
OrbitSpace orbit_space(const PartialAction& A, const FiniteTopology* T_X = nullptr,
                       const FiniteTopology* T_G = nullptr);

}  // namespace pact
