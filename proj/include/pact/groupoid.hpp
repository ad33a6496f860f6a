#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pact/report.hpp"
#include "pact/subset.hpp"

namespace pact {

/// Index of a groupoid element. Elements are stored in lexicographic order of
/// their names, so index order is the canonical order.
using Elem = std::size_t;

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

/// Name-based groupoid description, as read from an instance file. Nothing is
/// assumed about it until validate_groupoid has run.
struct GroupoidData {
  std::vector<std::string> elements;
  std::vector<std::array<std::string, 3>> mul;  // (g, h, gh) for composable pairs only
  std::vector<std::pair<std::string, std::string>> inv;
  std::vector<std::pair<std::string, std::string>> src;
  std::vector<std::pair<std::string, std::string>> rng;
  std::optional<std::vector<std::string>> identities;  // cross-checked if present

  bool operator==(const GroupoidData&) const = default;
};

/// Checks the four groupoid axioms and the derived identities.
///
/// Violations are labelled "axiom-1" .. "axiom-4", "composability" (gh defined
/// exactly when d(g) = r(h)), "inverse" (involution and d(g⁻¹) = r(g)) and
/// "identity-set" (supplied identities differ from the derived G₀).
/// Throws StructuralError for duplicate or dangling names and for tables that
/// are not functions.
ValidationReport validate_groupoid(const GroupoidData& data);

/// A finite groupoid. Immutable once constructed; every instance has passed
/// validate_groupoid.
class Groupoid {
 public:
  /// Validates and builds. Throws ValidationError carrying the report.
  static Groupoid from_data(const GroupoidData& data);

  GroupoidData to_data() const;

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(Elem g) const { return names_.at(g); }

  std::optional<Elem> find(std::string_view name) const;
  /// Like find, but throws StructuralError for unknown names.
  Elem index(std::string_view name) const;

  /// gh, or nullopt when d(g) != r(h). Undefined products are not errors.
  std::optional<Elem> mul(Elem g, Elem h) const {
    auto v = mul_[g * size() + h];
    if (v == npos) return std::nullopt;
    return v;
  }
  bool composable(Elem g, Elem h) const { return mul_[g * size() + h] != npos; }

  Elem inv(Elem g) const { return inv_[g]; }
  Elem src(Elem g) const { return src_[g]; }
  Elem rng(Elem g) const { return rng_[g]; }

  bool is_identity(Elem g) const { return src_[g] == g; }
  /// G₀ in canonical order.
  const std::vector<Elem>& identities() const noexcept { return identities_; }

  /// Product that must exist; throws InvariantViolation otherwise.
  Elem compose(Elem g, Elem h) const;

  bool operator==(const Groupoid&) const = default;

 private:
  Groupoid() = default;

  std::vector<std::string> names_;
  std::vector<Elem> mul_;  // size()² entries, npos where undefined
  std::vector<Elem> inv_;
  std::vector<Elem> src_;
  std::vector<Elem> rng_;
  std::vector<Elem> identities_;
};

/// G²: all (g, h) with d(g) = r(h), in canonical order.
std::vector<std::pair<Elem, Elem>> composable_pairs(const Groupoid& G);

/// The isotropy group G_e = r⁻¹(e) ∩ d⁻¹(e) as a one-object groupoid.
/// Throws PreconditionError if e is not an identity.
Groupoid isotropy_group(const Groupoid& G, Elem e);

struct StarFibers {
  Subset d_fiber;  // d⁻¹(e)
  Subset r_fiber;  // r⁻¹(e)
};

StarFibers star_fibers(const Groupoid& G, Elem e);

enum class Side { left, right };

/// Translation by a fixed element as an explicit table.
///   right: R_k : d⁻¹(r(k)) → d⁻¹(d(k)),  h ↦ hk
///   left:  L_k : r⁻¹(d(k)) → r⁻¹(r(k)),  h ↦ kh
struct Translation {
  Elem by = npos;
  Side side = Side::right;
  Subset domain;
  Subset codomain;
  std::vector<Elem> table;  // indexed by element, npos outside domain

  Elem operator()(Elem h) const { return table.at(h); }
};

Translation translation_map(const Groupoid& G, Elem k, Side side);

// Constructors. All outputs are validated.

/// One-object groupoid from a Cayley table; table[i][j] is the index of
/// names[i]·names[j]. Throws ValidationError if it is not a group table.
Groupoid from_group(const std::vector<std::string>& names,
                    const std::vector<std::vector<std::size_t>>& table);

/// Z_n with elements "0".."n-1" (zero-padded when n > 10 so that
/// lexicographic and numeric order agree).
Groupoid cyclic_group(std::size_t n);

/// Z2 × Z2 with elements "00", "01", "10", "11".
Groupoid klein_group();

/// S3 as permutations of {0,1,2}, named by their one-line images ("012", ...).
Groupoid symmetric_group3();

/// Pair groupoid on the given objects; elements "(i,j)" with d = (j,j),
/// r = (i,i) and (i,j)(j,k) = (i,k).
Groupoid pair_groupoid(const std::vector<std::string>& objects);

/// Disjoint union. Names are kept when they are already distinct across the
/// parts, otherwise every name is prefixed with "<part index>:".
Groupoid disjoint_union(std::span<const Groupoid> parts);

/// Action groupoid Γ ⋉ X for a group Γ acting on points; act[γ][x] is the
/// index of γ·x. Elements are "(γ,x)" with d(γ,x) = (1,x), r(γ,x) = (1,γx).
Groupoid action_groupoid(const Groupoid& group, const std::vector<std::string>& points,
                         const std::vector<std::vector<std::size_t>>& act);

/// Same groupoid with every element renamed. The renaming must be injective
/// and cover every element.
Groupoid relabel(const Groupoid& G, const std::map<std::string, std::string>& renaming);

}  // namespace pact
