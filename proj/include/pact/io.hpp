#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "json.hpp"
#include "pact/errors.hpp"
#include "pact/globalization.hpp"
#include "pact/groupoid.hpp"
#include "pact/partial_action.hpp"
#include "pact/topology.hpp"

namespace pact::io {

using nlohmann::json;

/// Malformed JSON, with the position of the failure.
class ParseError : public Error {
 public:
  ParseError(std::string what, std::size_t line, std::size_t column)
      : Error(std::move(what)), line_(line), column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_, column_;
};

/// Contents of an instance file:
///
///   {"kind": "groupoid" | "action", "meta": {...}, "payload": {...},
///    "topology": {"groupoid": T, "carrier": T}}
///
/// A groupoid payload is {"elements", "mul": [[g,h,gh]], "inv": [[g,g']],
/// "src": [[g,e]], "rng": [[g,e]], "identities"?}. An action payload is
/// {"groupoid": G | "file.json", "carrier", "anchor": [[x,e]],
/// "domains": [[g,[x]]], "maps": [[g,[[x,y]]]], "topology"?: T}, and T is
/// {"carrier", "min_open": [[x,[y]]]}. Envelope documents add "classes",
/// "embedding" and, when derived from unchecked input, "tainted".
/// Unknown keys are rejected; array order carries no meaning on input and is
/// sorted on output.
struct Instance {
  std::string kind;  // "groupoid" or "action"
  json meta;         // null when absent
  std::shared_ptr<const Groupoid> groupoid;
  std::optional<std::string> groupoid_ref;
  bool list_identities = false;
  std::optional<FiniteTopology> groupoid_topology;
  bool groupoid_topology_local = false;  // stated in this file rather than a referenced one

  std::shared_ptr<const PartialAction> action;
  std::optional<FiniteTopology> topology;
  json classes;                                   // envelope documents only
  std::optional<std::map<std::string, std::string>> embedding;  // base point ↦ point, envelope documents only

  bool tainted() const { return action && action->tainted(); }
};

struct LoadOptions {
  bool bypass_validation = false;  // build the action unchecked and tainted
};

/// Directory searched for referenced groupoid files after the instance's own
/// directory: $PACT_FIXTURES if set, otherwise the repository fixtures.
std::filesystem::path fixtures_dir();

/// Throws ParseError, StructuralError for unknown keys or wrong shapes and
/// ValidationError (with the report) for failed validation.
Instance load(const std::filesystem::path& path, const LoadOptions& options = {});
Instance from_json(const json& doc, const std::filesystem::path& base_dir, const LoadOptions& options = {});
json parse_text(const std::string& text);

json to_json(const Instance& instance);
/// Canonical text: sorted keys, two space indent, trailing newline.
std::string dump(const json& doc);
void save(const std::filesystem::path& path, const Instance& instance);

json groupoid_to_json(const Groupoid& G, bool list_identities = false);
json action_to_json(const PartialAction& A);
json topology_to_json(const FiniteTopology& T);
json report_to_json(const ValidationReport& report);

/// Envelope document for the globalize command: an action instance whose
/// groupoid is given by `groupoid_ref` (or inlined), with "classes" mapping
/// each class label to its member pairs and "embedding" giving ι.
Instance envelope_instance(const EnvelopingAction& E, const Instance& source,
                           const std::optional<FiniteTopology>& topology);

}  // namespace pact::io
