// pact: command line front end for the partial action library.
//
// Exit codes: 0 success / holds, 1 does not hold / none, 2 input error,
// 3 internal invariant violated.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "pact/coset.hpp"
#include "pact/errors.hpp"
#include "pact/globalization.hpp"
#include "pact/io.hpp"
#include "pact/morphisms.hpp"
#include "pact/partial_action.hpp"

namespace {

using namespace pact;
using io::json;

enum Exit { kOk = 0, kNo = 1, kInput = 2, kInternal = 3 };

struct Options {
  bool json_out = false;
  bool bypass = false;
  bool topology = false;
  std::string output;
  std::string at;
  std::string envelope;
  std::string file;
  std::string file2;
};

const char* yes_no(bool b) { return b ? "true" : "false"; }

std::string elem_set_text(const Groupoid& G, const Subset& S) {
  std::string out = "{";
  bool first = true;
  for_each_member(S, [&](std::size_t g) {
    if (!first) out += ",";
    out += G.name(g);
    first = false;
  });
  return out + "}";
}

json names_of(const Groupoid& G, const Subset& S) {
  json out = json::array();
  for_each_member(S, [&](std::size_t g) { out.push_back(G.name(g)); });
  return out;
}

io::Instance load_action(const Options& o, const std::string& path) {
  auto inst = io::load(path, {o.bypass});
  if (inst.kind != "action") throw StructuralError(path + ": expected an action instance");
  return inst;
}

void emit(const json& doc) { std::cout << io::dump(doc); }

int cmd_validate(const Options& o) {
  std::string kind;
  ValidationReport report;
  try {
    auto inst = io::load(o.file);
    kind = inst.kind;
  } catch (const ValidationError& e) {
    report = e.report();
  }
  if (report.ok()) {
    // A warning-only report still needs to be shown.
    auto inst = io::load(o.file, {true});
    kind = inst.kind;
    if (inst.action) report = validate_partial_action(inst.action->groupoid(), inst.action->to_data());
  }
  if (o.json_out) {
    emit({{"command", "validate"}, {"valid", report.ok()}, {"report", io::report_to_json(report)}});
  } else {
    std::cout << (report.ok() ? "valid" : "invalid") << "\n";
    for (const auto& v : report.violations) {
      std::cout << "  " << v.condition << " [";
      for (std::size_t i = 0; i < v.witness.size(); ++i) std::cout << (i ? "," : "") << v.witness[i];
      std::cout << "] " << v.message << "\n";
    }
    for (const auto& w : report.warnings) std::cout << "  warning: " << w << "\n";
  }
  return report.ok() ? kOk : kNo;
}

int cmd_info(const Options& o) {
  auto inst = io::load(o.file, {o.bypass});
  const auto& G = *inst.groupoid;
  std::vector<std::string> ids;
  for (auto e : G.identities()) ids.push_back(G.name(e));
  json doc{{"command", "info"},
           {"kind", inst.kind},
           {"groupoid_size", G.size()},
           {"identities", ids},
           {"tainted", inst.tainted()}};
  if (inst.action) {
    const auto& A = *inst.action;
    auto cls = classify(A);
    doc["carrier_size"] = A.size();
    doc["global"] = is_global(A);
    doc["orbits"] = orbit_relation(A).orbits.size();
    doc["transitive"] = cls.transitive;
    doc["free"] = cls.free;
  }
  if (o.json_out) {
    emit(doc);
    return kOk;
  }
  std::cout << "kind: " << inst.kind << "\n";
  std::cout << "groupoid: " << G.size() << " elements, identities";
  for (const auto& e : ids) std::cout << " " << e;
  std::cout << "\n";
  if (inst.action) {
    std::cout << "carrier: " << inst.action->size() << " points\n";
    std::cout << "global: " << yes_no(doc["global"].get<bool>()) << "\n";
    std::cout << "orbits: " << doc["orbits"].get<std::size_t>() << "\n";
    std::cout << "transitive: " << yes_no(doc["transitive"].get<bool>()) << ", free: "
              << yes_no(doc["free"].get<bool>()) << "\n";
  }
  if (inst.tainted()) std::cout << "tainted: true\n";
  return kOk;
}

FiniteTopology groupoid_topology(const io::Instance& inst) {
  if (inst.groupoid_topology) return *inst.groupoid_topology;
  return FiniteTopology::discrete(inst.groupoid->names());
}

int cmd_globalize(const Options& o) {
  auto inst = load_action(o, o.file);
  auto E = globalize(inst.action);
  std::optional<FiniteTopology> T;
  if (o.topology) {
    if (!inst.topology) throw StructuralError("--topology needs a \"topology\" block on the carrier");
    auto report = envelope_topology(E, groupoid_topology(inst), *inst.topology);
    if (!report.checked) throw PreconditionError("envelope topology skipped: " + report.skipped_reason);
    T = report.envelope_topology;
  }
  auto doc = io::to_json(io::envelope_instance(E, inst, T));
  if (!o.output.empty()) io::save(o.output, io::envelope_instance(E, inst, T));
  if (o.json_out) {
    emit(doc);
    return kOk;
  }
  const auto& G = inst.action->groupoid();
  std::cout << "classes: " << E.classes.size() << "\n";
  for (std::size_t c = 0; c < E.classes.size(); ++c) {
    std::cout << "  " << E.action->point(c) << " = {";
    bool first = true;
    for (auto i : E.classes.classes[c]) {
      std::cout << (first ? "" : ", ") << "(" << G.name(E.pairs[i].first) << ","
                << inst.action->point(E.pairs[i].second) << ")";
      first = false;
    }
    std::cout << "}\n";
  }
  std::cout << "embedding:\n";
  for (Point x = 0; x < inst.action->size(); ++x)
    std::cout << "  " << inst.action->point(x) << " -> " << E.action->point(E.embedding[x]) << "\n";
  if (E.action->tainted()) std::cout << "tainted: true\n";
  return kOk;
}

int cmd_orbits(const Options& o) {
  auto inst = load_action(o, o.file);
  const auto& A = *inst.action;
  std::optional<FiniteTopology> TG;
  if (inst.topology) TG = groupoid_topology(inst);
  auto space = orbit_space(A, inst.topology ? &*inst.topology : nullptr, TG ? &*TG : nullptr);
  json orbits = json::array();
  json stabilizers = json::object();
  for (const auto& cls : space.orbits.classes) {
    json members = json::array();
    for (auto x : cls) members.push_back(A.point(x));
    orbits.push_back(members);
  }
  for (Point x = 0; x < A.size(); ++x) stabilizers[A.point(x)] = names_of(A.groupoid(), stabilizer(A, x));
  json doc{{"command", "orbits"}, {"orbits", orbits}, {"stabilizers", stabilizers}, {"tainted", A.tainted()}};
  // Only reachable on unchecked input: on a partial action one step is already transitive.
  auto rel = orbit_relation(A);
  doc["one_step_transitive"] = rel.one_step_transitive;
  if (rel.witness) {
    auto [x, y, z] = *rel.witness;
    doc["non_transitivity_witness"] = {A.point(x), A.point(y), A.point(z)};
  }
  if (space.topology) {
    doc["projection_open"] = *space.projection_open;
    doc["preimage_formula_holds"] = *space.preimage_formula_holds;
    doc["orbit_space_topology"] = io::topology_to_json(*space.topology);
  }
  if (o.json_out) {
    emit(doc);
    return kOk;
  }
  for (std::size_t c = 0; c < space.orbits.size(); ++c) std::cout << space.labels[c] << "\n";
  for (Point x = 0; x < A.size(); ++x)
    std::cout << "stab(" << A.point(x) << ") = " << elem_set_text(A.groupoid(), stabilizer(A, x)) << "\n";
  if (rel.witness) {
    auto [x, y, z] = *rel.witness;
    std::cout << "one-step relation not transitive: " << A.point(x) << "~" << A.point(y) << ", " << A.point(y) << "~"
              << A.point(z) << ", " << A.point(x) << "!~" << A.point(z) << "\n";
  }
  if (space.topology)
    std::cout << "projection_open: " << yes_no(*space.projection_open)
              << ", preimage_formula_holds: " << yes_no(*space.preimage_formula_holds) << "\n";
  return kOk;
}

int cmd_classify(const Options& o) {
  auto inst = load_action(o, o.file);
  auto c = classify(*inst.action);
  if (o.json_out)
    emit({{"command", "classify"}, {"transitive", c.transitive}, {"free", c.free}, {"tainted", inst.tainted()}});
  else
    std::cout << "transitive: " << yes_no(c.transitive) << ", free: " << yes_no(c.free) << "\n";
  return kOk;
}

int cmd_isomorphic(const Options& o) {
  auto a = load_action(o, o.file);
  auto b = load_action(o, o.file2);
  if (!(a.action->groupoid() == b.action->groupoid()))
    throw StructuralError("isomorphic: the two actions are over different groupoids");
  auto f = find_isomorphism(a.action, b.action);
  json doc{{"command", "isomorphic"}, {"isomorphic", f.has_value()}, {"tainted", a.tainted() || b.tainted()}};
  if (f) {
    json table = json::object();
    for (Point x = 0; x < a.action->size(); ++x) table[a.action->point(x)] = b.action->point((*f)(x));
    doc["witness"] = table;
  }
  if (o.json_out) {
    emit(doc);
  } else if (!f) {
    std::cout << "none\n";
  } else {
    std::cout << "isomorphic\n";
    for (Point x = 0; x < a.action->size(); ++x)
      std::cout << "  " << a.action->point(x) << " -> " << b.action->point((*f)(x)) << "\n";
  }
  return f ? kOk : kNo;
}

int cmd_coset_check(const Options& o) {
  auto inst = load_action(o, o.file);
  const auto& A = inst.action;
  const Point x = A->index(o.at);

  Globalization E;
  std::optional<EnvelopingAction> built;
  if (!o.envelope.empty()) {
    auto env = load_action(o, o.envelope);
    if (!env.embedding) throw StructuralError(o.envelope + ": no \"embedding\" block");
    if (!(env.action->groupoid() == A->groupoid()))
      throw StructuralError(o.envelope + ": envelope is over a different groupoid");
    std::vector<Point> emb(A->size());
    for (Point y = 0; y < A->size(); ++y) {
      auto it = env.embedding->find(A->point(y));
      if (it == env.embedding->end()) throw StructuralError(o.envelope + ": embedding misses " + A->point(y));
      emb[y] = env.action->index(it->second);
    }
    E = Globalization{A, env.action, std::move(emb)};
    auto report = verify_globalization(E);
    if (!report.ok()) throw ValidationError(o.envelope + ": not a globalization:\n" + report.summary(), report);
  } else {
    built = globalize(A);
    E = built->as_globalization();
  }

  auto C = build_coset_action(A, x);
  json doc{{"command", "coset-check"}, {"at", o.at}, {"classes", C.classes.size()}, {"tainted", A->tainted()}};
  std::optional<GMap> phi;
  std::string failure;
  try {
    phi = theorem1_check(C, E);
  } catch (const PreconditionError& e) {
    failure = e.what();
  }
  doc["holds"] = phi.has_value();
  if (phi) {
    json table = json::object();
    for (Point c = 0; c < C.delta->size(); ++c) table[C.delta->point(c)] = E.action->point((*phi)(c));
    doc["phi"] = table;
    if (A->groupoid().identities().size() == 1) {
      auto iso = isotropy_restriction_check(A, x, E);
      doc["isotropy_isomorphic"] = iso.isomorphism.has_value();
    }
  } else {
    doc["precondition"] = failure;
  }
  if (o.json_out) {
    emit(doc);
  } else if (!phi) {
    std::cout << "precondition failed: " << failure << "\n";
  } else {
    std::cout << "classes: " << C.classes.size() << "\n";
    for (Point c = 0; c < C.delta->size(); ++c)
      std::cout << "  " << C.delta->point(c) << " -> " << E.action->point((*phi)(c)) << "\n";
    if (doc.contains("isotropy_isomorphic"))
      std::cout << "isotropy restriction isomorphic: " << yes_no(doc["isotropy_isomorphic"].get<bool>()) << "\n";
  }
  if (phi && doc.value("isotropy_isomorphic", true) == false) return kInternal;
  return phi ? kOk : kNo;
}

int cmd_topology_report(const Options& o) {
  auto inst = load_action(o, o.file);
  if (!inst.topology) throw StructuralError("topology-report needs a \"topology\" block on the carrier");
  auto E = globalize(inst.action);
  auto r = envelope_topology(E, groupoid_topology(inst), *inst.topology);
  const auto& p = r.preconditions;
  bool holds = r.checked && r.pi_open && r.iota_open_embedding && r.beta_continuous && r.fiber_formula_holds &&
               r.item4_holds && r.MG_hausdorff && r.relation_closed && r.graph_closed;
  json doc{{"command", "topology-report"},
           {"checked", r.checked},
           {"graph_open", r.graph_open},
           {"graph_closed", r.graph_closed},
           {"MG_hausdorff", r.MG_hausdorff},
           {"relation_closed", r.relation_closed},
           {"pi_open", r.pi_open},
           {"iota_open_embedding", r.iota_open_embedding},
           {"iota_homeomorphism", r.iota_homeomorphism},
           {"beta_continuous", r.beta_continuous},
           {"fiber_formula_holds", r.fiber_formula_holds},
           {"item4_holds", r.item4_holds},
           {"star_open", p.groupoid.star_open()},
           {"topological_groupoid", p.groupoid.continuity_ok()},
           {"action_continuous", p.action_ok()},
           {"holds", holds},
           {"tainted", inst.tainted()}};
  if (!r.checked) doc["skipped"] = r.skipped_reason;
  if (o.json_out) {
    emit(doc);
    return holds ? kOk : kNo;
  }
  std::cout << "graph_open: " << yes_no(r.graph_open) << ", graph_closed: " << yes_no(r.graph_closed)
            << ", MG_hausdorff: " << yes_no(r.MG_hausdorff) << "\n";
  if (!r.checked) {
    std::cout << "skipped: " << r.skipped_reason << "\n";
    return kNo;
  }
  std::cout << "relation_closed: " << yes_no(r.relation_closed) << "\n"
            << "pi_open: " << yes_no(r.pi_open) << "\n"
            << "iota_open_embedding: " << yes_no(r.iota_open_embedding)
            << ", iota_homeomorphism: " << yes_no(r.iota_homeomorphism) << "\n"
            << "beta_continuous: " << yes_no(r.beta_continuous) << "\n"
            << "fiber_formula_holds: " << yes_no(r.fiber_formula_holds) << "\n"
            << "item4_holds: " << yes_no(r.item4_holds) << "\n";
  return holds ? kOk : kNo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite groupoids and their partial actions"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--bypass-validation", o.bypass, "Build actions without validation; outputs are tainted");

  auto file_cmd = [&](const char* name, const char* help) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("file", o.file, "Instance file")->required();
    c->add_flag("--json", o.json_out, "Machine readable output");
    c->add_flag("--bypass-validation", o.bypass, "Build actions without validation; outputs are tainted");
    return c;
  };

  auto* validate = file_cmd("validate", "Validate a groupoid or action file");
  auto* info = file_cmd("info", "Summarize an instance");
  auto* glob = file_cmd("globalize", "Build the enveloping action");
  glob->add_flag("--topology", o.topology, "Attach the quotient topology of the envelope");
  glob->add_option("-o", o.output, "Write the envelope document to a file");
  auto* orbits = file_cmd("orbits", "Orbits, stabilizers and the orbit space");
  auto* cls = file_cmd("classify", "Transitive and free");
  auto* iso = file_cmd("isomorphic", "Search for an isomorphism between two actions");
  iso->add_option("other", o.file2, "Second action file")->required();
  auto* coset = file_cmd("coset-check", "Coset action against the globalization");
  coset->add_option("--at", o.at, "Base point")->required();
  coset->add_option("--envelope", o.envelope, "Envelope document to check against");
  auto* topo = file_cmd("topology-report", "Topological properties of the envelope");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help();
    return kInput;
  }

  try {
    if (*validate) return cmd_validate(o);
    if (*info) return cmd_info(o);
    if (*glob) return cmd_globalize(o);
    if (*orbits) return cmd_orbits(o);
    if (*cls) return cmd_classify(o);
    if (*iso) return cmd_isomorphic(o);
    if (*coset) return cmd_coset_check(o);
    if (*topo) return cmd_topology_report(o);
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return kInternal;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
