#include "pact/io.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#ifndef PACT_DEFAULT_FIXTURES
#define PACT_DEFAULT_FIXTURES "fixtures"
#endif

namespace pact::io {

namespace {

void require_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) throw StructuralError(where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; });
    if (!known) throw StructuralError(where + ": unknown key \"" + key + "\"");
  }
}

const json& field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw StructuralError(where + ": missing \"" + key + "\"");
  return *it;
}

std::string text(const json& v, const std::string& where) {
  if (!v.is_string()) throw StructuralError(where + ": expected a string");
  return v.get<std::string>();
}

std::vector<std::string> text_list(const json& v, const std::string& where) {
  if (!v.is_array()) throw StructuralError(where + ": expected an array of strings");
  std::vector<std::string> out;
  for (const auto& e : v) out.push_back(text(e, where));
  return out;
}

// [[key, value], ...] with string values.
std::vector<std::pair<std::string, std::string>> text_pairs(const json& v, const std::string& where) {
  if (!v.is_array()) throw StructuralError(where + ": expected an array of [key, value] pairs");
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& e : v) {
    if (!e.is_array() || e.size() != 2) throw StructuralError(where + ": expected [key, value]");
    out.emplace_back(text(e[0], where), text(e[1], where));
  }
  return out;
}

// [[key, [values]], ...].
std::vector<std::pair<std::string, std::vector<std::string>>> list_pairs(const json& v, const std::string& where) {
  if (!v.is_array()) throw StructuralError(where + ": expected an array of [key, [values]] pairs");
  std::vector<std::pair<std::string, std::vector<std::string>>> out;
  for (const auto& e : v) {
    if (!e.is_array() || e.size() != 2) throw StructuralError(where + ": expected [key, [values]]");
    out.emplace_back(text(e[0], where), text_list(e[1], where));
  }
  return out;
}

json pair_array(std::vector<std::pair<std::string, json>> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  json out = json::array();
  for (auto& [k, v] : entries) out.push_back(json::array({k, std::move(v)}));
  return out;
}

json sorted_names(std::vector<std::string> names) {
  std::sort(names.begin(), names.end());
  return json(names);
}

json read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StructuralError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_text(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " +
                         e.what(),
                     e.line(), e.column());
  }
}

struct GroupoidBlock {
  std::shared_ptr<const Groupoid> groupoid;
  bool list_identities = false;
  std::optional<FiniteTopology> topology;
};

GroupoidBlock parse_groupoid(const json& g) {
  const std::string where = "groupoid";
  require_keys(g, {"elements", "mul", "inv", "src", "rng", "identities"}, where);
  GroupoidData d;
  d.elements = text_list(field(g, "elements", where), where + ".elements");
  const auto& mul = field(g, "mul", where);
  if (!mul.is_array()) throw StructuralError(where + ".mul: expected an array of triples");
  for (const auto& t : mul) {
    auto v = text_list(t, where + ".mul");
    if (v.size() != 3) throw StructuralError(where + ".mul: expected [g, h, gh]");
    d.mul.push_back({v[0], v[1], v[2]});
  }
  d.inv = text_pairs(field(g, "inv", where), where + ".inv");
  d.src = text_pairs(field(g, "src", where), where + ".src");
  d.rng = text_pairs(field(g, "rng", where), where + ".rng");
  GroupoidBlock out;
  if (g.contains("identities")) {
    d.identities = text_list(g["identities"], where + ".identities");
    out.list_identities = true;
  }
  out.groupoid = std::make_shared<const Groupoid>(Groupoid::from_data(d));
  return out;
}

// {"carrier": [...], "min_open": [[x, [...]]]} over the given carrier.
FiniteTopology parse_topology(const json& t, const std::vector<std::string>& carrier, const std::string& where) {
  require_keys(t, {"carrier", "min_open"}, where);
  auto listed = text_list(field(t, "carrier", where), where + ".carrier");
  auto expected = carrier;
  std::sort(listed.begin(), listed.end());
  std::sort(expected.begin(), expected.end());
  if (listed != expected) throw StructuralError(where + ": carrier does not match");
  std::vector<std::pair<std::string, std::vector<std::string>>> min_open;
  if (t.contains("min_open")) min_open = list_pairs(t["min_open"], where + ".min_open");
  return FiniteTopology::from_named(std::move(listed), min_open);
}

// Topology of a groupoid file, if any.
std::optional<FiniteTopology> instance_groupoid_topology(const json& doc, const Groupoid& G, const std::string& where) {
  if (!doc.contains("topology")) return std::nullopt;
  const auto& t = doc["topology"];
  require_keys(t, {"groupoid", "carrier"}, where + ".topology");
  if (!t.contains("groupoid")) return std::nullopt;
  return parse_topology(t["groupoid"], G.names(), where + ".topology.groupoid");
}

GroupoidBlock resolve_groupoid(const json& g, const std::filesystem::path& base_dir) {
  if (g.is_object()) return parse_groupoid(g);
  auto ref = text(g, "groupoid");
  std::filesystem::path path = base_dir / ref;
  if (!std::filesystem::exists(path)) path = fixtures_dir() / ref;
  auto doc = read_file(path);
  require_keys(doc, {"kind", "meta", "payload", "topology"}, path.string());
  if (doc.value("kind", "") != "groupoid") throw StructuralError(path.string() + ": not a groupoid file");
  auto block = parse_groupoid(field(doc, "payload", path.string()));
  block.topology = instance_groupoid_topology(doc, *block.groupoid, path.string());
  return block;
}

}  // namespace

std::filesystem::path fixtures_dir() {
  if (const char* env = std::getenv("PACT_FIXTURES"); env && *env) return env;
  return PACT_DEFAULT_FIXTURES;
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("parse error at line " + std::to_string(line) + ", column " + std::to_string(column), line,
                     column);
  }
}

Instance from_json(const json& doc, const std::filesystem::path& base_dir, const LoadOptions& options) {
  if (!doc.is_object()) throw StructuralError("instance: expected an object");
  Instance inst;
  inst.kind = text(field(doc, "kind", "instance"), "kind");
  if (doc.contains("meta")) {
    if (!doc["meta"].is_object()) throw StructuralError("meta: expected an object");
    inst.meta = doc["meta"];
  }
  const auto& payload = field(doc, "payload", "instance");

  if (inst.kind == "groupoid") {
    require_keys(doc, {"kind", "meta", "payload", "topology"}, "instance");
    auto block = parse_groupoid(payload);
    inst.groupoid = block.groupoid;
    inst.list_identities = block.list_identities;
    inst.groupoid_topology = instance_groupoid_topology(doc, *inst.groupoid, "instance");
    inst.groupoid_topology_local = inst.groupoid_topology.has_value();
    if (doc.contains("topology") && doc["topology"].contains("carrier"))
      throw StructuralError("instance.topology: a groupoid file has no carrier topology");
    return inst;
  }
  if (inst.kind != "action") throw StructuralError("kind: expected \"groupoid\" or \"action\"");

  require_keys(doc, {"kind", "meta", "payload", "topology", "tainted", "classes", "embedding"}, "instance");
  require_keys(payload, {"groupoid", "carrier", "anchor", "domains", "maps", "topology"}, "payload");
  const auto& g = field(payload, "groupoid", "payload");
  auto block = resolve_groupoid(g, base_dir);
  inst.groupoid = block.groupoid;
  inst.list_identities = block.list_identities;
  inst.groupoid_topology = std::move(block.topology);
  if (g.is_string()) inst.groupoid_ref = g.get<std::string>();
  if (auto t = instance_groupoid_topology(doc, *inst.groupoid, "instance")) {
    inst.groupoid_topology = std::move(t);
    inst.groupoid_topology_local = true;
  }

  PartialActionData d;
  d.carrier = text_list(field(payload, "carrier", "payload"), "payload.carrier");
  d.anchor = text_pairs(field(payload, "anchor", "payload"), "payload.anchor");
  if (payload.contains("domains")) d.domains = list_pairs(payload["domains"], "payload.domains");
  if (payload.contains("maps")) {
    const auto& maps = payload["maps"];
    if (!maps.is_array()) throw StructuralError("payload.maps: expected an array of [g, [[x, y]]] pairs");
    for (const auto& e : maps) {
      if (!e.is_array() || e.size() != 2) throw StructuralError("payload.maps: expected [g, [[x, y]]]");
      d.maps.emplace_back(text(e[0], "payload.maps"), text_pairs(e[1], "payload.maps"));
    }
  }

  bool tainted = false;
  if (doc.contains("tainted")) {
    if (!doc["tainted"].is_boolean()) throw StructuralError("tainted: expected a boolean");
    tainted = doc["tainted"].get<bool>();
  }
  inst.action = std::make_shared<const PartialAction>(
      tainted || options.bypass_validation ? PartialAction::from_data_unchecked(inst.groupoid, d)
                                           : PartialAction::from_data(inst.groupoid, d));

  if (payload.contains("topology"))
    inst.topology = parse_topology(payload["topology"], inst.action->points(), "payload.topology");
  if (doc.contains("topology") && doc["topology"].contains("carrier")) {
    auto t = parse_topology(doc["topology"]["carrier"], inst.action->points(), "instance.topology.carrier");
    if (inst.topology && !(*inst.topology == t))
      throw StructuralError("instance.topology.carrier disagrees with payload.topology");
    inst.topology = std::move(t);
  }
  if (doc.contains("classes")) {
    if (!doc["classes"].is_array()) throw StructuralError("classes: expected an array");
    inst.classes = doc["classes"];
  }
  if (doc.contains("embedding")) {
    std::map<std::string, std::string> emb;
    for (auto& [x, y] : text_pairs(doc["embedding"], "embedding")) {
      inst.action->index(y);
      emb[x] = y;
    }
    inst.embedding = std::move(emb);
  }
  return inst;
}

Instance load(const std::filesystem::path& path, const LoadOptions& options) {
  return from_json(read_file(path), path.parent_path(), options);
}

json groupoid_to_json(const Groupoid& G, bool list_identities) {
  json g;
  g["elements"] = G.names();
  json mul = json::array();
  std::vector<std::pair<std::string, json>> inv, src, rng;
  for (Elem a = 0; a < G.size(); ++a) {
    for (Elem b = 0; b < G.size(); ++b)
      if (auto ab = G.mul(a, b)) mul.push_back(json::array({G.name(a), G.name(b), G.name(*ab)}));
    inv.emplace_back(G.name(a), G.name(G.inv(a)));
    src.emplace_back(G.name(a), G.name(G.src(a)));
    rng.emplace_back(G.name(a), G.name(G.rng(a)));
  }
  g["mul"] = std::move(mul);
  g["inv"] = pair_array(std::move(inv));
  g["src"] = pair_array(std::move(src));
  g["rng"] = pair_array(std::move(rng));
  if (list_identities) {
    std::vector<std::string> ids;
    for (auto e : G.identities()) ids.push_back(G.name(e));
    g["identities"] = sorted_names(ids);
  }
  return g;
}

json action_to_json(const PartialAction& A) {
  const auto& G = A.groupoid();
  json a;
  a["carrier"] = sorted_names(A.points());
  std::vector<std::pair<std::string, json>> anchor, domains, maps;
  for (Point x = 0; x < A.size(); ++x) anchor.emplace_back(A.point(x), G.name(A.anchor(x)));
  for (Elem g = 0; g < G.size(); ++g) {
    std::vector<std::string> dom;
    std::vector<std::pair<std::string, json>> m;
    for (Point x = 0; x < A.size(); ++x) {
      if (A.domain(g).test(x)) dom.push_back(A.point(x));
      if (auto y = A.apply(g, x)) m.emplace_back(A.point(x), A.point(*y));
    }
    domains.emplace_back(G.name(g), sorted_names(dom));
    maps.emplace_back(G.name(g), pair_array(std::move(m)));
  }
  a["anchor"] = pair_array(std::move(anchor));
  a["domains"] = pair_array(std::move(domains));
  a["maps"] = pair_array(std::move(maps));
  return a;
}

json topology_to_json(const FiniteTopology& T) {
  std::vector<std::pair<std::string, json>> min_open;
  for (std::size_t i = 0; i < T.size(); ++i) {
    std::vector<std::string> open;
    for_each_member(T.min_open(i), [&](std::size_t j) { open.push_back(T.label(j)); });
    min_open.emplace_back(T.label(i), sorted_names(open));
  }
  return {{"carrier", sorted_names(T.labels())}, {"min_open", pair_array(std::move(min_open))}};
}

json report_to_json(const ValidationReport& report) {
  json violations = json::array();
  for (const auto& v : report.violations)
    violations.push_back({{"condition", v.condition}, {"witness", v.witness}, {"message", v.message}});
  return {{"ok", report.ok()}, {"violations", violations}, {"warnings", report.warnings}};
}

json to_json(const Instance& inst) {
  json doc;
  doc["kind"] = inst.kind;
  if (!inst.meta.is_null()) doc["meta"] = inst.meta;
  if (inst.groupoid_topology && (inst.groupoid_topology_local || !inst.groupoid_ref))
    doc["topology"] = {{"groupoid", topology_to_json(*inst.groupoid_topology)}};
  if (inst.kind == "groupoid") {
    doc["payload"] = groupoid_to_json(*inst.groupoid, inst.list_identities);
    return doc;
  }
  json payload = action_to_json(*inst.action);
  if (inst.groupoid_ref)
    payload["groupoid"] = *inst.groupoid_ref;
  else
    payload["groupoid"] = groupoid_to_json(*inst.groupoid, inst.list_identities);
  if (inst.topology) payload["topology"] = topology_to_json(*inst.topology);
  doc["payload"] = std::move(payload);
  if (inst.tainted()) doc["tainted"] = true;
  if (!inst.classes.is_null()) doc["classes"] = inst.classes;
  if (inst.embedding) {
    std::vector<std::pair<std::string, json>> emb(inst.embedding->begin(), inst.embedding->end());
    doc["embedding"] = pair_array(std::move(emb));
  }
  return doc;
}

namespace {

bool has_object(const json& v) {
  if (v.is_object()) return true;
  if (v.is_array())
    for (const auto& e : v)
      if (has_object(e)) return true;
  return false;
}

// Objects one key per line; arrays without objects on one line when short.
void write(std::string& out, const json& v, int indent) {
  const std::string pad(indent, ' ');
  const std::string inner(indent + 2, ' ');
  if (v.is_object()) {
    if (v.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (const auto& [k, e] : v.items()) {
      if (!first) out += ",\n";
      first = false;
      out += inner + json(k).dump() + ": ";
      write(out, e, indent + 2);
    }
    out += "\n" + pad + "}";
  } else if (v.is_array() && !v.empty()) {
    auto flat = v.dump(-1, ' ', false);
    if (!has_object(v) && flat.size() <= 100) {
      // dump(-1) leaves no spaces after commas; add them for readability
      std::string spaced;
      bool in_string = false, escaped = false;
      for (char c : flat) {
        spaced += c;
        if (in_string) {
          if (escaped) escaped = false;
          else if (c == '\\') escaped = true;
          else if (c == '"') in_string = false;
        } else if (c == '"') {
          in_string = true;
        } else if (c == ',') {
          spaced += ' ';
        }
      }
      out += spaced;
      return;
    }
    out += "[\n";
    bool first = true;
    for (const auto& e : v) {
      if (!first) out += ",\n";
      first = false;
      out += inner;
      write(out, e, indent + 2);
    }
    out += "\n" + pad + "]";
  } else {
    out += v.dump();
  }
}

}  // namespace

std::string dump(const json& doc) {
  std::string out;
  write(out, doc, 0);
  return out + "\n";
}

void save(const std::filesystem::path& path, const Instance& instance) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw StructuralError("cannot write " + path.string());
  out << dump(to_json(instance));
  if (!out) throw StructuralError("write failed for " + path.string());
}

Instance envelope_instance(const EnvelopingAction& E, const Instance& source,
                           const std::optional<FiniteTopology>& topology) {
  const auto& G = E.base->groupoid();
  Instance out;
  out.kind = "action";
  std::string name = source.meta.is_object() ? source.meta.value("name", "") : "";
  out.meta = {{"name", name.empty() ? std::string("envelope") : "envelope of " + name}};
  out.groupoid = source.groupoid;
  out.groupoid_ref = source.groupoid_ref;
  out.list_identities = source.list_identities;
  out.groupoid_topology = source.groupoid_topology;
  out.groupoid_topology_local = source.groupoid_topology_local;
  out.action = E.action;
  out.topology = topology;

  std::vector<std::pair<std::string, json>> classes;
  for (std::size_t c = 0; c < E.classes.size(); ++c) {
    json members = json::array();
    for (auto i : E.classes.classes[c])
      members.push_back(json::array({G.name(E.pairs[i].first), E.base->point(E.pairs[i].second)}));
    classes.emplace_back(E.action->point(c), std::move(members));
  }
  out.classes = pair_array(std::move(classes));
  std::map<std::string, std::string> emb;
  for (Point x = 0; x < E.base->size(); ++x) emb[E.base->point(x)] = E.action->point(E.embedding[x]);
  out.embedding = std::move(emb);
  return out;
}

}  // namespace pact::io
