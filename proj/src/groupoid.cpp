#include "pact/groupoid.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "pact/errors.hpp"

namespace pact {

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (const auto& v : violations) {
    os << v.condition << ": " << v.message;
    if (!v.witness.empty()) {
      os << " [";
      for (std::size_t i = 0; i < v.witness.size(); ++i) os << (i ? ", " : "") << v.witness[i];
      os << "]";
    }
    os << "\n";
  }
  for (const auto& w : warnings) os << "warning: " << w << "\n";
  return os.str();
}

namespace {

// Index-based view of raw groupoid data. Built only after structural checks.
struct Table {
  std::vector<std::string> names;
  std::vector<Elem> mul;
  std::vector<Elem> inv, src, rng;

  std::size_t n() const { return names.size(); }
  Elem at(Elem g, Elem h) const { return mul[g * n() + h]; }
};

Elem lookup(const std::vector<std::string>& sorted, std::string_view name, const char* where) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), name);
  if (it == sorted.end() || *it != name)
    throw StructuralError(std::string(where) + ": unknown element '" + std::string(name) + "'");
  return static_cast<Elem>(it - sorted.begin());
}

std::vector<Elem> unary_table(const std::vector<std::string>& names,
                              const std::vector<std::pair<std::string, std::string>>& entries,
                              const char* what) {
  std::vector<Elem> out(names.size(), npos);
  for (const auto& [a, b] : entries) {
    auto i = lookup(names, a, what);
    auto j = lookup(names, b, what);
    if (out[i] != npos && out[i] != j)
      throw StructuralError(std::string(what) + ": conflicting entries for '" + a + "'");
    out[i] = j;
  }
  for (std::size_t i = 0; i < out.size(); ++i)
    if (out[i] == npos)
      throw StructuralError(std::string(what) + ": no entry for '" + names[i] + "'");
  return out;
}

Table build_table(const GroupoidData& data) {
  Table t;
  t.names = data.elements;
  std::sort(t.names.begin(), t.names.end());
  if (std::adjacent_find(t.names.begin(), t.names.end()) != t.names.end())
    throw StructuralError("elements: duplicate element name");
  const auto n = t.n();
  t.mul.assign(n * n, npos);
  for (const auto& [a, b, c] : data.mul) {
    auto g = lookup(t.names, a, "mul");
    auto h = lookup(t.names, b, "mul");
    auto gh = lookup(t.names, c, "mul");
    auto& slot = t.mul[g * n + h];
    if (slot != npos && slot != gh)
      throw StructuralError("mul: conflicting entries for (" + a + ", " + b + ")");
    slot = gh;
  }
  t.inv = unary_table(t.names, data.inv, "inv");
  t.src = unary_table(t.names, data.src, "src");
  t.rng = unary_table(t.names, data.rng, "rng");
  if (data.identities)
    for (const auto& e : *data.identities) lookup(t.names, e, "identities");
  return t;
}

ValidationReport validate_table(const Table& t, const std::optional<std::vector<std::string>>& supplied) {
  ValidationReport report;
  const auto n = t.n();
  const auto& nm = t.names;
  auto defined = [&](Elem g, Elem h) { return t.at(g, h) != npos; };

  for (Elem g = 0; g < n; ++g)
    for (Elem h = 0; h < n; ++h)
      if (defined(g, h) != (t.src[g] == t.rng[h]))
        report.add("composability", {nm[g], nm[h]},
                   defined(g, h) ? "product defined although d(g) != r(h)"
                                 : "product undefined although d(g) = r(h)");

  for (Elem g = 0; g < n; ++g)
    for (Elem h = 0; h < n; ++h)
      for (Elem k = 0; k < n; ++k) {
        const Elem gh = t.at(g, h);
        const Elem hk = t.at(h, k);
        const bool left = gh != npos && defined(gh, k);
        const bool right = hk != npos && defined(g, hk);
        if (left != right) {
          report.add("axiom-1", {nm[g], nm[h], nm[k]}, "(gh)k and g(hk) differ in definedness");
        } else if (left && t.at(gh, k) != t.at(g, hk)) {
          report.add("axiom-1", {nm[g], nm[h], nm[k]}, "(gh)k != g(hk)");
        }
        const bool both = gh != npos && hk != npos;
        if (gh != npos && left != both)
          report.add("axiom-2", {nm[g], nm[h], nm[k]}, "(gh)k exists iff gh and hk exist fails");
      }

  for (Elem g = 0; g < n; ++g) {
    const Elem d = t.src[g];
    const Elem r = t.rng[g];
    if (t.at(g, d) != g) report.add("axiom-3", {nm[g], nm[d]}, "g d(g) != g");
    if (t.at(r, g) != g) report.add("axiom-3", {nm[g], nm[r]}, "r(g) g != g");
    for (Elem e = 0; e < n; ++e) {
      if (e != d && t.at(g, e) == g)
        report.add("axiom-3", {nm[g], nm[e]}, "right unit of g is not unique");
      if (e != r && t.at(e, g) == g)
        report.add("axiom-3", {nm[g], nm[e]}, "left unit of g is not unique");
    }
  }

  for (Elem g = 0; g < n; ++g) {
    const Elem gi = t.inv[g];
    if (t.at(gi, g) != t.src[g]) report.add("axiom-4", {nm[g], nm[gi]}, "g⁻¹g != d(g)");
    if (t.at(g, gi) != t.rng[g]) report.add("axiom-4", {nm[g], nm[gi]}, "gg⁻¹ != r(g)");
    if (t.inv[gi] != g) report.add("inverse", {nm[g]}, "(g⁻¹)⁻¹ != g");
    if (t.src[gi] != t.rng[g]) report.add("inverse", {nm[g]}, "d(g⁻¹) != r(g)");
  }

  std::set<Elem> derived;
  for (Elem g = 0; g < n; ++g) {
    derived.insert(t.src[g]);
    derived.insert(t.rng[g]);
  }
  for (Elem e : derived)
    if (t.src[e] != e || t.rng[e] != e)
      report.add("axiom-3", {nm[e]}, "d or r value is not a unit (d(e) = r(e) = e fails)");
  if (supplied) {
    std::set<Elem> given;
    for (const auto& s : *supplied) given.insert(lookup(nm, s, "identities"));
    for (Elem e : derived)
      if (!given.count(e)) report.add("identity-set", {nm[e]}, "derived identity missing from supplied list");
    for (Elem e : given)
      if (!derived.count(e)) report.add("identity-set", {nm[e]}, "supplied identity is not d or r of any element");
  }
  return report;
}

}  // namespace

ValidationReport validate_groupoid(const GroupoidData& data) {
  return validate_table(build_table(data), data.identities);
}

Groupoid Groupoid::from_data(const GroupoidData& data) {
  auto t = build_table(data);
  auto report = validate_table(t, data.identities);
  if (!report.ok()) throw ValidationError("groupoid axioms violated:\n" + report.summary(), report);
  Groupoid G;
  G.names_ = std::move(t.names);
  G.mul_ = std::move(t.mul);
  G.inv_ = std::move(t.inv);
  G.src_ = std::move(t.src);
  G.rng_ = std::move(t.rng);
  for (Elem g = 0; g < G.size(); ++g)
    if (G.src_[g] == g) G.identities_.push_back(g);
  return G;
}

GroupoidData Groupoid::to_data() const {
  GroupoidData d;
  d.elements = names_;
  for (Elem g = 0; g < size(); ++g) {
    for (Elem h = 0; h < size(); ++h)
      if (auto gh = mul(g, h)) d.mul.push_back({names_[g], names_[h], names_[*gh]});
    d.inv.emplace_back(names_[g], names_[inv_[g]]);
    d.src.emplace_back(names_[g], names_[src_[g]]);
    d.rng.emplace_back(names_[g], names_[rng_[g]]);
  }
  return d;
}

std::optional<Elem> Groupoid::find(std::string_view name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) return std::nullopt;
  return static_cast<Elem>(it - names_.begin());
}

Elem Groupoid::index(std::string_view name) const {
  return lookup(names_, name, "groupoid");
}

Elem Groupoid::compose(Elem g, Elem h) const {
  auto gh = mul(g, h);
  if (!gh) throw InvariantViolation("product " + name(g) + "·" + name(h) + " is undefined");
  return *gh;
}

std::vector<std::pair<Elem, Elem>> composable_pairs(const Groupoid& G) {
  std::vector<std::pair<Elem, Elem>> out;
  for (Elem g = 0; g < G.size(); ++g)
    for (Elem h = 0; h < G.size(); ++h)
      if (G.composable(g, h)) out.emplace_back(g, h);
  return out;
}

Groupoid isotropy_group(const Groupoid& G, Elem e) {
  if (e >= G.size() || !G.is_identity(e))
    throw PreconditionError("isotropy_group: '" + (e < G.size() ? G.name(e) : std::string("?")) +
                            "' is not an identity");
  GroupoidData d;
  for (Elem g = 0; g < G.size(); ++g) {
    if (G.src(g) != e || G.rng(g) != e) continue;
    d.elements.push_back(G.name(g));
    d.inv.emplace_back(G.name(g), G.name(G.inv(g)));
    d.src.emplace_back(G.name(g), G.name(e));
    d.rng.emplace_back(G.name(g), G.name(e));
    for (Elem h = 0; h < G.size(); ++h)
      if (G.src(h) == e && G.rng(h) == e) d.mul.push_back({G.name(g), G.name(h), G.name(G.compose(g, h))});
  }
  return Groupoid::from_data(d);
}

StarFibers star_fibers(const Groupoid& G, Elem e) {
  StarFibers f{Subset(G.size()), Subset(G.size())};
  for (Elem g = 0; g < G.size(); ++g) {
    if (G.src(g) == e) f.d_fiber.set(g);
    if (G.rng(g) == e) f.r_fiber.set(g);
  }
  return f;
}

Translation translation_map(const Groupoid& G, Elem k, Side side) {
  Translation t;
  t.by = k;
  t.side = side;
  t.domain = Subset(G.size());
  t.codomain = Subset(G.size());
  t.table.assign(G.size(), npos);
  for (Elem h = 0; h < G.size(); ++h) {
    auto image = side == Side::right ? G.mul(h, k) : G.mul(k, h);
    if (!image) continue;
    t.domain.set(h);
    t.codomain.set(*image);
    t.table[h] = *image;
  }
  return t;
}

Groupoid from_group(const std::vector<std::string>& names,
                    const std::vector<std::vector<std::size_t>>& table) {
  const auto n = names.size();
  if (n == 0) throw StructuralError("from_group: empty group");
  if (table.size() != n) throw StructuralError("from_group: table has wrong number of rows");
  for (const auto& row : table) {
    if (row.size() != n) throw StructuralError("from_group: table row has wrong length");
    for (auto v : row)
      if (v >= n) throw StructuralError("from_group: table entry out of range");
  }
  std::optional<std::size_t> unit;
  for (std::size_t i = 0; i < n && !unit; ++i) {
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j) ok = table[i][j] == j && table[j][i] == j;
    if (ok) unit = i;
  }
  ValidationReport report;
  if (!unit) {
    report.add("axiom-3", {}, "group table has no two-sided identity");
    throw ValidationError("from_group: not a group table", report);
  }
  GroupoidData d;
  d.elements = names;
  for (std::size_t i = 0; i < n; ++i) {
    std::optional<std::size_t> inverse;
    for (std::size_t j = 0; j < n && !inverse; ++j)
      if (table[i][j] == *unit && table[j][i] == *unit) inverse = j;
    if (!inverse) {
      report.add("axiom-4", {names[i]}, "element has no inverse");
      continue;
    }
    d.inv.emplace_back(names[i], names[*inverse]);
    d.src.emplace_back(names[i], names[*unit]);
    d.rng.emplace_back(names[i], names[*unit]);
    for (std::size_t j = 0; j < n; ++j) d.mul.push_back({names[i], names[j], names[table[i][j]]});
  }
  if (!report.ok()) throw ValidationError("from_group: not a group table", report);
  return Groupoid::from_data(d);
}

Groupoid cyclic_group(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) {
    auto s = std::to_string(i);
    if (n > 10 && s.size() < 2) s = "0" + s;
    names.push_back(s);
  }
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) table[i][j] = (i + j) % n;
  return from_group(names, table);
}

Groupoid klein_group() {
  std::vector<std::string> names{"00", "01", "10", "11"};
  std::vector<std::vector<std::size_t>> table(4, std::vector<std::size_t>(4));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) table[i][j] = i ^ j;
  return from_group(names, table);
}

Groupoid symmetric_group3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::string> names;
  for (const auto& q : perms) names.push_back(std::to_string(q[0]) + std::to_string(q[1]) + std::to_string(q[2]));
  std::vector<std::vector<std::size_t>> table(6, std::vector<std::size_t>(6));
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      // (pq)(x) = p(q(x))
      std::array<int, 3> c{};
      for (int x = 0; x < 3; ++x) c[x] = perms[i][perms[j][x]];
      table[i][j] = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return from_group(names, table);
}

Groupoid pair_groupoid(const std::vector<std::string>& objects) {
  auto pair = [](const std::string& a, const std::string& b) { return "(" + a + "," + b + ")"; };
  GroupoidData d;
  for (const auto& i : objects)
    for (const auto& j : objects) {
      d.elements.push_back(pair(i, j));
      d.inv.emplace_back(pair(i, j), pair(j, i));
      d.src.emplace_back(pair(i, j), pair(j, j));
      d.rng.emplace_back(pair(i, j), pair(i, i));
      for (const auto& k : objects) d.mul.push_back({pair(i, j), pair(j, k), pair(i, k)});
    }
  return Groupoid::from_data(d);
}

Groupoid disjoint_union(std::span<const Groupoid> parts) {
  std::set<std::string> seen;
  bool clash = false;
  for (const auto& part : parts)
    for (const auto& nm : part.names())
      if (!seen.insert(nm).second) clash = true;
  GroupoidData d;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& P = parts[i];
    auto nm = [&](Elem g) { return clash ? std::to_string(i) + ":" + P.name(g) : P.name(g); };
    for (Elem g = 0; g < P.size(); ++g) {
      d.elements.push_back(nm(g));
      d.inv.emplace_back(nm(g), nm(P.inv(g)));
      d.src.emplace_back(nm(g), nm(P.src(g)));
      d.rng.emplace_back(nm(g), nm(P.rng(g)));
      for (Elem h = 0; h < P.size(); ++h)
        if (auto gh = P.mul(g, h)) d.mul.push_back({nm(g), nm(h), nm(*gh)});
    }
  }
  return Groupoid::from_data(d);
}

Groupoid action_groupoid(const Groupoid& group, const std::vector<std::string>& points,
                         const std::vector<std::vector<std::size_t>>& act) {
  if (group.identities().size() != 1)
    throw PreconditionError("action_groupoid: acting groupoid must be a group");
  const auto n = points.size();
  if (act.size() != group.size()) throw StructuralError("action_groupoid: wrong number of rows");
  for (const auto& row : act) {
    if (row.size() != n) throw StructuralError("action_groupoid: wrong row length");
    for (auto v : row)
      if (v >= n) throw StructuralError("action_groupoid: point index out of range");
  }
  const Elem unit = group.identities().front();
  ValidationReport report;
  for (std::size_t x = 0; x < n; ++x) {
    if (act[unit][x] != x) report.add("action", {group.name(unit), points[x]}, "identity does not fix point");
    for (Elem a = 0; a < group.size(); ++a)
      for (Elem b = 0; b < group.size(); ++b)
        if (act[group.compose(a, b)][x] != act[a][act[b][x]])
          report.add("action", {group.name(a), group.name(b), points[x]}, "(ab)x != a(bx)");
  }
  if (!report.ok()) throw ValidationError("action_groupoid: not a group action", report);

  auto nm = [&](Elem g, std::size_t x) { return "(" + group.name(g) + "," + points[x] + ")"; };
  GroupoidData d;
  for (Elem g = 0; g < group.size(); ++g)
    for (std::size_t x = 0; x < n; ++x) {
      const auto y = act[g][x];
      d.elements.push_back(nm(g, x));
      d.src.emplace_back(nm(g, x), nm(unit, x));
      d.rng.emplace_back(nm(g, x), nm(unit, y));
      d.inv.emplace_back(nm(g, x), nm(group.inv(g), y));
      for (Elem h = 0; h < group.size(); ++h) d.mul.push_back({nm(h, y), nm(g, x), nm(group.compose(h, g), x)});
    }
  return Groupoid::from_data(d);
}

Groupoid relabel(const Groupoid& G, const std::map<std::string, std::string>& renaming) {
  auto rn = [&](Elem g) {
    auto it = renaming.find(G.name(g));
    if (it == renaming.end()) throw StructuralError("relabel: no new name for '" + G.name(g) + "'");
    return it->second;
  };
  GroupoidData d;
  for (Elem g = 0; g < G.size(); ++g) {
    d.elements.push_back(rn(g));
    d.inv.emplace_back(rn(g), rn(G.inv(g)));
    d.src.emplace_back(rn(g), rn(G.src(g)));
    d.rng.emplace_back(rn(g), rn(G.rng(g)));
    for (Elem h = 0; h < G.size(); ++h)
      if (auto gh = G.mul(g, h)) d.mul.push_back({rn(g), rn(h), rn(*gh)});
  }
  return Groupoid::from_data(d);
}

}  // namespace pact
