#include "pact/partial_action.hpp"

#include <algorithm>

#include "pact/errors.hpp"

namespace pact {

namespace {

std::string set_label(const std::vector<std::string>& names) {
  std::string s = "{";
  for (std::size_t i = 0; i < names.size(); ++i) s += (i ? "," : "") + names[i];
  return s + "}";
}

struct Tables {
  std::vector<std::string> points;
  std::vector<Elem> anchor;
  std::vector<Subset> domains;
  std::vector<std::vector<Point>> maps;
};

void validate_tables(const Groupoid& G, const Tables& t, ValidationReport& report) {
  const auto n = t.points.size();
  const auto& pt = t.points;
  auto nm = [&](Elem g) { return G.name(g); };

  // (i): the identity domains partition the carrier along the anchor.
  for (Point x = 0; x < n; ++x) {
    std::vector<Elem> owners;
    for (auto e : G.identities())
      if (t.domains[e].test(x)) owners.push_back(e);
    if (owners.size() > 1)
      report.add("(i)", {pt[x], nm(owners[0]), nm(owners[1])}, "identity domains are not pairwise disjoint");
    if (owners.empty()) report.add("(i)", {pt[x]}, "point lies in no identity domain");
  }
  for (auto e : G.identities())
    for (Point x = 0; x < n; ++x) {
      if (t.domains[e].test(x) != (t.anchor[x] == e))
        report.add("(i)", {pt[x], nm(e)}, "X_e differs from the anchor fiber p⁻¹(e)");
      const Point want = t.domains[e].test(x) ? x : npos;
      if (t.maps[e][x] != want) report.add("(i)", {nm(e), pt[x]}, "α_e is not the identity on X_e");
    }

  for (Point x = 0; x < n; ++x)
    if (!G.is_identity(t.anchor[x])) report.add("anchor", {pt[x], nm(t.anchor[x])}, "anchor value is not an identity");

  for (Elem g = 0; g < G.size(); ++g) {
    if (!t.domains[g].is_subset_of(t.domains[G.rng(g)]))
      report.add("range", {nm(g)}, "X_g ⊄ X_{r(g)}");
  }

  bool maps_ok = true;
  for (Elem g = 0; g < G.size(); ++g) {
    const Elem gi = G.inv(g);
    Subset image(n);
    for (Point x = 0; x < n; ++x) {
      const Point y = t.maps[g][x];
      if ((y != npos) != t.domains[gi].test(x)) {
        report.add("bijection", {nm(g), pt[x]}, "α_g is not defined exactly on X_{g⁻¹}");
        maps_ok = false;
      }
      if (y == npos) continue;
      if (image.test(y)) {
        report.add("bijection", {nm(g), pt[y]}, "α_g is not injective");
        maps_ok = false;
      }
      image.set(y);
      if (t.maps[gi][y] != x) {
        report.add("inverse-consistency", {nm(g), pt[x]}, "α_{g⁻¹}(α_g(x)) != x");
        maps_ok = false;
      }
    }
    if (image != t.domains[g]) {
      report.add("bijection", {nm(g)}, "α_g(X_{g⁻¹}) != X_g");
      maps_ok = false;
    }
  }
  if (!maps_ok) return;  // (ii) and (iii) assume well-formed bijections

  for (const auto& [g, h] : composable_pairs(G)) {
    const Elem gh = G.compose(g, h);
    const Elem gi = G.inv(g);
    Subset lhs(n);
    for_each_member(t.domains[gi] & t.domains[h], [&](Point x) { lhs.set(t.maps[g][x]); });
    const Subset rhs = t.domains[g] & t.domains[gh];
    if (lhs != rhs) report.add("(ii)", {nm(g), nm(h)}, "α_g(X_{g⁻¹} ∩ X_h) != X_g ∩ X_{gh}");
    for (Point x = 0; x < n; ++x) {
      const Point y = t.maps[h][x];
      if (y == npos || !t.domains[gi].test(y)) continue;
      if (t.maps[g][y] != t.maps[gh][x]) report.add("(iii)", {nm(g), nm(h), pt[x]}, "α_g(α_h(x)) != α_{gh}(x)");
    }
  }

  Subset hit(G.size());
  for (Point x = 0; x < n; ++x)
    if (t.anchor[x] < G.size()) hit.set(t.anchor[x]);
  for (auto e : G.identities())
    if (!hit.test(e)) report.warnings.push_back("anchor is not surjective: fiber of '" + nm(e) + "' is empty");
}

Tables build_tables(const Groupoid& G, const PartialActionData& data) {
  Tables t;
  t.points = data.carrier;
  std::sort(t.points.begin(), t.points.end());
  if (std::adjacent_find(t.points.begin(), t.points.end()) != t.points.end())
    throw StructuralError("carrier: duplicate point name");
  const auto n = t.points.size();
  const auto m = G.size();
  auto point = [&](const std::string& s, const char* where) {
    auto it = std::lower_bound(t.points.begin(), t.points.end(), s);
    if (it == t.points.end() || *it != s)
      throw StructuralError(std::string(where) + ": unknown point '" + s + "'");
    return static_cast<Point>(it - t.points.begin());
  };

  t.anchor.assign(n, npos);
  for (const auto& [x, e] : data.anchor) {
    auto i = point(x, "anchor");
    auto v = G.index(e);
    if (t.anchor[i] != npos && t.anchor[i] != v) throw StructuralError("anchor: conflicting entries for '" + x + "'");
    t.anchor[i] = v;
  }
  for (Point x = 0; x < n; ++x)
    if (t.anchor[x] == npos) throw StructuralError("anchor: no entry for point '" + t.points[x] + "'");

  std::vector<std::optional<Subset>> listed_domain(m);
  for (const auto& [g, xs] : data.domains) {
    auto i = G.index(g);
    if (listed_domain[i]) throw StructuralError("domains: repeated entry for '" + g + "'");
    Subset s(n);
    for (const auto& x : xs) s.set(point(x, "domains"));
    listed_domain[i] = std::move(s);
  }

  std::vector<std::optional<std::vector<Point>>> listed_map(m);
  for (const auto& [g, pairs] : data.maps) {
    auto i = G.index(g);
    if (listed_map[i]) throw StructuralError("maps: repeated entry for '" + g + "'");
    std::vector<Point> table(n, npos);
    for (const auto& [x, y] : pairs) {
      auto a = point(x, "maps");
      auto b = point(y, "maps");
      if (table[a] != npos && table[a] != b)
        throw StructuralError("maps: α_" + g + " sends '" + x + "' to two points");
      table[a] = b;
    }
    listed_map[i] = std::move(table);
  }

  t.maps.assign(m, std::vector<Point>(n, npos));
  t.domains.assign(m, Subset(n));
  for (Elem g = 0; g < m; ++g) {
    if (G.is_identity(g)) continue;
    if (listed_map[g]) {
      t.maps[g] = *listed_map[g];
    } else if (const auto& other = listed_map[G.inv(g)]) {
      for (Point x = 0; x < n; ++x)
        if ((*other)[x] != npos && t.maps[g][(*other)[x]] == npos) t.maps[g][(*other)[x]] = x;
    }
    if (listed_domain[g]) {
      t.domains[g] = *listed_domain[g];
    } else {
      for (auto y : t.maps[g])
        if (y != npos) t.domains[g].set(y);
    }
  }
  for (auto e : G.identities()) {
    if (listed_domain[e]) {
      t.domains[e] = *listed_domain[e];
    } else {
      for (Point x = 0; x < n; ++x)
        if (t.anchor[x] == e) t.domains[e].set(x);
    }
    if (listed_map[e]) {
      t.maps[e] = *listed_map[e];
    } else {
      for_each_member(t.domains[e], [&](Point x) { t.maps[e][x] = x; });
    }
  }
  return t;
}

}  // namespace

ValidationReport validate_partial_action(const Groupoid& G, const PartialActionData& data) {
  auto t = build_tables(G, data);
  ValidationReport report;
  validate_tables(G, t, report);
  return report;
}

ValidationReport validate_partial_action(const PartialAction& A) {
  ValidationReport report;
  Tables t{A.points_, A.anchor_, A.domains_, A.maps_};
  validate_tables(A.groupoid(), t, report);
  return report;
}

PartialAction PartialAction::from_data(std::shared_ptr<const Groupoid> G, const PartialActionData& data) {
  if (!G) throw StructuralError("partial action: no groupoid");
  auto t = build_tables(*G, data);
  return from_tables(std::move(G), std::move(t.points), std::move(t.anchor), std::move(t.domains),
                     std::move(t.maps), true);
}

PartialAction PartialAction::from_data_unchecked(std::shared_ptr<const Groupoid> G, const PartialActionData& data) {
  if (!G) throw StructuralError("partial action: no groupoid");
  auto t = build_tables(*G, data);
  auto A = from_tables(std::move(G), std::move(t.points), std::move(t.anchor), std::move(t.domains),
                       std::move(t.maps), false);
  A.tainted_ = true;
  return A;
}

PartialAction PartialAction::from_tables(std::shared_ptr<const Groupoid> G, std::vector<std::string> points,
                                         std::vector<Elem> anchor, std::vector<Subset> domains,
                                         std::vector<std::vector<Point>> maps, bool validate) {
  if (!G) throw StructuralError("partial action: no groupoid");
  const auto n = points.size();
  if (anchor.size() != n || domains.size() != G->size() || maps.size() != G->size())
    throw StructuralError("partial action: table sizes do not match groupoid and carrier");
  for (const auto& d : domains)
    if (d.size() != n) throw StructuralError("partial action: domain has wrong size");
  for (const auto& mp : maps) {
    if (mp.size() != n) throw StructuralError("partial action: map table has wrong size");
    for (auto y : mp)
      if (y != npos && y >= n) throw StructuralError("partial action: map value out of range");
  }
  for (auto e : anchor)
    if (e >= G->size()) throw StructuralError("partial action: anchor out of range");
  auto sorted = points;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw StructuralError("partial action: duplicate point name");

  PartialAction A;
  A.groupoid_ = std::move(G);
  A.points_ = std::move(points);
  A.anchor_ = std::move(anchor);
  A.domains_ = std::move(domains);
  A.maps_ = std::move(maps);
  A.tainted_ = !validate;
  if (validate) {
    auto report = validate_partial_action(A);
    if (!report.ok()) throw ValidationError("partial action conditions violated:\n" + report.summary(), report);
  }
  return A;
}

PartialActionData PartialAction::to_data() const {
  PartialActionData d;
  const auto& G = groupoid();
  d.carrier = points_;
  for (Point x = 0; x < size(); ++x) d.anchor.emplace_back(points_[x], G.name(anchor_[x]));
  for (Elem g = 0; g < G.size(); ++g) {
    std::vector<std::string> dom;
    for_each_member(domains_[g], [&](Point x) { dom.push_back(points_[x]); });
    d.domains.emplace_back(G.name(g), std::move(dom));
    std::vector<std::pair<std::string, std::string>> pairs;
    for (Point x = 0; x < size(); ++x)
      if (maps_[g][x] != npos) pairs.emplace_back(points_[x], points_[maps_[g][x]]);
    d.maps.emplace_back(G.name(g), std::move(pairs));
  }
  return d;
}

std::optional<Point> PartialAction::find(std::string_view name) const {
  auto it = std::find(points_.begin(), points_.end(), name);
  if (it == points_.end()) return std::nullopt;
  return static_cast<Point>(it - points_.begin());
}

Point PartialAction::index(std::string_view name) const {
  auto x = find(name);
  if (!x) throw StructuralError("unknown point '" + std::string(name) + "'");
  return *x;
}

Point PartialAction::act(Elem g, Point x) const {
  auto y = apply(g, x);
  if (!y) throw InvariantViolation("α_" + groupoid().name(g) + "(" + point(x) + ") is undefined");
  return *y;
}

bool PartialAction::operator==(const PartialAction& other) const {
  return *groupoid_ == *other.groupoid_ && points_ == other.points_ && anchor_ == other.anchor_ &&
         domains_ == other.domains_ && maps_ == other.maps_ && tainted_ == other.tainted_;
}

bool is_global(const PartialAction& A) {
  const auto& G = A.groupoid();
  bool by_domains = true;
  for (Elem g = 0; g < G.size(); ++g) by_domains = by_domains && A.domain(g) == A.domain(G.rng(g));
  bool by_composition = true;
  for (const auto& [g, h] : composable_pairs(G)) {
    const Elem gh = G.compose(g, h);
    for (Point x = 0; x < A.size() && by_composition; ++x) {
      auto direct = A.apply(gh, x);
      auto first = A.apply(h, x);
      auto composite = first ? A.apply(g, *first) : std::nullopt;
      by_composition = direct == composite;
    }
  }
  if (by_domains != by_composition && !A.tainted())
    throw InvariantViolation("is_global: domain and composition characterizations disagree");
  return by_domains;
}

OrbitRelation orbit_relation(const PartialAction& A) {
  const auto n = A.size();
  const auto& G = A.groupoid();
  OrbitRelation rel;
  rel.tainted = A.tainted();
  rel.one_step.assign(n, std::vector<char>(n, 0));
  for (Elem g = 0; g < G.size(); ++g)
    for (Point x = 0; x < n; ++x)
      if (auto y = A.apply(g, x)) rel.one_step[x][*y] = 1;

  bool reflexive = true, symmetric = true;
  for (Point x = 0; x < n; ++x) {
    reflexive = reflexive && rel.one_step[x][x];
    for (Point y = 0; y < n; ++y) {
      symmetric = symmetric && rel.one_step[x][y] == rel.one_step[y][x];
      if (!rel.one_step[x][y]) continue;
      for (Point z = 0; z < n && !rel.witness; ++z)
        if (rel.one_step[y][z] && !rel.one_step[x][z]) rel.witness = std::array<Point, 3>{x, y, z};
    }
  }
  rel.one_step_transitive = !rel.witness;
  if (!A.tainted() && !(reflexive && symmetric && rel.one_step_transitive))
    throw InvariantViolation("orbit relation of a validated partial action is not an equivalence");

  DisjointSets ds(n);
  for (Point x = 0; x < n; ++x)
    for (Point y = 0; y < n; ++y)
      if (rel.one_step[x][y]) ds.unite(x, y);
  rel.orbits = ds.partition();
  return rel;
}

Subset orbit_of(const PartialAction& A, Point x) {
  if (x >= A.size()) throw StructuralError("orbit_of: point out of range");
  Subset out(A.size());
  for (Elem g = 0; g < A.groupoid().size(); ++g)
    if (auto y = A.apply(g, x)) out.set(*y);
  return out;
}

OrbitMap orbit_map(const PartialAction& A, Point x) {
  if (x >= A.size()) throw StructuralError("orbit_map: point out of range");
  const auto& G = A.groupoid();
  OrbitMap om{Subset(G.size()), std::vector<Point>(G.size(), npos)};
  for (Elem g = 0; g < G.size(); ++g)
    if (auto y = A.apply(g, x)) {
      om.domain.set(g);
      om.table[g] = *y;
    }
  return om;
}

Subset stabilizer(const PartialAction& A, Point x) {
  if (x >= A.size()) throw StructuralError("stabilizer: point out of range");
  const auto& G = A.groupoid();
  Subset stab(G.size());
  for (Elem g = 0; g < G.size(); ++g)
    if (A.apply(g, x) == x) stab.set(g);
  if (!A.tainted()) {
    const Elem e = A.anchor(x);
    bool ok = stab.test(e);
    for_each_member(stab, [&](Elem g) {
      ok = ok && G.src(g) == e && G.rng(g) == e && stab.test(G.inv(g));
      for_each_member(stab, [&](Elem h) { ok = ok && stab.test(G.compose(g, h)); });
    });
    if (!ok) throw InvariantViolation("stabilizer of '" + A.point(x) + "' is not a subgroup of its isotropy group");
  }
  return stab;
}

Classification classify(const PartialAction& A) {
  Classification c;
  const Subset all = full_subset(A.size());
  for (Point x = 0; x < A.size() && !c.transitive; ++x) c.transitive = orbit_of(A, x) == all;
  c.free = true;
  for (Point x = 0; x < A.size() && c.free; ++x) {
    auto stab = stabilizer(A, x);
    c.free = stab.count() == 1 && stab.test(A.anchor(x));
  }
  return c;
}

PartialAction restrict(const PartialAction& B, const Subset& S) {
  if (S.size() != B.size()) throw StructuralError("restrict: subset is not a subset of the carrier");
  const auto& G = B.groupoid();
  const auto pts = members(S);
  std::vector<Point> pos(B.size(), npos);
  for (std::size_t i = 0; i < pts.size(); ++i) pos[pts[i]] = i;
  const auto n = pts.size();

  std::vector<std::string> names;
  std::vector<Elem> anchor;
  for (auto y : pts) {
    names.push_back(B.point(y));
    anchor.push_back(B.anchor(y));
  }
  // S_g = S ∩ β_g(S ∩ Y_{g⁻¹}); α_g = β_g on S_{g⁻¹}.
  std::vector<Subset> big_domains(G.size(), Subset(B.size()));
  for (Elem g = 0; g < G.size(); ++g)
    for_each_member(S & B.domain(G.inv(g)), [&](Point y) {
      if (auto z = B.apply(g, y); z && S.test(*z)) big_domains[g].set(*z);
    });
  std::vector<Subset> domains(G.size(), Subset(n));
  std::vector<std::vector<Point>> maps(G.size(), std::vector<Point>(n, npos));
  for (Elem g = 0; g < G.size(); ++g) {
    for_each_member(big_domains[g], [&](Point y) { domains[g].set(pos[y]); });
    for_each_member(big_domains[G.inv(g)], [&](Point y) {
      if (auto z = B.apply(g, y); z && S.test(*z)) maps[g][pos[y]] = pos[*z];
    });
  }
  return PartialAction::from_tables(B.groupoid_ptr(), std::move(names), std::move(anchor), std::move(domains),
                                    std::move(maps), !B.tainted());
}

bool is_invariant(const PartialAction& B, const Subset& S) {
  if (S.size() != B.size()) throw StructuralError("is_invariant: subset is not a subset of the carrier");
  for (Elem g = 0; g < B.groupoid().size(); ++g)
    for (Point y = 0; y < B.size(); ++y)
      if (S.test(y))
        if (auto z = B.apply(g, y); z && !S.test(*z)) return false;
  return true;
}

Subset invariant_closure(const PartialAction& B, const Subset& S) {
  if (!is_global(B)) throw PreconditionError("invariant_closure: the action must be global");
  const auto& G = B.groupoid();
  const auto R = restrict(B, S);
  const auto pts = members(S);
  Subset out(B.size());
  for (Elem h = 0; h < G.size(); ++h)
    for_each_member(R.domain(G.src(h)), [&](Point i) { out.set(B.act(h, pts[i])); });
  return out;
}

PartialAction restrict_to_isotropy(const PartialAction& A, Elem e) {
  const auto& G = A.groupoid();
  auto Ge = std::make_shared<const Groupoid>(isotropy_group(G, e));
  const auto pts = members(A.domain(e));
  std::vector<Point> pos(A.size(), npos);
  for (std::size_t i = 0; i < pts.size(); ++i) pos[pts[i]] = i;
  const auto n = pts.size();
  std::vector<std::string> names;
  for (auto x : pts) names.push_back(A.point(x));
  std::vector<Elem> anchor(n, Ge->identities().front());
  std::vector<Subset> domains(Ge->size(), Subset(n));
  std::vector<std::vector<Point>> maps(Ge->size(), std::vector<Point>(n, npos));
  for (Elem k = 0; k < Ge->size(); ++k) {
    const Elem g = G.index(Ge->name(k));
    for_each_member(A.domain(g), [&](Point x) { domains[k].set(pos[x]); });
    for (auto x : pts)
      if (auto y = A.apply(g, x)) maps[k][pos[x]] = pos[*y];
  }
  return PartialAction::from_tables(std::move(Ge), std::move(names), std::move(anchor), std::move(domains),
                                    std::move(maps), !A.tainted());
}

PartialAction relabel(const PartialAction& A, std::shared_ptr<const Groupoid> G_renamed,
                      const std::map<std::string, std::string>& elem_renaming,
                      const std::map<std::string, std::string>& point_renaming) {
  auto rn = [](const std::map<std::string, std::string>& m, const std::string& s) {
    auto it = m.find(s);
    if (it == m.end()) throw StructuralError("relabel: no new name for '" + s + "'");
    return it->second;
  };
  auto d = A.to_data();
  PartialActionData out;
  for (const auto& x : d.carrier) out.carrier.push_back(rn(point_renaming, x));
  for (const auto& [x, e] : d.anchor) out.anchor.emplace_back(rn(point_renaming, x), rn(elem_renaming, e));
  for (const auto& [g, xs] : d.domains) {
    std::vector<std::string> ys;
    for (const auto& x : xs) ys.push_back(rn(point_renaming, x));
    out.domains.emplace_back(rn(elem_renaming, g), std::move(ys));
  }
  for (const auto& [g, pairs] : d.maps) {
    std::vector<std::pair<std::string, std::string>> ps;
    for (const auto& [x, y] : pairs) ps.emplace_back(rn(point_renaming, x), rn(point_renaming, y));
    out.maps.emplace_back(rn(elem_renaming, g), std::move(ps));
  }
  return A.tainted() ? PartialAction::from_data_unchecked(std::move(G_renamed), out)
                     : PartialAction::from_data(std::move(G_renamed), out);
}

ActionGraph action_graph(const PartialAction& A) {
  const auto m = A.groupoid().size();
  const auto n = A.size();
  ActionGraph gr{Subset(m * n), Subset(m * n * n)};
  for (Elem g = 0; g < m; ++g)
    for (Point x = 0; x < n; ++x)
      if (auto y = A.apply(g, x)) {
        gr.gamma.set(g * n + x);
        gr.full_graph.set((g * n + x) * n + *y);
      }
  return gr;
}

namespace {

void check_carriers(const PartialAction& A, const FiniteTopology& T_G, const FiniteTopology& T_X) {
  if (T_G.labels() != A.groupoid().names())
    throw StructuralError("topology on G does not have the groupoid's elements as carrier");
  if (T_X.labels() != A.points()) throw StructuralError("topology on X does not have the action's carrier");
}

}  // namespace

ActionGraphReport action_graphs(const PartialAction& A, const FiniteTopology& T_G, const FiniteTopology& T_X) {
  check_carriers(A, T_G, T_X);
  const auto gr = action_graph(A);
  const auto GX = product(T_G, T_X);
  ActionGraphReport rep;
  rep.graph_open = is_open(GX, gr.gamma);
  rep.graph_closed = is_closed(product(GX, T_X), gr.full_graph);
  return rep;
}

TopologicalActionReport check_topological_action(const PartialAction& A, const FiniteTopology& T_G,
                                                 const FiniteTopology& T_X) {
  check_carriers(A, T_G, T_X);
  const auto& G = A.groupoid();
  const auto n = A.size();
  TopologicalActionReport rep;
  rep.groupoid = star_open_report(G, T_G);

  const auto gr = action_graph(A);
  const auto GX = product(T_G, T_X);
  rep.graph_open = is_open(GX, gr.gamma);

  std::vector<std::size_t> anchor(n);
  for (Point x = 0; x < n; ++x) anchor[x] = A.anchor(x);
  rep.anchor_continuous = is_continuous(anchor, T_X, T_G);

  std::vector<std::size_t> values;
  for_each_member(gr.gamma, [&](std::size_t i) { values.push_back(A.act(i / n, i % n)); });
  rep.action_continuous = is_continuous(values, subspace(GX, gr.gamma), T_X);

  rep.maps_homeomorphisms = true;
  for (Elem g = 0; g < G.size() && rep.maps_homeomorphisms; ++g) {
    const auto dom = members(A.domain(G.inv(g)));
    const auto cod = members(A.domain(g));
    std::vector<std::size_t> f;
    for (auto x : dom)
      f.push_back(static_cast<std::size_t>(std::find(cod.begin(), cod.end(), A.act(g, x)) - cod.begin()));
    rep.maps_homeomorphisms =
        is_continuous(f, subspace(T_X, A.domain(G.inv(g))), subspace(T_X, A.domain(g)));
  }
  return rep;
}

OrbitSpace orbit_space(const PartialAction& A, const FiniteTopology* T_X, const FiniteTopology* T_G) {
  OrbitSpace os;
  os.orbits = orbit_relation(A).orbits;
  os.projection = os.orbits.class_of;
  for (const auto& cls : os.orbits.classes) {
    std::vector<std::string> names;
    for (auto x : cls) names.push_back(A.point(x));
    os.labels.push_back(set_label(names));
  }
  if (!T_X) return os;

  const auto TG = T_G ? *T_G : FiniteTopology::discrete(A.groupoid().names());
  check_carriers(A, TG, *T_X);
  os.topology = quotient(*T_X, os.orbits, os.labels);

  const auto& G = A.groupoid();
  const auto n = A.size();
  const auto opens = n <= 16 ? open_sets(*T_X) : [&] {
    std::vector<Subset> basis;
    for (Point x = 0; x < n; ++x) basis.push_back(T_X->min_open(x));
    return basis;
  }();
  bool formula = true;
  for (const auto& U : opens) {
    Subset saturated(n);
    for_each_member(U, [&](Point x) {
      for (auto y : os.orbits.classes[os.orbits.class_of[x]]) saturated.set(y);
    });
    Subset translates(n);
    for (Elem g = 0; g < G.size(); ++g)
      for_each_member(U & A.domain(G.inv(g)), [&](Point x) { translates.set(A.act(g, x)); });
    formula = formula && saturated == translates;
  }
  os.preimage_formula_holds = formula;
  os.projection_open = is_open_map(os.projection, *T_X, *os.topology);
  os.topological_action = check_topological_action(A, TG, *T_X).action_ok();

  if (!A.tainted()) {
    if (!formula) throw InvariantViolation("orbit_space: π⁻¹(π(U)) differs from ⋃ α_g(U ∩ X_{g⁻¹})");
    if (*os.topological_action && !*os.projection_open)
      throw InvariantViolation("orbit_space: projection is not open for a graph-open continuous action");
  }
  return os;
}

}  // namespace pact
