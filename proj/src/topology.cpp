#include "pact/topology.hpp"

#include <algorithm>

#include "pact/errors.hpp"

namespace pact {

FiniteTopology::FiniteTopology(std::vector<std::string> labels, std::vector<Subset> min_open)
    : labels_(std::move(labels)), min_open_(std::move(min_open)) {
  const auto n = labels_.size();
  if (min_open_.size() != n) throw StructuralError("topology: one minimal open set per point required");
  auto sorted = labels_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw StructuralError("topology: duplicate point label");
  ValidationReport report;
  for (std::size_t x = 0; x < n; ++x) {
    if (min_open_[x].size() != n) throw StructuralError("topology: minimal open set has wrong size");
    if (!min_open_[x].test(x)) report.add("min-open-contains-point", {labels_[x]}, "x ∉ min_open(x)");
    for_each_member(min_open_[x], [&](std::size_t y) {
      if (!min_open_[y].is_subset_of(min_open_[x]))
        report.add("min-open-preorder", {labels_[x], labels_[y]}, "y ∈ min_open(x) but min_open(y) ⊄ min_open(x)");
    });
  }
  if (!report.ok()) throw ValidationError("invalid finite topology:\n" + report.summary(), report);
}

FiniteTopology FiniteTopology::from_named(
    std::vector<std::string> carrier,
    const std::vector<std::pair<std::string, std::vector<std::string>>>& min_open) {
  std::sort(carrier.begin(), carrier.end());
  auto idx = [&](const std::string& s) {
    auto it = std::lower_bound(carrier.begin(), carrier.end(), s);
    if (it == carrier.end() || *it != s) throw StructuralError("topology: unknown point '" + s + "'");
    return static_cast<std::size_t>(it - carrier.begin());
  };
  const auto n = carrier.size();
  std::vector<Subset> mins(n, Subset(n));
  std::vector<bool> given(n, false);
  for (const auto& [x, nbhd] : min_open) {
    auto i = idx(x);
    if (given[i]) throw StructuralError("topology: repeated entry for '" + x + "'");
    given[i] = true;
    for (const auto& y : nbhd) mins[i].set(idx(y));
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!given[i]) mins[i].set(i);
  return FiniteTopology(std::move(carrier), std::move(mins));
}

FiniteTopology FiniteTopology::discrete(std::vector<std::string> labels) {
  const auto n = labels.size();
  std::vector<Subset> mins(n, Subset(n));
  for (std::size_t i = 0; i < n; ++i) mins[i].set(i);
  return FiniteTopology(std::move(labels), std::move(mins));
}

FiniteTopology FiniteTopology::indiscrete(std::vector<std::string> labels) {
  const auto n = labels.size();
  return FiniteTopology(std::move(labels), std::vector<Subset>(n, full_subset(n)));
}

std::size_t FiniteTopology::index(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw StructuralError("topology: unknown point '" + std::string(label) + "'");
  return static_cast<std::size_t>(it - labels_.begin());
}

namespace {

void check_subset(const FiniteTopology& T, const Subset& S) {
  if (S.size() != T.size()) throw StructuralError("subset is not a subset of the topology's carrier");
}

}  // namespace

bool is_open(const FiniteTopology& T, const Subset& S) {
  check_subset(T, S);
  for (auto x = S.find_first(); x != Subset::npos; x = S.find_next(x))
    if (!T.min_open(x).is_subset_of(S)) return false;
  return true;
}

bool is_closed(const FiniteTopology& T, const Subset& S) {
  check_subset(T, S);
  return is_open(T, ~S);
}

Subset closure(const FiniteTopology& T, const Subset& S) {
  check_subset(T, S);
  // x ∈ cl(S) iff every neighbourhood of x meets S iff min_open(x) meets S.
  Subset out(T.size());
  for (std::size_t x = 0; x < T.size(); ++x)
    if (T.min_open(x).intersects(S)) out.set(x);
  return out;
}

Subset open_hull(const FiniteTopology& T, const Subset& S) {
  check_subset(T, S);
  Subset out(T.size());
  for_each_member(S, [&](std::size_t x) { out |= T.min_open(x); });
  return out;
}

std::vector<Subset> open_sets(const FiniteTopology& T) {
  const auto n = T.size();
  if (n > 20) throw PreconditionError("open_sets: carrier too large to enumerate");
  std::vector<Subset> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Subset S(n, mask);
    if (is_open(T, S)) out.push_back(std::move(S));
  }
  return out;
}

FiniteTopology product(const FiniteTopology& T1, const FiniteTopology& T2) {
  const auto n1 = T1.size();
  const auto n2 = T2.size();
  std::vector<std::string> labels;
  std::vector<Subset> mins;
  labels.reserve(n1 * n2);
  mins.reserve(n1 * n2);
  for (std::size_t a = 0; a < n1; ++a)
    for (std::size_t b = 0; b < n2; ++b) {
      labels.push_back("(" + T1.label(a) + "," + T2.label(b) + ")");
      Subset m(n1 * n2);
      for_each_member(T1.min_open(a), [&](std::size_t a2) {
        for_each_member(T2.min_open(b), [&](std::size_t b2) { m.set(a2 * n2 + b2); });
      });
      mins.push_back(std::move(m));
    }
  return FiniteTopology(std::move(labels), std::move(mins));
}

FiniteTopology subspace(const FiniteTopology& T, const Subset& S) {
  check_subset(T, S);
  const auto pts = members(S);
  std::vector<std::size_t> pos(T.size(), npos);
  for (std::size_t i = 0; i < pts.size(); ++i) pos[pts[i]] = i;
  std::vector<std::string> labels;
  std::vector<Subset> mins;
  for (auto x : pts) {
    labels.push_back(T.label(x));
    Subset m(pts.size());
    for_each_member(T.min_open(x) & S, [&](std::size_t y) { m.set(pos[y]); });
    mins.push_back(std::move(m));
  }
  return FiniteTopology(std::move(labels), std::move(mins));
}

FiniteTopology quotient(const FiniteTopology& T, const Partition& classes, std::vector<std::string> class_labels) {
  const auto n = T.size();
  if (n > kQuotientCarrierCap)
    throw PreconditionError("quotient: carrier exceeds " + std::to_string(kQuotientCarrierCap) + " points");
  if (classes.class_of.size() != n) throw StructuralError("quotient: partition does not cover the carrier");
  const auto k = classes.size();
  if (class_labels.size() != k) throw StructuralError("quotient: one label per class required");

  auto saturate = [&](const Subset& S) {
    Subset out(n);
    for_each_member(S, [&](std::size_t x) {
      for (auto y : classes.classes[classes.class_of[x]]) out.set(y);
    });
    return out;
  };

  // Least open saturated set containing a class: alternate saturation and
  // open hull until stable. Its image is the least open set of the quotient
  // containing that class.
  std::vector<Subset> mins;
  for (std::size_t c = 0; c < k; ++c) {
    Subset S(n);
    for (auto x : classes.classes[c]) S.set(x);
    for (;;) {
      Subset next = saturate(open_hull(T, S));
      if (next == S) break;
      S = std::move(next);
    }
    Subset m(k);
    for_each_member(S, [&](std::size_t x) { m.set(classes.class_of[x]); });
    mins.push_back(std::move(m));
  }
  return FiniteTopology(std::move(class_labels), std::move(mins));
}

namespace {

void check_map(std::span<const std::size_t> f, const FiniteTopology& T_dom, const FiniteTopology& T_cod) {
  if (f.size() != T_dom.size()) throw StructuralError("map is not total on its domain");
  for (auto y : f)
    if (y >= T_cod.size()) throw StructuralError("map value outside codomain");
}

Subset image(std::span<const std::size_t> f, const Subset& S, std::size_t n_cod) {
  Subset out(n_cod);
  for_each_member(S, [&](std::size_t x) { out.set(f[x]); });
  return out;
}

}  // namespace

bool is_continuous(std::span<const std::size_t> f, const FiniteTopology& T_dom, const FiniteTopology& T_cod) {
  check_map(f, T_dom, T_cod);
  // Every open set is a union of minimal opens and preimages commute with
  // unions, so it suffices that each min_open(y) pulls back to an open set.
  for (std::size_t y = 0; y < T_cod.size(); ++y) {
    Subset pre(T_dom.size());
    for (std::size_t x = 0; x < f.size(); ++x)
      if (T_cod.min_open(y).test(f[x])) pre.set(x);
    if (!is_open(T_dom, pre)) return false;
  }
  return true;
}

bool is_open_map(std::span<const std::size_t> f, const FiniteTopology& T_dom, const FiniteTopology& T_cod) {
  check_map(f, T_dom, T_cod);
  for (std::size_t x = 0; x < T_dom.size(); ++x)
    if (!is_open(T_cod, image(f, T_dom.min_open(x), T_cod.size()))) return false;
  return true;
}

bool is_hausdorff(const FiniteTopology& T) {
  // Minimal opens are the smallest neighbourhoods: disjoint neighbourhoods of
  // x and y exist iff the minimal ones are disjoint.
  for (std::size_t x = 0; x < T.size(); ++x)
    for (std::size_t y = x + 1; y < T.size(); ++y)
      if (T.min_open(x).intersects(T.min_open(y))) return false;
  return true;
}

StarOpenReport star_open_report(const Groupoid& G, const FiniteTopology& T_G) {
  if (T_G.labels() != G.names()) throw StructuralError("star_open_report: topology carrier is not the groupoid");
  const auto n = G.size();
  std::vector<std::size_t> inv(n), d(n), r(n);
  for (Elem g = 0; g < n; ++g) {
    inv[g] = G.inv(g);
    d[g] = G.src(g);
    r[g] = G.rng(g);
  }
  StarOpenReport rep;
  // inv is an involution, so continuity makes it a homeomorphism.
  rep.inv_homeomorphism = is_continuous(inv, T_G, T_G);
  rep.d_continuous = is_continuous(d, T_G, T_G);
  rep.r_continuous = is_continuous(r, T_G, T_G);

  Subset composable(n * n);
  std::vector<std::size_t> mul_on_pairs;
  for (Elem g = 0; g < n; ++g)
    for (Elem h = 0; h < n; ++h)
      if (auto gh = G.mul(g, h)) {
        composable.set(g * n + h);
        mul_on_pairs.push_back(*gh);
      }
  rep.mul_continuous = is_continuous(mul_on_pairs, subspace(product(T_G, T_G), composable), T_G);

  rep.d_fibers_open = true;
  rep.r_fibers_open = true;
  Subset units(n);
  for (auto e : G.identities()) {
    units.set(e);
    auto f = star_fibers(G, e);
    rep.d_fibers_open = rep.d_fibers_open && is_open(T_G, f.d_fiber);
    rep.r_fibers_open = rep.r_fibers_open && is_open(T_G, f.r_fiber);
  }
  const auto T0 = subspace(T_G, units);
  rep.identities_discrete = true;
  for (std::size_t i = 0; i < T0.size(); ++i)
    rep.identities_discrete = rep.identities_discrete && T0.min_open(i).count() == 1;

  if (rep.inv_homeomorphism && rep.d_fibers_open != rep.r_fibers_open)
    throw InvariantViolation("star_open_report: inv is a homeomorphism but d- and r-fiber openness differ");
  if (rep.d_continuous && rep.identities_discrete && !rep.d_fibers_open)
    throw InvariantViolation("star_open_report: G₀ discrete and d continuous but a d-fiber is not open");
  return rep;
}

}  // namespace pact
