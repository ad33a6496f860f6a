#include "pact/globalization.hpp"

#include <algorithm>

#include "pact/errors.hpp"

namespace pact {

namespace {

[[noreturn]] void fail(const PartialAction& A, const std::string& what) {
  if (A.tainted()) throw PreconditionError(what);
  throw InvariantViolation(what);
}

std::string pair_label(const PartialAction& A, std::pair<Elem, Point> gx) {
  return "[" + A.groupoid().name(gx.first) + "," + A.point(gx.second) + "]";
}

std::vector<std::pair<Elem, Point>> fiber_product(const PartialAction& A) {
  const auto& G = A.groupoid();
  std::vector<std::pair<Elem, Point>> pairs;
  for (Elem g = 0; g < G.size(); ++g)
    for (Point x = 0; x < A.size(); ++x)
      if (A.anchor(x) == G.src(g)) pairs.emplace_back(g, x);
  return pairs;
}

// (g,x) ∼ (h,y) iff r(g) = r(h), x ∈ M_{g⁻¹h} and y = α_{h⁻¹g}(x).
bool related(const PartialAction& A, std::pair<Elem, Point> a, std::pair<Elem, Point> b) {
  const auto& G = A.groupoid();
  auto [g, x] = a;
  auto [h, y] = b;
  if (G.rng(g) != G.rng(h)) return false;
  Elem k = G.compose(G.inv(g), h);
  if (!A.domain(k).test(x)) return false;
  auto z = A.apply(G.inv(k), x);
  return z && *z == y;
}

std::size_t pair_index(const std::vector<std::pair<Elem, Point>>& pairs, std::pair<Elem, Point> gx) {
  auto it = std::lower_bound(pairs.begin(), pairs.end(), gx);
  if (it == pairs.end() || *it != gx) return npos;
  return static_cast<std::size_t>(it - pairs.begin());
}

// Builds β on the classes. With `checked`, β_g is evaluated on every member.
EnvelopingAction assemble(std::shared_ptr<const PartialAction> A, std::vector<std::pair<Elem, Point>> pairs,
                          Partition classes, bool checked) {
  const auto& G = A->groupoid();
  const std::size_t n = classes.size();

  std::vector<std::string> labels(n);
  std::vector<Elem> anchor(n);
  for (std::size_t c = 0; c < n; ++c) {
    auto rep = pairs[classes.classes[c].front()];
    labels[c] = pair_label(*A, rep);
    anchor[c] = G.rng(rep.first);
    if (checked)
      for (auto m : classes.classes[c])
        if (G.rng(pairs[m].first) != anchor[c])
          fail(*A, "globalize: anchor differs within class " + labels[c]);
  }

  std::vector<Subset> domains(G.size(), Subset(n));
  std::vector<std::vector<Point>> maps(G.size(), std::vector<Point>(n, npos));
  for (Elem g = 0; g < G.size(); ++g) {
    for (std::size_t c = 0; c < n; ++c)
      if (anchor[c] == G.rng(g)) domains[g].set(c);
    for (std::size_t c = 0; c < n; ++c) {
      if (anchor[c] != G.src(g)) continue;
      const auto& cls = classes.classes[c];
      const std::size_t last = checked ? cls.size() : 1;
      std::size_t image = npos;
      for (std::size_t i = 0; i < last; ++i) {
        auto [h, x] = pairs[cls[i]];
        auto j = pair_index(pairs, {G.compose(g, h), x});
        if (j == npos) fail(*A, "globalize: (gh,x) is not in G ×_p M");
        auto d = classes.class_of[j];
        if (image != npos && image != d)
          fail(*A, "globalize: β_" + G.name(g) + " depends on the representative of " + labels[c]);
        image = d;
      }
      maps[g][c] = image;
    }
  }

  std::vector<Point> embedding(A->size());
  for (Point x = 0; x < A->size(); ++x) {
    auto j = pair_index(pairs, {A->anchor(x), x});
    embedding[x] = classes.class_of[j];
  }

  std::shared_ptr<const PartialAction> action;
  try {
    action = std::make_shared<const PartialAction>(PartialAction::from_tables(
        A->groupoid_ptr(), std::move(labels), std::move(anchor), std::move(domains), std::move(maps),
        checked && !A->tainted()));
  } catch (const ValidationError& e) {
    throw InvariantViolation(std::string("globalize: enveloping action fails validation\n") + e.what());
  }
  return EnvelopingAction{std::move(A), std::move(pairs), std::move(classes), std::move(action),
                          std::move(embedding)};
}

Subset image_of(const std::vector<Point>& f, const Subset& S, std::size_t n) {
  Subset out(n);
  for_each_member(S, [&](std::size_t x) { out.set(f[x]); });
  return out;
}

// β_g(S ∩ Y_{g⁻¹}).
Subset translate(const PartialAction& B, Elem g, const Subset& S) {
  Subset out(B.size());
  for_each_member(S, [&](std::size_t y) {
    if (auto z = B.apply(g, y)) out.set(*z);
  });
  return out;
}

std::string first_member_name(const PartialAction& B, const Subset& S) {
  auto i = S.find_first();
  return i == Subset::npos ? std::string("-") : B.point(i);
}

}  // namespace

Globalization self_globalization(std::shared_ptr<const PartialAction> global_action) {
  if (!is_global(*global_action)) throw PreconditionError("self_globalization: action is not global");
  std::vector<Point> id(global_action->size());
  for (Point x = 0; x < id.size(); ++x) id[x] = x;
  return {global_action, global_action, std::move(id)};
}

EnvelopingAction globalize(std::shared_ptr<const PartialAction> A) {
  auto pairs = fiber_product(*A);
  const std::size_t N = pairs.size();

  std::vector<Subset> rel(N, Subset(N));
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      if (related(*A, pairs[i], pairs[j])) rel[i].set(j);

  for (std::size_t i = 0; i < N; ++i) {
    if (!rel[i].test(i)) fail(*A, "globalize: relation is not reflexive at " + pair_label(*A, pairs[i]));
    for (auto j = rel[i].find_first(); j != Subset::npos; j = rel[i].find_next(j)) {
      if (!rel[j].test(i))
        fail(*A, "globalize: relation is not symmetric at " + pair_label(*A, pairs[i]) + ", " +
                     pair_label(*A, pairs[j]));
      if (!rel[j].is_subset_of(rel[i])) {
        auto k = (rel[j] - rel[i]).find_first();
        fail(*A, "globalize: relation is not transitive at " + pair_label(*A, pairs[i]) + ", " +
                     pair_label(*A, pairs[j]) + ", " + pair_label(*A, pairs[k]));
      }
    }
  }

  DisjointSets dsu(N);
  for (std::size_t i = 0; i < N; ++i)
    for (auto j = rel[i].find_next(i); j != Subset::npos; j = rel[i].find_next(j)) dsu.unite(i, j);
  return assemble(std::move(A), std::move(pairs), dsu.partition(), true);
}

EnvelopingAction envelope_from_partition(std::shared_ptr<const PartialAction> A, const Partition& classes) {
  auto pairs = fiber_product(*A);
  if (classes.class_of.size() != pairs.size())
    throw StructuralError("envelope_from_partition: partition size differs from |G ×_p M|");
  return assemble(std::move(A), std::move(pairs), classes, false);
}

ValidationReport verify_globalization(const Globalization& E) {
  const auto& X = *E.base;
  const auto& Y = *E.action;
  if (!(X.groupoid() == Y.groupoid()))
    throw PreconditionError("verify_globalization: actions are over different groupoids");
  if (E.embedding.size() != X.size()) throw StructuralError("verify_globalization: embedding is not total");
  for (auto y : E.embedding)
    if (y >= Y.size()) throw StructuralError("verify_globalization: embedding value outside the carrier");

  const auto& G = X.groupoid();
  const std::size_t m = Y.size();
  ValidationReport report;

  std::vector<Point> seen(m, npos);
  for (Point x = 0; x < X.size(); ++x) {
    auto y = E.embedding[x];
    if (seen[y] != npos) report.add("embedding", {X.point(seen[y]), X.point(x)}, "ι is not injective");
    seen[y] = x;
  }
  if (!is_global(Y)) report.add("global", {}, "β is not global");

  const Subset iX = image_of(E.embedding, full_subset(X.size()), m);
  for (Elem g = 0; g < G.size(); ++g) {
    Subset lhs = image_of(E.embedding, X.domain(g), m);
    Subset rhs = iX & translate(Y, g, iX & Y.domain(G.inv(g)));
    if (lhs != rhs)
      report.add("(i)", {G.name(g), first_member_name(Y, lhs ^ rhs)}, "ι(X_g) != ι(X) ∩ β_g(ι(X) ∩ Y_{g⁻¹})");
  }

  for (Elem g = 0; g < G.size(); ++g)
    for (Point x = 0; x < X.size(); ++x) {
      auto ax = X.apply(g, x);
      if (!ax) continue;
      auto b = Y.apply(g, E.embedding[x]);
      if (!b || *b != E.embedding[*ax])
        report.add("(ii)", {G.name(g), X.point(x)}, "β_g(ι(x)) != ι(α_g(x))");
    }

  for (Elem g = 0; g < G.size(); ++g) {
    Subset rhs(m);
    for (Elem h = 0; h < G.size(); ++h)
      if (G.rng(h) == G.rng(g))
        rhs |= translate(Y, h, image_of(E.embedding, X.domain(G.src(h)), m));
    if (Y.domain(g) != rhs)
      report.add("(iii)", {G.name(g), first_member_name(Y, Y.domain(g) ^ rhs)},
                 "Y_g != ⋃_{r(h)=r(g)} β_h(ι(X_{d(h)}))");
  }
  return report;
}

RestrictBack restrict_back(const Globalization& E) {
  const std::size_t m = E.action->size();
  Subset iX = image_of(E.embedding, full_subset(E.base->size()), m);
  auto R = std::make_shared<const PartialAction>(restrict(*E.action, iX));

  // Restricted points are the members of ι(X) in increasing order.
  std::vector<Point> position(m, npos);
  Point next = 0;
  for_each_member(iX, [&](std::size_t y) { position[y] = next++; });

  GMap f{E.base, R, std::vector<Point>(E.base->size())};
  for (Point x = 0; x < f.table.size(); ++x) f.table[x] = position[E.embedding[x]];
  auto report = validate_gmap(f);
  if (!report.ok() || !f.is_bijective())
    fail(*E.base, "restrict_back: ι is not an isomorphism onto the restriction\n" + report.summary());
  inverse_gmap(f);
  return {std::move(R), std::move(f)};
}

GMap compare_globalizations(const Globalization& E1, const Globalization& E2) {
  if (!(*E1.base == *E2.base)) throw PreconditionError("compare_globalizations: different base actions");
  const auto& X = *E1.base;
  const auto& Y1 = *E1.action;
  const auto& Y2 = *E2.action;
  const auto& G = X.groupoid();

  // φ̃(β₁_h(ι₁(x))) = β₂_h(ι₂(x)) for every (h, x) with p(x) = d(h).
  GMap phi{E1.action, E2.action, std::vector<Point>(Y1.size(), npos)};
  for (Elem h = 0; h < G.size(); ++h)
    for (Point x = 0; x < X.size(); ++x) {
      if (X.anchor(x) != G.src(h)) continue;
      auto a = Y1.apply(h, E1.embedding[x]);
      auto b = Y2.apply(h, E2.embedding[x]);
      if (!a || !b)
        throw InvariantViolation("compare_globalizations: β_h(ι(x)) undefined at h=" + G.name(h) +
                                 ", x=" + X.point(x));
      if (phi.table[*a] != npos && phi.table[*a] != *b)
        throw InvariantViolation("compare_globalizations: φ̃ is not well defined at " + Y1.point(*a) +
                                 " (h=" + G.name(h) + ", x=" + X.point(x) + ")");
      phi.table[*a] = *b;
    }
  for (Point y = 0; y < Y1.size(); ++y)
    if (phi.table[y] == npos)
      throw InvariantViolation("compare_globalizations: φ̃ is undefined at " + Y1.point(y));
  if (!phi.is_bijective()) throw InvariantViolation("compare_globalizations: φ̃ is not bijective");
  auto report = validate_gmap(phi);
  if (!report.ok())
    throw InvariantViolation("compare_globalizations: φ̃ is not a G-map\n" + report.summary());
  inverse_gmap(phi);
  return phi;
}

EnvelopeTopologyReport envelope_topology(const EnvelopingAction& E, const FiniteTopology& T_G,
                                         const FiniteTopology& T_M) {
  const auto& A = *E.base;
  const auto& B = *E.action;
  const auto& G = A.groupoid();
  if (T_G.labels() != G.names()) throw StructuralError("envelope_topology: T_G carrier is not the groupoid");
  if (T_M.labels() != A.points()) throw StructuralError("envelope_topology: T_M carrier is not the base carrier");

  EnvelopeTopologyReport out;
  out.preconditions = check_topological_action(A, T_G, T_M);
  out.graph_open = out.preconditions.graph_open;
  if (!out.preconditions.ok()) {
    out.skipped_reason = "preconditions: base is not a graph open continuous action of a star open groupoid";
    return out;
  }
  if (G.size() * A.size() > kEnvelopeTopologyCap) {
    out.skipped_reason = "size: |G|·|M| exceeds " + std::to_string(kEnvelopeTopologyCap);
    return out;
  }
  out.checked = true;

  const std::size_t nM = A.size();
  const std::size_t N = E.pairs.size();
  const std::size_t n = B.size();

  FiniteTopology T_GM = product(T_G, T_M);
  Subset mbar(T_GM.size());
  for (auto [g, x] : E.pairs) mbar.set(g * nM + x);
  FiniteTopology T_bar = subspace(T_GM, mbar);  // point i is E.pairs[i]

  FiniteTopology T_MG = quotient(T_bar, E.classes, B.points());
  const auto& pi = E.classes.class_of;
  out.pi_open = is_open_map(pi, T_bar, T_MG);

  // π⁻¹(π((V×U)∩M̄)) = ⋃_k R_{k⁻¹}(V∩d⁻¹(d(k))) × α_k(U∩M_{k⁻¹}) on basic opens.
  out.fiber_formula_holds = true;
  for (Elem g0 = 0; g0 < G.size() && out.fiber_formula_holds; ++g0)
    for (Point x0 = 0; x0 < nM && out.fiber_formula_holds; ++x0) {
      const Subset& V = T_G.min_open(g0);
      const Subset& U = T_M.min_open(x0);
      Subset classes_hit(n);
      for (std::size_t i = 0; i < N; ++i)
        if (V.test(E.pairs[i].first) && U.test(E.pairs[i].second)) classes_hit.set(pi[i]);
      Subset lhs(N);
      for (std::size_t i = 0; i < N; ++i)
        if (classes_hit.test(pi[i])) lhs.set(i);

      Subset rhs(N);
      for (Elem k = 0; k < G.size(); ++k) {
        auto R = translation_map(G, G.inv(k), Side::right);
        for (Elem h = 0; h < G.size(); ++h) {
          if (!V.test(h) || G.src(h) != G.src(k)) continue;
          for (Point x = 0; x < nM; ++x) {
            if (!U.test(x)) continue;
            auto y = A.apply(k, x);
            if (!y) continue;
            auto j = pair_index(E.pairs, {R(h), *y});
            if (j == npos) throw InvariantViolation("envelope_topology: translated pair outside M̄");
            rhs.set(j);
          }
        }
      }
      out.fiber_formula_holds = lhs == rhs;
    }

  std::vector<char> hit(n, 0);
  bool injective = true;
  for (auto c : E.embedding) {
    if (hit[c]) injective = false;
    hit[c] = 1;
  }
  bool onto = std::all_of(hit.begin(), hit.end(), [](char h) { return h != 0; });
  out.iota_open_embedding =
      injective && is_continuous(E.embedding, T_M, T_MG) && is_open_map(E.embedding, T_M, T_MG);
  out.iota_homeomorphism = out.iota_open_embedding && onto;

  // ι(U) ∩ (M_G)_{d(g)} = ι(U ∩ M_{d(g)}) for every open U.
  std::vector<Subset> opens;
  if (nM <= 16) {
    opens = open_sets(T_M);
  } else {
    for (Point x = 0; x < nM; ++x) opens.push_back(T_M.min_open(x));
  }
  out.item4_holds = true;
  for (const auto& U : opens)
    for (Elem e : G.identities()) {
      Subset lhs = image_of(E.embedding, U, n) & B.domain(e);
      Subset rhs = image_of(E.embedding, U & A.domain(e), n);
      if (lhs != rhs) out.item4_holds = false;
    }

  // β on G ×_t M_G with the subspace topology of G × M_G.
  FiniteTopology T_GMG = product(T_G, T_MG);
  Subset fp(T_GMG.size());
  for (Elem g = 0; g < G.size(); ++g)
    for (std::size_t c = 0; c < n; ++c)
      if (B.anchor(c) == G.src(g)) fp.set(g * n + c);
  FiniteTopology T_fp = subspace(T_GMG, fp);
  std::vector<std::size_t> beta;
  for_each_member(fp, [&](std::size_t i) { beta.push_back(B.act(i / n, i % n)); });
  out.beta_continuous = is_continuous(beta, T_fp, T_MG);

  out.MG_hausdorff = is_hausdorff(T_MG);

  FiniteTopology T_bar2 = product(T_bar, T_bar);
  Subset rel(N * N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      if (pi[i] == pi[j]) rel.set(i * N + j);
  out.relation_closed = is_closed(T_bar2, rel);

  out.graph_closed = action_graphs(A, T_G, T_M).graph_closed;
  out.envelope_topology = std::move(T_MG);

  if (out.pi_open && out.MG_hausdorff != out.relation_closed)
    throw InvariantViolation("envelope_topology: M_G Hausdorff disagrees with closedness of the relation");
  return out;
}

}  // namespace pact
