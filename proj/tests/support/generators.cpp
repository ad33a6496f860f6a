#include "generators.hpp"

#include <algorithm>
#include <numeric>

namespace gen {

using namespace pact;

namespace {

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

Groupoid small_group(Rng& rng) {
  switch (pick(rng, 0, 7)) {
    case 0: return klein_group();
    case 1: return symmetric_group3();
    default: return cyclic_group(pick(rng, 1, 6));
  }
}

Groupoid small_piece(Rng& rng, std::size_t max_size) {
  for (;;) {
    Groupoid G = coin(rng, 0.5) ? small_group(rng) : pair_groupoid([&] {
      std::vector<std::string> objs;
      for (std::size_t i = 0, n = pick(rng, 1, 3); i < n; ++i) objs.push_back(std::to_string(i + 1));
      return objs;
    }());
    if (G.size() <= max_size) return G;
  }
}

// Z_n acting on k points through a permutation whose order divides n.
Groupoid cyclic_action_groupoid(Rng& rng) {
  for (;;) {
    std::size_t n = pick(rng, 2, 4);
    std::size_t k = pick(rng, 1, 12 / n);
    std::vector<std::size_t> sigma(k);
    std::iota(sigma.begin(), sigma.end(), std::size_t{0});
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    std::size_t i = 0;
    while (i < k) {
      std::vector<std::size_t> lens;
      for (std::size_t l = 1; l <= n; ++l)
        if (n % l == 0 && i + l <= k) lens.push_back(l);
      std::size_t l = lens[pick(rng, 0, lens.size() - 1)];
      for (std::size_t j = 0; j < l; ++j) sigma[order[i + j]] = order[i + (j + 1) % l];
      i += l;
    }
    std::vector<std::string> points;
    for (std::size_t x = 0; x < k; ++x) points.push_back("x" + std::to_string(x));
    std::vector<std::vector<std::size_t>> act(n, std::vector<std::size_t>(k));
    for (std::size_t x = 0; x < k; ++x) act[0][x] = x;
    for (std::size_t a = 1; a < n; ++a)
      for (std::size_t x = 0; x < k; ++x) act[a][x] = sigma[act[a - 1][x]];
    auto G = action_groupoid(cyclic_group(n), points, act);
    if (G.size() <= 12) return G;
  }
}

}  // namespace

std::shared_ptr<const Groupoid> groupoid(Rng& rng) {
  switch (pick(rng, 0, 3)) {
    case 0: return std::make_shared<const Groupoid>(small_group(rng));
    case 1: return std::make_shared<const Groupoid>(small_piece(rng, 9));
    case 2: {
      std::vector<Groupoid> parts{small_piece(rng, 6)};
      parts.push_back(small_piece(rng, 12 - parts[0].size()));
      return std::make_shared<const Groupoid>(disjoint_union(parts));
    }
    default: return std::make_shared<const Groupoid>(cyclic_action_groupoid(rng));
  }
}

std::vector<Subset> subgroups(const Groupoid& G, Elem e) {
  std::vector<Elem> iso;
  for (Elem g = 0; g < G.size(); ++g)
    if (G.src(g) == e && G.rng(g) == e) iso.push_back(g);
  std::vector<Subset> out;
  for (unsigned long mask = 0; mask < (1ul << iso.size()); ++mask) {
    Subset H(G.size());
    for (std::size_t i = 0; i < iso.size(); ++i)
      if (mask >> i & 1) H.set(iso[i]);
    if (!H.test(e)) continue;
    bool closed = true;
    for (auto a : iso)
      for (auto b : iso)
        if (H.test(a) && H.test(b) && !H.test(G.compose(a, G.inv(b)))) closed = false;
    if (closed) out.push_back(H);
  }
  return out;
}

std::shared_ptr<const PartialAction> transitive_global(std::shared_ptr<const Groupoid> G, Elem e, const Subset& H,
                                                       const std::string& prefix) {
  std::vector<Elem> fiber;
  for (Elem h = 0; h < G->size(); ++h)
    if (G->src(h) == e) fiber.push_back(h);
  // class of h: least k in the fiber with r(k) = r(h), k⁻¹h ∈ H
  std::vector<std::size_t> cls(G->size(), npos);
  std::vector<Elem> reps;
  for (auto h : fiber) {
    for (std::size_t c = 0; c < reps.size(); ++c) {
      auto k = reps[c];
      if (G->rng(k) == G->rng(h) && H.test(G->compose(G->inv(k), h))) {
        cls[h] = c;
        break;
      }
    }
    if (cls[h] == npos) {
      cls[h] = reps.size();
      reps.push_back(h);
    }
  }
  const auto n = reps.size();
  std::vector<std::string> names;
  std::vector<Elem> anchor;
  for (std::size_t c = 0; c < n; ++c) {
    names.push_back(prefix + std::to_string(c));
    anchor.push_back(G->rng(reps[c]));
  }
  std::vector<Subset> domains(G->size(), Subset(n));
  std::vector<std::vector<Point>> maps(G->size(), std::vector<Point>(n, npos));
  for (Elem g = 0; g < G->size(); ++g)
    for (std::size_t c = 0; c < n; ++c) {
      if (anchor[c] == G->rng(g)) domains[g].set(c);
      if (anchor[c] == G->src(g)) maps[g][c] = cls[G->compose(g, reps[c])];
    }
  return std::make_shared<const PartialAction>(
      PartialAction::from_tables(G, names, anchor, domains, maps));
}

std::shared_ptr<const PartialAction> sum(const std::vector<std::shared_ptr<const PartialAction>>& parts) {
  auto G = parts.front()->groupoid_ptr();
  std::vector<std::string> names;
  std::vector<Elem> anchor;
  std::vector<std::size_t> offset;
  for (const auto& P : parts) {
    offset.push_back(names.size());
    for (Point x = 0; x < P->size(); ++x) {
      names.push_back(P->point(x));
      anchor.push_back(P->anchor(x));
    }
  }
  const auto n = names.size();
  std::vector<Subset> domains(G->size(), Subset(n));
  std::vector<std::vector<Point>> maps(G->size(), std::vector<Point>(n, npos));
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (Elem g = 0; g < G->size(); ++g)
      for (Point x = 0; x < parts[i]->size(); ++x) {
        if (parts[i]->domain(g).test(x)) domains[g].set(offset[i] + x);
        if (auto y = parts[i]->apply(g, x)) maps[g][offset[i] + x] = offset[i] + *y;
      }
  return std::make_shared<const PartialAction>(PartialAction::from_tables(G, names, anchor, domains, maps));
}

std::shared_ptr<const PartialAction> global_action(std::shared_ptr<const Groupoid> G, Rng& rng,
                                                   std::size_t max_points, std::size_t max_orbits) {
  for (;;) {
    std::vector<std::shared_ptr<const PartialAction>> parts;
    std::size_t total = 0;
    const std::size_t orbits = pick(rng, 1, max_orbits);
    for (std::size_t i = 0; i < orbits; ++i) {
      const auto& ids = G->identities();
      Elem e = ids[pick(rng, 0, ids.size() - 1)];
      auto subs = subgroups(*G, e);
      auto part = transitive_global(G, e, subs[pick(rng, 0, subs.size() - 1)], "o" + std::to_string(i) + "_");
      if (total + part->size() > max_points) continue;
      total += part->size();
      parts.push_back(part);
    }
    if (!parts.empty()) return sum(parts);
  }
}

std::shared_ptr<const PartialAction> partial_action(Rng& rng) {
  auto G = groupoid(rng);
  const bool transitive = coin(rng, 0.4);
  auto B = global_action(G, rng, transitive ? 12 : 14, transitive ? 1 : 3);
  const auto n = B->size();
  Subset S(n);
  if (n <= 8 && coin(rng, 0.25)) {
    S.set();
  } else {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::shuffle(idx.begin(), idx.end(), rng);
    for (std::size_t i = 0, k = pick(rng, 1, std::min<std::size_t>(8, n)); i < k; ++i) S.set(idx[i]);
  }
  return std::make_shared<const PartialAction>(restrict(*B, S));
}

Relabeled relabel(const PartialAction& A, Rng& rng) {
  const auto& G = A.groupoid();
  auto shuffled_names = [&](std::size_t n, const std::string& prefix) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::shuffle(idx.begin(), idx.end(), rng);
    std::vector<std::string> out;
    for (auto i : idx) out.push_back(prefix + std::string(1, static_cast<char>('a' + i / 26)) +
                                     std::string(1, static_cast<char>('a' + i % 26)));
    return out;
  };
  Relabeled r;
  auto en = shuffled_names(G.size(), "g");
  for (Elem g = 0; g < G.size(); ++g) r.elements[G.name(g)] = en[g];
  auto pn = shuffled_names(A.size(), "m");
  for (Point x = 0; x < A.size(); ++x) r.points[A.point(x)] = pn[x];
  auto G2 = std::make_shared<const Groupoid>(pact::relabel(G, r.elements));
  r.action = std::make_shared<const PartialAction>(pact::relabel(A, G2, r.elements, r.points));
  return r;
}

std::map<std::string, std::string> invert(const std::map<std::string, std::string>& m) {
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : m) out[v] = k;
  return out;
}

Globalization globalize_relabeled(std::shared_ptr<const PartialAction> A, Rng& rng) {
  auto R = relabel(*A, rng);
  auto E = globalize(R.action);
  std::map<std::string, std::string> same;
  for (const auto& y : E.action->points()) same[y] = y;
  auto back = std::make_shared<const PartialAction>(
      pact::relabel(*E.action, A->groupoid_ptr(), invert(R.elements), same));
  std::vector<Point> emb(A->size());
  for (Point x = 0; x < A->size(); ++x) {
    auto x2 = R.action->index(R.points.at(A->point(x)));
    emb[x] = back->index(E.action->point(E.embedding[x2]));
  }
  return {A, back, std::move(emb)};
}

namespace {

// Topology on a group by cosets of a normal subgroup.
FiniteTopology coset_topology(const Groupoid& G, const Subset& N) {
  std::vector<Subset> min_open(G.size(), Subset(G.size()));
  for (Elem g = 0; g < G.size(); ++g)
    for (Elem n = 0; n < G.size(); ++n)
      if (N.test(n)) min_open[g].set(G.compose(g, n));
  return FiniteTopology(G.names(), min_open);
}

bool normal(const Groupoid& G, const Subset& N) {
  for (Elem g = 0; g < G.size(); ++g)
    for (Elem n = 0; n < G.size(); ++n)
      if (N.test(n) && !N.test(G.compose(G.compose(g, n), G.inv(g)))) return false;
  return true;
}

}  // namespace

std::optional<Topological> topological(Rng& rng, std::size_t max_product) {
  auto G = groupoid(rng);
  if (G->size() > max_product) return std::nullopt;
  auto B = global_action(G, rng, std::max<std::size_t>(1, std::min<std::size_t>(8, max_product / G->size() + 2)), 3);
  const auto n = B->size();

  FiniteTopology T_G = FiniteTopology::discrete(G->names());
  if (G->identities().size() == 1 && coin(rng, 0.5)) {
    std::vector<Subset> normals;
    for (const auto& H : subgroups(*G, G->identities().front()))
      if (normal(*G, H)) normals.push_back(H);
    T_G = coset_topology(*G, normals[pick(rng, 0, normals.size() - 1)]);
  }

  // Random relations within anchor fibers, closed under the action and
  // transitivity: le[y][z] means z ∈ min_open(y).
  std::vector<std::vector<char>> le(n, std::vector<char>(n, 0));
  for (Point y = 0; y < n; ++y) le[y][y] = 1;
  for (std::size_t k = 0, m = pick(rng, 0, n); k < m; ++k) {
    Point y = pick(rng, 0, n - 1), z = pick(rng, 0, n - 1);
    if (B->anchor(y) == B->anchor(z)) le[y][z] = 1;
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (Elem g = 0; g < G->size(); ++g)
      for (Point y = 0; y < n; ++y)
        for (Point z = 0; z < n; ++z)
          if (le[y][z]) {
            auto a = B->apply(g, y), b = B->apply(g, z);
            if (a && b && !le[*a][*b]) le[*a][*b] = changed = 1;
          }
    for (Point k = 0; k < n; ++k)
      for (Point y = 0; y < n; ++y)
        for (Point z = 0; z < n; ++z)
          if (le[y][k] && le[k][z] && !le[y][z]) le[y][z] = changed = 1;
  }
  std::vector<Subset> min_open(n, Subset(n));
  for (Point y = 0; y < n; ++y)
    for (Point z = 0; z < n; ++z)
      if (le[y][z]) min_open[y].set(z);
  FiniteTopology T_Y(B->points(), min_open);

  Subset X(n);
  for (Point y = 0; y < n; ++y)
    if (coin(rng, 0.6)) X |= T_Y.min_open(y);
  if (X.none()) X = full_subset(n);
  if (G->size() * X.count() > max_product) return std::nullopt;

  auto A = std::make_shared<const PartialAction>(restrict(*B, X));
  FiniteTopology T_X = subspace(T_Y, X);
  if (!check_topological_action(*A, T_G, T_X).ok()) return std::nullopt;
  return Topological{A, T_G, T_X};
}

}  // namespace gen
