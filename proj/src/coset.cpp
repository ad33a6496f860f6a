#include "pact/coset.hpp"

#include <algorithm>

#include "pact/errors.hpp"

namespace pact {

namespace {

[[noreturn]] void fail(const PartialAction& A, const std::string& what) {
  if (A.tainted()) throw PreconditionError(what);
  throw InvariantViolation(what);
}

}  // namespace

std::size_t CosetSpace::class_of(Elem h) const {
  auto it = std::lower_bound(elements.begin(), elements.end(), h);
  if (it == elements.end() || *it != h) return npos;
  return classes.class_of[static_cast<std::size_t>(it - elements.begin())];
}

CosetSpace build_coset_action(std::shared_ptr<const PartialAction> A, Point x) {
  if (x >= A->size()) throw StructuralError("build_coset_action: point outside the carrier");
  const auto& G = A->groupoid();
  const Elem e = A->anchor(x);
  const Subset stab = stabilizer(*A, x);

  CosetSpace C;
  C.base = A;
  C.basepoint = x;
  C.hx = Subset(G.size());
  for (Elem h = 0; h < G.size(); ++h)
    if (G.src(h) == e) {
      C.hx.set(h);
      C.elements.push_back(h);
    }

  const auto& H = C.elements;
  try {
    C.classes = partition_from_relation(H.size(), [&](std::size_t i, std::size_t j) {
      if (G.rng(H[i]) != G.rng(H[j])) return false;
      return stab.test(G.compose(G.inv(H[j]), H[i]));
    });
  } catch (const PreconditionError& err) {
    fail(*A, std::string("build_coset_action: ") + err.what());
  }

  const std::size_t n = C.classes.size();
  std::vector<std::string> labels(n);
  std::vector<Elem> anchor(n);
  for (std::size_t c = 0; c < n; ++c) {
    labels[c] = "[" + G.name(C.representative(c)) + "]";
    anchor[c] = G.rng(C.representative(c));
  }

  std::vector<Subset> domains(G.size(), Subset(n));
  std::vector<std::vector<Point>> maps(G.size(), std::vector<Point>(n, npos));
  for (Elem g = 0; g < G.size(); ++g)
    for (std::size_t c = 0; c < n; ++c) {
      if (anchor[c] == G.rng(g)) domains[g].set(c);
      if (anchor[c] != G.src(g)) continue;
      std::size_t image = npos;
      for (auto i : C.classes.classes[c]) {
        auto d = C.class_of(G.compose(g, H[i]));
        if (image != npos && image != d)
          fail(*A, "build_coset_action: δ_" + G.name(g) + " depends on the representative of " + labels[c]);
        image = d;
      }
      maps[g][c] = image;
    }

  try {
    C.delta = std::make_shared<const PartialAction>(PartialAction::from_tables(
        A->groupoid_ptr(), std::move(labels), std::move(anchor), std::move(domains), std::move(maps),
        !A->tainted()));
  } catch (const ValidationError& err) {
    throw InvariantViolation(std::string("build_coset_action: δ fails validation\n") + err.what());
  }
  if (!is_global(*C.delta)) fail(*A, "build_coset_action: δ is not global");
  if (classify(*A).free && n != H.size()) fail(*A, "build_coset_action: free base with a non singleton class");
  return C;
}

GMap theorem1_check(const CosetSpace& C, const Globalization& E) {
  if (!(*C.base == *E.base)) throw PreconditionError("theorem1_check: globalization is over a different base");
  if (!classify(*C.base).transitive)
    throw PreconditionError("theorem1_check: the base action is not transitive, which the theorem requires");

  const auto& G = C.base->groupoid();
  const auto& B = *E.action;
  const Point ix = E.embedding.at(C.basepoint);

  GMap phi{C.delta, E.action, std::vector<Point>(C.delta->size(), npos)};
  for (std::size_t c = 0; c < C.classes.size(); ++c)
    for (auto i : C.classes.classes[c]) {
      Elem h = C.elements[i];
      auto y = B.apply(h, ix);
      if (!y) fail(*C.base, "theorem1_check: β_" + G.name(h) + "(ι(x)) is undefined");
      if (phi.table[c] != npos && phi.table[c] != *y)
        fail(*C.base, "theorem1_check: φ is not well defined on " + C.delta->point(c));
      phi.table[c] = *y;
    }
  if (!phi.is_bijective()) fail(*C.base, "theorem1_check: φ is not bijective");
  auto report = validate_gmap(phi);
  if (!report.ok()) fail(*C.base, "theorem1_check: φ is not a G-map\n" + report.summary());
  inverse_gmap(phi);
  return phi;
}

IsotropyRestrictionReport isotropy_restriction_check(std::shared_ptr<const PartialAction> A, Point x,
                                                     const Globalization& E) {
  const auto& G = A->groupoid();
  if (G.identities().size() != 1)
    throw UnsupportedError("isotropy_restriction_check: only stated for partial actions of a group");
  if (!(*A == *E.base)) throw PreconditionError("isotropy_restriction_check: globalization is over a different base");
  if (!classify(*A).transitive)
    throw PreconditionError("isotropy_restriction_check: the base action is not transitive");

  const Elem e = A->anchor(x);
  IsotropyRestrictionReport out;
  out.beta = std::make_shared<const PartialAction>(restrict_to_isotropy(*E.action, e));
  auto local = std::make_shared<const PartialAction>(restrict_to_isotropy(*A, e));
  out.delta = build_coset_action(local, local->index(A->point(x))).delta;
  out.isomorphism = find_isomorphism(out.delta, out.beta);
  return out;
}

}  // namespace pact
