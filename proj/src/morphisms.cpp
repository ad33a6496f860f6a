#include "pact/morphisms.hpp"

#include <algorithm>
#include <tuple>

#include "pact/errors.hpp"

namespace pact {

bool GMap::is_bijective() const {
  if (!target || table.size() != target->size()) return false;
  std::vector<char> hit(target->size(), 0);
  for (auto y : table) {
    if (y >= hit.size() || hit[y]) return false;
    hit[y] = 1;
  }
  return true;
}

ValidationReport validate_gmap(const PartialAction& source, const PartialAction& target,
                               const std::vector<Point>& table) {
  if (!(source.groupoid() == target.groupoid()))
    throw PreconditionError("validate_gmap: actions are over different groupoids");
  if (table.size() != source.size()) throw StructuralError("validate_gmap: table is not total on the source");
  for (auto y : table)
    if (y >= target.size()) throw StructuralError("validate_gmap: table value outside the target carrier");

  const auto& G = source.groupoid();
  ValidationReport report;
  for (Elem g = 0; g < G.size(); ++g)
    for (Point x = 0; x < source.size(); ++x) {
      if (source.domain(g).test(x) && !target.domain(g).test(table[x]))
        report.add("(i)", {G.name(g), source.point(x)}, "x ∈ X_g but φ(x) ∉ X̃_g");
      if (auto y = source.apply(g, x)) {
        auto z = target.apply(g, table[x]);
        if (!z || *z != table[*y])
          report.add("(ii)", {G.name(g), source.point(x)}, "φ(α_g(x)) != α̃_g(φ(x))");
      }
    }
  return report;
}

ValidationReport validate_gmap(const GMap& f) {
  if (!f.source || !f.target) throw StructuralError("validate_gmap: missing endpoint");
  return validate_gmap(*f.source, *f.target, f.table);
}

GMap identity_gmap(std::shared_ptr<const PartialAction> A) {
  std::vector<Point> table(A->size());
  for (Point x = 0; x < table.size(); ++x) table[x] = x;
  return GMap{A, A, std::move(table)};
}

GMap compose_gmaps(const GMap& f, const GMap& g) {
  if (!f.target || !g.source || !(*f.target == *g.source))
    throw PreconditionError("compose_gmaps: target of the first map is not the source of the second");
  GMap out{f.source, g.target, std::vector<Point>(f.table.size())};
  for (Point x = 0; x < f.table.size(); ++x) out.table[x] = g.table.at(f.table[x]);
  auto report = validate_gmap(out);
  if (!report.ok()) throw InvariantViolation("compose_gmaps: composite is not a G-map:\n" + report.summary());
  return out;
}

GMap inverse_gmap(const GMap& f) {
  if (!f.is_bijective()) throw PreconditionError("inverse_gmap: map is not bijective");
  GMap inv{f.target, f.source, std::vector<Point>(f.table.size())};
  for (Point x = 0; x < f.table.size(); ++x) inv.table[f.table[x]] = x;
  auto report = validate_gmap(inv);
  if (!report.ok()) throw ValidationError("inverse_gmap: inverse is not a G-map:\n" + report.summary(), report);
  return inv;
}

namespace {

// Isomorphism invariants of a point: anchor, which X_g contain it, the
// stabilizer (as a set of elements) and the orbit size.
struct Signature {
  Elem anchor;
  Subset in_domains;
  Subset stabilizer;
  std::size_t orbit_size;

  auto key() const { return std::tie(anchor, in_domains, stabilizer, orbit_size); }
  bool operator==(const Signature& o) const { return key() == o.key(); }
  bool operator<(const Signature& o) const { return key() < o.key(); }
};

std::vector<Signature> signatures(const PartialAction& A) {
  const auto& G = A.groupoid();
  std::vector<Signature> out;
  for (Point x = 0; x < A.size(); ++x) {
    Subset in(G.size());
    for (Elem g = 0; g < G.size(); ++g)
      if (A.domain(g).test(x)) in.set(g);
    out.push_back({A.anchor(x), std::move(in), stabilizer(A, x), orbit_of(A, x).count()});
  }
  return out;
}

class IsoSearch {
 public:
  IsoSearch(const PartialAction& A, const PartialAction& B)
      : A_(A), B_(B), sigA_(signatures(A)), sigB_(signatures(B)),
        orbits_(orbit_relation(A).orbits), image_(A.size(), npos), used_(B.size(), 0) {}

  bool run(std::size_t orbit) {
    if (orbit == orbits_.size()) return true;
    const auto& cls = orbits_.classes[orbit];
    const Point rep = cls.front();
    for (Point y = 0; y < B_.size(); ++y) {
      if (used_[y] || !(sigA_[rep] == sigB_[y])) continue;
      std::vector<Point> assigned;
      if (assign_orbit(rep, y, assigned) && run(orbit + 1)) return true;
      for (auto x : assigned) {
        used_[image_[x]] = 0;
        image_[x] = npos;
      }
    }
    return false;
  }

  const std::vector<Point>& image() const { return image_; }

 private:
  // Sends rep ↦ y and extends along the orbit by x' = α_g(rep) ↦ β_g(y).
  bool assign_orbit(Point rep, Point y, std::vector<Point>& assigned) {
    const auto& G = A_.groupoid();
    for (Elem g = 0; g < G.size(); ++g) {
      auto x = A_.apply(g, rep);
      if (!x) continue;
      auto z = B_.apply(g, y);
      if (!z) return false;
      if (image_[*x] != npos) {
        if (image_[*x] != *z) return false;
        continue;
      }
      if (used_[*z] || !(sigA_[*x] == sigB_[*z])) return false;
      image_[*x] = *z;
      used_[*z] = 1;
      assigned.push_back(*x);
    }
    return true;
  }

  const PartialAction& A_;
  const PartialAction& B_;
  std::vector<Signature> sigA_, sigB_;
  Partition orbits_;
  std::vector<Point> image_;
  std::vector<char> used_;
};

}  // namespace

std::optional<GMap> find_isomorphism(std::shared_ptr<const PartialAction> A,
                                     std::shared_ptr<const PartialAction> B) {
  if (!(A->groupoid() == B->groupoid()))
    throw PreconditionError("find_isomorphism: actions are over different groupoids");
  if (A->size() != B->size()) return std::nullopt;
  if (!(classify(*A) == classify(*B))) return std::nullopt;
  auto sa = signatures(*A);
  auto sb = signatures(*B);
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return std::nullopt;

  IsoSearch search(*A, *B);
  if (!search.run(0)) return std::nullopt;
  GMap f{A, B, search.image()};
  auto report = validate_gmap(f);
  if (!report.ok() || !f.is_bijective())
    throw InvariantViolation("find_isomorphism: search produced an invalid map:\n" + report.summary());
  inverse_gmap(f);  // throws unless the inverse is a G-map too
  return f;
}

}  // namespace pact
