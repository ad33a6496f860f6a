#include "pact/partition.hpp"

#include <map>
#include <string>

#include "pact/errors.hpp"

namespace pact {

Partition Partition::from_labels(const std::vector<std::size_t>& labels) {
  Partition p;
  p.class_of.resize(labels.size());
  std::map<std::size_t, std::size_t> renumber;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, fresh] = renumber.try_emplace(labels[i], p.classes.size());
    if (fresh) p.classes.emplace_back();
    p.class_of[i] = it->second;
    p.classes[it->second].push_back(i);
  }
  return p;
}

Partition DisjointSets::partition() {
  std::vector<std::size_t> roots(parent_.size());
  for (std::size_t i = 0; i < roots.size(); ++i) roots[i] = find(i);
  return Partition::from_labels(roots);
}

Partition partition_from_relation(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& related) {
  std::vector<std::vector<char>> R(n, std::vector<char>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) R[a][b] = related(a, b);
  auto fail = [](const std::string& law, std::size_t a, std::size_t b) {
    throw PreconditionError("relation is not " + law + " (at " + std::to_string(a) + ", " + std::to_string(b) + ")");
  };
  for (std::size_t a = 0; a < n; ++a) {
    if (!R[a][a]) fail("reflexive", a, a);
    for (std::size_t b = 0; b < n; ++b) {
      if (R[a][b] != R[b][a]) fail("symmetric", a, b);
      if (!R[a][b]) continue;
      for (std::size_t c = 0; c < n; ++c)
        if (R[b][c] && !R[a][c]) fail("transitive", a, c);
    }
  }
  DisjointSets ds(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (R[a][b]) ds.unite(a, b);
  return ds.partition();
}

}  // namespace pact
