#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace pact {

/// Subset of an indexed carrier; bit i set iff point i is a member.
using Subset = boost::dynamic_bitset<>;

inline Subset empty_subset(std::size_t n) { return Subset(n); }

inline Subset full_subset(std::size_t n) {
  Subset s(n);
  s.set();
  return s;
}

inline Subset make_subset(std::size_t n, std::initializer_list<std::size_t> members) {
  Subset s(n);
  for (auto m : members) s.set(m);
  return s;
}

inline Subset make_subset(std::size_t n, const std::vector<std::size_t>& members) {
  Subset s(n);
  for (auto m : members) s.set(m);
  return s;
}

/// Members in increasing index order.
inline std::vector<std::size_t> members(const Subset& s) {
  std::vector<std::size_t> out;
  out.reserve(s.count());
  for (auto i = s.find_first(); i != Subset::npos; i = s.find_next(i)) out.push_back(i);
  return out;
}

template <typename F>
void for_each_member(const Subset& s, F&& f) {
  for (auto i = s.find_first(); i != Subset::npos; i = s.find_next(i)) f(i);
}

}  // namespace pact
