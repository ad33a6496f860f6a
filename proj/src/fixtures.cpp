#include "pact/fixtures.hpp"

namespace pact::fixtures {

std::shared_ptr<const Groupoid> z2() {
  return std::make_shared<const Groupoid>(from_group({"e", "s"}, {{0, 1}, {1, 0}}));
}

std::shared_ptr<const Groupoid> pair2() { return std::make_shared<const Groupoid>(pair_groupoid({"1", "2"})); }

std::shared_ptr<const Groupoid> remark_groupoid() {
  GroupoidData d;
  d.elements = {"e", "f", "g", "g_inv", "h", "h_inv"};
  auto add_z3 = [&](const std::string& id, const std::string& a, const std::string& b) {
    const std::string c[3] = {id, a, b};  // c[i]·c[j] = c[(i+j) mod 3]
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) d.mul.push_back({c[i], c[j], c[(i + j) % 3]});
    d.inv.insert(d.inv.end(), {{id, id}, {a, b}, {b, a}});
    for (const auto& x : c) {
      d.src.emplace_back(x, id);
      d.rng.emplace_back(x, id);
    }
  };
  add_z3("e", "g", "g_inv");
  add_z3("f", "h", "h_inv");
  return std::make_shared<const Groupoid>(Groupoid::from_data(d));
}

std::shared_ptr<const PartialAction> fix_b() {
  PartialActionData d;
  d.carrier = {"a", "b"};
  d.anchor = {{"a", "e"}, {"b", "e"}};
  d.domains = {{"s", {"a"}}};
  d.maps = {{"s", {{"a", "a"}}}};
  return std::make_shared<const PartialAction>(PartialAction::from_data(z2(), d));
}

std::shared_ptr<const PartialAction> fix_c() {
  PartialActionData d;
  d.carrier = {"u", "v"};
  d.anchor = {{"u", "(1,1)"}, {"v", "(2,2)"}};
  d.domains = {{"(1,2)", {"u"}}, {"(2,1)", {"v"}}};
  d.maps = {{"(1,2)", {{"v", "u"}}}};
  return std::make_shared<const PartialAction>(PartialAction::from_data(pair2(), d));
}

PartialActionData remark_x_data() {
  PartialActionData d;
  d.carrier = {"x1", "x2", "x3"};
  d.anchor = {{"x1", "e"}, {"x2", "e"}, {"x3", "f"}};
  d.domains = {{"e", {"x1", "x2"}}, {"f", {"x2", "x3"}}, {"g", {"x2"}},
               {"g_inv", {"x1"}},   {"h", {"x3"}},       {"h_inv", {"x2"}}};
  d.maps = {{"g", {{"x1", "x2"}}}, {"h", {{"x2", "x3"}}}};
  return d;
}

std::shared_ptr<const PartialAction> remark_x_unchecked() {
  return std::make_shared<const PartialAction>(PartialAction::from_data_unchecked(remark_groupoid(), remark_x_data()));
}

TopologicalInstance sierp_act() {
  PartialActionData d;
  d.carrier = {"x", "y"};
  d.anchor = {{"x", "e"}, {"y", "e"}};
  d.domains = {{"s", {"x"}}};
  d.maps = {{"s", {{"x", "x"}}}};
  auto A = std::make_shared<const PartialAction>(PartialAction::from_data(z2(), d));
  return {A, FiniteTopology::discrete({"e", "s"}),
          FiniteTopology::from_named({"x", "y"}, {{"x", {"x"}}, {"y", {"x", "y"}}})};
}

std::shared_ptr<const PartialAction> z2_fixed_point() {
  PartialActionData d;
  d.carrier = {"a"};
  d.anchor = {{"a", "e"}};
  d.domains = {{"s", {"a"}}};
  d.maps = {{"s", {{"a", "a"}}}};
  return std::make_shared<const PartialAction>(PartialAction::from_data(z2(), d));
}

std::shared_ptr<const PartialAction> z2_swap() {
  PartialActionData d;
  d.carrier = {"a", "b"};
  d.anchor = {{"a", "e"}, {"b", "e"}};
  d.domains = {{"s", {"a", "b"}}};
  d.maps = {{"s", {{"a", "b"}, {"b", "a"}}}};
  return std::make_shared<const PartialAction>(PartialAction::from_data(z2(), d));
}

std::shared_ptr<const PartialAction> z4_two_points() {
  auto Z4 = std::make_shared<const Groupoid>(cyclic_group(4));
  PartialActionData d;
  d.carrier = {"a", "b"};
  d.anchor = {{"a", "0"}, {"b", "0"}};
  d.domains = {{"1", {"a", "b"}}, {"2", {"a", "b"}}, {"3", {"a", "b"}}};
  d.maps = {{"1", {{"a", "b"}, {"b", "a"}}}, {"2", {{"a", "a"}, {"b", "b"}}}, {"3", {{"a", "b"}, {"b", "a"}}}};
  return std::make_shared<const PartialAction>(PartialAction::from_data(Z4, d));
}

}  // namespace pact::fixtures
