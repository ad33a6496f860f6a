#include "doctest.h"

#include <random>

#include "generators.hpp"
#include "oracles.hpp"
#include "pact/errors.hpp"
#include "pact/fixtures.hpp"
#include "pact/partial_action.hpp"

using namespace pact;
namespace fx = pact::fixtures;

namespace {

std::vector<std::string> names_of(const PartialAction& A, const Subset& S) {
  std::vector<std::string> out;
  for_each_member(S, [&](std::size_t x) { out.push_back(A.point(x)); });
  return out;
}

std::vector<std::string> elems_of(const Groupoid& G, const Subset& S) {
  std::vector<std::string> out;
  for_each_member(S, [&](std::size_t g) { out.push_back(G.name(g)); });
  return out;
}

using Names = std::vector<std::string>;

}  // namespace

TEST_CASE("fixture actions validate") {
  for (const auto& A : {fx::fix_b(), fx::fix_c(), fx::z2_swap(), fx::z2_fixed_point(), fx::z4_two_points()}) {
    CHECK(validate_partial_action(*A).ok());
    CHECK(!A->tainted());
  }
  auto C = fx::fix_c();
  const auto& G = C->groupoid();
  CHECK(C->act(G.index("(1,2)"), C->index("v")) == C->index("u"));
  CHECK(C->act(G.index("(2,1)"), C->index("u")) == C->index("v"));
}

TEST_CASE("REMARK-X is rejected on condition (i) at x2") {
  auto report = validate_partial_action(*fx::remark_groupoid(), fx::remark_x_data());
  REQUIRE(!report.ok());
  const auto* v = report.first("(i)");
  REQUIRE(v != nullptr);
  CHECK(std::find(v->witness.begin(), v->witness.end(), "x2") != v->witness.end());
  CHECK_THROWS_AS(PartialAction::from_data(fx::remark_groupoid(), fx::remark_x_data()), ValidationError);
}

TEST_CASE("REMARK-X with validation bypassed has a non-transitive one-step relation") {
  auto X = fx::remark_x_unchecked();
  CHECK(X->tainted());
  auto rel = orbit_relation(*X);
  CHECK(rel.tainted);
  CHECK(!rel.one_step_transitive);
  REQUIRE(rel.witness.has_value());
  auto [x, y, z] = *rel.witness;
  CHECK(X->point(x) == "x1");
  CHECK(X->point(y) == "x2");
  CHECK(X->point(z) == "x3");
  const auto& m = rel.one_step;
  CHECK(m[x][y]);
  CHECK(m[y][z]);
  CHECK(!m[x][z]);
}

TEST_CASE("violations of individual conditions") {
  auto G = fx::z2();
  SUBCASE("range") {
    auto P = fx::pair2();
    PartialActionData d;
    d.carrier = {"a", "b"};
    d.anchor = {{"a", "(1,1)"}, {"b", "(2,2)"}};
    d.domains = {{"(1,2)", {"b"}}, {"(2,1)", {"a"}}};
    d.maps = {{"(1,2)", {{"a", "b"}}}};
    CHECK(validate_partial_action(*P, d).has("range"));
  }
  SUBCASE("anchor") {
    auto P = fx::pair2();
    PartialActionData d;
    d.carrier = {"a"};
    d.anchor = {{"a", "(1,2)"}};
    CHECK(validate_partial_action(*P, d).has("anchor"));
  }
  SUBCASE("bijection") {
    PartialActionData d;
    d.carrier = {"a", "b"};
    d.anchor = {{"a", "e"}, {"b", "e"}};
    d.domains = {{"s", {"a", "b"}}};
    d.maps = {{"s", {{"a", "a"}, {"b", "a"}}}};
    CHECK(validate_partial_action(*G, d).has("bijection"));
  }
  SUBCASE("composition") {
    // Z3 with α_1 = α_2 = the swap on {a,b}: α_1∘α_1 = id but α_2 is the swap
    auto Z3 = std::make_shared<const Groupoid>(cyclic_group(3));
    PartialActionData d;
    d.carrier = {"a", "b"};
    d.anchor = {{"a", "0"}, {"b", "0"}};
    d.domains = {{"1", {"a", "b"}}, {"2", {"a", "b"}}};
    d.maps = {{"1", {{"a", "b"}, {"b", "a"}}}, {"2", {{"a", "b"}, {"b", "a"}}}};
    CHECK(validate_partial_action(*Z3, d).has("(iii)"));
  }
  SUBCASE("unknown names") {
    PartialActionData d;
    d.carrier = {"a"};
    d.anchor = {{"a", "q"}};
    CHECK_THROWS_AS(validate_partial_action(*G, d), StructuralError);
  }
}

TEST_CASE("global actions") {
  CHECK(is_global(*fx::fix_c()));
  CHECK(!is_global(*fx::fix_b()));
  CHECK(is_global(*fx::z2_swap()));
  // groupoid with only identities
  auto D = std::make_shared<const Groupoid>(pair_groupoid({"1"}));
  PartialActionData d;
  d.carrier = {"p", "q"};
  d.anchor = {{"p", "(1,1)"}, {"q", "(1,1)"}};
  CHECK(is_global(PartialAction::from_data(D, d)));
}

TEST_CASE("orbits of the fixtures") {
  auto B = fx::fix_b();
  auto ob = orbit_relation(*B).orbits;
  CHECK(ob.size() == 2);
  CHECK(!ob.same(B->index("a"), B->index("b")));

  auto C = fx::fix_c();
  CHECK(orbit_relation(*C).orbits.size() == 1);
  CHECK(orbit_of(*C, C->index("u")).count() == 2);
}

TEST_CASE("orbit maps and stabilizers") {
  auto C = fx::fix_c();
  const auto& P = C->groupoid();
  auto om = orbit_map(*C, C->index("u"));
  CHECK(elems_of(P, om.domain) == Names{"(1,1)", "(2,1)"});
  CHECK(om.table[P.index("(2,1)")] == C->index("v"));
  CHECK(elems_of(P, stabilizer(*C, C->index("u"))) == Names{"(1,1)"});

  auto F = fx::z2_fixed_point();
  CHECK(elems_of(F->groupoid(), stabilizer(*F, 0)) == Names{"e", "s"});

  auto B = fx::fix_b();
  auto b = B->index("b");
  CHECK(elems_of(B->groupoid(), orbit_map(*B, b).domain) == Names{"e"});
  CHECK(elems_of(B->groupoid(), stabilizer(*B, b)) == Names{"e"});
}

TEST_CASE("classification") {
  CHECK(classify(*fx::fix_c()) == Classification{true, true});
  CHECK(classify(*fx::fix_b()) == Classification{false, false});
  PartialActionData d;
  d.carrier = {"a"};
  d.anchor = {{"a", "e"}};
  CHECK(classify(PartialAction::from_data(fx::z2(), d)) == Classification{true, true});
}

TEST_CASE("restriction") {
  auto C = fx::fix_c();
  CHECK(restrict(*C, full_subset(2)) == *C);

  auto R = restrict(*C, make_subset(2, {C->index("u")}));
  CHECK(R.size() == 1);
  CHECK(R.domain(R.groupoid().index("(1,2)")).none());
  CHECK(R.domain(R.groupoid().index("(2,1)")).none());
  CHECK(validate_partial_action(R).ok());

  auto S = fx::z2_swap();
  auto Ra = restrict(*S, make_subset(2, {S->index("a")}));
  CHECK(Ra.domain(Ra.groupoid().index("s")).none());
}

TEST_CASE("invariant closure examples") {
  auto C = fx::fix_c();
  CHECK(names_of(*C, invariant_closure(*C, make_subset(2, {C->index("u")}))) == Names{"u", "v"});

  auto S = fx::z2_swap();
  CHECK(invariant_closure(*S, full_subset(2)) == full_subset(2));

  PartialActionData d;
  d.carrier = {"a", "b"};
  d.anchor = {{"a", "e"}, {"b", "e"}};
  d.domains = {{"s", {"a", "b"}}};
  d.maps = {{"s", {{"a", "a"}, {"b", "b"}}}};
  auto T = PartialAction::from_data(fx::z2(), d);
  auto a = make_subset(2, {T.index("a")});
  CHECK(is_invariant(T, a));
  CHECK(invariant_closure(T, a) == a);
}

TEST_CASE("random actions agree with the oracles") {
  gen::Rng rng(101);
  for (int trial = 0; trial < 150; ++trial) {
    auto A = gen::partial_action(rng);
    REQUIRE(validate_partial_action(*A).ok());

    auto labels = oracle::orbits(*A);
    auto rel = orbit_relation(*A);
    CHECK(rel.one_step_transitive);
    for (Point x = 0; x < A->size(); ++x)
      for (Point y = 0; y < A->size(); ++y) CHECK(rel.orbits.same(x, y) == (labels[x] == labels[y]));

    bool free = true;
    for (Point x = 0; x < A->size(); ++x) {
      auto st = oracle::stabilizer(*A, x);
      CHECK(members(stabilizer(*A, x)) == st);
      free = free && st.size() == 1;
    }
    CHECK(classify(*A) == Classification{oracle::count_classes(labels) <= 1, free});

    std::uniform_int_distribution<unsigned long> pick(0, (1ul << A->size()) - 1);
    Subset S(A->size(), pick(rng));
    CHECK(is_invariant(*A, S) == oracle::invariant(*A, S));
    auto R = restrict(*A, S);
    CHECK(validate_partial_action(R).ok());
  }
}

TEST_CASE("invariant closure of random global actions is minimal") {
  gen::Rng rng(7);
  for (int trial = 0; trial < 80; ++trial) {
    auto G = gen::groupoid(rng);
    auto B = gen::global_action(G, rng, 8, 3);
    std::uniform_int_distribution<unsigned long> pick(0, (1ul << B->size()) - 1);
    Subset S(B->size(), pick(rng));
    CHECK(invariant_closure(*B, S) == oracle::least_invariant_superset(*B, S));
  }
}

TEST_CASE("action graphs") {
  auto Z = fx::fix_b();
  auto D_G = FiniteTopology::discrete(Z->groupoid().names());
  auto D_X = FiniteTopology::discrete(Z->points());
  auto r = action_graphs(*Z, D_G, D_X);
  CHECK(r.graph_open);
  CHECK(r.graph_closed);

  auto S = fx::sierp_act();
  auto rs = action_graphs(*S.action, S.T_G, S.T_X);
  CHECK(rs.graph_open);
  CHECK(!rs.graph_closed);

  auto C = fx::fix_c();
  auto rc = action_graphs(*C, FiniteTopology::discrete(C->groupoid().names()), FiniteTopology::indiscrete(C->points()));
  CHECK(!rc.graph_open);

  CHECK_THROWS_AS(action_graphs(*C, D_G, D_X), StructuralError);
}

TEST_CASE("action graph matches its definition") {
  gen::Rng rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    auto A = gen::partial_action(rng);
    auto g = action_graph(*A);
    const auto n = A->size();
    for (Elem e = 0; e < A->groupoid().size(); ++e)
      for (Point x = 0; x < n; ++x) {
        auto y = A->apply(e, x);
        CHECK(g.gamma.test(e * n + x) == y.has_value());
        for (Point z = 0; z < n; ++z) CHECK(g.full_graph.test((e * n + x) * n + z) == (y && *y == z));
      }
  }
}

TEST_CASE("orbit spaces") {
  CHECK(orbit_space(*fx::fix_c()).orbits.size() == 1);
  CHECK(orbit_space(*fx::fix_b()).orbits.size() == 2);

  auto S = fx::sierp_act();
  auto os = orbit_space(*S.action, &S.T_X, &S.T_G);
  CHECK(os.labels == Names{"{x}", "{y}"});
  REQUIRE(os.topology.has_value());
  CHECK(*os.topology == FiniteTopology::from_named({"{x}", "{y}"}, {{"{y}", {"{x}", "{y}"}}}));
  CHECK(os.preimage_formula_holds == true);
  CHECK(os.projection_open == true);
  CHECK(os.topological_action == true);
}

TEST_CASE("orbit space formula on random topological instances") {
  gen::Rng rng(29);
  int seen = 0;
  for (int trial = 0; trial < 200 && seen < 30; ++trial) {
    auto inst = gen::topological(rng, 24);
    if (!inst) continue;
    ++seen;
    auto os = orbit_space(*inst->action, &inst->T_X, &inst->T_G);
    CHECK(os.preimage_formula_holds == true);
    CHECK(os.projection_open == true);
  }
  CHECK(seen == 30);
}

TEST_CASE("relabeling preserves the action") {
  gen::Rng rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    auto A = gen::partial_action(rng);
    auto R = gen::relabel(*A, rng);
    CHECK(validate_partial_action(*R.action).ok());
    CHECK(classify(*R.action) == classify(*A));
    CHECK(orbit_relation(*R.action).orbits.size() == orbit_relation(*A).orbits.size());
  }
}
