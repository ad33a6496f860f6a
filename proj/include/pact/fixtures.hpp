#pragma once

#include <memory>

#include "pact/groupoid.hpp"
#include "pact/partial_action.hpp"
#include "pact/topology.hpp"

namespace pact::fixtures {

/// Z2 = {e, s}.
std::shared_ptr<const Groupoid> z2();

/// Pair groupoid on objects 1, 2.
std::shared_ptr<const Groupoid> pair2();

/// Z3 ⊔ Z3 with elements e, g, g_inv and f, h, h_inv.
std::shared_ptr<const Groupoid> remark_groupoid();

/// Z2 on {a, b}, anchor e, X_s = {a}, α_s(a) = a.
std::shared_ptr<const PartialAction> fix_b();

/// PAIR2 on {u, v}, p(u) = (1,1), p(v) = (2,2), α_(1,2)(v) = u.
std::shared_ptr<const PartialAction> fix_c();

/// Three points over REMARK-G with X_e = {x1, x2}, X_f = {x2, x3},
/// α_g(x1) = x2 and α_h(x2) = x3. Not a partial action: x2 lies in two
/// identity domains.
PartialActionData remark_x_data();
std::shared_ptr<const PartialAction> remark_x_unchecked();

/// Z2 with X_e = {x, y}, X_s = {x}, α_s(x) = x, discrete on Z2 and the
/// Sierpiński topology {∅, {x}, {x, y}} on the carrier.
struct TopologicalInstance {
  std::shared_ptr<const PartialAction> action;
  FiniteTopology T_G;
  FiniteTopology T_X;
};
TopologicalInstance sierp_act();

/// Z2 acting on {a} trivially.
std::shared_ptr<const PartialAction> z2_fixed_point();

/// Z2 swapping a and b.
std::shared_ptr<const PartialAction> z2_swap();

/// Z4 on {a, b}: 1 and 3 swap, 2 fixes both.
std::shared_ptr<const PartialAction> z4_two_points();

}  // namespace pact::fixtures
