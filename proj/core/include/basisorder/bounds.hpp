#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stop_token>
#include <string>
#include <utility>
#include <vector>

#include "basisorder/invariants.hpp"
#include "basisorder/order_engine.hpp"
#include "basisorder/periodic_set.hpp"
#include "basisorder/rational.hpp"

namespace basisorder {

/// A pair (A, X) with X ⊆ A finite and A \ X infinite.
struct RemovalInstance {
  EventuallyPeriodicSet a;
  FiniteSet x;
  std::string label;
};

/// Validates X ⊆ A and that A \ X is infinite; canonicalizes A.
RemovalInstance make_instance(const EventuallyPeriodicSet& a, const FiniteSet& x, std::string label);

/// X = {0, k, ..., dk} and A* = {x : x mod dk^3 ∈ {1, dk^2}}; A = A* ∪ X.
RemovalInstance section2_instance(std::uint64_t d, std::uint64_t k);

/// X = {0, 1} and A* = {x : x mod n ∈ {mu, h·mu}} with n = h(h-1)mu + 1.
RemovalInstance prop41_instance(std::uint64_t h, std::uint64_t mu);

struct ExpectedOrders {
  std::uint64_t g_a;      // claimed G(A)
  std::uint64_t g_astar;  // claimed G(A \ X)
};

/// (3k - 2, dk^3 - 1).
ExpectedOrders expected_section2(std::uint64_t d, std::uint64_t k);
/// (2h - 2 if mu == 2 else 2h + mu - 5, h(h-1)mu).
ExpectedOrders expected_prop41(std::uint64_t h, std::uint64_t mu);

/// h(h+3)/2 + d·h(h-1)(h+4)/6, exact in d.
Rational farhi_bound_d(std::uint64_t h, const Rational& d);
/// eta(h^2 - 1) + h + 1.
std::uint64_t farhi_bound_eta(std::uint64_t h, std::uint64_t eta);
/// h·mu(h·mu + 3)/2.
std::uint64_t farhi_bound_mu(std::uint64_t h, std::uint64_t mu);
/// 4h(2h·mu + 1).
std::uint64_t hegarty_bound_mu(std::uint64_t h, std::uint64_t mu);

/// (floor(h(h+4)/3), h(h+1)/2 + ceil((h-1)/3)); bounds on the one-element
/// removal extremal function.
std::pair<std::uint64_t, std::uint64_t> plagne_bounds(std::uint64_t h);

/// ((4/3)(h/(k+1))^(k+1), h^(k+1)/(k+1)!). Asymptotic guides only; nothing is
/// asserted against them.
std::pair<Rational, Rational> nash_nathanson_bounds(std::uint64_t k, std::uint64_t h);

/// max{ (n/d)(floor((d-2)/(rho-1)) + 1) : d | n, d >= rho + 1 }: the size
/// ceiling for bases of Z/nZ of order at least rho.
std::uint64_t klopsch_lev_rhs(std::uint64_t n, std::uint64_t rho);

/// 1 / (2·ceil(alpha) + 1).
Density gap_density_lower(const Rational& alpha);

/// floor(4 / lower_density(s)). Throws ZeroDensity.
std::uint64_t lemma33_bound(const EventuallyPeriodicSet& s);

/// floor(g/2) where g is the largest gap between consecutive tail elements;
/// every large integer is within this distance of s.
std::uint64_t tail_gap_radius(const EventuallyPeriodicSet& s);

/// One bound: lhs <= rhs, or not applicable to the instance.
struct BoundCheck {
  std::string name;
  std::uint64_t lhs = 0;
  std::optional<Rational> rhs;  // nullopt when not applicable
  bool applicable() const { return rhs.has_value(); }
  bool satisfied() const { return !rhs || Rational(static_cast<std::int64_t>(lhs)) <= *rhs; }
};

struct BoundReport {
  std::string label;
  std::uint64_t h = 0;  // G(A)
  std::uint64_t g = 0;  // G(A \ X)
  OrderResult order_a{};
  OrderResult order_rest{};
  InstanceInvariants invariants;
  Density density_rest;
  std::pair<std::uint64_t, std::uint64_t> plagne{};
  std::pair<Rational, Rational> nash_nathanson{};
  /// farhi_d, farhi_eta, farhi_mu, hegarty_mu, plagne_upper, density_order,
  /// density_order_a, in that order.
  std::vector<BoundCheck> checks;

  bool all_satisfied() const;
  std::vector<std::string> violations() const;
  const BoundCheck& check(std::string_view name) const;
};

/// Computes G(S); lets callers memoize the order of A \ X across instances.
using OrderFn = std::function<OrderResult(const EventuallyPeriodicSet&, std::uint64_t, std::stop_token)>;

/// Computes G(A), G(A\X), the invariants and every applicable bound without
/// judging the outcome. Engine errors propagate. `rest_order`, when set,
/// replaces order() for A \ X.
BoundReport evaluate_instance(const RemovalInstance& instance,
                              std::uint64_t h_cap = kDefaultOrderCap, std::stop_token stop = {},
                              const OrderFn& rest_order = {});

/// evaluate_instance, then throws BoundViolation if any bound fails.
BoundReport verify_instance(const RemovalInstance& instance,
                            std::uint64_t h_cap = kDefaultOrderCap, std::stop_token stop = {});

}  // namespace basisorder
