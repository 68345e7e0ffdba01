#include "basisorder/bounds.hpp"

#include <algorithm>
#include <numeric>

#include "basisorder/checked.hpp"
#include "basisorder/error.hpp"

namespace basisorder {

namespace {

Rational as_rational(std::uint64_t v) { return Rational(checked::narrow(v)); }

void require(bool ok, const char* what) {
  if (!ok) throw InvalidArgument(what);
}

}  // namespace

RemovalInstance make_instance(const EventuallyPeriodicSet& a, const FiniteSet& x, std::string label) {
  const EventuallyPeriodicSet canon = normalize(a);
  const EventuallyPeriodicSet rest = remove_finite(canon, x);
  if (rest.is_finite()) throw InvalidArgument("A \\ X must be infinite");
  return RemovalInstance{canon, x, std::move(label)};
}

RemovalInstance section2_instance(std::uint64_t d, std::uint64_t k) {
  require(d >= 1 && k >= 2, "section2 requires d >= 1, k >= 2");
  const std::uint64_t k2 = checked::mul(k, k);
  const std::uint64_t n = checked::mul(d, checked::mul(k2, k));
  std::vector<std::uint64_t> xs;
  for (std::uint64_t j = 0; j <= d; ++j) xs.push_back(checked::mul(j, k));
  const FiniteSet x(std::move(xs));
  const auto star = EventuallyPeriodicSet::periodic(n, {1, checked::mul(d, k2)});
  return make_instance(insert_finite(star, x), x,
                       "section2(d=" + std::to_string(d) + ",k=" + std::to_string(k) +
                           ",h=" + std::to_string(3 * k) + ")");
}

RemovalInstance prop41_instance(std::uint64_t h, std::uint64_t mu) {
  require(h >= 2 && mu >= 2, "prop41 requires h >= 2, mu >= 2");
  const std::uint64_t n = checked::add(checked::mul(checked::mul(h, h - 1), mu), 1);
  const FiniteSet x{0, 1};
  const auto star = EventuallyPeriodicSet::periodic(n, {mu, checked::mul(h, mu)});
  return make_instance(insert_finite(star, x), x,
                       "prop41(h=" + std::to_string(h) + ",mu=" + std::to_string(mu) + ")");
}

ExpectedOrders expected_section2(std::uint64_t d, std::uint64_t k) {
  require(d >= 1 && k >= 2, "section2 requires d >= 1, k >= 2");
  return {3 * k - 2, checked::mul(d, checked::mul(k, checked::mul(k, k))) - 1};
}

ExpectedOrders expected_prop41(std::uint64_t h, std::uint64_t mu) {
  require(h >= 2 && mu >= 2, "prop41 requires h >= 2, mu >= 2");
  const std::uint64_t g_a = mu == 2 ? 2 * h - 2 : 2 * h + mu - 5;
  return {g_a, checked::mul(checked::mul(h, h - 1), mu)};
}

Rational farhi_bound_d(std::uint64_t h, const Rational& d) {
  require(h >= 1, "h >= 1");
  const std::uint64_t quad = checked::mul(h, h + 3) / 2;
  const std::uint64_t cubic = checked::mul(checked::mul(h, h - 1), h + 4) / 6;
  return as_rational(quad) + d * as_rational(cubic);
}

std::uint64_t farhi_bound_eta(std::uint64_t h, std::uint64_t eta) {
  require(h >= 1, "h >= 1");
  return checked::add(checked::mul(eta, checked::mul(h, h) - 1), h + 1);
}

std::uint64_t farhi_bound_mu(std::uint64_t h, std::uint64_t mu) {
  require(h >= 1, "h >= 1");
  const std::uint64_t hm = checked::mul(h, mu);
  return checked::mul(hm, checked::add(hm, 3)) / 2;
}

std::uint64_t hegarty_bound_mu(std::uint64_t h, std::uint64_t mu) {
  require(h >= 1 && mu >= 1, "h, mu >= 1");
  return checked::mul(checked::mul(4, h), checked::add(checked::mul(2, checked::mul(h, mu)), 1));
}

std::pair<std::uint64_t, std::uint64_t> plagne_bounds(std::uint64_t h) {
  require(h >= 1, "h >= 1");
  const std::uint64_t lower = checked::mul(h, h + 4) / 3;
  const std::uint64_t upper = checked::mul(h, h + 1) / 2 + (h - 1 + 2) / 3;
  return {lower, upper};
}

std::pair<Rational, Rational> nash_nathanson_bounds(std::uint64_t k, std::uint64_t h) {
  require(k >= 1 && h >= 1, "k, h >= 1");
  const Rational ratio = as_rational(h) / as_rational(k + 1);
  Rational power(1);
  Rational h_power(1);
  Rational factorial(1);
  for (std::uint64_t i = 1; i <= k + 1; ++i) {
    power *= ratio;
    h_power *= as_rational(h);
    factorial *= as_rational(i);
  }
  return {Rational(4, 3) * power, h_power / factorial};
}

std::uint64_t klopsch_lev_rhs(std::uint64_t n, std::uint64_t rho) {
  require(n >= 3, "klopsch_lev_rhs requires n >= 3");
  require(rho >= 2 && rho <= n - 1, "klopsch_lev_rhs requires 2 <= rho <= n - 1");
  std::optional<std::uint64_t> best;
  for (std::uint64_t d = rho + 1; d <= n; ++d) {
    if (n % d != 0) continue;
    const std::uint64_t v = (n / d) * ((d - 2) / (rho - 1) + 1);
    best = std::max(best.value_or(0), v);
  }
  if (!best) throw NoQualifyingDivisor();
  return *best;
}

Density gap_density_lower(const Rational& alpha) {
  if (alpha <= Rational(0)) throw InvalidArgument("alpha must be positive");
  return Density(1, 2 * alpha.ceil() + 1);
}

std::uint64_t lemma33_bound(const EventuallyPeriodicSet& s) {
  const Density dens = lower_density(s);
  if (dens.is_zero()) throw ZeroDensity();
  return static_cast<std::uint64_t>((Rational(4) / dens.value()).floor());
}

std::uint64_t tail_gap_radius(const EventuallyPeriodicSet& s) {
  const EventuallyPeriodicSet c = normalize(s);
  if (c.is_finite()) throw ZeroDensity();
  const auto r = c.residues();
  std::uint64_t gap = r.front() + c.modulus() - r.back();
  for (std::size_t i = 1; i < r.size(); ++i) gap = std::max(gap, r[i] - r[i - 1]);
  return gap / 2;
}

bool BoundReport::all_satisfied() const {
  return std::ranges::all_of(checks, [](const BoundCheck& c) { return c.satisfied(); });
}

std::vector<std::string> BoundReport::violations() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (!c.satisfied()) out.push_back(c.name);
  return out;
}

const BoundCheck& BoundReport::check(std::string_view name) const {
  for (const auto& c : checks)
    if (c.name == name) return c;
  throw InvalidArgument("unknown bound: " + std::string(name));
}

BoundReport evaluate_instance(const RemovalInstance& instance, std::uint64_t h_cap,
                              std::stop_token stop, const OrderFn& rest_order) {
  const EventuallyPeriodicSet& a = instance.a;
  const EventuallyPeriodicSet rest = remove_finite(a, instance.x);

  BoundReport r;
  r.label = instance.label;
  r.order_a = order(a, h_cap, stop);
  r.order_rest = rest_order ? rest_order(rest, h_cap, stop) : order(rest, h_cap, stop);
  r.h = r.order_a.order;
  r.g = r.order_rest.order;
  r.invariants = compute_invariants(a, instance.x);
  r.density_rest = lower_density(rest);
  r.plagne = plagne_bounds(r.h);
  r.nash_nathanson = nash_nathanson_bounds(instance.x.size(), r.h);

  const auto& inv = r.invariants;
  const std::uint64_t h = r.h;
  const std::uint64_t g = r.g;
  std::optional<Rational> rhs_d;
  if (inv.d_x) rhs_d = farhi_bound_d(h, *inv.d_x);
  std::optional<Rational> rhs_plagne;
  if (instance.x.size() == 1) rhs_plagne = as_rational(r.plagne.second);

  r.checks = {
      {"farhi_d", g, rhs_d},
      {"farhi_eta", g, as_rational(farhi_bound_eta(h, inv.eta.value))},
      {"farhi_mu", g, as_rational(farhi_bound_mu(h, inv.mu.value))},
      {"hegarty_mu", g, as_rational(hegarty_bound_mu(h, inv.mu.value))},
      {"plagne_upper", g, rhs_plagne},
      {"density_order", g, as_rational(lemma33_bound(rest))},
      {"density_order_a", h, as_rational(lemma33_bound(a))},
  };
  return r;
}

BoundReport verify_instance(const RemovalInstance& instance, std::uint64_t h_cap,
                            std::stop_token stop) {
  BoundReport r = evaluate_instance(instance, h_cap, stop);
  if (!r.all_satisfied()) {
    std::string names;
    for (const auto& v : r.violations()) names += (names.empty() ? "" : ", ") + v;
    throw BoundViolation(instance.label + ": violated " + names + " (h=" + std::to_string(r.h) +
                         ", g=" + std::to_string(r.g) + ")");
  }
  return r;
}

}  // namespace basisorder
