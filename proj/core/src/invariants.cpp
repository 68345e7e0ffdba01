#include "basisorder/invariants.hpp"

#include <algorithm>
#include <numeric>

#include "basisorder/checked.hpp"
#include "basisorder/error.hpp"

namespace basisorder {

namespace {

std::uint64_t gcd_of_offsets(std::span<const std::uint64_t> elems) {
  std::uint64_t g = 0;
  for (auto e : elems) g = std::gcd(g, e - elems.front());
  return g;
}

EventuallyPeriodicSet complement_in(const EventuallyPeriodicSet& a, const FiniteSet& x) {
  return remove_finite(a, x);
}

}  // namespace

std::uint64_t delta(const FiniteSet& s) {
  if (s.size() < 2) throw TooFewElements();
  return gcd_of_offsets(s.elements());
}

std::uint64_t delta(const EventuallyPeriodicSet& s) {
  const EventuallyPeriodicSet c = normalize(s);
  if (c.is_finite()) {
    if (c.finite_part().size() < 2) throw TooFewElements();
    return gcd_of_offsets(c.finite_part());
  }
  // x and x + n both lie in the window for every tail residue, so n itself is
  // among the differences; everything beyond reduces to the window mod n.
  const auto window = prefix(c, checked::add(c.threshold(), checked::mul(2, c.modulus())));
  return gcd_of_offsets(window);
}

std::uint64_t diam(const FiniteSet& x) { return x.max() - x.min(); }

Rational d_of(const FiniteSet& x) {
  return Rational(checked::narrow(diam(x)), checked::narrow(delta(x)));
}

EtaResult eta(const EventuallyPeriodicSet& a, const FiniteSet& x) {
  const EventuallyPeriodicSet rest = complement_in(a, x);
  const std::uint64_t span = diam(x);
  // A minimizing pair can be shifted down by n until its smaller element is
  // below T + n; its partner then lies below T + 2n + diam(X).
  const std::uint64_t bound = checked::add(
      checked::add(rest.threshold(), checked::mul(2, rest.modulus())), span);
  const auto elems = prefix(rest, bound);
  std::optional<EtaResult> best;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    const std::uint64_t need = std::max<std::uint64_t>(span, 1);
    auto it = std::lower_bound(elems.begin() + static_cast<std::ptrdiff_t>(i) + 1, elems.end(),
                               checked::add(elems[i], need));
    if (it == elems.end()) continue;
    const std::uint64_t gap = *it - elems[i];
    if (!best || gap < best->value) best = EtaResult{gap, {elems[i], *it}};
  }
  if (!best) throw NoQualifyingPair();
  return *best;
}

MuResult mu(const EventuallyPeriodicSet& a, const FiniteSet& x) {
  const EventuallyPeriodicSet rest = complement_in(a, x);
  if (rest.is_empty()) throw EmptyComplement();
  // The best y is the largest element <= max(X) or the smallest one above it;
  // the latter is either in the finite part or within one period of
  // max(max(X) + 1, T).
  const std::uint64_t bound =
      checked::add(std::max(x.max(), rest.threshold()), rest.modulus());
  const auto elems = prefix(rest, bound);
  std::optional<MuResult> best;
  for (auto y : elems) {
    const std::uint64_t v = std::max(x.max(), y) - std::min(x.min(), y);
    if (!best || v < best->value) best = MuResult{v, y};
  }
  if (!best) throw EmptyComplement();
  return *best;
}

InstanceInvariants compute_invariants(const EventuallyPeriodicSet& a, const FiniteSet& x) {
  InstanceInvariants inv{
      .delta_x = std::nullopt,
      .diam_x = diam(x),
      .d_x = std::nullopt,
      .eta = eta(a, x),
      .mu = mu(a, x),
  };
  if (x.size() >= 2) {
    inv.delta_x = delta(x);
    inv.d_x = d_of(x);
  }
  return inv;
}

}  // namespace basisorder
