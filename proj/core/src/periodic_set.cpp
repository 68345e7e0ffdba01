#include "basisorder/periodic_set.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "basisorder/checked.hpp"
#include "basisorder/error.hpp"

namespace basisorder {

namespace {

// Upper limit on the convolution window; beyond this the inputs are far
// outside anything the engine is meant for.
constexpr std::uint64_t kMaxWindowBits = std::uint64_t{1} << 34;

void sort_unique(std::vector<std::uint64_t>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::size_t window_bits(std::uint64_t bits) {
  if (bits > kMaxWindowBits)
    throw InvalidArgument("prefix window of " + std::to_string(bits) + " bits exceeds engine limit");
  return static_cast<std::size_t>(bits);
}

}  // namespace

FiniteSet::FiniteSet(std::vector<std::uint64_t> elements) : elements_(std::move(elements)) {
  sort_unique(elements_);
  if (elements_.empty()) throw InvalidArgument("finite set must be nonempty");
}

bool FiniteSet::contains(std::uint64_t x) const {
  return std::binary_search(elements_.begin(), elements_.end(), x);
}

EventuallyPeriodicSet::EventuallyPeriodicSet() : mask_(1, 0), canonical_(true) {}

EventuallyPeriodicSet::EventuallyPeriodicSet(std::vector<std::uint64_t> finite_part,
                                             std::uint64_t threshold, std::uint64_t modulus,
                                             std::vector<std::uint64_t> residues)
    : finite_(std::move(finite_part)),
      threshold_(threshold),
      modulus_(modulus),
      residues_(std::move(residues)) {
  if (modulus_ == 0) throw InvalidArgument("modulus must be positive");
  sort_unique(finite_);
  sort_unique(residues_);
  if (!residues_.empty() && residues_.back() >= modulus_)
    throw InvalidArgument("residue " + std::to_string(residues_.back()) + " >= modulus " +
                          std::to_string(modulus_));
  if (!finite_.empty() && finite_.back() >= threshold_)
    throw InvalidArgument("finite element " + std::to_string(finite_.back()) + " >= threshold " +
                          std::to_string(threshold_));
  rebuild_mask();
}

EventuallyPeriodicSet EventuallyPeriodicSet::periodic(std::uint64_t modulus,
                                                      std::vector<std::uint64_t> residues) {
  return normalize(EventuallyPeriodicSet({}, 0, modulus, std::move(residues)));
}

EventuallyPeriodicSet EventuallyPeriodicSet::from_finite(const FiniteSet& x) {
  std::vector<std::uint64_t> e(x.elements().begin(), x.elements().end());
  return normalize(EventuallyPeriodicSet(std::move(e), checked::add(x.max(), 1), 1, {}));
}

EventuallyPeriodicSet EventuallyPeriodicSet::naturals() { return periodic(1, {0}); }

std::optional<std::uint64_t> EventuallyPeriodicSet::min_element() const {
  if (!finite_.empty()) return finite_.front();
  if (residues_.empty()) return std::nullopt;
  // First tail element: smallest x >= threshold with x mod n in residues.
  std::uint64_t base = threshold_ - threshold_ % modulus_;
  std::uint64_t best = UINT64_MAX;
  for (auto r : residues_) {
    std::uint64_t x = base + r;
    if (x < threshold_) x = checked::add(x, modulus_);
    best = std::min(best, x);
  }
  return best;
}

bool EventuallyPeriodicSet::contains_finite(std::uint64_t x) const {
  return std::binary_search(finite_.begin(), finite_.end(), x);
}

void EventuallyPeriodicSet::rebuild_mask() {
  mask_.assign(modulus_, 0);
  for (auto r : residues_) mask_[r] = 1;
}

std::ostream& operator<<(std::ostream& os, const EventuallyPeriodicSet& s) {
  os << "{finite:[";
  for (std::size_t i = 0; i < s.finite_.size(); ++i) os << (i ? "," : "") << s.finite_[i];
  os << "], T:" << s.threshold_ << ", n:" << s.modulus_ << ", R:{";
  for (std::size_t i = 0; i < s.residues_.size(); ++i) os << (i ? "," : "") << s.residues_[i];
  return os << "}}";
}

EventuallyPeriodicSet normalize(const EventuallyPeriodicSet& s) {
  if (s.canonical_) return s;
  const std::uint64_t n = s.modulus_;
  const auto& mask = s.mask_;

  // Minimal period: the least divisor p of n with mask[i] == mask[i mod p].
  std::uint64_t period = n;
  for (std::uint64_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool ok = true;
    for (std::uint64_t i = p; i < n && ok; ++i) ok = mask[i] == mask[i % p];
    if (ok) {
      period = p;
      break;
    }
  }

  EventuallyPeriodicSet out;
  out.modulus_ = period;
  out.threshold_ = s.threshold_;
  out.finite_ = s.finite_;
  out.residues_.clear();
  for (std::uint64_t r = 0; r < period; ++r)
    if (mask[r]) out.residues_.push_back(r);
  out.rebuild_mask();

  // Absorb prefix elements into the tail while they agree with it.
  while (out.threshold_ > 0) {
    const std::uint64_t x = out.threshold_ - 1;
    const bool predicted = out.mask_[x % period] != 0;
    const bool actual = !out.finite_.empty() && out.finite_.back() == x;
    if (predicted != actual) break;
    if (actual) out.finite_.pop_back();
    --out.threshold_;
  }
  out.canonical_ = true;
  return out;
}

Bitset prefix_bitset(const EventuallyPeriodicSet& s, std::size_t nbits) {
  Bitset bits(nbits);
  for (auto x : s.finite_part()) {
    if (x >= nbits) break;
    bits.set(static_cast<std::size_t>(x));
  }
  const std::uint64_t n = s.modulus();
  const std::uint64_t t = s.threshold();
  if (t >= nbits) return bits;
  const std::uint64_t base = t - t % n;
  for (auto r : s.residues()) {
    std::uint64_t x = base + r;
    if (x < t) x += n;
    for (; x < nbits; x += n) bits.set(static_cast<std::size_t>(x));
  }
  return bits;
}

std::vector<std::uint64_t> prefix(const EventuallyPeriodicSet& s, std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  for (auto x : s.finite_part()) {
    if (x > bound) return out;
    out.push_back(x);
  }
  if (s.residues().empty() || s.threshold() > bound) return out;
  const std::uint64_t n = s.modulus();
  const std::uint64_t t = s.threshold();
  std::uint64_t block = t - t % n;
  while (block <= bound) {
    for (auto r : s.residues()) {
      std::uint64_t x = block + r;
      if (x < t) continue;
      if (x > bound) return out;
      out.push_back(x);
    }
    if (block > UINT64_MAX - n) break;
    block += n;
  }
  return out;
}

EventuallyPeriodicSet sumset(const EventuallyPeriodicSet& s1, const EventuallyPeriodicSet& s2) {
  if (s1.is_empty() || s2.is_empty()) throw EmptyOperand();
  const EventuallyPeriodicSet a = normalize(s1);
  const EventuallyPeriodicSet b = normalize(s2);

  // Each residue class mod L of the sumset is upward closed from its least
  // element, and that element is a + b with a < T1 + L, b < T2 + L. Hence the
  // sum is L-periodic from T1 + T2 + 2L on; two periods are computed past the
  // onset so the claim can be checked on the data.
  const std::uint64_t period = checked::lcm(a.modulus(), b.modulus());
  const std::uint64_t onset =
      checked::add(checked::add(a.threshold(), b.threshold()), checked::mul(2, period));
  const std::size_t nbits = window_bits(checked::add(onset, checked::mul(2, period)));

  Bitset pa = prefix_bitset(a, nbits);
  Bitset pb = prefix_bitset(b, nbits);
  if (pa.count() > pb.count()) std::swap(pa, pb);

  Bitset sum(nbits);
  pa.for_each_set([&](std::size_t x) { sum.or_shifted(pb, x); });

  const auto on = static_cast<std::size_t>(onset);
  const auto len = static_cast<std::size_t>(period);
  for (std::size_t j = 0; j < len; ++j) {
    if (sum.test(on + j) != sum.test(on + len + j))
      throw InternalInconsistency("sumset tail is not periodic past its provable onset");
  }

  std::vector<std::uint64_t> finite;
  for (std::size_t x = sum.find_next(0); x < on; x = sum.find_next(x + 1)) finite.push_back(x);
  std::vector<std::uint64_t> residues;
  for (std::size_t j = 0; j < len; ++j)
    if (sum.test(on + j)) residues.push_back((onset + j) % period);
  return normalize(EventuallyPeriodicSet(std::move(finite), onset, period, std::move(residues)));
}

EventuallyPeriodicSet h_fold(const EventuallyPeriodicSet& s, std::uint64_t h) {
  if (h == 0) throw InvalidArgument("h_fold requires h >= 1");
  if (s.is_empty()) throw EmptyOperand();
  const EventuallyPeriodicSet base = normalize(s);
  EventuallyPeriodicSet acc = base;
  const int top = 63 - std::countl_zero(h);
  for (int bit = top - 1; bit >= 0; --bit) {
    acc = sumset(acc, acc);
    if ((h >> bit) & 1U) acc = sumset(acc, base);
  }
  return acc;
}

bool is_cofinite(const EventuallyPeriodicSet& s) {
  const EventuallyPeriodicSet c = normalize(s);
  return c.modulus() == 1 && c.residues().size() == 1;
}

bool equal_up_to_finite(const EventuallyPeriodicSet& s1, const EventuallyPeriodicSet& s2) {
  const EventuallyPeriodicSet a = normalize(s1);
  const EventuallyPeriodicSet b = normalize(s2);
  return a.modulus() == b.modulus() && std::ranges::equal(a.residues(), b.residues());
}

EventuallyPeriodicSet saturate(const EventuallyPeriodicSet& s, std::uint64_t m) {
  if (m == 0) throw InvalidArgument("saturation modulus must be positive");
  if (s.is_empty()) throw EmptyOperand();
  std::vector<char> hit(m, 0);
  for (auto x : s.finite_part()) hit[x % m] = 1;
  // Tail elements congruent to r mod n run through r + gcd(n, m)Z mod m.
  const std::uint64_t g = std::gcd(s.modulus(), m);
  for (auto r : s.residues())
    for (std::uint64_t y = r % g; y < m; y += g) hit[y] = 1;
  std::vector<std::uint64_t> residues;
  for (std::uint64_t r = 0; r < m; ++r)
    if (hit[r]) residues.push_back(r);
  return EventuallyPeriodicSet::periodic(m, std::move(residues));
}

std::optional<std::uint64_t> kneser_period(const EventuallyPeriodicSet& s, std::uint64_t cap) {
  if (s.is_empty()) throw EmptyOperand();
  const EventuallyPeriodicSet c = normalize(s);
  for (std::uint64_t m = 1; m <= cap; ++m)
    if (equal_up_to_finite(c, saturate(c, m))) return m;
  return std::nullopt;
}

Density lower_density(const EventuallyPeriodicSet& s) {
  const EventuallyPeriodicSet c = normalize(s);
  return Density(static_cast<std::int64_t>(c.residues().size()), static_cast<std::int64_t>(c.modulus()));
}

EventuallyPeriodicSet remove_finite(const EventuallyPeriodicSet& s, const FiniteSet& x) {
  for (auto e : x.elements())
    if (!s.contains(e)) throw NotASubset(e);
  const std::uint64_t t = std::max(s.threshold(), checked::add(x.max(), 1));
  std::vector<std::uint64_t> finite;
  for (auto e : prefix(s, t - 1))
    if (!x.contains(e)) finite.push_back(e);
  std::vector<std::uint64_t> residues(s.residues().begin(), s.residues().end());
  return normalize(EventuallyPeriodicSet(std::move(finite), t, s.modulus(), std::move(residues)));
}

EventuallyPeriodicSet insert_finite(const EventuallyPeriodicSet& s, const FiniteSet& x) {
  const std::uint64_t t = std::max(s.threshold(), checked::add(x.max(), 1));
  std::vector<std::uint64_t> finite = t > 0 ? prefix(s, t - 1) : std::vector<std::uint64_t>{};
  finite.insert(finite.end(), x.elements().begin(), x.elements().end());
  std::vector<std::uint64_t> residues(s.residues().begin(), s.residues().end());
  return normalize(EventuallyPeriodicSet(std::move(finite), t, s.modulus(), std::move(residues)));
}

}  // namespace basisorder
