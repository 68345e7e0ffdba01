// Acceptance suite. Prints one PASS/FAIL line per criterion; exit status is
// nonzero when any selected criterion fails.

#include <chrono>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "basisorder/bounds.hpp"
#include "basisorder/error.hpp"
#include "basisorder/invariants.hpp"
#include "basisorder/order_engine.hpp"
#include "basisorder/periodic_set.hpp"
#include "basisorder/sweep.hpp"
#include "oracle.hpp"

namespace {

using namespace basisorder;
using EPS = EventuallyPeriodicSet;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : "; ") + p;
  return out;
}

Outcome construction_section2() {
  std::vector<std::string> mismatches;
  int rows = 0;
  for (std::uint64_t d = 1; d <= 3; ++d)
    for (std::uint64_t k = 2; k <= 4; ++k) {
      ++rows;
      const auto inst = section2_instance(d, k);
      const auto expected = expected_section2(d, k);
      const std::uint64_t g_a = order(inst.a).order;
      const std::uint64_t g_rest = order(remove_finite(inst.a, inst.x)).order;
      if (g_a != expected.g_a || g_rest != expected.g_astar) {
        std::ostringstream os;
        os << "(d=" << d << ",k=" << k << ") G(A)=" << g_a << " want " << expected.g_a << ", G(A*)=" << g_rest
           << " want " << expected.g_astar;
        mismatches.push_back(os.str());
      }
    }
  if (mismatches.empty()) return {true, std::to_string(rows) + " rows match"};
  return {false, std::to_string(mismatches.size()) + "/" + std::to_string(rows) + " rows differ: " + join(mismatches)};
}

Outcome construction_prop41() {
  std::vector<std::string> mismatches;
  int rows = 0;
  for (std::uint64_t h = 2; h <= 5; ++h)
    for (std::uint64_t m = 2; m <= 4; ++m) {
      ++rows;
      const auto inst = prop41_instance(h, m);
      const auto expected = expected_prop41(h, m);
      const std::uint64_t g_a = order(inst.a).order;
      const std::uint64_t g_rest = order(remove_finite(inst.a, inst.x)).order;
      const std::uint64_t mu_v = mu(inst.a, inst.x).value;
      if (g_a != expected.g_a || g_rest != expected.g_astar || mu_v != m) {
        std::ostringstream os;
        os << "(h=" << h << ",mu=" << m << ") G(A)=" << g_a << " want " << expected.g_a << ", G(A*)=" << g_rest
           << " want " << expected.g_astar << ", mu=" << mu_v;
        mismatches.push_back(os.str());
      }
    }
  if (mismatches.empty()) return {true, std::to_string(rows) + " rows match"};
  return {false, std::to_string(mismatches.size()) + "/" + std::to_string(rows) + " rows differ: " + join(mismatches)};
}

Outcome bound_suite() {
  std::size_t records = 0, violations = 0, errors = 0;
  std::vector<std::string> bad;
  const auto tally = [&](const SweepSummary& s) {
    records += s.records;
    violations += s.violations;
    errors += s.errors;
  };
  const auto note = [&](const SweepRecord& r) {
    if ((r.error || !r.all_satisfied) && bad.size() < 5) bad.push_back(r.key() + (r.error ? " " + *r.error : ""));
  };
  tally(exhaustive_two_residue_sweep(40, kDefaultOrderCap, note));
  SweepConfig sec;
  sec.family = Family::kSection2;
  sec.ranges = {{"d", {1, 3}}, {"k", {2, 4}}};
  tally(run_sweep(sec, note));
  SweepConfig prop;
  prop.family = Family::kProp41;
  prop.ranges = {{"h", {2, 5}}, {"mu", {2, 5}}};
  tally(run_sweep(prop, note));
  std::ostringstream os;
  os << records << " instances, " << violations << " violations, " << errors << " engine errors";
  if (!bad.empty()) os << ": " << join(bad);
  return {violations == 0 && errors == 0, os.str()};
}

Outcome klopsch_lev() {
  try {
    const KlopschLevSummary s = klopsch_lev_exhaustive(24);
    std::ostringstream os;
    os << s.product_checked << " bases of Z/nZ for n <= 24 (" << s.bases_checked
       << " with 2 <= rho <= n-1), max |C|*rho/(2n) = " << s.max_product_ratio;
    return {s.violations == 0, os.str()};
  } catch (const BoundViolation& e) {
    return {false, e.what()};
  }
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(20251014);
  int sum_bad = 0, inv_bad = 0;
  for (int i = 0; i < 500; ++i) {
    const EPS a = oracle::random_set(rng);
    EPS got;
    std::vector<char> want;
    const std::uint64_t window = 3 * (a.threshold() + 2 * a.modulus()) + 60;
    if (i % 2 == 0) {
      const EPS b = oracle::random_set(rng);
      got = sumset(a, b);
      want = oracle::sum_prefix(oracle::indicator(a, window), oracle::indicator(b, window));
    } else {
      const std::uint64_t h = std::uniform_int_distribution<std::uint64_t>(2, 6)(rng);
      got = h_fold(a, h);
      want = oracle::h_fold_prefix(a, h, window);
    }
    for (std::uint64_t x = 0; x < window; ++x)
      if (oracle::member(got, x) != (want[x] != 0)) {
        ++sum_bad;
        break;
      }
  }
  for (int i = 0; i < 200; ++i) {
    const auto [a, xs] = oracle::random_instance(rng);
    const FiniteSet x(xs);
    const std::uint64_t window = 10 * (a.threshold() + a.modulus() + x.max() + diam(x) + 1);
    const auto rest = oracle::elements_below(a, window, xs);
    const auto eta_ref = oracle::eta_brute(rest, diam(x));
    const auto mu_ref = oracle::mu_brute(rest, x.min(), x.max());
    if (!eta_ref || !mu_ref || eta(a, x).value != *eta_ref || mu(a, x).value != *mu_ref) ++inv_bad;
  }
  std::ostringstream os;
  os << "sumset/h_fold mismatches " << sum_bad << "/500, eta/mu mismatches " << inv_bad << "/200";
  return {sum_bad == 0 && inv_bad == 0, os.str()};
}

Outcome kneser_detection() {
  std::mt19937_64 rng(4242);
  int accepted = 0, drawn = 0, bad = 0;
  std::string first_bad;
  while (accepted < 100) {
    ++drawn;
    const EPS a = normalize(oracle::random_set(rng, {8, 12, true}));
    const EPS two_a = h_fold(a, 2);
    if (!(lower_density(two_a).value() < Rational(2) * lower_density(a).value())) continue;
    ++accepted;
    const std::uint64_t cap = 4 * a.modulus();
    const auto m = kneser_period(two_a, cap);
    bool ok = m.has_value() && equal_up_to_finite(two_a, saturate(two_a, *m)) && oracle::saturates_at(two_a, *m);
    if (ok)
      for (std::uint64_t mp = 1; mp < *m; ++mp)
        if (equal_up_to_finite(two_a, saturate(two_a, mp)) || oracle::saturates_at(two_a, mp)) ok = false;
    if (!ok) {
      ++bad;
      if (first_bad.empty()) {
        std::ostringstream os;
        os << a;
        first_bad = os.str();
      }
    }
  }
  std::ostringstream os;
  os << accepted << " sets with d(2A) < 2d(A) (" << drawn << " drawn), " << bad << " failures";
  if (!first_bad.empty()) os << ", first " << first_bad;
  return {bad == 0, os.str()};
}

Outcome ratio_reproduction() {
  std::vector<std::string> problems;
  SweepConfig sec;
  sec.family = Family::kSection2;
  sec.ranges = {{"d", {1, 3}}, {"k", {2, 4}}};
  Rational max_sec(0);
  run_sweep(sec, [&](const SweepRecord& r) {
    const auto d = static_cast<std::int64_t>(r.params.at(0).second);
    const auto k = static_cast<std::int64_t>(r.params.at(1).second);
    const Rational hi(1, 27);
    const Rational lo = hi - Rational(1, 27 * k * k * k * d);
    if (r.error || !r.ratio_d_nominal || *r.ratio_d_nominal < lo || *r.ratio_d_nominal > hi)
      problems.push_back("section2 " + r.key());
    else if (*r.ratio_d_nominal > max_sec)
      max_sec = *r.ratio_d_nominal;
  });

  SweepConfig prop;
  prop.family = Family::kProp41;
  prop.ranges = {{"h", {2, 5}}, {"mu", {2, 4}}};
  std::map<std::uint64_t, std::vector<Rational>> nominal, computed;
  run_sweep(prop, [&](const SweepRecord& r) {
    if (r.error || !r.ratio_mu_nominal || !r.ratio_mu) {
      problems.push_back("prop41 " + r.key());
      return;
    }
    nominal[r.params.at(1).second].push_back(*r.ratio_mu_nominal);
    computed[r.params.at(1).second].push_back(*r.ratio_mu);
  });
  std::ostringstream data;
  for (const auto& [m, seq] : nominal) {
    for (std::size_t i = 1; i < seq.size(); ++i)
      if (!(seq[i - 1] < seq[i])) problems.push_back("prop41 nominal ratio not increasing at mu=" + std::to_string(m));
    data << " mu=" << m << ":";
    for (const auto& v : computed[m]) data << ' ' << v;
  }
  std::ostringstream os;
  os << "section2 g/(d(3k)^3) within bounds for 9 rows (max " << max_sec
     << "), prop41 g/(mu h^2) increasing in h for each mu; g/(mu G(A)^2) by h:" << data.str();
  if (!problems.empty()) os << "; problems: " << join(problems);
  return {problems.empty(), os.str()};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"basisorder acceptance suite"};
  int only = 0;
  app.add_option("--criterion", only, "Run a single criterion (1-7)")->check(CLI::Range(1, 7));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria = {
      {1, "section2 construction orders", construction_section2},
      {2, "prop41 construction orders and mu", construction_prop41},
      {3, "bound suite over two-residue and construction families", bound_suite},
      {4, "Klopsch-Lev exhaustive, n <= 24", klopsch_lev},
      {5, "oracle equivalence", oracle_equivalence},
      {6, "Kneser period detection", kneser_detection},
      {7, "ratio reproduction", ratio_reproduction},
  };

  bool all = true;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "): " << o.detail
              << " [" << std::fixed << std::setprecision(2) << secs << "s]" << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
