#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <stop_token>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "basisorder/bounds.hpp"
#include "basisorder/serialization.hpp"

namespace basisorder {

std::string_view engine_version();

enum class Family { kSection2, kProp41, kTwoResidue };

std::string_view family_name(Family f);
Family family_from_name(std::string_view name);

/// Inclusive integer range; empty when lo > hi.
struct ParamRange {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  bool empty() const { return lo > hi; }
};

/// Sweep configuration, mirroring the config JSON
/// {"family":…, "ranges":{…}, "h_cap":…, "out":…, "parallelism":…, "resume":bool}.
///
/// Families and their range keys:
///   section2     d, k        A = {0,k,…,dk} ∪ {x mod dk^3 ∈ {1,dk^2}}
///   prop41       h, mu       A = {0,1} ∪ {x mod h(h-1)mu+1 ∈ {mu,h·mu}}
///   two_residue  n           every residue pair {a,b} mod n with gcd(b-a,n) = 1,
///                            X = {0,t,…,(len-1)t}, 1 <= len <= 4, 1 <= t <= n
struct SweepConfig {
  Family family = Family::kSection2;
  std::map<std::string, ParamRange> ranges;
  std::uint64_t h_cap = kDefaultOrderCap;
  std::string out;  // empty: fold in memory without persisting
  unsigned parallelism = 1;
  bool resume = false;

  static SweepConfig from_json(const Json& j);
  Json to_json() const;
  /// FNV-1a over the fields that determine record content (family, ranges, h_cap).
  std::string hash() const;
};

using ParamList = std::vector<std::pair<std::string, std::uint64_t>>;

/// One evaluated parameter tuple. Engine errors are carried in `error`
/// rather than aborting the sweep.
struct SweepRecord {
  std::string family;
  ParamList params;
  std::optional<std::uint64_t> h_nominal;
  std::uint64_t h = 0;
  std::uint64_t g = 0;
  std::optional<Rational> d;
  std::uint64_t eta = 0;
  std::uint64_t mu = 0;
  std::optional<Rational> ratio_d;           // g / (d·h^3), h = G(A)
  std::optional<Rational> ratio_mu;          // g / (mu·h^2)
  std::optional<Rational> ratio_d_nominal;   // same with the family's nominal h
  std::optional<Rational> ratio_mu_nominal;
  std::map<std::string, std::optional<bool>> flags;
  bool all_satisfied = false;
  std::optional<std::string> error;
  std::string error_kind;
  std::string timestamp;
  std::string engine_version;

  /// family + params, the resume key.
  std::string key() const;
  /// Record JSON; timestamps are dropped when include_timestamp is false.
  Json to_json(bool include_timestamp = true) const;
  static SweepRecord from_json(const Json& j);
};

std::string record_key(std::string_view family, const ParamList& params);

struct SweepSummary {
  std::size_t records = 0;   // records in the final result set
  std::size_t written = 0;   // records produced by this run
  std::size_t skipped = 0;   // tuples already present when resuming
  std::size_t errors = 0;    // records carrying an engine error
  std::size_t violations = 0;
  std::optional<Rational> max_ratio_d;
  std::optional<Rational> max_ratio_mu;
  std::optional<Rational> max_ratio_d_nominal;
  std::optional<Rational> max_ratio_mu_nominal;

  void fold(const SweepRecord& r);
  Json to_json() const;
};

/// Thread-safe memo of G(S) keyed by the canonical set literal.
class OrderCache {
 public:
  std::optional<OrderResult> find(const EventuallyPeriodicSet& s) const;
  void insert(const EventuallyPeriodicSet& s, const OrderResult& r);

 private:
  static std::string key(const EventuallyPeriodicSet& s);
  mutable std::mutex mu_;
  std::unordered_map<std::string, OrderResult> map_;
};

/// Builds the instance for one parameter tuple of a family record.
RemovalInstance instance_for(Family family, const ParamList& params);

/// All parameter tuples of the config, in deterministic order.
std::vector<ParamList> enumerate_tuples(const SweepConfig& cfg);

/// Evaluates one tuple into a record (never throws for engine errors).
SweepRecord evaluate_tuple(Family family, const ParamList& params, std::uint64_t h_cap,
                           OrderCache* cache = nullptr, std::stop_token stop = {});

using RecordCallback = std::function<void(const SweepRecord&)>;

/// Runs the sweep. With cfg.out set, records are appended as line-delimited
/// JSON after a header line and the summary is a fold over the final file;
/// otherwise the summary folds the records as they are produced. Output order
/// is the tuple order regardless of parallelism.
SweepSummary run_sweep(const SweepConfig& cfg, const RecordCallback& on_record = {},
                       std::stop_token stop = {});

/// Folds every record line of a sweep file. Throws PersistenceError.
SweepSummary summarize_file(const std::string& path);

/// Reads all records of a sweep file.
std::vector<SweepRecord> read_records(const std::string& path);

/// CSV export of a sweep file; one row per record.
void export_csv(const std::string& jsonl_path, const std::string& csv_path);

/// Two-residue family over 2 <= n <= n_max, in memory unless `out` is given.
SweepSummary exhaustive_two_residue_sweep(std::uint64_t n_max, std::uint64_t h_cap = kDefaultOrderCap,
                                          const RecordCallback& on_record = {},
                                          unsigned parallelism = 1, std::string out = {});

struct KlopschLevSummary {
  std::uint64_t n_max = 0;
  std::uint64_t subsets_checked = 0;
  std::uint64_t bases_checked = 0;      // bases with rho >= 2 checked against the size ceiling
  std::uint64_t product_checked = 0;    // bases checked against |C|·rho < 2n
  Rational max_product_ratio;           // max |C|·rho / (2n)
  std::uint64_t violations = 0;

  Json to_json() const;
};

/// rho for a subset of Z/nZ given as a bitmask, n <= 63. 0 when not a basis.
std::uint64_t cyclic_order_mask(std::uint64_t mask, unsigned n);

/// Checks the size ceiling and |C|·rho(C) < 2n for every basis C of Z/nZ,
/// n <= n_max (n_max <= 30). Throws BoundViolation on the first failure.
KlopschLevSummary klopsch_lev_exhaustive(std::uint64_t n_max, unsigned parallelism = 1);

}  // namespace basisorder
