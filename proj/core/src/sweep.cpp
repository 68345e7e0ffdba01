#include "basisorder/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "basisorder/checked.hpp"
#include "basisorder/error.hpp"

#ifndef BASISORDER_VERSION
#define BASISORDER_VERSION "0.0.0"
#endif

namespace basisorder {

namespace {

constexpr std::uint64_t kMaxProgressionLength = 4;

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t param(const ParamList& params, std::string_view name) {
  for (const auto& [k, v] : params)
    if (k == name) return v;
  throw InvalidArgument("missing parameter '" + std::string(name) + "'");
}

std::vector<std::string> required_ranges(Family f) {
  switch (f) {
    case Family::kSection2: return {"d", "k"};
    case Family::kProp41: return {"h", "mu"};
    case Family::kTwoResidue: return {"n"};
  }
  return {};
}

std::string error_kind(const Error& e) {
  if (dynamic_cast<const NotABasis*>(&e)) return "NotABasis";
  if (dynamic_cast<const OrderCapExceeded*>(&e)) return "OrderCapExceeded";
  if (dynamic_cast<const OverflowError*>(&e)) return "OverflowError";
  if (dynamic_cast<const InternalInconsistency*>(&e)) return "InternalInconsistency";
  if (dynamic_cast<const BoundViolation*>(&e)) return "BoundViolation";
  if (dynamic_cast<const InvalidArgument*>(&e)) return "InvalidArgument";
  return "Error";
}

Json optional_rational(const std::optional<Rational>& r) {
  return r ? rational_to_json(*r) : Json(nullptr);
}

std::optional<Rational> optional_rational_from(const Json& j, const char* field) {
  if (!j.contains(field) || j.at(field).is_null()) return std::nullopt;
  return rational_from_json(j.at(field));
}

void fold_max(std::optional<Rational>& acc, const std::optional<Rational>& v) {
  if (v && (!acc || *v > *acc)) acc = v;
}

Rational ratio(std::uint64_t num, const Rational& den) {
  return Rational(checked::narrow(num)) / den;
}

Rational u64r(std::uint64_t v) { return Rational(checked::narrow(v)); }

/// Computes results for a batch of tuples with a small worker pool; results
/// come back in input order.
std::vector<SweepRecord> evaluate_batch(Family family, const std::vector<const ParamList*>& batch,
                                        std::uint64_t h_cap, OrderCache& cache, unsigned parallelism,
                                        std::stop_token stop) {
  std::vector<SweepRecord> out(batch.size());
  const unsigned workers = std::max(1U, std::min<unsigned>(parallelism, static_cast<unsigned>(batch.size())));
  if (workers <= 1) {
    for (std::size_t i = 0; i < batch.size(); ++i)
      out[i] = evaluate_tuple(family, *batch[i], h_cap, &cache, stop);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        try {
          for (std::size_t i = next++; i < batch.size(); i = next++)
            out[i] = evaluate_tuple(family, *batch[i], h_cap, &cache, stop);
        } catch (...) {
          std::scoped_lock lock(failure_mu);
          if (!failure) failure = std::current_exception();
          next = batch.size();
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

struct ExistingFile {
  std::set<std::string> keys;
};

/// Validates the header and collects record keys; drops a torn trailing line.
ExistingFile load_for_resume(const std::string& path, const SweepConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw PersistenceError("cannot open " + path);
  std::vector<std::string> good;
  std::string line;
  bool torn = false;
  ExistingFile existing;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::parse_error&) {
      torn = true;
      break;
    }
    if (good.empty()) {
      if (j.value("type", "") != "header") throw PersistenceError(path + ": missing header record");
      if (j.value("config_hash", "") != cfg.hash())
        throw PersistenceError(path + ": config hash mismatch; refusing to resume");
    } else {
      existing.keys.insert(SweepRecord::from_json(j).key());
    }
    good.push_back(line);
  }
  if (std::getline(in, line)) torn = true;
  in.close();
  if (good.empty()) throw PersistenceError(path + ": empty sweep file");
  if (torn) {
    std::ofstream rewrite(path, std::ios::trunc);
    for (const auto& l : good) rewrite << l << '\n';
    if (!rewrite) throw PersistenceError("cannot rewrite " + path);
  }
  return existing;
}

}  // namespace

std::string_view engine_version() { return BASISORDER_VERSION; }

std::string_view family_name(Family f) {
  switch (f) {
    case Family::kSection2: return "section2";
    case Family::kProp41: return "prop41";
    case Family::kTwoResidue: return "two_residue";
  }
  return "unknown";
}

Family family_from_name(std::string_view name) {
  if (name == "section2") return Family::kSection2;
  if (name == "prop41") return Family::kProp41;
  if (name == "two_residue") return Family::kTwoResidue;
  throw InvalidArgument("unknown family '" + std::string(name) + "'");
}

SweepConfig SweepConfig::from_json(const Json& j) {
  if (!j.is_object()) throw InvalidArgument("sweep config must be an object");
  SweepConfig cfg;
  if (!j.contains("family") || !j.at("family").is_string())
    throw InvalidArgument("sweep config needs a string 'family'");
  cfg.family = family_from_name(j.at("family").get<std::string>());
  if (!j.contains("ranges") || !j.at("ranges").is_object())
    throw InvalidArgument("sweep config needs a 'ranges' object");
  for (const auto& [name, v] : j.at("ranges").items()) {
    ParamRange r;
    if (v.is_number_unsigned()) {
      r.lo = r.hi = v.get<std::uint64_t>();
    } else if (v.is_array() && v.size() == 2 && v[0].is_number_unsigned() && v[1].is_number_unsigned()) {
      r.lo = v[0].get<std::uint64_t>();
      r.hi = v[1].get<std::uint64_t>();
    } else {
      throw InvalidArgument("range '" + name + "' must be [lo, hi] or a single integer");
    }
    cfg.ranges[name] = r;
  }
  for (const auto& name : required_ranges(cfg.family))
    if (!cfg.ranges.contains(name)) throw InvalidArgument("missing range '" + name + "'");
  if (j.contains("h_cap")) {
    if (!j.at("h_cap").is_number_unsigned() || j.at("h_cap").get<std::uint64_t>() < 1)
      throw InvalidArgument("h_cap must be a positive integer");
    cfg.h_cap = j.at("h_cap").get<std::uint64_t>();
  }
  if (j.contains("out")) {
    if (!j.at("out").is_string()) throw InvalidArgument("'out' must be a string");
    cfg.out = j.at("out").get<std::string>();
  }
  if (j.contains("parallelism")) {
    if (!j.at("parallelism").is_number_unsigned()) throw InvalidArgument("'parallelism' must be a positive integer");
    cfg.parallelism = std::max(1U, j.at("parallelism").get<unsigned>());
  }
  if (j.contains("resume")) {
    if (!j.at("resume").is_boolean()) throw InvalidArgument("'resume' must be a boolean");
    cfg.resume = j.at("resume").get<bool>();
  }
  return cfg;
}

Json SweepConfig::to_json() const {
  Json ranges_json = Json::object();
  for (const auto& [name, r] : ranges) ranges_json[name] = {r.lo, r.hi};
  return Json{{"family", family_name(family)}, {"ranges", ranges_json}, {"h_cap", h_cap},
              {"out", out},                    {"parallelism", parallelism}, {"resume", resume}};
}

std::string SweepConfig::hash() const {
  Json ranges_json = Json::object();
  for (const auto& [name, r] : ranges) ranges_json[name] = {r.lo, r.hi};
  const Json semantic{{"family", family_name(family)}, {"ranges", ranges_json}, {"h_cap", h_cap}};
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(semantic.dump())));
  return buf;
}

std::string record_key(std::string_view family, const ParamList& params) {
  ParamList sorted = params;
  std::sort(sorted.begin(), sorted.end());
  std::string key(family);
  for (const auto& [k, v] : sorted) key += ";" + k + "=" + std::to_string(v);
  return key;
}

std::string SweepRecord::key() const { return record_key(family, params); }

Json SweepRecord::to_json(bool include_timestamp) const {
  Json p = Json::object();
  for (const auto& [k, v] : params) p[k] = v;
  Json f = Json::object();
  for (const auto& [k, v] : flags) f[k] = v ? Json(*v) : Json(nullptr);
  Json j{
      {"type", "record"},
      {"family", family},
      {"params", p},
      {"h_nominal", h_nominal ? Json(*h_nominal) : Json(nullptr)},
      {"h", h},
      {"g", g},
      {"d", optional_rational(d)},
      {"eta", eta},
      {"mu", mu},
      {"ratio_d", optional_rational(ratio_d)},
      {"ratio_mu", optional_rational(ratio_mu)},
      {"ratio_d_nominal", optional_rational(ratio_d_nominal)},
      {"ratio_mu_nominal", optional_rational(ratio_mu_nominal)},
      {"flags", f},
      {"all_satisfied", all_satisfied},
      {"error", error ? Json(*error) : Json(nullptr)},
      {"error_kind", error_kind},
      {"engine_version", engine_version},
  };
  if (include_timestamp) j["timestamp"] = timestamp;
  return j;
}

SweepRecord SweepRecord::from_json(const Json& j) {
  try {
    SweepRecord r;
    r.family = j.at("family").get<std::string>();
    for (const auto& [k, v] : j.at("params").items()) r.params.emplace_back(k, v.get<std::uint64_t>());
    if (!j.at("h_nominal").is_null()) r.h_nominal = j.at("h_nominal").get<std::uint64_t>();
    r.h = j.at("h").get<std::uint64_t>();
    r.g = j.at("g").get<std::uint64_t>();
    r.d = optional_rational_from(j, "d");
    r.eta = j.at("eta").get<std::uint64_t>();
    r.mu = j.at("mu").get<std::uint64_t>();
    r.ratio_d = optional_rational_from(j, "ratio_d");
    r.ratio_mu = optional_rational_from(j, "ratio_mu");
    r.ratio_d_nominal = optional_rational_from(j, "ratio_d_nominal");
    r.ratio_mu_nominal = optional_rational_from(j, "ratio_mu_nominal");
    for (const auto& [k, v] : j.at("flags").items())
      r.flags[k] = v.is_null() ? std::nullopt : std::optional<bool>(v.get<bool>());
    r.all_satisfied = j.at("all_satisfied").get<bool>();
    if (!j.at("error").is_null()) r.error = j.at("error").get<std::string>();
    r.error_kind = j.value("error_kind", "");
    r.timestamp = j.value("timestamp", "");
    r.engine_version = j.value("engine_version", "");
    return r;
  } catch (const Json::exception& e) {
    throw PersistenceError(std::string("malformed sweep record: ") + e.what());
  }
}

void SweepSummary::fold(const SweepRecord& r) {
  ++records;
  if (r.error) {
    ++errors;
    if (r.error_kind == "BoundViolation") ++violations;
    return;
  }
  if (!r.all_satisfied) ++violations;
  fold_max(max_ratio_d, r.ratio_d);
  fold_max(max_ratio_mu, r.ratio_mu);
  fold_max(max_ratio_d_nominal, r.ratio_d_nominal);
  fold_max(max_ratio_mu_nominal, r.ratio_mu_nominal);
}

Json SweepSummary::to_json() const {
  return Json{
      {"records", records},
      {"written", written},
      {"skipped", skipped},
      {"errors", errors},
      {"violations", violations},
      {"max_ratio_d", optional_rational(max_ratio_d)},
      {"max_ratio_mu", optional_rational(max_ratio_mu)},
      {"max_ratio_d_nominal", optional_rational(max_ratio_d_nominal)},
      {"max_ratio_mu_nominal", optional_rational(max_ratio_mu_nominal)},
  };
}

std::string OrderCache::key(const EventuallyPeriodicSet& s) { return set_to_json(s).dump(); }

std::optional<OrderResult> OrderCache::find(const EventuallyPeriodicSet& s) const {
  const std::string k = key(s);
  std::scoped_lock lock(mu_);
  auto it = map_.find(k);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

void OrderCache::insert(const EventuallyPeriodicSet& s, const OrderResult& r) {
  std::string k = key(s);
  std::scoped_lock lock(mu_);
  map_.emplace(std::move(k), r);
}

RemovalInstance instance_for(Family family, const ParamList& params) {
  switch (family) {
    case Family::kSection2: return section2_instance(param(params, "d"), param(params, "k"));
    case Family::kProp41: return prop41_instance(param(params, "h"), param(params, "mu"));
    case Family::kTwoResidue: {
      const std::uint64_t n = param(params, "n");
      const std::uint64_t a = param(params, "a");
      const std::uint64_t b = param(params, "b");
      const std::uint64_t len = param(params, "len");
      const std::uint64_t step = param(params, "step");
      std::vector<std::uint64_t> xs;
      for (std::uint64_t i = 0; i < len; ++i) xs.push_back(checked::mul(i, step));
      const FiniteSet x(std::move(xs));
      const auto star = EventuallyPeriodicSet::periodic(n, {a, b});
      return make_instance(insert_finite(star, x), x,
                           "two_residue(n=" + std::to_string(n) + ",a=" + std::to_string(a) +
                               ",b=" + std::to_string(b) + ",len=" + std::to_string(len) +
                               ",step=" + std::to_string(step) + ")");
    }
  }
  throw InvalidArgument("unknown family");
}

std::vector<ParamList> enumerate_tuples(const SweepConfig& cfg) {
  std::vector<ParamList> out;
  auto range = [&](const char* name) { return cfg.ranges.at(name); };
  switch (cfg.family) {
    case Family::kSection2: {
      const auto rd = range("d");
      const auto rk = range("k");
      if (rd.empty() || rk.empty()) return out;
      if (rd.lo < 1 || rk.lo < 2) throw InvalidArgument("section2 ranges need d >= 1, k >= 2");
      for (auto d = rd.lo; d <= rd.hi; ++d)
        for (auto k = rk.lo; k <= rk.hi; ++k) out.push_back({{"d", d}, {"k", k}});
      break;
    }
    case Family::kProp41: {
      const auto rh = range("h");
      const auto rm = range("mu");
      if (rh.empty() || rm.empty()) return out;
      if (rh.lo < 2 || rm.lo < 2) throw InvalidArgument("prop41 ranges need h >= 2, mu >= 2");
      for (auto h = rh.lo; h <= rh.hi; ++h)
        for (auto mu = rm.lo; mu <= rm.hi; ++mu) out.push_back({{"h", h}, {"mu", mu}});
      break;
    }
    case Family::kTwoResidue: {
      const auto rn = range("n");
      if (rn.empty()) return out;
      for (auto n = std::max<std::uint64_t>(rn.lo, 2); n <= rn.hi; ++n)
        for (std::uint64_t a = 0; a < n; ++a)
          for (std::uint64_t b = a + 1; b < n; ++b) {
            // A \ X keeps both tail classes, so it is a basis iff gcd(b - a, n) = 1.
            if (std::gcd(b - a, n) != 1) continue;
            out.push_back({{"n", n}, {"a", a}, {"b", b}, {"len", 1}, {"step", 0}});
            for (std::uint64_t len = 2; len <= kMaxProgressionLength; ++len)
              for (std::uint64_t t = 1; t <= n; ++t)
                out.push_back({{"n", n}, {"a", a}, {"b", b}, {"len", len}, {"step", t}});
          }
      break;
    }
  }
  return out;
}

SweepRecord evaluate_tuple(Family family, const ParamList& params, std::uint64_t h_cap,
                           OrderCache* cache, std::stop_token stop) {
  SweepRecord rec;
  rec.family = std::string(family_name(family));
  rec.params = params;
  rec.engine_version = std::string(engine_version());
  rec.timestamp = utc_timestamp();
  if (family == Family::kSection2) rec.h_nominal = 3 * param(params, "k");
  if (family == Family::kProp41) rec.h_nominal = param(params, "h");
  try {
    const RemovalInstance inst = instance_for(family, params);
    OrderFn rest_order;
    if (cache != nullptr) {
      rest_order = [cache](const EventuallyPeriodicSet& s, std::uint64_t cap, std::stop_token st) {
        if (auto hit = cache->find(s)) return *hit;
        OrderResult r = order(s, cap, st);
        cache->insert(s, r);
        return r;
      };
    }
    const BoundReport report = evaluate_instance(inst, h_cap, stop, rest_order);
    rec.h = report.h;
    rec.g = report.g;
    rec.d = report.invariants.d_x;
    rec.eta = report.invariants.eta.value;
    rec.mu = report.invariants.mu.value;
    const Rational h3 = u64r(rec.h) * u64r(rec.h) * u64r(rec.h);
    if (rec.d) rec.ratio_d = ratio(rec.g, *rec.d * h3);
    rec.ratio_mu = ratio(rec.g, u64r(rec.mu) * u64r(rec.h) * u64r(rec.h));
    if (rec.h_nominal) {
      const Rational hn = u64r(*rec.h_nominal);
      if (rec.d) rec.ratio_d_nominal = ratio(rec.g, *rec.d * hn * hn * hn);
      rec.ratio_mu_nominal = ratio(rec.g, u64r(rec.mu) * hn * hn);
    }
    for (const auto& c : report.checks)
      rec.flags[c.name] = c.applicable() ? std::optional<bool>(c.satisfied()) : std::nullopt;
    rec.all_satisfied = report.all_satisfied();
  } catch (const Cancelled&) {
    throw;
  } catch (const Error& e) {
    rec.error = e.what();
    rec.error_kind = error_kind(e);
  }
  return rec;
}

SweepSummary run_sweep(const SweepConfig& cfg, const RecordCallback& on_record, std::stop_token stop) {
  if (cfg.h_cap < 1) throw InvalidArgument("h_cap must be >= 1");
  const std::vector<ParamList> tuples = enumerate_tuples(cfg);

  std::set<std::string> existing;
  std::ofstream out;
  const bool persist = !cfg.out.empty();
  if (persist) {
    const bool have_file = std::filesystem::exists(cfg.out) && std::filesystem::file_size(cfg.out) > 0;
    if (cfg.resume && have_file) {
      existing = load_for_resume(cfg.out, cfg).keys;
      out.open(cfg.out, std::ios::app);
    } else {
      out.open(cfg.out, std::ios::trunc);
      const Json header{{"type", "header"},
                        {"config_hash", cfg.hash()},
                        {"config", cfg.to_json()},
                        {"engine_version", engine_version()}};
      out << header.dump() << '\n';
    }
    if (!out) throw PersistenceError("cannot write " + cfg.out);
  }

  SweepSummary live;
  OrderCache cache;
  const std::size_t batch_size = std::max<std::size_t>(64, 16 * std::size_t{cfg.parallelism});
  for (std::size_t start = 0; start < tuples.size(); start += batch_size) {
    if (stop.stop_requested()) throw Cancelled();
    std::vector<const ParamList*> batch;
    const std::size_t end = std::min(tuples.size(), start + batch_size);
    for (std::size_t i = start; i < end; ++i) {
      if (existing.contains(record_key(family_name(cfg.family), tuples[i]))) {
        ++live.skipped;
        continue;
      }
      batch.push_back(&tuples[i]);
    }
    const auto results = evaluate_batch(cfg.family, batch, cfg.h_cap, cache, cfg.parallelism, stop);
    for (const auto& rec : results) {
      if (persist) {
        out << rec.to_json().dump() << '\n';
        if (!out) throw PersistenceError("write failed on " + cfg.out);
      }
      ++live.written;
      live.fold(rec);
      if (on_record) on_record(rec);
    }
    if (persist) out.flush();
  }

  if (!persist) return live;
  out.close();
  SweepSummary summary = summarize_file(cfg.out);
  summary.written = live.written;
  summary.skipped = live.skipped;
  return summary;
}

std::vector<SweepRecord> read_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PersistenceError("cannot open " + path);
  std::vector<SweepRecord> out;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::parse_error& e) {
      throw PersistenceError(path + ": unparsable line: " + e.what());
    }
    if (header) {
      if (j.value("type", "") != "header") throw PersistenceError(path + ": missing header record");
      header = false;
      continue;
    }
    out.push_back(SweepRecord::from_json(j));
  }
  if (header) throw PersistenceError(path + ": empty sweep file");
  return out;
}

SweepSummary summarize_file(const std::string& path) {
  SweepSummary s;
  for (const auto& r : read_records(path)) s.fold(r);
  return s;
}

void export_csv(const std::string& jsonl_path, const std::string& csv_path) {
  const auto records = read_records(jsonl_path);
  std::ofstream out(csv_path, std::ios::trunc);
  if (!out) throw PersistenceError("cannot write " + csv_path);
  auto opt = [](const std::optional<Rational>& r) { return r ? r->to_string() : std::string(); };
  out << "family,params,h_nominal,h,g,d,eta,mu,ratio_d,ratio_mu,ratio_d_nominal,ratio_mu_nominal,"
         "all_satisfied,error\n";
  for (const auto& r : records) {
    std::string params;
    for (const auto& [k, v] : r.params) params += (params.empty() ? "" : ";") + k + "=" + std::to_string(v);
    out << r.family << ',' << params << ',' << (r.h_nominal ? std::to_string(*r.h_nominal) : "") << ','
        << r.h << ',' << r.g << ',' << opt(r.d) << ',' << r.eta << ',' << r.mu << ',' << opt(r.ratio_d)
        << ',' << opt(r.ratio_mu) << ',' << opt(r.ratio_d_nominal) << ',' << opt(r.ratio_mu_nominal)
        << ',' << (r.all_satisfied ? "true" : "false") << ',' << '"' << r.error.value_or("") << '"'
        << '\n';
  }
  if (!out) throw PersistenceError("write failed on " + csv_path);
}

SweepSummary exhaustive_two_residue_sweep(std::uint64_t n_max, std::uint64_t h_cap,
                                          const RecordCallback& on_record, unsigned parallelism,
                                          std::string out) {
  if (n_max < 2) throw InvalidArgument("exhaustive_two_residue_sweep requires n_max >= 2");
  SweepConfig cfg;
  cfg.family = Family::kTwoResidue;
  cfg.ranges["n"] = ParamRange{2, n_max};
  cfg.h_cap = h_cap;
  cfg.parallelism = parallelism;
  cfg.out = std::move(out);
  return run_sweep(cfg, on_record);
}

std::uint64_t cyclic_order_mask(std::uint64_t mask, unsigned n) {
  if (n == 0 || n > 63) throw InvalidArgument("cyclic_order_mask supports 1 <= n <= 63");
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  mask &= full;
  if (mask == 0) throw InvalidArgument("empty cyclic subset");
  std::uint64_t state = mask;
  int size = std::popcount(state);
  for (std::uint64_t h = 1;; ++h) {
    if (state == full) return h;
    std::uint64_t next = 0;
    for (std::uint64_t m = mask; m != 0; m &= m - 1) {
      const unsigned e = static_cast<unsigned>(std::countr_zero(m));
      next |= e == 0 ? state : (((state << e) | (state >> (n - e))) & full);
    }
    const int next_size = std::popcount(next);
    if (next_size == size) return 0;
    state = next;
    size = next_size;
  }
}

Json KlopschLevSummary::to_json() const {
  return Json{{"n_max", n_max},
              {"subsets_checked", subsets_checked},
              {"bases_checked", bases_checked},
              {"product_checked", product_checked},
              {"max_product_ratio", rational_to_json(max_product_ratio)},
              {"violations", violations}};
}

KlopschLevSummary klopsch_lev_exhaustive(std::uint64_t n_max, unsigned parallelism) {
  if (n_max < 3 || n_max > 30) throw InvalidArgument("klopsch_lev_exhaustive supports 3 <= n_max <= 30");
  KlopschLevSummary total;
  total.n_max = n_max;
  for (unsigned n = 1; n <= n_max; ++n) {
    std::vector<std::uint64_t> ceiling(n + 1, 0);
    for (std::uint64_t rho = 2; n >= 3 && rho + 1 <= n; ++rho) ceiling[rho] = klopsch_lev_rhs(n, rho);

    const std::uint64_t limit = std::uint64_t{1} << n;
    const unsigned workers = std::max(1U, parallelism);
    struct Partial {
      std::uint64_t subsets = 0, bases = 0, products = 0, max_product = 0;
      std::string failure;
    };
    std::vector<Partial> partial(workers);
    auto work = [&](unsigned w) {
      Partial& p = partial[w];
      for (std::uint64_t mask = 1 + w; mask < limit; mask += workers) {
        ++p.subsets;
        const std::uint64_t rho = cyclic_order_mask(mask, n);
        if (rho == 0) continue;
        const auto size = static_cast<std::uint64_t>(std::popcount(mask));
        ++p.products;
        p.max_product = std::max(p.max_product, size * rho);
        if (size * rho >= 2ULL * n && p.failure.empty())
          p.failure = "|C|*rho >= 2n at n=" + std::to_string(n) + ", mask=" + std::to_string(mask);
        if (rho >= 2 && rho <= n - 1) {
          ++p.bases;
          if (size > ceiling[rho] && p.failure.empty())
            p.failure = "|C| exceeds size ceiling at n=" + std::to_string(n) + ", mask=" + std::to_string(mask);
        }
      }
    };
    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    }
    std::uint64_t max_product = 0;
    for (const auto& p : partial) {
      total.subsets_checked += p.subsets;
      total.bases_checked += p.bases;
      total.product_checked += p.products;
      max_product = std::max(max_product, p.max_product);
      if (!p.failure.empty()) throw BoundViolation(p.failure);
    }
    const Rational r(static_cast<std::int64_t>(max_product), 2 * static_cast<std::int64_t>(n));
    if (r > total.max_product_ratio) total.max_product_ratio = r;
  }
  return total;
}

}  // namespace basisorder
