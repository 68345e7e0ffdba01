#include "basisorder/serialization.hpp"

#include <algorithm>
#include <sstream>

#include "basisorder/error.hpp"

namespace basisorder {

namespace {

std::vector<std::uint64_t> u64_array(const Json& j, const char* field) {
  if (!j.is_array()) throw InvalidArgument(std::string("'") + field + "' must be an array");
  std::vector<std::uint64_t> out;
  out.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_number_unsigned() && !(e.is_number_integer() && e.get<std::int64_t>() >= 0))
      throw InvalidArgument(std::string("'") + field + "' must hold non-negative integers");
    out.push_back(e.get<std::uint64_t>());
  }
  return out;
}

std::uint64_t u64_field(const Json& j, const char* field) {
  if (!j.contains(field)) throw InvalidArgument(std::string("missing field '") + field + "'");
  const auto& v = j.at(field);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    throw InvalidArgument(std::string("'") + field + "' must be a non-negative integer");
  return v.get<std::uint64_t>();
}

std::string csv_opt(const std::optional<Rational>& r) { return r ? r->to_string() : ""; }

}  // namespace

Json rational_to_json(const Rational& r) { return r.to_string(); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw InvalidArgument("rational must be a string or an integer");
}

Json set_to_json(const EventuallyPeriodicSet& s) {
  return Json{
      {"finite", std::vector<std::uint64_t>(s.finite_part().begin(), s.finite_part().end())},
      {"threshold", s.threshold()},
      {"modulus", s.modulus()},
      {"residues", std::vector<std::uint64_t>(s.residues().begin(), s.residues().end())},
  };
}

EventuallyPeriodicSet set_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidArgument("set literal must be a JSON object");
  std::vector<std::uint64_t> finite = j.contains("finite") ? u64_array(j.at("finite"), "finite")
                                                           : std::vector<std::uint64_t>{};
  std::vector<std::uint64_t> residues =
      j.contains("residues") ? u64_array(j.at("residues"), "residues") : std::vector<std::uint64_t>{};
  std::uint64_t threshold = 0;
  if (j.contains("threshold"))
    threshold = u64_field(j, "threshold");
  else if (!finite.empty())
    threshold = *std::max_element(finite.begin(), finite.end()) + 1;
  const std::uint64_t modulus = j.contains("modulus") ? u64_field(j, "modulus") : 1;
  return normalize(EventuallyPeriodicSet(std::move(finite), threshold, modulus, std::move(residues)));
}

Json finite_to_json(const FiniteSet& x) {
  return std::vector<std::uint64_t>(x.elements().begin(), x.elements().end());
}

FiniteSet finite_from_json(const Json& j) { return FiniteSet(u64_array(j, "X")); }

Json instance_to_json(const RemovalInstance& instance) {
  return Json{{"A", set_to_json(instance.a)}, {"X", finite_to_json(instance.x)}, {"label", instance.label}};
}

RemovalInstance instance_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("A") || !j.contains("X"))
    throw InvalidArgument("instance must be an object with 'A' and 'X'");
  std::string label = j.contains("label") && j.at("label").is_string() ? j.at("label").get<std::string>() : "";
  return make_instance(set_from_json(j.at("A")), finite_from_json(j.at("X")), std::move(label));
}

Json invariants_to_json(const InstanceInvariants& inv) {
  Json j;
  j["delta"] = inv.delta_x ? Json(*inv.delta_x) : Json(nullptr);
  j["diam"] = inv.diam_x;
  j["d"] = inv.d_x ? rational_to_json(*inv.d_x) : Json(nullptr);
  j["eta"] = inv.eta.value;
  j["mu"] = inv.mu.value;
  j["eta_witness"] = {inv.eta.witness.first, inv.eta.witness.second};
  j["mu_witness"] = inv.mu.witness;
  return j;
}

Json report_to_json(const BoundReport& report) {
  Json rhs = Json::object();
  Json flags = Json::object();
  for (const auto& c : report.checks) {
    rhs[c.name] = c.rhs ? rational_to_json(*c.rhs) : Json(nullptr);
    flags[c.name] = c.applicable() ? Json(c.satisfied()) : Json(nullptr);
  }
  return Json{
      {"label", report.label},
      {"h", report.h},
      {"g", report.g},
      {"cofinite_threshold_A", report.order_a.cofinite_witness_threshold},
      {"cofinite_threshold_rest", report.order_rest.cofinite_witness_threshold},
      {"invariants", invariants_to_json(report.invariants)},
      {"density_rest", rational_to_json(report.density_rest.value())},
      {"plagne", {{"lower", report.plagne.first}, {"upper", report.plagne.second}}},
      {"nash_nathanson",
       {{"lower", rational_to_json(report.nash_nathanson.first)},
        {"upper", rational_to_json(report.nash_nathanson.second)},
        {"kind", "asymptotic guide"}}},
      {"rhs", rhs},
      {"flags", flags},
      {"all_satisfied", report.all_satisfied()},
  };
}

std::string report_csv_header() {
  return "label,h,g,delta,diam,d,eta,mu,rhs_farhi_d,rhs_farhi_eta,rhs_farhi_mu,rhs_hegarty_mu,"
         "rhs_plagne_upper,rhs_density_order,rhs_density_order_a,all_satisfied";
}

std::string report_csv_row(const BoundReport& r) {
  std::ostringstream os;
  const auto& inv = r.invariants;
  os << '"' << r.label << '"' << ',' << r.h << ',' << r.g << ','
     << (inv.delta_x ? std::to_string(*inv.delta_x) : "") << ',' << inv.diam_x << ','
     << csv_opt(inv.d_x) << ',' << inv.eta.value << ',' << inv.mu.value;
  for (const auto& c : r.checks) os << ',' << csv_opt(c.rhs);
  os << ',' << (r.all_satisfied() ? "true" : "false");
  return os.str();
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidArgument(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace basisorder
