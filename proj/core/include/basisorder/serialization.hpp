#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "basisorder/bounds.hpp"
#include "basisorder/invariants.hpp"
#include "basisorder/periodic_set.hpp"
#include "basisorder/rational.hpp"

namespace basisorder {

using Json = nlohmann::json;

// Rationals travel as strings ("7", "7/3"); integral JSON numbers are also
// accepted on input.
Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

/// {"finite":[…],"threshold":T,"modulus":n,"residues":[…]}
Json set_to_json(const EventuallyPeriodicSet& s);
/// Parses a set literal and canonicalizes it. Throws InvalidArgument.
EventuallyPeriodicSet set_from_json(const Json& j);

Json finite_to_json(const FiniteSet& x);
FiniteSet finite_from_json(const Json& j);

/// {"A": <set>, "X": […], "label": "…"}
Json instance_to_json(const RemovalInstance& instance);
RemovalInstance instance_from_json(const Json& j);

/// {"delta","diam","d","eta","mu","eta_witness":[a,b],"mu_witness":y}
Json invariants_to_json(const InstanceInvariants& inv);

Json report_to_json(const BoundReport& report);

std::string report_csv_header();
std::string report_csv_row(const BoundReport& report);

/// Parses text, mapping nlohmann parse errors to InvalidArgument.
Json parse_json(std::string_view text);

}  // namespace basisorder
