#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include <json.hpp>

#include "kfa/averages.hpp"
#include "kfa/constants.hpp"
#include "kfa/decomposition.hpp"

namespace kfa {

/// Written into every JSON payload.
inline constexpr const char* kVersion = "kfa 1.0.0";

using Json = nlohmann::ordered_json;

/// Fields: value_re, value_im, modulus, n, k, term_count, then target_re,
/// target_im, deviation when a target is known, description, version.
Json to_json(const AverageReport& r);
Json to_json(const ConstantEstimate& e);
Json to_json(const AsymptoticReport& r);
Json to_json(const InvarianceReport& r);
Json to_json(const SquarefreeReport& r);
/// Summary only; the histogram goes to write_ek_csv.
Json to_json(const EKReport& r);
Json to_json(const DecompositionLedger& L);

/// omega,x,count,mass,cdf,normal_cdf
void write_ek_csv(std::ostream& out, const EKReport& r);

/// N,k,D1..Dk-1,lhs,s1,err,bound,ratio. lhs and s1 are real parts; the
/// imaginary parts are in the JSON form.
void write_ledger_csv(std::ostream& out, std::span<const DecompositionLedger> rows);

/// Shortest round-trip decimal form, as used for every CSV number.
std::string format_double(double x);

}  // namespace kfa
