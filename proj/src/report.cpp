#include "kfa/report.hpp"

#include <charconv>
#include <ostream>

namespace kfa {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Json to_json(const AverageReport& r) {
  Json j;
  j["value_re"] = r.value.real();
  j["value_im"] = r.value.imag();
  j["modulus"] = std::abs(r.value);
  j["n"] = r.N;
  j["k"] = r.k;
  j["term_count"] = r.term_count;
  if (r.target) {
    j["target_re"] = r.target->real();
    j["target_im"] = r.target->imag();
    j["deviation"] = r.abs_deviation.value_or(std::abs(r.value - *r.target));
  }
  j["description"] = r.description;
  j["version"] = kVersion;
  return j;
}

Json to_json(const ConstantEstimate& e) {
  Json j;
  j["value"] = e.value;
  j["truncation_bound"] = e.truncation_bound;
  j["terms_used"] = e.terms_used;
  j["partial"] = e.partial;
  j["partial_bound"] = e.partial_bound;
  j["tail_corrected"] = e.tail_corrected;
  return j;
}

Json to_json(const AsymptoticReport& r) {
  Json j;
  j["Q"] = r.Q;
  j["n"] = r.N;
  j["k"] = r.k;
  j["ck"] = r.ck;
  j["main_term"] = r.main_term;
  j["residual"] = r.residual;
  j["normalized_residual"] = r.normalized;
  if (r.two_term_main) {
    j["two_term_main"] = *r.two_term_main;
    j["two_term_residual"] = *r.two_term_residual;
    j["two_term_normalized"] = *r.two_term_normalized;
  }
  j["version"] = kVersion;
  return j;
}

Json to_json(const InvarianceReport& r) {
  Json j;
  j["n"] = r.N;
  j["k"] = r.k;
  j["tolerance"] = r.tolerance;
  j["unshifted_re"] = r.unshifted.real();
  j["unshifted_im"] = r.unshifted.imag();
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"m", row.m},
                    {"omega_m", row.omega_m},
                    {"shifted_re", row.shifted.real()},
                    {"shifted_im", row.shifted.imag()},
                    {"deviation", row.deviation},
                    {"within_tolerance", row.within_tolerance}});
  }
  j["rows"] = rows;
  j["all_within"] = r.all_within();
  j["version"] = kVersion;
  return j;
}

Json to_json(const SquarefreeReport& r) {
  Json j = to_json(r.normalized);
  j["unnormalized_re"] = r.unnormalized.real();
  j["unnormalized_im"] = r.unnormalized.imag();
  j["density"] = r.density;
  return j;
}

Json to_json(const EKReport& r) {
  Json j;
  j["n"] = r.N;
  j["k"] = r.k;
  j["domain"] = to_string(r.domain);
  j["sample_count"] = r.sample_count;
  j["loglog"] = r.loglog;
  j["ks_distance"] = r.ks_distance;
  j["mean"] = r.mean;
  j["variance"] = r.variance;
  j["bins"] = r.bins.size();
  j["version"] = kVersion;
  return j;
}

Json to_json(const DecompositionLedger& L) {
  Json j;
  j["n"] = L.N;
  j["k"] = L.k;
  j["D"] = L.D;
  j["lhs_re"] = L.lhs.real();
  j["lhs_im"] = L.lhs.imag();
  j["s1_re"] = L.s1.real();
  j["s1_im"] = L.s1.imag();
  j["s2_re"] = L.s2.real();
  j["s2_im"] = L.s2.imag();
  j["s1_truncated_re"] = L.s1_truncated.real();
  j["s1_truncated_im"] = L.s1_truncated.imag();
  j["measured_error"] = L.measured_error;
  j["stated_bound"] = L.stated_bound;
  j["ratio"] = L.ratio;
  j["tuple_count"] = L.tuple_count;
  j["term_count"] = L.term_count;
  j["version"] = kVersion;
  return j;
}

void write_ek_csv(std::ostream& out, const EKReport& r) {
  out << "omega,x,count,mass,cdf,normal_cdf\n";
  double cdf = 0.0;
  for (const EKBin& b : r.bins) {
    cdf += b.mass;
    out << b.omega << ',' << format_double(b.x) << ',' << b.count << ','
        << format_double(b.mass) << ',' << format_double(cdf) << ','
        << format_double(normal_cdf(b.x)) << '\n';
  }
}

void write_ledger_csv(std::ostream& out, std::span<const DecompositionLedger> rows) {
  unsigned k = rows.empty() ? 2 : rows.front().k;
  out << "N,k";
  for (unsigned i = 1; i < k; ++i) out << ",D" << i;
  out << ",lhs,s1,err,bound,ratio\n";
  for (const auto& L : rows) {
    out << L.N << ',' << L.k;
    for (unsigned i = 0; i + 1 < k; ++i) out << ',' << (i < L.D.size() ? L.D[i] : 0);
    out << ',' << format_double(L.lhs.real()) << ',' << format_double(L.s1_truncated.real())
        << ',' << format_double(L.measured_error) << ',' << format_double(L.stated_bound)
        << ',' << format_double(L.ratio) << '\n';
  }
}

}  // namespace kfa
