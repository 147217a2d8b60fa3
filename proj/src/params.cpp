#include "ppsp/params.hpp"

#include <bit>
#include <sstream>

#include "ppsp/error.hpp"

namespace ppsp {

const char* to_string(Variant v) {
  return v == Variant::kSpoc13 ? "spoc13" : "tpds14";
}

Variant parse_variant(const std::string& text) {
  if (text == "spoc13") return Variant::kSpoc13;
  if (text == "tpds14") return Variant::kTpds14;
  throw Error(ErrorCode::kInvalidArgument, "unknown variant '" + text + "' (expected spoc13 or tpds14)");
}

unsigned ceil_log2(std::uint64_t x) {
  if (x == 0) throw Error(ErrorCode::kInvalidArgument, "ceil_log2: argument must be positive");
  return x == 1 ? 0 : static_cast<unsigned>(std::bit_width(x - 1));
}

std::size_t slot_count(const ProtocolParams& params) {
  return params.variant == Variant::kTpds14 ? params.n + 2 : params.n;
}

void check_structure(const ProtocolParams& params) {
  std::string problem;
  if (params.n < 1) problem = "n must be >= 1";
  else if (params.q < 2) problem = "q must be >= 2";
  else if (params.k2 < 2) problem = "k2 must be >= 2";
  else if (params.k1 <= 2 * params.k2) problem = "k1 must exceed 2*k2 (alpha^2 must fit below p)";
  else if (params.k3 < 1) problem = "k3 must be >= 1";
  else if (params.k4 < 1) problem = "k4 must be >= 1";
  if (!problem.empty()) throw Error(ErrorCode::kInvalidParams, problem);
}

ConstraintReport validate(const ProtocolParams& params) {
  check_structure(params);
  const long log_n = ceil_log2(params.n);
  const long log_q = ceil_log2(params.q);
  const long k1 = params.k1, k2 = params.k2, k3 = params.k3, k4 = params.k4;

  ConstraintReport r;
  r.eq_result_fits_p = log_n + 2 * log_q + 2 * k2 < k1;
  r.eq_1a = log_n + log_q + k3 < k2;
  r.eq_1b = log_n + log_q + k4 < k2;
  r.eq_1c = log_n + k3 + k4 < 2 * k2;
  r.all_satisfied = r.eq_result_fits_p && r.eq_1a && r.eq_1b && r.eq_1c;
  return r;
}

ThresholdReport attack_thresholds(const ProtocolParams& params) {
  check_structure(params);
  const long log_n = ceil_log2(params.n);
  const long log_q = ceil_log2(params.q);
  const long k1 = params.k1, k2 = params.k2, k3 = params.k3;

  ThresholdReport t;
  t.k4_correctness_onset = k2 - log_q - log_n;
  t.k4_attack1_neighbor = k2 - log_n;
  t.k4_attack1_any = k2;
  t.k4_attack2 = 2 * (k2 + log_q) - k3;
  t.max_error_bits = k1 - 2 * k2;
  return t;
}

std::string describe(const ProtocolParams& params) {
  std::ostringstream os;
  os << "variant=" << to_string(params.variant) << " n=" << params.n << " q=" << params.q
     << " k1=" << params.k1 << " k2=" << params.k2 << " k3=" << params.k3 << " k4=" << params.k4;
  return os.str();
}

namespace {
const char* yes_no(bool b) { return b ? "true" : "false"; }
}  // namespace

std::string to_text(const ConstraintReport& r) {
  std::ostringstream os;
  os << "correctness constraints:\n"
     << "  result fits below p  (log n + 2 log q + 2 k2 < k1): " << yes_no(r.eq_result_fits_p) << "\n"
     << "  eq_1a (log n + log q + k3 < k2):                   " << yes_no(r.eq_1a) << "\n"
     << "  eq_1b (log n + log q + k4 < k2):                   " << yes_no(r.eq_1b) << "\n"
     << "  eq_1c (log n + k3 + k4 < 2 k2):                    " << yes_no(r.eq_1c) << "\n"
     << "  all satisfied: " << yes_no(r.all_satisfied) << "\n";
  return os.str();
}

std::string to_text(const ThresholdReport& t) {
  std::ostringstream os;
  os << "analytic k4 thresholds (bits):\n"
     << "  correctness error onset        k2 - log q - log n   = " << t.k4_correctness_onset << "\n"
     << "  attack 1, neighbouring b'      k2 - log n           = " << t.k4_attack1_neighbor << "\n"
     << "  attack 1, any b'               k2                   = " << t.k4_attack1_any << "\n"
     << "  attack 2, general a            2 (k2 + log q) - k3  = " << t.k4_attack2 << "\n"
     << "  max correctness error bits     k1 - 2 k2            = " << t.max_error_bits << "\n";
  return os.str();
}

std::string to_key_values(const ConstraintReport& r) {
  std::ostringstream os;
  os << "eq_result_fits_p=" << yes_no(r.eq_result_fits_p) << " eq_1a=" << yes_no(r.eq_1a)
     << " eq_1b=" << yes_no(r.eq_1b) << " eq_1c=" << yes_no(r.eq_1c)
     << " all_satisfied=" << yes_no(r.all_satisfied);
  return os.str();
}

std::string to_key_values(const ThresholdReport& t) {
  std::ostringstream os;
  os << "onset=" << t.k4_correctness_onset << " attack1_neighbor=" << t.k4_attack1_neighbor
     << " attack1_any=" << t.k4_attack1_any << " attack2=" << t.k4_attack2
     << " max_error_bits=" << t.max_error_bits;
  return os.str();
}

}  // namespace ppsp
