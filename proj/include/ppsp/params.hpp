#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace ppsp {

// SPOC13: original protocol. TPDS14: fixed protocol with multiplicative masks
// r_i and two trailing zero slots.
enum class Variant { kSpoc13, kTpds14 };

const char* to_string(Variant v);
Variant parse_variant(const std::string& text);

struct ProtocolParams {
  std::uint64_t n = 256;              // vector length, excluding the fix slots
  std::uint64_t q = 1ULL << 32;       // elements lie in [0, q)
  unsigned k1 = 512;                  // bits of the prime modulus p
  unsigned k2 = 200;                  // bits of the base alpha
  unsigned k3 = 128;                  // bits of the additive masks c_i
  unsigned k4 = 128;                  // bits of the multiplicative masks r_i
  Variant variant = Variant::kTpds14;

  friend bool operator==(const ProtocolParams&, const ProtocolParams&) = default;
};

// The evaluation setting: n=256, q=2^32, k1=512, k2=200, k3=k4=128, TPDS14.
inline ProtocolParams default_params() { return ProtocolParams{}; }

// ceil(log2(x)) for x >= 1.
unsigned ceil_log2(std::uint64_t x);

// Slots carried by the first message: n (SPOC13) or n + 2 (TPDS14).
std::size_t slot_count(const ProtocolParams& params);

// Throws Error(kInvalidParams) unless n >= 1, q >= 2, k1 > 2*k2, k2 >= 2,
// k3 >= 1, k4 >= 1.
void check_structure(const ProtocolParams& params);

struct ConstraintReport {
  bool eq_result_fits_p = false;  // log n + 2 log q + 2 k2 < k1
  bool eq_1a = false;             // log n + log q + k3 < k2
  bool eq_1b = false;             // log n + log q + k4 < k2
  bool eq_1c = false;             // log n + k3 + k4 < 2 k2
  bool all_satisfied = false;
};

// Correctness inequalities, with ceil(log2) of n and q.
ConstraintReport validate(const ProtocolParams& params);

struct ThresholdReport {
  long k4_correctness_onset = 0;  // k2 - log q - log n
  long k4_attack1_neighbor = 0;   // k2 - log n
  long k4_attack1_any = 0;        // k2
  long k4_attack2 = 0;            // 2 (k2 + log q) - k3
  long max_error_bits = 0;        // k1 - 2 k2
};

ThresholdReport attack_thresholds(const ProtocolParams& params);

std::string describe(const ProtocolParams& params);
std::string to_text(const ConstraintReport& report);
std::string to_text(const ThresholdReport& report);
std::string to_key_values(const ConstraintReport& report);
std::string to_key_values(const ThresholdReport& report);

}  // namespace ppsp
