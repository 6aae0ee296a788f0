#ifndef ALMOST_STABLE_USFAM_HPP
#define ALMOST_STABLE_USFAM_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "almost_stable/core.hpp"

namespace almost_stable {

// A family F of subsets of [n] is n-p-q lopsided universal when for every
// A of size p and every B of size q disjoint from A there is an F in the
// family with A subseteq F and B cap F = empty.
struct LopsidedFamily {
  int universe_size = 0;
  int p = 0;
  int q = 0;
  std::vector<std::vector<int>> sets;  // sorted 1-based indices
};

enum class FamilyMode {
  Exhaustive,        // all 2^n subsets; n <= 20
  RandomVerified,    // sampled, then exhaustively verified (retried on failure)
  RandomUnverified,  // sampled only; for parameters too large to verify
  Bounded,           // all subsets of size <= p; universal for every q
};

FamilyMode parse_family_mode(const std::string& s);
const char* to_string(FamilyMode m);

struct FamilyOptions {
  int retries = 32;                        // RandomVerified re-seed budget
  std::int64_t sample_cap = 4'000'000;     // clamp on the sampling count
  std::int64_t verify_pair_cap = 50'000'000;
};

// Throws InputError("InvalidParameters", ...) when p,q < 0 or p+q > n, or
// when Exhaustive is asked for n > 20; Error("VerificationFailed", ...)
// when RandomVerified exhausts its retries.
LopsidedFamily build_lopsided_family(int n, int p, int q, FamilyMode mode,
                                     std::uint64_t seed,
                                     const FamilyOptions& opts = {});

struct VerifyResult {
  bool ok = false;
  // First failing pair in lexicographic (A, B) order, when not ok.
  std::optional<std::pair<std::vector<int>, std::vector<int>>> counterexample;
};

// Exhaustive check of the universality property. Throws
// Error("TooLargeToVerify", ...) when C(n,p)*C(n-p,q) exceeds the cap.
VerifyResult verify_lopsided(const LopsidedFamily& family,
                             std::int64_t pair_cap = 50'000'000);

// The sampling count used by the random modes:
// max(1, C(p+q,p) * (p+q) * ceil(ln(C(n,p) * C(n-p,q)))), clamped.
std::int64_t lopsided_sample_count(int n, int p, int q, std::int64_t clamp);

// C(n,k) saturated at INT64_MAX.
std::int64_t binomial(int n, int k);

}  // namespace almost_stable

#endif  // ALMOST_STABLE_USFAM_HPP
