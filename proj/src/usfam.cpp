#include "almost_stable/usfam.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <unordered_set>

namespace almost_stable {

FamilyMode parse_family_mode(const std::string& s) {
  if (s == "exhaustive") return FamilyMode::Exhaustive;
  if (s == "random-verified") return FamilyMode::RandomVerified;
  if (s == "random-unverified") return FamilyMode::RandomUnverified;
  if (s == "bounded") return FamilyMode::Bounded;
  throw InputError("InvalidParameters", "unknown family mode '" + s + "'");
}

const char* to_string(FamilyMode m) {
  switch (m) {
    case FamilyMode::Exhaustive: return "exhaustive";
    case FamilyMode::RandomVerified: return "random-verified";
    case FamilyMode::RandomUnverified: return "random-unverified";
    case FamilyMode::Bounded: return "bounded";
  }
  return "?";
}

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    // r *= (n - k + i) / i, with overflow saturation
    std::int64_t num = n - k + i;
    if (r > std::numeric_limits<std::int64_t>::max() / num)
      return std::numeric_limits<std::int64_t>::max();
    r = r * num / i;
  }
  return r;
}

std::int64_t lopsided_sample_count(int n, int p, int q, std::int64_t clamp) {
  long double pairs = static_cast<long double>(binomial(n, p)) *
                      static_cast<long double>(binomial(n - p, q));
  long double lg = pairs > 1 ? std::ceil(std::log(pairs)) : 0;
  long double cnt = static_cast<long double>(binomial(p + q, p)) *
                    static_cast<long double>(p + q) * lg;
  if (cnt < 1) cnt = 1;
  if (cnt > static_cast<long double>(clamp)) return clamp;
  return static_cast<std::int64_t>(cnt);
}

namespace {

std::vector<std::vector<int>> sample_family(int n, int p, int q,
                                            std::int64_t count,
                                            std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<int>> sets;
  sets.reserve(static_cast<std::size_t>(count));
  int denom = p + q;
  for (std::int64_t s = 0; s < count; ++s) {
    std::vector<int> f;
    // include each element with probability exactly p/(p+q)
    if (denom > 0)
      for (int e = 1; e <= n; ++e)
        if (static_cast<int>(rng() % denom) < p) f.push_back(e);
    sets.push_back(std::move(f));
  }
  return sets;
}

std::vector<std::vector<int>> all_subsets_up_to(int n, int max_size) {
  std::vector<std::vector<int>> sets;
  std::vector<int> cur;
  // size-then-lex order
  for (int s = 0; s <= max_size; ++s) {
    std::vector<int> comb(s);
    for (int i = 0; i < s; ++i) comb[i] = i + 1;
    while (true) {
      sets.push_back(comb);
      if (s == 0) break;
      int i = s - 1;
      while (i >= 0 && comb[i] == n - (s - 1 - i)) --i;
      if (i < 0) break;
      ++comb[i];
      for (int j = i + 1; j < s; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  return sets;
}

}  // namespace

LopsidedFamily build_lopsided_family(int n, int p, int q, FamilyMode mode,
                                     std::uint64_t seed,
                                     const FamilyOptions& opts) {
  if (n < 0 || p < 0 || q < 0 || p + q > n)
    throw InputError("InvalidParameters",
                     "need 0 <= p, 0 <= q, p+q <= n; got n=" + std::to_string(n) +
                         " p=" + std::to_string(p) + " q=" + std::to_string(q));
  LopsidedFamily fam;
  fam.universe_size = n;
  fam.p = p;
  fam.q = q;
  switch (mode) {
    case FamilyMode::Exhaustive: {
      if (n > 20)
        throw InputError("InvalidParameters", "exhaustive mode needs n <= 20");
      fam.sets = all_subsets_up_to(n, n);
      return fam;
    }
    case FamilyMode::Bounded: {
      fam.sets = all_subsets_up_to(n, p);
      return fam;
    }
    case FamilyMode::RandomUnverified: {
      fam.sets = sample_family(n, p, q, lopsided_sample_count(n, p, q, opts.sample_cap), seed);
      return fam;
    }
    case FamilyMode::RandomVerified: {
      std::int64_t count = lopsided_sample_count(n, p, q, opts.sample_cap);
      for (int attempt = 0; attempt < opts.retries; ++attempt) {
        fam.sets = sample_family(n, p, q, count,
                                 seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(attempt));
        if (verify_lopsided(fam, opts.verify_pair_cap).ok) return fam;
      }
      throw Error("VerificationFailed",
                  "no verified family after " + std::to_string(opts.retries) + " attempts");
    }
  }
  throw InternalError("Unreachable", "bad family mode");
}

namespace {

// Lexicographic combination enumerator over 1..n.
bool next_combination(std::vector<int>& comb, int n) {
  int s = static_cast<int>(comb.size());
  int i = s - 1;
  while (i >= 0 && comb[i] == n - (s - 1 - i)) --i;
  if (i < 0) return false;
  ++comb[i];
  for (int j = i + 1; j < s; ++j) comb[j] = comb[j - 1] + 1;
  return true;
}

}  // namespace

VerifyResult verify_lopsided(const LopsidedFamily& family, std::int64_t pair_cap) {
  int n = family.universe_size, p = family.p, q = family.q;
  std::int64_t pa = binomial(n, p), pb = binomial(n - p, q);
  if (pa > 0 && pb > pair_cap / std::max<std::int64_t>(pa, 1))
    throw Error("TooLargeToVerify",
                "C(n,p)*C(n-p,q) exceeds cap " + std::to_string(pair_cap));
  if (pa * pb > pair_cap)
    throw Error("TooLargeToVerify",
                "C(n,p)*C(n-p,q) exceeds cap " + std::to_string(pair_cap));

  if (n > 64) throw Error("TooLargeToVerify", "verification supports n <= 64");

  std::vector<std::uint64_t> masks;
  masks.reserve(family.sets.size());
  std::unordered_set<std::uint64_t> exact;
  for (const auto& f : family.sets) {
    std::uint64_t m = 0;
    for (int e : f) {
      if (e < 1 || e > n)
        throw InputError("InvalidParameters", "set element out of universe");
      m |= std::uint64_t{1} << (e - 1);
    }
    masks.push_back(m);
    exact.insert(m);
  }

  std::vector<int> a(p);
  for (int i = 0; i < p; ++i) a[i] = i + 1;
  bool a_more = true;
  if (p == 0) a.clear();
  while (a_more) {
    std::uint64_t amask = 0;
    for (int e : a) amask |= std::uint64_t{1} << (e - 1);
    std::vector<int> rest;
    for (int e = 1; e <= n; ++e)
      if (!(amask >> (e - 1) & 1)) rest.push_back(e);
    // B ranges over q-subsets of rest, lexicographic.
    std::vector<int> bi(q);
    for (int i = 0; i < q; ++i) bi[i] = i;
    bool b_more = true;
    if (q > static_cast<int>(rest.size())) b_more = false;
    while (b_more) {
      std::uint64_t bmask = 0;
      for (int i : bi) bmask |= std::uint64_t{1} << (rest[i] - 1);
      bool found = exact.count(amask) > 0;  // F == A always separates
      if (!found)
        for (std::uint64_t f : masks)
          if ((amask & ~f) == 0 && (bmask & f) == 0) {
            found = true;
            break;
          }
      if (!found) {
        std::vector<int> bset;
        for (int i : bi) bset.push_back(rest[i]);
        return {false, std::make_pair(a, bset)};
      }
      // advance bi over indices 0..rest.size()-1
      int s = q, rn = static_cast<int>(rest.size());
      int i = s - 1;
      while (i >= 0 && bi[i] == rn - (s - i)) --i;
      if (i < 0) break;
      ++bi[i];
      for (int j = i + 1; j < s; ++j) bi[j] = bi[j - 1] + 1;
      if (q == 0) break;
    }
    if (p == 0) break;
    a_more = next_combination(a, n);
  }
  return {true, std::nullopt};
}

}  // namespace almost_stable
