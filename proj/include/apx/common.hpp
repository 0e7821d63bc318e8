#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <gmpxx.h>

namespace apx {

inline constexpr const char* kToolName = "apxlab";
inline constexpr const char* kToolVersion = "1.0.0";

// Structural problems: malformed specs, bad input files, precondition
// violations. CLI maps these to a nonzero exit status.
class SpecError : public std::runtime_error {
 public:
  explicit SpecError(const std::string& msg) : std::runtime_error(msg) {}
};

// Ring mismatch, unsupported domain, violated operation precondition.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// A search or enumeration ran out of its node/point/memory budget.
// Never silent: callers either report it or convert it to an explicit
// "inconclusive"/"truncated" marker.
class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& msg) : std::runtime_error(msg) {}
};

struct Budgets {
  std::uint64_t search_nodes = 1'000'000;  // exact cover / MIS node budget
  std::uint64_t points = 2'000'000;        // enumeration point budget
  std::uint64_t set_elements = 4'000'000;  // ball / closure element budget
};

// ---------------------------------------------------------------------------
// Deterministic, splittable randomness. One master seed; every corpus item
// derives its own stream from (master, index), so reports are reproducible
// and independent of evaluation order.

struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) return 0;
    std::uint64_t threshold = (~n + 1) % n;  // 2^64 mod n
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  static SplitMix64 derive(std::uint64_t master, std::uint64_t index) {
    SplitMix64 g(master ^ (0xD1B54A32D192ED03ULL * (index + 1)));
    g.next();
    return g;
  }
};

// ---------------------------------------------------------------------------
// Saturating big-constant comparisons. Bounds like K^510 + K^22 overflow any
// machine word almost immediately; certificates only need "found K <= bound",
// so the bound is computed exactly in mpz once and compared there.

inline mpz_class mpz_pow(const mpz_class& base, unsigned long exp) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

inline mpz_class bound_k5_k19(std::uint64_t k) {
  mpz_class K(static_cast<unsigned long>(k));
  return mpz_pow(K, 5) + mpz_pow(K, 19);
}

inline mpz_class bound_k510_k22(std::uint64_t k) {
  mpz_class K(static_cast<unsigned long>(k));
  return mpz_pow(K, 510) + mpz_pow(K, 22);
}

inline std::string mpq_str(const mpq_class& q) {
  mpq_class c(q);
  c.canonicalize();
  return c.get_str();
}

// ---------------------------------------------------------------------------
// Deterministic parallel map: results land in index order no matter how the
// workers are scheduled, so output bytes do not depend on the worker count.

template <typename T, typename F>
auto parallel_map(const std::vector<T>& items, unsigned workers, F fn)
    -> std::vector<decltype(fn(items[0]))> {
  using R = decltype(fn(items[0]));
  std::vector<R> out(items.size());
  if (workers <= 1 || items.size() <= 1) {
    for (std::size_t i = 0; i < items.size(); ++i) out[i] = fn(items[i]);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errs(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      try {
        for (std::size_t i = w; i < items.size(); i += workers)
          out[i] = fn(items[i]);
      } catch (...) {
        errs[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace apx
