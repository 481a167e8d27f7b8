#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace ipsw {

// Typed error: `kind` carries the machine-readable tag ("ZeroInversion",
// "MixedContexts", ...), what() the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& msg)
      : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

[[noreturn]] inline void fail(const std::string& kind, const std::string& msg) {
  throw Error(kind, msg);
}

// FNV-1a over a byte string; used for instance/cert hashes (replay guards,
// not cryptographic).
inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v);

// Deterministic RNG plumbing. All randomized paths draw from Rng seeded
// explicitly; per-task seeds are derived with splitmix so parallel trials
// stay reproducible regardless of scheduling.
using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t idx) {
  std::uint64_t s = master ^ (0xabcdef1234567890ull + idx * 0x9e3779b97f4a7c15ull);
  return splitmix64(s);
}

inline std::uint64_t rng_below(Rng& rng, std::uint64_t n) {
  return n <= 1 ? 0 : rng() % n;
}

// Runs fn(i) for i in [0,n) split across `threads` workers. Workers own
// disjoint index ranges; callers own any deterministic merge.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t, std::size_t)>& fn);

inline int floor_log2(std::uint64_t n) {
  int l = -1;
  while (n) {
    n >>= 1;
    ++l;
  }
  return l;
}

// floor(x^(1/r)) for x,r >= 1.
std::uint64_t iroot(std::uint64_t x, unsigned r);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& data);

}  // namespace ipsw
