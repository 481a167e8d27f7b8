#include "ipsw/util.hpp"

#include <fstream>
#include <sstream>
#include <thread>

namespace ipsw {

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = digits[v & 0xf];
    v >>= 4;
  }
  return s;
}

void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t, std::size_t)>& fn) {
  if (threads <= 1 || n < 2) {
    fn(0, n);
    return;
  }
  unsigned t = std::min<std::size_t>(threads, n);
  std::vector<std::thread> pool;
  std::size_t chunk = (n + t - 1) / t;
  for (unsigned i = 0; i < t; ++i) {
    std::size_t lo = i * chunk;
    std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
  }
  for (auto& th : pool) th.join();
}

std::uint64_t iroot(std::uint64_t x, unsigned r) {
  if (r == 0) fail("DegreeOutOfRange", "0th root");
  if (r == 1 || x <= 1) return x;
  // binary search on y^r <= x with overflow-safe power
  auto pow_le = [](std::uint64_t y, unsigned r, std::uint64_t x) {
    std::uint64_t acc = 1;
    for (unsigned i = 0; i < r; ++i) {
      if (y != 0 && acc > x / y) return false;
      acc *= y;
    }
    return acc <= x;
  };
  std::uint64_t lo = 1, hi = x;
  while (lo < hi) {
    std::uint64_t mid = lo + (hi - lo + 1) / 2;
    if (pow_le(mid, r, x))
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("IoError", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("IoError", "cannot write " + path);
  out << data;
}

}  // namespace ipsw
