#pragma once

#include <cstdint>

namespace rmskit {

// splitmix64 finalizer (Steele, Lea, Flood 2014). Pure 64-bit integer
// arithmetic, so streams are bit-identical across platforms.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Counter-based generator built on splitmix64. split() derives an
// independent stream, at() reads the stream at an absolute counter, so
// generation can be chunked arbitrarily without changing the output.
class PortableRng {
 public:
  explicit PortableRng(std::uint64_t seed) : key_(splitmix64(seed)) {}

  PortableRng split(std::uint64_t stream) const {
    return PortableRng(key_ ^ splitmix64(stream * 0xD1342543DE82EF95ULL + 0x632BE59BD9B4E019ULL));
  }

  std::uint64_t at(std::uint64_t counter) const {
    return splitmix64(key_ + counter * 0x9E3779B97F4A7C15ULL);
  }

  std::uint64_t next() { return at(counter_++); }

  // uniform in [0, 1), 53-bit mantissa
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double double_at(std::uint64_t counter) const {
    return static_cast<double>(at(counter) >> 11) * 0x1.0p-53;
  }

  // Irwin-Hall approximation of a standard normal (sum of 12 uniforms minus
  // 6). Deterministic across libms since it avoids transcendental calls.
  double next_gaussian() {
    double s = 0.0;
    for (int i = 0; i < 12; ++i) s += next_double();
    return s - 6.0;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace rmskit
