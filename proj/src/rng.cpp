#include "gegd/rng.hpp"

#include <cmath>

namespace gegd::rng {

namespace {

constexpr uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(uint32_t a, uint32_t b, uint32_t& hi, uint32_t& lo) {
  uint64_t p = static_cast<uint64_t>(a) * b;
  hi = static_cast<uint32_t>(p >> 32);
  lo = static_cast<uint32_t>(p);
}

// (0,1) uniform with 53 significant bits, never exactly 0 or 1.
inline double u01(uint32_t hi, uint32_t lo) {
  uint64_t v = (static_cast<uint64_t>(hi) << 32) | lo;
  return (static_cast<double>(v >> 11) + 0.5) * (1.0 / 9007199254740992.0);
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

std::array<uint32_t, 4> philox4x32(const std::array<uint32_t, 4>& counter,
                                   const std::array<uint32_t, 2>& key) {
  uint32_t x0 = counter[0], x1 = counter[1], x2 = counter[2], x3 = counter[3];
  uint32_t k0 = key[0], k1 = key[1];
  for (int round = 0; round < 10; ++round) {
    uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, x0, hi0, lo0);
    mulhilo(kPhiloxM1, x2, hi1, lo1);
    uint32_t y0 = hi1 ^ x1 ^ k0;
    uint32_t y1 = lo1;
    uint32_t y2 = hi0 ^ x3 ^ k1;
    uint32_t y3 = lo0;
    x0 = y0; x1 = y1; x2 = y2; x3 = y3;
    k0 += kPhiloxW0;
    k1 += kPhiloxW1;
  }
  return {x0, x1, x2, x3};
}

void uniform_pair(uint64_t seed, uint32_t stream, uint32_t c2, uint32_t c1, uint32_t c0,
                  double& u0, double& u1) {
  std::array<uint32_t, 4> ctr = {c0, c1, c2, stream};
  std::array<uint32_t, 2> key = {static_cast<uint32_t>(seed),
                                 static_cast<uint32_t>(seed >> 32)};
  auto r = philox4x32(ctr, key);
  u0 = u01(r[0], r[1]);
  u1 = u01(r[2], r[3]);
}

void normal_pair(uint64_t seed, uint32_t stream, uint32_t c2, uint32_t c1, uint32_t c0,
                 double& z0, double& z1) {
  double u0, u1;
  uniform_pair(seed, stream, c2, c1, c0, u0, u1);
  double rad = std::sqrt(-2.0 * std::log(u0));
  z0 = rad * std::cos(kTwoPi * u1);
  z1 = rad * std::sin(kTwoPi * u1);
}

void fill_normal(Eigen::Ref<Eigen::VectorXd> out, uint64_t seed, uint32_t stream,
                 uint32_t c2, uint32_t c1) {
  const Eigen::Index n = out.size();
  for (Eigen::Index i = 0; i < n; i += 2) {
    double z0, z1;
    normal_pair(seed, stream, c2, c1, static_cast<uint32_t>(i / 2), z0, z1);
    out[i] = z0;
    if (i + 1 < n) out[i + 1] = z1;
  }
}

void fill_uniform(Eigen::Ref<Eigen::VectorXd> out, uint64_t seed, uint32_t stream,
                  uint32_t c2, uint32_t c1, double lo, double hi) {
  const Eigen::Index n = out.size();
  const double span = hi - lo;
  for (Eigen::Index i = 0; i < n; i += 2) {
    double u0, u1;
    uniform_pair(seed, stream, c2, c1, static_cast<uint32_t>(i / 2), u0, u1);
    out[i] = lo + span * u0;
    if (i + 1 < n) out[i + 1] = lo + span * u1;
  }
}

double normal_from_hash(uint64_t seed, uint64_t hash) {
  double z0, z1;
  normal_pair(seed, kDesignNoise, static_cast<uint32_t>(hash >> 32),
              static_cast<uint32_t>(hash), 0, z0, z1);
  (void)z1;
  return z0;
}

uint64_t fnv1a64(const void* data, size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  uint64_t h = 1469598103934665603ull;
  for (size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

uint64_t derive_seed(uint64_t master, uint64_t a, uint64_t b) {
  auto mix = [](uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(master) ^ a) ^ b);
}

}  // namespace gegd::rng
