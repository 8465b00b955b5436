#pragma once

#include <array>
#include <cstdint>
#include <cstddef>

#include <Eigen/Core>

namespace gegd::rng {

// Counter-based random streams (Philox 4x32-10). Every draw is addressed by
// (seed, stream, c2, c1, c0), so replay is exact and independent of evaluation
// order or thread count.

enum Stream : uint32_t {
  kEnsemble = 0,     // Gaussian perturbation ensembles: (iteration, member)
  kDesignNoise = 1,  // design-keyed noise: (hash_lo, hash_hi)
  kWells = 2,        // test-function well generation: (well index)
  kGeneric = 3,      // seeded scalar helpers in tests/tools
};

std::array<uint32_t, 4> philox4x32(const std::array<uint32_t, 4>& counter,
                                   const std::array<uint32_t, 2>& key);

// Two standard normals from one Philox block (Box-Muller).
void normal_pair(uint64_t seed, uint32_t stream, uint32_t c2, uint32_t c1, uint32_t c0,
                 double& z0, double& z1);

// Two uniforms in the open interval (0, 1).
void uniform_pair(uint64_t seed, uint32_t stream, uint32_t c2, uint32_t c1, uint32_t c0,
                  double& u0, double& u1);

// Fills `out` with iid standard normals for the given (stream, c2, c1) address.
void fill_normal(Eigen::Ref<Eigen::VectorXd> out, uint64_t seed, uint32_t stream,
                 uint32_t c2, uint32_t c1);

// Fills `out` with iid uniforms in (lo, hi).
void fill_uniform(Eigen::Ref<Eigen::VectorXd> out, uint64_t seed, uint32_t stream,
                  uint32_t c2, uint32_t c1, double lo, double hi);

// One standard normal keyed by a 64-bit content hash.
double normal_from_hash(uint64_t seed, uint64_t hash);

uint64_t fnv1a64(const void* data, size_t len);

// Deterministic seed derivation for sub-runs (splitmix64 over mixed words).
uint64_t derive_seed(uint64_t master, uint64_t a, uint64_t b = 0);

}  // namespace gegd::rng
