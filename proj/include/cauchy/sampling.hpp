#pragma once

#include "cauchy/spectral.hpp"
#include "cauchy/tensor.hpp"

#include <cstdint>
#include <random>

namespace cauchy
{

/// Independent generator for sample `index` of a run seeded with `seed`. Every sample
/// draws from its own stream, so sharding never changes the drawn values.
std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t index);

double uniform(std::mt19937_64& rng, double lo, double hi);

/// Rotation from a normalized Gaussian quaternion (uniform on SO(3)).
Tensor3 random_rotation(std::mt19937_64& rng);

/// Q diag(e^{u_i}) Q^T with u_i uniform in [-log_range, log_range] and random Q.
SpdTensor3 random_spd(std::mt19937_64& rng, double log_range);

/// Symmetric tensor with entries uniform in [-amplitude, amplitude].
SymTensor3 random_sym(std::mt19937_64& rng, double amplitude);

/// General tensor with entries uniform in [-amplitude, amplitude].
Tensor3 random_tensor(std::mt19937_64& rng, double amplitude);

}  // namespace cauchy
