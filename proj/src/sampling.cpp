#include "cauchy/sampling.hpp"

#include <cmath>

namespace cauchy
{

std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t index)
{
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

double uniform(std::mt19937_64& rng, double lo, double hi)
{
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Tensor3 random_rotation(std::mt19937_64& rng)
{
  std::normal_distribution<double> normal;
  double w, x, y, z, n;
  do
  {
    w = normal(rng);
    x = normal(rng);
    y = normal(rng);
    z = normal(rng);
    n = std::sqrt(w * w + x * x + y * y + z * z);
  } while (n < 1e-8);
  w /= n;
  x /= n;
  y /= n;
  z /= n;
  return Tensor3({1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w),
                  2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w),
                  2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)});
}

SpdTensor3 random_spd(std::mt19937_64& rng, double log_range)
{
  const double a0 = std::exp(uniform(rng, -log_range, log_range));
  const double a1 = std::exp(uniform(rng, -log_range, log_range));
  const double a2 = std::exp(uniform(rng, -log_range, log_range));
  const Tensor3 q = random_rotation(rng);
  return SpdTensor3::checked(rotate(q, SymTensor3::diag(a0, a1, a2)));
}

SymTensor3 random_sym(std::mt19937_64& rng, double amplitude)
{
  SymTensor3 s;
  for (std::size_t k = 0; k < 6; ++k) s.component(k) = uniform(rng, -amplitude, amplitude);
  return s;
}

Tensor3 random_tensor(std::mt19937_64& rng, double amplitude)
{
  Tensor3 t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t(i, j) = uniform(rng, -amplitude, amplitude);
  return t;
}

}  // namespace cauchy
