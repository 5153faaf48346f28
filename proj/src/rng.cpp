#include "nisqtopo/rng.hpp"

#include <bit>

namespace nisqtopo {

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> tags) {
  std::uint64_t h = mix64(master);
  for (auto t : tags) h = mix64(h ^ mix64(t + 0x632be59bd9b4e019ULL));
  return h;
}

std::uint64_t seed_tag(double value) {
  if (value == 0.0) value = 0.0;  // fold -0.0 onto +0.0
  return std::bit_cast<std::uint64_t>(value);
}

} // namespace nisqtopo
