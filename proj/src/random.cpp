#include "rssiest/random.hpp"

namespace rssiest {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t splitmix_next(std::uint64_t& state) noexcept {
  state += kGolden;
  return mix64(state);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

Seed derive_seed(Seed master, StreamDomain domain, std::uint64_t index) noexcept {
  std::uint64_t h = mix64(master + kGolden);
  h = mix64(h ^ (static_cast<std::uint64_t>(domain) + kGolden));
  return mix64(h ^ (index + 2 * kGolden));
}

Xoshiro256pp::Xoshiro256pp(Seed seed) noexcept {
  std::uint64_t state = seed;
  for (auto& word : s_) word = splitmix_next(state);
}

Xoshiro256pp::result_type Xoshiro256pp::operator()() noexcept {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

}  // namespace rssiest
