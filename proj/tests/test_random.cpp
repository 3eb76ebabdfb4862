#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "rssiest/random.hpp"

using namespace rssiest;

TEST_CASE("derived seeds depend on every component") {
  const Seed base = derive_seed(7, StreamDomain::kTrial, 0);
  CHECK(base == derive_seed(7, StreamDomain::kTrial, 0));
  CHECK(base != derive_seed(8, StreamDomain::kTrial, 0));
  CHECK(base != derive_seed(7, StreamDomain::kChannel, 0));
  CHECK(base != derive_seed(7, StreamDomain::kTrial, 1));
}

TEST_CASE("derived seeds do not collide over a block of indices") {
  std::set<Seed> seen;
  for (std::uint64_t t = 0; t < 100000; ++t) seen.insert(derive_seed(1, StreamDomain::kTrial, t));
  CHECK(seen.size() == 100000);
}

TEST_CASE("xoshiro stream is reproducible and roughly uniform") {
  Xoshiro256pp a(42), b(42);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const auto x = a();
    REQUIRE(x == b());
    sum += static_cast<double>(x >> 11) * 0x1.0p-53;
  }
  // Uniform(0,1) mean 1/2, standard error sqrt(1/12/n).
  CHECK(std::abs(sum / n - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST_CASE("complex gaussian splits variance evenly") {
  ComplexGaussian gauss(3);
  const int n = 400000;
  double re2 = 0.0, im2 = 0.0, cross = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto z = gauss(2.0);
    re2 += z.real() * z.real();
    im2 += z.imag() * z.imag();
    cross += z.real() * z.imag();
  }
  // Each part N(0, 1): E[x^2] = 1 with sd sqrt(2/n).
  const double tol = 4.0 * std::sqrt(2.0 / n);
  CHECK(std::abs(re2 / n - 1.0) < tol);
  CHECK(std::abs(im2 / n - 1.0) < tol);
  CHECK(std::abs(cross / n) < 4.0 / std::sqrt(n));
}
