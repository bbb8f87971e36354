#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>

#include "core/rng.hpp"

using botoc::RngStream;

TEST_CASE("streams replay identically") {
  RngStream a(42, 7);
  RngStream b(42, 7);
  for (int i = 0; i < 1000; ++i) REQUIRE(a.next_u64() == b.next_u64());
}

TEST_CASE("frozen stream values never change") {
  // Pinned outputs; a change here breaks reproducibility of every stored
  // seed in every downstream experiment.
  RngStream r(0, 0);
  REQUIRE(r.next_u64() == 0x8a523facd031624full);
  REQUIRE(r.next_u64() == 0xe0352a491cca14baull);
  REQUIRE(r.next_u64() == 0xf81a53ac172146e4ull);
  REQUIRE(r.next_u64() == 0xafa50587627a9228ull);
  RngStream s(123, 45);
  REQUIRE(s.next_u64() == 0x5f80718df6925854ull);
  REQUIRE(s.next_u64() == 0x452875a7e0291d33ull);
}

TEST_CASE("seed and stream id both change the sequence") {
  RngStream a(42, 7);
  RngStream b(42, 8);
  RngStream c(43, 7);
  bool differs_b = false;
  bool differs_c = false;
  for (int i = 0; i < 64; ++i) {
    const std::uint64_t x = a.next_u64();
    if (x != b.next_u64()) differs_b = true;
    if (x != c.next_u64()) differs_c = true;
  }
  REQUIRE(differs_b);
  REQUIRE(differs_c);
}

TEST_CASE("children are plain streams at shifted ids") {
  RngStream root(1, 10);
  RngStream c3 = root.child(3);
  REQUIRE(c3.seed() == 1);
  REQUIRE(c3.stream_id() == 14);
  RngStream direct(1, 14);
  for (int i = 0; i < 128; ++i) REQUIRE(c3.next_u64() == direct.next_u64());
}

TEST_CASE("sibling children decorrelate") {
  RngStream root(9, 0);
  RngStream c0 = root.child(0);
  RngStream c1 = root.child(1);
  int agree = 0;
  for (int i = 0; i < 256; ++i) {
    if (c0.next_u64() == c1.next_u64()) ++agree;
  }
  REQUIRE(agree == 0);
}

TEST_CASE("uniforms live in the half-open unit interval") {
  RngStream r(2024, 0);
  const int n = 100000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = r.next_uniform();
    REQUIRE(x >= 0.0);
    REQUIRE(x < 1.0);
    sum += x;
  }
  const double mean = sum / n;
  const double se = 1.0 / std::sqrt(12.0 * n);
  REQUIRE(std::abs(mean - 0.5) < 4.0 * se);
}

TEST_CASE("gaussians have standard moments") {
  RngStream r(7, 3);
  const int n = 200000;
  double s1 = 0.0;
  double s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = r.next_gaussian();
    s1 += x;
    s2 += x * x;
  }
  const double mean = s1 / n;
  const double var = s2 / n - mean * mean;
  REQUIRE(std::abs(mean) < 4.0 / std::sqrt(static_cast<double>(n)));
  REQUIRE(std::abs(var - 1.0) < 4.0 * std::sqrt(2.0 / n));
}

TEST_CASE("frozen gaussian values never change") {
  RngStream g(7, 0);
  REQUIRE(g.next_gaussian() == 0.082133666130656688);
  REQUIRE(g.next_gaussian() == 2.4622788541602527);
  REQUIRE(g.next_gaussian() == -1.9250921031818211);
}

TEST_CASE("complex gaussians have uncorrelated parts") {
  RngStream r(11, 2);
  const int n = 100000;
  double cross = 0.0;
  double re2 = 0.0;
  double im2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto z = r.next_complex_gaussian();
    cross += z.real() * z.imag();
    re2 += z.real() * z.real();
    im2 += z.imag() * z.imag();
  }
  REQUIRE(std::abs(cross / n) < 4.0 / std::sqrt(static_cast<double>(n)));
  REQUIRE(std::abs(re2 / n - 1.0) < 4.0 * std::sqrt(2.0 / n));
  REQUIRE(std::abs(im2 / n - 1.0) < 4.0 * std::sqrt(2.0 / n));
}
