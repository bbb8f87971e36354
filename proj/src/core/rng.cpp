#include "core/rng.hpp"

#include <cmath>

namespace botoc {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
constexpr double kTwoPi = 6.283185307179586476925286766559;

std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t mix_gamma(std::uint64_t z) {
  z ^= z >> 33;
  z *= 0xFF51AFD7ED558CCDull;
  z ^= z >> 33;
  z *= 0xC4CEB9FE1A85EC53ull;
  z ^= z >> 33;
  return z | 1ull;  // increments must be odd to cover the full period
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed),
      stream_id_(stream_id),
      state_(mix64(seed ^ mix64(stream_id * kGolden + 0x2545F4914F6CDD1Dull))),
      gamma_(mix_gamma(mix64(seed) + stream_id * kGolden)) {}

std::uint64_t RngStream::next_u64() {
  state_ += gamma_;
  return mix64(state_);
}

double RngStream::next_uniform() {
  return double(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = 1.0 - next_uniform();  // (0, 1], keeps the log finite
  double u2 = next_uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double theta = kTwoPi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

std::complex<double> RngStream::next_complex_gaussian() {
  double re = next_gaussian();
  double im = next_gaussian();
  return {re, im};
}

}  // namespace botoc
