#pragma once

#include <complex>
#include <cstdint>

namespace botoc {

// Splittable counter-based stream. The state walk is a SplitMix-style
// sequence whose start point and increment are both derived by hashing
// (seed, stream_id), so any (seed, stream_id) pair names a reproducible
// stream independent of thread scheduling. Gaussians use Box-Muller rather
// than std::normal_distribution, whose output is implementation-defined.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64();
  double next_uniform();    // [0, 1)
  double next_gaussian();   // N(0, 1)
  std::complex<double> next_complex_gaussian();  // independent N(0,1) parts

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  // Stream for sub-task i of this stream; callers that spawn n sub-streams
  // should reserve ids [stream_id + 1, stream_id + n].
  RngStream child(std::uint64_t i) const {
    return RngStream(seed_, stream_id_ + 1 + i);
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t state_;
  std::uint64_t gamma_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace botoc
