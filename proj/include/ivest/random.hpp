#pragma once

#include <cstdint>
#include <random>

namespace ivest {

/// Seeded pseudo-random stream identified by (seed, stream_id).
///
/// The same pair always reproduces the same sequence. Distinct stream ids
/// seed the engine through std::seed_seq with different words, which gives
/// statistically independent substreams for parallel work.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0, 1): (k + 1/2) / 2^52 for a 52-bit k.
  /// Both u and 1 - u are exactly representable.
  double uniform_open();

  /// A fresh stream derived from this stream's identity (not its state).
  RandomStream substream(std::uint64_t index) const;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

}  // namespace ivest
