// shrinklp: linear-shrinkage estimation for noisily observed LP constraint matrices.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

namespace shrinklp {

/// Splittable random stream identified by (master_seed, stream_id).
///
/// The same pair reproduces the same draw sequence on every platform: the
/// generator is the standard-specified mt19937_64 and all variate transforms
/// are implemented here rather than through std distributions (whose output
/// is implementation-defined). Substreams are derived by mixing a tag into
/// the stream id, so parallel consumers never share state.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

  std::uint64_t master_seed() const { return master_; }
  std::uint64_t stream_id() const { return id_; }

  std::uint64_t next_u64();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi);

  /// Standard normal via the Marsaglia polar method.
  double normal();

  /// Child stream with an independent state, deterministic in (this, tag).
  RngStream substream(std::uint64_t tag) const;

  /// One-way combiner used to derive stream ids from structured keys.
  static std::uint64_t mix(std::uint64_t a, std::uint64_t b);

 private:
  std::uint64_t master_;
  std::uint64_t id_;
  std::mt19937_64 gen_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace shrinklp
