#pragma once

#include <cstdint>
#include <limits>
#include <mutex>
#include <unordered_map>
#include <vector>

namespace minimax {

// xoshiro256** seeded through splitmix64. Satisfies UniformRandomBitGenerator,
// so it plugs into <random> distributions.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  double uniform();   // [0, 1)
  double normal();    // N(0, 1), Box-Muller without caching

 private:
  std::uint64_t s_[4];
};

std::uint64_t splitmix64(std::uint64_t& state);

// Purpose of a draw. Every (agent, iteration, tag) triple gets its own stream,
// so x-update and y-update samples are independent and schedule-free.
enum class StreamTag : std::uint32_t {
  kGradX = 0,
  kGradY = 1,
  kExtraX = 2,   // extrapolation-step samples (S-EG / S-PEG)
  kExtraY = 3,
  kInit = 4,
  kMetric = 5,
};

struct StreamKey {
  std::uint64_t master = 0;
  std::uint64_t agent = 0;
  std::uint64_t iteration = 0;
  StreamTag tag = StreamTag::kGradX;

  friend bool operator==(const StreamKey&, const StreamKey&) = default;
};

std::uint64_t stream_seed(const StreamKey& key);

// Counts how often each stream was opened. Opening the same
// (agent, iteration, tag) twice within one run means two updates would share
// a sample, which breaks the independence contract.
class StreamAccountant {
 public:
  void record(const StreamKey& key);
  std::size_t distinct() const;
  std::size_t max_uses() const;
  std::size_t uses(const StreamKey& key) const;
  void clear();

 private:
  struct Hash {
    std::size_t operator()(const StreamKey& k) const { return stream_seed(k); }
  };
  mutable std::mutex mu_;
  std::unordered_map<StreamKey, std::size_t, Hash> counts_;
};

// Hands out per-(agent, iteration, tag) generators split from one master seed.
class StreamFactory {
 public:
  explicit StreamFactory(std::uint64_t master, StreamAccountant* accountant = nullptr)
      : master_(master), accountant_(accountant) {}

  Rng stream(std::uint64_t agent, std::uint64_t iteration, StreamTag tag) const;
  std::uint64_t master() const { return master_; }
  StreamFactory derive(std::uint64_t salt) const;

 private:
  std::uint64_t master_;
  StreamAccountant* accountant_;
};

}  // namespace minimax
