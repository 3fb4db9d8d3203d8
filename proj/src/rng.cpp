#include "minimax/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace minimax {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(std::uint64_t seed) {
  std::uint64_t sm = seed;
  for (auto& s : s_) s = splitmix64(sm);
}

Rng::result_type Rng::operator()() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  // 1 - uniform() lies in (0, 1], so the log is finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t stream_seed(const StreamKey& key) {
  std::uint64_t h = key.master ^ 0x6A09E667F3BCC908ULL;
  std::uint64_t out = splitmix64(h);
  h = out ^ (key.agent * 0xD1B54A32D192ED03ULL);
  out = splitmix64(h);
  h = out ^ (key.iteration * 0xABC98388FB8FAC03ULL);
  out = splitmix64(h);
  h = out ^ (static_cast<std::uint64_t>(key.tag) * 0x8CB92BA72F3D8DD7ULL);
  return splitmix64(h);
}

void StreamAccountant::record(const StreamKey& key) {
  std::lock_guard lock(mu_);
  ++counts_[key];
}

std::size_t StreamAccountant::distinct() const {
  std::lock_guard lock(mu_);
  return counts_.size();
}

std::size_t StreamAccountant::max_uses() const {
  std::lock_guard lock(mu_);
  std::size_t m = 0;
  for (const auto& [k, c] : counts_) m = std::max(m, c);
  return m;
}

std::size_t StreamAccountant::uses(const StreamKey& key) const {
  std::lock_guard lock(mu_);
  auto it = counts_.find(key);
  return it == counts_.end() ? 0 : it->second;
}

void StreamAccountant::clear() {
  std::lock_guard lock(mu_);
  counts_.clear();
}

Rng StreamFactory::stream(std::uint64_t agent, std::uint64_t iteration, StreamTag tag) const {
  const StreamKey key{master_, agent, iteration, tag};
  if (accountant_ != nullptr) accountant_->record(key);
  return Rng(stream_seed(key));
}

StreamFactory StreamFactory::derive(std::uint64_t salt) const {
  std::uint64_t h = master_ ^ (salt * 0x9FB21C651E98DF25ULL);
  return StreamFactory(splitmix64(h), accountant_);
}

}  // namespace minimax
