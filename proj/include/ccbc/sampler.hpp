#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ccbc/problem.hpp"

namespace ccbc {

enum class SamplerTag { pseudo_random, chaotic, faure, sobol, latin_hypercube };

std::string_view to_string(SamplerTag tag);
/// Throws ConfigError on an unknown name.
SamplerTag parse_sampler_tag(std::string_view name);

struct SamplerKind {
  SamplerTag tag = SamplerTag::faure;
  std::uint64_t seed = 0;
};

/// Flat list of points of a common dimension.
class PointSet {
 public:
  PointSet() = default;
  PointSet(std::size_t dim, std::size_t count) : dim_(dim), data_(dim * count, 0.0) {}

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return dim_ == 0 ? 0 : data_.size() / dim_; }
  bool empty() const noexcept { return size() == 0; }

  std::span<const double> operator[](std::size_t i) const { return {data_.data() + i * dim_, dim_}; }
  std::span<double> operator[](std::size_t i) { return {data_.data() + i * dim_, dim_}; }

  void push_back(std::span<const double> point);
  std::span<const double> data() const noexcept { return data_; }

 private:
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

/// Unit-cube stream in [0,1)^dim.
class UnitSequence {
 public:
  virtual ~UnitSequence() = default;
  virtual std::size_t dim() const noexcept = 0;
  /// Writes `count` consecutive points into `out` (count * dim values).
  virtual void fill(std::size_t count, std::span<double> out) = 0;
};

/// Throws ConfigError if the dimension exceeds the tables of the chosen kind.
std::unique_ptr<UnitSequence> make_unit_sequence(SamplerKind kind, std::size_t dim);

/// Stateful generator of consecutive batches inside a box.
class Sampler {
 public:
  Sampler(SamplerKind kind, Box box);

  SamplerKind kind() const noexcept { return kind_; }
  const Box& box() const noexcept { return box_; }
  std::size_t dim() const noexcept { return box_.dim(); }

  /// Next `count` points of the stream, each inside the closed box.
  PointSet next_batch(std::size_t count);

 private:
  SamplerKind kind_;
  Box box_;
  std::unique_ptr<UnitSequence> seq_;
};

/// Affine map of a unit-cube point into `box`, clamped to the closed bounds.
void map_to_box(const Box& box, std::span<const double> unit, std::span<double> out);

/// Double-Box bookkeeping: B2 is concentric with B and twice its measure.
struct DoubleBoxState {
  std::size_t k = 0;
  std::uint64_t draws = 0;  ///< M_k, total points drawn from B2
  std::vector<double> deltas;
  double mean = 0.0;
  double variance = 0.0;
};

/// Uniform sampler of B2 that accumulates the Double-Box statistics.
class DoubleBox {
 public:
  DoubleBox(Box box, std::uint64_t seed);

  const DoubleBoxState& state() const noexcept { return state_; }
  const Box& outer() const noexcept { return outer_; }

  /// Draws from B2 until `count` points land in B and returns them. count = 0
  /// is a no-op.
  PointSet next_batch(std::size_t count);

 private:
  Box box_;
  Box outer_;
  std::mt19937_64 rng_;
  DoubleBoxState state_;
};

/// 53-bit uniform double in [0,1) from one 64-bit draw.
inline double unit_double(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

}  // namespace ccbc
