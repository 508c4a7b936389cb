#include "ccbc/sampler.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "ccbc/error.hpp"
#include "sobol_table.hpp"

namespace ccbc {

std::string_view to_string(SamplerTag tag) {
  switch (tag) {
    case SamplerTag::pseudo_random: return "pseudo_random";
    case SamplerTag::chaotic: return "chaotic";
    case SamplerTag::faure: return "faure";
    case SamplerTag::sobol: return "sobol";
    case SamplerTag::latin_hypercube: return "latin_hypercube";
  }
  return "unknown";
}

SamplerTag parse_sampler_tag(std::string_view name) {
  for (auto tag : {SamplerTag::pseudo_random, SamplerTag::chaotic, SamplerTag::faure, SamplerTag::sobol,
                   SamplerTag::latin_hypercube})
    if (name == to_string(tag)) return tag;
  throw ConfigError("unknown sampler '" + std::string(name) + "'");
}

void PointSet::push_back(std::span<const double> point) {
  if (dim_ == 0 && data_.empty()) dim_ = point.size();
  if (point.size() != dim_) throw std::invalid_argument("point dimension mismatch");
  data_.insert(data_.end(), point.begin(), point.end());
}

void map_to_box(const Box& box, std::span<const double> unit, std::span<double> out) {
  for (std::size_t d = 0; d < box.dim(); ++d) {
    const double v = box.lower[d] + unit[d] * (box.upper[d] - box.lower[d]);
    out[d] = std::clamp(v, box.lower[d], box.upper[d]);
  }
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Unbiased integer in [0, bound) by rejection; identical on every platform,
// unlike std::uniform_int_distribution.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

class PseudoRandom final : public UnitSequence {
 public:
  PseudoRandom(std::size_t dim, std::uint64_t seed) : dim_(dim), rng_(seed) {}
  std::size_t dim() const noexcept override { return dim_; }
  void fill(std::size_t count, std::span<double> out) override {
    for (std::size_t k = 0; k < count * dim_; ++k) out[k] = unit_double(rng_());
  }

 private:
  std::size_t dim_;
  std::mt19937_64 rng_;
};

// Logistic map x <- 4x(1-x), one orbit per coordinate. Its invariant density
// is the arcsine law, so iterates are pushed through (2/pi) asin(sqrt(x)) to
// become uniform.
class Chaotic final : public UnitSequence {
 public:
  Chaotic(std::size_t dim, std::uint64_t seed) : dim_(dim), state_(seed), x_(dim) {
    for (auto& x : x_) {
      x = fresh();
      for (int i = 0; i < kBurnIn; ++i) step(x);
    }
  }
  std::size_t dim() const noexcept override { return dim_; }
  void fill(std::size_t count, std::span<double> out) override {
    for (std::size_t i = 0; i < count; ++i)
      for (std::size_t d = 0; d < dim_; ++d) {
        step(x_[d]);
        const double u = 2.0 * std::numbers::inv_pi * std::asin(std::sqrt(x_[d]));
        out[i * dim_ + d] = std::min(u, std::nextafter(1.0, 0.0));
      }
  }

 private:
  static constexpr int kBurnIn = 100;

  double fresh() {
    double x;
    do {
      x = unit_double(splitmix64(state_));
    } while (degenerate(x));
    return x;
  }
  static bool degenerate(double x) { return !(x > 0.0 && x < 1.0) || x == 0.75 || x == 0.5; }
  void step(double& x) {
    x = 4.0 * x * (1.0 - x);
    if (degenerate(x)) x = fresh();
  }

  std::size_t dim_;
  std::uint64_t state_;
  std::vector<double> x_;
};

bool is_prime(int v) {
  if (v < 2) return false;
  for (int d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

// Generalized Faure sequence in prime base b >= dim; coordinate d applies the
// d-th power of the Pascal matrix to the base-b digits of the index.
class Faure final : public UnitSequence {
 public:
  Faure(std::size_t dim, std::uint64_t seed) : dim_(dim) {
    base_ = std::max(2, static_cast<int>(dim));
    while (!is_prime(base_)) ++base_;
    for (int i = 0; i < kDigits; ++i) {
      binom_[i][0] = 1;
      for (int r = 1; r <= i; ++r) binom_[i][r] = (binom_[i - 1][r - 1] + (r < i ? binom_[i - 1][r] : 0)) % base_;
    }
    if (seed != 0) {
      std::mt19937_64 rng(seed);
      shift_.resize(dim);
      for (auto& s : shift_) s = unit_double(rng());
    }
  }
  std::size_t dim() const noexcept override { return dim_; }
  void fill(std::size_t count, std::span<double> out) override {
    std::array<int, kDigits> a{};
    std::array<int, kDigits> powers{};
    for (std::size_t i = 0; i < count; ++i) {
      ++index_;
      int ndig = 0;
      for (std::uint64_t j = index_; j > 0; j /= static_cast<std::uint64_t>(base_)) a[ndig++] = static_cast<int>(j % base_);
      for (std::size_t d = 0; d < dim_; ++d) {
        const int c = static_cast<int>(d % static_cast<std::size_t>(base_));
        powers[0] = 1;
        for (int e = 1; e < ndig; ++e) powers[e] = powers[e - 1] * c % base_;
        double u = 0.0;
        double scale = 1.0 / base_;
        for (int r = 0; r < ndig; ++r) {
          int y = 0;
          for (int k = r; k < ndig; ++k) y = (y + binom_[k][r] * powers[k - r] % base_ * a[k]) % base_;
          u += y * scale;
          scale /= base_;
        }
        if (!shift_.empty()) {
          u += shift_[d];
          if (u >= 1.0) u -= 1.0;
        }
        out[i * dim_ + d] = std::min(u, std::nextafter(1.0, 0.0));
      }
    }
  }

 private:
  static constexpr int kDigits = 64;
  std::size_t dim_;
  int base_ = 2;
  std::uint64_t index_ = 0;
  std::array<std::array<int, kDigits>, kDigits> binom_{};
  std::vector<double> shift_;
};

// Sobol sequence, Gray-code order, 32-bit direction numbers, point 0 skipped.
class Sobol final : public UnitSequence {
 public:
  static constexpr std::size_t kMaxDim = detail::kSobolTableDims + 1;

  Sobol(std::size_t dim, std::uint64_t seed) : dim_(dim), v_(dim), x_(dim, 0u), shift_(dim, 0u) {
    if (dim > kMaxDim) throw ConfigError("sobol sampler supports at most " + std::to_string(kMaxDim) + " dimensions");
    for (int k = 0; k < kBits; ++k) v_[0][k] = 1u << (kBits - 1 - k);
    for (std::size_t d = 1; d < dim; ++d) {
      const auto& poly = detail::kSobolTable[d - 1];
      const int s = poly.degree;
      auto& v = v_[d];
      for (int k = 0; k < std::min(s, kBits); ++k) v[k] = poly.m[k] << (kBits - 1 - k);
      for (int k = s; k < kBits; ++k) {
        std::uint32_t w = v[k - s] ^ (v[k - s] >> s);
        for (int j = 1; j < s; ++j)
          if ((poly.a >> (s - 1 - j)) & 1u) w ^= v[k - j];
        v[k] = w;
      }
    }
    if (seed != 0) {
      std::mt19937_64 rng(seed);
      for (auto& s : shift_) s = static_cast<std::uint32_t>(rng() >> 32);
    }
  }
  std::size_t dim() const noexcept override { return dim_; }
  void fill(std::size_t count, std::span<double> out) override {
    for (std::size_t i = 0; i < count; ++i) {
      // Index n-1 -> n flips the bit at the lowest zero of n-1.
      int c = 0;
      for (std::uint64_t m = index_; m & 1u; m >>= 1) ++c;
      if (c >= kBits) throw ConfigError("sobol sequence exhausted");
      ++index_;
      for (std::size_t d = 0; d < dim_; ++d) {
        x_[d] ^= v_[d][c];
        out[i * dim_ + d] = static_cast<double>(x_[d] ^ shift_[d]) * 0x1.0p-32;
      }
    }
  }

 private:
  static constexpr int kBits = 32;
  std::size_t dim_;
  std::uint64_t index_ = 0;
  std::vector<std::array<std::uint32_t, kBits>> v_;
  std::vector<std::uint32_t> x_;
  std::vector<std::uint32_t> shift_;
};

// Each batch is an independent Latin hypercube of `count` points.
class LatinHypercube final : public UnitSequence {
 public:
  LatinHypercube(std::size_t dim, std::uint64_t seed) : dim_(dim), rng_(seed) {}
  std::size_t dim() const noexcept override { return dim_; }
  void fill(std::size_t count, std::span<double> out) override {
    std::vector<std::size_t> perm(count);
    for (std::size_t d = 0; d < dim_; ++d) {
      for (std::size_t i = 0; i < count; ++i) perm[i] = i;
      for (std::size_t i = count; i > 1; --i) std::swap(perm[i - 1], perm[bounded(rng_, i)]);
      for (std::size_t i = 0; i < count; ++i) {
        const double u = (static_cast<double>(perm[i]) + unit_double(rng_())) / static_cast<double>(count);
        out[i * dim_ + d] = std::min(u, std::nextafter(1.0, 0.0));
      }
    }
  }

 private:
  std::size_t dim_;
  std::mt19937_64 rng_;
};

}  // namespace

std::unique_ptr<UnitSequence> make_unit_sequence(SamplerKind kind, std::size_t dim) {
  if (dim == 0) throw ConfigError("sampler dimension must be positive");
  switch (kind.tag) {
    case SamplerTag::pseudo_random: return std::make_unique<PseudoRandom>(dim, kind.seed);
    case SamplerTag::chaotic: return std::make_unique<Chaotic>(dim, kind.seed);
    case SamplerTag::faure: return std::make_unique<Faure>(dim, kind.seed);
    case SamplerTag::sobol: return std::make_unique<Sobol>(dim, kind.seed);
    case SamplerTag::latin_hypercube: return std::make_unique<LatinHypercube>(dim, kind.seed);
  }
  throw ConfigError("unknown sampler kind");
}

Sampler::Sampler(SamplerKind kind, Box box)
    : kind_(kind), box_(std::move(box)), seq_(make_unit_sequence(kind, box_.dim())) {}

PointSet Sampler::next_batch(std::size_t count) {
  PointSet out(dim(), count);
  if (count == 0) return out;
  std::vector<double> unit(count * dim());
  seq_->fill(count, unit);
  for (std::size_t i = 0; i < count; ++i)
    map_to_box(box_, std::span<const double>(unit).subspan(i * dim(), dim()), out[i]);
  return out;
}

DoubleBox::DoubleBox(Box box, std::uint64_t seed) : box_(std::move(box)), rng_(seed) {
  const double scale = std::pow(2.0, 1.0 / static_cast<double>(box_.dim()));
  outer_ = box_;
  for (std::size_t d = 0; d < box_.dim(); ++d) {
    const double c = 0.5 * (box_.lower[d] + box_.upper[d]);
    const double h = 0.5 * (box_.upper[d] - box_.lower[d]) * scale;
    outer_.lower[d] = c - h;
    outer_.upper[d] = c + h;
  }
}

PointSet DoubleBox::next_batch(std::size_t count) {
  const std::size_t dim = box_.dim();
  PointSet out;
  if (count == 0) return out;
  std::vector<double> unit(dim);
  std::vector<double> point(dim);
  std::uint64_t drawn = 0;
  while (out.size() < count) {
    for (auto& u : unit) u = unit_double(rng_());
    map_to_box(outer_, unit, point);
    ++drawn;
    if (box_.contains(point)) out.push_back(point);
  }
  state_.k += 1;
  state_.draws += drawn;
  const double delta = static_cast<double>(state_.k) * static_cast<double>(count) / static_cast<double>(state_.draws);
  state_.deltas.push_back(delta);
  const double kd = static_cast<double>(state_.k);
  double mean = 0.0;
  for (double d : state_.deltas) mean += d;
  mean /= kd;
  double var = 0.0;
  for (double d : state_.deltas) var += (d - mean) * (d - mean);
  state_.mean = mean;
  state_.variance = var / kd;
  return out;
}

}  // namespace ccbc
