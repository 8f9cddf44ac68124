#include "corpusforge/resample.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "corpusforge/error.hpp"

namespace corpusforge {
namespace {

// Passband edge as a fraction of the lower of the two Nyquist frequencies.
constexpr double kRolloff = 0.94;
// Sinc zero crossings on each side of the kernel centre.
constexpr double kZeroCrossings = 32.0;
// Kaiser beta for roughly 90 dB stopband attenuation.
constexpr double kKaiserBeta = 9.0;

double sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

double kaiser(double x, double beta) {
  // x in [-1, 1]
  if (x <= -1.0 || x >= 1.0) return 0.0;
  return std::cyl_bessel_i(0.0, beta * std::sqrt(1.0 - x * x)) /
         std::cyl_bessel_i(0.0, beta);
}

// Polyphase table: taps_[phase * width + k] weights input sample
// base - half + 1 + k for output phase `phase`.
class PolyphaseKernel {
 public:
  PolyphaseKernel(int up, int down) : up_(up), down_(down) {
    const double cutoff = kRolloff * std::min(1.0, static_cast<double>(up) / down);
    const double half_width = kZeroCrossings / cutoff;
    half_ = static_cast<int>(std::ceil(half_width));
    width_ = 2 * half_;
    taps_.resize(static_cast<std::size_t>(up_) * width_);
    for (int phase = 0; phase < up_; ++phase) {
      const double frac = static_cast<double>(phase) / up_;
      double* row = &taps_[static_cast<std::size_t>(phase) * width_];
      double sum = 0.0;
      for (int k = 0; k < width_; ++k) {
        const double tau = (half_ - 1 - k) + frac;
        row[k] = cutoff * sinc(cutoff * tau) * kaiser(tau / half_width, kKaiserBeta);
        sum += row[k];
      }
      // Unity DC gain per phase.
      for (int k = 0; k < width_; ++k) row[k] /= sum;
    }
  }

  std::vector<double> apply(std::span<const double> input) const {
    const auto in_len = static_cast<int64_t>(input.size());
    const int64_t out_len = (in_len * up_ + down_ - 1) / down_;
    std::vector<double> out(static_cast<std::size_t>(out_len));
    for (int64_t n = 0; n < out_len; ++n) {
      const int64_t pos = n * down_;
      const int64_t base = pos / up_;
      const int phase = static_cast<int>(pos % up_);
      const double* row = &taps_[static_cast<std::size_t>(phase) * width_];
      const int64_t first = base - half_ + 1;
      const int k_begin = static_cast<int>(std::max<int64_t>(0, -first));
      const int k_end =
          static_cast<int>(std::min<int64_t>(width_, in_len - first));
      double acc = 0.0;
      for (int k = k_begin; k < k_end; ++k) acc += row[k] * input[first + k];
      out[static_cast<std::size_t>(n)] = acc;
    }
    return out;
  }

 private:
  int up_;
  int down_;
  int half_ = 0;
  int width_ = 0;
  std::vector<double> taps_;
};

std::vector<double> linear(std::span<const double> input, int up, int down) {
  const auto in_len = static_cast<int64_t>(input.size());
  const int64_t out_len = (in_len * up + down - 1) / down;
  std::vector<double> out(static_cast<std::size_t>(out_len));
  for (int64_t n = 0; n < out_len; ++n) {
    const int64_t pos = n * down;
    const int64_t i = pos / up;
    const double frac = static_cast<double>(pos % up) / up;
    const double a = input[i];
    const double b = i + 1 < in_len ? input[i + 1] : a;
    out[static_cast<std::size_t>(n)] = a + (b - a) * frac;
  }
  return out;
}

}  // namespace

std::vector<double> resample(std::span<const double> input, int from_rate,
                             int to_rate, ResampleQuality quality) {
  if (from_rate <= 0 || to_rate <= 0) {
    throw DataError("resample: sample rates must be positive");
  }
  if (from_rate == to_rate || input.empty()) {
    return {input.begin(), input.end()};
  }
  const int g = std::gcd(from_rate, to_rate);
  const int up = to_rate / g;
  const int down = from_rate / g;
  if (quality == ResampleQuality::kLinear) return linear(input, up, down);
  return PolyphaseKernel(up, down).apply(input);
}

std::vector<int16_t> resample(std::span<const int16_t> input, int from_rate,
                              int to_rate, ResampleQuality quality) {
  if (from_rate == to_rate) return {input.begin(), input.end()};
  std::vector<double> wide(input.begin(), input.end());
  const auto out = resample(std::span<const double>(wide), from_rate, to_rate, quality);
  std::vector<int16_t> result(out.size());
  std::transform(out.begin(), out.end(), result.begin(), [](double v) {
    return static_cast<int16_t>(std::clamp(std::lround(v), -32768L, 32767L));
  });
  return result;
}

}  // namespace corpusforge
