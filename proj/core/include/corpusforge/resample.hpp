#ifndef CORPUSFORGE_RESAMPLE_HPP_
#define CORPUSFORGE_RESAMPLE_HPP_

#include <cstdint>
#include <span>
#include <vector>

namespace corpusforge {

enum class ResampleQuality {
  // Kaiser-windowed sinc, polyphase. Default.
  kSinc,
  // Linear interpolation without anti-alias filtering. Lossy: aliases any
  // content above the target Nyquist frequency. For quick previews only.
  kLinear,
};

// Converts `input` from `from_rate` to `to_rate`. Output length is
// ceil(len(input) * to_rate / from_rate).
std::vector<int16_t> resample(std::span<const int16_t> input, int from_rate,
                              int to_rate,
                              ResampleQuality quality = ResampleQuality::kSinc);

// Floating-point variant used internally and by tests.
std::vector<double> resample(std::span<const double> input, int from_rate,
                             int to_rate,
                             ResampleQuality quality = ResampleQuality::kSinc);

}  // namespace corpusforge

#endif  // CORPUSFORGE_RESAMPLE_HPP_
