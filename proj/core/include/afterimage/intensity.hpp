#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace afterimage {

/// Number of representable display levels (8-bit greyscale).
inline constexpr int kLevelsPerChannel = 256;
inline constexpr int kMaxCode = kLevelsPerChannel - 1;

/// A display greyscale level k/255, k in 0..255. Values are display-encoded;
/// no gamma conversion is applied anywhere.
class Intensity {
 public:
  constexpr Intensity() = default;

  static constexpr Intensity from_code(std::uint8_t code) { return Intensity(code); }

  constexpr std::uint8_t code() const { return code_; }
  constexpr double value() const { return static_cast<double>(code_) / kMaxCode; }

  friend constexpr auto operator<=>(Intensity, Intensity) = default;

 private:
  constexpr explicit Intensity(std::uint8_t code) : code_(code) {}
  std::uint8_t code_ = 0;
};

/// round(v * 255) / 255. Throws DomainError unless 0 <= v <= 1.
Intensity quantize(double v);

/// Decimal rendering with four digits, e.g. "0.8706".
std::string to_string(Intensity i);

/// Affine afterimage oracle t + slope * (t - b). Any slope > 0 satisfies the
/// fixed-point, sign and monotonicity axioms of the naive intensity model.
/// Used to fuzz theorems, never to render.
class SyntheticAfterimageFunction {
 public:
  explicit SyntheticAfterimageFunction(double slope);

  double slope() const { return slope_; }
  double operator()(Intensity bias, Intensity trigger) const;

 private:
  double slope_;
};

/// Free-function form; throws DomainError when slope <= 0.
double synthetic_fa(Intensity bias, Intensity trigger, double slope);

/// An afterimage function sampled on a grid levels x levels (both axes use the
/// same ascending set of intensities). values[bi * size + ti] = f(levels[bi], levels[ti]).
struct SampledAfterimageFunction {
  std::vector<Intensity> levels;
  std::vector<double> values;

  double at(std::size_t bias_index, std::size_t trigger_index) const {
    return values[bias_index * levels.size() + trigger_index];
  }

  static SampledAfterimageFunction sample(
      const std::function<double(Intensity, Intensity)>& fa,
      std::span<const Intensity> levels);

  /// All 256 display levels.
  static SampledAfterimageFunction sample_full(
      const std::function<double(Intensity, Intensity)>& fa);
};

enum class Axiom {
  kFixedPoint,       // b = t  <=>  f(b,t) = t
  kDarkening,        // b > t  <=>  f(b,t) < t
  kLightening,       // b < t  <=>  f(b,t) > t
  kBiasMonotonicity  // b1 > b2 <=> f(b1,t) < f(b2,t)
};

std::string to_string(Axiom a);

struct AxiomViolation {
  Axiom axiom;
  Intensity bias;
  Intensity trigger;
  Intensity other_bias;  // second bias for kBiasMonotonicity, else == bias
};

struct AxiomReport {
  bool holds = true;
  std::size_t violation_count = 0;
  std::vector<AxiomViolation> violations;  // first `max_listed` only
};

/// Checks every axiom on every sampled pair and, for monotonicity, every
/// pair of biases at a shared trigger.
AxiomReport axioms_hold(const SampledAfterimageFunction& fa, std::size_t max_listed = 64);

}  // namespace afterimage
