#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rfs {

/// Fourier coefficient family f_hat: Z -> C, square-summable.
///
/// Three kinds:
///  - power_law(alpha):   f_hat(n) = |n|^{-alpha}, f_hat(0) = 0, with an
///    optional alternating sign (-1)^n; requires alpha > 1/2.
///  - explicit_array:     values on [-N, N], truncation of an unknown tail;
///    an optional decay bound |f_hat(k)| <= K |k|^{-alpha} for |k| > N makes
///    tail-sensitive checks decidable.
///  - finite_support:     a finite list of (n, value); the tail is zero.
class CoefficientSpec {
 public:
  enum class Kind { power_law, explicit_array, finite_support };

  struct TailDecay {
    double constant;
    double exponent;
  };

  static CoefficientSpec power_law(double alpha, bool alternating = false) {
    if (!(alpha > 0.5)) {
      throw std::domain_error(
          "CoefficientSpec: power law needs alpha > 1/2 for square "
          "summability");
    }
    CoefficientSpec f;
    f.kind_ = Kind::power_law;
    f.alpha_ = alpha;
    f.alternating_ = alternating;
    f.descriptor_ = std::string("power(alpha=") + std::to_string(alpha) +
                    (alternating ? ",alternating)" : ")");
    return f;
  }

  /// Values for n = -N..N (vector length 2N+1, index n + N).
  static CoefficientSpec explicit_array(
      std::vector<std::complex<double>> values,
      std::optional<TailDecay> tail = {}) {
    if (values.size() % 2 == 0 || values.empty()) {
      throw std::domain_error(
          "CoefficientSpec: explicit array must have odd length 2N+1");
    }
    CoefficientSpec f;
    f.kind_ = Kind::explicit_array;
    f.radius_ = static_cast<long long>(values.size() / 2);
    f.values_ = std::make_shared<std::vector<std::complex<double>>>(
        std::move(values));
    f.tail_ = tail;
    f.descriptor_ = "array(N=" + std::to_string(f.radius_) + ")";
    return f;
  }

  static CoefficientSpec finite_support(
      std::vector<std::pair<long long, std::complex<double>>> entries) {
    CoefficientSpec f;
    f.kind_ = Kind::finite_support;
    auto m = std::make_shared<std::map<long long, std::complex<double>>>();
    long long radius = 0;
    for (const auto& [n, v] : entries) {
      (*m)[n] = v;
      radius = std::max(radius, n < 0 ? -n : n);
    }
    f.support_ = m;
    f.radius_ = radius;
    f.descriptor_ = "finite(" + std::to_string(m->size()) + " modes)";
    return f;
  }

  Kind kind() const { return kind_; }
  const std::string& descriptor() const { return descriptor_; }
  double alpha() const { return alpha_; }

  std::complex<double> coeff(long long n) const {
    switch (kind_) {
      case Kind::power_law: {
        if (n == 0) return {0.0, 0.0};
        const double mag =
            std::pow(static_cast<double>(n < 0 ? -n : n), -alpha_);
        if (alternating_ && (n & 1)) return {-mag, 0.0};
        return {mag, 0.0};
      }
      case Kind::explicit_array: {
        if (n < -radius_ || n > radius_) return {0.0, 0.0};
        return (*values_)[static_cast<std::size_t>(n + radius_)];
      }
      case Kind::finite_support:
      default: {
        const auto it = support_->find(n);
        return it == support_->end() ? std::complex<double>{0.0, 0.0}
                                     : it->second;
      }
    }
  }

  /// True when the tail beyond the stored radius is identically zero.
  /// Explicit arrays are truncations of an unknown sequence, so their tail
  /// is only known through tail_decay().
  bool tail_is_zero() const { return kind_ == Kind::finite_support; }

  /// Radius of stored coefficients (power laws extend indefinitely).
  long long radius() const { return radius_; }

  /// Decay bound valid for coefficients beyond radius(): exact for power
  /// laws, user-declared for arrays, absent when the tail is unknown.
  std::optional<TailDecay> tail_decay() const {
    if (kind_ == Kind::power_law) return TailDecay{1.0, alpha_};
    return tail_;
  }

  /// Time-domain synthesis truncated at |n| <= N.
  std::function<std::complex<double>(double)> function(long long N) const {
    std::vector<std::complex<double>> c(static_cast<std::size_t>(2 * N + 1));
    for (long long n = -N; n <= N; ++n) {
      c[static_cast<std::size_t>(n + N)] = coeff(n);
    }
    return [c, N](double t) {
      std::complex<double> acc{0.0, 0.0};
      for (long long n = -N; n <= N; ++n) {
        const double ang = 2.0 * std::numbers::pi * static_cast<double>(n) * t;
        acc += c[static_cast<std::size_t>(n + N)] *
               std::complex<double>{std::cos(ang), std::sin(ang)};
      }
      return acc;
    };
  }

 private:
  CoefficientSpec() = default;

  Kind kind_ = Kind::power_law;
  double alpha_ = 1.0;
  bool alternating_ = false;
  long long radius_ = 0;
  std::shared_ptr<std::vector<std::complex<double>>> values_;
  std::shared_ptr<std::map<long long, std::complex<double>>> support_;
  std::optional<TailDecay> tail_;
  std::string descriptor_;
};

}  // namespace rfs
