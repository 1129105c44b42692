#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rfs/coefficients.hpp"
#include "rfs/fft.hpp"
#include "rfs/fgn.hpp"
#include "rfs/measure.hpp"
#include "rfs/sampling.hpp"

namespace rfs {

/// Pseudo-distance d_f(t, s) = (int |f(t+u) - f(s+u)|^2 dmu(u))^{1/2}.
inline double pseudo_distance(
    const std::function<std::complex<double>(double)>& f,
    const MeasureSpec& mu, double t, double s, int n_quad = 4096) {
  const QuadratureRule rule = mu.rule(n_quad);
  double acc = 0.0;
  for (std::size_t j = 0; j < rule.size(); ++j) {
    const double u = rule.nodes[j];
    double a = t + u;
    double b = s + u;
    a -= std::floor(a);
    b -= std::floor(b);
    acc += rule.weights[j] * std::norm(f(a) - f(b));
  }
  return std::sqrt(std::max(acc, 0.0));
}

/// Partial sum S_N(t) = sum_{|n|<=N} f_hat(n) xi_n e^{2 pi i n t} sampled at
/// t_k = k/m via one zero-padded backward transform.
struct SeriesPath {
  GridPath path;
  long long N = 0;
  std::string noise_descriptor;
};

inline SeriesPath partial_sum_path(const CoefficientSpec& f,
                                   const NoiseSample& noise, long long N,
                                   int m) {
  if (m < 2 * N + 1) {
    throw std::invalid_argument("partial_sum_path: requires m >= 2N+1");
  }
  if (noise.min_index > -N ||
      noise.min_index + static_cast<long long>(noise.values.size()) <= N) {
    throw std::invalid_argument(
        "partial_sum_path: noise does not cover [-N, N]");
  }
  std::vector<std::complex<double>> freq(static_cast<std::size_t>(m),
                                         {0.0, 0.0});
  for (long long n = 0; n <= N; ++n) {
    freq[static_cast<std::size_t>(n)] = f.coeff(n) * noise.at(n);
  }
  for (long long n = 1; n <= N; ++n) {
    freq[static_cast<std::size_t>(m - n)] = f.coeff(-n) * noise.at(-n);
  }
  SeriesPath sp;
  sp.N = N;
  sp.noise_descriptor = noise.descriptor;
  sp.path.m = static_cast<std::size_t>(m);
  sp.path.values = dft_backward(freq);
  sp.path.seed = noise.seed;
  sp.path.stream = noise.stream;
  return sp;
}

/// Exact L^2 size of the increment S_M(t) - S_N(t) under covariance gamma,
///   exact = sum_{N<|n|,|m|<=M} gamma(n-m) f_hat(n) conj(f_hat(m))
///           e^{2 pi i (n-m) t},
/// together with the dominating weighted tail sum_{N<|n|<=M} |f_hat|^2
/// |n|^{2b}.  With a Schur constant K the bound is K * weighted_tail and
/// `dominated` records exact <= bound (+1e-12 slack for roundoff).
struct IncrementBound {
  double exact = 0.0;
  double weighted_tail = 0.0;
  std::optional<double> bound;
  bool dominated = false;
};

inline IncrementBound l2_increment(const CoefficientSpec& f,
                                   const CovarianceSequence& gamma, double b,
                                   long long N, long long M, double t,
                                   std::optional<double> schur_constant = {}) {
  if (N > M) {
    throw std::invalid_argument("l2_increment: requires N <= M");
  }
  std::vector<long long> idx;
  for (long long n = -M; n <= M; ++n) {
    if (n > N || n < -N) idx.push_back(n);
  }
  std::complex<double> acc{0.0, 0.0};
  for (const long long n : idx) {
    const std::complex<double> cn = f.coeff(n);
    for (const long long m : idx) {
      const double ang =
          2.0 * std::numbers::pi * static_cast<double>(n - m) * t;
      acc += gamma(n - m) * cn * std::conj(f.coeff(m)) *
             std::complex<double>{std::cos(ang), std::sin(ang)};
    }
  }
  IncrementBound out;
  out.exact = acc.real();
  for (const long long n : idx) {
    out.weighted_tail +=
        std::norm(f.coeff(n)) *
        std::pow(static_cast<double>(n < 0 ? -n : n), 2.0 * b);
  }
  if (schur_constant) {
    out.bound = *schur_constant * out.weighted_tail;
    out.dominated = out.exact <= *out.bound + 1e-12;
  }
  return out;
}

/// Checks the pointwise mechanism behind 1-Lipschitz functions operating:
/// d_{T o f}(t, s) <= d_f(t, s) + 1e-12 on every supplied pair.
inline bool lipschitz_contraction_check(
    const std::function<std::complex<double>(double)>& f,
    const std::function<std::complex<double>(std::complex<double>)>& T,
    const MeasureSpec& mu,
    const std::vector<std::pair<double, double>>& pairs, int n_quad = 4096) {
  const auto tf = [&](double u) { return T(f(u)); };
  for (const auto& [t, s] : pairs) {
    if (pseudo_distance(tf, mu, t, s, n_quad) >
        pseudo_distance(f, mu, t, s, n_quad) + 1e-12) {
      return false;
    }
  }
  return true;
}

}  // namespace rfs
