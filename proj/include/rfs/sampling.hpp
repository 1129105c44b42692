#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "rfs/errors.hpp"
#include "rfs/fft.hpp"
#include "rfs/fgn.hpp"
#include "rfs/measure.hpp"
#include "rfs/rng.hpp"

namespace rfs {

/// A finite vector of driving noise values xi_{min_index..min_index+n-1}
/// together with the covariance descriptor and seed provenance.
struct NoiseSample {
  long long min_index = 0;
  std::vector<std::complex<double>> values;
  std::string descriptor;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  std::complex<double> at(long long n) const {
    const long long i = n - min_index;
    if (i < 0 || i >= static_cast<long long>(values.size())) {
      throw std::out_of_range("NoiseSample: index outside sampled range");
    }
    return values[static_cast<std::size_t>(i)];
  }
};

/// Uniform grid t_k = k/m on the circle with complex process values.
struct GridPath {
  std::size_t m = 0;
  std::vector<std::complex<double>> values;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  double t(std::size_t k) const { return static_cast<double>(k) / m; }
};

namespace detail {

// Factor of a Hermitian PSD matrix K such that draws F z (z standard
// complex Gaussian) have covariance K.  LDLT with permutation handles
// rank-deficient kernels exactly; a bounded jitter ladder cures matrices
// that are PSD only up to quadrature roundoff.
inline Eigen::MatrixXcd psd_factor(const Eigen::MatrixXcd& K,
                                   const char* context) {
  const double scale = std::max(K.trace().real() / K.rows(), 1e-300);
  const double floor_tol = 1e-9 * scale;
  for (const double eps : {0.0, 1e-12, 1e-10, 1e-8, 1e-6}) {
    Eigen::MatrixXcd A = K;
    if (eps > 0.0) {
      A.diagonal().array() += std::complex<double>{eps * scale, 0.0};
    }
    Eigen::LDLT<Eigen::MatrixXcd> ldlt(A);
    if (ldlt.info() != Eigen::Success) continue;
    Eigen::VectorXd d = ldlt.vectorD().real();
    if (d.minCoeff() < -floor_tol) continue;
    const Eigen::VectorXcd ds =
        d.cwiseMax(0.0).cwiseSqrt().cast<std::complex<double>>();
    Eigen::MatrixXcd F = Eigen::MatrixXcd(ldlt.matrixL()) * ds.asDiagonal();
    return ldlt.transpositionsP().transpose() * F;
  }
  throw NumericalError(std::string(context) +
                       ": kernel not PSD after maximal jitter 1e-6*trace/m");
}

}  // namespace detail

/// Exact sampler for complex fractional Gaussian noise of length n:
/// E Delta_j conj(Delta_k) = gamma_H(j-k), E Delta_j Delta_k = 0.
///
/// Uses circulant embedding of size 2(n-1): the embedded covariance is
/// diagonalized by the DFT, frequency amplitudes sqrt(lambda_k/M) carry
/// independent standard complex Gaussians, and one backward transform
/// yields the path.  Equivalently the real and imaginary parts are two
/// independent real fGn paths scaled by 1/sqrt(2).  If an embedding
/// eigenvalue dips below -1e-9 (never observed for fGn), a dense
/// factorization of the n x n covariance takes over.
class FgnSampler {
 public:
  FgnSampler(HurstParameter H, std::size_t n) : h_(H), n_(n) {
    if (n == 0) {
      throw std::domain_error("FgnSampler: requires n >= 1");
    }
    if (n == 1) return;

    const std::size_t m = 2 * (n - 1);
    std::vector<std::complex<double>> c(m);
    for (std::size_t k = 0; k < n; ++k) {
      c[k] = fgn_covariance(H, static_cast<long long>(k));
    }
    for (std::size_t k = n; k < m; ++k) {
      c[k] = c[m - k];
    }
    const auto lambda = dft(c);
    double lo = 0.0, hi = 0.0;
    for (const auto& l : lambda) {
      lo = std::min(lo, l.real());
      hi = std::max(hi, l.real());
    }
    if (lo < -1e-9 * std::max(hi, 1.0)) {
      dense_fallback();
      return;
    }
    amplitude_.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
      amplitude_[k] = std::sqrt(std::max(lambda[k].real(), 0.0) /
                                static_cast<double>(m));
    }
  }

  std::size_t length() const { return n_; }
  bool used_dense_fallback() const { return factor_ != nullptr; }

  std::vector<std::complex<double>> draw(RngState& rng) const {
    if (n_ == 1) {
      return {rng.next_complex_gaussian()};
    }
    if (factor_) {
      Eigen::VectorXcd z(n_);
      for (std::size_t i = 0; i < n_; ++i) z[i] = rng.next_complex_gaussian();
      Eigen::VectorXcd x = (*factor_) * z;
      return {x.data(), x.data() + n_};
    }
    const std::size_t m = amplitude_.size();
    std::vector<std::complex<double>> a(m);
    for (std::size_t k = 0; k < m; ++k) {
      a[k] = amplitude_[k] * rng.next_complex_gaussian();
    }
    auto x = dft_backward(a);
    x.resize(n_);
    return x;
  }

 private:
  void dense_fallback() {
    Eigen::MatrixXcd K(n_, n_);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        K(i, j) = fgn_covariance(
            h_, static_cast<long long>(i) - static_cast<long long>(j));
      }
    }
    factor_ = std::make_shared<Eigen::MatrixXcd>(
        detail::psd_factor(K, "FgnSampler"));
  }

  HurstParameter h_;
  std::size_t n_;
  std::vector<double> amplitude_;
  std::shared_ptr<Eigen::MatrixXcd> factor_;
};

/// One-shot draw of n consecutive complex fGn values.
inline NoiseSample sample_fgn(HurstParameter H, std::size_t n, RngState& rng) {
  const FgnSampler sampler(H, n);
  NoiseSample s;
  s.values = sampler.draw(rng);
  s.descriptor = "fgn(H=" + std::to_string(H.value) + ")";
  s.seed = rng.seed();
  s.stream = rng.stream();
  return s;
}

/// i.i.d. standard complex Gaussian noise indexed min_index..min_index+n-1.
inline NoiseSample sample_iid(std::size_t n, RngState& rng,
                              long long min_index = 0) {
  NoiseSample s;
  s.min_index = min_index;
  s.values = sample_standard_complex_gaussian(n, rng);
  s.descriptor = "iid";
  s.seed = rng.seed();
  s.stream = rng.stream();
  return s;
}

/// Stationary sequence xi_{-N..N} synthesized from a spectral measure:
///   xi_k = sum_j sqrt(w_j) Z_j e^{2 pi i k u_j}
/// over the measure's quadrature rule (w_j folds in the density), so that
/// E xi_k conj(xi_l) -> gamma(k-l) as the rule refines and the pseudo-
/// covariance vanishes identically.
inline NoiseSample sample_stationary_from_density(const MeasureSpec& mu,
                                                  long long N, int n_modes,
                                                  RngState& rng) {
  if (N < 0) {
    throw std::domain_error("sample_stationary_from_density: requires N >= 0");
  }
  const QuadratureRule rule = mu.rule(n_modes);
  const auto z = sample_standard_complex_gaussian(rule.size(), rng);

  NoiseSample s;
  s.min_index = -N;
  s.values.assign(static_cast<std::size_t>(2 * N + 1), {0.0, 0.0});
  for (std::size_t j = 0; j < rule.size(); ++j) {
    const double amp = std::sqrt(std::max(rule.weights[j], 0.0));
    const std::complex<double> zj = amp * z[j];
    const double base = 2.0 * std::numbers::pi * rule.nodes[j];
    for (long long k = -N; k <= N; ++k) {
      const double ang = base * static_cast<double>(k);
      s.values[static_cast<std::size_t>(k + N)] +=
          zj * std::complex<double>{std::cos(ang), std::sin(ang)};
    }
  }
  s.descriptor = "spectral(" + mu.descriptor() + ")";
  s.seed = rng.seed();
  s.stream = rng.stream();
  return s;
}

/// Sampler for the process X_f on the grid t_i = i/m: the Hermitian kernel
///   K(t_i, t_j) = int f(t_i + u) conj(f(t_j + u)) dmu(u)
/// is assembled as a Gram matrix over the measure's quadrature rule and
/// factored once; each draw is F z with z standard complex Gaussian.
class XfSampler {
 public:
  XfSampler(const std::function<std::complex<double>(double)>& f,
            const MeasureSpec& mu, int m, int n_quad = 0)
      : m_(m) {
    if (m < 2) {
      throw std::domain_error("XfSampler: requires m >= 2");
    }
    if (n_quad <= 0) n_quad = std::max(1024, 8 * m);
    const QuadratureRule rule = mu.rule(n_quad);

    Eigen::MatrixXcd B(rule.size(), m);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double sw = std::sqrt(std::max(rule.weights[q], 0.0));
      for (int i = 0; i < m; ++i) {
        const double u = rule.nodes[q] + static_cast<double>(i) / m;
        B(q, i) = sw * std::conj(f(u - std::floor(u)));
      }
    }
    Eigen::MatrixXcd K = B.adjoint() * B;
    kernel_ = K;
    factor_ = detail::psd_factor(K, "XfSampler");
  }

  int grid_size() const { return m_; }
  const Eigen::MatrixXcd& kernel() const { return kernel_; }

  GridPath draw(RngState& rng) const {
    Eigen::VectorXcd z(m_);
    for (int i = 0; i < m_; ++i) z[i] = rng.next_complex_gaussian();
    Eigen::VectorXcd x = factor_ * z;
    GridPath p;
    p.m = static_cast<std::size_t>(m_);
    p.values.assign(x.data(), x.data() + m_);
    p.seed = rng.seed();
    p.stream = rng.stream();
    return p;
  }

 private:
  int m_;
  Eigen::MatrixXcd kernel_;
  Eigen::MatrixXcd factor_;
};

/// One Gaussian draw of X_f on the uniform m-grid.
inline GridPath sample_Xf_on_grid(
    const std::function<std::complex<double>(double)>& f,
    const MeasureSpec& mu, int m, RngState& rng, int n_quad = 0) {
  return XfSampler(f, mu, m, n_quad).draw(rng);
}

}  // namespace rfs
