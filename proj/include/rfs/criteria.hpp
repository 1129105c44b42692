#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rfs/coefficients.hpp"
#include "rfs/errors.hpp"
#include "rfs/fft.hpp"
#include "rfs/fgn.hpp"

namespace rfs {

enum class Verdict { converges, diverges, inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::converges: return "converges";
    case Verdict::diverges: return "diverges";
    default: return "inconclusive";
  }
}

/// Outcome of the weighted-tail convergence check
///   sum_{|n|>=2} (sum_{|k|>=|n|} |f_hat(k)|^2 |k|^{2b})^{1/2}
///                / (|n| (log|n|)^{1/2})  <  infinity.
/// A "converges" verdict carries a finite certified upper bound; "diverges"
/// is only reported when a lower-bounding integral comparison diverges.
struct CriterionReport {
  Verdict verdict = Verdict::inconclusive;
  std::vector<long long> checkpoints;  // outer indices of recorded partials
  std::vector<double> partial_sums;    // running sum at each checkpoint
  double tail_estimate = 0.0;          // bound on the remainder; inf if none
  double total_upper = 0.0;            // partial + tail when finite
  double b = 0.0;
  long long n_terms = 0;
  std::string note;
};

/// Exact convergence threshold of the check for power-law coefficients
/// |f_hat(n)| = K |n|^{-alpha}: the series converges iff alpha > b + 1/2.
inline double power_law_threshold(double b) {
  if (b < 0.0) {
    throw std::domain_error("power_law_threshold: requires b >= 0");
  }
  return b + 0.5;
}

inline CriterionReport check_condition7(const CoefficientSpec& f, double b,
                                        long long n_terms = 4096) {
  if (b < 0.0) {
    throw std::domain_error("check_condition7: requires b >= 0");
  }
  if (n_terms < 4) {
    throw std::domain_error("check_condition7: requires n_terms >= 4");
  }
  CriterionReport rep;
  rep.b = b;
  rep.n_terms = n_terms;

  const auto record = [&](long long n, double sum) {
    rep.checkpoints.push_back(n);
    rep.partial_sums.push_back(sum);
  };

  if (f.tail_is_zero()) {
    // Finitely many modes: every inner tail is a finite sum.
    const long long top = std::max<long long>(f.radius(), 2);
    std::vector<double> suffix(static_cast<std::size_t>(top + 2), 0.0);
    for (long long n = top; n >= 2; --n) {
      const double w = std::pow(static_cast<double>(n), 2.0 * b);
      suffix[static_cast<std::size_t>(n)] =
          suffix[static_cast<std::size_t>(n + 1)] +
          (std::norm(f.coeff(n)) + std::norm(f.coeff(-n))) * w;
    }
    double sum = 0.0;
    for (long long n = 2; n <= top; ++n) {
      sum += 2.0 * std::sqrt(suffix[static_cast<std::size_t>(n)]) /
             (static_cast<double>(n) *
              std::sqrt(std::log(static_cast<double>(n))));
      if ((n & (n - 1)) == 0 || n == top) record(n, sum);
    }
    rep.verdict = Verdict::converges;
    rep.tail_estimate = 0.0;
    rep.total_upper = sum;
    rep.note = "finite support: exact finite sum";
    return rep;
  }

  const auto decay = f.tail_decay();
  if (!decay) {
    // Truncated array with no information about the discarded tail.
    rep.verdict = Verdict::inconclusive;
    rep.tail_estimate = std::numeric_limits<double>::infinity();
    rep.note = "explicit array without decay metadata: tail unknown";
    return rep;
  }

  const double alpha = decay->exponent;
  const double Kd = decay->constant;
  const double p = 2.0 * (alpha - b);
  const double threshold = power_law_threshold(b);

  if (std::abs(alpha - threshold) < 1e-9) {
    rep.verdict = Verdict::inconclusive;
    rep.tail_estimate = std::numeric_limits<double>::infinity();
    rep.note = "alpha at the critical exponent b + 1/2";
    return rep;
  }
  if (p <= 1.0) {
    if (f.kind() == CoefficientSpec::Kind::power_law) {
      // Lower bound: sum_{k>=n} k^{-p} >= int_n^inf x^{-p} dx = inf.
      rep.verdict = Verdict::diverges;
      rep.tail_estimate = std::numeric_limits<double>::infinity();
      rep.note = "inner tails diverge: 2(alpha - b) <= 1";
    } else {
      // A decay *bound* cannot certify divergence.
      rep.verdict = Verdict::inconclusive;
      rep.tail_estimate = std::numeric_limits<double>::infinity();
      rep.note = "decay bound too weak to settle the inner tails";
    }
    return rep;
  }

  // Convergent regime: certified upper bounds throughout.
  // Inner tail at n: sum_{|k|>=n} |f_hat|^2 |k|^{2b}
  //   <= exact part over the stored range + 2 K^2 (x^{1-p}/(p-1) + x^{-p}).
  const long long radius =
      f.kind() == CoefficientSpec::Kind::power_law ? 0 : f.radius();
  const long long n_eval = std::max(n_terms, radius + 2);

  std::vector<double> stored_suffix;
  if (radius >= 2) {
    stored_suffix.assign(static_cast<std::size_t>(radius + 2), 0.0);
    for (long long n = radius; n >= 2; --n) {
      const double w = std::pow(static_cast<double>(n), 2.0 * b);
      stored_suffix[static_cast<std::size_t>(n)] =
          stored_suffix[static_cast<std::size_t>(n + 1)] +
          (std::norm(f.coeff(n)) + std::norm(f.coeff(-n))) * w;
    }
  }
  const auto inner_tail_upper = [&](long long n) {
    double exact = 0.0;
    double x = static_cast<double>(n);
    if (n <= radius) {
      exact = stored_suffix[static_cast<std::size_t>(n)];
      x = static_cast<double>(radius + 1);
    }
    const double tail =
        2.0 * Kd * Kd *
        (std::pow(x, 1.0 - p) / (p - 1.0) + std::pow(x, -p));
    return exact + tail;
  };

  double sum = 0.0;
  for (long long n = 2; n <= n_eval; ++n) {
    sum += 2.0 * std::sqrt(inner_tail_upper(n)) /
           (static_cast<double>(n) *
            std::sqrt(std::log(static_cast<double>(n))));
    if ((n & (n - 1)) == 0 || n == n_eval) record(n, sum);
  }
  const double c_tail = Kd * std::sqrt(2.0 * (1.0 / (p - 1.0) + 1.0));
  rep.tail_estimate = 2.0 * c_tail /
                      std::sqrt(std::log(static_cast<double>(n_eval))) *
                      (2.0 / (p - 1.0)) *
                      std::pow(static_cast<double>(n_eval), -(p - 1.0) / 2.0);
  rep.total_upper = sum + rep.tail_estimate;
  rep.verdict = Verdict::converges;
  rep.note = "integral-comparison upper bound finite";
  return rep;
}

/// Schur-test certificate for the operator a_{nm} = |gamma(n-m)| |nm|^{-b}
/// (rows and columns through index 0 are zero).  With weights x_n = |n|^{-c}
/// (x_0 = 1) the report carries K = max_n (sum_m a_{nm} x_m) / x_n over
/// |n| <= n_max; the matrix is symmetric, so the column test coincides with
/// the row test.  Contributions of |m| beyond the exact window are bounded
/// by an integral comparison when gamma declares a decay exponent.
struct SchurReport {
  bool passes = false;
  double K = 0.0;
  double b = 0.0;
  double c = 0.0;
  long long n_max = 0;
  double tail_bound = 0.0;  // uniform bound on the neglected row mass
  bool tail_resolved = false;
  std::string note;
};

/// Default weight exponent: keeps a + b + c above 1 with a 5% margin.
inline double default_schur_weight(double decay_a, double b) {
  return std::max(0.5, 1.05 - decay_a - b);
}

inline SchurReport schur_test(const CovarianceSequence& gamma, double b,
                              double c, long long n_max) {
  if (b < 0.0 || c <= 0.0) {
    throw std::domain_error("schur_test: requires b >= 0 and c > 0");
  }
  if (n_max < 16) {
    throw std::domain_error("schur_test: requires n_max >= 16");
  }
  SchurReport rep;
  rep.b = b;
  rep.c = c;
  rep.n_max = n_max;

  const long long L = n_max;
  const long long Lx = 4 * n_max;  // exact summation window for m

  // u_m = x_m |m|^{-b} = |m|^{-(b+c)}, m != 0; column m = 0 is zero.
  std::vector<std::complex<double>> u(static_cast<std::size_t>(2 * Lx + 1));
  for (long long m = -Lx; m <= Lx; ++m) {
    u[static_cast<std::size_t>(m + Lx)] =
        m == 0 ? 0.0
               : std::pow(static_cast<double>(m < 0 ? -m : m), -(b + c));
  }
  std::vector<std::complex<double>> g(static_cast<std::size_t>(2 * (L + Lx) + 1));
  for (long long k = -(L + Lx); k <= L + Lx; ++k) {
    g[static_cast<std::size_t>(k + L + Lx)] = gamma.abs_at(k);
  }
  const auto conv = linear_convolution(g, u);
  // y_n = sum_{|m|<=Lx} |gamma(n-m)| u_m sits at conv[n + L + 2 Lx].
  const auto row_exact = [&](long long n) {
    return conv[static_cast<std::size_t>(n + L + 2 * Lx)].real();
  };

  // Mass of |m| > Lx.  For |n| <= L those m satisfy |n - m| >= 3|m|/4.
  double tail_sum = 0.0;
  if (gamma.finite_range() && *gamma.finite_range() <= Lx - L) {
    rep.tail_resolved = true;  // gamma(n-m) = 0 out there
  } else if (gamma.decay()) {
    const double a = gamma.decay()->exponent;
    const double s = a + b + c;
    if (s <= 1.0) {
      rep.passes = false;
      rep.K = std::numeric_limits<double>::infinity();
      rep.note = "tail diverges: decay + b + c <= 1";
      return rep;
    }
    const double x = static_cast<double>(Lx);
    tail_sum = gamma.decay()->constant * std::pow(4.0 / 3.0, a) * 2.0 *
               (std::pow(x, 1.0 - s) / (s - 1.0) + std::pow(x, -s));
    rep.tail_resolved = true;
  } else {
    rep.note = "no decay information: row sums truncated at 4*n_max";
  }
  rep.tail_bound = tail_sum;

  double K = 0.0;                 // max over all checked rows
  double octave_hi = 0.0;         // max ratio for |n| in (L/2, L]
  double octave_lo = 0.0;         // max ratio for |n| in (L/4, L/2]
  for (long long n = -L; n <= L; ++n) {
    if (n == 0) continue;  // row 0 is zero
    const double an = static_cast<double>(n < 0 ? -n : n);
    const double row = std::pow(an, -b) * (row_exact(n) + tail_sum);
    const double ratio = row * std::pow(an, c);  // row / x_n
    K = std::max(K, ratio);
    if (2 * an > L) {
      octave_hi = std::max(octave_hi, ratio);
    } else if (4 * an > L) {
      octave_lo = std::max(octave_lo, ratio);
    }
  }
  rep.K = K;

  const bool growing = octave_hi > 1.10 * octave_lo;
  if (growing) {
    rep.passes = false;
    rep.note = "row ratios still growing at the truncation boundary";
  } else {
    rep.passes = std::isfinite(K);
  }
  return rep;
}

/// Verifies 0 < gamma_H(k) <= k^{-2(1-H)} for 1 <= k <= k_max (H > 1/2).
inline bool covariance_decay_check(HurstParameter H, long long k_max) {
  if (!(H.value > 0.5)) {
    throw std::domain_error("covariance_decay_check: requires H > 1/2");
  }
  const double a = 2.0 * (1.0 - H.value);
  for (long long k = 1; k <= k_max; ++k) {
    const double g = fgn_covariance(H, k);
    if (!(g > 0.0) || g > std::pow(static_cast<double>(k), -a)) {
      return false;
    }
  }
  return true;
}

namespace detail {

/// Power iteration for a symmetric operator given as a matvec; returns the
/// dominant eigenvalue (Rayleigh quotient) once two consecutive estimates
/// agree to rel_tol.
inline double power_iteration(
    const std::function<std::vector<double>(const std::vector<double>&)>&
        matvec,
    std::size_t dim, double rel_tol, int max_iter) {
  std::vector<double> v(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
  double lambda_prev = std::numeric_limits<double>::infinity();
  for (int it = 0; it < max_iter; ++it) {
    const auto w = matvec(v);
    double dot = 0.0, nrm2 = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      dot += v[i] * w[i];
      nrm2 += w[i] * w[i];
    }
    const double nrm = std::sqrt(nrm2);
    if (nrm == 0.0) return 0.0;
    if (std::abs(dot - lambda_prev) <= rel_tol * std::abs(dot)) {
      return dot;
    }
    lambda_prev = dot;
    for (std::size_t i = 0; i < dim; ++i) v[i] = w[i] / nrm;
  }
  throw NumericalError("power_iteration: no convergence within iteration cap");
}

/// Matrix-free multiply by A = D T D, where T is the Toeplitz matrix of
/// |gamma| on indices [-L, L] and D = diag(|n|^{-b}) with D_0 = 0.
class WeightedToeplitzOperator {
 public:
  WeightedToeplitzOperator(const CovarianceSequence& gamma, double b,
                           long long L)
      : L_(L) {
    const std::size_t dim = static_cast<std::size_t>(2 * L + 1);
    d_.resize(dim);
    for (long long n = -L; n <= L; ++n) {
      d_[static_cast<std::size_t>(n + L)] =
          n == 0 ? 0.0 : std::pow(static_cast<double>(n < 0 ? -n : n), -b);
    }
    const std::size_t glen = static_cast<std::size_t>(4 * L + 1);
    fft_size_ = rfs::detail::next_pow2(glen + dim - 1);
    g_fft_.assign(fft_size_, {0.0, 0.0});
    for (long long k = -2 * L; k <= 2 * L; ++k) {
      g_fft_[static_cast<std::size_t>(k + 2 * L)] = gamma.abs_at(k);
    }
    rfs::detail::fft_pow2(g_fft_, -1);
  }

  std::size_t dim() const { return d_.size(); }

  std::vector<double> apply(const std::vector<double>& v) const {
    const std::size_t n = d_.size();
    std::vector<std::complex<double>> u(fft_size_, {0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) u[i] = d_[i] * v[i];
    rfs::detail::fft_pow2(u, -1);
    for (std::size_t i = 0; i < fft_size_; ++i) u[i] *= g_fft_[i];
    rfs::detail::fft_pow2(u, +1);
    const double inv = 1.0 / static_cast<double>(fft_size_);
    // Linear-convolution index: y_n = conv[(n+L) + 2L].
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = d_[i] * u[i + 2 * static_cast<std::size_t>(L_)].real() * inv;
    }
    return y;
  }

 private:
  long long L_;
  std::vector<double> d_;
  std::size_t fft_size_ = 0;
  std::vector<std::complex<double>> g_fft_;
};

}  // namespace detail

/// Largest eigenvalue of the truncated symmetric matrix
/// (|gamma(n-m)| |nm|^{-b})_{|n|,|m| <= n_max} by power iteration.
inline double operator_norm_estimate(const CovarianceSequence& gamma, double b,
                                     long long n_max, double rel_tol = 1e-8,
                                     int max_iter = 50000) {
  if (n_max < 1) {
    throw std::domain_error("operator_norm_estimate: requires n_max >= 1");
  }
  const detail::WeightedToeplitzOperator op(gamma, b, n_max);
  return detail::power_iteration(
      [&op](const std::vector<double>& v) { return op.apply(v); }, op.dim(),
      rel_tol, max_iter);
}

/// Norm estimates over a ladder of truncation sizes, so growth or
/// stabilization is visible.
inline std::vector<std::pair<long long, double>> operator_norm_ladder(
    const CovarianceSequence& gamma, double b,
    const std::vector<long long>& sizes, double rel_tol = 1e-8) {
  std::vector<std::pair<long long, double>> out;
  out.reserve(sizes.size());
  for (const long long n : sizes) {
    out.emplace_back(n, operator_norm_estimate(gamma, b, n, rel_tol));
  }
  return out;
}

}  // namespace rfs
