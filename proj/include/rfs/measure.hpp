#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "rfs/fgn.hpp"
#include "rfs/quadrature.hpp"

namespace rfs {

struct Atom {
  double location;  // in [0, 1)
  double weight;
};

/// Borel probability measure on the circle: Lebesgue, an fGn spectral
/// density, an explicit density, or a finite atomic combination.
class MeasureSpec {
 public:
  enum class Kind { lebesgue, fgn_density, explicit_density, atomic };

  static MeasureSpec lebesgue() {
    MeasureSpec m;
    m.kind_ = Kind::lebesgue;
    m.descriptor_ = "lebesgue";
    m.density_ = [](double) { return 1.0; };
    return m;
  }

  static MeasureSpec fgn_density(HurstParameter H) {
    MeasureSpec m;
    m.kind_ = Kind::fgn_density;
    m.hurst_ = H.value;
    m.descriptor_ = "fgn(H=" + std::to_string(H.value) + ")";
    auto phi = std::make_shared<SpectralDensity>(H);
    m.density_ = [phi](double t) { return (*phi)(t); };
    return m;
  }

  /// Explicit density; validated nonnegative and integrating to 1 within
  /// 1e-6 on a midpoint grid.
  static MeasureSpec explicit_density(std::function<double(double)> phi,
                                      std::string name = "density",
                                      int validation_grid = 4096) {
    MeasureSpec m;
    m.kind_ = Kind::explicit_density;
    m.descriptor_ = std::move(name);
    const auto rule = uniform_midpoint_rule(validation_grid);
    double total = 0.0;
    for (std::size_t j = 0; j < rule.size(); ++j) {
      const double v = phi(rule.nodes[j]);
      if (v < 0.0) {
        throw std::domain_error("MeasureSpec: density must be nonnegative");
      }
      total += rule.weights[j] * v;
    }
    if (std::abs(total - 1.0) > 1e-6) {
      throw std::domain_error(
          "MeasureSpec: density must integrate to 1 within 1e-6 (got " +
          std::to_string(total) + ")");
    }
    m.density_ = std::move(phi);
    return m;
  }

  /// Finite atomic measure; weights must be nonnegative and sum to 1.
  static MeasureSpec atomic(std::vector<Atom> atoms) {
    if (atoms.empty()) {
      throw std::domain_error("MeasureSpec: atomic needs at least one atom");
    }
    double total = 0.0;
    for (const auto& a : atoms) {
      if (a.weight < 0.0) {
        throw std::domain_error("MeasureSpec: atom weights must be >= 0");
      }
      total += a.weight;
    }
    if (std::abs(total - 1.0) > 1e-12) {
      throw std::domain_error("MeasureSpec: atom weights must sum to 1");
    }
    MeasureSpec m;
    m.kind_ = Kind::atomic;
    m.descriptor_ = "atomic(" + std::to_string(atoms.size()) + ")";
    m.atoms_ = std::move(atoms);
    return m;
  }

  Kind kind() const { return kind_; }
  const std::string& descriptor() const { return descriptor_; }
  bool has_density() const { return kind_ != Kind::atomic; }
  const std::vector<Atom>& atoms() const { return atoms_; }

  double density(double t) const {
    if (!has_density()) {
      throw std::domain_error("MeasureSpec: atomic measure has no density");
    }
    return density_(t);
  }

  /// Discretization (u_j, w_j) with sum_j w_j g(u_j) ~ int g dmu.  Densities
  /// fold their values into the weights; the fGn kind uses the singularity-
  /// aware node layout; atoms are returned as-is.
  QuadratureRule rule(int n_points) const {
    switch (kind_) {
      case Kind::atomic: {
        QuadratureRule r;
        for (const auto& a : atoms_) {
          r.nodes.push_back(a.location);
          r.weights.push_back(a.weight);
        }
        return r;
      }
      case Kind::lebesgue:
        return uniform_midpoint_rule(n_points);
      case Kind::fgn_density: {
        // Symmetric density evaluated at the exact endpoint distance; the
        // node itself may round to 1.0 where phi is singular.
        SingularQuadrature sq = fgn_singular_quadrature(hurst_, n_points / 2);
        for (std::size_t j = 0; j < sq.rule.size(); ++j) {
          sq.rule.weights[j] *= density_(sq.edge[j]);
        }
        return sq.rule;
      }
      case Kind::explicit_density:
      default: {
        QuadratureRule r = uniform_midpoint_rule(n_points);
        for (std::size_t j = 0; j < r.size(); ++j) {
          r.weights[j] *= density_(r.nodes[j]);
        }
        return r;
      }
    }
  }

 private:
  MeasureSpec() = default;

  Kind kind_ = Kind::lebesgue;
  double hurst_ = 0.5;
  std::string descriptor_;
  std::function<double(double)> density_;
  std::vector<Atom> atoms_;
};

/// Theorem-2-style interval domination report: on I = [a, b],
/// int_I g du <= C int_I g dmu holds with C = 1/min_I phi for a density
/// measure, and cover_count translates of I cover the circle.
struct IntervalDominationReport {
  bool ok = false;
  double C = 0.0;
  int cover_count = 0;
  double min_density = 0.0;
  double interval_length = 0.0;
};

inline IntervalDominationReport interval_domination_check(
    const MeasureSpec& mu, double a, double b, int grid = 4096) {
  if (!(b > a) || b - a > 1.0) {
    throw std::domain_error(
        "interval_domination_check: requires an interval 0 < b - a <= 1");
  }
  IntervalDominationReport rep;
  rep.interval_length = b - a;
  rep.cover_count = static_cast<int>(std::ceil(1.0 / (b - a) - 1e-12));
  if (!mu.has_density()) {
    rep.ok = false;  // atoms cannot dominate Lebesgue on any interval
    return rep;
  }
  double lo = std::numeric_limits<double>::infinity();
  for (int k = 0; k < grid; ++k) {
    double t = a + (b - a) * (k + 0.5) / grid;
    t -= std::floor(t);
    lo = std::min(lo, mu.density(t));
  }
  rep.min_density = lo;
  if (lo > 0.0) {
    rep.ok = true;
    rep.C = 1.0 / lo;
  }
  return rep;
}

}  // namespace rfs
