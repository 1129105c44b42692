// Command-line front end: every library operation as a subcommand with
// reproducible, file-based inputs and outputs.
//
// Output contract: one JSON document per run with fields
//   command, config, results, version, metadata
// where `metadata` (wall-clock duration) is the only field allowed to vary
// between identical runs.  Bulk tables go to --csv as "t,re,im" columns.
//
// Exit status: 0 success, 2 validation error, 3 numerical failure,
// 4 I/O failure.

#include <CLI11.hpp>
#include <array>
#include <chrono>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rfs/rfs.hpp"

using Json = nlohmann::ordered_json;

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CsvTable {
  std::vector<std::array<double, 3>> rows;

  void add(double t, std::complex<double> z) {
    rows.push_back({t, z.real(), z.imag()});
  }
  void add(double t, double v) { rows.push_back({t, v, 0.0}); }
};

std::string format_csv(const CsvTable& table) {
  std::string out = "t,re,im\n";
  char buf[96];
  for (const auto& r : table.rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", r[0], r[1], r[2]);
    out += buf;
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open output file: " + path);
  os << content;
  if (!os) throw IoError("failed writing output file: " + path);
}

int env_parallel_default() {
  if (const char* v = std::getenv("RFS_PARALLEL")) {
    const int k = std::atoi(v);
    if (k >= 1) return k;
  }
  return 1;
}

// --f power:ALPHA[:alt]
rfs::CoefficientSpec parse_coeff(const std::string& s) {
  if (s.rfind("power:", 0) == 0) {
    std::string rest = s.substr(6);
    bool alternating = false;
    if (const auto pos = rest.find(":alt"); pos != std::string::npos) {
      alternating = true;
      rest = rest.substr(0, pos);
    }
    return rfs::CoefficientSpec::power_law(std::stod(rest), alternating);
  }
  throw CLI::ValidationError("--f", "expected power:ALPHA[:alt], got " + s);
}

// --measure lebesgue | fgn:H | atomic:loc:w[,loc:w...] | halfuniform
rfs::MeasureSpec parse_measure(const std::string& s) {
  if (s == "lebesgue") return rfs::MeasureSpec::lebesgue();
  if (s == "halfuniform") {
    return rfs::MeasureSpec::explicit_density(
        [](double t) { return t >= 0.5 ? 2.0 : 0.0; }, "halfuniform");
  }
  if (s.rfind("fgn:", 0) == 0) {
    return rfs::MeasureSpec::fgn_density(
        rfs::HurstParameter(std::stod(s.substr(4))));
  }
  if (s.rfind("atomic:", 0) == 0) {
    std::vector<rfs::Atom> atoms;
    std::stringstream ss(s.substr(7));
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto pos = item.find(':');
      if (pos == std::string::npos) {
        throw CLI::ValidationError("--measure", "atomic needs loc:weight");
      }
      atoms.push_back(
          {std::stod(item.substr(0, pos)), std::stod(item.substr(pos + 1))});
    }
    return rfs::MeasureSpec::atomic(std::move(atoms));
  }
  throw CLI::ValidationError("--measure", "unknown measure spec: " + s);
}

// --gamma fgn:H | white | power:A
rfs::CovarianceSequence parse_gamma(const std::string& s) {
  if (s == "white") return rfs::CovarianceSequence::white();
  if (s.rfind("fgn:", 0) == 0) {
    return rfs::CovarianceSequence::fgn(
        rfs::HurstParameter(std::stod(s.substr(4))));
  }
  if (s.rfind("power:", 0) == 0) {
    return rfs::CovarianceSequence::power_template(std::stod(s.substr(6)));
  }
  throw CLI::ValidationError("--gamma", "unknown covariance spec: " + s);
}

std::vector<long long> parse_ladder(const std::string& s) {
  std::vector<long long> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoll(item));
  if (out.empty()) {
    throw CLI::ValidationError("--ladder", "empty ladder");
  }
  return out;
}

Json mc_json(const rfs::MCEstimate& e) {
  return Json{{"mean", e.mean},
              {"std_error", e.std_error},
              {"n_reps", e.n_reps},
              {"base_seed", e.base_seed},
              {"grid_m", e.grid_m},
              {"trunc_N", e.trunc_N}};
}

// One registered subcommand: fills results (and optionally a CSV table).
struct Command {
  CLI::App* app = nullptr;
  std::function<void(Json& results, CsvTable& table)> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Computable objects for random Fourier series with dependent Gaussian "
      "coefficients: fGn spectral densities via the Hurwitz zeta function, "
      "exact fGn sampling, Monte Carlo sup-oscillation estimates, and the "
      "weighted-tail / Schur-test boundedness criteria."};
  app.require_subcommand(1);

  std::string out_path;
  std::string csv_path;
  int parallel = env_parallel_default();
  app.add_option("--out", out_path, "write the JSON result document here")
      ->capture_default_str();
  app.add_option("--csv", csv_path, "write tabular output here (t,re,im)")
      ->capture_default_str();
  app.add_option("--parallel", parallel,
                 "Monte Carlo worker threads (env RFS_PARALLEL sets the "
                 "default; values never depend on the thread count)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::vector<std::shared_ptr<Command>> commands;
  const auto add = [&](const std::string& name, const std::string& desc) {
    auto cmd = std::make_shared<Command>();
    cmd->app = app.add_subcommand(name, desc);
    commands.push_back(cmd);
    return cmd;
  };

  // ---- spectral-density ----------------------------------------------
  {
    auto cmd = add("spectral-density",
                   "Tabulate phi_H(t) = 4 C(H) sin^2(pi t) (zeta(2H+1,t) + "
                   "zeta(2H+1,1-t)) on a midpoint grid, plus C(H)");
    auto H = std::make_shared<double>(0.75);
    auto grid = std::make_shared<int>(1024);
    cmd->app->add_option("--H", *H, "Hurst index in [0,1)")->required();
    cmd->app->add_option("--grid", *grid, "grid size")
        ->check(CLI::Range(2, 1 << 22));
    cmd->run = [=](Json& results, CsvTable& table) {
      const rfs::HurstParameter h(*H);
      const rfs::SpectralDensity phi(h);
      double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
      for (int k = 0; k < *grid; ++k) {
        const double t = (k + 0.5) / *grid;
        const double v = phi(t);
        table.add(t, v);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      results["H"] = *H;
      if (*H > 0.0) results["C"] = phi.normalization();
      results["grid"] = *grid;
      results["min"] = lo;
      results["max"] = hi;
    };
  }

  // ---- normalizing-constant ------------------------------------------
  {
    auto cmd = add("normalizing-constant",
                   "Compute C(H) from the normalization int phi_H = 1");
    auto H = std::make_shared<double>(0.75);
    auto quad = std::make_shared<int>(4096);
    cmd->app->add_option("--H", *H, "Hurst index in (0,1)")->required();
    cmd->app->add_option("--quad", *quad, "quadrature points")
        ->check(CLI::Range(256, 1 << 22));
    cmd->run = [=](Json& results, CsvTable&) {
      const rfs::HurstParameter h(*H);
      const double c = rfs::normalizing_constant(h, *quad);
      // Independent residual check at doubled resolution.
      const rfs::SpectralDensity phi(h, *quad);
      const auto sq = h.is_white()
                          ? rfs::SingularQuadrature{
                                rfs::uniform_midpoint_rule(2 * *quad), {}}
                          : rfs::fgn_singular_quadrature(*H, *quad);
      double integral = 0.0;
      for (std::size_t j = 0; j < sq.rule.size(); ++j) {
        const double d = sq.edge.empty() ? sq.rule.nodes[j] : sq.edge[j];
        integral += sq.rule.weights[j] * phi(d);
      }
      results["H"] = *H;
      results["C"] = c;
      results["n_quad"] = *quad;
      results["density_integral"] = integral;
      results["residual"] = std::abs(integral - 1.0);
    };
  }

  // ---- bochner-check --------------------------------------------------
  {
    auto cmd = add("bochner-check",
                   "Max over |k| <= kmax of |int phi_H e^{2 pi i k t} dt - "
                   "gamma_H(k)| (spectral measure vs covariance)");
    auto H = std::make_shared<double>(0.75);
    auto kmax = std::make_shared<int>(10);
    auto quad = std::make_shared<int>(16384);
    cmd->app->add_option("--H", *H, "Hurst index")->required();
    cmd->app->add_option("--kmax", *kmax, "max lag")->check(CLI::Range(1, 4096));
    cmd->app->add_option("--quad", *quad, "quadrature points")
        ->check(CLI::Range(256, 1 << 22));
    cmd->run = [=](Json& results, CsvTable&) {
      const double err =
          rfs::bochner_consistency(rfs::HurstParameter(*H), *kmax, *quad);
      results["H"] = *H;
      results["k_max"] = *kmax;
      results["n_quad"] = *quad;
      results["max_abs_error"] = err;
    };
  }

  // ---- density-ratio ---------------------------------------------------
  {
    auto cmd = add("density-ratio",
                   "Sup of phi_H1/phi_H2 over an endpoint-refined grid; "
                   "finite M certifies phi_H1 <= M phi_H2");
    auto H1 = std::make_shared<double>(0.5);
    auto H2 = std::make_shared<double>(0.75);
    auto grid = std::make_shared<int>(4096);
    cmd->app->add_option("--H1", *H1, "smaller Hurst index")->required();
    cmd->app->add_option("--H2", *H2, "larger Hurst index")->required();
    cmd->app->add_option("--grid", *grid, "interior grid size")
        ->check(CLI::Range(16, 1 << 20));
    cmd->run = [=](Json& results, CsvTable& table) {
      const auto rep = rfs::density_ratio_bound(
          rfs::HurstParameter(*H1), rfs::HurstParameter(*H2), *grid);
      results["H1"] = *H1;
      results["H2"] = *H2;
      results["grid"] = *grid;
      results["M"] = rep.M;
      Json trend = Json::array();
      for (const auto& [t, r] : rep.endpoint_trend) {
        trend.push_back(Json{{"t", t}, {"ratio", r}});
      }
      results["endpoint_trend"] = trend;
      for (std::size_t i = 0; i < rep.grid.size(); ++i) {
        table.add(rep.grid[i], rep.ratios[i]);
      }
    };
  }

  // ---- sample-fgn ------------------------------------------------------
  {
    auto cmd = add("sample-fgn",
                   "Draw complex fGn via circulant embedding: E Delta_j "
                   "conj(Delta_k) = gamma_H(j-k), E Delta_j Delta_k = 0");
    auto H = std::make_shared<double>(0.75);
    auto n = std::make_shared<int>(1024);
    auto seed = std::make_shared<std::uint64_t>(12345);
    auto stream = std::make_shared<std::uint64_t>(0);
    cmd->app->add_option("--H", *H, "Hurst index")->required();
    cmd->app->add_option("--n", *n, "sample length")->check(CLI::Range(1, 1 << 22));
    cmd->app->add_option("--seed", *seed, "base seed");
    cmd->app->add_option("--stream", *stream, "replication stream");
    cmd->run = [=](Json& results, CsvTable& table) {
      rfs::RngState rng(*seed, *stream);
      const auto s = rfs::sample_fgn(rfs::HurstParameter(*H),
                                     static_cast<std::size_t>(*n), rng);
      std::complex<double> mean{0.0, 0.0};
      double second = 0.0;
      for (std::size_t k = 0; k < s.values.size(); ++k) {
        table.add(static_cast<double>(k), s.values[k]);
        mean += s.values[k];
        second += std::norm(s.values[k]);
      }
      mean /= static_cast<double>(s.values.size());
      results["H"] = *H;
      results["n"] = *n;
      results["seed"] = *seed;
      results["stream"] = *stream;
      results["descriptor"] = s.descriptor;
      results["sample_mean_re"] = mean.real();
      results["sample_mean_im"] = mean.imag();
      results["sample_second_moment"] = second / s.values.size();
    };
  }

  // ---- simulate-series -------------------------------------------------
  {
    auto cmd = add("simulate-series",
                   "One path of S_N(t) = sum_{|n|<=N} f_hat(n) xi_n "
                   "e^{2 pi i n t} on the m-grid");
    auto fspec = std::make_shared<std::string>("power:1.0");
    auto noise = std::make_shared<std::string>("iid");
    auto N = std::make_shared<long long>(64);
    auto m = std::make_shared<int>(0);
    auto seed = std::make_shared<std::uint64_t>(12345);
    auto stream = std::make_shared<std::uint64_t>(0);
    cmd->app->add_option("--f", *fspec, "coefficients (power:ALPHA[:alt])");
    cmd->app->add_option("--noise", *noise, "iid | fgn:H");
    cmd->app->add_option("--N", *N, "truncation order")->check(CLI::Range(1, 1 << 20));
    cmd->app->add_option("--m", *m, "grid size (default 8N)");
    cmd->app->add_option("--seed", *seed, "base seed");
    cmd->app->add_option("--stream", *stream, "replication stream");
    cmd->run = [=](Json& results, CsvTable& table) {
      const auto f = parse_coeff(*fspec);
      const int grid = *m > 0 ? *m : static_cast<int>(8 * *N);
      rfs::RngState rng(*seed, *stream);
      rfs::NoiseSample xi;
      if (*noise == "iid") {
        xi = rfs::sample_iid(static_cast<std::size_t>(2 * *N + 1), rng, -*N);
      } else if (noise->rfind("fgn:", 0) == 0) {
        xi = rfs::sample_fgn(rfs::HurstParameter(std::stod(noise->substr(4))),
                             static_cast<std::size_t>(2 * *N + 1), rng);
        xi.min_index = -*N;
      } else {
        throw CLI::ValidationError("--noise", "expected iid | fgn:H");
      }
      const auto sp = rfs::partial_sum_path(f, xi, *N, grid);
      double sup = 0.0;
      for (std::size_t k = 0; k < sp.path.values.size(); ++k) {
        table.add(sp.path.t(k), sp.path.values[k]);
        sup = std::max(sup, std::abs(sp.path.values[k]));
      }
      results["f"] = *fspec;
      results["noise"] = *noise;
      results["N"] = *N;
      results["m"] = grid;
      results["seed"] = *seed;
      results["stream"] = *stream;
      results["grid_sup"] = sup;
      results["grid_oscillation"] = rfs::point_set_diameter(sp.path.values);
    };
  }

  // ---- pseudo-distance ---------------------------------------------------
  {
    auto cmd = add("pseudo-distance",
                   "d_f(t,s) = (int |f(t+u)-f(s+u)|^2 dmu(u))^{1/2}");
    auto fspec = std::make_shared<std::string>("power:1.0");
    auto N = std::make_shared<long long>(64);
    auto measure = std::make_shared<std::string>("lebesgue");
    auto t = std::make_shared<double>(0.0);
    auto s = std::make_shared<double>(0.5);
    auto quad = std::make_shared<int>(4096);
    cmd->app->add_option("--f", *fspec, "coefficients (power:ALPHA[:alt])");
    cmd->app->add_option("--N", *N, "synthesis truncation for f");
    cmd->app->add_option("--measure", *measure, "lebesgue | fgn:H | atomic:..");
    cmd->app->add_option("--t", *t, "first point")->required();
    cmd->app->add_option("--s", *s, "second point")->required();
    cmd->app->add_option("--quad", *quad, "quadrature points");
    cmd->run = [=](Json& results, CsvTable&) {
      const auto f = parse_coeff(*fspec).function(*N);
      const auto mu = parse_measure(*measure);
      const double d = rfs::pseudo_distance(f, mu, *t, *s, *quad);
      results["f"] = *fspec;
      results["N"] = *N;
      results["measure"] = *measure;
      results["t"] = *t;
      results["s"] = *s;
      results["distance"] = d;
    };
  }

  // ---- check-condition7 --------------------------------------------------
  {
    auto cmd = add("check-condition7",
                   "Weighted-tail convergence check sum_{|n|>=2} "
                   "(sum_{|k|>=|n|} |f_hat|^2 |k|^{2b})^{1/2} / (|n| "
                   "(log|n|)^{1/2}) < inf; power-law threshold alpha* = b+1/2");
    auto alpha = std::make_shared<double>(1.0);
    auto b = std::make_shared<double>(0.25);
    auto n_terms = std::make_shared<long long>(4096);
    cmd->app->add_option("--alpha", *alpha, "power-law exponent")->required();
    cmd->app->add_option("--b", *b, "covariance weight exponent")->required();
    cmd->app->add_option("--n-terms", *n_terms, "exact outer terms");
    cmd->run = [=](Json& results, CsvTable&) {
      const auto f = rfs::CoefficientSpec::power_law(*alpha);
      const auto rep = rfs::check_condition7(f, *b, *n_terms);
      results["alpha"] = *alpha;
      results["b"] = *b;
      results["n_terms"] = *n_terms;
      results["verdict"] = rfs::to_string(rep.verdict);
      results["threshold_alpha"] = rfs::power_law_threshold(*b);
      results["tail_estimate"] = rep.tail_estimate;
      results["total_upper"] = rep.total_upper;
      results["note"] = rep.note;
      Json partials = Json::array();
      for (std::size_t i = 0; i < rep.checkpoints.size(); ++i) {
        partials.push_back(
            Json{{"n", rep.checkpoints[i]}, {"sum", rep.partial_sums[i]}});
      }
      results["partial_sums"] = partials;
    };
  }

  // ---- schur-test ---------------------------------------------------------
  {
    auto cmd = add("schur-test",
                   "Schur certificate for a_{nm} = |gamma(n-m)| |nm|^{-b} "
                   "with weights x_n = |n|^{-c}: row sums <= K x_n");
    auto gamma = std::make_shared<std::string>("fgn:0.75");
    auto b = std::make_shared<double>(0.25);
    auto c = std::make_shared<double>(0.0);
    auto n_max = std::make_shared<long long>(4096);
    cmd->app->add_option("--gamma", *gamma, "fgn:H | white | power:A");
    cmd->app->add_option("--b", *b, "weight exponent b")->required();
    cmd->app->add_option("--c", *c, "Schur weight exponent (0 = default rule)");
    cmd->app->add_option("--n-max", *n_max, "row truncation");
    cmd->run = [=](Json& results, CsvTable&) {
      const auto g = parse_gamma(*gamma);
      double cw = *c;
      if (cw <= 0.0) {
        cw = g.decay() ? rfs::default_schur_weight(g.decay()->exponent, *b)
                       : 0.5;
      }
      const auto rep = rfs::schur_test(g, *b, cw, *n_max);
      results["gamma"] = *gamma;
      results["b"] = *b;
      results["c"] = cw;
      results["n_max"] = *n_max;
      results["passes"] = rep.passes;
      results["K"] = rep.K;
      results["tail_bound"] = rep.tail_bound;
      results["tail_resolved"] = rep.tail_resolved;
      results["note"] = rep.note;
    };
  }

  // ---- operator-norm -------------------------------------------------------
  {
    auto cmd = add("operator-norm",
                   "Largest eigenvalue of (|gamma(n-m)| |nm|^{-b}) truncations "
                   "by power iteration, over a ladder of sizes");
    auto gamma = std::make_shared<std::string>("fgn:0.75");
    auto b = std::make_shared<double>(0.25);
    auto ladder = std::make_shared<std::string>("64,256,1024,4096");
    auto tol = std::make_shared<double>(1e-8);
    cmd->app->add_option("--gamma", *gamma, "fgn:H | white | power:A");
    cmd->app->add_option("--b", *b, "weight exponent b")->required();
    cmd->app->add_option("--ladder", *ladder, "comma-separated truncations");
    cmd->app->add_option("--tol", *tol, "relative tolerance");
    cmd->run = [=](Json& results, CsvTable&) {
      const auto g = parse_gamma(*gamma);
      const auto sizes = parse_ladder(*ladder);
      const auto norms = rfs::operator_norm_ladder(g, *b, sizes, *tol);
      results["gamma"] = *gamma;
      results["b"] = *b;
      Json entries = Json::array();
      for (const auto& [n, lam] : norms) {
        entries.push_back(Json{{"n_max", n}, {"norm", lam}});
      }
      results["ladder"] = entries;
      if (norms.size() >= 2) {
        results["last_ratio"] =
            norms.back().second / norms[norms.size() - 2].second;
      }
    };
  }

  // ---- covariance-decay ----------------------------------------------------
  {
    auto cmd = add("covariance-decay",
                   "Verify 0 < gamma_H(k) <= k^{-2(1-H)} for 1 <= k <= kmax");
    auto H = std::make_shared<double>(0.75);
    auto k_max = std::make_shared<long long>(10000);
    cmd->app->add_option("--H", *H, "Hurst index in (1/2,1)")->required();
    cmd->app->add_option("--k-max", *k_max, "largest lag checked");
    cmd->run = [=](Json& results, CsvTable&) {
      const bool ok =
          rfs::covariance_decay_check(rfs::HurstParameter(*H), *k_max);
      results["H"] = *H;
      results["k_max"] = *k_max;
      results["holds"] = ok;
    };
  }

  // ---- oscillation-mc --------------------------------------------------------
  {
    auto cmd = add("oscillation-mc",
                   "Monte Carlo estimate of E sup_{s,t} |X_f(t) - X_f(s)| "
                   "via the grid oscillation of kernel-factorized draws");
    auto fspec = std::make_shared<std::string>("power:1.0");
    auto N = std::make_shared<long long>(16);
    auto measure = std::make_shared<std::string>("lebesgue");
    auto m = std::make_shared<int>(64);
    auto reps = std::make_shared<int>(1000);
    auto seed = std::make_shared<std::uint64_t>(12345);
    cmd->app->add_option("--f", *fspec, "coefficients (power:ALPHA[:alt])");
    cmd->app->add_option("--N", *N, "synthesis truncation for f");
    cmd->app->add_option("--measure", *measure, "lebesgue | fgn:H | atomic:..");
    cmd->app->add_option("--m", *m, "grid size");
    cmd->app->add_option("--reps", *reps, "replications")->check(CLI::Range(100, 1 << 24));
    cmd->app->add_option("--seed", *seed, "base seed");
    cmd->run = [=, &parallel](Json& results, CsvTable&) {
      const auto f = parse_coeff(*fspec).function(*N);
      const auto mu = parse_measure(*measure);
      const auto sampler = std::make_shared<rfs::XfSampler>(f, mu, *m);
      const rfs::PathGenerator gen = [sampler](rfs::RngState& rng) {
        return sampler->draw(rng).values;
      };
      const auto est = rfs::oscillation_mc(gen, *m, *reps, *seed, parallel);
      results["f"] = *fspec;
      results["N"] = *N;
      results["measure"] = *measure;
      results["estimate"] = mc_json(est);
    };
  }

  // ---- pmu-norm -----------------------------------------------------------
  {
    auto cmd = add("pmu-norm",
                   "Estimate ||f|| = E sup-oscillation of X_f plus ||f||_inf");
    auto fspec = std::make_shared<std::string>("power:1.0");
    auto N = std::make_shared<long long>(16);
    auto measure = std::make_shared<std::string>("lebesgue");
    auto m = std::make_shared<int>(64);
    auto reps = std::make_shared<int>(1000);
    auto seed = std::make_shared<std::uint64_t>(12345);
    cmd->app->add_option("--f", *fspec, "coefficients (power:ALPHA[:alt])");
    cmd->app->add_option("--N", *N, "synthesis truncation for f");
    cmd->app->add_option("--measure", *measure, "lebesgue | fgn:H | atomic:..");
    cmd->app->add_option("--m", *m, "grid size");
    cmd->app->add_option("--reps", *reps, "replications")->check(CLI::Range(100, 1 << 24));
    cmd->app->add_option("--seed", *seed, "base seed");
    cmd->run = [=, &parallel](Json& results, CsvTable&) {
      const auto f = parse_coeff(*fspec).function(*N);
      const auto mu = parse_measure(*measure);
      const auto est =
          rfs::pmu_norm_estimate(f, mu, *m, *reps, *seed, parallel);
      results["f"] = *fspec;
      results["N"] = *N;
      results["measure"] = *measure;
      results["oscillation"] = mc_json(est.oscillation);
      results["sup_norm"] = est.sup_norm;
      results["total"] = est.total;
    };
  }

  // ---- comparison-check -----------------------------------------------------
  {
    auto cmd = add("comparison-check",
                   "Gaussian comparison principle: increment domination "
                   "implies E osc(Y) <= 4 E osc(X) (complex case)");
    auto pair = std::make_shared<std::string>("half");
    auto fspec = std::make_shared<std::string>("power:1.0");
    auto b = std::make_shared<double>(0.25);
    auto H = std::make_shared<double>(0.75);
    auto N = std::make_shared<long long>(32);
    auto reps = std::make_shared<int>(1000);
    auto seed = std::make_shared<std::uint64_t>(12345);
    cmd->app->add_option("--pair", *pair, "half | fgn-vs-iid");
    cmd->app->add_option("--f", *fspec, "coefficients (power:ALPHA[:alt])");
    cmd->app->add_option("--b", *b, "weight exponent (fgn-vs-iid)");
    cmd->app->add_option("--H", *H, "Hurst index (fgn-vs-iid)");
    cmd->app->add_option("--N", *N, "truncation order");
    cmd->app->add_option("--reps", *reps, "replications")->check(CLI::Range(100, 1 << 24));
    cmd->app->add_option("--seed", *seed, "base seed");
    cmd->run = [=, &parallel](Json& results, CsvTable&) {
      const auto f = parse_coeff(*fspec);
      const int m = static_cast<int>(8 * *N);
      rfs::ProcessModel X, Y;
      double schur_K = 0.0;
      if (*pair == "half") {
        X = rfs::make_series_process(f, rfs::NoiseKind::iid(), *N, m);
        Y = rfs::scale_process(X, 0.5);
      } else if (*pair == "fgn-vs-iid") {
        const auto g = rfs::CovarianceSequence::fgn(rfs::HurstParameter(*H));
        const double cw = rfs::default_schur_weight(g.decay()->exponent, *b);
        schur_K = rfs::schur_test(g, *b, cw, 4096).K;
        // X: iid-driven series with weighted coefficients, scaled by sqrt(K).
        std::vector<std::complex<double>> weighted(
            static_cast<std::size_t>(2 * *N + 1));
        for (long long n = -*N; n <= *N; ++n) {
          const double w =
              n == 0 ? 0.0
                     : std::pow(static_cast<double>(n < 0 ? -n : n), *b);
          weighted[static_cast<std::size_t>(n + *N)] = f.coeff(n) * w;
        }
        const auto fw = rfs::CoefficientSpec::explicit_array(weighted);
        X = rfs::make_series_process(fw, rfs::NoiseKind::iid(), *N, m,
                                     std::sqrt(schur_K));
        Y = rfs::make_series_process(
            f, rfs::NoiseKind::fgn(rfs::HurstParameter(*H)), *N, m);
      } else {
        throw CLI::ValidationError("--pair", "expected half | fgn-vs-iid");
      }
      const auto rep =
          rfs::comparison_check(X, Y, *reps, *seed, true, parallel);
      results["pair"] = *pair;
      results["f"] = *fspec;
      results["N"] = *N;
      results["m"] = m;
      if (*pair == "fgn-vs-iid") {
        results["b"] = *b;
        results["H"] = *H;
        results["schur_K"] = schur_K;
      }
      results["hypothesis_ok"] = rep.hypothesis_ok;
      results["max_violation"] = rep.max_violation;
      results["factor"] = rep.factor;
      results["conclusion_ok"] = rep.conclusion_ok;
      results["reps_used"] = rep.reps_used;
      results["osc_Y"] = mc_json(rep.lhs);
      results["osc_X"] = mc_json(rep.rhs);
      results["note"] = rep.note;
    };
  }

  // ---- boundedness-diagnostic ------------------------------------------------
  {
    auto cmd = add("boundedness-diagnostic",
                   "E max_grid |S_N| across a truncation ladder (m = 8N); "
                   "a stabilization ratio near 1 is evidence of a.s. "
                   "boundedness, never a certificate");
    auto fspec = std::make_shared<std::string>("power:0.9");
    auto noise = std::make_shared<std::string>("fgn:0.75");
    auto ladder = std::make_shared<std::string>("64,128,256");
    auto reps = std::make_shared<int>(400);
    auto seed = std::make_shared<std::uint64_t>(12345);
    cmd->app->add_option("--f", *fspec, "coefficients (power:ALPHA[:alt])");
    cmd->app->add_option("--noise", *noise, "iid | fgn:H");
    cmd->app->add_option("--ladder", *ladder, "comma-separated N values");
    cmd->app->add_option("--reps", *reps, "replications")->check(CLI::Range(100, 1 << 24));
    cmd->app->add_option("--seed", *seed, "base seed");
    cmd->run = [=, &parallel](Json& results, CsvTable&) {
      const auto f = parse_coeff(*fspec);
      rfs::NoiseKind nk = rfs::NoiseKind::iid();
      if (noise->rfind("fgn:", 0) == 0) {
        nk = rfs::NoiseKind::fgn(rfs::HurstParameter(std::stod(noise->substr(4))));
      } else if (*noise != "iid") {
        throw CLI::ValidationError("--noise", "expected iid | fgn:H");
      }
      const auto entries = rfs::boundedness_diagnostic(
          f, nk, parse_ladder(*ladder), *reps, *seed, parallel);
      results["f"] = *fspec;
      results["noise"] = *noise;
      Json rows = Json::array();
      for (std::size_t i = 0; i < entries.size(); ++i) {
        Json row{{"N", entries[i].N},
                 {"m", entries[i].m},
                 {"estimate", mc_json(entries[i].estimate)}};
        if (i > 0) {
          row["ratio_to_previous"] =
              entries[i].estimate.mean / entries[i - 1].estimate.mean;
        }
        rows.push_back(row);
      }
      results["ladder"] = rows;
      results["verdict_kind"] = "evidence";
    };
  }

  // ---- supnorm-mc ------------------------------------------------------------
  {
    auto cmd = add("supnorm-mc",
                   "E max_grid |S_N| at a single truncation (m = 8N default)");
    auto fspec = std::make_shared<std::string>("power:0.9");
    auto noise = std::make_shared<std::string>("fgn:0.75");
    auto N = std::make_shared<long long>(256);
    auto m = std::make_shared<int>(0);
    auto reps = std::make_shared<int>(1000);
    auto seed = std::make_shared<std::uint64_t>(12345);
    cmd->app->add_option("--f", *fspec, "coefficients (power:ALPHA[:alt])");
    cmd->app->add_option("--noise", *noise, "iid | fgn:H");
    cmd->app->add_option("--N", *N, "truncation order");
    cmd->app->add_option("--m", *m, "grid size (default 8N)");
    cmd->app->add_option("--reps", *reps, "replications")->check(CLI::Range(100, 1 << 24));
    cmd->app->add_option("--seed", *seed, "base seed");
    cmd->run = [=, &parallel](Json& results, CsvTable&) {
      const auto f = parse_coeff(*fspec);
      rfs::NoiseKind nk = rfs::NoiseKind::iid();
      if (noise->rfind("fgn:", 0) == 0) {
        nk = rfs::NoiseKind::fgn(rfs::HurstParameter(std::stod(noise->substr(4))));
      } else if (*noise != "iid") {
        throw CLI::ValidationError("--noise", "expected iid | fgn:H");
      }
      const int grid = *m > 0 ? *m : static_cast<int>(8 * *N);
      const auto pm = rfs::make_series_process(f, nk, *N, grid);
      auto est = rfs::supnorm_mc(pm.sample, grid, *reps, *seed, parallel);
      est.trunc_N = *N;
      results["f"] = *fspec;
      results["noise"] = *noise;
      results["N"] = *N;
      results["m"] = grid;
      results["estimate"] = mc_json(est);
    };
  }

  // ---- interval-domination ----------------------------------------------------
  {
    auto cmd = add("interval-domination",
                   "On I = [a,b]: int_I g du <= C int_I g dmu with C = "
                   "1/min_I phi, plus the translate count covering the circle");
    auto measure = std::make_shared<std::string>("fgn:0.25");
    auto a = std::make_shared<double>(0.25);
    auto b = std::make_shared<double>(0.75);
    auto grid = std::make_shared<int>(4096);
    cmd->app->add_option("--measure", *measure, "measure spec");
    cmd->app->add_option("--a", *a, "interval start")->required();
    cmd->app->add_option("--b", *b, "interval end")->required();
    cmd->app->add_option("--grid", *grid, "min search grid");
    cmd->run = [=](Json& results, CsvTable&) {
      const auto mu = parse_measure(*measure);
      const auto rep = rfs::interval_domination_check(mu, *a, *b, *grid);
      results["measure"] = *measure;
      results["interval"] = Json{{"a", *a}, {"b", *b}};
      results["ok"] = rep.ok;
      results["C"] = rep.C;
      results["cover_count"] = rep.cover_count;
      results["min_density"] = rep.min_density;
    };
  }

  // ---- parse and dispatch -----------------------------------------------------
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Command* active = nullptr;
  for (const auto& cmd : commands) {
    if (cmd->app->parsed()) {
      active = cmd.get();
      break;
    }
  }
  if (active == nullptr) {
    std::cerr << "no subcommand selected\n";
    return 2;
  }

  Json doc;
  doc["command"] = active->app->get_name();
  Json config;
  for (const CLI::Option* opt : active->app->get_options()) {
    if (opt->get_name().rfind("--", 0) == 0 && !opt->results().empty()) {
      config[opt->get_name().substr(2)] = opt->results().front();
    }
  }
  config["parallel"] = parallel;
  doc["config"] = config;

  Json results;
  CsvTable table;
  const auto start = std::chrono::steady_clock::now();
  try {
    active->run(results, table);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const rfs::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  const auto stop = std::chrono::steady_clock::now();

  doc["results"] = results;
  doc["version"] = rfs::kVersion;
  doc["metadata"] = Json{
      {"duration_ms",
       std::chrono::duration_cast<std::chrono::milliseconds>(stop - start)
           .count()}};

  try {
    if (!csv_path.empty()) {
      if (table.rows.empty()) {
        std::cerr << "validation error: this subcommand has no tabular output\n";
        return 2;
      }
      write_file(csv_path, format_csv(table));
    }
    const std::string text = doc.dump(2) + "\n";
    if (out_path.empty()) {
      std::cout << text;
    } else {
      write_file(out_path, text);
    }
  } catch (const IoError& e) {
    std::cerr << "i/o failure: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
