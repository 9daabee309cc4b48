#include "ht2/simulate.hpp"

#include <cmath>
#include <string>

#include "ht2/errors.hpp"
#include "ht2/parallel.hpp"

namespace ht2 {

namespace {

// Pairwise (cascade) sum over a fixed index range: the result depends only
// on the vector contents, never on worker scheduling.
double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

}  // namespace

SimConfig SimConfig::shifted(const EquicorrModel& model, const ShiftAlternative& alt, int n_x, int n_y, int reps,
                             std::uint64_t seed) {
  if (alt.m < 0 || alt.m > model.n()) throw InvalidInput("SimConfig: m must lie in [0, n]");
  std::vector<double> delta(model.n(), 0.0);
  for (int j = 0; j < alt.m; ++j) delta[j] = alt.a;
  return {model, std::move(delta), n_x, n_y, reps, seed};
}

SampleSet sample_equicorr_mvn(const EquicorrModel& model, std::span<const double> mean, int count,
                              RandomStream& stream) {
  const int n = model.n();
  if (count < 1) throw InvalidInput("sample_equicorr_mvn: count must be >= 1");
  if (static_cast<int>(mean.size()) != n) throw InvalidInput("sample_equicorr_mvn: mean length != n");

  const double shared = std::sqrt(model.rho());
  const double own = std::sqrt(1.0 - model.rho());

  SampleSet s(count, n);
  for (int i = 0; i < count; ++i) {
    const double z0 = stream.next_normal();
    for (int j = 0; j < n; ++j) s(i, j) = mean[j] + shared * z0 + own * stream.next_normal();
  }
  return s;
}

SimSummary run_simulation(const SimConfig& cfg) {
  const int n = cfg.model.n();
  if (cfg.reps < 1) throw InvalidInput("run_simulation: reps must be >= 1");
  if (cfg.n_x < 2 || cfg.n_y < 2) throw InvalidInput("run_simulation: n_x and n_y must be >= 2");
  if (static_cast<int>(cfg.delta.size()) != n) throw InvalidInput("run_simulation: delta length != n");
  if (n >= cfg.n_x + cfg.n_y - 1)
    throw DegenerateDimension("run_simulation: n >= n_x + n_y - 1; the exact statistic is undefined");

  const std::vector<double> mu_x(n, 0.0);
  std::vector<double> mu_y(n);
  for (int j = 0; j < n; ++j) mu_y[j] = -cfg.delta[j];

  std::vector<double> t2_over_k(cfg.reps);
  detail::parallel_for(cfg.reps, [&](std::int64_t r) {
    RandomStream stream(cfg.seed, static_cast<std::uint64_t>(r));
    const SampleSet x = sample_equicorr_mvn(cfg.model, mu_x, cfg.n_x, stream);
    const SampleSet y = sample_equicorr_mvn(cfg.model, mu_y, cfg.n_y, stream);
    const HotellingResult h = hotelling_t2(x, y);
    t2_over_k[r] = h.t2 / h.k;
  });

  const double mean = pairwise_sum(t2_over_k) / cfg.reps;
  double variance_of_mean = 0.0;
  if (cfg.reps > 1) {
    std::vector<double> sq(cfg.reps);
    for (int r = 0; r < cfg.reps; ++r) {
      const double d = t2_over_k[r] - mean;
      sq[r] = d * d;
    }
    variance_of_mean = pairwise_sum(sq) / (cfg.reps - 1) / cfg.reps;
  }

  return {mean, variance_of_mean, cfg.reps, cfg};
}

namespace {

double expected_from_lambda(double quad_form, int n, int n_x, int n_y) {
  if (n >= n_x + n_y - 3)
    throw InvalidInput("expected_t2_over_k: requires n < n_x + n_y - 3 (mean of the F transform exists)");
  const double k = static_cast<double>(n_x) * n_y / (n_x + n_y);
  const double lambda = k * quad_form;
  return (n_x + n_y - 2) * (n + lambda) / ((n_x + n_y - n - 3) * k);
}

}  // namespace

double expected_t2_over_k(const EquicorrModel& model, std::span<const double> delta, int n_x, int n_y) {
  const int n = model.n();
  if (static_cast<int>(delta.size()) != n) throw InvalidInput("expected_t2_over_k: delta length != n");
  // d' Sigma^-1 d = (alpha+beta) ||d||^2 - beta (sum d)^2 for the
  // equicorrelation inverse.
  const InverseCoefficients ic = inverse_coefficients(model);
  double sum = 0.0, sum_sq = 0.0;
  for (double v : delta) {
    sum += v;
    sum_sq += v * v;
  }
  const double quad = (ic.alpha + ic.beta) * sum_sq - ic.beta * sum * sum;
  return expected_from_lambda(quad, n, n_x, n_y);
}

double expected_t2_over_k(const SymMatrix& sigma, std::span<const double> delta, int n_x, int n_y) {
  const int n = sigma.dim();
  if (static_cast<int>(delta.size()) != n) throw InvalidInput("expected_t2_over_k: delta length != n");
  const std::vector<double> v = solve_spd(sigma, delta);
  double quad = 0.0;
  for (int j = 0; j < n; ++j) quad += delta[j] * v[j];
  return expected_from_lambda(quad, n, n_x, n_y);
}

std::vector<CurvePoint> figure3_curve(int n, double rho, double ns_factor, int reps, std::uint64_t seed) {
  if (n < 2) throw InvalidInput("figure3_curve: n must be >= 2");
  const int ns = static_cast<int>(std::floor(ns_factor * n + 0.5));
  const EquicorrModel model(n, rho);
  if (n >= 2 * ns - 1)
    throw InvalidInput("figure3_curve: ns_factor " + std::to_string(ns_factor) + " gives n_s = " +
                       std::to_string(ns) + ", too small for n = " + std::to_string(n));

  std::vector<CurvePoint> curve;
  curve.reserve(n);
  for (int m = 1; m <= n; ++m) {
    const ShiftAlternative alt{m, 1.0};
    SimConfig cfg = SimConfig::shifted(model, alt, ns, ns, reps, mix64(seed ^ mix64(static_cast<std::uint64_t>(m))));
    const SimSummary s = run_simulation(cfg);
    curve.push_back({m, s.mean_t2_over_k, s.variance_of_mean, t_star_squared(model, alt),
                     expected_t2_over_k(model, cfg.delta, ns, ns)});
  }
  return curve;
}

std::vector<ShiftPair> table1_pairs(double rho) {
  if (!(rho >= 0.0 && rho < 1.0)) throw InvalidInput("table1_pairs: rho must lie in [0, 1)");
  const double bound = std::sqrt(1.0 / (1.0 - rho * rho));
  auto round2 = [](double v) { return std::round(v * 100.0) / 100.0; };

  std::vector<ShiftPair> pairs;
  pairs.reserve(10);
  for (int j = -4; j <= 5; ++j) {
    const double a1 = j * bound / 5.0;
    const double disc = std::max(0.0, 1.0 - a1 * a1 * (1.0 - rho * rho));
    const double a2 = rho * a1 + std::sqrt(disc);
    pairs.push_back({round2(a1), round2(a2)});
  }
  return pairs;
}

Table1Result table1(std::span<const double> rho_list, std::span<const int> ns_list, int reps, std::uint64_t seed) {
  Table1Result out;
  for (std::size_t ri = 0; ri < rho_list.size(); ++ri) {
    const double rho = rho_list[ri];
    const EquicorrModel model(2, rho);
    const std::vector<ShiftPair> pairs = table1_pairs(rho);

    for (int ns : ns_list) {
      double var_sum = 0.0;
      std::vector<double> means;
      means.reserve(pairs.size());

      for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
        const std::uint64_t cell_seed =
            mix64(seed ^ mix64(ri * 1000003ULL + static_cast<std::uint64_t>(ns) * 101ULL + pi));
        SimConfig cfg{model, {pairs[pi].a1, pairs[pi].a2}, ns, ns, reps, cell_seed};
        const SimSummary s = run_simulation(cfg);
        out.cells.push_back({rho, pairs[pi], ns, s.mean_t2_over_k, s.variance_of_mean,
                             expected_t2_over_k(model, cfg.delta, ns, ns)});
        var_sum += s.variance_of_mean;
        means.push_back(s.mean_t2_over_k);
      }

      double scatter = 0.0;
      const double grand = pairwise_sum(means) / means.size();
      for (double m : means) scatter += (m - grand) * (m - grand);
      scatter /= means.size() - 1;
      out.columns.push_back({rho, ns, var_sum / pairs.size(), scatter});
    }
  }
  return out;
}

}  // namespace ht2
