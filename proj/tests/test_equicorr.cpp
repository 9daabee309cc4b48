#include "ht2/equicorr.hpp"

#include <cmath>
#include <vector>

#include "doctest.h"
#include "ht2/errors.hpp"
#include "ht2/sym_matrix.hpp"

using ht2::EquicorrModel;
using ht2::ShiftAlternative;

namespace {

// Quadratic form d' Sigma^-1 d with the numeric inverse: the brute-force
// route against which the closed forms are checked.
double brute_force_t_star(const EquicorrModel& model, int m, double a) {
  std::vector<double> d(model.n(), 0.0);
  for (int j = 0; j < m; ++j) d[j] = a;
  const auto v = ht2::solve_spd(model.sigma(), d);
  double q = 0.0;
  for (int j = 0; j < model.n(); ++j) q += d[j] * v[j];
  return q;
}

int brute_force_argmax(const EquicorrModel& model) {
  int best = 1;
  double best_val = ht2::t_star_squared(model, {1, 1.0});
  for (int m = 2; m <= model.n(); ++m) {
    const double val = ht2::t_star_squared(model, {m, 1.0});
    if (val > best_val) {
      best = m;
      best_val = val;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("model construction domain") {
  CHECK_THROWS_AS(EquicorrModel(0, 0.5), ht2::InvalidInput);
  CHECK_THROWS_AS(EquicorrModel(5, -0.1), ht2::InvalidInput);
  CHECK_THROWS_AS(EquicorrModel(5, 1.0), ht2::InvalidInput);
  CHECK_NOTHROW(EquicorrModel(1, 0.0));
  CHECK_NOTHROW(EquicorrModel(5, 0.99));
}

TEST_CASE("inverse coefficients") {
  SUBCASE("n=2, rho=0.3") {
    const auto ic = ht2::inverse_coefficients(EquicorrModel(2, 0.3));
    CHECK(ic.alpha == doctest::Approx(1.0 / (0.7 * 1.3)).epsilon(1e-15));
    CHECK(ic.beta == doctest::Approx(0.3 / (0.7 * 1.3)).epsilon(1e-15));
    CHECK(ic.alpha == doctest::Approx(1.0989).epsilon(5e-5));
  }
  SUBCASE("n=2, rho=0.9") {
    const auto ic = ht2::inverse_coefficients(EquicorrModel(2, 0.9));
    CHECK(ic.alpha == doctest::Approx(5.2632).epsilon(5e-5));
  }
  SUBCASE("rho=0 gives the identity inverse") {
    const auto ic = ht2::inverse_coefficients(EquicorrModel(5, 0.0));
    CHECK(ic.alpha == 1.0);
    CHECK(ic.beta == 0.0);
  }
  SUBCASE("alpha > beta >= 0 across the domain") {
    for (int n = 2; n <= 30; n += 7)
      for (double rho = 0.0; rho < 1.0; rho += 0.05) {
        const auto ic = ht2::inverse_coefficients(EquicorrModel(n, rho));
        CHECK(ic.alpha > 0.0);
        CHECK(ic.beta >= 0.0);
        CHECK(ic.alpha > ic.beta);
      }
  }
  SUBCASE("matches the numeric inverse entrywise") {
    const EquicorrModel model(6, 0.4);
    const auto ic = ht2::inverse_coefficients(model);
    const ht2::SymMatrix pinv = ht2::pseudo_inverse(model.sigma());
    CHECK(pinv(0, 0) == doctest::Approx(ic.alpha).epsilon(1e-12));
    CHECK(pinv(2, 5) == doctest::Approx(-ic.beta).epsilon(1e-12));
  }
}

TEST_CASE("t_star_squared examples") {
  CHECK(ht2::t_star_squared(EquicorrModel(10, 0.5), {0, 1.0}) == 0.0);
  CHECK(ht2::t_star_squared(EquicorrModel(2, 0.9), {1, 1.0}) == doctest::Approx(5.2632).epsilon(5e-5));
  CHECK(ht2::t_star_squared(EquicorrModel(10, 0.5), {5, 1.0}) == doctest::Approx(5.4545).epsilon(5e-5));
  CHECK(ht2::t_star_squared(EquicorrModel(10, 0.5), {5, 1.0}) ==
        doctest::Approx(brute_force_t_star(EquicorrModel(10, 0.5), 5, 1.0)).epsilon(1e-12));
  CHECK_THROWS_AS(ht2::t_star_squared(EquicorrModel(4, 0.5), {5, 1.0}), ht2::InvalidInput);
}

TEST_CASE("closed form agrees with the numeric quadratic form on a grid") {
  for (int n : {2, 3, 7, 20, 50}) {
    for (double rho : {0.0, 0.05, 0.35, 0.7, 0.95}) {
      const EquicorrModel model(n, rho);
      for (int m = 0; m <= n; ++m) {
        const double closed = ht2::t_star_squared(model, {m, 1.0});
        const double brute = brute_force_t_star(model, m, 1.0);
        if (m == 0)
          CHECK(closed == 0.0);
        else
          CHECK(closed == doctest::Approx(brute).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("shift scaling is exact") {
  const EquicorrModel model(8, 0.6);
  for (double a : {0.5, 2.0, 3.25}) {
    for (int m = 0; m <= 8; ++m)
      CHECK(ht2::t_star_squared(model, {m, a}) == a * a * ht2::t_star_squared(model, {m, 1.0}));
  }
}

TEST_CASE("increment examples and telescoping") {
  SUBCASE("independent case adds exactly one per coordinate") {
    const EquicorrModel model(10, 0.0);
    for (int m = 0; m < 10; ++m) CHECK(ht2::increment(model, m) == 1.0);
  }
  SUBCASE("negative increments past the turning point") {
    CHECK(ht2::increment(EquicorrModel(10, 0.5), 7) == doctest::Approx(-2.0 / 2.75).epsilon(1e-14));
    CHECK(ht2::increment(EquicorrModel(2, 0.9), 1) == doctest::Approx(-0.8 / 0.19).epsilon(1e-14));
  }
  SUBCASE("increment equals the t_star_squared difference") {
    for (int n : {2, 5, 12, 33}) {
      for (double rho : {0.0, 0.2, 0.55, 0.9}) {
        const EquicorrModel model(n, rho);
        for (int m = 0; m < n; ++m) {
          const double diff =
              ht2::t_star_squared(model, {m + 1, 1.0}) - ht2::t_star_squared(model, {m, 1.0});
          CHECK(ht2::increment(model, m) == doctest::Approx(diff).epsilon(1e-10).scale(1.0));
        }
      }
    }
  }
  SUBCASE("telescoping sum") {
    for (int n : {3, 10, 41}) {
      for (double rho : {0.1, 0.5, 0.85}) {
        const EquicorrModel model(n, rho);
        double sum = 0.0;
        for (int m = 0; m < n; ++m) {
          sum += ht2::increment(model, m);
          CHECK(ht2::t_star_squared(model, {m + 1, 1.0}) == doctest::Approx(sum).epsilon(1e-10).scale(1.0));
        }
      }
    }
  }
  SUBCASE("m out of range") {
    CHECK_THROWS_AS(ht2::increment(EquicorrModel(4, 0.5), 4), ht2::InvalidInput);
  }
}

TEST_CASE("increment_positive_threshold") {
  CHECK(!ht2::increment_positive_threshold(10, 3).has_value());
  CHECK(ht2::increment_positive_threshold(10, 5).value() == 0.5);
  CHECK(ht2::increment_positive_threshold(10, 9).value() == doctest::Approx(0.1).epsilon(1e-15));

  SUBCASE("increment changes sign at the threshold") {
    for (int n : {4, 10, 17}) {
      for (int m = 0; m < n; ++m) {
        const auto thr = ht2::increment_positive_threshold(n, m);
        if (!thr.has_value()) {
          for (double rho = 0.0; rho < 1. - 1e-9; rho += 0.01)
            CHECK(ht2::increment(EquicorrModel(n, rho), m) > 0.0);
        } else if (*thr < 1.0) {
          CHECK(ht2::increment(EquicorrModel(n, *thr - 1e-3), m) > 0.0);
          CHECK(ht2::increment(EquicorrModel(n, *thr + 1e-3), m) < 0.0);
        } else {
          // threshold at or above 1: positive on the whole admissible range
          CHECK(ht2::increment(EquicorrModel(n, 0.999), m) > 0.0);
        }
      }
    }
  }
}

TEST_CASE("one_vs_all_gap") {
  SUBCASE("boundary rho = 0.5 gives exactly zero") {
    for (int n : {2, 3, 10, 25}) CHECK(ht2::one_vs_all_gap(EquicorrModel(n, 0.5)) == 0.0);
  }
  SUBCASE("examples") {
    CHECK(ht2::one_vs_all_gap(EquicorrModel(10, 0.1)) == doctest::Approx(-4.2105).epsilon(5e-5));
    CHECK(ht2::one_vs_all_gap(EquicorrModel(2, 0.9)) == doctest::Approx(4.2105).epsilon(5e-5));
    CHECK(ht2::one_vs_all_gap(EquicorrModel(5, 0.0)) == doctest::Approx(-4.0).epsilon(1e-15));
  }
  SUBCASE("matches the brute-force difference") {
    for (int n : {2, 6, 19}) {
      for (double rho : {0.05, 0.3, 0.5, 0.8}) {
        const EquicorrModel model(n, rho);
        const double brute = brute_force_t_star(model, 1, 1.0) - brute_force_t_star(model, n, 1.0);
        CHECK(ht2::one_vs_all_gap(model) == doctest::Approx(brute).epsilon(1e-9).scale(1.0));
      }
    }
  }
  SUBCASE("matches the resolved closed form (n-1)(2 rho - 1) / denom") {
    for (int n : {2, 6, 19}) {
      for (double rho : {0.0, 0.05, 0.3, 0.5, 0.8, 0.95}) {
        const double closed = (n - 1) * (2.0 * rho - 1.0) / ((1.0 - rho) * (1.0 + (n - 1) * rho));
        CHECK(ht2::one_vs_all_gap(EquicorrModel(n, rho)) == doctest::Approx(closed).epsilon(1e-12).scale(1.0));
      }
    }
  }
  SUBCASE("sign law: negative iff rho < 0.5") {
    for (int n : {2, 4, 30}) {
      for (double rho = 0.0; rho < 0.995; rho += 0.005) {
        const double gap = ht2::one_vs_all_gap(EquicorrModel(n, rho));
        if (rho < 0.5)
          CHECK(gap < 0.0);
        else if (rho > 0.5)
          CHECK(gap > 0.0);
      }
    }
  }
}

TEST_CASE("rho monotonicity at the extremes of m") {
  // Single shifted coordinate: strictly increasing in rho.
  // All coordinates shifted: t* = n / (1 + (n-1) rho), strictly decreasing.
  for (int n : {2, 8, 40}) {
    double prev_one = -1.0, prev_all = 1e300;
    for (double rho = 0.0; rho < 0.999; rho += 0.001) {
      const EquicorrModel model(n, rho);
      const double one = ht2::t_star_squared(model, {1, 1.0});
      const double all = ht2::t_star_squared(model, {n, 1.0});
      CHECK(one > prev_one);
      CHECK(all < prev_all);
      CHECK(all == doctest::Approx(n / (1.0 + (n - 1) * rho)).epsilon(1e-12));
      prev_one = one;
      prev_all = all;
    }
  }
}

TEST_CASE("argmax_m") {
  SUBCASE("examples") {
    CHECK(ht2::argmax_m(EquicorrModel(10, 0.9)) == 5);  // t*(5)=25.27 > t*(6)=24.40
    CHECK(ht2::argmax_m(EquicorrModel(10, 0.05)) == 10);
    CHECK(ht2::argmax_m(EquicorrModel(2, 0.9)) == 1);
  }
  SUBCASE("rho = 0 maximizer is n") { CHECK(ht2::argmax_m(EquicorrModel(7, 0.0)) == 7); }
  SUBCASE("always attains the exhaustive-scan maximum") {
    for (int n = 2; n <= 40; ++n) {
      for (double rho : {0.02, 0.15, 0.5, 0.77, 0.93}) {
        const EquicorrModel model(n, rho);
        const int arg = ht2::argmax_m(model);
        const int scan = brute_force_argmax(model);
        CHECK(ht2::t_star_squared(model, {arg, 1.0}) == ht2::t_star_squared(model, {scan, 1.0}));
        CHECK(arg <= scan);  // ties break toward the smaller m
      }
    }
  }
}
