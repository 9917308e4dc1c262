// Copyright 2026 The plsmc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "oracles.hpp"
#include "plsmc/error.hpp"
#include "plsmc/models/dataset.hpp"
#include "plsmc/models/local_level.hpp"
#include "plsmc/models/mixture.hpp"
#include "plsmc/smc/weights.hpp"

using namespace plsmc;
using namespace plsmc::models;

namespace {

MixtureSuffStats make_stats(std::vector<ComponentStats> components) { return {std::move(components)}; }

double log_normal(double y, double mean, double var) {
  return -0.5 * std::log(2.0 * M_PI * var) - 0.5 * (y - mean) * (y - mean) / var;
}

// Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

const std::vector<double> kFivePoints{-1.2, 0.4, 2.5, 3.1, -0.3};

}  // namespace

TEST_SUITE("models.mixture") {
  TEST_CASE("spec validation") {
    MixtureModelSpec spec;
    CHECK_NOTHROW(spec.validate());
    spec.K = 1;
    CHECK_THROWS_AS(spec.validate(), ValidationError);
    spec = {};
    spec.b0 = 0.0;
    CHECK_THROWS_AS(spec.validate(), ValidationError);
  }

  TEST_CASE("simulate: degenerate weight vector allocates everything to the first component") {
    const MixtureParams params{{1.0, 0.0}, {0.0, 5.0}, {1.0, 1.0}};
    const Dataset data = simulate_mixture_data({}, params, 3, 11);
    REQUIRE(data.ground_truth);
    CHECK(data.ground_truth->allocations == std::vector<std::size_t>{0, 0, 0});
    CHECK(data.ground_truth->params->means == params.means);
  }

  TEST_CASE("simulate: vanishing noise puts observations on the means") {
    const MixtureParams params{{0.5, 0.5}, {0.0, 5.0}, {1e-12, 1e-12}};
    const Dataset data = simulate_mixture_data({}, params, 200, 3);
    for (double y : data.observations) {
      CHECK((std::abs(y) < 1e-4 || std::abs(y - 5.0) < 1e-4));
    }
  }

  TEST_CASE("simulate: sample mean agrees with the mixture mean") {
    const MixtureParams params{{0.3, 0.7}, {0.0, 3.0}, {1.0, 1.0}};
    const Dataset data = simulate_mixture_data({}, params, 10000, 2024);
    const double n = static_cast<double>(data.size());
    const double mean = std::accumulate(data.observations.begin(), data.observations.end(), 0.0) / n;
    double ss = 0.0;
    for (double y : data.observations) ss += (y - mean) * (y - mean);
    const double se = std::sqrt(ss / (n - 1.0) / n);
    CHECK(std::abs(mean - 2.1) <= 3.0 * se);
  }

  TEST_CASE("simulate: invalid parameters are rejected") {
    CHECK_THROWS_AS(simulate_mixture_data({}, {{0.5, 0.6}, {0.0, 1.0}, {1.0, 1.0}}, 5, 1), ValidationError);
    CHECK_THROWS_AS(simulate_mixture_data({}, {{0.5, 0.5}, {0.0, 1.0}, {1.0, -1.0}}, 5, 1), ValidationError);
    CHECK_THROWS_AS(simulate_mixture_data({}, {{1.0}, {0.0}, {1.0}}, 5, 1), ValidationError);
  }

  TEST_CASE("simulate: same inputs give the same bytes") {
    const MixtureParams params{{0.4, 0.6}, {-1.0, 2.0}, {0.5, 2.0}};
    std::ostringstream a, b;
    write_dataset_csv(a, simulate_mixture_data({}, params, 50, 99));
    write_dataset_csv(b, simulate_mixture_data({}, params, 50, 99));
    CHECK(a.str() == b.str());
  }

  TEST_CASE("predictive: empty statistics collapse to one prior component") {
    const MixtureModelSpec spec;
    const auto empty = MixtureSuffStats::empty(2);
    for (double y : {-3.0, 0.0, 0.7, 12.0}) {
      const double expected = nig_predictive_logdensity(y, {spec.m0, spec.kappa0, spec.a0, spec.b0});
      CHECK(mixture_predictive_logdensity(y, empty, spec) == doctest::Approx(expected).epsilon(1e-13));
    }
  }

  TEST_CASE("predictive: mode at the prior mean") {
    const MixtureModelSpec spec;
    const auto empty = MixtureSuffStats::empty(2);
    CHECK(mixture_predictive_logdensity(spec.m0, empty, spec) >
          mixture_predictive_logdensity(spec.m0 + 10.0, empty, spec));
  }

  TEST_CASE("predictive: matches quadrature over the NIG posterior") {
    // K=2, delta=1, m0=0, kappa0=1, a0=2, b0=2; component 1 holds n=3, s=3, q=5.
    // Frozen from an independent scipy dblquad evaluation: -1.1651422763520316.
    const MixtureModelSpec spec;
    const double frozen = -1.1651422763520316;
    const std::vector<double> component{1.0 - 1.0, 1.0, 1.0 + 1.0};  // sum 3, squares 0 + 1 + 4 = 5
    const double quadrature = oracles::mixture_predictive_by_quadrature(1.0, {component, {}}, spec);
    CHECK(quadrature == doctest::Approx(frozen).epsilon(1e-8));

    const auto stats = make_stats({{3, 3.0, 5.0}, {0, 0.0, 0.0}});
    CHECK(std::abs(mixture_predictive_logdensity(1.0, stats, spec) - frozen) < 1e-4);
    CHECK(std::abs(mixture_predictive_logdensity(1.0, stats, spec) - quadrature) < 1e-4);
  }

  TEST_CASE("predictive: density integrates to one") {
    const MixtureModelSpec spec;
    for (const auto& stats : {MixtureSuffStats::empty(2), make_stats({{3, 3.0, 5.0}, {0, 0.0, 0.0}}),
                              make_stats({{10, 40.0, 170.0}, {4, -2.0, 9.0}})}) {
      const auto density = [&](double y) { return std::exp(mixture_predictive_logdensity(y, stats, spec)); };
      const double mass = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
          density, -std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), 20, 1e-12);
      CHECK(mass == doctest::Approx(1.0).epsilon(1e-4));
    }
  }

  TEST_CASE("predictive: invariant under permuting component statistics") {
    const MixtureModelSpec spec{3, 0.7, 0.5, 2.0, 3.0, 1.5};
    const auto stats = make_stats({{3, 3.0, 5.0}, {1, -2.0, 4.0}, {5, 10.0, 30.0}});
    const auto permuted = make_stats({{5, 10.0, 30.0}, {3, 3.0, 5.0}, {1, -2.0, 4.0}});
    for (double y : {-2.0, 0.0, 1.5, 4.0}) {
      CHECK(mixture_predictive_logdensity(y, stats, spec) ==
            doctest::Approx(mixture_predictive_logdensity(y, permuted, spec)).epsilon(1e-12));
    }
  }

  TEST_CASE("update: arithmetic examples") {
    const auto a = update_mixture_suffstats(make_stats({{1, 3.0, 9.0}, {0, 0.0, 0.0}}), 2.0, 0);
    CHECK(a == make_stats({{2, 5.0, 13.0}, {0, 0.0, 0.0}}));

    const auto b = update_mixture_suffstats(MixtureSuffStats::empty(2), 0.0, 1);
    CHECK(b.components[1] == ComponentStats{1, 0.0, 0.0});

    const auto c1 = update_mixture_suffstats(update_mixture_suffstats(MixtureSuffStats::empty(2), 1.0, 0), -1.0, 0);
    const auto c2 = update_mixture_suffstats(update_mixture_suffstats(MixtureSuffStats::empty(2), -1.0, 0), 1.0, 0);
    CHECK(c1 == c2);
    CHECK(c1.components[0] == ComponentStats{2, 0.0, 2.0});
  }

  TEST_CASE("update: index out of range") {
    CHECK_THROWS_AS(update_mixture_suffstats(MixtureSuffStats::empty(2), 1.0, 2), IndexError);
  }

  TEST_CASE("update: bookkeeping and Cauchy-Schwarz hold along random sequences") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> normal(0.0, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t K = 2 + static_cast<std::size_t>(trial % 4);
      auto stats = MixtureSuffStats::empty(K);
      for (std::uint64_t t = 1; t <= 200; ++t) {
        absorb(stats, normal(rng), static_cast<std::size_t>(rng() % K));
        REQUIRE(stats.total_count() == t);
        for (const auto& c : stats.components) {
          if (c.n > 0) {
            REQUIRE(c.sum_sq >= c.sum * c.sum / static_cast<double>(c.n) * (1.0 - 1e-12));
          }
        }
      }
    }
  }

  TEST_CASE("canonical bytes distinguish statistics exactly") {
    const auto a = make_stats({{2, 1.0, 3.0}, {0, 0.0, 0.0}});
    auto b = a;
    CHECK(canonical_bytes(a) == canonical_bytes(b));
    b.components[0].sum = std::nextafter(1.0, 2.0);
    CHECK(canonical_bytes(a) != canonical_bytes(b));
    auto c = a;
    c.components[1].sum = -0.0;
    CHECK(canonical_bytes(a) == canonical_bytes(c));
  }

  TEST_CASE("sample params: empty statistics give prior draws") {
    const MixtureModelSpec spec;
    Rng rng(17);
    const auto empty = MixtureSuffStats::empty(2);
    const int draws = 100000;
    std::vector<double> mu;
    mu.reserve(draws);
    for (int d = 0; d < draws; ++d) {
      const auto p = sample_mixture_params(empty, spec, rng);
      REQUIRE(std::abs(p.weights[0] + p.weights[1] - 1.0) < 1e-12);
      mu.push_back(p.means[0]);
    }
    const double mean = std::accumulate(mu.begin(), mu.end(), 0.0) / draws;
    double ss = 0.0;
    for (double m : mu) ss += (m - mean) * (m - mean);
    const double se = std::sqrt(ss / (draws - 1) / draws);
    CHECK(std::abs(mean - spec.m0) <= 3.0 * se);
  }

  TEST_CASE("sample params: posterior concentrates under a million observations") {
    // Data with sample mean 4 and unit sample variance. The conditional posterior of
    // mu_1 has sd sqrt(b_n / ((a_n - 1) kappa_n)) ~ 1e-3, so 0.05 is ~50 sd.
    const MixtureModelSpec spec;
    const double n = 1e6;
    const auto stats = make_stats({{1000000, 4.0 * n, 16.0 * n + n}, {0, 0.0, 0.0}});
    const auto post = nig_posterior(stats.components[0], spec);
    const double sd = std::sqrt(post.scale / ((post.shape - 1.0) * post.kappa));
    CHECK(sd < 0.002);
    Rng rng(3);
    int inside = 0;
    const int draws = 2000;
    for (int d = 0; d < draws; ++d) {
      inside += std::abs(sample_mixture_params(stats, spec, rng).means[0] - 4.0) < 0.05;
    }
    CHECK(inside >= static_cast<int>(0.99 * draws));
  }

  TEST_CASE("sample params: permuting statistics permutes the drawn blocks") {
    const MixtureModelSpec spec;
    const auto stats = make_stats({{3, 3.0, 5.0}, {0, 0.0, 0.0}});
    const auto swapped = make_stats({{0, 0.0, 0.0}, {3, 3.0, 5.0}});
    const int draws = 100000;
    std::vector<double> mean_a, mean_b, weight_a, weight_b, var_a, var_b;
    Rng rng_a(101), rng_b(202);
    for (int d = 0; d < draws; ++d) {
      const auto pa = sample_mixture_params(stats, spec, rng_a);
      const auto pb = sample_mixture_params(swapped, spec, rng_b);
      mean_a.push_back(pa.means[0]);
      mean_b.push_back(pb.means[1]);
      weight_a.push_back(pa.weights[0]);
      weight_b.push_back(pb.weights[1]);
      var_a.push_back(pa.variances[1]);
      var_b.push_back(pb.variances[0]);
    }
    // KS critical value at alpha = 1e-3 for two samples of size n: 1.949 sqrt(2 / n).
    const double critical = 1.949 * std::sqrt(2.0 / draws);
    CHECK(ks_statistic(mean_a, mean_b) < critical);
    CHECK(ks_statistic(weight_a, weight_b) < critical);
    CHECK(ks_statistic(var_a, var_b) < critical);
  }

  TEST_CASE("enumeration: single observation equals the prior predictive") {
    const MixtureModelSpec spec;
    const Dataset data{{0.8}, {}};
    CHECK(enumerate_mixture_log_evidence(spec, data) ==
          doctest::Approx(mixture_predictive_logdensity(0.8, MixtureSuffStats::empty(2), spec)).epsilon(1e-13));
  }

  TEST_CASE("enumeration: invariant under reordering the observations") {
    const MixtureModelSpec spec;
    std::vector<double> ys = kFivePoints;
    const double reference = enumerate_mixture_log_evidence(spec, {ys, {}});
    std::mt19937_64 rng(8);
    for (int i = 0; i < 5; ++i) {
      std::shuffle(ys.begin(), ys.end(), rng);
      CHECK(std::abs(enumerate_mixture_log_evidence(spec, {ys, {}}) - reference) < 1e-10);
    }
  }

  TEST_CASE("enumeration: agrees with prior importance sampling") {
    // Frozen cross-check: a separate numpy run gave -11.1287 (enumeration) and
    // -11.1281 +- 0.0015 (1e6 prior draws).
    const MixtureModelSpec spec;
    const double exact = enumerate_mixture_log_evidence(spec, {kFivePoints, {}});
    CHECK(exact == doctest::Approx(-11.12874217439894).epsilon(1e-12));
    const auto is = oracles::mixture_prior_importance_sampling(spec, kFivePoints, 1000000, 2718);
    CHECK(std::abs(exact - is.log_value) <= 3.0 * is.relative_se);
  }

  TEST_CASE("enumeration: equals the telescoping sum of exact predictive increments") {
    // Forward summation over all allocation prefixes: p(y_t | y_{1:t-1}) is the
    // posterior-weighted average of p(y_t | stats(z_{1:t-1})).
    for (const MixtureModelSpec spec : {MixtureModelSpec{}, MixtureModelSpec{3, 0.5, 1.0, 0.5, 3.0, 1.0}}) {
      struct Branch {
        MixtureSuffStats stats;
        double log_weight;
      };
      std::vector<Branch> branches{{MixtureSuffStats::empty(spec.K), 0.0}};
      double telescoped = 0.0;
      for (double y : kFivePoints) {
        std::vector<double> joint;
        std::vector<double> weights;
        std::vector<Branch> next;
        for (const auto& b : branches) {
          std::vector<double> terms(spec.K);
          const double pred = mixture_predictive_terms(y, b.stats, spec, terms);
          joint.push_back(b.log_weight + pred);
          weights.push_back(b.log_weight);
          for (std::size_t k = 0; k < spec.K; ++k) {
            next.push_back({update_mixture_suffstats(b.stats, y, k), b.log_weight + terms[k]});
          }
        }
        telescoped += smc::log_sum_exp(joint) - smc::log_sum_exp(weights);
        branches = std::move(next);
      }
      CHECK(std::abs(enumerate_mixture_log_evidence(spec, {kFivePoints, {}}) - telescoped) < 1e-10);
    }
  }

  TEST_CASE("enumeration: refuses beyond the guard and names the bound") {
    const Dataset data{std::vector<double>(24, 0.5), {}};
    try {
      enumerate_mixture_log_evidence({}, data);
      FAIL("expected OracleGuardError");
    } catch (const OracleGuardError& e) {
      CHECK(std::string(e.what()).find("10000000") != std::string::npos);
    }
  }
}

TEST_SUITE("models.local_level") {
  TEST_CASE("simulate: noiseless constant level") {
    LocalLevelSpec spec{1e-18, 0.0, 1.0, 1e-18};
    const Dataset data = simulate_local_level_data(spec, 5, 4);
    for (double y : data.observations) CHECK(std::abs(y - 1.0) < 1e-6);
  }

  TEST_CASE("simulate: first differences have variance tau^2 + 2 sigma^2") {
    LocalLevelSpec spec{1.0, 1.0, 0.0, 1.0};
    const Dataset data = simulate_local_level_data(spec, 10000, 77);
    std::vector<double> diffs;
    for (std::size_t t = 1; t < data.size(); ++t) diffs.push_back(data.observations[t] - data.observations[t - 1]);
    const double n = static_cast<double>(diffs.size());
    const double mean = std::accumulate(diffs.begin(), diffs.end(), 0.0) / n;
    std::vector<double> squares;
    for (double d : diffs) squares.push_back((d - mean) * (d - mean));
    const double variance = std::accumulate(squares.begin(), squares.end(), 0.0) / (n - 1.0);
    // Differences are MA(1), so the standard error uses 100 batch means of the squares.
    const std::size_t batches = 100;
    const std::size_t per = squares.size() / batches;
    std::vector<double> batch_means;
    for (std::size_t b = 0; b < batches; ++b) {
      batch_means.push_back(std::accumulate(squares.begin() + b * per, squares.begin() + (b + 1) * per, 0.0) / per);
    }
    const double bm = std::accumulate(batch_means.begin(), batch_means.end(), 0.0) / batches;
    double bss = 0.0;
    for (double v : batch_means) bss += (v - bm) * (v - bm);
    const double se = std::sqrt(bss / (batches - 1) / batches);
    CHECK(std::abs(variance - 3.0) <= 3.0 * se);
  }

  TEST_CASE("simulate: deterministic bytes and ground truth") {
    LocalLevelSpec spec{1.0, 0.5, 0.0, 1.0};
    std::ostringstream a, b;
    write_dataset_csv(a, simulate_local_level_data(spec, 30, 5));
    write_dataset_csv(b, simulate_local_level_data(spec, 30, 5));
    CHECK(a.str() == b.str());
    CHECK(simulate_local_level_data(spec, 30, 5).ground_truth->latent.size() == 30);
  }

  TEST_CASE("simulate: unknown variances are rejected") {
    LocalLevelSpec spec;
    spec.obs_var = InverseGammaPrior{2.0, 1.0};
    CHECK_NOTHROW(spec.validate());
    CHECK_THROWS_AS(simulate_local_level_data(spec, 10, 1), ValidationError);
    spec.obs_var = InverseGammaPrior{-2.0, 1.0};
    CHECK_THROWS_AS(spec.validate(), ValidationError);
  }

  TEST_CASE("kalman evidence: single observation") {
    LocalLevelSpec spec{0.7, 0.3, 1.5, 2.0};
    CHECK(kalman_log_evidence(spec, {{0.4}, {}}) == doctest::Approx(log_normal(0.4, 1.5, 2.7)).epsilon(1e-14));
  }

  TEST_CASE("kalman evidence: static level with known start") {
    LocalLevelSpec spec{1.3, 0.0, 0.5, 1e-18};
    const std::vector<double> ys{0.1, 1.9, -0.4, 2.2, 0.8, 0.3};
    double expected = 0.0;
    for (double y : ys) expected += log_normal(y, 0.5, 1.3);
    CHECK(std::abs(kalman_log_evidence(spec, {ys, {}}) - expected) < 1e-6);
  }

  TEST_CASE("kalman evidence: dense multivariate normal") {
    // Frozen from scipy.stats.multivariate_normal on the explicit 5x5 covariance.
    LocalLevelSpec spec{1.0, 0.5, 0.0, 1.0};
    const std::vector<double> ys{0.3, -0.8, 1.5, 2.1, 0.7};
    const double frozen = -8.083859445548226;
    CHECK(std::abs(oracles::local_level_dense_log_evidence(spec, ys) - frozen) < 1e-12);
    CHECK(std::abs(kalman_log_evidence(spec, {ys, {}}) - frozen) < 1e-10);
  }

  TEST_CASE("kalman evidence: scale covariance") {
    LocalLevelSpec spec{1.0, 0.5, 0.2, 1.5};
    const Dataset data = simulate_local_level_data(spec, 40, 9);
    const double c = 2.0;
    LocalLevelSpec scaled{c * c * 1.0, c * c * 0.5, c * 0.2, c * c * 1.5};
    Dataset scaled_data = data;
    for (double& y : scaled_data.observations) y *= c;
    const double T = static_cast<double>(data.size());
    CHECK(std::abs(kalman_log_evidence(scaled, scaled_data) - (kalman_log_evidence(spec, data) - T * std::log(c))) <
          1e-8);
  }
}

TEST_SUITE("models.dataset") {
  TEST_CASE("CSV round trip preserves every bit") {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> normal(0.0, 1e3);
    Dataset data;
    GroundTruth truth;
    for (int i = 0; i < 500; ++i) {
      data.observations.push_back(normal(rng) * std::pow(10.0, static_cast<double>(i % 40) - 20.0));
      truth.allocations.push_back(static_cast<std::size_t>(i % 3));
    }
    data.ground_truth = truth;
    std::stringstream buffer;
    write_dataset_csv(buffer, data);
    const Dataset back = read_dataset_csv(buffer);
    CHECK(back.observations == data.observations);
    CHECK(back.ground_truth->allocations == truth.allocations);
  }

  TEST_CASE("CSV header and layout") {
    std::ostringstream out;
    write_dataset_csv(out, Dataset{{0.5, -1.25}, {}});
    CHECK(out.str() == "t,y\n1,0.5\n2,-1.25\n");
    std::ostringstream with_truth;
    write_dataset_csv(with_truth, simulate_local_level_data({1.0, 1.0, 0.0, 1.0}, 2, 1));
    CHECK(with_truth.str().rfind("t,y,x_true,z_true\n", 0) == 0);
  }

  TEST_CASE("CSV without a y column is rejected") {
    std::istringstream in("t,value\n1,2\n");
    CHECK_THROWS_AS(read_dataset_csv(in), ValidationError);
  }

  TEST_CASE("validation") {
    CHECK_THROWS_AS(validate_dataset({}), ValidationError);
    CHECK_THROWS_AS(validate_dataset({{1.0, NAN}, {}}), ValidationError);
    CHECK_THROWS_AS(truncate({{1.0}, {}}, 2), ValidationError);
  }
}
