#include <doctest.h>

#include <algorithm>
#include <random>
#include <stdexcept>

#include "fid/evaluation.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace fid;

namespace {

std::vector<PredictionPair> pairs_from_mres(const std::vector<double>& mres) {
  std::vector<PredictionPair> pairs;
  for (std::size_t i = 0; i < mres.size(); ++i) {
    pairs.push_back({"p" + std::to_string(i), 100.0, 100.0 - 100.0 * mres[i]});
  }
  return pairs;
}

}  // namespace

TEST_CASE("mre: exact, under, over") {
  CHECK(mre({"a", 100.0, 100.0}) == doctest::Approx(0.0));
  CHECK(mre({"b", 100.0, 75.0}) == doctest::Approx(0.25));
  CHECK(mre({"c", 100.0, 150.0}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(mre({"d", 0.0, 10.0}), std::domain_error);
  CHECK_THROWS_AS(mre({"e", -5.0, 10.0}), std::domain_error);
}

TEST_CASE("mmre: examples and the empty case") {
  CHECK(mmre(pairs_from_mres({0.0, 0.0, 0.0})) == doctest::Approx(0.0));
  CHECK(mmre(pairs_from_mres({0.5, 0.5})) == doctest::Approx(50.0));
  // Hand mean: (0 + 0.25 + 0.5 + 0.25) / 4 = 0.25 -> 25%.
  CHECK(mmre(pairs_from_mres({0.0, 0.25, 0.5, 0.25})) == doctest::Approx(25.0));
  CHECK_THROWS_AS(mmre(std::vector<PredictionPair>{}), std::runtime_error);
}

TEST_CASE("pred: examples, inclusivity at the boundary, empty case") {
  CHECK(pred(pairs_from_mres({0.0, 0.0}), 25.0) == doctest::Approx(100.0));
  CHECK(pred(pairs_from_mres({0.2, 0.3}), 25.0) == doctest::Approx(50.0));
  // MRE exactly 0.25 counts ("less or equal").
  CHECK(pred(pairs_from_mres({0.25}), 25.0) == doctest::Approx(100.0));
  CHECK_THROWS_AS(pred(std::vector<PredictionPair>{}, 25.0), std::runtime_error);
  CHECK_THROWS_AS(pred(pairs_from_mres({0.1}), -5.0), std::invalid_argument);
}

TEST_CASE("pred is monotone in the level") {
  std::mt19937_64 rng(13);
  std::vector<double> mres;
  for (int i = 0; i < 30; ++i) mres.push_back(testutil::unit_draw(rng));
  const auto pairs = pairs_from_mres(mres);
  double previous = 0.0;
  for (double level = 0.0; level <= 110.0; level += 5.0) {
    const double value = pred(pairs, level);
    CHECK(value >= previous - 1e-12);
    previous = value;
  }
  CHECK(previous == doctest::Approx(100.0));
}

TEST_CASE("metric values match the independent oracle exactly") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<PredictionPair> pairs;
    const std::size_t count = 1 + rng() % 40;
    for (std::size_t i = 0; i < count; ++i) {
      const double actual = 10.0 + 5000.0 * testutil::unit_draw(rng);
      const double estimated = 8000.0 * testutil::unit_draw(rng);
      pairs.push_back({"p" + std::to_string(i), actual, estimated});
    }
    CHECK(mmre(pairs) == oracle::mmre(pairs));
    CHECK(pred(pairs, 25.0) == oracle::pred(pairs, 25.0));
    CHECK(pred(pairs, 50.0) == oracle::pred(pairs, 50.0));
  }
}

TEST_CASE("mmre is invariant under reordering") {
  std::mt19937_64 rng(19);
  std::vector<PredictionPair> pairs;
  for (int i = 0; i < 25; ++i) {
    pairs.push_back({"p" + std::to_string(i), 50.0 + 900.0 * testutil::unit_draw(rng),
                     1000.0 * testutil::unit_draw(rng)});
  }
  std::vector<PredictionPair> reversed(pairs.rbegin(), pairs.rend());
  CHECK(mmre(pairs) == doctest::Approx(mmre(reversed)).epsilon(1e-12));
}

TEST_CASE("acceptable applies the MMRE and Pred target thresholds") {
  const auto strong = acceptable(13.49, 92.2);
  CHECK(strong.mmre_ok);
  CHECK(strong.pred_ok);
  const auto weak = acceptable(64.82, 15.58);
  CHECK(!weak.mmre_ok);
  CHECK(!weak.pred_ok);
  // Boundary inclusivity.
  const auto edge = acceptable(25.0, 75.0);
  CHECK(edge.mmre_ok);
  CHECK(edge.pred_ok);
  const auto outside = acceptable(25.0001, 74.9999);
  CHECK(!outside.mmre_ok);
  CHECK(!outside.pred_ok);
}

namespace {

Dataset sweep_dataset(std::size_t count, std::uint64_t seed) {
  SynthSpec spec;
  spec.record_count = count;
  spec.seed = seed;
  spec.noise_level = 300.0;
  return impute_mmsi(filter_cases(synth_generate(spec)));
}

}  // namespace

TEST_CASE("threshold_sweep produces one ordered row per cell") {
  const auto ds = sweep_dataset(60, 7);
  SweepRequest request;
  request.thresholds = {0.9, 0.3, 0.6};  // intentionally unsorted
  request.class_counts = {8, 5};
  request.seed = 11;
  request.train_fraction = 0.5;

  const auto report = threshold_sweep(ds, request);
  REQUIRE(report.rows.size() == 6);
  // Rows ordered by (class count, threshold).
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    const auto& prev = report.rows[i - 1];
    const auto& row = report.rows[i];
    const bool ordered = prev.class_count < row.class_count ||
                         (prev.class_count == row.class_count &&
                          prev.threshold < row.threshold);
    CHECK(ordered);
  }
  for (const auto& row : report.rows) {
    CHECK(std::isfinite(row.mmre_percent));
    CHECK(row.mmre_percent >= 0.0);
    CHECK(row.pred25_percent >= 0.0);
    CHECK(row.pred25_percent <= 100.0);
    CHECK(row.node_count >= 1);
    CHECK(row.seed == 11);
  }
}

TEST_CASE("threshold_sweep is deterministic and node counts grow with the threshold") {
  const auto ds = sweep_dataset(60, 23);
  SweepRequest request;
  request.thresholds = {0.1, 0.3, 0.5, 0.7, 0.9};
  request.class_counts = {5, 8};
  request.seed = 5;
  request.train_fraction = 0.5;

  const auto first = threshold_sweep(ds, request);
  const auto second = threshold_sweep(ds, request);
  CHECK(report_to_csv(first) == report_to_csv(second));

  for (std::size_t k : request.class_counts) {
    std::size_t previous = 0;
    for (const auto& row : first.rows) {
      if (row.class_count != k) continue;
      CHECK(row.node_count >= previous);
      previous = row.node_count;
    }
  }
}

TEST_CASE("threshold_sweep runs under the minimum t-norm and set-based inference") {
  const auto ds = sweep_dataset(50, 29);
  SweepRequest request;
  request.thresholds = {0.3, 0.7};
  request.class_counts = {6};
  request.seed = 2;
  request.train_fraction = 0.5;
  request.mode = InferenceMode::SetBased;
  request.base.tnorm = TNormKind::Minimum;

  const auto report = threshold_sweep(ds, request);
  REQUIRE(report.rows.size() == 2);
  for (const auto& row : report.rows) {
    CHECK(std::isfinite(row.mmre_percent));
    CHECK(row.pred25_percent >= 0.0);
    CHECK(row.pred25_percent <= 100.0);
  }
}

TEST_CASE("report CSV has the documented shape") {
  EvaluationReport report;
  report.rows.push_back({0.4, 16, 16.25, 83.16, 42, 7});
  const std::string csv = report_to_csv(report);
  CHECK(csv ==
        "threshold,class_count,mmre,pred25,node_count,seed\n"
        "0.4,16,16.2500,83.1600,42,7\n");
}
