#include "fid/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <utility>

#include "fid/io.hpp"

namespace fid {

TNormKind parse_tnorm(const std::string& token) {
  if (token == "product") return TNormKind::Product;
  if (token == "minimum") return TNormKind::Minimum;
  throw std::invalid_argument("unknown t-norm: '" + token + "'");
}

std::string to_string(TNormKind kind) {
  return kind == TNormKind::Product ? "product" : "minimum";
}

double tnorm(TNormKind kind, double a, double b) {
  if (!(a >= 0.0 && a <= 1.0) || !(b >= 0.0 && b <= 1.0)) {
    throw std::domain_error("t-norm arguments must lie in [0,1]");
  }
  return kind == TNormKind::Product ? a * b : std::min(a, b);
}

void validate(const TrapezoidalSet& set) {
  if (!(std::isfinite(set.a) && std::isfinite(set.b) && std::isfinite(set.c) &&
        std::isfinite(set.d))) {
    throw std::invalid_argument("trapezoid '" + set.label + "': non-finite coordinate");
  }
  if (!(set.a <= set.b && set.b <= set.c && set.c <= set.d)) {
    throw std::invalid_argument("trapezoid '" + set.label +
                                "': coordinates must satisfy a <= b <= c <= d");
  }
  if (set.a < 0.0 || set.d > 1.0) {
    throw std::invalid_argument("trapezoid '" + set.label + "': outside [0,1]");
  }
}

double membership(const TrapezoidalSet& set, double x) {
  x = std::clamp(x, 0.0, 1.0);
  if (x < set.a || x > set.d) return 0.0;
  if (x < set.b) return (x - set.a) / (set.b - set.a);
  if (x <= set.c) return 1.0;
  return (set.d - x) / (set.d - set.c);
}

double centroid(const TrapezoidalSet& set) {
  const double spread = set.d + set.c - set.a - set.b;
  if (spread <= 0.0) return 0.5 * (set.a + set.d);  // zero-area singleton
  const double numerator = set.d * set.d + set.c * set.c + set.c * set.d -
                           set.a * set.a - set.b * set.b - set.a * set.b;
  return numerator / (3.0 * spread);
}

FuzzyPartition::FuzzyPartition(std::vector<TrapezoidalSet> sets) : sets_(std::move(sets)) {
  if (sets_.empty()) {
    throw std::invalid_argument("partition needs at least one set");
  }
  for (const auto& set : sets_) validate(set);
  for (std::size_t i = 1; i < sets_.size(); ++i) {
    if (!(sets_[i - 1].c < sets_[i].b)) {
      throw std::invalid_argument("partition cores must be disjoint and ordered: '" +
                                  sets_[i - 1].label + "' vs '" + sets_[i].label + "'");
    }
  }
}

FuzzyPartition build_uniform_partition(std::size_t n) {
  if (n == 0) {
    throw std::invalid_argument("partition size must be at least 1");
  }
  std::vector<TrapezoidalSet> sets;
  sets.reserve(n);
  if (n == 1) {
    sets.push_back({0.0, 0.0, 1.0, 1.0, "s1"});
    return FuzzyPartition(std::move(sets));
  }
  const double core = 1.0 / (2.0 * static_cast<double>(n));
  const double ramp = 1.0 / (2.0 * static_cast<double>(n - 1));
  for (std::size_t i = 0; i < n; ++i) {
    const double b = static_cast<double>(i) * (core + ramp);
    TrapezoidalSet set;
    set.label = "s" + std::to_string(i + 1);
    set.b = i == 0 ? 0.0 : b;
    set.c = i + 1 == n ? 1.0 : b + core;
    set.a = i == 0 ? 0.0 : set.b - ramp;
    set.d = i + 1 == n ? 1.0 : set.c + ramp;
    sets.push_back(std::move(set));
  }
  return FuzzyPartition(std::move(sets));
}

std::vector<double> fuzzify(const FuzzyPartition& partition, double x) {
  std::vector<double> degrees(partition.size());
  for (std::size_t i = 0; i < partition.size(); ++i) {
    degrees[i] = membership(partition.set(i), x);
  }
  return degrees;
}

bool is_ruspini(const FuzzyPartition& partition, double tol, std::size_t grid_points) {
  for (std::size_t g = 0; g < grid_points; ++g) {
    const double x = static_cast<double>(g) / static_cast<double>(grid_points - 1);
    double sum = 0.0;
    for (const auto& set : partition.sets()) sum += membership(set, x);
    if (std::abs(sum - 1.0) > tol) return false;
  }
  return true;
}

std::string partition_to_text(const FuzzyPartition& partition) {
  std::string text;
  for (const auto& set : partition.sets()) {
    char line[256];
    std::snprintf(line, sizeof(line), "%s %.9f %.9f %.9f %.9f\n", set.label.c_str(),
                  set.a, set.b, set.c, set.d);
    text += line;
  }
  return text;
}

}  // namespace fid
