#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace fid {

// Conjunction operators used for fuzzy intersection.
enum class TNormKind { Product, Minimum };

TNormKind parse_tnorm(const std::string& token);  // "product" | "minimum"
std::string to_string(TNormKind kind);

// Applies the t-norm. Inputs must be degrees in [0,1]; throws std::domain_error.
double tnorm(TNormKind kind, double a, double b);

// Piecewise-linear membership: 0 outside [a,d], 1 on [b,c], linear ramps.
struct TrapezoidalSet {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  std::string label;
};

// Shape check (0 <= a <= b <= c <= d <= 1); throws std::invalid_argument.
void validate(const TrapezoidalSet& set);

// Membership degree at x. Inputs are clamped to [0,1] before evaluation so
// out-of-range queries behave like the nearest domain edge.
double membership(const TrapezoidalSet& set, double x);

// Center of gravity of the trapezoid area; degenerate (zero-area) sets return
// their midpoint.
double centroid(const TrapezoidalSet& set);

// Ordered trapezoidal sets over [0,1]. The constructor checks shapes and that
// cores are disjoint left to right; the Ruspini sum property is a guarantee of
// build_uniform_partition (checkable via is_ruspini) rather than a
// constructor precondition, so free-form set lists remain representable.
class FuzzyPartition {
 public:
  FuzzyPartition() = default;
  explicit FuzzyPartition(std::vector<TrapezoidalSet> sets);

  const std::vector<TrapezoidalSet>& sets() const { return sets_; }
  const TrapezoidalSet& set(std::size_t i) const { return sets_[i]; }
  std::size_t size() const { return sets_.size(); }
  bool empty() const { return sets_.empty(); }

 private:
  std::vector<TrapezoidalSet> sets_;
};

// n trapezoids with equal-width cores (1/(2n) each, half of each set's slot)
// joined by ramps of width 1/(2(n-1)); the first/last cores extend to the
// domain edges. Adjacent memberships cross at 0.5 and sum to 1 everywhere.
// n == 0 throws std::invalid_argument.
FuzzyPartition build_uniform_partition(std::size_t n);

// Membership of x in every set, in order.
std::vector<double> fuzzify(const FuzzyPartition& partition, double x);

// True when memberships sum to 1 (within tol) on an evenly spaced grid.
bool is_ruspini(const FuzzyPartition& partition, double tol = 1e-9,
                std::size_t grid_points = 1000);

// Audit dump: one set per line as "label a b c d" with 9 decimal places.
std::string partition_to_text(const FuzzyPartition& partition);

}  // namespace fid
