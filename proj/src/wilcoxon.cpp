#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "cigrate/error.hpp"
#include "cigrate/metrics.hpp"

namespace cigrate {
namespace {

// Average ranks doubled so tied ranks stay integral (needed for the exact
// enumeration).
std::vector<std::int64_t> double_ranks(const std::vector<double>& abs_diffs) {
  const std::size_t n = abs_diffs.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return abs_diffs[a] < abs_diffs[b];
  });
  std::vector<std::int64_t> ranks2(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && abs_diffs[order[j + 1]] == abs_diffs[order[i]]) ++j;
    // Positions i..j (0-based) share the average of ranks i+1..j+1, whose
    // doubled value is (i+1) + (j+1).
    const std::int64_t avg2 = static_cast<std::int64_t>(i + 1 + j + 1);
    for (std::size_t p = i; p <= j; ++p) {
      ranks2[order[p]] = avg2;
    }
    i = j + 1;
  }
  return ranks2;
}

// #subsets of ranks2 whose sum ≤ threshold, via subset-sum counting.
double count_at_most(const std::vector<std::int64_t>& ranks2,
                     std::int64_t threshold) {
  if (threshold < 0) return 0;
  std::int64_t total = 0;
  for (auto r : ranks2) total += r;
  std::vector<double> ways(static_cast<std::size_t>(total) + 1, 0.0);
  ways[0] = 1.0;
  for (auto r : ranks2) {
    for (std::int64_t s = total; s >= r; --s) {
      ways[static_cast<std::size_t>(s)] +=
          ways[static_cast<std::size_t>(s - r)];
    }
  }
  double count = 0;
  const std::int64_t cap = std::min(threshold, total);
  for (std::int64_t s = 0; s <= cap; ++s) {
    count += ways[static_cast<std::size_t>(s)];
  }
  return count;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& scores_a,
                                    const std::vector<double>& scores_b) {
  if (scores_a.size() != scores_b.size()) {
    throw Error(ErrorCode::LengthMismatch,
                "paired score lists differ in length");
  }
  std::vector<double> diffs;
  for (std::size_t i = 0; i < scores_a.size(); ++i) {
    const double d = scores_a[i] - scores_b[i];
    if (d != 0.0) diffs.push_back(d);
  }
  if (diffs.empty()) {
    throw Error(ErrorCode::AllZeroDiffs,
                "all paired differences are zero; no test possible");
  }
  const std::size_t n = diffs.size();
  std::vector<double> abs_diffs(n);
  for (std::size_t i = 0; i < n; ++i) abs_diffs[i] = std::fabs(diffs[i]);
  const std::vector<std::int64_t> ranks2 = double_ranks(abs_diffs);

  std::int64_t w_plus2 = 0, w_minus2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (diffs[i] > 0) {
      w_plus2 += ranks2[i];
    } else {
      w_minus2 += ranks2[i];
    }
  }
  const std::int64_t w_min2 = std::min(w_plus2, w_minus2);

  WilcoxonResult result;
  result.statistic = static_cast<double>(w_min2) / 2.0;
  result.n_effective = n;

  if (n <= 12) {
    // Exact: the sign-assignment distribution of W+ is symmetric, so the
    // two-sided p doubles the lower tail at W = min(W+, W−).
    const double count = count_at_most(ranks2, w_min2);
    const double p = 2.0 * count / std::ldexp(1.0, static_cast<int>(n));
    result.p_value = std::min(1.0, p);
    return result;
  }

  const double dn = static_cast<double>(n);
  double tie_term = 0;
  {
    std::vector<double> sorted(abs_diffs);
    std::sort(sorted.begin(), sorted.end());
    std::size_t i = 0;
    while (i < sorted.size()) {
      std::size_t j = i;
      while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
      const double t = static_cast<double>(j - i + 1);
      tie_term += (t * t * t - t);
      i = j + 1;
    }
  }
  const double mean = dn * (dn + 1.0) / 4.0;
  const double var =
      dn * (dn + 1.0) * (2.0 * dn + 1.0) / 24.0 - tie_term / 48.0;
  if (var <= 0) {
    result.p_value = 1.0;
    return result;
  }
  const double w = static_cast<double>(w_min2) / 2.0;
  const double z = (w - mean) / std::sqrt(var);
  result.p_value = std::min(1.0, 2.0 * normal_cdf(z));
  return result;
}

}  // namespace cigrate
