#include "sobim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "sobim/errors.hpp"

namespace sobim {

double stable_sum(std::span<const double> xs) {
  double sum = 0.0, comp = 0.0;
  for (double x : xs) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  return sum + comp;
}

MeanStd mean_std(std::span<const double> xs) {
  MeanStd out;
  const std::size_t n = xs.size();
  if (n == 0) return out;
  out.mean = stable_sum(xs) / static_cast<double>(n);
  if (n < 2) return out;
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = xs[i] - out.mean;
    sq[i] = d * d;
  }
  out.std_dev = std::sqrt(stable_sum(sq) / static_cast<double>(n - 1));
  return out;
}

namespace {

std::vector<double> average_ranks(std::span<const double> xs) {
  const std::size_t n = xs.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return xs[i] < xs[j]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && xs[order[j + 1]] == xs[order[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;  // 1-based average rank
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = r;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double spearman(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DataError("spearman: length mismatch");
  const std::size_t n = a.size();
  if (n < 2) return 0.0;
  auto ra = average_ranks(a);
  auto rb = average_ranks(b);
  const double ma = stable_sum(ra) / static_cast<double>(n);
  const double mb = stable_sum(rb) / static_cast<double>(n);
  double num = 0.0, da = 0.0, db = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    num += (ra[i] - ma) * (rb[i] - mb);
    da += (ra[i] - ma) * (ra[i] - ma);
    db += (rb[i] - mb) * (rb[i] - mb);
  }
  if (da == 0.0 || db == 0.0) return 0.0;
  return num / std::sqrt(da * db);
}

}  // namespace sobim
