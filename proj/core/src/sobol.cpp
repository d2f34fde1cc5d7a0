#include "sobim/sobol.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "sobim/errors.hpp"
#include "sobim/rng.hpp"
#include "sobim/stats.hpp"

namespace sobim {

namespace {

// Gathers the bits of `mask` at the positions set in `positions` into a
// dense low-bit value (software PEXT).
std::uint32_t project(std::uint32_t mask, std::uint32_t positions) {
  std::uint32_t out = 0;
  int j = 0;
  for (std::uint32_t s = positions; s != 0; s &= s - 1, ++j) {
    if (mask & (s & ~(s - 1))) out |= 1u << j;
  }
  return out;
}

// Scatters the low bits of `value` onto the positions set in `positions`
// (software PDEP).
std::uint32_t deposit(std::uint32_t value, std::uint32_t positions) {
  std::uint32_t out = 0;
  int j = 0;
  for (std::uint32_t s = positions; s != 0; s &= s - 1, ++j) {
    if ((value >> j) & 1u) out |= s & ~(s - 1);
  }
  return out;
}

double require_variance(const SubsetSpreadTable& table) {
  const double var = moments(table).variance;
  if (var <= 0.0)
    throw DegeneracyError("sensitivity indices are undefined: var(Y) = 0");
  return var;
}

void check_candidate(const SubsetSpreadTable& table, int i) {
  if (i < 0 || i >= table.width()) throw DataError("candidate index out of range");
}

void check_subset(const SubsetSpreadTable& table, std::uint32_t subset) {
  if (subset == 0) throw DataError("subset must be non-empty");
  if (table.width() < 32 && subset >= (1u << table.width()))
    throw DataError("subset has bits outside the candidate range");
}

}  // namespace

std::vector<NodeId> SubsetSpreadTable::mask_nodes(std::uint32_t mask) const {
  std::vector<NodeId> out;
  for (int i = 0; i < width(); ++i) {
    if ((mask >> i) & 1u) out.push_back(candidates[static_cast<std::size_t>(i)]);
  }
  return out;
}

void SubsetSpreadTable::validate() const {
  const int m = width();
  if (m < 1 || m > 32) throw DataError("subset table width must be in [1, 32]");
  if (cells.size() != (std::size_t{1} << m)) throw DataError("subset table is incomplete");
  if (cells[0].mean != 0.0) throw DataError("empty-pattern cell must be exactly 0");
  std::vector<NodeId> sorted(candidates);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw DataError("candidates must be distinct");
}

SubsetSpreadTable build_subset_table(const Graph& g, std::span<const NodeId> candidates,
                                     const DiffusionConfig& cfg, SpreadCache* cache,
                                     TableBuildStats* stats) {
  const int m = static_cast<int>(candidates.size());
  if (m < 1 || m > 32) throw DataError("candidate count must be in [1, 32]");
  cfg.validate();

  SubsetSpreadTable table;
  table.candidates.assign(candidates.begin(), candidates.end());
  table.config = cfg;
  table.cells.resize(std::size_t{1} << m);
  table.validate();
  table.cells[0] = SpreadEstimate{0.0, 0.0, 0};

  const auto n_masks = static_cast<std::uint64_t>(table.cells.size());
  for (std::uint32_t mask = 1; mask < n_masks; ++mask) {
    auto nodes = table.mask_nodes(mask);
    std::sort(nodes.begin(), nodes.end());
    const std::uint64_t key = hash_ids(nodes);
    if (cache != nullptr) {
      if (const SpreadEstimate* hit = cache->find(key)) {
        table.cells[mask] = *hit;
        if (stats) ++stats->cached_cells;
        continue;
      }
    }
    table.cells[mask] = estimate_spread(g, nodes, cfg);
    if (stats) stats->simulated_rounds += cfg.rounds;
    if (cache != nullptr) cache->insert(key, table.cells[mask]);
  }
  return table;
}

Moments moments(const SubsetSpreadTable& table) {
  table.validate();
  const std::size_t n = table.cells.size();
  std::vector<double> ys(n);
  for (std::size_t i = 0; i < n; ++i) ys[i] = table.cells[i].mean;
  Moments out;
  out.mean = stable_sum(ys) / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = ys[i] - out.mean;
    ys[i] = d * d;
  }
  out.variance = stable_sum(ys) / static_cast<double>(n);
  return out;
}

double first_order_index(const SubsetSpreadTable& table, int i) {
  check_candidate(table, i);
  const double var = require_variance(table);
  const int m = table.width();
  const std::uint32_t bit = 1u << i;
  const auto n_masks = static_cast<std::uint64_t>(table.cells.size());
  double diff_sum = 0.0;
  // Iterate the 2^(m-1) patterns of the other candidates.
  for (std::uint64_t mask = 0; mask < n_masks; ++mask) {
    if (mask & bit) continue;
    diff_sum += table.cell(static_cast<std::uint32_t>(mask | bit)).mean -
                table.cell(static_cast<std::uint32_t>(mask)).mean;
  }
  const double scaled = std::ldexp(diff_sum, -m);  // diff_sum / 2^m
  return scaled * scaled / var;
}

double first_order_index_definitional(const SubsetSpreadTable& table, int i) {
  check_candidate(table, i);
  const double var = require_variance(table);
  const int m = table.width();
  const std::uint32_t bit = 1u << i;
  const auto n_masks = static_cast<std::uint64_t>(table.cells.size());
  double sum_on = 0.0, sum_off = 0.0;
  for (std::uint64_t mask = 0; mask < n_masks; ++mask) {
    if (mask & bit)
      sum_on += table.cell(static_cast<std::uint32_t>(mask)).mean;
    else
      sum_off += table.cell(static_cast<std::uint32_t>(mask)).mean;
  }
  const double half = std::ldexp(1.0, -(m - 1));
  const double cond_on = sum_on * half;
  const double cond_off = sum_off * half;
  const double grand = 0.5 * (cond_on + cond_off);
  const double v =
      0.5 * ((cond_on - grand) * (cond_on - grand) + (cond_off - grand) * (cond_off - grand));
  return v / var;
}

double subset_first_order(const SubsetSpreadTable& table, std::uint32_t subset) {
  check_subset(table, subset);
  const Moments mo = moments(table);
  if (mo.variance <= 0.0)
    throw DegeneracyError("sensitivity indices are undefined: var(Y) = 0");
  const int m = table.width();
  const int s = std::popcount(subset);
  const auto n_masks = static_cast<std::uint64_t>(table.cells.size());
  std::vector<double> setting_sum(std::size_t{1} << s, 0.0);
  for (std::uint64_t mask = 0; mask < n_masks; ++mask) {
    const auto m32 = static_cast<std::uint32_t>(mask);
    setting_sum[project(m32, subset)] += table.cell(m32).mean;
  }
  const double to_mean = std::ldexp(1.0, s - m);  // 2^(s-m)
  double acc = 0.0;
  for (double sum : setting_sum) {
    const double d = sum * to_mean - mo.mean;
    acc += d * d;
  }
  return acc / (std::ldexp(1.0, s) * mo.variance);
}

double subset_first_order_definitional(const SubsetSpreadTable& table, std::uint32_t subset) {
  check_subset(table, subset);
  const double var = require_variance(table);
  const int m = table.width();
  const int s = std::popcount(subset);
  const auto n_masks = static_cast<std::uint64_t>(table.cells.size());
  std::vector<double> cond(std::size_t{1} << s, 0.0);
  for (std::uint64_t mask = 0; mask < n_masks; ++mask) {
    const auto m32 = static_cast<std::uint32_t>(mask);
    cond[project(m32, subset)] += table.cell(m32).mean;
  }
  for (double& c : cond) c = std::ldexp(c, s - m);
  const double grand = stable_sum(cond) / static_cast<double>(cond.size());
  double v = 0.0;
  for (double c : cond) v += (c - grand) * (c - grand);
  v /= static_cast<double>(cond.size());
  return v / var;
}

double total_index(const SubsetSpreadTable& table, int i) {
  check_candidate(table, i);
  const double var = require_variance(table);
  const int m = table.width();
  const std::uint32_t bit = 1u << i;
  const auto n_masks = static_cast<std::uint64_t>(table.cells.size());
  double sq_sum = 0.0;
  for (std::uint64_t mask = 0; mask < n_masks; ++mask) {
    if (mask & bit) continue;
    const double d = table.cell(static_cast<std::uint32_t>(mask | bit)).mean -
                     table.cell(static_cast<std::uint32_t>(mask)).mean;
    sq_sum += d * d;
  }
  return std::ldexp(sq_sum, -(m + 1)) / var;
}

double total_index_definitional(const SubsetSpreadTable& table, int i) {
  check_candidate(table, i);
  const double var = require_variance(table);
  const int m = table.width();
  const std::uint32_t bit = 1u << i;
  const auto n_masks = static_cast<std::uint64_t>(table.cells.size());
  double acc = 0.0;
  for (std::uint64_t mask = 0; mask < n_masks; ++mask) {
    if (mask & bit) continue;
    const double y0 = table.cell(static_cast<std::uint32_t>(mask)).mean;
    const double y1 = table.cell(static_cast<std::uint32_t>(mask | bit)).mean;
    const double mu = 0.5 * (y0 + y1);
    acc += 0.5 * ((y0 - mu) * (y0 - mu) + (y1 - mu) * (y1 - mu));
  }
  const double expectation = std::ldexp(acc, -(m - 1));
  return expectation / var;
}

namespace {

// Pure effect of `subset`, filling `memo` with every sub-effect on the way.
double pure_effect(const SubsetSpreadTable& table, std::uint32_t subset,
                   std::unordered_map<std::uint32_t, double>& memo) {
  if (auto it = memo.find(subset); it != memo.end()) return it->second;
  double value;
  if (std::popcount(subset) == 1) {
    value = first_order_index(table, std::countr_zero(subset));
  } else {
    value = subset_first_order(table, subset);
    for (std::uint32_t sub = (subset - 1) & subset; sub != 0; sub = (sub - 1) & subset)
      value -= pure_effect(table, sub, memo);
  }
  memo.emplace(subset, value);
  return value;
}

}  // namespace

double higher_order_index(const SubsetSpreadTable& table, std::uint32_t subset) {
  check_subset(table, subset);
  if (std::popcount(subset) < 2)
    throw DataError("higher-order index requires a subset of size >= 2");
  std::unordered_map<std::uint32_t, double> memo;
  return pure_effect(table, subset, memo);
}

SobolDecomposition full_decomposition(const SubsetSpreadTable& table, int max_order) {
  table.validate();
  const int m = table.width();
  if (max_order < 1 || max_order > m) throw DataError("max_order must be in [1, width]");
  const Moments mo = moments(table);
  if (mo.variance <= 0.0)
    throw DegeneracyError("sensitivity indices are undefined: var(Y) = 0");

  SobolDecomposition out;
  out.mean_y = mo.mean;
  out.var_y = mo.variance;
  out.max_order = max_order;
  out.first_order.resize(static_cast<std::size_t>(m));
  out.total.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const double s = first_order_index(table, i);
    const double t = total_index(table, i);
    out.first_order[static_cast<std::size_t>(i)] = {s, s * mo.variance};
    out.total[static_cast<std::size_t>(i)] = {t, t * mo.variance};
  }

  std::unordered_map<std::uint32_t, double> memo;
  for (int i = 0; i < m; ++i)
    memo.emplace(1u << i, out.first_order[static_cast<std::size_t>(i)].normalized);
  const std::uint64_t limit = std::uint64_t{1} << m;
  for (int order = 2; order <= max_order; ++order) {
    // Gosper's hack: all masks of the given popcount, ascending.
    std::uint64_t mask = (std::uint64_t{1} << order) - 1;
    while (mask < limit) {
      const auto sub = static_cast<std::uint32_t>(mask);
      const double h = pure_effect(table, sub, memo);
      out.higher_order.push_back({sub, h, h * mo.variance});
      const std::uint64_t c = mask & (~mask + 1);
      const std::uint64_t r = mask + c;
      mask = (((r ^ mask) >> 2) / c) | r;
    }
  }

  if (max_order == m) {
    double sum = 0.0;
    for (const auto& s : out.first_order) sum += s.normalized;
    for (const auto& h : out.higher_order) sum += h.normalized;
    out.closure_residual = 1.0 - sum;
  }
  return out;
}

AnovaDecomposition anova_oracle(const SubsetSpreadTable& table) {
  table.validate();
  const int m = table.width();
  if (m > 10) throw DataError("anova_oracle supports width <= 10");
  const Moments mo = moments(table);
  if (mo.variance <= 0.0)
    throw DegeneracyError("sensitivity indices are undefined: var(Y) = 0");

  const auto n_masks = static_cast<std::uint64_t>(table.cells.size());
  AnovaDecomposition out;
  out.mean_y = mo.mean;
  out.var_y = mo.variance;
  out.index_by_subset.assign(n_masks, 0.0);

  // Component functions on the subset lattice, built in popcount order:
  // f_U(x) = E[Y | X_U = x] minus every lower component evaluated at the
  // induced sub-setting. Variance shares are E[f_U^2] / var(Y).
  std::vector<std::vector<double>> component(n_masks);
  component[0] = {mo.mean};
  std::vector<std::uint32_t> order(n_masks - 1);
  for (std::uint32_t u = 1; u < n_masks; ++u) order[u - 1] = u;
  std::sort(order.begin(), order.end(), [](std::uint32_t a, std::uint32_t b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });

  for (std::uint32_t u : order) {
    const int s = std::popcount(u);
    std::vector<double> f(std::size_t{1} << s, 0.0);
    for (std::uint32_t mask = 0; mask < n_masks; ++mask)
      f[project(mask, u)] += table.cell(mask).mean;
    for (double& v : f) v = std::ldexp(v, s - m);  // conditional means
    // Subtract all proper sub-components, the grand mean included.
    std::uint32_t w = (u - 1) & u;
    for (;;) {
      const auto& sub = component[w];
      for (std::uint32_t x = 0; x < f.size(); ++x) {
        const std::uint32_t full = deposit(x, u);
        f[x] -= sub[project(full, w)];
      }
      if (w == 0) break;
      w = (w - 1) & u;
    }
    double acc = 0.0;
    for (double v : f) acc += v * v;
    out.index_by_subset[u] = std::ldexp(acc, -s) / mo.variance;
    component[u] = std::move(f);
  }
  return out;
}

std::string mask_to_string(std::uint32_t mask, int width) {
  std::string s(static_cast<std::size_t>(width), '0');
  for (int i = 0; i < width; ++i) {
    if ((mask >> i) & 1u) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

std::uint32_t mask_from_string(const std::string& s) {
  if (s.empty() || s.size() > 32) throw DataError("mask string must have 1..32 characters");
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1')
      mask |= 1u << i;
    else if (s[i] != '0')
      throw DataError("mask string must contain only 0/1");
  }
  return mask;
}

void write_table_csv(std::ostream& out, const SubsetSpreadTable& table) {
  table.validate();
  out << "# candidates:";
  for (NodeId c : table.candidates) out << ' ' << c;
  out << "\nmask,mean,std,rounds\n";
  char buf[96];
  for (std::uint32_t mask = 0; mask < table.cells.size(); ++mask) {
    const auto& cell = table.cells[mask];
    std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g,%d\n",
                  mask_to_string(mask, table.width()).c_str(), cell.mean, cell.std_dev,
                  cell.rounds);
    out << buf;
  }
}

SubsetSpreadTable read_table_csv(std::istream& in) {
  SubsetSpreadTable table;
  std::string line;
  int width = -1;
  std::vector<char> seen;
  bool header_seen = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream ls(line.substr(1));
      std::string word;
      if (ls >> word && word == "candidates:") {
        NodeId id;
        while (ls >> id) table.candidates.push_back(id);
      }
      continue;
    }
    if (!header_seen) {
      if (line != "mask,mean,std,rounds")
        throw DataError("line " + std::to_string(line_no) + ": expected table header");
      header_seen = true;
      continue;
    }
    std::istringstream ls(line);
    std::string mask_s, mean_s, std_s, rounds_s;
    if (!std::getline(ls, mask_s, ',') || !std::getline(ls, mean_s, ',') ||
        !std::getline(ls, std_s, ',') || !std::getline(ls, rounds_s))
      throw DataError("line " + std::to_string(line_no) + ": expected 4 columns");
    if (width == -1) {
      width = static_cast<int>(mask_s.size());
      if (width < 1 || width > 32)
        throw DataError("line " + std::to_string(line_no) + ": bad mask width");
      table.cells.resize(std::size_t{1} << width);
      seen.assign(table.cells.size(), 0);
    } else if (static_cast<int>(mask_s.size()) != width) {
      throw DataError("line " + std::to_string(line_no) + ": inconsistent mask width");
    }
    const std::uint32_t mask = mask_from_string(mask_s);
    if (seen[mask]) throw DataError("line " + std::to_string(line_no) + ": duplicate mask");
    seen[mask] = 1;
    try {
      table.cells[mask] =
          SpreadEstimate{std::stod(mean_s), std::stod(std_s), std::stoi(rounds_s)};
    } catch (const std::exception&) {
      throw DataError("line " + std::to_string(line_no) + ": bad numeric field");
    }
  }
  if (width == -1) throw DataError("table file has no rows");
  if (std::count(seen.begin(), seen.end(), char{1}) != static_cast<long>(table.cells.size()))
    throw DataError("table file is incomplete: needs all 2^m masks");
  if (table.candidates.empty()) {
    for (int i = 0; i < width; ++i) table.candidates.push_back(i);
  }
  if (static_cast<int>(table.candidates.size()) != width)
    throw DataError("candidate list does not match mask width");
  table.validate();
  return table;
}

}  // namespace sobim
