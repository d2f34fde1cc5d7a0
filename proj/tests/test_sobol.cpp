#include <cmath>
#include <sstream>

#include "doctest.h"
#include "sobim/diffusion.hpp"
#include "sobim/errors.hpp"
#include "sobim/sobol.hpp"
#include "support/fixtures.hpp"

using namespace sobim;
using namespace sobim::testing;

namespace {

DiffusionConfig ic_cfg(int rounds, std::uint64_t seed) {
  DiffusionConfig cfg;
  cfg.model = DiffusionModel::IC;
  cfg.rounds = rounds;
  cfg.master_seed = seed;
  return cfg;
}

// Exact table over subsets of a tiny graph, cells from the live-edge oracle.
SubsetSpreadTable exact_table(const Graph& g, const std::vector<NodeId>& candidates) {
  SubsetSpreadTable t;
  t.candidates = candidates;
  t.cells.resize(std::size_t{1} << candidates.size());
  t.cells[0] = SpreadEstimate{0.0, 0.0, 0};
  for (std::uint32_t mask = 1; mask < t.cells.size(); ++mask)
    t.cells[mask] = SpreadEstimate{exact_ic_spread(g, t.mask_nodes(mask)), 0.0, 1};
  return t;
}

}  // namespace

TEST_CASE("moments over cells") {
  CHECK(moments(table_from_values({0, 1})).mean == doctest::Approx(0.5));
  CHECK(moments(table_from_values({0, 1})).variance == doctest::Approx(0.25));
  auto con = moments(table_from_values({0, 0, 0, 0}));
  CHECK(con.variance == 0.0);
  auto mo = moments(and_table());
  CHECK(mo.mean == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(mo.variance == doctest::Approx(3.0 / 16.0).epsilon(1e-15));
}

TEST_CASE("AND fixture matches hand-computed indices") {
  auto t = and_table();
  CHECK(first_order_index(t, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(first_order_index(t, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(higher_order_index(t, 0b11) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(total_index(t, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(total_index(t, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(subset_first_order(t, 0b11) == doctest::Approx(1.0).epsilon(1e-12));

  auto oracle = anova_oracle(t);
  CHECK(oracle.index_by_subset[0b01] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(oracle.index_by_subset[0b10] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(oracle.index_by_subset[0b11] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("additive fixture has no interactions") {
  auto t = additive_table({2.0, 1.0});
  CHECK(moments(t).variance == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(first_order_index(t, 0) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(first_order_index(t, 1) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(higher_order_index(t, 0b11) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(total_index(t, 0) == doctest::Approx(first_order_index(t, 0)).epsilon(1e-12));
  CHECK(total_index(t, 1) == doctest::Approx(first_order_index(t, 1)).epsilon(1e-12));

  auto t3 = additive_table({1.0, 2.0, 3.0});
  const double denom = 1.0 + 4.0 + 9.0;
  for (int i = 0; i < 3; ++i) {
    const double w2 = (i + 1.0) * (i + 1.0);
    CHECK(first_order_index(t3, i) == doctest::Approx(w2 / denom).epsilon(1e-12));
    CHECK(total_index(t3, i) == doctest::Approx(w2 / denom).epsilon(1e-12));
  }
  auto dec = full_decomposition(t3, 3);
  for (const auto& term : dec.higher_order) CHECK(std::abs(term.normalized) <= 1e-12);
  REQUIRE(dec.closure_residual.has_value());
  CHECK(std::abs(*dec.closure_residual) <= 1e-12);
}

TEST_CASE("three-way AND splits evenly across the lattice") {
  auto t = table_from_values({0, 0, 0, 0, 0, 0, 0, 1});
  for (int i = 0; i < 3; ++i) {
    CHECK(first_order_index(t, i) == doctest::Approx(1.0 / 7.0).epsilon(1e-12));
    CHECK(total_index(t, i) == doctest::Approx(4.0 / 7.0).epsilon(1e-12));
  }
  CHECK(higher_order_index(t, 0b011) == doctest::Approx(1.0 / 7.0).epsilon(1e-12));
  CHECK(higher_order_index(t, 0b111) == doctest::Approx(1.0 / 7.0).epsilon(1e-12));
  auto oracle = anova_oracle(t);
  for (std::uint32_t u = 1; u < 8; ++u)
    CHECK(oracle.index_by_subset[u] == doctest::Approx(1.0 / 7.0).epsilon(1e-12));
}

TEST_CASE("independent variable scores zero") {
  auto t = table_from_values({0, 0, 3, 3});  // depends on candidate 1 only
  CHECK(first_order_index(t, 0) == doctest::Approx(0.0));
  CHECK(total_index(t, 0) == doctest::Approx(0.0));
  CHECK(first_order_index(t, 1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("subset first order consistency") {
  auto t = random_table(4, 11);
  for (int i = 0; i < 4; ++i)
    CHECK(subset_first_order(t, 1u << i) ==
          doctest::Approx(first_order_index(t, i)).epsilon(1e-12));
  CHECK(subset_first_order(t, 0b1111) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(subset_first_order(t, 0), DataError);
}

TEST_CASE("closed forms agree with definitional forms and the oracle") {
  for (int width = 2; width <= 6; ++width) {
    for (int rep = 0; rep < 5; ++rep) {
      auto t = random_table(width, static_cast<std::uint64_t>(width * 100 + rep));
      auto oracle = anova_oracle(t);
      auto dec = full_decomposition(t, width);

      for (int i = 0; i < width; ++i) {
        const double closed = first_order_index(t, i);
        CHECK(closed == doctest::Approx(first_order_index_definitional(t, i)).epsilon(1e-11));
        CHECK(closed == doctest::Approx(oracle.index_by_subset[1u << i]).epsilon(1e-11));

        const double total = total_index(t, i);
        CHECK(total == doctest::Approx(total_index_definitional(t, i)).epsilon(1e-11));
        double oracle_total = 0.0;
        for (std::uint32_t u = 1; u < oracle.index_by_subset.size(); ++u)
          if (u >> i & 1u) oracle_total += oracle.index_by_subset[u];
        CHECK(total == doctest::Approx(oracle_total).epsilon(1e-11));
        CHECK(total >= closed - 1e-9);
      }
      for (const auto& term : dec.higher_order) {
        CHECK(subset_first_order(t, term.subset) ==
              doctest::Approx(subset_first_order_definitional(t, term.subset)).epsilon(1e-11));
        CHECK(term.normalized ==
              doctest::Approx(oracle.index_by_subset[term.subset]).epsilon(1e-11));
      }
      double closure = 0.0;
      for (const auto& s : dec.first_order) closure += s.normalized;
      for (const auto& h : dec.higher_order) closure += h.normalized;
      CHECK(closure == doctest::Approx(1.0).epsilon(1e-10));
      REQUIRE(dec.closure_residual.has_value());
      CHECK(std::abs(*dec.closure_residual) <= 1e-9);

      double oracle_sum = 0.0;
      for (double v : oracle.index_by_subset) oracle_sum += v;
      CHECK(oracle_sum == doctest::Approx(1.0).epsilon(1e-11));
    }
  }
}

TEST_CASE("relabeling candidates permutes the indices consistently") {
  auto t = random_table(4, 33);
  // Swap candidates 1 and 3 (bits 1 and 3 of every mask).
  SubsetSpreadTable p = t;
  std::swap(p.candidates[1], p.candidates[3]);
  for (std::uint32_t mask = 0; mask < t.cells.size(); ++mask) {
    std::uint32_t swapped = mask & ~0b1010u;
    if (mask & 0b0010u) swapped |= 0b1000u;
    if (mask & 0b1000u) swapped |= 0b0010u;
    p.cells[swapped] = t.cells[mask];
  }
  CHECK(first_order_index(p, 1) == doctest::Approx(first_order_index(t, 3)).epsilon(1e-12));
  CHECK(first_order_index(p, 3) == doctest::Approx(first_order_index(t, 1)).epsilon(1e-12));
  CHECK(total_index(p, 1) == doctest::Approx(total_index(t, 3)).epsilon(1e-12));
  CHECK(higher_order_index(p, 0b0011) ==
        doctest::Approx(higher_order_index(t, 0b1001)).epsilon(1e-12));
}

TEST_CASE("absolute and signed difference forms coincide on monotone tables") {
  auto t = exact_table(star_graph(3, 0.5), {0, 1, 2});
  const int m = t.width();
  const double var = moments(t).variance;
  for (int i = 0; i < m; ++i) {
    double abs_sum = 0.0;
    for (std::uint32_t mask = 0; mask < t.cells.size(); ++mask) {
      if (mask >> i & 1u) continue;
      abs_sum += std::abs(t.cell(mask | (1u << i)).mean - t.cell(mask).mean);
    }
    const double scaled = std::ldexp(abs_sum, -m);
    CHECK(scaled * scaled / var == doctest::Approx(first_order_index(t, i)).epsilon(1e-12));
  }
}

TEST_CASE("degenerate tables raise instead of dividing by zero") {
  auto t = table_from_values({0, 0, 0, 0});
  CHECK_THROWS_AS(first_order_index(t, 0), DegeneracyError);
  CHECK_THROWS_AS(total_index(t, 0), DegeneracyError);
  CHECK_THROWS_AS(full_decomposition(t, 2), DegeneracyError);
  CHECK_THROWS_AS(anova_oracle(t), DegeneracyError);
}

TEST_CASE("argument validation") {
  auto t = random_table(3, 5);
  CHECK_THROWS_AS(first_order_index(t, 3), DataError);
  CHECK_THROWS_AS(higher_order_index(t, 0b001), DataError);
  CHECK_THROWS_AS(full_decomposition(t, 0), DataError);
  CHECK_THROWS_AS(full_decomposition(t, 4), DataError);
  CHECK_THROWS_AS(anova_oracle(random_table(11, 1)), DataError);
}

TEST_CASE("build_subset_table") {
  SUBCASE("zero-weight cells equal the pattern size exactly") {
    Graph g = path_graph(6, 0.0);
    auto t = build_subset_table(g, std::vector<NodeId>{0, 2, 4}, ic_cfg(50, 1));
    REQUIRE(t.cells.size() == 8);
    for (std::uint32_t mask = 0; mask < 8; ++mask) {
      CHECK(t.cell(mask).mean == static_cast<double>(std::popcount(mask)));
      CHECK(t.cell(mask).std_dev == 0.0);
    }
  }
  SUBCASE("round accounting and the free empty cell") {
    Graph g = path_graph(6, 0.3);
    TableBuildStats stats;
    auto t = build_subset_table(g, std::vector<NodeId>{0, 2, 4}, ic_cfg(10, 1), nullptr, &stats);
    CHECK(stats.simulated_rounds == 7 * 10);
    CHECK(t.cell(0).mean == 0.0);
    CHECK(t.cell(0).rounds == 0);
  }
  SUBCASE("width-1 table") {
    Graph g = star_graph(4, 0.5);
    auto t = build_subset_table(g, std::vector<NodeId>{0}, ic_cfg(400, 9));
    REQUIRE(t.cells.size() == 2);
    CHECK(t.cell(1).mean > 1.0);
  }
  SUBCASE("cache replays cells bit-identically") {
    Graph g = star_graph(5, 0.4);
    const std::vector<NodeId> cands{0, 1, 3};
    SpreadCache cache;
    TableBuildStats first, second;
    auto a = build_subset_table(g, cands, ic_cfg(30, 4), &cache, &first);
    auto b = build_subset_table(g, cands, ic_cfg(30, 4), &cache, &second);
    CHECK(first.simulated_rounds == 7 * 30);
    CHECK(second.simulated_rounds == 0);
    CHECK(second.cached_cells == 7);
    for (std::uint32_t mask = 0; mask < a.cells.size(); ++mask) {
      CHECK(a.cell(mask).mean == b.cell(mask).mean);
      CHECK(a.cell(mask).std_dev == b.cell(mask).std_dev);
    }
    // A cached sub-table equals a fresh build of the smaller candidate list.
    TableBuildStats third;
    auto c = build_subset_table(g, std::vector<NodeId>{0, 1}, ic_cfg(30, 4), &cache, &third);
    CHECK(third.simulated_rounds == 0);
    auto fresh = build_subset_table(g, std::vector<NodeId>{0, 1}, ic_cfg(30, 4));
    for (std::uint32_t mask = 0; mask < c.cells.size(); ++mask)
      CHECK(c.cell(mask).mean == fresh.cell(mask).mean);
  }
  SUBCASE("built cells respect the pattern-size and node-count bounds") {
    Graph g = two_cliques(4, 3, 0.6);
    auto t = build_subset_table(g, std::vector<NodeId>{0, 4, 2}, ic_cfg(60, 6));
    for (std::uint32_t mask = 1; mask < t.cells.size(); ++mask) {
      CHECK(t.cell(mask).mean >= static_cast<double>(std::popcount(mask)));
      CHECK(t.cell(mask).mean <= 7.0);
    }
  }
  SUBCASE("candidate validation") {
    Graph g = path_graph(4, 0.5);
    CHECK_THROWS_AS(build_subset_table(g, std::vector<NodeId>{}, ic_cfg(10, 1)), DataError);
    CHECK_THROWS_AS(build_subset_table(g, std::vector<NodeId>{0, 0}, ic_cfg(10, 1)), DataError);
  }
}

TEST_CASE("table CSV serialization") {
  SUBCASE("mask strings put candidate 0 first") {
    CHECK(mask_to_string(0b001, 3) == "100");
    CHECK(mask_to_string(0b100, 3) == "001");
    CHECK(mask_from_string("100") == 0b001);
    CHECK(mask_from_string("011") == 0b110);
    CHECK_THROWS_AS(mask_from_string("10x"), DataError);
  }
  SUBCASE("write/read round trip") {
    Graph g = star_graph(4, 0.5);
    auto t = build_subset_table(g, std::vector<NodeId>{0, 2, 4}, ic_cfg(25, 3));
    std::ostringstream out;
    write_table_csv(out, t);
    std::istringstream in(out.str());
    auto back = read_table_csv(in);
    CHECK(back.candidates == t.candidates);
    REQUIRE(back.cells.size() == t.cells.size());
    for (std::uint32_t mask = 0; mask < t.cells.size(); ++mask) {
      CHECK(back.cell(mask).mean == t.cell(mask).mean);
      CHECK(back.cell(mask).std_dev == t.cell(mask).std_dev);
      CHECK(back.cell(mask).rounds == t.cell(mask).rounds);
    }
  }
  SUBCASE("incomplete tables are rejected") {
    std::istringstream in("mask,mean,std,rounds\n00,0,0,0\n10,1,0,5\n01,1,0,5\n");
    CHECK_THROWS_AS(read_table_csv(in), DataError);
  }
  SUBCASE("candidates default to 0..m-1") {
    std::istringstream in("mask,mean,std,rounds\n0,0,0,0\n1,2.5,0.1,10\n");
    auto t = read_table_csv(in);
    CHECK(t.candidates == std::vector<NodeId>{0});
    CHECK(t.cell(1).mean == doctest::Approx(2.5));
  }
}
