#pragma once

#include <bit>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "sobim/diffusion.hpp"

namespace sobim {

// The spread of a candidate seed list is modeled as a set function
// Y : {0,1}^m -> R over binary inclusion variables, one per candidate, each
// uniform on {0,1}. All sensitivity indices below are variance shares of
// that function; the diffusion noise is averaged out per cell beforehand.
//
// Inclusion patterns are 32-bit masks against an ordered candidate list:
// bit i set <=> candidates[i] is seeded. Functions taking a mask validate it
// against the table's width.

/// Averaged spread for every one of the 2^m inclusion patterns over m
/// candidates. cell(0) is pinned to exactly zero without simulation: an
/// empty seed set activates nothing.
struct SubsetSpreadTable {
  std::vector<NodeId> candidates;     // length m
  std::vector<SpreadEstimate> cells;  // size 2^m, indexed by mask bits
  DiffusionConfig config;             // provenance

  int width() const { return static_cast<int>(candidates.size()); }
  const SpreadEstimate& cell(std::uint32_t mask) const { return cells[mask]; }
  std::vector<NodeId> mask_nodes(std::uint32_t mask) const;
  void validate() const;  // structural completeness; throws DataError
};

/// Memo of spread estimates keyed by seed-set content (canonical hash of the
/// sorted node ids). Because per-round RNG seeds are also content-keyed,
/// a cached cell is bit-identical to a freshly simulated one.
class SpreadCache {
 public:
  const SpreadEstimate* find(std::uint64_t key) const {
    auto it = map_.find(key);
    return it == map_.end() ? nullptr : &it->second;
  }
  void insert(std::uint64_t key, const SpreadEstimate& e) { map_.emplace(key, e); }
  std::size_t size() const { return map_.size(); }

 private:
  std::unordered_map<std::uint64_t, SpreadEstimate> map_;
};

struct TableBuildStats {
  std::int64_t simulated_rounds = 0;
  std::int64_t cached_cells = 0;
};

/// Estimates the spread of every non-empty candidate subset (cfg.rounds
/// cascades each, per-mask seed streams derived from the subset's content).
/// Requires 1 <= |candidates| <= 32, candidates distinct and valid.
SubsetSpreadTable build_subset_table(const Graph& g, std::span<const NodeId> candidates,
                                     const DiffusionConfig& cfg, SpreadCache* cache = nullptr,
                                     TableBuildStats* stats = nullptr);

struct Moments {
  double mean = 0.0;
  double variance = 0.0;  // population variance over the 2^m equiprobable cells
};
Moments moments(const SubsetSpreadTable& table);

// --- Sensitivity indices -------------------------------------------------
//
// Every index has two implementations: a closed form specialized to binary
// inputs (the production path) and a definitional conditional-moment form.
// They agree to rounding on any complete table; tests enforce this.
//
// The closed first-order form uses the *signed* sum of per-pattern
// differences. An absolute-difference variant coincides with it only when Y
// is monotone; the signed form is the one that equals the variance ratio.

/// First-order index S_i: share of Var(Y) explained by candidate i alone.
/// Closed form: ((sum over patterns of Y[bit i on] - Y[bit i off]) / 2^m)^2
/// / Var(Y). Throws DegeneracyError when Var(Y) = 0.
double first_order_index(const SubsetSpreadTable& table, int i);
/// Same quantity as Var_{X_i}(E[Y | X_i]) / Var(Y), evaluated literally.
double first_order_index_definitional(const SubsetSpreadTable& table, int i);

/// First-order index of a candidate subset: Var(E[Y | subset]) / Var(Y),
/// via the closed per-pattern form. subset must be non-empty.
double subset_first_order(const SubsetSpreadTable& table, std::uint32_t subset);
double subset_first_order_definitional(const SubsetSpreadTable& table, std::uint32_t subset);

/// Pure interaction index of subset (|subset| >= 2): the subset's
/// first-order index minus every lower-order effect inside it, computed by
/// recursion over the sub-lattice. May be negative on noisy tables; values
/// are reported as-is.
double higher_order_index(const SubsetSpreadTable& table, std::uint32_t subset);

/// Total index S^T_i: share of Var(Y) lost when candidate i's inclusion is
/// frozen; first-order plus every interaction involving i. Closed form:
/// sum of squared per-pattern differences / (2^(m+1) Var(Y)).
double total_index(const SubsetSpreadTable& table, int i);
double total_index_definitional(const SubsetSpreadTable& table, int i);

struct IndexValue {
  double normalized = 0.0;    // share of Var(Y)
  double contribution = 0.0;  // normalized * Var(Y)
};

struct InteractionTerm {
  std::uint32_t subset = 0;
  double normalized = 0.0;
  double contribution = 0.0;
};

struct SobolDecomposition {
  double mean_y = 0.0;
  double var_y = 0.0;
  std::vector<IndexValue> first_order;         // per candidate
  std::vector<IndexValue> total;               // per candidate
  std::vector<InteractionTerm> higher_order;   // orders 2..max_order, by (order, mask)
  int max_order = 2;
  // 1 - sum of all indices; present only for the full-order decomposition.
  std::optional<double> closure_residual;
};

/// All first-order and total indices plus interaction terms up to max_order.
/// max_order must lie in [1, width]. Throws DegeneracyError when Var(Y) = 0.
SobolDecomposition full_decomposition(const SubsetSpreadTable& table, int max_order);

/// Brute-force functional ANOVA over the full subset lattice (width <= 10):
/// conditional-mean tables and Möbius subtraction only, no closed index
/// forms. Independent verification route for everything above.
struct AnovaDecomposition {
  double mean_y = 0.0;
  double var_y = 0.0;
  std::vector<double> index_by_subset;  // size 2^m; entry 0 is 0
};
AnovaDecomposition anova_oracle(const SubsetSpreadTable& table);

// --- Serialization --------------------------------------------------------

/// Mask rendered with one character per candidate, candidate 0 first.
std::string mask_to_string(std::uint32_t mask, int width);
std::uint32_t mask_from_string(const std::string& s);  // throws DataError

/// CSV with header "mask,mean,std,rounds", one row per pattern in mask
/// order, preceded by a "# candidates: ..." comment line.
void write_table_csv(std::ostream& out, const SubsetSpreadTable& table);

/// Parses the format above. The candidates comment is optional; without it
/// candidates default to 0..m-1. Requires all 2^m rows.
SubsetSpreadTable read_table_csv(std::istream& in);

}  // namespace sobim
