#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hazard/exact_matrix.hpp"
#include "hazard/implicants.hpp"
#include "hazard/truth_table.hpp"

namespace hazard {

/*!
  \brief A communication relation matrix: rows and columns carry labels,
  each entry is the set of valid answers for that input pair, stored as a
  bitmask (bit k-1 stands for answer k).

  For the hazard-free game of f the rows are the prime implicants, the
  columns the prime implicates, and the entry is the set of coordinates
  stable in both labels and different; those entries are never empty.
*/
struct KwMatrix {
  int n_answers = 0;
  std::vector<TritWord> row_words, col_words;  // set for game matrices
  std::vector<std::string> row_labels, col_labels;
  std::vector<std::vector<uint64_t>> entries;

  size_t n_rows() const { return entries.size(); }
  size_t n_cols() const { return entries.empty() ? 0 : entries[0].size(); }
  std::string to_json(bool pretty = true) const;
};

/// The hazard-free game matrix of a non-constant function: prime
/// implicants against prime implicates, entries by stable_diff.
KwMatrix kwu_matrix(const TruthTable& f);
KwMatrix kwu_matrix(const PrimeSet& implicants, const PrimeSet& implicates);

/// Classic game matrix on the full preimages (every 1-input against every
/// 0-input, answers = differing coordinates). Provided for comparison;
/// none of the structural results asserted for the hazard-free matrix are
/// claimed for it.
KwMatrix kw_classic_matrix(const TruthTable& f);

/// Function-type relation from a 0/1 matrix: two answers, entry singleton.
KwMatrix function_matrix(const ExactMatrix& m);

/// Direct sum: labels are pairs, answers are pairs flattened as
/// (a-1)*n_b + b. The flat coordinate convention matches split_flat_answer.
KwMatrix direct_sum(const KwMatrix& a, const KwMatrix& b);

/// Repeatedly drops any row that has a distinct sub-row (another row whose
/// entries are coordinatewise subsets); optionally the symmetric column
/// reduction afterwards. Row removal provably preserves protocol
/// complexity; the column variant is applied only on request.
KwMatrix simplify_rows(const KwMatrix& m, bool also_columns = false);

struct SearchLimits {
  size_t max_labels = 26;       // rows + cols of the search root
  double budget_seconds = 0.0;  // 0 = no wall-clock budget
  bool want_tree = false;
};

struct ProtocolNode {
  bool is_leaf = false;
  int answer = 0;           // valid for leaves
  bool splits_rows = true;  // valid for internal nodes
  std::vector<int> rows, cols;  // label indices of the node's rectangle
  std::shared_ptr<const ProtocolNode> first, second;
};

/*!
  \brief Outcome of the exact protocol search: minimal leaf count and
  minimal depth over all deterministic protocols, plus (on request) one
  leaf-optimal protocol tree whose leaf rectangles partition the matrix.
*/
struct ProtocolResult {
  uint64_t leaves = 0;
  int depth = 0;
  std::shared_ptr<const ProtocolNode> tree;
  std::string to_json(bool pretty = true) const;
};

/// Exact search: a node either answers (some coordinate common to every
/// entry of its rectangle) or splits its row set or column set in two.
/// Memoized on canonical subset keys; deterministic. Throws
/// budget_exceeded past the label limit or the wall-clock budget.
ProtocolResult monorect_exact(const KwMatrix& m, const SearchLimits& lim = {});

/// Reusable search engine over one matrix; sub-rectangles share the memo.
/// Row/column subsets are bitmasks over the matrix's label indices.
class MonorectEngine {
 public:
  explicit MonorectEngine(const KwMatrix& m, const SearchLimits& lim = {});
  ~MonorectEngine();
  MonorectEngine(MonorectEngine&&) noexcept;
  MonorectEngine& operator=(MonorectEngine&&) noexcept;

  ProtocolResult solve();
  ProtocolResult solve(uint64_t row_mask, uint64_t col_mask);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// phi: rows of the inner prime replicated along the stable coordinates of
/// the outer prime, unstable rows elsewhere. Flat layout is row-major.
TritWord compose_pair_word(const TritWord& outer, const TritWord& inner, int m);

/// psi: flat coordinate k of the composed game back to (block, offset).
std::pair<int, int> split_flat_answer(int k, int m);

/*!
  \brief Verifies, over every prime pair of f and g and every valid answer
  of the composed hazard-free game on their images, that the split answer
  is valid for the direct sum of the monotone game of f and the hazard-free
  game of g. Requires monotone f.
*/
struct CompositionReductionReport {
  int n = 0, m = 0;
  bool verified = true;
  uint64_t pairs_checked = 0;
  uint64_t answers_checked = 0;
  bool images_are_implicants = true;  // extension sanity, checked for n*m <= 10
  std::string to_json(bool pretty = true) const;
};
CompositionReductionReport composition_reduction(const TruthTable& f, const TruthTable& g);

/*!
  \brief Checks the derivative-game structure at one base point: the
  derivative's matrix embeds into the deriving-prime submatrix M_x with
  identical entries, both have the same exact protocol complexity, and the
  derivative's complexity never exceeds the function's.
*/
struct DerivativeSubmatrixReport {
  int polarity = 0;  // f(x)
  bool submatrix_embeds = false;
  uint64_t monorect_mx = 0;
  uint64_t monorect_derivative = 0;
  uint64_t monorect_full = 0;
  bool monorect_equal = false;
  bool lower_bound_holds = false;
  bool all_ok() const { return submatrix_embeds && monorect_equal && lower_bound_holds; }
};
DerivativeSubmatrixReport derivative_submatrix_check(const TruthTable& f, const BitWord& x,
                                                     const SearchLimits& lim = {});

/*!
  \brief The exact-size criterion: the best hazard-derivative matches the
  function's own hazard-free complexity exactly when the function is unate.
*/
struct UnateCriterionReport {
  bool unate = false;
  uint64_t size_u = 0;
  uint64_t max_derivative_size = 0;
  BitWord argmax_x;
  bool gap_free = false;          // size_u == max_derivative_size
  bool criterion_holds = false;   // gap_free iff unate
  std::optional<NonUnateWitness> witness;
};
UnateCriterionReport unate_criterion(const TruthTable& f, const SearchLimits& lim = {});

}  // namespace hazard
