#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hazard/implicants.hpp"
#include "hazard/truth_table.hpp"

namespace hazard {

/*!
  \brief An immutable De Morgan formula: a tree over AND/OR/NOT, variables
  and constants.

  Size is the number of leaves (variables and constants); depth counts the
  binary gates on the longest root-to-leaf path, NOT gates are free. AND
  and OR are strictly binary; the n-ary builders produce balanced trees.
  Trees share subterms structurally, so copies are cheap.
*/
class Formula {
 public:
  enum class Kind { variable, constant, not_gate, and_gate, or_gate };

  Formula() : Formula(constant(false)) {}

  static Formula variable(int index);  // 1-indexed
  static Formula constant(bool v);
  static Formula negation(const Formula& f);
  static Formula conj(const Formula& a, const Formula& b);
  static Formula disj(const Formula& a, const Formula& b);
  static Formula conj_n(std::span<const Formula> fs);  // balanced; empty -> 1
  static Formula disj_n(std::span<const Formula> fs);  // balanced; empty -> 0

  Kind kind() const { return node_->kind; }
  int var_index() const { return node_->var; }
  bool const_value() const { return node_->cval; }
  Formula child() const;  // of a NOT
  Formula left() const;
  Formula right() const;

  int size() const { return node_->size; }
  int depth() const { return node_->depth; }
  bool is_monotone() const { return node_->monotone; }
  int max_var() const { return node_->max_var; }

  /// Bottom-up evaluation with the extended gates. On a fully stable input
  /// this is ordinary Boolean evaluation.
  Trit eval(const TritWord& x) const;
  bool eval_bool(const BitWord& x) const;
  TruthTable table(int arity) const;

  /// Replaces every variable leaf by subst(index). Used by the synthesis
  /// routines to plug literals or whole blocks into a template.
  Formula substitute(const std::function<Formula(int)>& subst) const;

  std::string to_sexpr() const;
  /// Parses s-expressions like "(or (and x1 (not x2)) x3)"; "0" and "1"
  /// are constants. and/or accept two or more arguments and fold balanced.
  static Formula parse_sexpr(std::string_view text);

  bool same_tree(const Formula& other) const;

 private:
  struct Node {
    Kind kind;
    int var = 0;
    bool cval = false;
    std::shared_ptr<const Node> a, b;
    int size = 1;
    int depth = 0;
    bool monotone = true;
    int max_var = 0;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/*!
  \brief Result of scanning a formula for hazards.

  A witness is a ternary input where the formula evaluates to u although
  the stable input bits already force the output.
*/
struct HazardReport {
  int arity = 0;
  bool hazard_free = true;
  std::vector<TritWord> witnesses;  // sorted canonically
  uint64_t inputs_checked = 0;
  bool exhaustive = true;
  TruthTable function{1};  // the Boolean function the formula computes
};

/// Scans all 3^arity ternary inputs. Requires arity <= 13; use the sampled
/// variant beyond that.
HazardReport hazard_check(const Formula& f, int arity);
HazardReport hazard_check_sampled(const Formula& f, int arity, int samples, uint64_t seed);

/// OR of AND-terms, one term per implicant, one literal per stable
/// coordinate (positive for 1, negated for 0). Balanced on both levels.
/// An empty set yields the constant of the opposite polarity.
Formula dnf_from_primes(const PrimeSet& implicants);
/// AND of OR-clauses from the prime implicates (dual literal convention).
Formula cnf_from_primes(const PrimeSet& implicates);

/// Applies the hazard-preserving absorption rules and(0,.) -> 0,
/// and(1,A) -> A, or(1,.) -> 1, or(0,A) -> A and folds NOT of constants.
/// Each rule is exact on ternary values, so the computed extension is
/// unchanged.
Formula fold_constants(const Formula& f);

/// Hazard-free formula for the multiplexer with n selector bits
/// (variables: selectors 1..n, then 2^n data inputs). Achieves 2*3^n - 1
/// leaves. Requires n <= 4.
Formula mux_hazard_free(int n);

/// Hazard-free formula for an arbitrary f: the multiplexer construction
/// with f's table hardwired into the data inputs, then constant-folded.
Formula universal_hazard_free(const TruthTable& f);

enum class CoverSide { implicates, implicants };

/// Builds a hazard-free formula from monotone formulas for the
/// hazard-derivatives at the given base points. The base points must
/// jointly derive every prime implicate (side implicates, points in
/// f^-1(0)) or every prime implicant (side implicants, points in f^-1(1));
/// otherwise throws std::invalid_argument. The result computes f and its
/// size is the sum of the constituent monotone formula sizes.
Formula derivative_cover_synthesis(const TruthTable& f,
                                   const std::vector<BitWord>& base_points,
                                   CoverSide side);

/// Monotone threshold formula: balanced DNF over all weight-k primes.
Formula threshold_formula(int n, int k);
/// Range formula T_a AND NOT T_b. Requires 0 < a < b <= n.
Formula range_formula(int n, int a, int b);

/// Monotone formula for the hazard-derivative of f composed with m-bit
/// parity blocks, at base point (f_bits, X): per-block ORs of the
/// perturbation rows feed a monotone formula for the multiplexer
/// derivative. Variables: t (2^k of them), then Y row-major (k*m).
struct AndreevDerivative {
  Formula formula;
  int achieved_size = 0;
  int nominal_size = 0;  // (k+1)*2^k + k*m
};
AndreevDerivative andreev_derivative(int k, int m, const TruthTable& f, const BitWord& X);

}  // namespace hazard
