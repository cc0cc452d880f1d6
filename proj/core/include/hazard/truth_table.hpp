#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "hazard/ternary.hpp"

namespace hazard {

/*!
  \brief A Boolean function on n <= 20 variables as 2^n packed output bits.

  Index convention, fixed repo-wide: input x maps to index
  sum x_i * 2^(i-1), i.e. coordinate 1 is the least significant bit.
  A BitWord's bits() value therefore is its table index.
*/
class TruthTable {
 public:
  static constexpr int max_arity = 20;

  explicit TruthTable(int arity);  // all outputs 0
  static TruthTable from_function(int arity, const std::function<bool(BitWord)>& f);
  static TruthTable from_bit_string(int arity, std::string_view bits);  // index 0 first

  /// Text format: line "n=<arity>", then "bits=<2^n chars>" or "hexbits=<hex>".
  static TruthTable parse(std::string_view text);
  std::string to_text() const;

  int arity() const { return n_; }
  uint32_t size() const { return uint32_t{1} << n_; }
  bool get(uint32_t index) const;
  bool get(const BitWord& x) const { return get(x.bits()); }
  void set(uint32_t index, bool v);

  bool is_constant() const;
  TruthTable negated() const;

  friend bool operator==(const TruthTable&, const TruthTable&) = default;

  // Named functions used throughout analyses and tests.
  static TruthTable constant(int arity, bool v);
  static TruthTable projection(int arity, int i);
  static TruthTable and_n(int arity);
  static TruthTable or_n(int arity);
  static TruthTable xor_n(int arity);
  static TruthTable majority3();
  /// T_k^n: 1 iff at least k input coordinates are 1.
  static TruthTable threshold(int n, int k);
  /// R_{a,b}^n: 1 iff a <= weight(x) < b. Requires 0 < a < b <= n.
  static TruthTable range_fn(int n, int a, int b);
  /// mux with `sel` selector bits: arity sel + 2^sel, selectors first;
  /// output is the data coordinate indexed by the selector bits (LSB first).
  static TruthTable multiplexer(int sel);
  /// Andreev-style table on 2^k + k*m variables: the first 2^k carry a
  /// k-variable function table, the rest a k x m matrix (row-major); the
  /// output selects the table entry addressed by the row parities.
  static TruthTable andreev(int k, int m);
  /// Uniform random table from a seeded SplitMix64 stream; identical
  /// (arity, seed) pairs produce identical tables on every platform.
  static TruthTable random_fn(int arity, uint64_t seed);

 private:
  int n_ = 0;
  std::vector<uint64_t> words_;
};

/*!
  \brief Memoized hazard-free extension of a Boolean function: 3^n ternary
  outputs, materialized only for n <= 13.

  Entry order: word w maps to index sum digit_i * 3^(i-1) with digits
  0 -> 0, 1 -> 1, u -> 2.
*/
class TernaryTable {
 public:
  static constexpr int max_memo_arity = 13;

  static TernaryTable extension_of(const TruthTable& f);

  int arity() const { return n_; }
  uint32_t size() const { return size_; }
  Trit at(uint32_t ternary_index) const;
  Trit at(const TritWord& w) const { return at(index_of(w)); }

  /// True iff the table preserves stable values and is monotone w.r.t.
  /// the information order.
  bool is_natural() const;

  static uint32_t index_of(const TritWord& w);
  static TritWord word_of(int arity, uint32_t ternary_index);
  static uint32_t pow3(int k);

 private:
  TernaryTable(int arity, uint32_t size) : n_(arity), size_(size) {}
  int n_ = 0;
  uint32_t size_ = 0;
  std::vector<uint8_t> vals_;
};

/// Hazard-free extension of f at a ternary input: a stable value b iff f is
/// constant b on every resolution, u otherwise. Recursion on the first
/// unstable coordinate, stopping at the first disagreeing pair.
Trit extension_eval(const TruthTable& f, const TritWord& x);

/// The hazard-derivative of f at base point x, as a truth table over the
/// perturbation y: value 1 iff the extension of f at x + u*y is unstable.
/// Always a monotone function.
TruthTable hazard_derivative(const TruthTable& f, const BitWord& x);
TruthTable hazard_derivative(const TernaryTable& ext, const BitWord& x);

bool is_monotone(const TruthTable& f);

enum class Unateness { positive, negative, both, none };

/// Per-variable labels; "both" when f does not depend on the variable at
/// all, "none" when neither polarity works.
std::vector<Unateness> unateness(const TruthTable& f);
bool is_unate(const TruthTable& f);

/// Block composition f <> g on an n x m matrix of inputs, flattened
/// row-major: matrix coordinate (i, j) is flat coordinate (i-1)*m + j.
TruthTable block_compose(const TruthTable& f, const TruthTable& g);

/// Exhaustively checks the derivative chain rule for h = f <> g:
/// dh(X;Y) = df(g[X]; dg[X;Y]) over all Boolean X, Y.
bool chain_rule_holds(const TruthTable& f, const TruthTable& g);

/// SplitMix64 step; the pinned generator behind all seeded sampling.
uint64_t splitmix64(uint64_t& state);

}  // namespace hazard
