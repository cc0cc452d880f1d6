#pragma once

#include <cstdint>
#include <iterator>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hazard {

/*!
  \brief Kleene's strong three-valued logic.

  The Boolean values 0 and 1 are "stable"; u models an undefined or
  metastable signal. Coordinates of words are 1-indexed throughout the
  library, and the string encoding of a word lists coordinate 1 first.
*/
enum class Trit : uint8_t { zero = 0, one = 1, unstable = 2 };

constexpr bool is_stable(Trit t) { return t != Trit::unstable; }

Trit trit_not(Trit a);
Trit trit_and(Trit a, Trit b);
Trit trit_or(Trit a, Trit b);

/// Ternary xor: stable when both arguments are stable, u otherwise.
Trit trit_xor(Trit a, Trit b);

enum class GateOp { and_gate, or_gate, not_gate };

/// Unary form; throws std::invalid_argument unless op is not_gate.
Trit gate_eval(GateOp op, Trit a);
/// Binary form; throws std::invalid_argument for not_gate.
Trit gate_eval(GateOp op, Trit a, Trit b);

char to_char(Trit t);
Trit trit_from_char(char c);

/// A fully stable word over {0,1}. Doubles as a truth-table index:
/// coordinate i is bit (i-1) of bits(), so coordinate 1 is least significant.
class BitWord {
 public:
  BitWord() = default;
  BitWord(int length, uint32_t bits);
  static BitWord parse(std::string_view s);

  int length() const { return n_; }
  uint32_t bits() const { return bits_; }
  bool get(int i) const;               // 1-indexed
  BitWord with(int i, bool v) const;   // 1-indexed
  int weight() const;
  std::string str() const;

  friend bool operator==(const BitWord&, const BitWord&) = default;

 private:
  int n_ = 0;
  uint32_t bits_ = 0;
};

/*!
  \brief A fixed-length word over {0, u, 1}.

  The universal input/pattern type: ternary inputs, implicants and
  implicates are all TritWords. Packed two bits per coordinate
  (00 = 0, 01 = 1, 10 = u; 11 is invalid and rejected at construction).
  Immutable after construction.
*/
class TritWord {
 public:
  static constexpr int max_length = 32;

  TritWord() = default;
  explicit TritWord(int length);  // all coordinates 0
  static TritWord parse(std::string_view s);
  static TritWord from_bits(const BitWord& w);
  static TritWord all_unstable(int length);

  int length() const { return n_; }
  Trit get(int i) const;                 // 1-indexed; throws out_of_range
  TritWord with(int i, Trit t) const;    // 1-indexed
  bool all_stable() const;
  int first_unstable() const;            // coordinate, or 0 when stable
  int unstable_count() const;
  BitWord to_bits() const;               // requires all_stable()
  std::string str() const;
  uint64_t raw() const { return packed_; }

  friend bool operator==(const TritWord&, const TritWord&) = default;

 private:
  TritWord(int length, uint64_t packed) : n_(length), packed_(packed) {}
  int n_ = 0;
  uint64_t packed_ = 0;
};

/// Canonical order used for all reports and serialized sets:
/// lexicographic by coordinate with 0 < 1 < u; shorter words first.
bool canonical_less(const TritWord& a, const TritWord& b);

/// The information order: u below both stable values, 0 and 1 incomparable.
/// True iff x_i precedes-or-equals y_i in every coordinate.
bool preceq(const TritWord& x, const TritWord& y);

TritWord word_xor(const TritWord& x, const TritWord& y);
TritWord replace(const TritWord& x, int i, Trit b);
TritWord replace_all(const TritWord& x, Trit s, Trit b);

/// x + u*y: coordinate i becomes u where y_i = 1, keeps x_i where y_i = 0.
TritWord perturb(const BitWord& x, const BitWord& y);

BitWord max_resolution(const TritWord& x);  // every u -> 1
BitWord min_resolution(const TritWord& x);  // every u -> 0

/// Coordinates stable in both words and different, as a mask
/// (bit i-1 stands for coordinate i). Equals { i : (x+y)_i = 1 }.
uint32_t stable_diff(const TritWord& x, const TritWord& y);

std::vector<int> mask_to_coords(uint32_t mask);

/// Number of coordinates equal to 1.
int weight(const TritWord& x);

uint64_t resolution_count(const TritWord& x);  // 2^(#u)

/*!
  \brief Lazy range over all resolutions of a ternary word.

  Yields exactly 2^(#u) distinct BitWords, each above the word in the
  information order, in lexicographic order over the u-positions (the
  completed words come out in string order). Lazy so that callers can
  stop at the first disagreeing pair.
*/
class Resolutions {
 public:
  explicit Resolutions(const TritWord& x);

  class iterator {
   public:
    using value_type = BitWord;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;

    BitWord operator*() const;
    iterator& operator++();
    iterator operator++(int);
    friend bool operator==(const iterator& a, const iterator& b) {
      return a.counter_ == b.counter_;
    }

   private:
    friend class Resolutions;
    const Resolutions* owner_ = nullptr;
    uint64_t counter_ = 0;
  };

  iterator begin() const;
  iterator end() const;
  uint64_t size() const { return uint64_t{1} << upos_.size(); }

 private:
  int n_ = 0;
  uint32_t base_ = 0;            // stable coordinates, bit i-1 = coordinate i
  std::vector<int> upos_;        // unstable coordinates, ascending
};

inline Resolutions resolutions(const TritWord& x) { return Resolutions(x); }

}  // namespace hazard
