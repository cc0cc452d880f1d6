#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hazard/truth_table.hpp"

namespace hazard {

/*!
  \brief The prime implicants (polarity 1) or prime implicates (polarity 0)
  of a Boolean function.

  Every word forces the function's extension to the stated polarity and is
  minimal in the information order: turning any stable coordinate unstable
  makes the extension unstable. Words are deduplicated and kept in the
  canonical order (lexicographic with 0 < 1 < u) so that reports and
  serialized files are stable.
*/
struct PrimeSet {
  int polarity = 1;
  std::vector<TritWord> words;

  bool contains(const TritWord& w) const;
  std::string to_lines() const;  // one word per line, sorted
  static PrimeSet from_lines(int polarity, std::string_view text);
};

/// All prime implicants (b = 1) or prime implicates (b = 0) of f, by the
/// naive scan over all 3^n ternary words. A constant function of the
/// opposite value yields an empty set. Requires arity <= 13.
PrimeSet prime_set(const TruthTable& f, int b);

/// p derives x iff p precedes x in the information order.
bool derives(const TritWord& p, const BitWord& x);

/// The subset of P deriving x.
PrimeSet restrict_to(const PrimeSet& P, const BitWord& x);

/// Prime implicates of the hazard-derivative of f at x, built from the
/// function's own primes: { p + x : p in P_b | x } with b = f(x).
/// Equals prime_set(hazard_derivative(f, x), 0).
PrimeSet derivative_prime_implicates(const TruthTable& f, const BitWord& x);

/// Generators of the derivative's implicants: each prime of the opposite
/// polarity maps to replace_all(p + x, 0, u). Every generator is an
/// implicant of the derivative; the minimal ones are exactly its prime
/// implicants (some generators may be non-prime).
struct DerivativeImplicantGenerators {
  std::vector<TritWord> generators;  // canonical order, deduplicated
  PrimeSet primes;                   // the minimal generators
};
DerivativeImplicantGenerators derivative_implicant_generators(const TruthTable& f,
                                                              const BitWord& x);

/// For a prime p of f with stable coordinate i, the first (canonical order)
/// prime of the opposite polarity whose only stable-and-different
/// coordinate against p is i. Throws if p is not prime or p_i is unstable.
TritWord neighbor_witness(const TruthTable& f, const TritWord& p, int i);

/// Evidence that f is not unate in coordinate d: two prime pairs that
/// differ stably only at d, with opposite polarities there.
struct NonUnateWitness {
  int coord = 0;
  TritWord p1, p0;  // (p1)_d = 0, (p0)_d = 1
  TritWord q1, q0;  // (q1)_d = 1, (q0)_d = 0
};
std::optional<NonUnateWitness> non_unate_witness(const TruthTable& f);

/// Prime implicants of the block composition f <> g assembled from the
/// prime sets of f and g; equals prime_set(block_compose(f, g), 1).
PrimeSet composition_primes(const TruthTable& f, const TruthTable& g);

/// Greedy cover of the prime implicates (side 0) or implicants (side 1)
/// by base points: repeatedly picks the input deriving the most uncovered
/// primes. Ties broken by smallest table index.
std::vector<BitWord> greedy_prime_cover(const TruthTable& f, int side);

}  // namespace hazard
