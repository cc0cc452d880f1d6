#pragma once

#include <cstdint>
#include <vector>

#include "hazard/ternary.hpp"

namespace hazard {

/// Dense integer matrix for exact rank computation. Entries stay machine
/// integers at the interface; the elimination works in arbitrary precision
/// internally, so no intermediate overflow and no floating point anywhere.
class ExactMatrix {
 public:
  ExactMatrix(size_t rows, size_t cols);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  long long get(size_t i, size_t j) const;
  void set(size_t i, size_t j, long long v);

 private:
  size_t rows_, cols_;
  std::vector<long long> a_;
};

/// Rank over the rationals via fraction-free (Bareiss) elimination.
size_t rank_exact(const ExactMatrix& m);

ExactMatrix identity_matrix(size_t n);

/// 3^n x 3^n 0/1 matrix indexed by ternary words in lexicographic order
/// (0 < 1 < u, coordinate 1 compared first); entry 1 iff the two words
/// have a common resolution.
ExactMatrix subcube_intersect_matrix(int n);

/// 2^n x 2^n 0/1 matrix over all subsets of [n] by binary encoding;
/// entry 1 iff the subsets are disjoint.
ExactMatrix disjointness_matrix(int n);

/// Square 0/1 matrix over all l-subsets of [n] (masks ascending);
/// entry 1 iff disjoint.
ExactMatrix disjointness_matrix_l(int n, int l);

}  // namespace hazard
