#include "hazard/exact_matrix.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>

namespace hazard {

ExactMatrix::ExactMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols) {
  if (rows == 0 || cols == 0)
    throw std::invalid_argument("ExactMatrix: dimensions must be positive");
  a_.assign(rows * cols, 0);
}

long long ExactMatrix::get(size_t i, size_t j) const {
  if (i >= rows_ || j >= cols_) throw std::out_of_range("ExactMatrix: index");
  return a_[i * cols_ + j];
}

void ExactMatrix::set(size_t i, size_t j, long long v) {
  if (i >= rows_ || j >= cols_) throw std::out_of_range("ExactMatrix: index");
  a_[i * cols_ + j] = v;
}

size_t rank_exact(const ExactMatrix& m) {
  using boost::multiprecision::cpp_int;
  const size_t R = m.rows(), C = m.cols();
  std::vector<std::vector<cpp_int>> a(R, std::vector<cpp_int>(C));
  for (size_t i = 0; i < R; ++i)
    for (size_t j = 0; j < C; ++j) a[i][j] = m.get(i, j);

  cpp_int prev = 1;
  size_t r = 0;
  for (size_t c = 0; c < C && r < R; ++c) {
    size_t p = r;
    while (p < R && a[p][c] == 0) ++p;
    if (p == R) continue;  // no pivot in this column
    if (p != r) std::swap(a[p], a[r]);

    const cpp_int& pivot = a[r][c];
    for (size_t i = r + 1; i < R; ++i) {
      for (size_t j = c + 1; j < C; ++j) {
        cpp_int num = a[i][j] * pivot - a[i][c] * a[r][j];
        cpp_int q, rem;
        divide_qr(num, prev, q, rem);
        if (rem != 0)
          throw std::logic_error("rank_exact: inexact division in elimination");
        a[i][j] = std::move(q);
      }
      a[i][c] = 0;
    }
    prev = pivot;
    ++r;
  }
  return r;
}

ExactMatrix identity_matrix(size_t n) {
  ExactMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

namespace {

// word decoded from a lexicographic index: coordinate 1 varies slowest
TritWord lex_word(int n, uint32_t idx) {
  TritWord w(n);
  for (int i = n; i >= 1; --i) {
    w = w.with(i, static_cast<Trit>(idx % 3));
    idx /= 3;
  }
  return w;
}

}  // namespace

ExactMatrix subcube_intersect_matrix(int n) {
  if (n < 1 || n > 8) throw std::invalid_argument("subcube_intersect_matrix: n in 1..8");
  uint32_t size = 1;
  for (int i = 0; i < n; ++i) size *= 3;
  std::vector<TritWord> words;
  words.reserve(size);
  for (uint32_t i = 0; i < size; ++i) words.push_back(lex_word(n, i));

  ExactMatrix m(size, size);
  for (uint32_t i = 0; i < size; ++i)
    for (uint32_t j = 0; j < size; ++j)
      m.set(i, j, stable_diff(words[i], words[j]) == 0 ? 1 : 0);
  return m;
}

ExactMatrix disjointness_matrix(int n) {
  if (n < 1 || n > 12) throw std::invalid_argument("disjointness_matrix: n in 1..12");
  const uint32_t size = uint32_t{1} << n;
  ExactMatrix m(size, size);
  for (uint32_t s = 0; s < size; ++s)
    for (uint32_t t = 0; t < size; ++t) m.set(s, t, (s & t) == 0 ? 1 : 0);
  return m;
}

ExactMatrix disjointness_matrix_l(int n, int l) {
  if (n < 1 || n > 20 || l < 0 || l > n)
    throw std::invalid_argument("disjointness_matrix_l: bad parameters");
  std::vector<uint32_t> subsets;
  for (uint32_t s = 0; s < (uint32_t{1} << n); ++s)
    if (__builtin_popcount(s) == l) subsets.push_back(s);

  ExactMatrix m(subsets.size(), subsets.size());
  for (size_t i = 0; i < subsets.size(); ++i)
    for (size_t j = 0; j < subsets.size(); ++j)
      m.set(i, j, (subsets[i] & subsets[j]) == 0 ? 1 : 0);
  return m;
}

}  // namespace hazard
