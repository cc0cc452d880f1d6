#include "hazard/kw.hpp"

#include <algorithm>
#include <unordered_map>

#include <json.hpp>

#include "hazard/errors.hpp"

namespace hazard {

using nlohmann::json;

namespace {

json entry_to_coords(uint64_t mask) {
  json arr = json::array();
  for (int k = 1; mask != 0; ++k, mask >>= 1)
    if (mask & 1u) arr.push_back(k);
  return arr;
}

}  // namespace

std::string KwMatrix::to_json(bool pretty) const {
  json j;
  j["n_answers"] = n_answers;
  j["rows"] = row_labels;
  j["cols"] = col_labels;
  json entries_json = json::array();
  for (const auto& row : entries) {
    json r = json::array();
    for (uint64_t e : row) r.push_back(entry_to_coords(e));
    entries_json.push_back(std::move(r));
  }
  j["entries"] = std::move(entries_json);
  return pretty ? j.dump(2) : j.dump();
}

KwMatrix kwu_matrix(const PrimeSet& implicants, const PrimeSet& implicates) {
  if (implicants.polarity != 1 || implicates.polarity != 0)
    throw std::invalid_argument("kwu_matrix: polarity mismatch");
  if (implicants.words.empty() || implicates.words.empty())
    throw std::invalid_argument("kwu_matrix: empty prime set (constant function?)");

  KwMatrix m;
  m.n_answers = implicants.words[0].length();
  m.row_words = implicants.words;
  m.col_words = implicates.words;
  for (const auto& w : m.row_words) m.row_labels.push_back(w.str());
  for (const auto& w : m.col_words) m.col_labels.push_back(w.str());
  m.entries.resize(m.row_words.size());
  for (size_t i = 0; i < m.row_words.size(); ++i) {
    m.entries[i].resize(m.col_words.size());
    for (size_t j = 0; j < m.col_words.size(); ++j) {
      uint64_t e = stable_diff(m.row_words[i], m.col_words[j]);
      if (e == 0)
        throw std::logic_error(
            "kwu_matrix: implicant and implicate share a resolution");
      m.entries[i][j] = e;
    }
  }
  return m;
}

KwMatrix kwu_matrix(const TruthTable& f) {
  if (f.is_constant()) throw std::invalid_argument("kwu_matrix: constant function");
  return kwu_matrix(prime_set(f, 1), prime_set(f, 0));
}

KwMatrix kw_classic_matrix(const TruthTable& f) {
  if (f.is_constant())
    throw std::invalid_argument("kw_classic_matrix: constant function");
  KwMatrix m;
  m.n_answers = f.arity();
  for (uint32_t v = 0; v < f.size(); ++v) {
    TritWord w = TritWord::from_bits(BitWord(f.arity(), v));
    if (f.get(v))
      m.row_words.push_back(w);
    else
      m.col_words.push_back(w);
  }
  for (const auto& w : m.row_words) m.row_labels.push_back(w.str());
  for (const auto& w : m.col_words) m.col_labels.push_back(w.str());
  m.entries.resize(m.row_words.size());
  for (size_t i = 0; i < m.row_words.size(); ++i) {
    m.entries[i].resize(m.col_words.size());
    for (size_t j = 0; j < m.col_words.size(); ++j)
      m.entries[i][j] = stable_diff(m.row_words[i], m.col_words[j]);
  }
  return m;
}

KwMatrix function_matrix(const ExactMatrix& vals) {
  KwMatrix m;
  m.n_answers = 2;
  m.entries.resize(vals.rows());
  for (size_t i = 0; i < vals.rows(); ++i) {
    m.row_labels.push_back(std::to_string(i));
    m.entries[i].resize(vals.cols());
    for (size_t j = 0; j < vals.cols(); ++j) {
      long long v = vals.get(i, j);
      if (v != 0 && v != 1)
        throw std::invalid_argument("function_matrix: entries must be 0/1");
      m.entries[i][j] = uint64_t{1} << v;
    }
  }
  for (size_t j = 0; j < vals.cols(); ++j) m.col_labels.push_back(std::to_string(j));
  return m;
}

KwMatrix direct_sum(const KwMatrix& a, const KwMatrix& b) {
  if (a.n_answers * b.n_answers > 64)
    throw std::invalid_argument("direct_sum: answer universe exceeds 64");
  KwMatrix m;
  m.n_answers = a.n_answers * b.n_answers;
  for (size_t i = 0; i < a.n_rows(); ++i)
    for (size_t k = 0; k < b.n_rows(); ++k)
      m.row_labels.push_back(a.row_labels[i] + "|" + b.row_labels[k]);
  for (size_t j = 0; j < a.n_cols(); ++j)
    for (size_t l = 0; l < b.n_cols(); ++l)
      m.col_labels.push_back(a.col_labels[j] + "|" + b.col_labels[l]);

  m.entries.resize(m.row_labels.size());
  for (size_t i = 0; i < a.n_rows(); ++i)
    for (size_t k = 0; k < b.n_rows(); ++k) {
      auto& row = m.entries[i * b.n_rows() + k];
      row.resize(m.col_labels.size());
      for (size_t j = 0; j < a.n_cols(); ++j)
        for (size_t l = 0; l < b.n_cols(); ++l) {
          uint64_t mask = 0;
          for (int p = 0; p < a.n_answers; ++p) {
            if (!((a.entries[i][j] >> p) & 1u)) continue;
            for (int q = 0; q < b.n_answers; ++q)
              if ((b.entries[k][l] >> q) & 1u)
                mask |= uint64_t{1} << (p * b.n_answers + q);
          }
          row[j * b.n_cols() + l] = mask;
        }
    }
  return m;
}

namespace {

bool subset(uint64_t a, uint64_t b) { return (a & ~b) == 0; }

KwMatrix select_rows(const KwMatrix& m, const std::vector<size_t>& keep) {
  KwMatrix out;
  out.n_answers = m.n_answers;
  out.col_words = m.col_words;
  out.col_labels = m.col_labels;
  for (size_t r : keep) {
    if (!m.row_words.empty()) out.row_words.push_back(m.row_words[r]);
    out.row_labels.push_back(m.row_labels[r]);
    out.entries.push_back(m.entries[r]);
  }
  return out;
}

KwMatrix transpose(const KwMatrix& m) {
  KwMatrix out;
  out.n_answers = m.n_answers;
  out.row_words = m.col_words;
  out.col_words = m.row_words;
  out.row_labels = m.col_labels;
  out.col_labels = m.row_labels;
  out.entries.assign(m.n_cols(), std::vector<uint64_t>(m.n_rows()));
  for (size_t i = 0; i < m.n_rows(); ++i)
    for (size_t j = 0; j < m.n_cols(); ++j) out.entries[j][i] = m.entries[i][j];
  return out;
}

KwMatrix drop_super_rows(const KwMatrix& m) {
  std::vector<size_t> keep(m.n_rows());
  for (size_t i = 0; i < keep.size(); ++i) keep[i] = i;

  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t a = 0; a < keep.size() && !changed; ++a) {
      for (size_t b = 0; b < keep.size(); ++b) {
        if (a == b) continue;
        const auto& super = m.entries[keep[a]];
        const auto& sub = m.entries[keep[b]];
        bool all_sub = true;
        for (size_t j = 0; j < super.size() && all_sub; ++j)
          all_sub = subset(sub[j], super[j]);
        if (all_sub) {
          keep.erase(keep.begin() + static_cast<std::ptrdiff_t>(a));
          changed = true;
          break;
        }
      }
    }
  }
  return select_rows(m, keep);
}

}  // namespace

KwMatrix simplify_rows(const KwMatrix& m, bool also_columns) {
  KwMatrix out = drop_super_rows(m);
  if (also_columns) out = transpose(drop_super_rows(transpose(out)));
  return out;
}

// --------------------------------------------------------- exact search

struct MonorectEngine::Impl {
  struct Value {
    uint32_t leaves;
    uint16_t depth;
  };

  KwMatrix m;
  SearchLimits lim;
  std::unordered_map<uint64_t, Value> memo;
  std::chrono::steady_clock::time_point deadline{};
  bool has_deadline = false;
  uint64_t tick = 0;

  Impl(const KwMatrix& matrix, const SearchLimits& limits) : m(matrix), lim(limits) {
    if (m.n_rows() == 0 || m.n_cols() == 0)
      throw std::invalid_argument("monorect: empty matrix");
    if (m.n_rows() > 32 || m.n_cols() > 32)
      throw budget_exceeded("monorect: more than 32 labels on one side");
    if (lim.budget_seconds > 0) {
      has_deadline = true;
      deadline = std::chrono::steady_clock::now() +
                 std::chrono::microseconds(
                     static_cast<int64_t>(lim.budget_seconds * 1e6));
    }
  }

  static uint64_t key(uint32_t r, uint32_t c) { return (uint64_t{r} << 32) | c; }

  uint64_t leaf_mask(uint32_t rmask, uint32_t cmask) const {
    uint64_t acc = ~uint64_t{0};
    for (uint32_t rs = rmask; rs != 0 && acc != 0; rs &= rs - 1) {
      const auto& row = m.entries[static_cast<size_t>(__builtin_ctz(rs))];
      for (uint32_t cs = cmask; cs != 0; cs &= cs - 1) {
        acc &= row[static_cast<size_t>(__builtin_ctz(cs))];
        if (acc == 0) break;
      }
    }
    return acc;
  }

  Value solve(uint32_t rmask, uint32_t cmask) {
    auto it = memo.find(key(rmask, cmask));
    if (it != memo.end()) return it->second;

    if (has_deadline && (++tick & 1023) == 0 &&
        std::chrono::steady_clock::now() > deadline)
      throw budget_exceeded("monorect: wall-clock budget exceeded");

    Value best;
    if (leaf_mask(rmask, cmask) != 0) {
      best = {1, 0};
    } else {
      best = {UINT32_MAX, UINT16_MAX};
      uint16_t best_depth = UINT16_MAX;
      auto try_splits = [&](uint32_t mask, bool rows_side) {
        if (__builtin_popcount(mask) < 2) return;
        uint32_t pivot = mask & (~mask + 1);
        uint32_t rest = mask ^ pivot;
        for (uint32_t s = rest;; s = (s - 1) & rest) {
          if (s != rest) {
            uint32_t a1 = pivot | s;
            uint32_t a2 = mask ^ a1;
            Value v1 = rows_side ? solve(a1, cmask) : solve(rmask, a1);
            Value v2 = rows_side ? solve(a2, cmask) : solve(rmask, a2);
            uint32_t leaves = v1.leaves + v2.leaves;
            uint16_t depth = static_cast<uint16_t>(1 + std::max(v1.depth, v2.depth));
            if (leaves < best.leaves) best.leaves = leaves;
            if (depth < best_depth) best_depth = depth;
          }
          if (s == 0) break;
        }
        best.depth = best_depth;
      };
      // branch order: smaller side first
      bool rows_first = __builtin_popcount(rmask) <= __builtin_popcount(cmask);
      try_splits(rows_first ? rmask : cmask, rows_first);
      try_splits(rows_first ? cmask : rmask, !rows_first);
      if (best.leaves == UINT32_MAX)
        throw std::invalid_argument("monorect: unsolvable entry (no valid answer)");
    }
    memo.emplace(key(rmask, cmask), best);
    return best;
  }

  std::shared_ptr<const ProtocolNode> build_tree(uint32_t rmask, uint32_t cmask) {
    auto node = std::make_shared<ProtocolNode>();
    for (uint32_t rs = rmask; rs != 0; rs &= rs - 1)
      node->rows.push_back(__builtin_ctz(rs));
    for (uint32_t cs = cmask; cs != 0; cs &= cs - 1)
      node->cols.push_back(__builtin_ctz(cs));

    uint64_t lm = leaf_mask(rmask, cmask);
    if (lm != 0) {
      node->is_leaf = true;
      node->answer = __builtin_ctzll(lm) + 1;
      return node;
    }
    const Value want = solve(rmask, cmask);
    for (int side = 0; side < 2; ++side) {
      bool rows_side = side == 0;
      uint32_t mask = rows_side ? rmask : cmask;
      if (__builtin_popcount(mask) < 2) continue;
      uint32_t pivot = mask & (~mask + 1);
      uint32_t rest = mask ^ pivot;
      for (uint32_t s = rest;; s = (s - 1) & rest) {
        if (s != rest) {
          uint32_t a1 = pivot | s;
          uint32_t a2 = mask ^ a1;
          Value v1 = rows_side ? solve(a1, cmask) : solve(rmask, a1);
          Value v2 = rows_side ? solve(a2, cmask) : solve(rmask, a2);
          if (v1.leaves + v2.leaves == want.leaves) {
            node->splits_rows = rows_side;
            node->first = rows_side ? build_tree(a1, cmask) : build_tree(rmask, a1);
            node->second = rows_side ? build_tree(a2, cmask) : build_tree(rmask, a2);
            return node;
          }
        }
        if (s == 0) break;
      }
    }
    throw std::logic_error("monorect: optimal split vanished during reconstruction");
  }
};

MonorectEngine::MonorectEngine(const KwMatrix& m, const SearchLimits& lim)
    : impl_(std::make_unique<Impl>(m, lim)) {}
MonorectEngine::~MonorectEngine() = default;
MonorectEngine::MonorectEngine(MonorectEngine&&) noexcept = default;
MonorectEngine& MonorectEngine::operator=(MonorectEngine&&) noexcept = default;

ProtocolResult MonorectEngine::solve() {
  uint32_t rmask = impl_->m.n_rows() >= 32 ? ~uint32_t{0}
                                           : (uint32_t{1} << impl_->m.n_rows()) - 1;
  uint32_t cmask = impl_->m.n_cols() >= 32 ? ~uint32_t{0}
                                           : (uint32_t{1} << impl_->m.n_cols()) - 1;
  return solve(rmask, cmask);
}

ProtocolResult MonorectEngine::solve(uint64_t row_mask, uint64_t col_mask) {
  if (row_mask == 0 || col_mask == 0)
    throw std::invalid_argument("monorect: empty rectangle");
  size_t labels = static_cast<size_t>(__builtin_popcountll(row_mask)) +
                  static_cast<size_t>(__builtin_popcountll(col_mask));
  if (labels > impl_->lim.max_labels)
    throw budget_exceeded("monorect: label limit exceeded (" + std::to_string(labels) +
                          " > " + std::to_string(impl_->lim.max_labels) + ")");
  auto r = static_cast<uint32_t>(row_mask);
  auto c = static_cast<uint32_t>(col_mask);
  Impl::Value v = impl_->solve(r, c);
  ProtocolResult res;
  res.leaves = v.leaves;
  res.depth = v.depth;
  if (impl_->lim.want_tree) res.tree = impl_->build_tree(r, c);
  return res;
}

ProtocolResult monorect_exact(const KwMatrix& m, const SearchLimits& lim) {
  MonorectEngine engine(m, lim);
  return engine.solve();
}

namespace {

json tree_to_json(const ProtocolNode& n) {
  json j;
  j["rows"] = n.rows;
  j["cols"] = n.cols;
  if (n.is_leaf) {
    j["answer"] = n.answer;
  } else {
    j["split"] = n.splits_rows ? "rows" : "cols";
    j["first"] = tree_to_json(*n.first);
    j["second"] = tree_to_json(*n.second);
  }
  return j;
}

}  // namespace

std::string ProtocolResult::to_json(bool pretty) const {
  json j;
  j["leaves"] = leaves;
  j["depth"] = depth;
  j["tree"] = tree ? tree_to_json(*tree) : json(nullptr);
  return pretty ? j.dump(2) : j.dump();
}

// ------------------------------------------------- composition reduction

TritWord compose_pair_word(const TritWord& outer, const TritWord& inner, int m) {
  const int n = outer.length();
  if (inner.length() != m)
    throw std::invalid_argument("compose_pair_word: inner length mismatch");
  if (n * m > TritWord::max_length)
    throw std::invalid_argument("compose_pair_word: word too long");
  TritWord out(n * m);
  for (int i = 1; i <= n; ++i) {
    bool stable_row = is_stable(outer.get(i));
    for (int j = 1; j <= m; ++j)
      out = out.with((i - 1) * m + j, stable_row ? inner.get(j) : Trit::unstable);
  }
  return out;
}

std::pair<int, int> split_flat_answer(int k, int m) {
  int block = (k - 1) / m + 1;
  return {block, k - m * (block - 1)};
}

std::string CompositionReductionReport::to_json(bool pretty) const {
  json j;
  j["n"] = n;
  j["m"] = m;
  j["verified"] = verified;
  j["pairs_checked"] = pairs_checked;
  j["answers_checked"] = answers_checked;
  j["images_are_implicants"] = images_are_implicants;
  return pretty ? j.dump(2) : j.dump();
}

CompositionReductionReport composition_reduction(const TruthTable& f, const TruthTable& g) {
  if (!is_monotone(f))
    throw std::invalid_argument("composition_reduction: outer function must be monotone");
  const int n = f.arity(), m = g.arity();
  if (n * m > TritWord::max_length)
    throw std::invalid_argument("composition_reduction: composed word too long");

  CompositionReductionReport rep;
  rep.n = n;
  rep.m = m;

  PrimeSet f1 = prime_set(f, 1), f0 = prime_set(f, 0);
  PrimeSet g1 = prime_set(g, 1), g0 = prime_set(g, 0);

  const bool check_images = n * m <= 10;
  TruthTable composed = check_images ? block_compose(f, g) : TruthTable(1);

  for (const auto& pf1 : f1.words)
    for (const auto& pg1 : g1.words) {
      TritWord phi1 = compose_pair_word(pf1, pg1, m);
      if (check_images && extension_eval(composed, phi1) != Trit::one)
        rep.images_are_implicants = false;
      for (const auto& pf0 : f0.words)
        for (const auto& pg0 : g0.words) {
          TritWord phi0 = compose_pair_word(pf0, pg0, m);
          if (check_images && extension_eval(composed, phi0) != Trit::zero)
            rep.images_are_implicants = false;
          ++rep.pairs_checked;
          uint32_t answers = stable_diff(phi1, phi0);
          for (int k = 1; k <= n * m; ++k) {
            if (!((answers >> (k - 1)) & 1u)) continue;
            ++rep.answers_checked;
            auto [i, j] = split_flat_answer(k, m);
            bool outer_ok =
                pf1.get(i) == Trit::one && pf0.get(i) == Trit::zero;
            bool inner_ok = trit_xor(pg1.get(j), pg0.get(j)) == Trit::one;
            if (!outer_ok || !inner_ok) rep.verified = false;
          }
        }
    }
  return rep;
}

// ------------------------------------------- derivative submatrix checks

DerivativeSubmatrixReport derivative_submatrix_check(const TruthTable& f, const BitWord& x,
                                                     const SearchLimits& lim) {
  if (f.is_constant())
    throw std::invalid_argument("derivative_submatrix_check: constant function");
  const int b = f.get(x) ? 1 : 0;

  PrimeSet p1 = prime_set(f, 1), p0 = prime_set(f, 0);
  if (p1.words.size() > 31 || p0.words.size() > 31)
    throw budget_exceeded("derivative_submatrix_check: prime sets too large");
  KwMatrix full = kwu_matrix(p1, p0);
  TritWord xw = TritWord::from_bits(x);

  TruthTable d = hazard_derivative(f, x);
  PrimeSet d1 = prime_set(d, 1), d0 = prime_set(d, 0);
  KwMatrix dm = kwu_matrix(d1, d0);

  DerivativeSubmatrixReport rep;
  rep.polarity = b;

  // the deriving-side restriction of the full matrix
  const PrimeSet& deriving_side = (b == 0) ? p0 : p1;
  uint32_t deriving_mask = 0;
  for (size_t k = 0; k < deriving_side.words.size(); ++k)
    if (derives(deriving_side.words[k], x)) deriving_mask |= uint32_t{1} << k;

  uint32_t full_rows = (uint32_t{1} << p1.words.size()) - 1;
  uint32_t full_cols = (uint32_t{1} << p0.words.size()) - 1;
  uint32_t mx_rows = (b == 0) ? full_rows : deriving_mask;
  uint32_t mx_cols = (b == 0) ? deriving_mask : full_cols;

  // embed the derivative's labels into the function's prime sets
  const std::vector<TritWord>& gen_side = (b == 0) ? p1.words : p0.words;
  std::vector<int> row_map(d1.words.size(), -1);  // derivative implicants
  for (size_t i = 0; i < d1.words.size(); ++i)
    for (size_t k = 0; k < gen_side.size(); ++k)
      if (replace_all(word_xor(gen_side[k], xw), Trit::zero, Trit::unstable) ==
          d1.words[i]) {
        row_map[i] = static_cast<int>(k);
        break;
      }
  std::vector<int> col_map(d0.words.size(), -1);  // derivative implicates
  for (size_t j = 0; j < d0.words.size(); ++j)
    for (size_t k = 0; k < deriving_side.words.size(); ++k)
      if (((deriving_mask >> k) & 1u) &&
          word_xor(deriving_side.words[k], xw) == d0.words[j]) {
        col_map[j] = static_cast<int>(k);
        break;
      }

  rep.submatrix_embeds = true;
  for (size_t i = 0; i < d1.words.size() && rep.submatrix_embeds; ++i)
    for (size_t j = 0; j < d0.words.size() && rep.submatrix_embeds; ++j) {
      if (row_map[i] < 0 || col_map[j] < 0) {
        rep.submatrix_embeds = false;
        break;
      }
      uint64_t full_entry = (b == 0)
                                ? full.entries[row_map[i]][col_map[j]]
                                : full.entries[col_map[j]][row_map[i]];
      if (dm.entries[i][j] != full_entry) rep.submatrix_embeds = false;
    }

  MonorectEngine engine(full, lim);
  rep.monorect_full = engine.solve().leaves;
  rep.monorect_mx = engine.solve(mx_rows, mx_cols).leaves;
  rep.monorect_derivative = monorect_exact(dm, lim).leaves;
  rep.monorect_equal = rep.monorect_mx == rep.monorect_derivative;
  rep.lower_bound_holds = rep.monorect_derivative <= rep.monorect_full;
  return rep;
}

UnateCriterionReport unate_criterion(const TruthTable& f, const SearchLimits& lim) {
  if (f.is_constant())
    throw std::invalid_argument("unate_criterion: constant function");

  UnateCriterionReport rep;
  rep.unate = is_unate(f);
  rep.size_u = monorect_exact(kwu_matrix(f), lim).leaves;

  TernaryTable ext = TernaryTable::extension_of(f);
  for (uint32_t xv = 0; xv < f.size(); ++xv) {
    BitWord x(f.arity(), xv);
    TruthTable d = hazard_derivative(ext, x);
    uint64_t leaves = monorect_exact(kwu_matrix(d), lim).leaves;
    if (leaves > rep.max_derivative_size) {
      rep.max_derivative_size = leaves;
      rep.argmax_x = x;
    }
  }
  rep.gap_free = rep.size_u == rep.max_derivative_size;
  rep.criterion_holds = rep.gap_free == rep.unate;
  if (!rep.unate) rep.witness = non_unate_witness(f);
  return rep;
}

}  // namespace hazard
