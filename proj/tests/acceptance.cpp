// Acceptance suite: every release-gating property, one verdict line each.
// Exits nonzero if any criterion fails. Expected wall time is a few
// minutes; the heavy loops are the exhaustive 3-variable sweeps.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "hazard/experiments.hpp"
#include "hazard/formula.hpp"
#include "hazard/implicants.hpp"
#include "hazard/kw.hpp"
#include "support/formula_enum.hpp"

using namespace hazard;
using nlohmann::json;

namespace {

int failures = 0;

void verdict(int idx, bool ok, const std::string& what) {
  if (!ok) ++failures;
  std::printf("%s  %2d  %s\n", ok ? "PASS" : "FAIL", idx, what.c_str());
  std::fflush(stdout);
}

TruthTable table_from_mask(int n, uint32_t bits) {
  TruthTable f(n);
  for (uint32_t i = 0; i < f.size(); ++i) f.set(i, (bits >> i) & 1);
  return f;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1. the 21 ternary gate table entries
void criterion_1() {
  const Trit Z = Trit::zero, O = Trit::one, U = Trit::unstable;
  struct Row {
    Trit a, b, out;
  };
  const Row or_rows[] = {{Z, Z, Z}, {Z, U, U}, {Z, O, O}, {U, Z, U}, {U, U, U},
                         {U, O, O}, {O, Z, O}, {O, U, O}, {O, O, O}};
  const Row and_rows[] = {{Z, Z, Z}, {Z, U, Z}, {Z, O, Z}, {U, Z, Z}, {U, U, U},
                          {U, O, U}, {O, Z, Z}, {O, U, U}, {O, O, O}};
  int good = 0;
  for (const auto& r : or_rows) good += trit_or(r.a, r.b) == r.out;
  for (const auto& r : and_rows) good += trit_and(r.a, r.b) == r.out;
  good += trit_not(Z) == O;
  good += trit_not(U) == U;
  good += trit_not(O) == Z;
  verdict(1, good == 21,
          "Kleene gate tables: " + std::to_string(good) + "/21 entries match");
}

// 2. exact-size criterion over every non-constant 3-variable function
void criterion_2() {
  auto t0 = std::chrono::steady_clock::now();
  int checked = 0, holds = 0;
  for (uint32_t bits = 1; bits < 255; ++bits) {
    TruthTable f = table_from_mask(3, bits);
    UnateCriterionReport rep = unate_criterion(f);
    ++checked;
    holds += rep.criterion_holds;
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "unateness criterion: gap-free iff unate for %d/%d functions (%.1fs)",
                holds, checked, seconds_since(t0));
  verdict(2, holds == 254 && checked == 254, buf);
}

// 3. multiplexer bounds
void criterion_3() {
  bool ok = true;
  uint64_t mux1_leaves = monorect_exact(kwu_matrix(TruthTable::multiplexer(1))).leaves;
  ok = ok && mux1_leaves == 5;

  Formula m2 = mux_hazard_free(2);
  HazardReport rep = hazard_check(m2, 6);
  ok = ok && rep.hazard_free && rep.function == TruthTable::multiplexer(2) &&
       m2.size() <= 17;

  oracles::FormulaSizeOracle oracle(3);
  int min1 = oracle.min_hazard_free_size(TruthTable::multiplexer(1), 5);
  ok = ok && min1 == 5;  // achievable at five leaves, impossible below

  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "multiplexer: leaves(mux1)=%llu (=5), mux2 size=%d (<=17, hazard-free=%d), "
                "enumerated optimum at one selector=%d",
                static_cast<unsigned long long>(mux1_leaves), m2.size(),
                rep.hazard_free ? 1 : 0, min1);
  verdict(3, ok, buf);
}

// 4. derivative prime structure at every function and base point
void criterion_4() {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  for (uint32_t bits = 0; bits < 256 && ok; ++bits) {
    TruthTable f = table_from_mask(3, bits);
    TernaryTable ext = TernaryTable::extension_of(f);
    for (uint32_t xv = 0; xv < 8 && ok; ++xv) {
      BitWord x(3, xv);
      TruthTable d = hazard_derivative(ext, x);
      if (derivative_prime_implicates(f, x).words != prime_set(d, 0).words) ok = false;
      auto gen = derivative_implicant_generators(f, x);
      if (gen.primes.words != prime_set(d, 1).words) ok = false;
      TernaryTable dext = TernaryTable::extension_of(d);
      for (const auto& g : gen.generators)
        if (dext.at(g) != Trit::one) ok = false;
    }
  }

  // the worked example: ones at 000, 001, 011, 111; base point 110
  TruthTable f(3);
  for (const char* s : {"000", "001", "011", "111"})
    f.set(BitWord::parse(s).bits(), true);
  auto gen = derivative_implicant_generators(f, BitWord::parse("110"));
  std::vector<std::string> got;
  for (const auto& w : gen.generators) got.push_back(w.str());
  bool example_ok = got == std::vector<std::string>{"11u", "1u1", "uu1"} &&
                    !gen.primes.contains(TritWord::parse("1u1")) &&
                    gen.primes.words.size() == 2;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "derivative prime structure over all 256 functions x 8 points, "
                "worked example reproduced (%.1fs)",
                seconds_since(t0));
  verdict(4, ok && example_ok, buf);
}

// 5. submatrix embedding and simplification equivalence everywhere
void criterion_5() {
  auto t0 = std::chrono::steady_clock::now();
  int bad = 0;
  for (uint32_t bits = 1; bits < 255; ++bits) {
    TruthTable f = table_from_mask(3, bits);
    for (uint32_t xv = 0; xv < 8; ++xv) {
      auto rep = derivative_submatrix_check(f, BitWord(3, xv));
      if (!rep.all_ok()) ++bad;
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "derivative submatrix + equal protocol size: %d/2032 checks clean (%.1fs)",
                2032 - bad, seconds_since(t0));
  verdict(5, bad == 0, buf);
}

// 6. derivative-cover synthesis with greedy covers
void criterion_6() {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  for (uint32_t bits = 1; bits < 255 && ok; ++bits) {
    TruthTable f = table_from_mask(3, bits);
    auto cover = greedy_prime_cover(f, 0);
    Formula g = derivative_cover_synthesis(f, cover, CoverSide::implicates);

    int budget = 0;
    TernaryTable ext = TernaryTable::extension_of(f);
    for (const auto& x : cover)
      budget += dnf_from_primes(prime_set(hazard_derivative(ext, x), 1)).size();

    HazardReport rep = hazard_check(g, 3);
    if (!rep.hazard_free || rep.function != f || g.size() > budget) ok = false;
  }

  Formula xg = derivative_cover_synthesis(
      TruthTable::xor_n(2), {BitWord::parse("00"), BitWord::parse("11")},
      CoverSide::implicates);
  bool xor_exact = xg.to_sexpr() == "(and (or x1 x2) (or (not x1) (not x2)))";

  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "cover synthesis hazard-free and within budget for all 254 functions; "
                "xor2 gives the exact 4-leaf formula (%.1fs)",
                seconds_since(t0));
  verdict(6, ok && xor_exact, buf);
}

// 7. range functions: tightness and derivative identities
void criterion_7() {
  bool ok = true;
  for (auto [n, a, b] : std::vector<std::tuple<int, int, int>>{{3, 1, 3}, {4, 2, 4}}) {
    TruthTable r = TruthTable::range_fn(n, a, b);
    uint64_t size_u = monorect_exact(kwu_matrix(r)).leaves;
    uint64_t ta = monorect_exact(kwu_matrix(TruthTable::threshold(n, a))).leaves;
    uint64_t tb =
        monorect_exact(kwu_matrix(TruthTable::threshold(n, n - (b - 1)))).leaves;
    if (size_u != ta + tb) ok = false;
  }
  bool deriv_ok = true;
  for (int n = 3; n <= 10; ++n) {
    for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 3}, {2, n}}) {
      if (!(0 < a && a < b && b <= n)) continue;
      TruthTable r = TruthTable::range_fn(n, a, b);
      TernaryTable ext = TernaryTable::extension_of(r);
      BitWord zeros(n, 0), ones(n, (uint32_t{1} << n) - 1);
      if (hazard_derivative(ext, zeros) != TruthTable::threshold(n, a)) deriv_ok = false;
      if (hazard_derivative(ext, ones) != TruthTable::threshold(n, n - (b - 1)))
        deriv_ok = false;
    }
  }
  verdict(7, ok && deriv_ok,
          "range functions: exact size split at (3,1,3) and (4,2,4), derivative "
          "identities up to n=10");
}

// 8. exact rank facts
void criterion_8() {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  uint32_t pow3 = 1;
  for (int n = 1; n <= 4; ++n) {
    pow3 *= 3;
    if (rank_exact(subcube_intersect_matrix(n)) != pow3) ok = false;
  }
  for (int n = 1; n <= 8; ++n)
    if (rank_exact(disjointness_matrix(n)) != (uint64_t{1} << n)) ok = false;
  auto binom = [](int n, int l) {
    uint64_t r = 1;
    for (int i = 1; i <= l; ++i) r = r * (n - l + i) / i;
    return r;
  };
  for (int n = 2; n <= 8; ++n)
    for (int l = 1; l <= 4 && 2 * l <= n; ++l)
      if (rank_exact(disjointness_matrix_l(n, l)) != binom(n, l)) ok = false;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "exact ranks: subcube-intersect 3^n (n<=4), disjointness 2^n (n<=8), "
                "l-subset C(n,l) (%.1fs)",
                seconds_since(t0));
  verdict(8, ok, buf);
}

// 9. composition structure
void criterion_9() {
  auto t0 = std::chrono::steady_clock::now();
  bool primes_ok = true, ext_ok = true, reduction_ok = true;
  for (uint32_t fb = 0; fb < 16; ++fb)
    for (uint32_t gb = 0; gb < 16; ++gb) {
      TruthTable f = table_from_mask(2, fb), g = table_from_mask(2, gb);
      TruthTable h = block_compose(f, g);
      if (composition_primes(f, g).words != prime_set(h, 1).words) primes_ok = false;

      TernaryTable hext = TernaryTable::extension_of(h);
      TernaryTable gext = TernaryTable::extension_of(g);
      for (uint32_t idx = 0; idx < hext.size(); ++idx) {
        TritWord P = TernaryTable::word_of(4, idx);
        TritWord inner(2);
        for (int i = 1; i <= 2; ++i) {
          TritWord row(2);
          for (int j = 1; j <= 2; ++j) row = row.with(j, P.get((i - 1) * 2 + j));
          inner = inner.with(i, gext.at(row));
        }
        if (hext.at(idx) != extension_eval(f, inner)) ext_ok = false;
      }
    }

  for (TruthTable f : {TruthTable::and_n(2), TruthTable::or_n(2)})
    for (uint32_t gb = 0; gb < 16; ++gb) {
      auto rep = composition_reduction(f, table_from_mask(2, gb));
      if (!rep.verified || !rep.images_are_implicants) reduction_ok = false;
    }

  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "composition: primes=%s, extension identity=%s, direct-sum maps=%s "
                "(all 2x2 pairs, %.1fs)",
                primes_ok ? "ok" : "FAIL", ext_ok ? "ok" : "FAIL",
                reduction_ok ? "ok" : "FAIL", seconds_since(t0));
  verdict(9, primes_ok && ext_ok && reduction_ok, buf);
}

// 10. random-function study at n = 10
void criterion_10() {
  auto t0 = std::chrono::steady_clock::now();
  json j = json::parse(random_derivative_study(10, 200, 4, 7, 0.95, 3, 1, 4000));
  bool threshold_ok = j["meets_threshold"].get<bool>();
  double abs_err = j["probe"]["abs_error"].get<double>();
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "random study: weight bound holds in %.1f%% of samples (>=95%%), "
                "probe frequency %.3f vs 0.5 (|err|=%.3f <= 0.05) (%.1fs)",
                100.0 * j["fraction_within_bound"].get<double>(),
                j["probe"]["frequency"].get<double>(), abs_err, seconds_since(t0));
  verdict(10, threshold_ok && abs_err <= 0.05, buf);
}

// 11. Andreev derivative formula
void criterion_11() {
  json j = json::parse(andreev_study(2, 2, 3, 1000, 2026));
  bool ok = j["nominal_size"] == 16 && j["total_mismatches"] == 0;
  verdict(11, ok,
          "andreev k=2,m=2: nominal size 16, zero mismatches on 3x1000 seeded "
          "perturbations");
}

// 12. monotone tightness at the all-zeros point
void criterion_12() {
  bool ok = true;
  int count = 0;
  for (uint32_t bits = 1; bits < 255; ++bits) {
    TruthTable f = table_from_mask(3, bits);
    if (!is_monotone(f)) continue;
    ++count;
    uint64_t full = monorect_exact(kwu_matrix(f)).leaves;
    uint64_t at0 =
        monorect_exact(kwu_matrix(hazard_derivative(f, BitWord(3, 0)))).leaves;
    if (full != at0) ok = false;
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "monotone tightness: full game equals the derivative game at the "
                "all-zeros point for all %d monotone functions",
                count);
  verdict(12, ok && count == 18, buf);
}

}  // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12();
  std::printf("%s: %d criteria failed (total %.1fs)\n", failures ? "FAIL" : "PASS",
              failures, seconds_since(t0));
  return failures == 0 ? 0 : 1;
}
