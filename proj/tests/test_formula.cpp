#include <doctest.h>

#include "hazard/formula.hpp"
#include "hazard/kw.hpp"
#include "support/formula_enum.hpp"
#include "support/oracles.hpp"

using namespace hazard;

namespace {

Formula four_leaf_mux() {
  // (s and x3) or (not s and x2): the textbook selector with a hazard
  return Formula::disj(Formula::conj(Formula::variable(1), Formula::variable(3)),
                       Formula::conj(Formula::negation(Formula::variable(1)),
                                     Formula::variable(2)));
}

TruthTable table_from_mask(int n, uint32_t bits) {
  TruthTable f(n);
  for (uint32_t i = 0; i < f.size(); ++i) f.set(i, (bits >> i) & 1);
  return f;
}

uint64_t rng_state = 0x12345;

Formula random_formula(int n, int depth, bool monotone) {
  uint64_t r = splitmix64(rng_state);
  if (depth == 0 || (r & 7) == 0) {
    int v = static_cast<int>((r >> 8) % n) + 1;
    if (!monotone && ((r >> 3) & 1)) return Formula::negation(Formula::variable(v));
    return Formula::variable(v);
  }
  Formula a = random_formula(n, depth - 1, monotone);
  Formula b = random_formula(n, depth - 1, monotone);
  return ((r >> 4) & 1) ? Formula::conj(a, b) : Formula::disj(a, b);
}

}  // namespace

TEST_CASE("size, depth, monotone flag") {
  Formula f = four_leaf_mux();
  CHECK(f.size() == 4);
  CHECK(f.depth() == 2);
  CHECK_FALSE(f.is_monotone());
  CHECK(Formula::variable(3).size() == 1);
  CHECK(Formula::constant(true).depth() == 0);
  CHECK(Formula::conj(Formula::variable(1), Formula::variable(2)).is_monotone());
}

TEST_CASE("ternary evaluation") {
  Formula taut = Formula::disj(Formula::variable(1),
                               Formula::negation(Formula::variable(1)));
  CHECK(taut.eval(TritWord::parse("u")) == Trit::unstable);
  CHECK(taut.eval(TritWord::parse("0")) == Trit::one);

  CHECK(four_leaf_mux().eval(TritWord::parse("u11")) == Trit::unstable);
  CHECK(four_leaf_mux().eval(TritWord::parse("011")) == Trit::one);
  CHECK_THROWS_AS(Formula::variable(4).eval(TritWord::parse("u1")),
                  std::invalid_argument);
}

TEST_CASE("formula evaluation defines a natural function (random formulas)") {
  for (int rep = 0; rep < 20; ++rep) {
    Formula f = random_formula(3, 3, false);
    TruthTable t = f.table(3);
    for (const auto& w : oracles::all_words(3)) {
      Trit v = f.eval(w);
      if (w.all_stable()) CHECK(is_stable(v));
      // dropping any stable coordinate to u only moves the output toward u
      for (int i = 1; i <= 3; ++i) {
        if (!is_stable(w.get(i))) continue;
        Trit below = f.eval(w.with(i, Trit::unstable));
        CHECK((below == Trit::unstable || below == v));
      }
    }
    (void)t;
  }
}

TEST_CASE("s-expression round trip") {
  const char* text = "(or (and x1 (not x2)) x3)";
  Formula f = Formula::parse_sexpr(text);
  CHECK(f.to_sexpr() == text);
  CHECK(Formula::parse_sexpr(f.to_sexpr()).same_tree(f));

  CHECK(Formula::parse_sexpr("0").to_sexpr() == "0");
  CHECK(Formula::parse_sexpr(" ( and x1 x2 x3 ) ").size() == 3);  // n-ary folds
  CHECK_THROWS_AS(Formula::parse_sexpr("(xor x1 x2)"), std::invalid_argument);
  CHECK_THROWS_AS(Formula::parse_sexpr("(and x1)"), std::invalid_argument);
  CHECK_THROWS_AS(Formula::parse_sexpr("(and x1 x2) trailing"), std::invalid_argument);
}

TEST_CASE("round trip on random formulas") {
  for (int rep = 0; rep < 25; ++rep) {
    Formula f = random_formula(4, 4, false);
    CHECK(Formula::parse_sexpr(f.to_sexpr()).same_tree(f));
  }
}

TEST_CASE("hazard check finds the selector hazard") {
  HazardReport rep = hazard_check(four_leaf_mux(), 3);
  CHECK_FALSE(rep.hazard_free);
  REQUIRE(!rep.witnesses.empty());
  CHECK(rep.witnesses.front().str() == "u11");
  CHECK(rep.function == TruthTable::multiplexer(1));
}

TEST_CASE("x or not x has a hazard at u") {
  Formula taut = Formula::disj(Formula::variable(1),
                               Formula::negation(Formula::variable(1)));
  HazardReport rep = hazard_check(taut, 1);
  CHECK_FALSE(rep.hazard_free);
  CHECK(rep.witnesses.size() == 1);
  CHECK(rep.witnesses[0].str() == "u");
}

TEST_CASE("monotone formulas are hazard-free (random, n <= 4)") {
  for (int rep = 0; rep < 25; ++rep) {
    Formula f = random_formula(4, 3, true);
    CHECK(hazard_check(f, 4).hazard_free);
  }
}

TEST_CASE("balanced xor formulas are hazard-free up to n = 4") {
  // recursive (A and not B) or (not A and B)
  std::function<Formula(int, int)> xf = [&](int lo, int len) -> Formula {
    if (len == 1) return Formula::variable(lo);
    int half = len / 2;
    Formula a = xf(lo, half), b = xf(lo + half, len - half);
    return Formula::disj(Formula::conj(a, Formula::negation(b)),
                         Formula::conj(Formula::negation(a), b));
  };
  for (int n = 2; n <= 4; ++n) {
    Formula f = xf(1, n);
    HazardReport rep = hazard_check(f, n);
    CHECK(rep.hazard_free);
    CHECK(rep.function == TruthTable::xor_n(n));
  }
}

TEST_CASE("sampled mode must be requested for large arities") {
  Formula v = Formula::variable(14);
  CHECK_THROWS_AS(hazard_check(v, 14), std::invalid_argument);
  CHECK(hazard_check_sampled(v, 14, 200, 9).hazard_free);
}

TEST_CASE("dnf and cnf from primes") {
  CHECK(dnf_from_primes(prime_set(TruthTable::or_n(2), 1)).to_sexpr() == "(or x1 x2)");
  Formula maj = dnf_from_primes(prime_set(TruthTable::majority3(), 1));
  CHECK(maj.size() == 6);
  CHECK(maj.is_monotone());
  CHECK(maj.table(3) == TruthTable::majority3());

  Formula x = dnf_from_primes(prime_set(TruthTable::xor_n(2), 1));
  CHECK(x.size() == 4);
  CHECK(x.table(2) == TruthTable::xor_n(2));

  Formula cnf = cnf_from_primes(prime_set(TruthTable::and_n(2), 0));
  CHECK(cnf.to_sexpr() == "(and x1 x2)");
}

TEST_CASE("dnf computes the function for every table at n = 3") {
  for (uint32_t bits = 0; bits < 256; ++bits) {
    TruthTable f = table_from_mask(3, bits);
    Formula dnf = dnf_from_primes(prime_set(f, 1));
    CHECK(dnf.table(3) == f);
  }
}

TEST_CASE("constant folding implements the four absorption rules") {
  Formula f = Formula::parse_sexpr("(or (and 0 x1) (and 1 x2))");
  CHECK(fold_constants(f).to_sexpr() == "x2");
  CHECK(fold_constants(Formula::parse_sexpr("(or 1 x1)")).to_sexpr() == "1");
  CHECK(fold_constants(Formula::parse_sexpr("(not 0)")).to_sexpr() == "1");
  // folding preserves ternary behavior on a random formula with constants
  Formula g = Formula::parse_sexpr("(or (and x1 1) (and (not x2) (or x3 0)))");
  Formula fg = fold_constants(g);
  for (const auto& w : oracles::all_words(3)) CHECK(g.eval(w) == fg.eval(w));
}

TEST_CASE("hazard-free multiplexer construction") {
  for (int n = 1; n <= 3; ++n) {
    Formula f = mux_hazard_free(n);
    int expect_size = 2;
    for (int i = 0; i < n; ++i) expect_size *= 3;
    CHECK(f.size() == expect_size - 1);  // 2*3^n - 1
    HazardReport rep = hazard_check(f, n + (1 << n));
    CHECK(rep.hazard_free);
    CHECK(rep.function == TruthTable::multiplexer(n));
  }
  CHECK_THROWS_AS(mux_hazard_free(5), std::invalid_argument);
}

TEST_CASE("no four-leaf formula is a hazard-free selector") {
  oracles::FormulaSizeOracle oracle(3);
  int min = oracle.min_hazard_free_size(TruthTable::multiplexer(1), 5);
  CHECK(min == 5);
}

TEST_CASE("universal construction, all 256 functions at n = 3") {
  for (uint32_t bits = 0; bits < 256; ++bits) {
    TruthTable f = table_from_mask(3, bits);
    Formula u = universal_hazard_free(f);
    CHECK(u.size() <= 2 * 27 - 1);
    HazardReport rep = hazard_check(u, 3);
    CHECK(rep.hazard_free);
    CHECK(rep.function == f);
  }
}

TEST_CASE("universal construction folds constants away") {
  CHECK(universal_hazard_free(TruthTable::constant(2, true)).to_sexpr() == "1");
  Formula x = universal_hazard_free(TruthTable::xor_n(2));
  HazardReport rep = hazard_check(x, 2);
  CHECK(rep.hazard_free);
  CHECK(rep.function == TruthTable::xor_n(2));
}

TEST_CASE("derivative cover synthesis on xor") {
  TruthTable f = TruthTable::xor_n(2);
  std::vector<BitWord> x0 = {BitWord::parse("00"), BitWord::parse("11")};
  Formula g = derivative_cover_synthesis(f, x0, CoverSide::implicates);
  CHECK(g.to_sexpr() == "(and (or x1 x2) (or (not x1) (not x2)))");
  CHECK(g.size() == 4);
  HazardReport rep = hazard_check(g, 2);
  CHECK(rep.hazard_free);
  CHECK(rep.function == f);
}

TEST_CASE("cover synthesis recovers a monotone dnf for monotone functions") {
  for (uint32_t bits = 0; bits < 256; ++bits) {
    TruthTable f = table_from_mask(3, bits);
    if (!is_monotone(f) || f.get(uint32_t{0})) continue;
    Formula g = derivative_cover_synthesis(f, {BitWord(3, 0)}, CoverSide::implicates);
    CHECK(g.is_monotone());
    CHECK(g.table(3) == f);
    CHECK(hazard_check(g, 3).hazard_free);
  }
}

TEST_CASE("cover synthesis never beats the exact optimum") {
  // the exact protocol search gives the true minimal hazard-free size;
  // any synthesized hazard-free formula must sit at or above it
  for (uint32_t bits : {0b00010111u, 0b01101001u, 0b00111100u, 0b10010110u}) {
    TruthTable f = table_from_mask(3, bits);
    auto cover = greedy_prime_cover(f, 0);
    Formula g = derivative_cover_synthesis(f, cover, CoverSide::implicates);
    uint64_t optimum = monorect_exact(kwu_matrix(f)).leaves;
    CHECK(static_cast<uint64_t>(g.size()) >= optimum);
  }
}

TEST_CASE("cover synthesis rejects an incomplete cover") {
  CHECK_THROWS_AS(derivative_cover_synthesis(TruthTable::xor_n(2),
                                             {BitWord::parse("00")},
                                             CoverSide::implicates),
                  std::invalid_argument);
}

TEST_CASE("implicant-side cover synthesis") {
  TruthTable f = TruthTable::xor_n(2);
  std::vector<BitWord> x1 = {BitWord::parse("10"), BitWord::parse("01")};
  Formula g = derivative_cover_synthesis(f, x1, CoverSide::implicants);
  CHECK(g.table(2) == f);
  CHECK(hazard_check(g, 2).hazard_free);
}

TEST_CASE("threshold and range formulas") {
  CHECK(threshold_formula(3, 2).table(3) == TruthTable::majority3());
  Formula r = range_formula(3, 1, 3);
  CHECK(r.table(3) == TruthTable::range_fn(3, 1, 3));
  CHECK(threshold_formula(3, 1).to_sexpr() == "(or x1 (or x2 x3))");
}

TEST_CASE("range function prime implicates and derivative identities") {
  TruthTable r = TruthTable::range_fn(3, 1, 3);
  PrimeSet p0 = prime_set(r, 0);
  CHECK(p0.words.size() == 2);
  CHECK(p0.words[0].str() == "000");
  CHECK(p0.words[1].str() == "111");
  CHECK(hazard_derivative(r, BitWord(3, 0)) == TruthTable::threshold(3, 1));
  CHECK(hazard_derivative(r, BitWord(3, 7)) == TruthTable::threshold(3, 1));
}

TEST_CASE("andreev derivative formula") {
  TruthTable f = TruthTable::xor_n(2);
  BitWord X = BitWord::parse("1011");
  AndreevDerivative ad = andreev_derivative(2, 2, f, X);
  CHECK(ad.nominal_size == 16);
  CHECK(ad.formula.is_monotone());

  // zero perturbation stays quiet
  CHECK_FALSE(ad.formula.eval_bool(BitWord(8, 0)));

  // exact agreement with the derivative of the composed function
  TruthTable big = TruthTable::andreev(2, 2);
  uint32_t fbits = 0;
  for (uint32_t t = 0; t < 4; ++t) fbits |= uint32_t{f.get(t)} << t;
  BitWord base(8, fbits | (X.bits() << 4));
  TruthTable oracle = hazard_derivative(big, base);
  for (uint32_t y = 0; y < 256; ++y)
    CHECK(ad.formula.eval_bool(BitWord(8, y)) == oracle.get(y));
}
