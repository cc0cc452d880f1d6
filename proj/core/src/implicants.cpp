#include "hazard/implicants.hpp"

#include <algorithm>
#include <sstream>

namespace hazard {

bool PrimeSet::contains(const TritWord& w) const {
  return std::binary_search(words.begin(), words.end(), w, canonical_less);
}

std::string PrimeSet::to_lines() const {
  std::string out;
  for (const auto& w : words) {
    out += w.str();
    out += '\n';
  }
  return out;
}

PrimeSet PrimeSet::from_lines(int polarity, std::string_view text) {
  PrimeSet p;
  p.polarity = polarity;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    p.words.push_back(TritWord::parse(line));
  }
  std::sort(p.words.begin(), p.words.end(), canonical_less);
  p.words.erase(std::unique(p.words.begin(), p.words.end()), p.words.end());
  return p;
}

namespace {

void sort_canonical(std::vector<TritWord>& words) {
  std::sort(words.begin(), words.end(), canonical_less);
  words.erase(std::unique(words.begin(), words.end()), words.end());
}

}  // namespace

PrimeSet prime_set(const TruthTable& f, int b) {
  if (b != 0 && b != 1) throw std::invalid_argument("prime_set: polarity must be 0 or 1");
  const int n = f.arity();
  TernaryTable ext = TernaryTable::extension_of(f);
  const Trit target = b ? Trit::one : Trit::zero;

  PrimeSet out;
  out.polarity = b;
  for (uint32_t idx = 0; idx < ext.size(); ++idx) {
    if (ext.at(idx) != target) continue;
    // prime iff unstabilizing any stable coordinate loses the value
    bool prime = true;
    uint32_t rem = idx;
    for (int i = 0; i < n && prime; ++i) {
      uint32_t d = rem % 3;
      rem /= 3;
      if (d == 2) continue;
      uint32_t up = idx + (2 - d) * TernaryTable::pow3(i);
      if (ext.at(up) != Trit::unstable) prime = false;
    }
    if (prime) out.words.push_back(TernaryTable::word_of(n, idx));
  }
  std::sort(out.words.begin(), out.words.end(), canonical_less);
  return out;
}

bool derives(const TritWord& p, const BitWord& x) {
  return preceq(p, TritWord::from_bits(x));
}

PrimeSet restrict_to(const PrimeSet& P, const BitWord& x) {
  PrimeSet out;
  out.polarity = P.polarity;
  for (const auto& w : P.words)
    if (derives(w, x)) out.words.push_back(w);
  return out;
}

PrimeSet derivative_prime_implicates(const TruthTable& f, const BitWord& x) {
  const int b = f.get(x) ? 1 : 0;
  PrimeSet deriving = restrict_to(prime_set(f, b), x);
  TritWord xw = TritWord::from_bits(x);

  PrimeSet out;
  out.polarity = 0;
  for (const auto& p : deriving.words) out.words.push_back(word_xor(p, xw));
  sort_canonical(out.words);
  return out;
}

DerivativeImplicantGenerators derivative_implicant_generators(const TruthTable& f,
                                                              const BitWord& x) {
  const int b = f.get(x) ? 1 : 0;
  PrimeSet opposite = prime_set(f, 1 - b);
  TritWord xw = TritWord::from_bits(x);

  DerivativeImplicantGenerators out;
  for (const auto& p : opposite.words)
    out.generators.push_back(replace_all(word_xor(p, xw), Trit::zero, Trit::unstable));
  sort_canonical(out.generators);

  out.primes.polarity = 1;
  for (const auto& g : out.generators) {
    bool minimal = true;
    for (const auto& h : out.generators)
      if (h != g && preceq(h, g)) {
        minimal = false;
        break;
      }
    if (minimal) out.primes.words.push_back(g);
  }
  return out;
}

TritWord neighbor_witness(const TruthTable& f, const TritWord& p, int i) {
  Trit v = extension_eval(f, p);
  if (!is_stable(v))
    throw std::invalid_argument("neighbor_witness: p is not an implicant or implicate");
  const int b = (v == Trit::one) ? 1 : 0;
  if (!prime_set(f, b).contains(p))
    throw std::invalid_argument("neighbor_witness: p is not prime");
  if (!is_stable(p.get(i)))
    throw std::invalid_argument("neighbor_witness: coordinate is unstable in p");

  const uint32_t want = uint32_t{1} << (i - 1);
  for (const auto& q : prime_set(f, 1 - b).words)
    if (stable_diff(p, q) == want) return q;
  throw std::logic_error("neighbor_witness: no witness exists");
}

std::optional<NonUnateWitness> non_unate_witness(const TruthTable& f) {
  auto labels = unateness(f);
  int d = 0;
  for (int i = 0; i < f.arity(); ++i)
    if (labels[i] == Unateness::none) {
      d = i + 1;
      break;
    }
  if (d == 0) return std::nullopt;

  PrimeSet p1 = prime_set(f, 1);
  NonUnateWitness w;
  w.coord = d;
  bool have_p = false, have_q = false;
  for (const auto& p : p1.words) {
    if (!have_p && p.get(d) == Trit::zero) {
      w.p1 = p;
      w.p0 = neighbor_witness(f, p, d);
      have_p = true;
    }
    if (!have_q && p.get(d) == Trit::one) {
      w.q1 = p;
      w.q0 = neighbor_witness(f, p, d);
      have_q = true;
    }
    if (have_p && have_q) break;
  }
  if (!have_p || !have_q)
    throw std::logic_error("non_unate_witness: prime structure contradicts unateness labels");
  return w;
}

PrimeSet composition_primes(const TruthTable& f, const TruthTable& g) {
  const int n = f.arity(), m = g.arity();
  if (n * m > TruthTable::max_arity)
    throw std::invalid_argument("composition_primes: arity overflow");
  if (n * m > TritWord::max_length)
    throw std::invalid_argument("composition_primes: word too long");

  PrimeSet out;
  out.polarity = 1;

  // A constant inner function collapses the composition to a constant; the
  // row-assembly below presumes g is non-constant.
  if (g.is_constant()) {
    uint32_t all = g.get(uint32_t{0}) ? (uint32_t{1} << n) - 1 : 0;
    if (f.get(all)) out.words.push_back(TritWord::all_unstable(n * m));
    return out;
  }

  PrimeSet pf = prime_set(f, 1);
  PrimeSet pg1 = prime_set(g, 1);
  PrimeSet pg0 = prime_set(g, 0);
  TernaryTable gext = TernaryTable::extension_of(g);
  std::vector<const std::vector<TritWord>*> row_choices(n);
  const std::vector<TritWord> just_u = {TritWord::all_unstable(m)};

  for (const auto& p : pf.words) {
    bool feasible = true;
    for (int i = 1; i <= n && feasible; ++i) {
      switch (p.get(i)) {
        case Trit::one:
          row_choices[i - 1] = &pg1.words;
          break;
        case Trit::zero:
          row_choices[i - 1] = &pg0.words;
          break;
        default:
          row_choices[i - 1] = &just_u;
          break;
      }
      if (row_choices[i - 1]->empty()) feasible = false;
    }
    if (!feasible) continue;

    std::vector<size_t> pick(n, 0);
    while (true) {
      TritWord composed(n * m);
      TritWord image(n);  // extension of g on each row
      for (int i = 0; i < n; ++i) {
        const TritWord& row = (*row_choices[i])[pick[i]];
        for (int j = 1; j <= m; ++j) composed = composed.with(i * m + j, row.get(j));
        image = image.with(i + 1, gext.at(row));
      }
      // keep exactly the candidates whose row image is itself prime
      if (pf.contains(image)) out.words.push_back(composed);

      int carry = 0;
      while (carry < n) {
        if (++pick[carry] < row_choices[carry]->size()) break;
        pick[carry] = 0;
        ++carry;
      }
      if (carry == n) break;
    }
  }
  sort_canonical(out.words);
  return out;
}

std::vector<BitWord> greedy_prime_cover(const TruthTable& f, int side) {
  if (side != 0 && side != 1)
    throw std::invalid_argument("greedy_prime_cover: side must be 0 or 1");
  PrimeSet target = prime_set(f, side);
  const int n = f.arity();

  std::vector<BitWord> cover;
  std::vector<bool> covered(target.words.size(), false);
  size_t remaining = target.words.size();
  while (remaining > 0) {
    uint32_t best_x = 0;
    size_t best_gain = 0;
    for (uint32_t x = 0; x < f.size(); ++x) {
      if (f.get(x) != (side == 1)) continue;
      BitWord xb(n, x);
      size_t gain = 0;
      for (size_t k = 0; k < target.words.size(); ++k)
        if (!covered[k] && derives(target.words[k], xb)) ++gain;
      if (gain > best_gain) {
        best_gain = gain;
        best_x = x;
      }
    }
    if (best_gain == 0)
      throw std::logic_error("greedy_prime_cover: primes not coverable");
    BitWord xb(n, best_x);
    cover.push_back(xb);
    for (size_t k = 0; k < target.words.size(); ++k)
      if (!covered[k] && derives(target.words[k], xb)) {
        covered[k] = true;
        --remaining;
      }
  }
  return cover;
}

}  // namespace hazard
