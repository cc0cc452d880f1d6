#include "hazard/truth_table.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace hazard {

namespace {

uint32_t kPow3[TernaryTable::max_memo_arity + 1] = {
    1,     3,      9,      27,     81,      243,     729,
    2187,  6561,   19683,  59049,  177147,  531441,  1594323};

}  // namespace

// -------------------------------------------------------------- TruthTable

TruthTable::TruthTable(int arity) : n_(arity) {
  if (arity < 1 || arity > max_arity)
    throw std::invalid_argument("TruthTable: arity must be in 1..20");
  words_.assign((size() + 63) / 64, 0);
}

bool TruthTable::get(uint32_t index) const {
  if (index >= size()) throw std::out_of_range("TruthTable: index out of range");
  return (words_[index >> 6] >> (index & 63)) & 1u;
}

void TruthTable::set(uint32_t index, bool v) {
  if (index >= size()) throw std::out_of_range("TruthTable: index out of range");
  uint64_t bit = uint64_t{1} << (index & 63);
  if (v)
    words_[index >> 6] |= bit;
  else
    words_[index >> 6] &= ~bit;
}

TruthTable TruthTable::from_function(int arity, const std::function<bool(BitWord)>& f) {
  TruthTable t(arity);
  for (uint32_t i = 0; i < t.size(); ++i) t.set(i, f(BitWord(arity, i)));
  return t;
}

TruthTable TruthTable::from_bit_string(int arity, std::string_view bits) {
  TruthTable t(arity);
  if (bits.size() != t.size())
    throw std::invalid_argument("TruthTable: bit string has wrong length");
  for (uint32_t i = 0; i < t.size(); ++i) {
    if (bits[i] == '1')
      t.set(i, true);
    else if (bits[i] != '0')
      throw std::invalid_argument("TruthTable: invalid bit character");
  }
  return t;
}

namespace {

int hex_val(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

TruthTable TruthTable::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int arity = -1;
  std::string bits, hexbits;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("n=", 0) == 0)
      arity = std::stoi(line.substr(2));
    else if (line.rfind("bits=", 0) == 0)
      bits = line.substr(5);
    else if (line.rfind("hexbits=", 0) == 0)
      hexbits = line.substr(8);
    else
      throw std::invalid_argument("TruthTable: unrecognized line: " + line);
  }
  if (arity < 1 || arity > max_arity)
    throw std::invalid_argument("TruthTable: missing or bad n= line");
  if (!bits.empty()) return from_bit_string(arity, bits);
  if (hexbits.empty())
    throw std::invalid_argument("TruthTable: missing bits= or hexbits= line");

  // hex digit t covers indices 4t..4t+3, index 4t in the low bit
  TruthTable t(arity);
  if (hexbits.size() * 4 < t.size())
    throw std::invalid_argument("TruthTable: hexbits too short");
  for (uint32_t i = 0; i < t.size(); ++i) {
    int v = hex_val(hexbits[i / 4]);
    if (v < 0) throw std::invalid_argument("TruthTable: invalid hex digit");
    t.set(i, (v >> (i % 4)) & 1);
  }
  for (size_t d = (t.size() + 3) / 4; d < hexbits.size(); ++d)
    if (hex_val(hexbits[d]) != 0)
      throw std::invalid_argument("TruthTable: hexbits longer than table");
  return t;
}

std::string TruthTable::to_text() const {
  std::ostringstream out;
  out << "n=" << n_ << "\n";
  if (n_ <= 6) {
    out << "bits=";
    for (uint32_t i = 0; i < size(); ++i) out << (get(i) ? '1' : '0');
  } else {
    out << "hexbits=";
    static const char* digits = "0123456789abcdef";
    for (uint32_t d = 0; d < size() / 4; ++d) {
      int v = 0;
      for (int j = 0; j < 4; ++j) v |= get(4 * d + j) << j;
      out << digits[v];
    }
  }
  out << "\n";
  return out.str();
}

bool TruthTable::is_constant() const {
  for (uint32_t i = 1; i < size(); ++i)
    if (get(i) != get(0)) return false;
  return true;
}

TruthTable TruthTable::negated() const {
  TruthTable t(n_);
  for (uint32_t i = 0; i < size(); ++i) t.set(i, !get(i));
  return t;
}

TruthTable TruthTable::constant(int arity, bool v) {
  TruthTable t(arity);
  for (uint32_t i = 0; i < t.size(); ++i) t.set(i, v);
  return t;
}

TruthTable TruthTable::projection(int arity, int i) {
  if (i < 1 || i > arity) throw std::invalid_argument("projection: bad coordinate");
  TruthTable t(arity);
  for (uint32_t x = 0; x < t.size(); ++x) t.set(x, (x >> (i - 1)) & 1);
  return t;
}

TruthTable TruthTable::and_n(int arity) {
  TruthTable t(arity);
  t.set(t.size() - 1, true);
  return t;
}

TruthTable TruthTable::or_n(int arity) {
  TruthTable t = constant(arity, true);
  t.set(0, false);
  return t;
}

TruthTable TruthTable::xor_n(int arity) {
  TruthTable t(arity);
  for (uint32_t x = 0; x < t.size(); ++x) t.set(x, __builtin_popcount(x) & 1);
  return t;
}

TruthTable TruthTable::majority3() {
  return from_bit_string(3, "00010111");
}

TruthTable TruthTable::threshold(int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("threshold: bad k");
  TruthTable t(n);
  for (uint32_t x = 0; x < t.size(); ++x) t.set(x, __builtin_popcount(x) >= k);
  return t;
}

TruthTable TruthTable::range_fn(int n, int a, int b) {
  if (!(0 < a && a < b && b <= n))
    throw std::invalid_argument("range_fn: need 0 < a < b <= n");
  TruthTable t(n);
  for (uint32_t x = 0; x < t.size(); ++x) {
    int w = __builtin_popcount(x);
    t.set(x, a <= w && w < b);
  }
  return t;
}

TruthTable TruthTable::multiplexer(int sel) {
  if (sel < 0) throw std::invalid_argument("multiplexer: bad selector count");
  int arity = sel + (1 << sel);
  if (arity > max_arity) throw std::invalid_argument("multiplexer: arity overflow");
  TruthTable t(arity);
  uint32_t sel_mask = (uint32_t{1} << sel) - 1;
  for (uint32_t x = 0; x < t.size(); ++x) {
    uint32_t s = x & sel_mask;
    t.set(x, (x >> (sel + s)) & 1);
  }
  return t;
}

static TruthTable andreev_table_impl(int k, int m) {
  const int pow2k = 1 << k;
  const int arity = pow2k + k * m;
  if (arity > TruthTable::max_arity)
    throw std::invalid_argument("andreev: arity overflow");
  TruthTable t(arity);
  const uint32_t row_mask = (uint32_t{1} << m) - 1;
  for (uint32_t z = 0; z < t.size(); ++z) {
    uint32_t s = 0;
    for (int i = 0; i < k; ++i) {
      uint32_t row = (z >> (pow2k + i * m)) & row_mask;
      s |= uint32_t{static_cast<uint32_t>(__builtin_popcount(row) & 1)} << i;
    }
    t.set(z, (z >> s) & 1);
  }
  return t;
}

TruthTable TruthTable::andreev(int k, int m) {
  if (k < 1 || m < 1) throw std::invalid_argument("andreev: bad parameters");
  return andreev_table_impl(k, m);
}

uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

TruthTable TruthTable::random_fn(int arity, uint64_t seed) {
  TruthTable t(arity);
  uint64_t state = seed;
  for (auto& w : t.words_) w = splitmix64(state);
  if (t.size() < 64) t.words_[0] &= (uint64_t{1} << t.size()) - 1;
  return t;
}

// ------------------------------------------------------------ TernaryTable

uint32_t TernaryTable::pow3(int k) { return kPow3[k]; }

uint32_t TernaryTable::index_of(const TritWord& w) {
  uint32_t idx = 0;
  for (int i = w.length(); i >= 1; --i)
    idx = idx * 3 + static_cast<uint32_t>(w.get(i));
  return idx;
}

TritWord TernaryTable::word_of(int arity, uint32_t ternary_index) {
  TritWord w(arity);
  for (int i = 1; i <= arity; ++i) {
    w = w.with(i, static_cast<Trit>(ternary_index % 3));
    ternary_index /= 3;
  }
  return w;
}

TernaryTable TernaryTable::extension_of(const TruthTable& f) {
  const int n = f.arity();
  if (n > max_memo_arity)
    throw std::invalid_argument("TernaryTable: arity too large to materialize");
  TernaryTable t(n, kPow3[n]);
  t.vals_.assign(t.size_, 0);

  // One ascending pass: a word's value either comes straight from f (all
  // stable) or combines the two children found by resolving its first
  // unstable coordinate, both of which have smaller indices.
  std::array<int, max_memo_arity> digit{};
  uint32_t bin = 0;  // binary index of the stable prefix interpretation
  for (uint32_t idx = 0; idx < t.size_; ++idx) {
    int first_u = 0;
    for (int i = 0; i < n; ++i) {
      if (digit[i] == 2) {
        first_u = i + 1;
        break;
      }
    }
    Trit v;
    if (first_u == 0) {
      v = f.get(bin) ? Trit::one : Trit::zero;
    } else {
      uint32_t p = kPow3[first_u - 1];
      Trit v0 = static_cast<Trit>(t.vals_[idx - 2 * p]);
      Trit v1 = static_cast<Trit>(t.vals_[idx - p]);
      v = (v0 == v1) ? v0 : Trit::unstable;
    }
    t.vals_[idx] = static_cast<uint8_t>(v);

    // increment base-3 counter and keep the binary image in sync
    for (int i = 0; i < n; ++i) {
      if (++digit[i] == 1) {
        bin |= uint32_t{1} << i;
        break;
      }
      if (digit[i] == 2) {
        bin &= ~(uint32_t{1} << i);
        break;
      }
      digit[i] = 0;  // rolled over from 2
    }
  }
  return t;
}

Trit TernaryTable::at(uint32_t ternary_index) const {
  if (ternary_index >= size_)
    throw std::out_of_range("TernaryTable: index out of range");
  return static_cast<Trit>(vals_[ternary_index]);
}

bool TernaryTable::is_natural() const {
  for (uint32_t idx = 0; idx < size_; ++idx) {
    TritWord w = word_of(n_, idx);
    Trit v = at(idx);
    if (w.all_stable() && !is_stable(v)) return false;
    // monotone w.r.t. the information order: check single-coordinate drops
    for (int i = 1; i <= n_; ++i) {
      if (!is_stable(w.get(i))) continue;
      Trit below = at(w.with(i, Trit::unstable));
      if (below != Trit::unstable && below != v) return false;
    }
  }
  return true;
}

// ------------------------------------------------------- extension queries

Trit extension_eval(const TruthTable& f, const TritWord& x) {
  if (x.length() != f.arity())
    throw std::invalid_argument("extension_eval: arity mismatch");
  int i = x.first_unstable();
  if (i == 0) return f.get(x.to_bits()) ? Trit::one : Trit::zero;
  Trit v0 = extension_eval(f, x.with(i, Trit::zero));
  if (v0 == Trit::unstable) return Trit::unstable;
  Trit v1 = extension_eval(f, x.with(i, Trit::one));
  return v0 == v1 ? v0 : Trit::unstable;
}

TruthTable hazard_derivative(const TernaryTable& ext, const BitWord& x) {
  if (x.length() != ext.arity())
    throw std::invalid_argument("hazard_derivative: arity mismatch");
  const int n = ext.arity();
  TruthTable d(n);
  for (uint32_t y = 0; y < d.size(); ++y) {
    Trit v = ext.at(perturb(x, BitWord(n, y)));
    d.set(y, v == Trit::unstable);
  }
  return d;
}

TruthTable hazard_derivative(const TruthTable& f, const BitWord& x) {
  if (x.length() != f.arity())
    throw std::invalid_argument("hazard_derivative: arity mismatch");
  const int n = f.arity();
  if (n <= TernaryTable::max_memo_arity)
    return hazard_derivative(TernaryTable::extension_of(f), x);
  TruthTable d(n);
  for (uint32_t y = 0; y < d.size(); ++y) {
    Trit v = extension_eval(f, perturb(x, BitWord(n, y)));
    d.set(y, v == Trit::unstable);
  }
  return d;
}

// ----------------------------------------------------- structure predicates

bool is_monotone(const TruthTable& f) {
  for (uint32_t x = 0; x < f.size(); ++x)
    for (int i = 0; i < f.arity(); ++i) {
      uint32_t bit = uint32_t{1} << i;
      if ((x & bit) == 0 && f.get(x) && !f.get(x | bit)) return false;
    }
  return true;
}

std::vector<Unateness> unateness(const TruthTable& f) {
  std::vector<Unateness> out(f.arity());
  for (int i = 0; i < f.arity(); ++i) {
    uint32_t bit = uint32_t{1} << i;
    bool pos = true, neg = true;
    for (uint32_t x = 0; x < f.size(); ++x) {
      if (x & bit) continue;
      bool lo = f.get(x), hi = f.get(x | bit);
      if (lo && !hi) pos = false;
      if (hi && !lo) neg = false;
    }
    out[i] = pos ? (neg ? Unateness::both : Unateness::positive)
                 : (neg ? Unateness::negative : Unateness::none);
  }
  return out;
}

bool is_unate(const TruthTable& f) {
  auto labels = unateness(f);
  return std::none_of(labels.begin(), labels.end(),
                      [](Unateness u) { return u == Unateness::none; });
}

TruthTable block_compose(const TruthTable& f, const TruthTable& g) {
  const int n = f.arity(), m = g.arity();
  if (n * m > TruthTable::max_arity)
    throw std::invalid_argument("block_compose: arity overflow");
  TruthTable h(n * m);
  const uint32_t row_mask = (uint32_t{1} << m) - 1;
  for (uint32_t z = 0; z < h.size(); ++z) {
    uint32_t inner = 0;
    for (int i = 0; i < n; ++i)
      inner |= uint32_t{g.get((z >> (i * m)) & row_mask)} << i;
    h.set(z, f.get(inner));
  }
  return h;
}

bool chain_rule_holds(const TruthTable& f, const TruthTable& g) {
  const int n = f.arity(), m = g.arity();
  TruthTable h = block_compose(f, g);
  TernaryTable h_ext = TernaryTable::extension_of(h);
  TernaryTable g_ext = TernaryTable::extension_of(g);
  const uint32_t row_mask = (uint32_t{1} << m) - 1;

  for (uint32_t X = 0; X < h.size(); ++X) {
    BitWord base(n * m, X);
    TruthTable dh = hazard_derivative(h_ext, base);

    // inner values g[X] and, per perturbation row, the inner derivatives
    uint32_t gX = 0;
    for (int i = 0; i < n; ++i)
      gX |= uint32_t{g.get((X >> (i * m)) & row_mask)} << i;
    TruthTable df = hazard_derivative(f, BitWord(n, gX));

    for (uint32_t Y = 0; Y < h.size(); ++Y) {
      uint32_t dgXY = 0;
      for (int i = 0; i < n; ++i) {
        uint32_t xi = (X >> (i * m)) & row_mask;
        uint32_t yi = (Y >> (i * m)) & row_mask;
        Trit v = g_ext.at(perturb(BitWord(m, xi), BitWord(m, yi)));
        dgXY |= uint32_t{v == Trit::unstable} << i;
      }
      if (dh.get(Y) != df.get(dgXY)) return false;
    }
  }
  return true;
}

}  // namespace hazard
