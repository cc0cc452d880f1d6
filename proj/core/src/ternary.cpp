#include "hazard/ternary.hpp"

namespace hazard {

namespace {

// Extended De Morgan gate tables, indexed by the Trit enum values.
constexpr Trit kNot[3] = {Trit::one, Trit::zero, Trit::unstable};

constexpr Trit kAnd[3][3] = {
    {Trit::zero, Trit::zero, Trit::zero},
    {Trit::zero, Trit::one, Trit::unstable},
    {Trit::zero, Trit::unstable, Trit::unstable},
};

constexpr Trit kOr[3][3] = {
    {Trit::zero, Trit::one, Trit::unstable},
    {Trit::one, Trit::one, Trit::one},
    {Trit::unstable, Trit::one, Trit::unstable},
};

inline int idx(Trit t) { return static_cast<int>(t); }

}  // namespace

Trit trit_not(Trit a) { return kNot[idx(a)]; }
Trit trit_and(Trit a, Trit b) { return kAnd[idx(a)][idx(b)]; }
Trit trit_or(Trit a, Trit b) { return kOr[idx(a)][idx(b)]; }

Trit trit_xor(Trit a, Trit b) {
  if (!is_stable(a) || !is_stable(b)) return Trit::unstable;
  return a == b ? Trit::zero : Trit::one;
}

Trit gate_eval(GateOp op, Trit a) {
  if (op != GateOp::not_gate)
    throw std::invalid_argument("gate_eval: binary gate needs two arguments");
  return trit_not(a);
}

Trit gate_eval(GateOp op, Trit a, Trit b) {
  switch (op) {
    case GateOp::and_gate:
      return trit_and(a, b);
    case GateOp::or_gate:
      return trit_or(a, b);
    default:
      throw std::invalid_argument("gate_eval: not-gate takes one argument");
  }
}

char to_char(Trit t) {
  switch (t) {
    case Trit::zero:
      return '0';
    case Trit::one:
      return '1';
    default:
      return 'u';
  }
}

Trit trit_from_char(char c) {
  switch (c) {
    case '0':
      return Trit::zero;
    case '1':
      return Trit::one;
    case 'u':
    case 'U':
      return Trit::unstable;
    default:
      throw std::invalid_argument(std::string("invalid trit character: ") + c);
  }
}

// ---------------------------------------------------------------- BitWord

BitWord::BitWord(int length, uint32_t bits) : n_(length), bits_(bits) {
  if (length < 0 || length > TritWord::max_length)
    throw std::invalid_argument("BitWord: bad length");
  if (length < 32 && (bits >> length) != 0)
    throw std::invalid_argument("BitWord: bits outside length");
}

BitWord BitWord::parse(std::string_view s) {
  if (s.size() > TritWord::max_length)
    throw std::invalid_argument("BitWord: too long");
  uint32_t bits = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1')
      bits |= uint32_t{1} << i;
    else if (s[i] != '0')
      throw std::invalid_argument("BitWord: invalid character");
  }
  return BitWord(static_cast<int>(s.size()), bits);
}

bool BitWord::get(int i) const {
  if (i < 1 || i > n_) throw std::out_of_range("BitWord: coordinate out of range");
  return (bits_ >> (i - 1)) & 1u;
}

BitWord BitWord::with(int i, bool v) const {
  if (i < 1 || i > n_) throw std::out_of_range("BitWord: coordinate out of range");
  uint32_t b = bits_;
  if (v)
    b |= uint32_t{1} << (i - 1);
  else
    b &= ~(uint32_t{1} << (i - 1));
  return BitWord(n_, b);
}

int BitWord::weight() const { return __builtin_popcount(bits_); }

std::string BitWord::str() const {
  std::string s(n_, '0');
  for (int i = 0; i < n_; ++i)
    if ((bits_ >> i) & 1u) s[i] = '1';
  return s;
}

// --------------------------------------------------------------- TritWord

TritWord::TritWord(int length) : n_(length) {
  if (length < 0 || length > max_length)
    throw std::invalid_argument("TritWord: bad length");
}

TritWord TritWord::parse(std::string_view s) {
  if (s.size() > max_length) throw std::invalid_argument("TritWord: too long");
  uint64_t packed = 0;
  for (size_t i = 0; i < s.size(); ++i)
    packed |= uint64_t{static_cast<uint8_t>(trit_from_char(s[i]))} << (2 * i);
  return TritWord(static_cast<int>(s.size()), packed);
}

TritWord TritWord::from_bits(const BitWord& w) {
  uint64_t packed = 0;
  for (int i = 0; i < w.length(); ++i)
    if ((w.bits() >> i) & 1u) packed |= uint64_t{1} << (2 * i);
  return TritWord(w.length(), packed);
}

TritWord TritWord::all_unstable(int length) {
  TritWord w(length);
  for (int i = 0; i < length; ++i)
    w.packed_ |= uint64_t{2} << (2 * i);
  return w;
}

Trit TritWord::get(int i) const {
  if (i < 1 || i > n_) throw std::out_of_range("TritWord: coordinate out of range");
  return static_cast<Trit>((packed_ >> (2 * (i - 1))) & 3u);
}

TritWord TritWord::with(int i, Trit t) const {
  if (i < 1 || i > n_) throw std::out_of_range("TritWord: coordinate out of range");
  uint64_t p = packed_ & ~(uint64_t{3} << (2 * (i - 1)));
  p |= uint64_t{static_cast<uint8_t>(t)} << (2 * (i - 1));
  return TritWord(n_, p);
}

bool TritWord::all_stable() const {
  // u is encoded as 10, so any set high bit marks an unstable coordinate
  return (packed_ & 0xAAAAAAAAAAAAAAAAull) == 0;
}

int TritWord::first_unstable() const {
  uint64_t highs = packed_ & 0xAAAAAAAAAAAAAAAAull;
  if (highs == 0) return 0;
  return __builtin_ctzll(highs) / 2 + 1;
}

int TritWord::unstable_count() const {
  return __builtin_popcountll(packed_ & 0xAAAAAAAAAAAAAAAAull);
}

BitWord TritWord::to_bits() const {
  if (!all_stable()) throw std::logic_error("TritWord: unstable word has no bit form");
  uint32_t bits = 0;
  for (int i = 0; i < n_; ++i)
    if ((packed_ >> (2 * i)) & 1u) bits |= uint32_t{1} << i;
  return BitWord(n_, bits);
}

std::string TritWord::str() const {
  std::string s;
  s.reserve(n_);
  for (int i = 1; i <= n_; ++i) s.push_back(to_char(get(i)));
  return s;
}

bool canonical_less(const TritWord& a, const TritWord& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  // enum values are 0 < 1 < u already, compare coordinate 1 first
  for (int i = 1; i <= a.length(); ++i) {
    auto x = static_cast<int>(a.get(i)), y = static_cast<int>(b.get(i));
    if (x != y) return x < y;
  }
  return false;
}

bool preceq(const TritWord& x, const TritWord& y) {
  if (x.length() != y.length())
    throw std::invalid_argument("preceq: length mismatch");
  for (int i = 1; i <= x.length(); ++i) {
    Trit a = x.get(i);
    if (a != Trit::unstable && a != y.get(i)) return false;
  }
  return true;
}

TritWord word_xor(const TritWord& x, const TritWord& y) {
  if (x.length() != y.length())
    throw std::invalid_argument("word_xor: length mismatch");
  TritWord r(x.length());
  for (int i = 1; i <= x.length(); ++i) r = r.with(i, trit_xor(x.get(i), y.get(i)));
  return r;
}

TritWord replace(const TritWord& x, int i, Trit b) { return x.with(i, b); }

TritWord replace_all(const TritWord& x, Trit s, Trit b) {
  TritWord r = x;
  for (int i = 1; i <= x.length(); ++i)
    if (x.get(i) == s) r = r.with(i, b);
  return r;
}

TritWord perturb(const BitWord& x, const BitWord& y) {
  if (x.length() != y.length())
    throw std::invalid_argument("perturb: length mismatch");
  TritWord r = TritWord::from_bits(x);
  for (int i = 1; i <= y.length(); ++i)
    if (y.get(i)) r = r.with(i, Trit::unstable);
  return r;
}

BitWord max_resolution(const TritWord& x) {
  uint32_t bits = 0;
  for (int i = 1; i <= x.length(); ++i)
    if (x.get(i) != Trit::zero) bits |= uint32_t{1} << (i - 1);
  return BitWord(x.length(), bits);
}

BitWord min_resolution(const TritWord& x) {
  uint32_t bits = 0;
  for (int i = 1; i <= x.length(); ++i)
    if (x.get(i) == Trit::one) bits |= uint32_t{1} << (i - 1);
  return BitWord(x.length(), bits);
}

uint32_t stable_diff(const TritWord& x, const TritWord& y) {
  if (x.length() != y.length())
    throw std::invalid_argument("stable_diff: length mismatch");
  uint32_t mask = 0;
  for (int i = 1; i <= x.length(); ++i)
    if (trit_xor(x.get(i), y.get(i)) == Trit::one) mask |= uint32_t{1} << (i - 1);
  return mask;
}

std::vector<int> mask_to_coords(uint32_t mask) {
  std::vector<int> out;
  for (int i = 1; mask != 0; ++i, mask >>= 1)
    if (mask & 1u) out.push_back(i);
  return out;
}

int weight(const TritWord& x) {
  int w = 0;
  for (int i = 1; i <= x.length(); ++i)
    if (x.get(i) == Trit::one) ++w;
  return w;
}

uint64_t resolution_count(const TritWord& x) {
  return uint64_t{1} << x.unstable_count();
}

// ------------------------------------------------------------ Resolutions

Resolutions::Resolutions(const TritWord& x) : n_(x.length()) {
  for (int i = 1; i <= n_; ++i) {
    Trit t = x.get(i);
    if (t == Trit::unstable)
      upos_.push_back(i);
    else if (t == Trit::one)
      base_ |= uint32_t{1} << (i - 1);
  }
}

BitWord Resolutions::iterator::operator*() const {
  const auto& up = owner_->upos_;
  uint32_t bits = owner_->base_;
  const size_t k = up.size();
  for (size_t j = 0; j < k; ++j)
    // earlier u-positions vary most significantly: string-lexicographic order
    if ((counter_ >> (k - 1 - j)) & 1u) bits |= uint32_t{1} << (up[j] - 1);
  return BitWord(owner_->n_, bits);
}

Resolutions::iterator& Resolutions::iterator::operator++() {
  ++counter_;
  return *this;
}

Resolutions::iterator Resolutions::iterator::operator++(int) {
  iterator tmp = *this;
  ++counter_;
  return tmp;
}

Resolutions::iterator Resolutions::begin() const {
  iterator it;
  it.owner_ = this;
  it.counter_ = 0;
  return it;
}

Resolutions::iterator Resolutions::end() const {
  iterator it;
  it.owner_ = this;
  it.counter_ = size();
  return it;
}

}  // namespace hazard
