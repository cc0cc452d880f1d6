#include "hazard/formula.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace hazard {

// ----------------------------------------------------------- construction

Formula Formula::variable(int index) {
  if (index < 1) throw std::invalid_argument("Formula: variable index must be >= 1");
  auto n = std::make_shared<Node>();
  n->kind = Kind::variable;
  n->var = index;
  n->max_var = index;
  return Formula(std::move(n));
}

Formula Formula::constant(bool v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::constant;
  n->cval = v;
  return Formula(std::move(n));
}

Formula Formula::negation(const Formula& f) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::not_gate;
  n->a = f.node_;
  n->size = f.size();
  n->depth = f.depth();  // NOT gates do not count toward depth
  n->monotone = false;
  n->max_var = f.max_var();
  return Formula(std::move(n));
}

namespace {

template <typename Node>
std::shared_ptr<const Node> binary_node(Formula::Kind kind,
                                        std::shared_ptr<const Node> a,
                                        std::shared_ptr<const Node> b) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->size = a->size + b->size;
  n->depth = 1 + std::max(a->depth, b->depth);
  n->monotone = a->monotone && b->monotone;
  n->max_var = std::max(a->max_var, b->max_var);
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

}  // namespace

Formula Formula::conj(const Formula& a, const Formula& b) {
  return Formula(binary_node(Kind::and_gate, a.node_, b.node_));
}

Formula Formula::disj(const Formula& a, const Formula& b) {
  return Formula(binary_node(Kind::or_gate, a.node_, b.node_));
}

Formula Formula::conj_n(std::span<const Formula> fs) {
  if (fs.empty()) return constant(true);
  if (fs.size() == 1) return fs[0];
  size_t mid = fs.size() / 2;
  return conj(conj_n(fs.first(mid)), conj_n(fs.subspan(mid)));
}

Formula Formula::disj_n(std::span<const Formula> fs) {
  if (fs.empty()) return constant(false);
  if (fs.size() == 1) return fs[0];
  size_t mid = fs.size() / 2;
  return disj(disj_n(fs.first(mid)), disj_n(fs.subspan(mid)));
}

Formula Formula::child() const {
  if (kind() != Kind::not_gate) throw std::logic_error("Formula: not a NOT node");
  return Formula(node_->a);
}

Formula Formula::left() const {
  if (kind() != Kind::and_gate && kind() != Kind::or_gate)
    throw std::logic_error("Formula: not a binary node");
  return Formula(node_->a);
}

Formula Formula::right() const {
  if (kind() != Kind::and_gate && kind() != Kind::or_gate)
    throw std::logic_error("Formula: not a binary node");
  return Formula(node_->b);
}

// ----------------------------------------------------------------- eval

Trit Formula::eval(const TritWord& x) const {
  switch (kind()) {
    case Kind::variable:
      if (var_index() > x.length())
        throw std::invalid_argument("Formula: unbound variable x" +
                                    std::to_string(var_index()));
      return x.get(var_index());
    case Kind::constant:
      return const_value() ? Trit::one : Trit::zero;
    case Kind::not_gate:
      return trit_not(Formula(node_->a).eval(x));
    case Kind::and_gate: {
      Trit a = Formula(node_->a).eval(x);
      if (a == Trit::zero) return Trit::zero;
      return trit_and(a, Formula(node_->b).eval(x));
    }
    case Kind::or_gate: {
      Trit a = Formula(node_->a).eval(x);
      if (a == Trit::one) return Trit::one;
      return trit_or(a, Formula(node_->b).eval(x));
    }
  }
  throw std::logic_error("Formula: corrupt node");
}

bool Formula::eval_bool(const BitWord& x) const {
  return eval(TritWord::from_bits(x)) == Trit::one;
}

TruthTable Formula::table(int arity) const {
  if (max_var() > arity) throw std::invalid_argument("Formula: arity below max variable");
  TruthTable t(arity);
  for (uint32_t i = 0; i < t.size(); ++i) t.set(i, eval_bool(BitWord(arity, i)));
  return t;
}

Formula Formula::substitute(const std::function<Formula(int)>& subst) const {
  switch (kind()) {
    case Kind::variable:
      return subst(var_index());
    case Kind::constant:
      return *this;
    case Kind::not_gate:
      return negation(Formula(node_->a).substitute(subst));
    case Kind::and_gate:
      return conj(Formula(node_->a).substitute(subst), Formula(node_->b).substitute(subst));
    case Kind::or_gate:
      return disj(Formula(node_->a).substitute(subst), Formula(node_->b).substitute(subst));
  }
  throw std::logic_error("Formula: corrupt node");
}

bool Formula::same_tree(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::variable:
      return var_index() == other.var_index();
    case Kind::constant:
      return const_value() == other.const_value();
    case Kind::not_gate:
      return child().same_tree(other.child());
    default:
      return left().same_tree(other.left()) && right().same_tree(other.right());
  }
}

// --------------------------------------------------------------- s-exprs

std::string Formula::to_sexpr() const {
  switch (kind()) {
    case Kind::variable:
      return "x" + std::to_string(var_index());
    case Kind::constant:
      return const_value() ? "1" : "0";
    case Kind::not_gate:
      return "(not " + child().to_sexpr() + ")";
    case Kind::and_gate:
      return "(and " + left().to_sexpr() + " " + right().to_sexpr() + ")";
    case Kind::or_gate:
      return "(or " + left().to_sexpr() + " " + right().to_sexpr() + ")";
  }
  throw std::logic_error("Formula: corrupt node");
}

namespace {

struct SexprParser {
  std::string_view s;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument("formula parse error at offset " + std::to_string(pos) +
                                ": " + msg);
  }

  std::string token() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos])) &&
           s[pos] != '(' && s[pos] != ')')
      ++pos;
    if (start == pos) fail("expected token");
    return std::string(s.substr(start, pos - start));
  }

  Formula parse() {
    skip_ws();
    if (pos >= s.size()) fail("unexpected end of input");
    if (s[pos] != '(') {
      std::string t = token();
      if (t == "0") return Formula::constant(false);
      if (t == "1") return Formula::constant(true);
      if (t.size() >= 2 && (t[0] == 'x' || t[0] == 'X')) {
        for (size_t i = 1; i < t.size(); ++i)
          if (!std::isdigit(static_cast<unsigned char>(t[i]))) fail("bad variable " + t);
        int idx = std::stoi(t.substr(1));
        if (idx < 1) fail("variable indices start at x1");
        return Formula::variable(idx);
      }
      fail("unknown atom " + t);
    }
    ++pos;  // consume '('
    std::string op = token();
    std::vector<Formula> args;
    while (true) {
      skip_ws();
      if (pos >= s.size()) fail("missing )");
      if (s[pos] == ')') {
        ++pos;
        break;
      }
      args.push_back(parse());
    }
    if (op == "not") {
      if (args.size() != 1) fail("not takes one argument");
      return Formula::negation(args[0]);
    }
    if (op == "and" || op == "or") {
      if (args.size() < 2) fail(op + " takes at least two arguments");
      return op == "and" ? Formula::conj_n(args) : Formula::disj_n(args);
    }
    fail("unknown operator " + op);
  }
};

}  // namespace

Formula Formula::parse_sexpr(std::string_view text) {
  SexprParser p{text};
  Formula f = p.parse();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return f;
}

// ----------------------------------------------------------- hazard check

HazardReport hazard_check(const Formula& f, int arity) {
  if (arity > TernaryTable::max_memo_arity)
    throw std::invalid_argument(
        "hazard_check: arity too large for a full scan; request sampling explicitly");
  HazardReport rep;
  rep.arity = arity;
  rep.function = f.table(arity);
  TernaryTable ext = TernaryTable::extension_of(rep.function);
  for (uint32_t idx = 0; idx < ext.size(); ++idx) {
    TritWord w = TernaryTable::word_of(arity, idx);
    if (f.eval(w) == Trit::unstable && ext.at(idx) != Trit::unstable)
      rep.witnesses.push_back(w);
  }
  rep.inputs_checked = ext.size();
  std::sort(rep.witnesses.begin(), rep.witnesses.end(), canonical_less);
  rep.hazard_free = rep.witnesses.empty();
  return rep;
}

HazardReport hazard_check_sampled(const Formula& f, int arity, int samples, uint64_t seed) {
  if (arity > TruthTable::max_arity)
    throw std::invalid_argument("hazard_check_sampled: arity too large");
  HazardReport rep;
  rep.arity = arity;
  rep.exhaustive = false;
  rep.function = f.table(arity);
  uint64_t state = seed;
  for (int k = 0; k < samples; ++k) {
    uint64_t r = splitmix64(state);
    TritWord w(arity);
    for (int i = 1; i <= arity; ++i) {
      w = w.with(i, static_cast<Trit>(r % 3));
      r /= 3;
    }
    if (f.eval(w) == Trit::unstable && extension_eval(rep.function, w) != Trit::unstable)
      rep.witnesses.push_back(w);
  }
  rep.inputs_checked = static_cast<uint64_t>(samples);
  std::sort(rep.witnesses.begin(), rep.witnesses.end(), canonical_less);
  rep.witnesses.erase(std::unique(rep.witnesses.begin(), rep.witnesses.end()),
                      rep.witnesses.end());
  rep.hazard_free = rep.witnesses.empty();
  return rep;
}

// ------------------------------------------------------------- DNF / CNF

namespace {

Formula literal(int index, bool positive) {
  Formula v = Formula::variable(index);
  return positive ? v : Formula::negation(v);
}

}  // namespace

Formula dnf_from_primes(const PrimeSet& implicants) {
  if (implicants.polarity != 1)
    throw std::invalid_argument("dnf_from_primes: expected polarity 1");
  std::vector<Formula> terms;
  for (const auto& p : implicants.words) {
    std::vector<Formula> lits;
    for (int i = 1; i <= p.length(); ++i) {
      Trit t = p.get(i);
      if (is_stable(t)) lits.push_back(literal(i, t == Trit::one));
    }
    // the all-u implicant only arises for the constant-1 function
    terms.push_back(Formula::conj_n(lits));
  }
  return Formula::disj_n(terms);
}

Formula cnf_from_primes(const PrimeSet& implicates) {
  if (implicates.polarity != 0)
    throw std::invalid_argument("cnf_from_primes: expected polarity 0");
  std::vector<Formula> clauses;
  for (const auto& p : implicates.words) {
    std::vector<Formula> lits;
    for (int i = 1; i <= p.length(); ++i) {
      Trit t = p.get(i);
      if (is_stable(t)) lits.push_back(literal(i, t == Trit::zero));
    }
    clauses.push_back(Formula::disj_n(lits));
  }
  return Formula::conj_n(clauses);
}

// ------------------------------------------------------- constant folding

Formula fold_constants(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::variable:
    case Formula::Kind::constant:
      return f;
    case Formula::Kind::not_gate: {
      Formula c = fold_constants(f.child());
      if (c.kind() == Formula::Kind::constant)
        return Formula::constant(!c.const_value());
      return Formula::negation(c);
    }
    case Formula::Kind::and_gate: {
      Formula a = fold_constants(f.left());
      Formula b = fold_constants(f.right());
      if (a.kind() == Formula::Kind::constant) return a.const_value() ? b : a;
      if (b.kind() == Formula::Kind::constant) return b.const_value() ? a : b;
      return Formula::conj(a, b);
    }
    case Formula::Kind::or_gate: {
      Formula a = fold_constants(f.left());
      Formula b = fold_constants(f.right());
      if (a.kind() == Formula::Kind::constant) return a.const_value() ? a : b;
      if (b.kind() == Formula::Kind::constant) return b.const_value() ? b : a;
      return Formula::disj(a, b);
    }
  }
  throw std::logic_error("Formula: corrupt node");
}

// --------------------------------------------------------- mux synthesis

namespace {

// One selector stage. Verified exhaustively (all 27 ternary inputs) to
// compute the ternary multiplexer exactly, which makes the recursive
// composition below hazard-free. Five leaves; a bounded search over all
// formulas on three variables shows four leaves cannot be hazard-free.
Formula mux1_gadget(const Formula& s, const Formula& a, const Formula& b) {
  return Formula::disj(Formula::conj(Formula::disj(a, s), b),
                       Formula::conj(Formula::negation(s), a));
}

Formula mux_rec(int sel_lo, int sel_count, const std::vector<Formula>& data) {
  if (sel_count == 0) return data[0];
  // selector sel_lo is the least significant: it splits even and odd slots
  std::vector<Formula> evens, odds;
  for (size_t i = 0; i < data.size(); ++i)
    (i % 2 == 0 ? evens : odds).push_back(data[i]);
  Formula a = mux_rec(sel_lo + 1, sel_count - 1, evens);
  Formula b = mux_rec(sel_lo + 1, sel_count - 1, odds);
  return mux1_gadget(Formula::variable(sel_lo), a, b);
}

}  // namespace

Formula mux_hazard_free(int n) {
  if (n < 1 || n > 4) throw std::invalid_argument("mux_hazard_free: n must be in 1..4");
  std::vector<Formula> data;
  for (int j = 0; j < (1 << n); ++j) data.push_back(Formula::variable(n + 1 + j));
  return mux_rec(1, n, data);
}

Formula universal_hazard_free(const TruthTable& f) {
  const int n = f.arity();
  if (n > 4) throw std::invalid_argument("universal_hazard_free: arity must be <= 4");
  Formula mux = mux_hazard_free(n);
  Formula wired = mux.substitute([&](int v) -> Formula {
    if (v <= n) return Formula::variable(v);
    return Formula::constant(f.get(static_cast<uint32_t>(v - n - 1)));
  });
  return fold_constants(wired);
}

// ------------------------------------------------- derivative-based cover

Formula derivative_cover_synthesis(const TruthTable& f,
                                   const std::vector<BitWord>& base_points,
                                   CoverSide side) {
  const int b = (side == CoverSide::implicates) ? 0 : 1;
  PrimeSet target = prime_set(f, b);

  std::vector<bool> covered(target.words.size(), false);
  for (const auto& x : base_points) {
    if (f.get(x) != (b == 1))
      throw std::invalid_argument("derivative_cover_synthesis: base point on wrong side");
    for (size_t k = 0; k < target.words.size(); ++k)
      if (!covered[k] && derives(target.words[k], x)) covered[k] = true;
  }
  if (!std::all_of(covered.begin(), covered.end(), [](bool c) { return c; }))
    throw std::invalid_argument(
        "derivative_cover_synthesis: base points do not cover the prime set");

  TernaryTable ext = TernaryTable::extension_of(f);
  std::vector<Formula> pieces;
  for (const auto& x : base_points) {
    TruthTable d = hazard_derivative(ext, x);
    Formula mono = dnf_from_primes(prime_set(d, 1));
    // y_j -> x_j == 0 ? z_j : not z_j
    Formula piece = mono.substitute([&](int j) { return literal(j, !x.get(j)); });
    if (side == CoverSide::implicants) {
      // dual construction: negate and push through via De Morgan, which
      // is exact on ternary values
      std::function<Formula(const Formula&)> negate_down =
          [&](const Formula& g) -> Formula {
        switch (g.kind()) {
          case Formula::Kind::and_gate:
            return Formula::disj(negate_down(g.left()), negate_down(g.right()));
          case Formula::Kind::or_gate:
            return Formula::conj(negate_down(g.left()), negate_down(g.right()));
          case Formula::Kind::not_gate:
            return g.child();
          case Formula::Kind::constant:
            return Formula::constant(!g.const_value());
          default:
            return Formula::negation(g);
        }
      };
      piece = negate_down(piece);
    }
    pieces.push_back(piece);
  }
  return side == CoverSide::implicates ? Formula::conj_n(pieces)
                                       : Formula::disj_n(pieces);
}

// -------------------------------------------------------- named formulas

Formula threshold_formula(int n, int k) {
  return dnf_from_primes(prime_set(TruthTable::threshold(n, k), 1));
}

Formula range_formula(int n, int a, int b) {
  if (!(0 < a && a < b && b <= n))
    throw std::invalid_argument("range_formula: need 0 < a < b <= n");
  return Formula::conj(threshold_formula(n, a),
                       Formula::negation(threshold_formula(n, b)));
}

AndreevDerivative andreev_derivative(int k, int m, const TruthTable& f, const BitWord& X) {
  if (f.arity() != k) throw std::invalid_argument("andreev_derivative: f must have arity k");
  if (X.length() != k * m) throw std::invalid_argument("andreev_derivative: X must be k*m bits");
  const int pow2k = 1 << k;
  if (k + pow2k > TernaryTable::max_memo_arity)
    throw std::invalid_argument("andreev_derivative: k too large");
  if (pow2k + k * m > TruthTable::max_arity)
    throw std::invalid_argument("andreev_derivative: parameter overflow");

  // base point of the multiplexer: selectors carry the block parities,
  // the data inputs carry f's table
  uint32_t s_star = 0;
  for (int i = 0; i < k; ++i) {
    int parity = 0;
    for (int j = 1; j <= m; ++j) parity ^= X.get(i * m + j) ? 1 : 0;
    s_star |= static_cast<uint32_t>(parity) << i;
  }
  uint32_t f_bits = 0;
  for (uint32_t t = 0; t < static_cast<uint32_t>(pow2k); ++t)
    f_bits |= uint32_t{f.get(t)} << t;

  TruthTable mux = TruthTable::multiplexer(k);
  TruthTable d = hazard_derivative(mux, BitWord(k + pow2k, s_star | (f_bits << k)));
  Formula mono = dnf_from_primes(prime_set(d, 1));

  // derivative variables: 1..k are the selector perturbations (become OR
  // blocks over the Y rows), k+1..k+2^k are the data perturbations t
  AndreevDerivative out;
  out.formula = mono.substitute([&](int v) -> Formula {
    if (v > k) return Formula::variable(v - k);  // t_j at position j
    std::vector<Formula> row;
    for (int j = 1; j <= m; ++j)
      row.push_back(Formula::variable(pow2k + (v - 1) * m + j));
    return Formula::disj_n(row);
  });
  out.achieved_size = out.formula.size();
  out.nominal_size = (k + 1) * pow2k + k * m;
  return out;
}

}  // namespace hazard
