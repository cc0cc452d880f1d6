#include "hazard/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include <json.hpp>

#include "hazard/formula.hpp"
#include "hazard/implicants.hpp"

namespace hazard {

using nlohmann::json;

namespace {

std::string timestamp_now() {
  auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

json report_header(const char* study) {
  json j;
  j["study"] = study;
  j["version"] = library_version;
  j["timestamp"] = timestamp_now();
  return j;
}

uint64_t trial_seed(uint64_t master, uint64_t index) {
  uint64_t s = master ^ (0x9E3779B97F4A7C15ull * (index + 1));
  return splitmix64(s);
}

// Runs fn(i) for i in [0, count) on up to `jobs` workers. Work items are
// independent; results land in caller-owned slots, so order never matters.
void parallel_for(int jobs, int count, const std::function<void(int)>& fn) {
  if (jobs <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
  };
  std::vector<std::thread> pool;
  int n_threads = std::min(jobs, count);
  pool.reserve(n_threads);
  for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

}  // namespace

std::string random_derivative_study(int n, int trials, int x_samples, uint64_t seed,
                                    double threshold, int probe_n, int probe_k,
                                    int probe_samples, const StudyOptions& opts) {
  if (n < 1 || n > TernaryTable::max_memo_arity)
    throw std::invalid_argument("random_derivative_study: n must be in 1..13");
  if (trials < 1 || x_samples < 1)
    throw std::invalid_argument("random_derivative_study: need at least one trial");

  const int weight_bound = static_cast<int>(std::ceil(std::log2(n))) + 1;

  struct Sample {
    int max_weight;
    int dnf_size;
    int prime_count;
  };
  std::vector<std::vector<Sample>> per_trial(trials);

  parallel_for(opts.jobs, trials, [&](int t) {
    uint64_t st = trial_seed(seed, static_cast<uint64_t>(t));
    TruthTable f = TruthTable::random_fn(n, splitmix64(st));
    TernaryTable ext = TernaryTable::extension_of(f);
    auto& samples = per_trial[t];
    samples.reserve(x_samples);
    for (int s = 0; s < x_samples; ++s) {
      BitWord x(n, static_cast<uint32_t>(splitmix64(st) & ((uint64_t{1} << n) - 1)));
      TruthTable d = hazard_derivative(ext, x);
      PrimeSet primes = prime_set(d, 1);
      Sample rec{0, 0, static_cast<int>(primes.words.size())};
      for (const auto& p : primes.words) {
        int w = weight(p);
        rec.max_weight = std::max(rec.max_weight, w);
        rec.dnf_size += w;
      }
      samples.push_back(rec);
    }
  });

  int total = 0, within_bound = 0, max_weight_seen = 0;
  uint64_t dnf_total = 0;
  for (const auto& samples : per_trial)
    for (const auto& s : samples) {
      ++total;
      if (s.max_weight <= weight_bound) ++within_bound;
      max_weight_seen = std::max(max_weight_seen, s.max_weight);
      dnf_total += static_cast<uint64_t>(s.dnf_size);
    }
  double fraction = static_cast<double>(within_bound) / total;

  // fixed-word probe at the base point 0: primality of one weight-k word
  // under a fresh random function each time
  TritWord probe_word(probe_n);
  for (int i = 1; i <= probe_n; ++i)
    probe_word = probe_word.with(i, i <= probe_k ? Trit::one : Trit::unstable);
  BitWord probe_x(probe_n, 0);
  BitWord q_min = min_resolution(probe_word);

  uint64_t probe_state = seed ^ 0xA5A5A5A5A5A5A5A5ull;
  int probe_hits = 0;
  for (int s = 0; s < probe_samples; ++s) {
    TruthTable f = TruthTable::random_fn(probe_n, splitmix64(probe_state));
    // monotone derivative: prime iff the minimal resolution is a minimal
    // true point
    auto dval = [&](const BitWord& y) {
      return extension_eval(f, perturb(probe_x, y)) == Trit::unstable;
    };
    bool prime = dval(q_min);
    for (int i = 1; prime && i <= probe_n; ++i)
      if (q_min.get(i) && dval(q_min.with(i, false))) prime = false;
    if (prime) ++probe_hits;
  }
  double probe_freq = static_cast<double>(probe_hits) / probe_samples;
  double probe_expected = std::pow(0.5, (1 << probe_k) - 1);

  json j = report_header("random-derivative");
  j["params"] = {{"n", n},
                 {"trials", trials},
                 {"x_samples", x_samples},
                 {"seed", seed},
                 {"threshold", threshold},
                 {"probe_n", probe_n},
                 {"probe_k", probe_k},
                 {"probe_samples", probe_samples},
                 {"probe_x", probe_x.str()},
                 {"probe_word", probe_word.str()}};
  j["weight_bound"] = weight_bound;
  j["samples"] = total;
  j["within_bound"] = within_bound;
  j["fraction_within_bound"] = fraction;
  j["meets_threshold"] = fraction >= threshold;
  j["max_weight_seen"] = max_weight_seen;
  j["mean_dnf_size"] = static_cast<double>(dnf_total) / total;
  j["probe"] = {{"hits", probe_hits},
                {"frequency", probe_freq},
                {"expected", probe_expected},
                {"abs_error", std::fabs(probe_freq - probe_expected)}};
  return j.dump(2);
}

std::string monogap_report(const TruthTable& f, const SearchLimits& lim) {
  UnateCriterionReport rep = unate_criterion(f, lim);

  json j = report_header("monogap");
  j["params"] = {{"n", f.arity()}, {"table", f.to_text()}};
  j["size_u"] = rep.size_u;
  j["max_derivative_size"] = rep.max_derivative_size;
  j["argmax_x"] = rep.argmax_x.str();
  j["gap"] = static_cast<double>(rep.size_u) /
             static_cast<double>(rep.max_derivative_size);
  j["unate"] = rep.unate;
  j["gap_free"] = rep.gap_free;
  j["criterion_holds"] = rep.criterion_holds;
  if (rep.witness) {
    j["witness"] = {{"coord", rep.witness->coord},
                    {"p1", rep.witness->p1.str()},
                    {"p0", rep.witness->p0.str()},
                    {"q1", rep.witness->q1.str()},
                    {"q0", rep.witness->q0.str()}};
  }
  return j.dump(2);
}

std::string range_study(int n, int a, int b, const SearchLimits& lim) {
  TruthTable r = TruthTable::range_fn(n, a, b);
  if (n > TernaryTable::max_memo_arity)
    throw std::invalid_argument("range_study: n too large for prime scans");

  PrimeSet p1 = prime_set(r, 1), p0 = prime_set(r, 0);

  // predicted structure: implicants have a ones and n-(b-1) zeros;
  // implicates are all-ones of weight b or all-zeros with n-(a-1) zeros
  bool implicants_ok = true;
  for (const auto& p : p1.words) {
    int n1 = 0, n0 = 0;
    for (int i = 1; i <= n; ++i) {
      if (p.get(i) == Trit::one) ++n1;
      if (p.get(i) == Trit::zero) ++n0;
    }
    if (n1 != a || n0 != n - (b - 1)) implicants_ok = false;
  }
  bool implicates_ok = true;
  for (const auto& p : p0.words) {
    int n1 = 0, n0 = 0;
    for (int i = 1; i <= n; ++i) {
      if (p.get(i) == Trit::one) ++n1;
      if (p.get(i) == Trit::zero) ++n0;
    }
    if (!((n0 == 0 && n1 == b) || (n1 == 0 && n0 == n - (a - 1)))) implicates_ok = false;
  }

  // derivative identities at the all-zeros and all-ones base points
  BitWord zeros(n, 0), ones(n, (uint32_t{1} << n) - 1);
  TernaryTable ext = TernaryTable::extension_of(r);
  bool d0_ok = hazard_derivative(ext, zeros) == TruthTable::threshold(n, a);
  bool d1_ok = hazard_derivative(ext, ones) == TruthTable::threshold(n, n - (b - 1));

  // every prime implicate derives one of the two base points
  bool cover_ok = true;
  for (const auto& p : p0.words)
    if (!derives(p, zeros) && !derives(p, ones)) cover_ok = false;

  json j = report_header("range");
  j["params"] = {{"n", n}, {"a", a}, {"b", b}};
  j["prime_implicant_count"] = p1.words.size();
  j["prime_implicate_count"] = p0.words.size();
  j["implicant_structure_ok"] = implicants_ok;
  j["implicate_structure_ok"] = implicates_ok;
  j["derivative_at_zeros_is_threshold_a"] = d0_ok;
  j["derivative_at_ones_is_threshold"] = d1_ok;
  j["cover_condition_ok"] = cover_ok;

  // exact sizes only while the matrices stay inside the search limit
  size_t labels = p1.words.size() + p0.words.size();
  if (labels <= lim.max_labels) {
    uint64_t size_u = monorect_exact(kwu_matrix(p1, p0), lim).leaves;
    uint64_t size_ta = monorect_exact(kwu_matrix(TruthTable::threshold(n, a)), lim).leaves;
    uint64_t size_tb =
        monorect_exact(kwu_matrix(TruthTable::threshold(n, n - (b - 1))), lim).leaves;
    j["size_u"] = size_u;
    j["size_threshold_a"] = size_ta;
    j["size_threshold_high"] = size_tb;
    j["tight"] = size_u == size_ta + size_tb;
  } else {
    j["size_u"] = nullptr;
    j["note"] = "exact search skipped: label count above limit";
  }
  return j.dump(2);
}

std::string andreev_study(int k, int m, int bases, int perturbations, uint64_t seed) {
  const int pow2k = 1 << k;
  const int arity = pow2k + k * m;
  if (arity > TernaryTable::max_memo_arity)
    throw std::invalid_argument("andreev_study: arity too large for the oracle");

  TruthTable big = TruthTable::andreev(k, m);
  TernaryTable big_ext = TernaryTable::extension_of(big);

  json base_reports = json::array();
  uint64_t total_mismatches = 0;
  uint64_t state = seed;
  for (int bidx = 0; bidx < bases; ++bidx) {
    TruthTable f = TruthTable::random_fn(k, splitmix64(state));
    uint32_t xbits =
        static_cast<uint32_t>(splitmix64(state) & ((uint64_t{1} << (k * m)) - 1));
    BitWord X(k * m, xbits);

    AndreevDerivative ad = andreev_derivative(k, m, f, X);

    uint32_t fbits = 0;
    for (uint32_t t = 0; t < static_cast<uint32_t>(pow2k); ++t)
      fbits |= uint32_t{f.get(t)} << t;
    BitWord base(arity, fbits | (xbits << pow2k));
    TruthTable oracle = hazard_derivative(big_ext, base);

    uint64_t mismatches = 0;
    for (int s = 0; s < perturbations; ++s) {
      uint32_t y = static_cast<uint32_t>(splitmix64(state) & (big.size() - 1));
      bool want = oracle.get(y);
      bool got = ad.formula.eval_bool(BitWord(arity, y));
      if (want != got) ++mismatches;
    }
    total_mismatches += mismatches;

    base_reports.push_back({{"f", f.to_text()},
                            {"X", X.str()},
                            {"achieved_size", ad.achieved_size},
                            {"nominal_size", ad.nominal_size},
                            {"mismatches", mismatches}});
  }

  json j = report_header("andreev");
  j["params"] = {{"k", k},
                 {"m", m},
                 {"bases", bases},
                 {"perturbations", perturbations},
                 {"seed", seed}};
  j["nominal_size"] = (k + 1) * pow2k + k * m;
  j["bases"] = std::move(base_reports);
  j["total_mismatches"] = total_mismatches;
  return j.dump(2);
}

}  // namespace hazard
