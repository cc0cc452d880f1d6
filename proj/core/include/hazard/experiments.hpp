#pragma once

#include <cstdint>
#include <string>

#include "hazard/kw.hpp"
#include "hazard/truth_table.hpp"

namespace hazard {

inline constexpr const char* library_version = "0.1.0";

/// Common knobs for the study runners. Trials are independent, carry seeds
/// derived deterministically from the master seed, and are assembled in
/// trial order, so the reports do not depend on the worker count.
struct StudyOptions {
  int jobs = 1;
};

/*!
  Samples random functions and base points and measures the prime-implicant
  structure of their hazard-derivatives: per sample the maximum prime
  weight and the monotone DNF size, aggregated against the weight bound
  ceil(log2 n) + 1 with an explicit pass threshold. A side probe estimates
  the probability that one fixed word of weight k is a prime implicant of a
  random derivative and compares it to the closed form (1/2)^(2^k - 1).

  Returns a JSON report; identical parameters and seed give identical
  reports except for the timestamp field.
*/
std::string random_derivative_study(int n, int trials, int x_samples, uint64_t seed,
                                    double threshold = 0.95, int probe_n = 3,
                                    int probe_k = 1, int probe_samples = 4000,
                                    const StudyOptions& opts = {});

/// Exact monotone-gap report for one function: the hazard-free size, the
/// best derivative's monotone size, their ratio, and the unateness
/// cross-check. JSON.
std::string monogap_report(const TruthTable& f, const SearchLimits& lim = {});

/// Structure and tightness checks for the a-b-range function on n
/// variables: predicted prime sets, the two derivative identities, the
/// two-point cover condition, and (when n is small enough for exact
/// search) the size equality against the two threshold games. JSON.
std::string range_study(int n, int a, int b, const SearchLimits& lim = {});

/// Builds the Andreev-style derivative formula for sampled base points and
/// replays seeded perturbations against the direct hazard-derivative
/// oracle; reports achieved vs. nominal sizes and the mismatch count. JSON.
std::string andreev_study(int k, int m, int bases, int perturbations, uint64_t seed);

}  // namespace hazard
