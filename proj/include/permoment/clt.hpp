#pragma once

#include <optional>
#include <string>
#include <vector>

#include "permoment/merge.hpp"
#include "permoment/numbers.hpp"
#include "permoment/pattern.hpp"
#include "permoment/perm.hpp"

namespace permoment {

/// Self-merge count a_sigma(2k-1) against its lower bound binom(2k-1,k)^2.
struct BursteinReport {
    int k = 0;
    Integer a;
    Integer bound;
    bool holds = false;
};

BursteinReport burstein_check(const Permutation& sigma,
                              int max_r = kDefaultMaxBruteN);

/// Mean of the pair-merge count a_{sigma,sigma'}(2k-1) over uniform
/// sigma' in S_k; an exact identity equal to binom(2k-1,k)^2.
Rational interpretation_mean(const Permutation& sigma,
                             int max_r = kDefaultMaxBruteN);

/// Two leading coefficients of Var(cnt_P) as a polynomial in n, assembled
/// symbolically from the two-copy merge census. blocks = j (= k for a
/// classical pattern); the top coefficient (of n^{2j}) is always zero and
/// the next (of n^{2j-1}) is positive exactly when the merge inequality
/// holds.
struct VarianceCoefficients {
    int blocks = 0;
    Rational coef_top;  // of n^{2j}
    Rational coef_next; // of n^{2j-1}
};

VarianceCoefficients variance_leading(const Pattern& pat,
                                      int max_letters = kDefaultMergeLetterCap);

/// sum_l (2k)_l b(2k-l, 2j-1) > binom(2k,k) binom(2j-1,j) j, both sides
/// exact; per-l terms retained for reporting.
struct VincularInequalityReport {
    int k = 0;
    int blocks = 0;
    int max_block = 0;
    Integer lhs;
    Integer rhs;
    bool holds = false;
    std::vector<std::pair<int, Integer>> terms; // (l, (2k)_l * b(2k-l,2j-1))
};

VincularInequalityReport vincular_inequality_check(
    const Pattern& pat, int max_letters = kDefaultMergeLetterCap);

/// Per-overlap row of the configuration conjecture check. A configuration
/// is the interleaving shape of the 2j-1 target blocks plus the merged
/// block pair; merges with l shared elements are classified strictly
/// (hosting configuration's smaller merged block has size exactly l) and
/// loosely (size at least l, which every such merge satisfies).
struct ConfigurationRow {
    int overlap = 0;     // l
    long configurations = 0; // c_{sigma,l}
    Integer merges_strict;
    Integer merges_loose;
    Rational threshold; // binom(2k-l,k)/k_(l) * c_{sigma,l}
    bool holds_strict = false;
    bool holds_loose = false;
};

struct ConfigurationCensusReport {
    int k = 0;
    int blocks = 0;
    long total_configurations = 0; // binom(2j-1,j)*j
    std::vector<ConfigurationRow> rows;
};

ConfigurationCensusReport configuration_census(
    const Pattern& pat, int max_letters = kDefaultMergeLetterCap);

/// Exact adjacency moments against the limiting Bell number.
struct PoissonPoint {
    long n = 0;
    Rational value;
    Rational gap; // |value - B_r|
};

struct PoissonReport {
    int r = 0;
    Integer bell_number;
    std::vector<PoissonPoint> points; // ascending n
    bool gaps_nonincreasing = false;
    Rational tolerance;    // applied at the largest n
    bool within_tolerance = false;
};

/// Default tolerance: 10 * (C/n at the largest n), with C estimated from
/// the second-largest point (gap ~ C/n to first order); an absolute
/// tolerance can be supplied instead.
PoissonReport poisson_convergence(int r, std::vector<long> n_values,
                                  std::optional<Rational> absolute_tolerance = {});

} // namespace permoment
