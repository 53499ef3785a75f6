#pragma once

#include <functional>
#include <map>
#include <tuple>
#include <vector>

#include "permoment/factorial_basis.hpp"
#include "permoment/numbers.hpp"
#include "permoment/pattern.hpp"

namespace permoment {

/// Total-letter ceiling for merge enumeration (sum of copy lengths).
inline constexpr int kDefaultMergeLetterCap = 12;

/// A merge of r pattern copies onto a target: the increasing value maps
/// m_a are recorded by their sorted images, and the target pattern carries
/// the adjacency sets forced by the copies.
struct Merge {
    std::vector<std::vector<int>> images; // images[a][i-1] = m_a(i)
    Pattern target;

    bool operator==(const Merge&) const = default;
};

/// All ordered merges of the given patterns onto targets of the given
/// length. Distinct target permutations over the same maps are distinct
/// merges.
std::vector<Merge> enumerate_merges(const std::vector<Pattern>& parts,
                                    int target_len);

/// Callback form; the Merge handed to fn is reused between calls.
void for_each_merge(const std::vector<Pattern>& parts, int target_len,
                    const std::function<void(const Merge&)>& fn);

/// Counts of ordered r-fold self-merges grouped by target shape.
struct MergeCensus {
    int r = 1;
    int copy_length = 0;
    // (target length, |C|, |D|) -> number of ordered merges
    std::map<std::tuple<int, int, int>, Integer> by_shape;
    // (target length, block count) -> number of ordered merges
    std::map<std::pair<int, int>, Integer> by_blocks;
    Integer total;
};

/// Census over every target length k..rk. Throws CapExceededError when
/// r*k exceeds the letter cap.
MergeCensus merge_census(const Pattern& pat, int r,
                         int max_letters = kDefaultMergeLetterCap);

/// M(cnt_P^r, n) from the census: sum over shapes of
/// w * binom(n-c,kt-c) * binom(n-d,kt-d) * (n-kt)!.
/// literal_shift replaces (n-kt)! by (n-k)!, an alternative shift kept for
/// the reproduction report; it disagrees with brute force.
Rational corollary_moment(const Pattern& pat, int r, long n,
                          bool literal_shift = false,
                          int max_letters = kDefaultMergeLetterCap);

/// The same sum converted exactly into the shifted-factorial basis.
/// Valid from n = r*k.
FactorialCombination corollary_combination(const Pattern& pat, int r,
                                           int max_letters = kDefaultMergeLetterCap);

/// Number of triples (pi, x, y): pi in S_r, x and y position-subsets of pi
/// whose reductions are sigma and sigma2, sharing exactly 2k-r elements.
/// Independent of the merge enumeration, so the two can cross-check.
Integer sigma_pair_count(const Permutation& sigma, const Permutation& sigma2,
                         int r, int max_r = kDefaultMaxBruteN);

/// The pointwise product of two simple statistics as a statistic over the
/// merge targets: one term per ordered merge, valuation polynomials pulled
/// back through the value maps. evaluate(result, sigma) equals
/// evaluate(f, sigma) * evaluate(g, sigma) for every host.
Statistic product_expansion(const SimpleStatistic& f, const SimpleStatistic& g);

} // namespace permoment
