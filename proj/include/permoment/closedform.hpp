#pragma once

#include <vector>

#include "permoment/numbers.hpp"
#include "permoment/pattern.hpp"

namespace permoment {

/// Block decomposition of a vincular pattern: maximal runs of positions
/// glued by the position-adjacency set. j = k - |C| blocks; the sizes
/// alpha_1..alpha_j satisfy sum (alpha_i - 1) = |C|.
struct BlockStructure {
    std::vector<int> block_sizes;
    int block_count() const { return (int)block_sizes.size(); }
    int max_block() const;
};

BlockStructure block_structure(const Pattern& pat);

/// E(cnt_P) over uniform S_n: binom(n-c,k-c) binom(n-d,k-d) / n_(k);
/// zero when n < k.
Rational expected_count(const Pattern& pat, long n);

/// Exact r-th moment of the descent count over uniform S_n, by the
/// census-free double summation (inclusion-exclusion over copy
/// assignments, compositions over segment sizes).
Rational euler_moment(int r, long n);

/// Exact r-th moment of the minimal-descent (adjacency) count.
Rational adjacency_moment(int r, long n);

/// Which of the three linearity-of-expectation closed forms to apply.
/// Case 1: Q1 linear, Q2 = 1, d = 0. Case 2: Q1 = 1, Q2 linear, c = 0.
/// Case 3: both linear, c = d = 0.
Rational linearity_aggregate(int formula_case, const Pattern& pat,
                             const std::vector<Rational>& a,
                             const std::vector<Rational>& b, long n);

} // namespace permoment
