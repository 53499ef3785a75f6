#pragma once

#include "permoment/numbers.hpp"
#include "permoment/statistic.hpp"

namespace permoment {

struct AggregateOptions {
    int max_n = kDefaultMaxBruteN; // refuse larger hosts rather than approximate
    int threads = 1;
    int chunks = 0; // 0: one chunk per worker
};

enum class AggregateMethod { brute, fast, closed_form };

struct AggregateResult {
    long n = 0;
    int r = 1;
    Rational value;
    AggregateMethod method = AggregateMethod::brute;
};

/// M(f^r, n) = sum over S_n of f(sigma)^r, by exhaustive enumeration.
/// Deterministic for any worker/chunk configuration: chunk sums are exact
/// rationals reduced in chunk order.
AggregateResult aggregate_brute(const Statistic& stat, int n, int r,
                                const AggregateOptions& opts = {});

/// M(f, n) for one simple statistic via the compression factorization:
/// (n-k)! times the value-tuple sum of Q1 times the position-tuple sum of
/// Q2, each enumerated over its compressed index set. Works for any n.
AggregateResult aggregate_fast_simple(const SimpleStatistic& stat, long n);

/// M(f, n) by linearity over terms, each via aggregate_fast_simple.
AggregateResult aggregate_fast(const Statistic& stat, long n);

/// M(f^r, n)/n!; picks the fast path for r = 1, brute force otherwise.
Rational expectation(const Statistic& stat, int n, int r,
                     const AggregateOptions& opts = {});

/// E(f^2) - E(f)^2 over uniform S_n.
Rational variance(const Statistic& stat, int n, const AggregateOptions& opts = {});

} // namespace permoment
