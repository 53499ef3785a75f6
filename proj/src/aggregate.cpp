#include "permoment/aggregate.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

#include "permoment/perm.hpp"

namespace permoment {

AggregateResult aggregate_brute(const Statistic& stat, int n, int r,
                                const AggregateOptions& opts) {
    if (r < 1) {
        throw DomainError("moment order must be >= 1");
    }
    if (n < 0 || n > opts.max_n) {
        throw CapExceededError("brute-force aggregate over S_" + std::to_string(n) +
                               " exceeds cap " + std::to_string(opts.max_n));
    }
    std::uint64_t total = factorial_u64(n);
    int workers = std::max(1, opts.threads);
    int chunk_count = opts.chunks > 0 ? opts.chunks : workers;
    chunk_count = (int)std::min<std::uint64_t>(std::max(chunk_count, 1),
                                               std::max<std::uint64_t>(total, 1));

    std::vector<Rational> partial(chunk_count, Rational(0));
    std::atomic<int> next_chunk{0};
    auto work = [&]() {
        while (true) {
            int c = next_chunk.fetch_add(1);
            if (c >= chunk_count) {
                return;
            }
            std::uint64_t begin = total * (std::uint64_t)c / chunk_count;
            std::uint64_t end = total * (std::uint64_t)(c + 1) / chunk_count;
            Rational sum(0);
            enumerate_sn(
                n, begin, end,
                [&](const Permutation& sigma) {
                    Rational v = evaluate(stat, sigma);
                    if (r == 1) {
                        sum += v;
                    } else {
                        Rational p = v;
                        for (int i = 1; i < r; ++i) {
                            p *= v;
                        }
                        sum += p;
                    }
                },
                opts.max_n);
            partial[c] = std::move(sum);
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int i = 0; i < workers; ++i) {
            pool.emplace_back(work);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    Rational value(0);
    for (const auto& p : partial) {
        value += p;
    }
    return {n, r, std::move(value), AggregateMethod::brute};
}

namespace {

// Visits every increasing k-tuple from [n] whose entries satisfy the given
// adjacency mask (bit i-1 set forces tuple[i] = tuple[i-1]+1), by stepping
// the compressed free entries. The tuple handed to fn is reused.
void for_each_adjacent_tuple(int n, int k, const std::vector<bool>& follower,
                             const std::function<void(const std::vector<int>&)>& fn) {
    int free_count = 0;
    for (int i = 0; i < k; ++i) {
        if (!follower[i]) {
            ++free_count;
        }
    }
    int d = k - free_count;
    if (n - d < free_count) {
        return; // no compressed tuples
    }
    std::vector<int> ys(free_count);
    for (int i = 0; i < free_count; ++i) {
        ys[i] = i + 1;
    }
    std::vector<int> t(k);
    auto decompress = [&]() {
        int yi = 0;
        for (int j = 0; j < k; ++j) {
            if (follower[j]) {
                t[j] = t[j - 1] + 1;
            } else {
                t[j] = ys[yi] + j - yi;
                ++yi;
            }
        }
    };
    // ys ranges over increasing (k-d)-tuples from [n-d]
    while (true) {
        decompress();
        fn(t);
        int i = free_count - 1;
        while (i >= 0 && ys[i] == n - d - (free_count - 1 - i)) {
            --i;
        }
        if (i < 0) {
            return;
        }
        ++ys[i];
        for (int j = i + 1; j < free_count; ++j) {
            ys[j] = ys[j - 1] + 1;
        }
    }
}

} // namespace

AggregateResult aggregate_fast_simple(const SimpleStatistic& stat, long n) {
    const Pattern& pat = stat.pattern;
    int k = pat.length();
    AggregateResult out;
    out.n = n;
    out.r = 1;
    out.method = AggregateMethod::fast;
    if (n < k) {
        out.value = Rational(0);
        return out;
    }

    // sum of Q1 over increasing value tuples obeying the value adjacencies
    std::vector<bool> value_follower(k, false);
    for (int i = 1; i < k; ++i) {
        if (pat.has_value_adjacency(i)) {
            value_follower[i] = true;
        }
    }
    Rational sum_q1(0);
    for_each_adjacent_tuple((int)n, k, value_follower,
                            [&](const std::vector<int>& t) {
                                sum_q1 += stat.q1.evaluate(t, n);
                            });

    // sum of Q2 over admissible position tuples: the sorted positions obey
    // the position adjacencies, and Q2 sees them in value order
    // (w_i = v_{P^{-1}(i)})
    std::vector<bool> pos_follower(k, false);
    for (int i = 1; i < k; ++i) {
        if (pat.has_position_adjacency(i)) {
            pos_follower[i] = true;
        }
    }
    auto inv = pat.perm().inverse();
    std::vector<int> w(k);
    Rational sum_q2(0);
    for_each_adjacent_tuple((int)n, k, pos_follower,
                            [&](const std::vector<int>& v) {
                                for (int i = 1; i <= k; ++i) {
                                    w[i - 1] = v[inv.position_of(i) - 1];
                                }
                                sum_q2 += stat.q2.evaluate(w, n);
                            });

    out.value = sum_q1 * sum_q2 * Rational(factorial(n - k));
    return out;
}

AggregateResult aggregate_fast(const Statistic& stat, long n) {
    AggregateResult out;
    out.n = n;
    out.r = 1;
    out.method = AggregateMethod::fast;
    out.value = Rational(0);
    for (const auto& [coef, s] : stat.terms()) {
        out.value += coef * aggregate_fast_simple(s, n).value;
    }
    return out;
}

Rational expectation(const Statistic& stat, int n, int r,
                     const AggregateOptions& opts) {
    if (n < 1) {
        throw DomainError("expectation needs n >= 1");
    }
    Rational m = r == 1 ? aggregate_fast(stat, n).value
                        : aggregate_brute(stat, n, r, opts).value;
    return m / Rational(factorial(n));
}

Rational variance(const Statistic& stat, int n, const AggregateOptions& opts) {
    Rational e1 = expectation(stat, n, 1, opts);
    Rational e2 = expectation(stat, n, 2, opts);
    return e2 - e1 * e1;
}

} // namespace permoment
