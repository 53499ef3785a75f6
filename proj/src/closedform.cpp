#include "permoment/closedform.hpp"

#include <algorithm>
#include <functional>

namespace permoment {

int BlockStructure::max_block() const {
    return block_sizes.empty() ? 0
                               : *std::max_element(block_sizes.begin(),
                                                   block_sizes.end());
}

BlockStructure block_structure(const Pattern& pat) {
    if (!pat.is_vincular()) {
        throw DomainError("block structure is defined for vincular patterns");
    }
    BlockStructure bs;
    int k = pat.length();
    int run = 1;
    for (int i = 1; i < k; ++i) {
        if (pat.has_position_adjacency(i)) {
            ++run;
        } else {
            bs.block_sizes.push_back(run);
            run = 1;
        }
    }
    bs.block_sizes.push_back(run);
    return bs;
}

Rational expected_count(const Pattern& pat, long n) {
    if (n < 1) {
        throw DomainError("expected_count needs n >= 1");
    }
    int k = pat.length();
    if (n < k) {
        return Rational(0);
    }
    int c = pat.position_adjacency_count();
    int d = pat.value_adjacency_count();
    Integer num = binomial(n - c, k - c) * binomial(n - d, k - d);
    return make_rational(num, falling_factorial(n, k));
}

namespace {

// sum over compositions q_1+...+q_u = m with every q_i >= 2 of
// multinomial(m; q_1,...,q_u)
Integer composition_multinomial_sum(int m, int u) {
    Integer total = 0;
    std::vector<int> parts(u);
    std::function<void(int, int, Integer)> rec = [&](int idx, int rest,
                                                     Integer partial) {
        if (idx == u - 1) {
            if (rest >= 2) {
                total += partial / factorial(rest);
            }
            return;
        }
        int remaining_parts = u - idx - 1;
        for (int q = 2; rest - q >= 2 * remaining_parts; ++q) {
            rec(idx + 1, rest - q, partial / factorial(q));
        }
    };
    if (u >= 1 && m >= 2 * u) {
        rec(0, m, factorial(m));
    }
    return total;
}

// inclusion-exclusion count of surjective copy assignments:
// sum_w (-1)^w binom(m-u, w) (m-u-w)^r
Integer surjection_sum(int m, int u, int r) {
    Integer total = 0;
    int slots = m - u;
    for (int w = 0; w <= slots; ++w) {
        Integer term = binomial(slots, w);
        Integer p = 1;
        for (int i = 0; i < r; ++i) {
            p *= (slots - w);
        }
        term *= p;
        if (w % 2 == 0) {
            total += term;
        } else {
            total -= term;
        }
    }
    return total;
}

} // namespace

Rational euler_moment(int r, long n) {
    if (r < 1 || n < 1) {
        throw DomainError("euler_moment needs r >= 1 and n >= 1");
    }
    Rational total(0);
    long m_hi = std::min<long>(n, 2L * r);
    for (int m = 2; m <= m_hi; ++m) {
        for (int u = 1; u <= m / 2; ++u) {
            Integer inner = surjection_sum(m, u, r) * composition_multinomial_sum(m, u);
            if (inner == 0) {
                continue;
            }
            total += Rational(inner) *
                     make_rational(binomial(n - (m - u), u), factorial(m));
        }
    }
    return total;
}

Rational adjacency_moment(int r, long n) {
    if (r < 1 || n < 1) {
        throw DomainError("adjacency_moment needs r >= 1 and n >= 1");
    }
    Rational total(0);
    long m_hi = std::min<long>(n, 2L * r);
    for (int m = 2; m <= m_hi; ++m) {
        for (int u = 1; u <= m / 2; ++u) {
            Integer ways = surjection_sum(m, u, r) * binomial(m - u - 1, u - 1) *
                           factorial(u);
            if (ways == 0) {
                continue;
            }
            Integer b = binomial(n - (m - u), u);
            total += Rational(ways) * make_rational(b * b, falling_factorial(n, m));
        }
    }
    return total;
}

Rational linearity_aggregate(int formula_case, const Pattern& pat,
                             const std::vector<Rational>& a,
                             const std::vector<Rational>& b, long n) {
    int k = pat.length();
    int c = pat.position_adjacency_count();
    int d = pat.value_adjacency_count();
    if ((int)a.size() != k + 1 || (int)b.size() != k + 1) {
        throw DomainError("coefficient vectors must have length k+1");
    }
    auto is_constant_one = [&](const std::vector<Rational>& v) {
        return v[0] == 1 &&
               std::all_of(v.begin() + 1, v.end(),
                           [](const Rational& x) { return x == 0; });
    };
    switch (formula_case) {
    case 1:
        if (d != 0 || !is_constant_one(b)) {
            throw DomainError("case 1 needs d = 0 and Q2 = 1");
        }
        break;
    case 2:
        if (c != 0 || !is_constant_one(a)) {
            throw DomainError("case 2 needs c = 0 and Q1 = 1");
        }
        break;
    case 3:
        if (c != 0 || d != 0) {
            throw DomainError("case 3 needs a classical pattern");
        }
        break;
    default:
        throw DomainError("formula case must be 1, 2 or 3");
    }
    if (n < k) {
        return Rational(0);
    }

    Rational mean_scale = make_rational(n + 1, k + 1);
    // values are fed to Q1 sorted, so the i-th coefficient meets the i-th
    // order statistic directly
    Rational value_part = a[0];
    for (int i = 1; i <= k; ++i) {
        value_part += a[i] * mean_scale * i;
    }
    // positions reach Q2 in value order: w_j is the P^{-1}(j)-th smallest
    // position of the occurrence
    auto inv = pat.perm().inverse();
    Rational position_part = b[0];
    for (int j = 1; j <= k; ++j) {
        position_part += b[j] * mean_scale * inv.position_of(j);
    }

    Rational nf = Rational(factorial(n - k));
    switch (formula_case) {
    case 1:
        return Rational(binomial(n, k) * binomial(n - c, k - c)) * nf * value_part;
    case 2:
        return Rational(binomial(n, k) * binomial(n - d, k - d)) * nf * position_part;
    default: {
        Integer bk = binomial(n, k);
        return Rational(bk * bk) * nf * value_part * position_part;
    }
    }
}

} // namespace permoment
