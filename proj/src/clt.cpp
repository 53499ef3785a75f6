#include "permoment/clt.hpp"

#include <algorithm>
#include <map>

#include "permoment/closedform.hpp"
#include "permoment/univariate.hpp"

namespace permoment {

BursteinReport burstein_check(const Permutation& sigma, int max_r) {
    int k = sigma.size();
    if (k < 1) {
        throw DomainError("burstein check needs a nonempty pattern");
    }
    BursteinReport rep;
    rep.k = k;
    rep.a = sigma_pair_count(sigma, sigma, 2 * k - 1, max_r);
    Integer b = binomial(2 * k - 1, k);
    rep.bound = b * b;
    rep.holds = rep.a > rep.bound;
    return rep;
}

Rational interpretation_mean(const Permutation& sigma, int max_r) {
    int k = sigma.size();
    Integer total = 0;
    enumerate_sn(k, [&](const Permutation& other) {
        total += sigma_pair_count(sigma, other, 2 * k - 1, max_r);
    });
    return make_rational(total, factorial(k));
}

VarianceCoefficients variance_leading(const Pattern& pat, int max_letters) {
    if (!pat.is_vincular()) {
        throw DomainError("variance coefficients need a classical or vincular pattern");
    }
    int k = pat.length();
    int c = pat.position_adjacency_count();
    int j = k - c;
    MergeCensus census = merge_census(pat, 2, max_letters);

    // E(X^2) = sum w * binom(n-ct, kt-ct)/kt!  as an exact polynomial in n
    UnivariatePoly second;
    for (const auto& [shape, w] : census.by_shape) {
        auto [kt, ct, dt] = shape;
        second = second + UnivariatePoly::binomial_in_n(-ct, kt - ct)
                              .scaled(make_rational(w, factorial(kt)));
    }
    UnivariatePoly mean = UnivariatePoly::binomial_in_n(-c, k - c)
                              .scaled(make_rational(1, factorial(k)));
    UnivariatePoly var = second - mean * mean;
    if (var.degree() > 2 * j) {
        throw Error("internal: variance polynomial exceeds degree 2j");
    }
    VarianceCoefficients out;
    out.blocks = j;
    out.coef_top = var.coeff(2 * j);
    out.coef_next = var.coeff(2 * j - 1);
    return out;
}

VincularInequalityReport vincular_inequality_check(const Pattern& pat,
                                                   int max_letters) {
    BlockStructure bs = block_structure(pat); // rejects non-vincular input
    int k = pat.length();
    int j = bs.block_count();
    VincularInequalityReport rep;
    rep.k = k;
    rep.blocks = j;
    rep.max_block = bs.max_block();
    MergeCensus census = merge_census(pat, 2, max_letters);
    rep.lhs = 0;
    for (int l = 1; l <= rep.max_block; ++l) {
        Integer b = 0;
        auto it = census.by_blocks.find({2 * k - l, 2 * j - 1});
        if (it != census.by_blocks.end()) {
            b = it->second;
        }
        Integer term = falling_factorial(2 * k, l) * b;
        rep.terms.push_back({l, term});
        rep.lhs += term;
    }
    rep.rhs = binomial(2 * k, k) * binomial(2 * j - 1, j) * j;
    rep.holds = rep.lhs > rep.rhs;
    return rep;
}

namespace {

// Identify the configuration of a two-copy merge with 2j-1 target blocks:
// the index of the merged block within each copy's own block list. Blocks
// provide provenance through the value images.
struct MergedPair {
    int copy1_block = 0; // 1-based index among copy 1's blocks
    int copy2_block = 0;
    int shared = 0; // number of common values
};

MergedPair classify_merge(const Merge& m) {
    BlockStructure target_blocks = block_structure(m.target);
    const auto& z = m.target.perm();
    std::vector<bool> in1(z.size() + 1, false), in2(z.size() + 1, false);
    for (int v : m.images[0]) {
        in1[v] = true;
    }
    for (int v : m.images[1]) {
        in2[v] = true;
    }
    MergedPair out;
    int pos = 1;
    int seen1 = 0, seen2 = 0;
    bool found = false;
    for (int size : target_blocks.block_sizes) {
        bool has1 = false, has2 = false;
        int shared = 0;
        for (int p = pos; p < pos + size; ++p) {
            int v = z.at(p);
            has1 = has1 || in1[v];
            has2 = has2 || in2[v];
            if (in1[v] && in2[v]) {
                ++shared;
            }
        }
        if (has1) {
            ++seen1;
        }
        if (has2) {
            ++seen2;
        }
        if (has1 && has2) {
            if (found) {
                throw Error("internal: more than one merged block in a (2j-1)-block merge");
            }
            found = true;
            out.copy1_block = seen1;
            out.copy2_block = seen2;
            out.shared = shared;
        }
        pos += size;
    }
    if (!found) {
        throw Error("internal: no merged block in a (2j-1)-block merge");
    }
    return out;
}

} // namespace

ConfigurationCensusReport configuration_census(const Pattern& pat,
                                               int max_letters) {
    BlockStructure bs = block_structure(pat);
    int k = pat.length();
    int j = bs.block_count();
    int max_block = bs.max_block();
    if (2 * k > max_letters) {
        throw CapExceededError("configuration census exceeds letter cap");
    }

    // c_{sigma,l}: enumerate all configurations combinatorially. A
    // configuration is a j-subset of the 2j-1 block slots for copy 1 plus
    // the choice of the shared slot among them; the merged pair is read
    // off as the shared slot's rank within each copy.
    std::map<int, long> configs_by_min;
    long total_configs = 0;
    std::vector<int> slots(j);
    auto rec = [&](auto&& self, int idx, int low) -> void {
        if (idx == j) {
            for (int shared_idx = 0; shared_idx < j; ++shared_idx) {
                int a = shared_idx + 1; // rank within copy 1
                // copy 2 occupies the complement plus the shared slot
                int shared_slot = slots[shared_idx];
                int b = shared_slot - shared_idx; // complement ranks below, plus itself
                int min_size = std::min(bs.block_sizes[a - 1], bs.block_sizes[b - 1]);
                ++configs_by_min[min_size];
                ++total_configs;
            }
            return;
        }
        for (int s = low; s <= 2 * j - 1 - (j - 1 - idx); ++s) {
            slots[idx] = s;
            self(self, idx + 1, s + 1);
        }
    };
    rec(rec, 0, 1);

    // classify every (2j-1)-block merge of two copies by overlap and by
    // the merged pair's smaller block size
    std::map<int, Integer> strict, loose;
    std::vector<Pattern> copies{pat, pat};
    for (int l = 1; l <= max_block; ++l) {
        int len = 2 * k - l;
        if (len < k) {
            continue;
        }
        for_each_merge(copies, len, [&](const Merge& m) {
            if (m.target.length() - m.target.position_adjacency_count() != 2 * j - 1) {
                return;
            }
            MergedPair mp = classify_merge(m);
            if (mp.shared != l) {
                throw Error("internal: overlap does not match target length");
            }
            int min_size = std::min(bs.block_sizes[mp.copy1_block - 1],
                                    bs.block_sizes[mp.copy2_block - 1]);
            if (min_size < l) {
                throw Error("internal: merged pair smaller than overlap");
            }
            loose[l] += 1;
            if (min_size == l) {
                strict[l] += 1;
            }
        });
    }

    ConfigurationCensusReport rep;
    rep.k = k;
    rep.blocks = j;
    rep.total_configurations = total_configs;
    for (int l = 1; l <= max_block; ++l) {
        ConfigurationRow row;
        row.overlap = l;
        row.configurations = configs_by_min.count(l) ? configs_by_min[l] : 0;
        row.merges_strict = strict.count(l) ? strict[l] : 0;
        row.merges_loose = loose.count(l) ? loose[l] : 0;
        row.threshold = make_rational(binomial(2 * k - l, k),
                                      falling_factorial(k, l)) *
                        Rational((long)row.configurations);
        row.holds_strict = Rational(row.merges_strict) > row.threshold;
        row.holds_loose = Rational(row.merges_loose) > row.threshold;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

PoissonReport poisson_convergence(int r, std::vector<long> n_values,
                                  std::optional<Rational> absolute_tolerance) {
    if (r < 1 || n_values.empty()) {
        throw DomainError("poisson check needs r >= 1 and at least one n");
    }
    std::sort(n_values.begin(), n_values.end());
    PoissonReport rep;
    rep.r = r;
    rep.bell_number = bell(r);
    Rational target(rep.bell_number);
    for (long n : n_values) {
        PoissonPoint pt;
        pt.n = n;
        pt.value = adjacency_moment(r, n);
        pt.gap = abs(pt.value - target);
        rep.points.push_back(std::move(pt));
    }
    rep.gaps_nonincreasing = true;
    for (size_t i = 1; i < rep.points.size(); ++i) {
        if (rep.points[i].gap > rep.points[i - 1].gap) {
            rep.gaps_nonincreasing = false;
        }
    }
    if (absolute_tolerance) {
        rep.tolerance = *absolute_tolerance;
    } else if (rep.points.size() >= 2) {
        const auto& prev = rep.points[rep.points.size() - 2];
        rep.tolerance = Rational(10) * prev.gap * Rational(prev.n) /
                        Rational(rep.points.back().n);
    } else {
        rep.tolerance = make_rational(1, 100);
    }
    rep.within_tolerance = rep.points.back().gap < rep.tolerance;
    return rep;
}

} // namespace permoment
