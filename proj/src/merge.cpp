#include "permoment/merge.hpp"

#include <algorithm>
#include <bit>

#include "permoment/perm.hpp"

namespace permoment {

namespace {

// Increasing k-subsets of [limit] whose (j+1)-th element is forced to be
// successor of the j-th for every j in the value-adjacency set of pat.
std::vector<std::vector<int>> admissible_images(const Pattern& pat, int limit) {
    int k = pat.length();
    std::vector<std::vector<int>> out;
    std::vector<int> cur(k);
    auto rec = [&](auto&& self, int idx, int low) -> void {
        if (idx == k) {
            out.push_back(cur);
            return;
        }
        if (idx > 0 && pat.has_value_adjacency(idx)) {
            int v = cur[idx - 1] + 1;
            if (v <= limit) {
                cur[idx] = v;
                self(self, idx + 1, v + 1);
            }
            return;
        }
        for (int v = low; v <= limit - (k - 1 - idx); ++v) {
            cur[idx] = v;
            self(self, idx + 1, v + 1);
        }
    };
    rec(rec, 0, 1);
    return out;
}

// Backtracking construction of every target permutation consistent with
// the chosen value images: each copy's values must appear in the target in
// its own pattern order, with position adjacencies binding consecutive
// placements. A linear-extension search over the shared value sequences.
class MergeSearch {
public:
    MergeSearch(const std::vector<Pattern>& parts, int k3,
                const std::function<void(const Merge&)>& fn)
        : parts_(parts), k3_(k3), fn_(fn), r_((int)parts.size()) {}

    void run() {
        images_.assign(r_, {});
        candidates_.clear();
        candidates_.reserve(r_);
        for (int a = 0; a < r_; ++a) {
            candidates_.push_back(admissible_images(parts_[a], k3_));
        }
        choose_images(0);
    }

private:
    const std::vector<Pattern>& parts_;
    int k3_;
    const std::function<void(const Merge&)>& fn_;
    int r_;

    std::vector<std::vector<std::vector<int>>> candidates_; // per copy
    std::vector<std::vector<int>> images_;
    std::vector<std::vector<int>> seqs_;      // reading order of values per copy
    std::vector<std::vector<bool>> bind_;     // bind_[a][j]: seq j-1 -> j adjacent
    std::vector<std::vector<std::pair<int, int>>> value_occurs_; // value -> (copy, idx)
    std::vector<int> z_;
    std::vector<bool> used_;
    std::vector<int> ptr_;

    void choose_images(int a) {
        if (a == r_) {
            std::vector<bool> covered(k3_ + 1, false);
            for (const auto& img : images_) {
                for (int v : img) {
                    covered[v] = true;
                }
            }
            for (int v = 1; v <= k3_; ++v) {
                if (!covered[v]) {
                    return;
                }
            }
            interleave();
            return;
        }
        for (const auto& img : candidates_[a]) {
            images_[a] = img;
            choose_images(a + 1);
        }
    }

    void interleave() {
        seqs_.assign(r_, {});
        bind_.assign(r_, {});
        value_occurs_.assign(k3_ + 1, {});
        for (int a = 0; a < r_; ++a) {
            const Pattern& p = parts_[a];
            int k = p.length();
            seqs_[a].resize(k);
            bind_[a].assign(k, false);
            for (int j = 1; j <= k; ++j) {
                seqs_[a][j - 1] = images_[a][p.perm().at(j) - 1];
                value_occurs_[seqs_[a][j - 1]].push_back({a, j - 1});
            }
            for (int j = 1; j < k; ++j) {
                if (p.has_position_adjacency(j)) {
                    bind_[a][j] = true;
                }
            }
        }
        z_.clear();
        used_.assign(k3_ + 1, false);
        ptr_.assign(r_, 0);
        place();
    }

    void place() {
        if ((int)z_.size() == k3_) {
            emit();
            return;
        }
        // a pending bind forces the next value outright
        int forced = 0;
        if (!z_.empty()) {
            for (int a = 0; a < r_; ++a) {
                int p = ptr_[a];
                if (p > 0 && p < (int)seqs_[a].size() && bind_[a][p] &&
                    seqs_[a][p - 1] == z_.back()) {
                    int need = seqs_[a][p];
                    if (forced != 0 && forced != need) {
                        return;
                    }
                    forced = need;
                }
            }
        }
        for (int v = 1; v <= k3_; ++v) {
            if (used_[v] || (forced != 0 && v != forced)) {
                continue;
            }
            bool ok = true;
            for (auto [a, idx] : value_occurs_[v]) {
                if (ptr_[a] != idx) {
                    ok = false;
                    break;
                }
                if (bind_[a][idx] && (z_.empty() || z_.back() != seqs_[a][idx - 1])) {
                    ok = false;
                    break;
                }
            }
            if (!ok) {
                continue;
            }
            z_.push_back(v);
            used_[v] = true;
            for (const auto& occ : value_occurs_[v]) {
                ++ptr_[occ.first];
            }
            place();
            z_.pop_back();
            used_[v] = false;
            for (const auto& occ : value_occurs_[v]) {
                --ptr_[occ.first];
            }
        }
    }

    void emit() {
        std::vector<int> zinv(k3_ + 1);
        for (int i = 0; i < k3_; ++i) {
            zinv[z_[i]] = i + 1;
        }
        std::vector<int> adjC, adjD;
        for (int a = 0; a < r_; ++a) {
            const Pattern& p = parts_[a];
            for (int j = 1; j < p.length(); ++j) {
                if (p.has_position_adjacency(j)) {
                    adjC.push_back(zinv[images_[a][p.perm().at(j) - 1]]);
                }
                if (p.has_value_adjacency(j)) {
                    adjD.push_back(images_[a][j - 1]);
                }
            }
        }
        std::sort(adjC.begin(), adjC.end());
        adjC.erase(std::unique(adjC.begin(), adjC.end()), adjC.end());
        std::sort(adjD.begin(), adjD.end());
        adjD.erase(std::unique(adjD.begin(), adjD.end()), adjD.end());
        Merge m{images_, Pattern(Permutation(z_), adjC, adjD)};
        fn_(m);
    }
};

} // namespace

void for_each_merge(const std::vector<Pattern>& parts, int target_len,
                    const std::function<void(const Merge&)>& fn) {
    if (parts.empty()) {
        throw DomainError("merge of zero patterns");
    }
    int max_k = 0, sum_k = 0;
    for (const auto& p : parts) {
        max_k = std::max(max_k, p.length());
        sum_k += p.length();
    }
    if (target_len < max_k || target_len > sum_k) {
        throw DomainError("target length must lie between max and sum of copy lengths");
    }
    MergeSearch(parts, target_len, fn).run();
}

std::vector<Merge> enumerate_merges(const std::vector<Pattern>& parts,
                                    int target_len) {
    std::vector<Merge> out;
    for_each_merge(parts, target_len, [&](const Merge& m) { out.push_back(m); });
    return out;
}

MergeCensus merge_census(const Pattern& pat, int r, int max_letters) {
    if (r < 1) {
        throw DomainError("census needs r >= 1");
    }
    int k = pat.length();
    if (r * k > max_letters) {
        throw CapExceededError("merge census of " + std::to_string(r) + " copies of length " +
                               std::to_string(k) + " exceeds letter cap " +
                               std::to_string(max_letters));
    }
    MergeCensus census;
    census.r = r;
    census.copy_length = k;
    census.total = 0;
    std::vector<Pattern> copies(r, pat);
    for (int len = k; len <= r * k; ++len) {
        for_each_merge(copies, len, [&](const Merge& m) {
            int c = m.target.position_adjacency_count();
            int d = m.target.value_adjacency_count();
            census.by_shape[{len, c, d}] += 1;
            census.by_blocks[{len, len - c}] += 1;
            census.total += 1;
        });
    }
    return census;
}

Rational corollary_moment(const Pattern& pat, int r, long n, bool literal_shift,
                          int max_letters) {
    int k = pat.length();
    if (n < k) {
        return Rational(0);
    }
    MergeCensus census = merge_census(pat, r, max_letters);
    Rational total(0);
    for (const auto& [shape, w] : census.by_shape) {
        auto [kt, c, d] = shape;
        Integer b = binomial(n - c, kt - c) * binomial(n - d, kt - d);
        if (b == 0) {
            continue;
        }
        long shift = literal_shift ? k : kt;
        total += Rational(w) * Rational(b) * Rational(factorial(n - shift));
    }
    return total;
}

FactorialCombination corollary_combination(const Pattern& pat, int r,
                                           int max_letters) {
    int k = pat.length();
    MergeCensus census = merge_census(pat, r, max_letters);
    FactorialCombination out;
    out.valid_from = (long)r * k;
    for (const auto& [shape, w] : census.by_shape) {
        auto [kt, c, d] = shape;
        UnivariatePoly poly = UnivariatePoly::binomial_in_n(-c, kt - c) *
                              UnivariatePoly::binomial_in_n(-d, kt - d);
        auto part = to_factorial_combination({poly.scaled(Rational(w)), kt});
        for (const auto& [off, cf] : part.coeffs) {
            out.coeffs[off] += cf;
        }
    }
    std::erase_if(out.coeffs, [](const auto& kv) { return kv.second == 0; });
    return out;
}

Statistic product_expansion(const SimpleStatistic& f, const SimpleStatistic& g) {
    std::vector<std::pair<Rational, SimpleStatistic>> terms;
    int k1 = f.pattern.length();
    int k2 = g.pattern.length();
    for (int len = std::max(k1, k2); len <= k1 + k2; ++len) {
        for_each_merge({f.pattern, g.pattern}, len, [&](const Merge& m) {
            int k3 = m.target.length();
            ValuationPoly q1 = f.q1.remapped(m.images[0], k3) *
                               g.q1.remapped(m.images[1], k3);
            ValuationPoly q2 = f.q2.remapped(m.images[0], k3) *
                               g.q2.remapped(m.images[1], k3);
            terms.push_back({Rational(1),
                             {m.target, std::move(q1), std::move(q2)}});
        });
    }
    return Statistic(std::move(terms));
}

Integer sigma_pair_count(const Permutation& sigma, const Permutation& sigma2,
                         int r, int max_r) {
    int k = sigma.size();
    if (sigma2.size() != k) {
        throw DomainError("sigma pair must have equal lengths");
    }
    if (r < k || r > 2 * k) {
        throw DomainError("sigma_pair_count needs k <= r <= 2k");
    }
    if (r > max_r) {
        throw CapExceededError("sigma_pair_count over S_" + std::to_string(r) +
                               " exceeds cap " + std::to_string(max_r));
    }
    int overlap = 2 * k - r;
    Integer total = 0;
    std::vector<std::uint32_t> hits1, hits2;
    std::vector<int> subseq(k);
    enumerate_sn(r, [&](const Permutation& pi) {
        hits1.clear();
        hits2.clear();
        // position subsets as bitmasks, reduction compared in place
        std::vector<int> idx(k);
        auto scan = [&](const Permutation& target, std::vector<std::uint32_t>& hits) {
            auto rec = [&](auto&& self, int depth, int low, std::uint32_t mask) -> void {
                if (depth == k) {
                    for (int i = 0; i < k; ++i) {
                        subseq[i] = pi.at(idx[i]);
                    }
                    bool ok = true;
                    for (int i = 0; i < k && ok; ++i) {
                        for (int j = i + 1; j < k; ++j) {
                            if ((subseq[i] < subseq[j]) !=
                                (target.at(i + 1) < target.at(j + 1))) {
                                ok = false;
                                break;
                            }
                        }
                    }
                    if (ok) {
                        hits.push_back(mask);
                    }
                    return;
                }
                for (int p = low; p <= r - (k - 1 - depth); ++p) {
                    idx[depth] = p;
                    self(self, depth + 1, p + 1, mask | (1u << p));
                }
            };
            rec(rec, 0, 1, 0);
        };
        scan(sigma, hits1);
        if (sigma2 == sigma) {
            hits2 = hits1;
        } else {
            scan(sigma2, hits2);
        }
        unsigned long pairs = 0;
        for (std::uint32_t a : hits1) {
            for (std::uint32_t b : hits2) {
                if (std::popcount(a & b) == overlap) {
                    ++pairs;
                }
            }
        }
        total += pairs;
    }, max_r);
    return total;
}

} // namespace permoment
