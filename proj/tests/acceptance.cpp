// Acceptance gate: one line per criterion, exact thresholds pinned in code.
// Exit status is nonzero when any criterion fails.

#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "permoment/aggregate.hpp"
#include "permoment/cli.hpp"
#include "permoment/closedform.hpp"
#include "permoment/clt.hpp"
#include "permoment/factorial_basis.hpp"
#include "permoment/json_io.hpp"
#include "permoment/merge.hpp"

using namespace permoment;

namespace {

struct Harness {
    int failures = 0;

    void criterion(const std::string& id, const std::function<void()>& body) {
        try {
            body();
            std::cout << "PASS  " << id << "\n";
        } catch (const std::exception& e) {
            ++failures;
            std::cout << "FAIL  " << id << "\n      " << e.what() << "\n";
        }
    }
};

void require(bool ok, const std::string& what) {
    if (!ok) {
        throw Error(what);
    }
}

FactorialCombination combo(std::initializer_list<std::pair<int, const char*>> cs) {
    FactorialCombination fc;
    for (const auto& [off, txt] : cs) {
        fc.coeffs[off] = parse_rational(txt);
    }
    return fc;
}

std::string diff(const FactorialCombination& want, const FactorialCombination& got) {
    return "expected " + format_formula(want) + "; computed " + format_formula(got);
}

std::vector<Pattern> all_patterns_up_to(int max_k) {
    std::vector<Pattern> out;
    for (int k = 1; k <= max_k; ++k) {
        enumerate_sn(k, [&](const Permutation& p) {
            for (unsigned cm = 0; cm < (1u << (k - 1)); ++cm) {
                for (unsigned dm = 0; dm < (1u << (k - 1)); ++dm) {
                    std::vector<int> c, d;
                    for (int i = 1; i < k; ++i) {
                        if (cm >> (i - 1) & 1) {
                            c.push_back(i);
                        }
                        if (dm >> (i - 1) & 1) {
                            d.push_back(i);
                        }
                    }
                    out.push_back(Pattern(Permutation(p.one_line()), c, d));
                }
            }
        });
    }
    return out;
}

SimpleStatistic random_simple(std::mt19937& rng) {
    int k = 1 + (int)(rng() % 3);
    auto perm = unrank_permutation(
        k, std::uniform_int_distribution<std::uint64_t>(0, factorial_u64(k) - 1)(rng));
    std::vector<int> c, d;
    for (int j = 1; j < k; ++j) {
        if (rng() % 3 == 0) {
            c.push_back(j);
        }
        if (rng() % 3 == 0) {
            d.push_back(j);
        }
    }
    auto rand_poly = [&]() {
        ValuationPoly p = ValuationPoly::constant(k, Rational((long)(rng() % 3)));
        if (rng() % 2) {
            p = p + ValuationPoly::variable(k, 1 + (int)(rng() % k));
        }
        if (rng() % 3 == 0) {
            p = p + ValuationPoly::size_symbol(k);
        }
        return p;
    };
    return {Pattern(Permutation(perm.one_line()), c, d), rand_poly(), rand_poly()};
}

// ---- criterion bodies -------------------------------------------------

void criterion_1a() {
    auto drops = preset_statistic("drops");
    std::vector<std::pair<long, Rational>> data;
    for (int n = 2; n <= 5; ++n) {
        data.push_back({n, aggregate_brute(drops, n, 1).value});
    }
    auto fc = fit(data, {1, 2});
    auto want = combo({{1, "-1/2"}, {2, "1/6"}});
    require(fc.same_coeffs(want), diff(want, fc));
}

void criterion_1b() {
    auto stat = preset_statistic("cnt:1324");
    auto window = default_offsets(stat, 1);
    require(window.offsets == std::vector<int>{0, 1, 2, 3, 4},
            "unexpected offset window for a length-4 classical count");
    std::vector<std::pair<long, Rational>> data;
    for (long n = 4; n <= 10; ++n) {
        data.push_back({n, aggregate_fast(stat, n).value});
    }
    auto fc = fit(data, window.offsets, window.valid_from);
    auto want = combo({{0, "1/24"}, {1, "-1/6"}, {2, "1/8"}, {3, "-1/36"},
                       {4, "1/576"}});
    require(fc.same_coeffs(want), diff(want, fc));
    auto conv = to_factorial_combination(
        {UnivariatePoly::binomial_in_n(0, 4).scaled(make_rational(1, 24)), 0});
    require(conv.same_coeffs(want), "basis conversion: " + diff(want, conv));
}

void criterion_1c() {
    auto stat = preset_statistic("peakSqSum");
    std::vector<std::pair<long, Rational>> data;
    for (int n = 3; n <= 8; ++n) {
        data.push_back({n, aggregate_brute(stat, n, 1).value});
    }
    auto fc = fit(data, {1, 2, 3});
    auto want = combo({{1, "1"}, {2, "-5/4"}, {3, "1/5"}});
    require(fc.same_coeffs(want), diff(want, fc));
}

void criterion_1d() {
    auto stat = preset_statistic("doubleAscents");
    auto window = default_offsets(stat, 2);
    require(window.offsets == std::vector<int>{0, 1, 2} && window.valid_from == 6,
            "unexpected vincular window for the squared double-ascent count");
    std::vector<std::pair<long, Rational>> data;
    for (int n = 6; n <= 10; ++n) {
        data.push_back({n, aggregate_brute(stat, n, 2).value});
    }
    auto fc = fit(data, window.offsets, window.valid_from);
    auto want = combo({{0, "-1/12"}, {1, "-1/15"}, {2, "1/36"}});
    require(fc.same_coeffs(want), diff(want, fc));
}

void criterion_1e() {
    auto pat = parse_pattern("3[12];D=2");
    auto stat = count_statistic(pat);
    for (int n = 3; n <= 8; ++n) {
        Rational brute = aggregate_brute(stat, n, 2).value;
        Rational cor = corollary_moment(pat, 2, n);
        require(brute == cor, "census moment disagrees with brute force at n=" +
                                  std::to_string(n));
    }
    auto fc = corollary_combination(pat, 2);
    for (long n = 6; n <= 10; ++n) {
        require(evaluate_combination(fc, n) == corollary_moment(pat, 2, n),
                "derived combination fails its own evaluation");
    }
    auto recorded = combo({{0, "1/2"},
                           {1, "-9/28"},
                           {2, "29/672"},
                           {3, "11/10080"},
                           {4, "-1/45360"}});
    require(fc.same_coeffs(recorded),
            diff(recorded, fc) +
                " (the recorded coefficients reproduce the census values only for "
                "6 <= n <= 10 and diverge from both enumeration routes at n >= 11; "
                "the computed combination is the one consistent with brute force "
                "everywhere)");
}

void criterion_2() {
    Pattern p21 = parse_pattern("21");
    auto merges = enumerate_merges({p21, p21}, 3);
    require(merges.size() == 10, "a_21(3) != 10");
    std::multiset<std::tuple<std::string, std::vector<int>, std::vector<int>>> got;
    for (const auto& m : merges) {
        got.insert({m.target.to_text(), m.images[0], m.images[1]});
    }
    std::multiset<std::tuple<std::string, std::vector<int>, std::vector<int>>>
        expected{
            {"321", {2, 3}, {1, 3}}, {"321", {1, 3}, {2, 3}},
            {"321", {2, 3}, {1, 2}}, {"321", {1, 2}, {2, 3}},
            {"321", {1, 3}, {1, 2}}, {"321", {1, 2}, {1, 3}},
            {"312", {1, 3}, {2, 3}}, {"312", {2, 3}, {1, 3}},
            {"231", {1, 2}, {1, 3}}, {"231", {1, 3}, {1, 2}},
        };
    require(got == expected, "a_21(3) triples differ from the recorded ten");

    for (int k = 2; k <= 3; ++k) {
        enumerate_sn(k, [&](const Permutation& sigma) {
            Pattern pat(Permutation(sigma.one_line()), {}, {});
            Integer want = binomial(2 * k, k) * binomial(2 * k, k);
            require(Integer((long)enumerate_merges({pat, pat}, 2 * k).size()) == want,
                    "a_sigma(2k) != binom(2k,k)^2 for sigma=" + sigma.to_text());
        });
    }

    Pattern vinc = parse_pattern("[431][52]");
    bool found = false;
    for (const auto& m : enumerate_merges({vinc, vinc}, 8)) {
        if (m.target.to_text() == "[6531][84][72]" &&
            m.images[0] == std::vector<int>{3, 4, 5, 6, 8} &&
            m.images[1] == std::vector<int>{1, 2, 3, 5, 7}) {
            found = true;
        }
    }
    require(found, "the recorded two-block vincular merge was not enumerated");
}

void criterion_3() {
    std::vector<Statistic> stats;
    for (const char* name :
         {"descents", "adjacency", "drops", "peakSqSum", "doubleAscents"}) {
        stats.push_back(preset_statistic(name));
    }
    std::mt19937 rng(2024);
    for (int i = 0; i < 20; ++i) {
        stats.push_back(Statistic::simple(random_simple(rng)));
    }
    for (const auto& stat : stats) {
        for (int n = 0; n <= 7; ++n) {
            require(aggregate_fast(stat, n).value ==
                        aggregate_brute(stat, n, 1).value,
                    "fast aggregate mismatch at n=" + std::to_string(n));
        }
    }
    for (const char* text : {"[21]", "[21];D=1", "[123]", "21", "3[12];D=2"}) {
        Pattern pat = parse_pattern(text);
        auto stat = count_statistic(pat);
        for (int r = 1; r <= 3; ++r) {
            for (int n = 1; n <= 7; ++n) {
                require(corollary_moment(pat, r, n) ==
                            aggregate_brute(stat, n, r).value,
                        std::string("census moment mismatch for ") + text);
            }
        }
    }
    auto des = preset_statistic("descents");
    auto adj = preset_statistic("adjacency");
    for (int r = 1; r <= 3; ++r) {
        for (int n = 1; n <= 7; ++n) {
            Rational nf(factorial(n));
            require(euler_moment(r, n) == aggregate_brute(des, n, r).value / nf,
                    "descent moment formula mismatch");
            require(adjacency_moment(r, n) == aggregate_brute(adj, n, r).value / nf,
                    "adjacency moment formula mismatch");
        }
    }
}

void criterion_4() {
    auto patterns = all_patterns_up_to(3);
    for (size_t i = 0; i < patterns.size(); ++i) {
        for (size_t j = i; j < patterns.size(); ++j) {
            const Pattern& p1 = patterns[i];
            const Pattern& p2 = patterns[j];
            std::map<Pattern, long> targets;
            for (int len = std::max(p1.length(), p2.length());
                 len <= p1.length() + p2.length(); ++len) {
                for_each_merge({p1, p2}, len,
                               [&](const Merge& m) { ++targets[m.target]; });
            }
            for (int n = 1; n <= 5; ++n) {
                enumerate_sn(n, [&](const Permutation& sigma) {
                    Integer lhs = count(p1, sigma) * count(p2, sigma);
                    Integer rhs = 0;
                    for (const auto& [target, mult] : targets) {
                        if (target.length() <= n) {
                            rhs += Integer(mult) * count(target, sigma);
                        }
                    }
                    require(lhs == rhs, "count product != merge-target sum for " +
                                            p1.to_text() + " x " + p2.to_text() +
                                            " in " + sigma.to_text());
                });
            }
        }
    }
}

void criterion_5() {
    for (int k = 2; k <= 3; ++k) {
        Integer b = binomial(2 * k - 1, k);
        enumerate_sn(k, [&](const Permutation& sigma) {
            require(interpretation_mean(sigma) == Rational(b * b),
                    "mean identity fails for " + sigma.to_text());
            require(burstein_check(sigma).holds,
                    "lower bound fails for " + sigma.to_text());
            auto vc = variance_leading(Pattern(Permutation(sigma.one_line()), {}, {}));
            require(vc.coef_top == 0, "top variance coefficient nonzero");
            require(vc.coef_next > 0, "next variance coefficient not positive");
        });
    }
    if (7 <= kDefaultMaxBruteN) {
        Integer cross = sigma_pair_count(Permutation({1, 3, 2, 4}),
                                         Permutation({1, 2, 3, 4}), 7);
        Integer self = sigma_pair_count(Permutation({1, 3, 2, 4}),
                                        Permutation({1, 3, 2, 4}), 7);
        require(cross > self, "pair-count comparison at k=4 failed");
    } else {
        std::cout << "      (k=4 pair-count comparison skipped: above cap)\n";
    }
}

void criterion_6() {
    Rational v = linearity_aggregate(1, parse_pattern("[21]"),
                                     {Rational(0), Rational(3), Rational(1)},
                                     {Rational(1), Rational(0), Rational(0)}, 3);
    require(v == Rational(40), "linear-valuation worked value != 40");

    std::mt19937 rng(808);
    std::uniform_int_distribution<int> coef(-3, 3);
    int checked = 0;
    while (checked < 30) {
        int formula_case = 1 + (int)(rng() % 3);
        int k = 1 + (int)(rng() % 3);
        auto perm = unrank_permutation(
            k, std::uniform_int_distribution<std::uint64_t>(0, factorial_u64(k) - 1)(rng));
        std::vector<int> c;
        if (formula_case == 1) {
            for (int i = 1; i < k; ++i) {
                if (rng() % 2) {
                    c.push_back(i);
                }
            }
        }
        Pattern pat(Permutation(perm.one_line()), c, {});
        std::vector<Rational> a(k + 1, Rational(0)), b(k + 1, Rational(0));
        a[0] = Rational(1);
        b[0] = Rational(1);
        if (formula_case != 2) {
            for (int i = 0; i <= k; ++i) {
                a[i] = Rational(coef(rng));
            }
        }
        if (formula_case != 1) {
            for (int i = 0; i <= k; ++i) {
                b[i] = Rational(coef(rng));
            }
        }
        ValuationPoly q1 = ValuationPoly::constant(k, a[0]);
        ValuationPoly q2 = ValuationPoly::constant(k, b[0]);
        for (int i = 1; i <= k; ++i) {
            q1 = q1 + ValuationPoly::variable(k, i).scaled(a[i]);
            q2 = q2 + ValuationPoly::variable(k, i).scaled(b[i]);
        }
        auto stat = Statistic::simple({pat, q1, q2});
        for (int n = 1; n <= 6; ++n) {
            require(linearity_aggregate(formula_case, pat, a, b, n) ==
                        aggregate_brute(stat, n, 1).value,
                    "linear-valuation closed form mismatch (case " +
                        std::to_string(formula_case) + ")");
        }
        ++checked;
    }
}

void criterion_7() {
    Rational tol = make_rational(1, 100);
    for (int r = 1; r <= 3; ++r) {
        auto rep = poisson_convergence(r, {100, 1000, 10000}, tol);
        require(rep.gaps_nonincreasing,
                "gap sequence not monotone for r=" + std::to_string(r));
        // the pinned threshold: strictly below 1/100 already at n = 10^3
        require(rep.points[1].gap < tol,
                "gap at n=1000 is exactly " + to_string(rep.points[1].gap) +
                    " for r=" + std::to_string(r) +
                    ", not strictly below 1/100 (the exact moment is " +
                    to_string(rep.points[1].value) + ")");
    }
}

void criterion_8() {
    std::mt19937 rng(515);
    auto rand_pattern = [&]() {
        int k = 1 + (int)(rng() % 11); // includes the comma-separated text form
        auto perm = unrank_permutation(
            k, std::uniform_int_distribution<std::uint64_t>(0, factorial_u64(k) - 1)(rng));
        std::vector<int> c, d;
        for (int i = 1; i < k; ++i) {
            if (rng() % 3 == 0) {
                c.push_back(i);
            }
            if (rng() % 3 == 0) {
                d.push_back(i);
            }
        }
        return Pattern(Permutation(perm.one_line()), c, d);
    };
    for (int i = 0; i < 10000; ++i) {
        Pattern pat = rand_pattern();
        require(parse_pattern(format_pattern(pat)) == pat,
                "pattern round trip failed for " + format_pattern(pat));
    }
    std::uniform_int_distribution<int> coef(-9, 9);
    for (int i = 0; i < 10000; ++i) {
        int k = 1 + (int)(rng() % 4);
        ValuationPoly p = ValuationPoly::constant(k, Rational(coef(rng)));
        int terms = (int)(rng() % 4);
        for (int t = 0; t < terms; ++t) {
            ValuationPoly mono =
                ValuationPoly::constant(k, make_rational(coef(rng), 1 + (int)(rng() % 5)));
            int factors = 1 + (int)(rng() % 3);
            for (int f = 0; f < factors; ++f) {
                int which = (int)(rng() % (k + 1));
                mono = mono * (which == k ? ValuationPoly::size_symbol(k)
                                          : ValuationPoly::variable(k, which + 1));
            }
            p = p + mono;
        }
        require(parse_poly(format_poly(p), k) == p, "polynomial round trip failed");
    }
    // malformed inputs: never crash, always structured errors
    std::uniform_int_distribution<int> ch(32, 126);
    for (int i = 0; i < 10000; ++i) {
        std::string s = format_pattern(rand_pattern());
        for (int edits = 0; edits < 1 + (int)(rng() % 3); ++edits) {
            if (rng() % 2 && !s.empty()) {
                s[rng() % s.size()] = (char)ch(rng);
            } else {
                s.insert(s.begin() + (long)(rng() % (s.size() + 1)), (char)ch(rng));
            }
        }
        try {
            (void)parse_pattern(s);
        } catch (const ParseError&) {
        }
        std::string poly = "y1 + 2*y2 - m^2";
        poly[rng() % poly.size()] = (char)ch(rng);
        try {
            (void)parse_poly(poly, 2);
        } catch (const ParseError&) {
        }
    }
}

void criterion_9() {
    auto run_with_threads = [](const std::string& threads) {
        std::ostringstream out, err;
        int code = cli::run({"aggregate", "--stat", "peakSqSum", "--n", "6", "--r",
                             "2", "--method", "brute", "--threads", threads,
                             "--format", "json"},
                            out, err);
        require(code == 0, "aggregate invocation failed: " + err.str());
        return out.str();
    };
    std::string one = run_with_threads("1");
    require(one == run_with_threads("2"), "thread count 2 changed the output");
    require(one == run_with_threads("8"), "thread count 8 changed the output");

    AggregateOptions a1, a7;
    a1.chunks = 1;
    a7.chunks = 7;
    a7.threads = 3;
    auto stat = preset_statistic("drops");
    require(aggregate_brute(stat, 6, 2, a1).value ==
                aggregate_brute(stat, 6, 2, a7).value,
            "chunk layout changed the aggregate");
}

} // namespace

int main() {
    Harness h;
    h.criterion("criterion-1a  drops aggregate formula", criterion_1a);
    h.criterion("criterion-1b  1324 count aggregate formula", criterion_1b);
    h.criterion("criterion-1c  peak-square-sum aggregate formula", criterion_1c);
    h.criterion("criterion-1d  double-ascent second moment formula", criterion_1d);
    h.criterion("criterion-1e  bivincular 312 second moment formula", criterion_1e);
    h.criterion("criterion-2   merge counts", criterion_2);
    h.criterion("criterion-3   oracle equivalence", criterion_3);
    h.criterion("criterion-4   merge bijection", criterion_4);
    h.criterion("criterion-5   limit-law identities", criterion_5);
    h.criterion("criterion-6   linear-valuation closed forms", criterion_6);
    h.criterion("criterion-7   poisson moment convergence", criterion_7);
    h.criterion("criterion-8   parser fuzz", criterion_8);
    h.criterion("criterion-9   determinism across workers", criterion_9);
    if (h.failures) {
        std::cout << h.failures << " criterion(s) failing\n";
        return 1;
    }
    std::cout << "all criteria passing\n";
    return 0;
}
