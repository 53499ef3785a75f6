#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "permoment/numbers.hpp"
#include "permoment/statistic.hpp"
#include "permoment/univariate.hpp"

namespace permoment {

/// Linear combination of shifted factorials: sum over offsets i of
/// alpha_i * (n+i)!. Zero coefficients are never stored. valid_from is the
/// smallest n for which the representation is claimed.
struct FactorialCombination {
    std::map<int, Rational> coeffs;
    long valid_from = 0;

    bool same_coeffs(const FactorialCombination& o) const {
        return coeffs == o.coeffs;
    }
};

/// poly(n) * (n - shift)!, the closed form produced by the aggregate
/// factorization and by the census-based moment formula.
struct PolyTimesShiftedFactorial {
    UnivariatePoly poly;
    int shift = 0;
};

/// Sum of alpha_i (n+i)!. Throws DomainError when n < valid_from or some
/// n+i is negative.
Rational evaluate_combination(const FactorialCombination& fc, long n);

/// Which bound supplied an offset window.
enum class OffsetSource { simple_statistic, general_statistic, vincular_count };

struct OffsetWindow {
    std::vector<int> offsets;
    long valid_from = 0;
    OffsetSource source = OffsetSource::general_statistic;
};

/// Tightest applicable offset window for fitting M(f^r, n):
///   - pure count of a vincular pattern: offsets 0..r(k-c), valid from rk;
///   - any simple statistic with r = 1: offsets i-k for 0 <= i <= m-c-d,
///     valid from k;
///   - otherwise offsets -rL..rm with L = max pattern length, valid from rL.
OffsetWindow default_offsets(const Statistic& stat, int r);

/// Exact fit: solve the square system on the first |offsets| data points by
/// rational Gaussian elimination, then require every remaining point to
/// match exactly. Needs |data| >= |offsets| + 2 so at least two points are
/// held out. Throws SingularSystemError or VerificationError.
FactorialCombination fit(const std::vector<std::pair<long, Rational>>& data,
                         const std::vector<int>& offsets,
                         long valid_from = -1); // default: smallest data n

/// Exact change of basis from poly(n)*(n-shift)! to shifted factorials.
FactorialCombination to_factorial_combination(const PolyTimesShiftedFactorial& pf);

/// "-1/2*(n+1)! + 1/6*(n+2)!"; empty combination prints "0".
std::string format_formula(const FactorialCombination& fc);
FactorialCombination parse_formula(const std::string& text);

/// Exact solver for dense rational systems; pivots on the entry of largest
/// absolute value to bound intermediate growth. Throws SingularSystemError.
std::vector<Rational> solve_linear_system(std::vector<std::vector<Rational>> a,
                                          std::vector<Rational> b);

} // namespace permoment
