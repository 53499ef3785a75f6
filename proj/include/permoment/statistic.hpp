#pragma once

#include <map>
#include <string>
#include <vector>

#include "permoment/numbers.hpp"
#include "permoment/pattern.hpp"

namespace permoment {

/// Multivariate polynomial over the rationals in y_1..y_k and the host
/// size symbol m, stored canonically expanded (exponent vector -> nonzero
/// coefficient). Exponent vectors have length k+1; the last slot is m.
class ValuationPoly {
public:
    ValuationPoly() = default;
    explicit ValuationPoly(int k) : vars_(k) {}

    static ValuationPoly constant(int k, const Rational& c);
    static ValuationPoly variable(int k, int i); // y_i, 1 <= i <= k
    static ValuationPoly size_symbol(int k);     // m

    int var_count() const { return vars_; }
    bool is_constant() const;
    Rational constant_value() const; // requires is_constant()
    int degree() const;              // total degree; zero polynomial: 0
    bool is_zero() const { return terms_.empty(); }

    ValuationPoly operator+(const ValuationPoly& o) const;
    ValuationPoly operator-(const ValuationPoly& o) const;
    ValuationPoly operator*(const ValuationPoly& o) const;
    ValuationPoly operator-() const;
    ValuationPoly scaled(const Rational& c) const;
    ValuationPoly pow(int e) const;

    /// Evaluate with y_i = ys[i-1] and m = n.
    Rational evaluate(const std::vector<int>& ys, long n) const;

    /// Pull back through an increasing index map: y_i becomes
    /// y_{image[i-1]} in a polynomial over new_vars variables; m is kept.
    ValuationPoly remapped(const std::vector<int>& image, int new_vars) const;

    const std::map<std::vector<unsigned>, Rational>& terms() const { return terms_; }

    std::string to_text() const;

    bool operator==(const ValuationPoly&) const = default;

private:
    int vars_ = 0;
    std::map<std::vector<unsigned>, Rational> terms_;

    void add_term(const std::vector<unsigned>& exp, const Rational& c);
};

/// Grammar: rational/integer literals, variables y1..yk and m, operators
/// + - * ^ (non-negative integer exponents), parentheses. "p/q" is a
/// literal, not division.
ValuationPoly parse_poly(const std::string& text, int k);
std::string format_poly(const ValuationPoly& poly);

/// Occurrence-weighted sum for one pattern: each occurrence contributes
/// Q1(values, n) * Q2(positions, n), positions taken in value order.
struct SimpleStatistic {
    Pattern pattern;
    ValuationPoly q1;
    ValuationPoly q2;

    bool operator==(const SimpleStatistic&) const = default;
};

/// Rational linear combination of simple statistics. Never empty.
class Statistic {
public:
    explicit Statistic(std::vector<std::pair<Rational, SimpleStatistic>> terms);
    static Statistic simple(SimpleStatistic s, Rational coef = Rational(1));

    const std::vector<std::pair<Rational, SimpleStatistic>>& terms() const {
        return terms_;
    }
    bool is_single_term() const { return terms_.size() == 1; }

    bool operator==(const Statistic&) const = default;

private:
    std::vector<std::pair<Rational, SimpleStatistic>> terms_;
};

Rational evaluate(const SimpleStatistic& stat, const Permutation& sigma);
Rational evaluate(const Statistic& stat, const Permutation& sigma);

/// 2k + deg(Q1) + deg(Q2) for a simple statistic; max over terms otherwise.
int degree(const SimpleStatistic& stat);
int degree(const Statistic& stat);

/// Named presets: descents, adjacency, drops, peakSqSum, doubleAscents,
/// and the cnt:<pattern-text> family. Throws ParseError on unknown names.
Statistic preset_statistic(const std::string& name);

/// Pure pattern-count statistic.
Statistic count_statistic(const Pattern& pat);

} // namespace permoment
