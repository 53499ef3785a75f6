#pragma once

#include <vector>

#include "permoment/numbers.hpp"

namespace permoment {

/// Dense univariate polynomial in n over the rationals, coefficients
/// stored low degree first with no trailing zeros.
class UnivariatePoly {
public:
    UnivariatePoly() = default;
    explicit UnivariatePoly(std::vector<Rational> coeffs);
    static UnivariatePoly constant(const Rational& c);

    /// binom(n + shift, k) as a polynomial in n.
    static UnivariatePoly binomial_in_n(long shift, long k);
    /// (n + shift)(n + shift - 1)...(n + shift - k + 1).
    static UnivariatePoly falling_in_n(long shift, long k);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return c_.empty() ? 0 : (int)c_.size() - 1; }
    Rational coeff(int d) const;
    const std::vector<Rational>& coeffs() const { return c_; }

    UnivariatePoly operator+(const UnivariatePoly& o) const;
    UnivariatePoly operator-(const UnivariatePoly& o) const;
    UnivariatePoly operator*(const UnivariatePoly& o) const;
    UnivariatePoly scaled(const Rational& c) const;

    Rational evaluate(long n) const;

    bool operator==(const UnivariatePoly&) const = default;

private:
    std::vector<Rational> c_;
    void trim();
};

} // namespace permoment
