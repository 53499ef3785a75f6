#include "permoment/univariate.hpp"

namespace permoment {

UnivariatePoly::UnivariatePoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
    trim();
}

void UnivariatePoly::trim() {
    while (!c_.empty() && c_.back() == 0) {
        c_.pop_back();
    }
}

UnivariatePoly UnivariatePoly::constant(const Rational& c) {
    return UnivariatePoly({c});
}

UnivariatePoly UnivariatePoly::falling_in_n(long shift, long k) {
    UnivariatePoly out = constant(Rational(1));
    for (long j = 0; j < k; ++j) {
        out = out * UnivariatePoly({Rational(shift - j), Rational(1)});
    }
    return out;
}

UnivariatePoly UnivariatePoly::binomial_in_n(long shift, long k) {
    if (k < 0) {
        return UnivariatePoly();
    }
    return falling_in_n(shift, k).scaled(make_rational(1, factorial(k)));
}

Rational UnivariatePoly::coeff(int d) const {
    if (d < 0 || d >= (int)c_.size()) {
        return Rational(0);
    }
    return c_[d];
}

UnivariatePoly UnivariatePoly::operator+(const UnivariatePoly& o) const {
    std::vector<Rational> out(std::max(c_.size(), o.c_.size()), Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        out[i] += c_[i];
    }
    for (size_t i = 0; i < o.c_.size(); ++i) {
        out[i] += o.c_[i];
    }
    return UnivariatePoly(std::move(out));
}

UnivariatePoly UnivariatePoly::operator-(const UnivariatePoly& o) const {
    return *this + o.scaled(Rational(-1));
}

UnivariatePoly UnivariatePoly::operator*(const UnivariatePoly& o) const {
    if (c_.empty() || o.c_.empty()) {
        return UnivariatePoly();
    }
    std::vector<Rational> out(c_.size() + o.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        for (size_t j = 0; j < o.c_.size(); ++j) {
            out[i + j] += c_[i] * o.c_[j];
        }
    }
    return UnivariatePoly(std::move(out));
}

UnivariatePoly UnivariatePoly::scaled(const Rational& c) const {
    if (c == 0) {
        return UnivariatePoly();
    }
    std::vector<Rational> out = c_;
    for (auto& x : out) {
        x *= c;
    }
    return UnivariatePoly(std::move(out));
}

Rational UnivariatePoly::evaluate(long n) const {
    Rational acc(0);
    for (size_t i = c_.size(); i-- > 0;) {
        acc = acc * n + c_[i];
    }
    return acc;
}

} // namespace permoment
