#include "permoment/statistic.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace permoment {

void ValuationPoly::add_term(const std::vector<unsigned>& exp, const Rational& c) {
    auto it = terms_.find(exp);
    if (it == terms_.end()) {
        if (c != 0) {
            terms_.emplace(exp, c);
        }
        return;
    }
    it->second += c;
    if (it->second == 0) {
        terms_.erase(it);
    }
}

ValuationPoly ValuationPoly::constant(int k, const Rational& c) {
    ValuationPoly p(k);
    if (c != 0) {
        p.terms_.emplace(std::vector<unsigned>(k + 1, 0), c);
    }
    return p;
}

ValuationPoly ValuationPoly::variable(int k, int i) {
    if (i < 1 || i > k) {
        throw DomainError("variable index y" + std::to_string(i) +
                          " outside pattern length " + std::to_string(k));
    }
    ValuationPoly p(k);
    std::vector<unsigned> exp(k + 1, 0);
    exp[i - 1] = 1;
    p.terms_.emplace(std::move(exp), Rational(1));
    return p;
}

ValuationPoly ValuationPoly::size_symbol(int k) {
    ValuationPoly p(k);
    std::vector<unsigned> exp(k + 1, 0);
    exp[k] = 1;
    p.terms_.emplace(std::move(exp), Rational(1));
    return p;
}

bool ValuationPoly::is_constant() const {
    if (terms_.empty()) {
        return true;
    }
    return terms_.size() == 1 &&
           std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                       [](unsigned e) { return e == 0; });
}

Rational ValuationPoly::constant_value() const {
    if (terms_.empty()) {
        return Rational(0);
    }
    if (!is_constant()) {
        throw DomainError("polynomial is not constant");
    }
    return terms_.begin()->second;
}

int ValuationPoly::degree() const {
    int deg = 0;
    for (const auto& [exp, c] : terms_) {
        deg = std::max(deg, (int)std::accumulate(exp.begin(), exp.end(), 0u));
    }
    return deg;
}

ValuationPoly ValuationPoly::operator+(const ValuationPoly& o) const {
    if (vars_ != o.vars_) {
        throw DomainError("polynomial variable count mismatch");
    }
    ValuationPoly out = *this;
    for (const auto& [exp, c] : o.terms_) {
        out.add_term(exp, c);
    }
    return out;
}

ValuationPoly ValuationPoly::operator-(const ValuationPoly& o) const {
    return *this + (-o);
}

ValuationPoly ValuationPoly::operator-() const {
    ValuationPoly out(vars_);
    for (const auto& [exp, c] : terms_) {
        out.terms_.emplace(exp, -c);
    }
    return out;
}

ValuationPoly ValuationPoly::scaled(const Rational& c) const {
    ValuationPoly out(vars_);
    if (c == 0) {
        return out;
    }
    for (const auto& [exp, cf] : terms_) {
        out.terms_.emplace(exp, cf * c);
    }
    return out;
}

ValuationPoly ValuationPoly::operator*(const ValuationPoly& o) const {
    if (vars_ != o.vars_) {
        throw DomainError("polynomial variable count mismatch");
    }
    ValuationPoly out(vars_);
    for (const auto& [e1, c1] : terms_) {
        for (const auto& [e2, c2] : o.terms_) {
            std::vector<unsigned> exp(e1.size());
            for (size_t i = 0; i < exp.size(); ++i) {
                exp[i] = e1[i] + e2[i];
            }
            out.add_term(exp, c1 * c2);
        }
    }
    return out;
}

ValuationPoly ValuationPoly::pow(int e) const {
    if (e < 0) {
        throw DomainError("negative exponent");
    }
    ValuationPoly out = constant(vars_, Rational(1));
    for (int i = 0; i < e; ++i) {
        out = out * *this;
    }
    return out;
}

Rational ValuationPoly::evaluate(const std::vector<int>& ys, long n) const {
    if ((int)ys.size() != vars_) {
        throw DomainError("evaluation point has wrong arity");
    }
    Rational total(0);
    Integer mono;
    for (const auto& [exp, c] : terms_) {
        mono = 1;
        for (int i = 0; i < vars_; ++i) {
            for (unsigned e = 0; e < exp[i]; ++e) {
                mono *= ys[i];
            }
        }
        for (unsigned e = 0; e < exp[vars_]; ++e) {
            mono *= n;
        }
        total += c * Rational(mono);
    }
    return total;
}

ValuationPoly ValuationPoly::remapped(const std::vector<int>& image,
                                      int new_vars) const {
    if ((int)image.size() != vars_) {
        throw DomainError("remap image has wrong arity");
    }
    ValuationPoly out(new_vars);
    for (const auto& [exp, c] : terms_) {
        std::vector<unsigned> nexp(new_vars + 1, 0);
        for (int i = 0; i < vars_; ++i) {
            if (exp[i] > 0) {
                if (image[i] < 1 || image[i] > new_vars) {
                    throw DomainError("remap image leaves the variable range");
                }
                nexp[image[i] - 1] += exp[i];
            }
        }
        nexp[new_vars] = exp[vars_];
        out.add_term(nexp, c);
    }
    return out;
}

std::string ValuationPoly::to_text() const {
    if (terms_.empty()) {
        return "0";
    }
    // highest total degree first, then reverse-lex on exponents,
    // so the printed form is deterministic
    std::vector<std::pair<std::vector<unsigned>, Rational>> ts(terms_.begin(),
                                                               terms_.end());
    std::sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
        unsigned da = std::accumulate(a.first.begin(), a.first.end(), 0u);
        unsigned db = std::accumulate(b.first.begin(), b.first.end(), 0u);
        if (da != db) {
            return da > db;
        }
        return a.first > b.first;
    });
    std::string out;
    for (size_t idx = 0; idx < ts.size(); ++idx) {
        const auto& [exp, c] = ts[idx];
        Rational mag = abs(c);
        bool neg = c < 0;
        if (idx == 0) {
            out += neg ? "-" : "";
        } else {
            out += neg ? " - " : " + ";
        }
        std::vector<std::string> factors;
        for (int i = 0; i < vars_; ++i) {
            if (exp[i] > 0) {
                std::string f = "y" + std::to_string(i + 1);
                if (exp[i] > 1) {
                    f += "^" + std::to_string(exp[i]);
                }
                factors.push_back(f);
            }
        }
        if (exp[vars_] > 0) {
            std::string f = "m";
            if (exp[vars_] > 1) {
                f += "^" + std::to_string(exp[vars_]);
            }
            factors.push_back(f);
        }
        if (factors.empty()) {
            out += to_string(mag);
        } else {
            if (mag != 1) {
                out += to_string(mag) + "*";
            }
            for (size_t i = 0; i < factors.size(); ++i) {
                if (i) {
                    out += "*";
                }
                out += factors[i];
            }
        }
    }
    return out;
}

std::string format_poly(const ValuationPoly& poly) {
    return poly.to_text();
}

namespace {

// Recursive-descent parser for the expression grammar.
class PolyParser {
public:
    PolyParser(const std::string& text, int k) : s_(text), k_(k) {}

    ValuationPoly parse() {
        auto p = parse_sum();
        skip_ws();
        if (pos_ != s_.size()) {
            fail("unexpected trailing input");
        }
        return p;
    }

private:
    const std::string& s_;
    int k_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(msg + " at offset " + std::to_string(pos_) +
                         " in '" + s_ + "'");
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) {
            ++pos_;
        }
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    ValuationPoly parse_sum() {
        bool neg = false;
        skip_ws();
        if (eat('-')) {
            neg = true;
        } else {
            eat('+');
        }
        ValuationPoly acc = parse_product();
        if (neg) {
            acc = -acc;
        }
        while (true) {
            if (eat('+')) {
                acc = acc + parse_product();
            } else if (eat('-')) {
                acc = acc - parse_product();
            } else {
                break;
            }
        }
        return acc;
    }

    ValuationPoly parse_product() {
        ValuationPoly acc = parse_power();
        while (eat('*')) {
            acc = acc * parse_power();
        }
        return acc;
    }

    ValuationPoly parse_power() {
        ValuationPoly base = parse_atom();
        if (eat('^')) {
            long e = parse_integer();
            if (e < 0) {
                fail("negative exponent");
            }
            return base.pow((int)e);
        }
        return base;
    }

    long parse_integer() {
        skip_ws();
        size_t start = pos_;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
            ++pos_;
        }
        while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) {
            ++pos_;
        }
        if (pos_ == start) {
            fail("expected integer");
        }
        try {
            return std::stol(s_.substr(start, pos_ - start));
        } catch (const std::exception&) {
            fail("integer literal out of range");
        }
    }

    ValuationPoly parse_atom() {
        char c = peek();
        if (c == '(') {
            eat('(');
            auto p = parse_sum();
            if (!eat(')')) {
                fail("expected ')'");
            }
            return p;
        }
        if (c == '-') {
            eat('-');
            return -parse_atom();
        }
        if (std::isdigit((unsigned char)c)) {
            long num = parse_integer();
            if (eat('/')) {
                long den = parse_integer();
                if (den == 0) {
                    fail("zero denominator");
                }
                return ValuationPoly::constant(k_, make_rational(num, den));
            }
            return ValuationPoly::constant(k_, Rational(num));
        }
        if (c == 'y' || c == 'Y') {
            ++pos_;
            long i = parse_integer();
            if (i < 1 || i > k_) {
                fail("variable y" + std::to_string(i) + " outside y1..y" +
                     std::to_string(k_));
            }
            return ValuationPoly::variable(k_, (int)i);
        }
        if (c == 'm' || c == 'M') {
            ++pos_;
            return ValuationPoly::size_symbol(k_);
        }
        fail("expected literal, variable, or '('");
    }
};

} // namespace

ValuationPoly parse_poly(const std::string& text, int k) {
    return PolyParser(text, k).parse();
}

Statistic::Statistic(std::vector<std::pair<Rational, SimpleStatistic>> terms)
    : terms_(std::move(terms)) {
    if (terms_.empty()) {
        throw DomainError("statistic needs at least one term");
    }
    for (const auto& [c, s] : terms_) {
        if (s.q1.var_count() != s.pattern.length() ||
            s.q2.var_count() != s.pattern.length()) {
            throw DomainError("valuation polynomial arity does not match pattern");
        }
    }
}

Statistic Statistic::simple(SimpleStatistic s, Rational coef) {
    std::vector<std::pair<Rational, SimpleStatistic>> terms;
    terms.emplace_back(std::move(coef), std::move(s));
    return Statistic(std::move(terms));
}

Rational evaluate(const SimpleStatistic& stat, const Permutation& sigma) {
    if (stat.q1.is_constant() && stat.q2.is_constant()) {
        return stat.q1.constant_value() * stat.q2.constant_value() *
               Rational(count(stat.pattern, sigma));
    }
    Rational total(0);
    long n = sigma.size();
    for_each_occurrence(stat.pattern, sigma,
                        [&](const std::vector<int>& t, const std::vector<int>& w) {
                            total += stat.q1.evaluate(t, n) * stat.q2.evaluate(w, n);
                        });
    return total;
}

Rational evaluate(const Statistic& stat, const Permutation& sigma) {
    Rational total(0);
    for (const auto& [coef, s] : stat.terms()) {
        total += coef * evaluate(s, sigma);
    }
    return total;
}

int degree(const SimpleStatistic& stat) {
    return 2 * stat.pattern.length() + stat.q1.degree() + stat.q2.degree();
}

int degree(const Statistic& stat) {
    int deg = 0;
    for (const auto& [coef, s] : stat.terms()) {
        deg = std::max(deg, degree(s));
    }
    return deg;
}

Statistic count_statistic(const Pattern& pat) {
    int k = pat.length();
    return Statistic::simple({pat, ValuationPoly::constant(k, Rational(1)),
                              ValuationPoly::constant(k, Rational(1))});
}

Statistic preset_statistic(const std::string& name) {
    auto one = [](int k) { return ValuationPoly::constant(k, Rational(1)); };
    if (name == "descents") {
        return count_statistic(parse_pattern("[21]"));
    }
    if (name == "adjacency") {
        return count_statistic(parse_pattern("[21];D=1"));
    }
    if (name == "doubleAscents") {
        return count_statistic(parse_pattern("[123]"));
    }
    if (name == "drops") {
        return Statistic::simple(
            {parse_pattern("[21]"), parse_poly("y2 - y1", 2), one(2)});
    }
    if (name == "peakSqSum") {
        SimpleStatistic f1{parse_pattern("[132]"), parse_poly("y3^2", 3), one(3)};
        SimpleStatistic f2{parse_pattern("[231]"), parse_poly("y3^2", 3), one(3)};
        return Statistic({{Rational(1), f1}, {Rational(1), f2}});
    }
    if (name.rfind("cnt:", 0) == 0) {
        return count_statistic(parse_pattern(name.substr(4)));
    }
    throw ParseError("unknown statistic preset '" + name + "'");
}

} // namespace permoment
