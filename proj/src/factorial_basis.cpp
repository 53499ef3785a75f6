#include "permoment/factorial_basis.hpp"

#include <algorithm>
#include <cctype>

namespace permoment {

Rational evaluate_combination(const FactorialCombination& fc, long n) {
    if (n < fc.valid_from) {
        throw DomainError("combination evaluated below its validity threshold (n=" +
                          std::to_string(n) + " < " + std::to_string(fc.valid_from) +
                          ")");
    }
    Rational total(0);
    for (const auto& [offset, alpha] : fc.coeffs) {
        if (n + offset < 0) {
            throw DomainError("combination needs (n+i)! with negative argument");
        }
        total += alpha * Rational(factorial(n + offset));
    }
    return total;
}

std::vector<Rational> solve_linear_system(std::vector<std::vector<Rational>> a,
                                          std::vector<Rational> b) {
    size_t m = a.size();
    for (size_t col = 0; col < m; ++col) {
        size_t pivot = col;
        for (size_t r = col + 1; r < m; ++r) {
            if (abs(a[r][col]) > abs(a[pivot][col])) {
                pivot = r;
            }
        }
        if (a[pivot][col] == 0) {
            throw SingularSystemError("singular system (column " +
                                      std::to_string(col) + ")");
        }
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (size_t r = 0; r < m; ++r) {
            if (r == col || a[r][col] == 0) {
                continue;
            }
            Rational f = a[r][col] / a[col][col];
            for (size_t c = col; c < m; ++c) {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    std::vector<Rational> x(m);
    for (size_t i = 0; i < m; ++i) {
        x[i] = b[i] / a[i][i];
    }
    return x;
}

FactorialCombination fit(const std::vector<std::pair<long, Rational>>& data,
                         const std::vector<int>& offsets, long valid_from) {
    size_t m = offsets.size();
    if (data.size() < m + 2) {
        throw DomainError("fit needs at least " + std::to_string(m + 2) +
                          " data points (" + std::to_string(m) +
                          " unknowns plus two held-out checks)");
    }
    long min_n = data.front().first;
    for (const auto& [n, v] : data) {
        min_n = std::min(min_n, n);
        for (int off : offsets) {
            if (n + off < 0) {
                throw DomainError("data point n=" + std::to_string(n) +
                                  " below offset window");
            }
        }
    }
    std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m));
    std::vector<Rational> b(m);
    for (size_t r = 0; r < m; ++r) {
        for (size_t c = 0; c < m; ++c) {
            a[r][c] = Rational(factorial(data[r].first + offsets[c]));
        }
        b[r] = data[r].second;
    }
    std::vector<Rational> alpha = solve_linear_system(std::move(a), std::move(b));

    FactorialCombination fc;
    fc.valid_from = valid_from >= 0 ? valid_from : min_n;
    for (size_t c = 0; c < m; ++c) {
        if (alpha[c] != 0) {
            fc.coeffs[offsets[c]] = alpha[c];
        }
    }
    for (size_t r = m; r < data.size(); ++r) {
        Rational got(0);
        for (const auto& [off, cf] : fc.coeffs) {
            got += cf * Rational(factorial(data[r].first + off));
        }
        if (got != data[r].second) {
            throw VerificationError(
                "held-out point n=" + std::to_string(data[r].first) +
                " mismatches fitted combination: expected " +
                to_string(data[r].second) + ", combination gives " + to_string(got));
        }
    }
    return fc;
}

OffsetWindow default_offsets(const Statistic& stat, int r) {
    if (r < 1) {
        throw DomainError("moment order must be >= 1");
    }
    if (stat.is_single_term()) {
        const auto& s = stat.terms().front().second;
        int k = s.pattern.length();
        int c = s.pattern.position_adjacency_count();
        bool pure_count = s.q1.is_constant() && s.q2.is_constant();
        if (pure_count && s.pattern.is_vincular()) {
            OffsetWindow w;
            for (int i = 0; i <= r * (k - c); ++i) {
                w.offsets.push_back(i);
            }
            w.valid_from = (long)r * k;
            w.source = OffsetSource::vincular_count;
            return w;
        }
        if (r == 1) {
            int d = s.pattern.value_adjacency_count();
            int m = degree(stat);
            OffsetWindow w;
            for (int i = 0; i <= m - c - d; ++i) {
                w.offsets.push_back(i - k);
            }
            w.valid_from = k;
            w.source = OffsetSource::simple_statistic;
            return w;
        }
    }
    int max_k = 0;
    for (const auto& [coef, s] : stat.terms()) {
        max_k = std::max(max_k, s.pattern.length());
    }
    int m = degree(stat);
    OffsetWindow w;
    for (int i = -r * max_k; i <= r * m; ++i) {
        w.offsets.push_back(i);
    }
    w.valid_from = (long)r * max_k;
    w.source = OffsetSource::general_statistic;
    return w;
}

FactorialCombination to_factorial_combination(const PolyTimesShiftedFactorial& pf) {
    // Peel the leading coefficient against the basis polynomial
    // g_i(n) = (n-shift+i)!/(n-shift)! = (n-shift+1)...(n-shift+i),
    // which has degree i with leading coefficient 1.
    FactorialCombination fc;
    fc.valid_from = pf.shift;
    UnivariatePoly rest = pf.poly;
    while (!rest.is_zero()) {
        int d = rest.degree();
        Rational c = rest.coeff(d);
        fc.coeffs[d - pf.shift] = c;
        UnivariatePoly g = UnivariatePoly::constant(Rational(1));
        for (int j = 1; j <= d; ++j) {
            g = g * UnivariatePoly({Rational(j - pf.shift), Rational(1)});
        }
        rest = rest - g.scaled(c);
        if (!rest.is_zero() && rest.degree() >= d) {
            throw Error("internal: basis conversion did not reduce degree");
        }
    }
    std::erase_if(fc.coeffs, [](const auto& kv) { return kv.second == 0; });
    return fc;
}

std::string format_formula(const FactorialCombination& fc) {
    if (fc.coeffs.empty()) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (const auto& [off, cf] : fc.coeffs) {
        Rational mag = abs(cf);
        bool neg = cf < 0;
        if (first) {
            out += neg ? "-" : "";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        if (mag != 1) {
            out += to_string(mag) + "*";
        }
        if (off == 0) {
            out += "n!";
        } else if (off > 0) {
            out += "(n+" + std::to_string(off) + ")!";
        } else {
            out += "(n-" + std::to_string(-off) + ")!";
        }
    }
    return out;
}

FactorialCombination parse_formula(const std::string& text) {
    FactorialCombination fc;
    size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace((unsigned char)text[pos])) {
            ++pos;
        }
    };
    skip_ws();
    if (text.substr(pos) == "0") {
        return fc;
    }
    bool first = true;
    while (pos < text.size()) {
        skip_ws();
        if (pos >= text.size()) {
            break;
        }
        int sign = 1;
        if (text[pos] == '-') {
            sign = -1;
            ++pos;
        } else if (text[pos] == '+') {
            ++pos;
        } else if (!first) {
            throw ParseError("expected '+' or '-' in formula");
        }
        skip_ws();
        // optional coefficient followed by '*'
        Rational mag(1);
        size_t start = pos;
        while (pos < text.size() &&
               (std::isdigit((unsigned char)text[pos]) || text[pos] == '/')) {
            ++pos;
        }
        if (pos > start) {
            mag = parse_rational(text.substr(start, pos - start));
            skip_ws();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
            } else {
                throw ParseError("expected '*' after coefficient in formula");
            }
            skip_ws();
        }
        int offset = 0;
        if (pos < text.size() && text[pos] == 'n') {
            ++pos;
        } else if (pos < text.size() && text[pos] == '(') {
            ++pos;
            skip_ws();
            if (pos >= text.size() || text[pos] != 'n') {
                throw ParseError("expected 'n' in formula term");
            }
            ++pos;
            skip_ws();
            int tsign = 1;
            if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
                tsign = text[pos] == '-' ? -1 : 1;
                ++pos;
            } else {
                throw ParseError("expected offset sign in formula term");
            }
            skip_ws();
            size_t dstart = pos;
            while (pos < text.size() && std::isdigit((unsigned char)text[pos])) {
                ++pos;
            }
            if (dstart == pos) {
                throw ParseError("expected offset digits in formula term");
            }
            try {
                offset = tsign * std::stoi(text.substr(dstart, pos - dstart));
            } catch (const std::exception&) {
                throw ParseError("formula offset out of range");
            }
            skip_ws();
            if (pos >= text.size() || text[pos] != ')') {
                throw ParseError("expected ')' in formula term");
            }
            ++pos;
        } else {
            throw ParseError("expected 'n!' or '(n+i)!' in formula term");
        }
        if (pos >= text.size() || text[pos] != '!') {
            throw ParseError("expected '!' in formula term");
        }
        ++pos;
        Rational cf = mag;
        if (sign < 0) {
            cf = -cf;
        }
        if (fc.coeffs.count(offset)) {
            throw ParseError("duplicate offset in formula");
        }
        if (cf != 0) {
            fc.coeffs[offset] = cf;
        }
        first = false;
        skip_ws();
    }
    return fc;
}

} // namespace permoment
