#include "permoment/numbers.hpp"

#include <mutex>
#include <vector>

namespace permoment {

Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) {
        throw DomainError("rational with zero denominator");
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational parse_rational(const std::string& text) {
    auto trim = [](std::string s) {
        const char* ws = " \t";
        auto b = s.find_first_not_of(ws);
        auto e = s.find_last_not_of(ws);
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string s = trim(text);
    if (s.empty()) {
        throw ParseError("empty rational literal");
    }
    std::string num = s, den = "1";
    if (auto slash = s.find('/'); slash != std::string::npos) {
        num = trim(s.substr(0, slash));
        den = trim(s.substr(slash + 1));
    }
    Integer n, d;
    if (n.set_str(num, 10) != 0 || d.set_str(den, 10) != 0) {
        throw ParseError("malformed rational literal: '" + text + "'");
    }
    return make_rational(n, d);
}

std::string to_string(const Rational& q) {
    return q.get_str();
}

std::string decimal_string(const Rational& q, int digits) {
    if (digits < 0) {
        digits = 0;
    }
    Integer scale = 1;
    for (int i = 0; i < digits; ++i) {
        scale *= 10;
    }
    // round half away from zero
    Integer num = q.get_num() * scale * 2;
    Integer den = q.get_den();
    Integer twice = num / den;
    Integer adjusted = twice >= 0 ? Integer(twice + 1) : Integer(twice - 1);
    Integer scaled = adjusted / 2;
    bool neg = scaled < 0;
    Integer mag = abs(scaled);
    std::string s = mag.get_str();
    if ((int)s.size() <= digits) {
        s.insert(0, digits - s.size() + 1, '0');
    }
    if (digits > 0) {
        s.insert(s.size() - digits, ".");
    }
    return (neg ? "-" : "") + s;
}

namespace {

// Memoized families. Small tables, grown on demand; a mutex keeps the
// growth safe to call from the parallel aggregation paths.
std::mutex g_tables_mutex;

const Integer& factorial_memo(long n) {
    static std::vector<Integer> table{1};
    while ((long)table.size() <= n) {
        table.push_back(table.back() * (long)table.size());
    }
    return table[n];
}

// triangle[k][i] for 0 <= i <= k
const std::vector<Integer>& stirling1_row(long k) {
    static std::vector<std::vector<Integer>> tri{{1}};
    while ((long)tri.size() <= k) {
        long r = (long)tri.size();
        std::vector<Integer> row(r + 1);
        for (long i = 1; i <= r; ++i) {
            row[i] = tri[r - 1][i - 1];
            if (i < r) {
                row[i] += (r - 1) * tri[r - 1][i];
            }
        }
        tri.push_back(std::move(row));
    }
    return tri[k];
}

const std::vector<Integer>& stirling2_row(long r) {
    static std::vector<std::vector<Integer>> tri{{1}};
    while ((long)tri.size() <= r) {
        long n = (long)tri.size();
        std::vector<Integer> row(n + 1);
        for (long i = 1; i <= n; ++i) {
            row[i] = tri[n - 1][i - 1];
            if (i < n) {
                row[i] += i * tri[n - 1][i];
            }
        }
        tri.push_back(std::move(row));
    }
    return tri[r];
}

} // namespace

Integer factorial(long n) {
    if (n < 0) {
        throw DomainError("factorial of negative argument");
    }
    std::lock_guard<std::mutex> lock(g_tables_mutex);
    return factorial_memo(n);
}

Integer falling_factorial(long n, long k) {
    if (k < 0) {
        throw DomainError("falling factorial with negative length");
    }
    Integer out = 1;
    for (long i = 0; i < k; ++i) {
        out *= (n - i);
    }
    return out;
}

Integer binomial(long n, long k) {
    if (k < 0 || (n >= 0 && k > n) || (n < 0 && k > 0)) {
        return 0;
    }
    if (k == 0) {
        return 1;
    }
    if (n - k < k) {
        k = n - k;
    }
    // exact by construction: falling_factorial(n,k) is divisible by k!
    return falling_factorial(n, k) / factorial(k);
}

Integer stirling_first_unsigned(long k, long i) {
    if (k < 0 || i < 0 || i > k) {
        return 0;
    }
    std::lock_guard<std::mutex> lock(g_tables_mutex);
    return stirling1_row(k)[i];
}

Integer stirling_second(long r, long k) {
    if (r < 0 || k < 0 || k > r) {
        return 0;
    }
    std::lock_guard<std::mutex> lock(g_tables_mutex);
    return stirling2_row(r)[k];
}

Integer bell(long r) {
    if (r < 0) {
        throw DomainError("bell number of negative index");
    }
    Integer out = 0;
    std::lock_guard<std::mutex> lock(g_tables_mutex);
    const auto& row = stirling2_row(r);
    for (const auto& v : row) {
        out += v;
    }
    return out;
}

Integer lah(long k, long j) {
    if (j < 1 || j > k) {
        throw DomainError("lah(k,j) requires 1 <= j <= k");
    }
    return binomial(k - 1, j - 1) * factorial(k) / factorial(j);
}

} // namespace permoment
