#include "permoment/pattern.hpp"

#include <algorithm>
#include <cctype>

namespace permoment {

Pattern::Pattern(Permutation perm, const std::vector<int>& adj_positions,
                 const std::vector<int>& adj_values)
    : perm_(std::move(perm)) {
    int k = perm_.size();
    if (k < 1) {
        throw DomainError("pattern must have length >= 1");
    }
    for (int i : adj_positions) {
        if (i < 1 || i > k - 1) {
            throw DomainError("position-adjacency index outside [k-1]");
        }
        cmask_ |= 1u << (i - 1);
    }
    for (int i : adj_values) {
        if (i < 1 || i > k - 1) {
            throw DomainError("value-adjacency index outside [k-1]");
        }
        dmask_ |= 1u << (i - 1);
    }
}

std::vector<int> Pattern::adjacency_positions() const {
    std::vector<int> out;
    for (int i = 1; i < length(); ++i) {
        if (has_position_adjacency(i)) {
            out.push_back(i);
        }
    }
    return out;
}

std::vector<int> Pattern::adjacency_values() const {
    std::vector<int> out;
    for (int i = 1; i < length(); ++i) {
        if (has_value_adjacency(i)) {
            out.push_back(i);
        }
    }
    return out;
}

int Pattern::position_adjacency_count() const {
    return (int)adjacency_positions().size();
}

int Pattern::value_adjacency_count() const {
    return (int)adjacency_values().size();
}

std::string Pattern::to_text() const {
    int k = length();
    bool commas = k >= 10;
    std::string out;
    bool in_block = false;
    for (int i = 1; i <= k; ++i) {
        bool starts_block = !in_block && i < k && has_position_adjacency(i);
        if (commas && i > 1 && !out.empty() && out.back() != '[') {
            out += ',';
        }
        if (starts_block) {
            out += '[';
            in_block = true;
        }
        out += std::to_string(perm_.at(i));
        if (in_block && (i == k || !has_position_adjacency(i))) {
            out += ']';
            in_block = false;
        }
    }
    auto d = adjacency_values();
    if (!d.empty()) {
        out += ";D=";
        for (size_t i = 0; i < d.size(); ++i) {
            if (i) {
                out += ',';
            }
            out += std::to_string(d[i]);
        }
    }
    return out;
}

std::string format_pattern(const Pattern& pat) {
    return pat.to_text();
}

namespace {

std::vector<int> parse_int_list(const std::string& s, const std::string& ctx) {
    std::vector<int> out;
    size_t pos = 0;
    while (pos < s.size()) {
        size_t next = s.find(',', pos);
        if (next == std::string::npos) {
            next = s.size();
        }
        std::string tok = s.substr(pos, next - pos);
        size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            throw ParseError("malformed " + ctx + " entry '" + tok + "'");
        }
        if (used != tok.size()) {
            throw ParseError("malformed " + ctx + " entry '" + tok + "'");
        }
        out.push_back(v);
        pos = next + 1;
    }
    return out;
}

} // namespace

Pattern parse_pattern(const std::string& text) {
    std::string body = text;
    std::string dsuffix;
    if (auto semi = text.find(';'); semi != std::string::npos) {
        body = text.substr(0, semi);
        dsuffix = text.substr(semi + 1);
    }
    if (body.empty()) {
        throw ParseError("empty pattern text");
    }
    bool commas = body.find(',') != std::string::npos;
    std::vector<int> values;
    std::vector<int> adjC;
    int block_start = 0; // 1-indexed start of the open block, 0 when closed
    size_t i = 0;
    while (i < body.size()) {
        char ch = body[i];
        if (ch == ',') {
            ++i;
            continue;
        }
        if (ch == '[') {
            if (block_start != 0) {
                throw ParseError("nested '[' in pattern text");
            }
            block_start = (int)values.size() + 1;
            ++i;
            continue;
        }
        if (ch == ']') {
            if (block_start == 0) {
                throw ParseError("unmatched ']' in pattern text");
            }
            int block_end = (int)values.size();
            if (block_end - block_start < 1) {
                throw ParseError("bracket block needs at least two entries");
            }
            for (int p = block_start; p < block_end; ++p) {
                adjC.push_back(p);
            }
            block_start = 0;
            ++i;
            continue;
        }
        if (std::isdigit((unsigned char)ch)) {
            if (commas) {
                size_t j = i;
                while (j < body.size() && std::isdigit((unsigned char)body[j])) {
                    ++j;
                }
                std::string tok = body.substr(i, j - i);
                try {
                    values.push_back(std::stoi(tok));
                } catch (const std::exception&) {
                    throw ParseError("entry '" + tok + "' out of range");
                }
                i = j;
            } else {
                values.push_back(ch - '0');
                ++i;
            }
            continue;
        }
        throw ParseError(std::string("unexpected character '") + ch +
                         "' in pattern text");
    }
    if (block_start != 0) {
        throw ParseError("unterminated '[' in pattern text");
    }

    std::vector<int> adjD;
    if (!dsuffix.empty()) {
        std::string s = dsuffix;
        s.erase(std::remove_if(s.begin(), s.end(),
                               [](unsigned char c) { return std::isspace(c); }),
                s.end());
        if (s.size() < 2 || (s[0] != 'D' && s[0] != 'd') || s[1] != '=') {
            throw ParseError("expected ';D=...' suffix");
        }
        s = s.substr(2);
        if (!s.empty() && s.front() == '{') {
            if (s.back() != '}') {
                throw ParseError("unterminated '{' in D suffix");
            }
            s = s.substr(1, s.size() - 2);
        }
        adjD = parse_int_list(s, "D");
    }

    try {
        return Pattern(Permutation(std::move(values)), adjC, adjD);
    } catch (const DomainError& e) {
        throw ParseError(std::string(e.what()) + " in pattern '" + text + "'");
    }
}

Permutation reverse_complement(const Permutation& p) {
    int n = p.size();
    std::vector<int> v(n);
    for (int i = 1; i <= n; ++i) {
        v[n - i] = n + 1 - p.at(i);
    }
    return Permutation(std::move(v));
}

namespace {

// Shared state for the pruned occurrence search. Values are placed in
// increasing rank order; order-isomorphism and adjacency constraints are
// checked as soon as both endpoints are available.
struct OccurrenceSearch {
    const Pattern& pat;
    const Permutation& sigma;
    const std::function<void(const std::vector<int>&, const std::vector<int>&)>& fn;
    int n, k;
    std::vector<int> pos;       // pos[v-1] = host position of value v
    std::vector<int> pat_pos;   // pat_pos[v-1] = position of value v in P
    // position-adjacency constraints indexed by the larger value rank they
    // involve, so each fires exactly once during the search
    std::vector<std::vector<std::pair<int, int>>> c_checks; // rank -> (left, right)
    std::vector<int> t, w;

    OccurrenceSearch(const Pattern& pat_, const Permutation& sigma_,
                     const std::function<void(const std::vector<int>&,
                                              const std::vector<int>&)>& fn_)
        : pat(pat_), sigma(sigma_), fn(fn_), n(sigma_.size()), k(pat_.length()),
          pos(n), pat_pos(k), c_checks(k + 1), t(k), w(k) {
        for (int i = 1; i <= n; ++i) {
            pos[sigma.at(i) - 1] = i;
        }
        auto inv = pat.perm().inverse();
        for (int v = 1; v <= k; ++v) {
            pat_pos[v - 1] = inv.position_of(v);
        }
        for (int i = 1; i < k; ++i) {
            if (pat.has_position_adjacency(i)) {
                int a = pat.perm().at(i);     // value rank whose position comes first
                int b = pat.perm().at(i + 1); // must sit immediately to its right
                c_checks[std::max(a, b)].push_back({a, b});
            }
        }
    }

    void run() {
        if (k > n) {
            return;
        }
        place(1, 0);
    }

    void place(int rank, int prev_value) {
        if (rank > k) {
            fn(t, w);
            return;
        }
        int lo, hi;
        if (rank > 1 && pat.has_value_adjacency(rank - 1)) {
            lo = hi = prev_value + 1; // forced by value adjacency
        } else {
            lo = prev_value + 1;
            hi = n - (k - rank);
        }
        for (int v = lo; v <= hi && v <= n; ++v) {
            int p = pos[v - 1];
            bool ok = true;
            for (int j = 1; j < rank; ++j) {
                if ((w[j - 1] < p) != (pat_pos[j - 1] < pat_pos[rank - 1])) {
                    ok = false;
                    break;
                }
            }
            if (!ok) {
                continue;
            }
            t[rank - 1] = v;
            w[rank - 1] = p;
            for (auto [a, b] : c_checks[rank]) {
                if (w[b - 1] != w[a - 1] + 1) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                place(rank + 1, v);
            }
        }
    }
};

// Window scan for fully consecutive patterns (every position adjacency
// present): occurrences are exactly the k-windows order-isomorphic to P
// that satisfy the value adjacencies.
std::uint64_t count_consecutive(const Pattern& pat, const Permutation& sigma) {
    int n = sigma.size();
    int k = pat.length();
    if (k > n) {
        return 0;
    }
    auto inv = pat.perm().inverse();
    std::uint64_t total = 0;
    for (int s = 1; s + k - 1 <= n; ++s) {
        bool ok = true;
        for (int i = 1; i < k && ok; ++i) {
            for (int j = i + 1; j <= k; ++j) {
                if ((sigma.at(s + i - 1) < sigma.at(s + j - 1)) !=
                    (pat.perm().at(i) < pat.perm().at(j))) {
                    ok = false;
                    break;
                }
            }
        }
        if (!ok) {
            continue;
        }
        for (int i = 1; i < k; ++i) {
            if (pat.has_value_adjacency(i) &&
                sigma.at(s + inv.position_of(i + 1) - 1) !=
                    sigma.at(s + inv.position_of(i) - 1) + 1) {
                ok = false;
                break;
            }
        }
        if (ok) {
            ++total;
        }
    }
    return total;
}

} // namespace

void for_each_occurrence(
    const Pattern& pat, const Permutation& sigma,
    const std::function<void(const std::vector<int>&, const std::vector<int>&)>& fn) {
    OccurrenceSearch search(pat, sigma, fn);
    search.run();
}

bool is_occurrence(const Pattern& pat, const Permutation& sigma,
                   const std::vector<int>& values) {
    int k = pat.length();
    int n = sigma.size();
    if ((int)values.size() != k) {
        throw DomainError("value tuple length does not match pattern length");
    }
    for (int i = 0; i < k; ++i) {
        if (values[i] < 1 || values[i] > n) {
            throw DomainError("value tuple leaves [n]");
        }
        if (i > 0 && values[i] <= values[i - 1]) {
            throw DomainError("value tuple not strictly increasing");
        }
    }
    auto pos = sigma.inverse();
    // order isomorphism: value ranks in position order must read as P
    std::vector<std::pair<int, int>> by_pos; // (host position, rank)
    for (int i = 1; i <= k; ++i) {
        by_pos.push_back({pos.position_of(values[i - 1]), i});
    }
    std::sort(by_pos.begin(), by_pos.end());
    for (int i = 1; i <= k; ++i) {
        if (by_pos[i - 1].second != pat.perm().at(i)) {
            return false;
        }
    }
    for (int i = 1; i < k; ++i) {
        if (pat.has_position_adjacency(i)) {
            int a = pat.perm().at(i), b = pat.perm().at(i + 1);
            if (pos.position_of(values[b - 1]) != pos.position_of(values[a - 1]) + 1) {
                return false;
            }
        }
        if (pat.has_value_adjacency(i) && values[i] != values[i - 1] + 1) {
            return false;
        }
    }
    return true;
}

std::vector<Occurrence> occurrences(const Pattern& pat, const Permutation& sigma) {
    std::vector<Occurrence> out;
    for_each_occurrence(pat, sigma,
                        [&](const std::vector<int>& t, const std::vector<int>& w) {
                            out.push_back({t, w});
                        });
    return out;
}

Integer count(const Pattern& pat, const Permutation& sigma) {
    int k = pat.length();
    int n = sigma.size();
    if (k > n) {
        return 0;
    }
    if (k == 2 && pat.has_position_adjacency(1)) {
        // descent/adjacency family: single linear scan
        bool descending = pat.perm().at(1) == 2;
        bool need_consecutive = pat.has_value_adjacency(1);
        std::uint64_t total = 0;
        for (int i = 1; i < n; ++i) {
            int a = sigma.at(i), b = sigma.at(i + 1);
            if (descending ? a > b : a < b) {
                if (!need_consecutive || (descending ? a == b + 1 : b == a + 1)) {
                    ++total;
                }
            }
        }
        return Integer((unsigned long)total);
    }
    if (pat.position_adjacency_count() == k - 1) {
        return Integer((unsigned long)count_consecutive(pat, sigma));
    }
    std::uint64_t total = 0;
    for_each_occurrence(pat, sigma,
                        [&](const std::vector<int>&, const std::vector<int>&) {
                            ++total;
                        });
    return Integer((unsigned long)total);
}

} // namespace permoment
