#include "permoment/perm.hpp"

#include <algorithm>
#include <map>

namespace permoment {

Permutation::Permutation(std::vector<int> one_line) : v_(std::move(one_line)) {
    int n = (int)v_.size();
    std::vector<bool> seen(n, false);
    for (int x : v_) {
        if (x < 1 || x > n || seen[x - 1]) {
            throw DomainError("not a permutation of [n]");
        }
        seen[x - 1] = true;
    }
}

Permutation Permutation::identity(int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) {
        v[i] = i + 1;
    }
    return Permutation(unchecked_t{}, std::move(v));
}

PositionMap Permutation::inverse() const {
    std::vector<int> pos(v_.size());
    for (int i = 0; i < (int)v_.size(); ++i) {
        pos[v_[i] - 1] = i + 1;
    }
    return PositionMap(std::move(pos));
}

std::string Permutation::to_text() const {
    std::string out;
    bool commas = size() >= 10;
    for (int i = 0; i < size(); ++i) {
        if (commas && i > 0) {
            out += ',';
        }
        out += std::to_string(v_[i]);
    }
    return out;
}

Permutation Permutation::from_text(const std::string& text) {
    std::vector<int> vals;
    if (text.find(',') != std::string::npos) {
        size_t pos = 0;
        while (pos < text.size()) {
            size_t next = text.find(',', pos);
            if (next == std::string::npos) {
                next = text.size();
            }
            std::string tok = text.substr(pos, next - pos);
            try {
                vals.push_back(std::stoi(tok));
            } catch (const std::exception&) {
                throw ParseError("malformed permutation text: '" + text + "'");
            }
            pos = next + 1;
        }
    } else {
        for (char ch : text) {
            if (ch < '1' || ch > '9') {
                throw ParseError("malformed permutation text: '" + text + "'");
            }
            vals.push_back(ch - '0');
        }
    }
    try {
        return Permutation(std::move(vals));
    } catch (const DomainError& e) {
        throw ParseError(std::string(e.what()) + ": '" + text + "'");
    }
}

Permutation reduce(const std::vector<int>& seq) {
    std::vector<int> sorted = seq;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw DomainError("reduce requires distinct entries");
    }
    std::vector<int> out(seq.size());
    for (size_t i = 0; i < seq.size(); ++i) {
        out[i] = (int)(std::lower_bound(sorted.begin(), sorted.end(), seq[i]) -
                       sorted.begin()) + 1;
    }
    return Permutation(std::move(out));
}

std::uint64_t factorial_u64(int n) {
    if (n < 0 || n > 20) {
        throw DomainError("factorial_u64 supports 0 <= n <= 20");
    }
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) {
        f *= (std::uint64_t)i;
    }
    return f;
}

std::uint64_t rank_permutation(const Permutation& p) {
    int n = p.size();
    std::uint64_t rank = 0;
    for (int i = 1; i <= n; ++i) {
        int smaller = 0;
        for (int j = i + 1; j <= n; ++j) {
            if (p.at(j) < p.at(i)) {
                ++smaller;
            }
        }
        rank += (std::uint64_t)smaller * factorial_u64(n - i);
    }
    return rank;
}

Permutation unrank_permutation(int n, std::uint64_t index) {
    if (n < 0 || index >= factorial_u64(n)) {
        throw DomainError("unrank index out of range");
    }
    std::vector<int> avail(n);
    for (int i = 0; i < n; ++i) {
        avail[i] = i + 1;
    }
    std::vector<int> out;
    out.reserve(n);
    for (int i = n - 1; i >= 0; --i) {
        std::uint64_t f = factorial_u64(i);
        int d = (int)(index / f);
        index %= f;
        out.push_back(avail[d]);
        avail.erase(avail.begin() + d);
    }
    return Permutation(Permutation::unchecked_t{}, std::move(out));
}

void enumerate_sn(int n, std::uint64_t begin, std::uint64_t end,
                  const std::function<void(const Permutation&)>& fn, int max_n) {
    if (n < 0 || n > max_n) {
        throw CapExceededError("enumeration of S_" + std::to_string(n) +
                               " exceeds cap " + std::to_string(max_n));
    }
    std::uint64_t total = factorial_u64(n);
    if (begin > end || end > total) {
        throw DomainError("chunk out of range");
    }
    if (begin == end) {
        return;
    }
    Permutation p = unrank_permutation(n, begin);
    for (std::uint64_t idx = begin; idx != end; ++idx) {
        fn(p);
        std::next_permutation(p.v_.begin(), p.v_.end());
    }
}

void enumerate_sn(int n, const std::function<void(const Permutation&)>& fn,
                  int max_n) {
    enumerate_sn(n, 0, factorial_u64(n), fn, max_n);
}

} // namespace permoment
