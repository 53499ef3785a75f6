#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "permoment/errors.hpp"

namespace permoment {

/// Default ceiling for exhaustive runs over S_n (11! hosts, ~4e7).
inline constexpr int kDefaultMaxBruteN = 11;

class Permutation;

/// Positions of each value: position_of(v) is the 1-indexed position of
/// value v in the owning permutation.
class PositionMap {
public:
    PositionMap() = default;
    explicit PositionMap(std::vector<int> positions) : pos_(std::move(positions)) {}

    int size() const { return (int)pos_.size(); }
    int position_of(int value) const { return pos_[value - 1]; }
    const std::vector<int>& positions() const { return pos_; }

private:
    std::vector<int> pos_; // pos_[v-1] = position of value v
};

/// Permutation of [n] in one-line notation. Interfaces are 1-indexed in
/// both positions and values; only the storage is 0-based.
class Permutation {
public:
    Permutation() = default;
    /// Validates that the entries are a bijection [n] -> [n].
    explicit Permutation(std::vector<int> one_line);

    static Permutation identity(int n);

    int size() const { return (int)v_.size(); }
    /// sigma(pos), 1-indexed.
    int at(int pos) const { return v_[pos - 1]; }
    const std::vector<int>& one_line() const { return v_; }

    PositionMap inverse() const;

    /// Comma-free digits for n <= 9 ("31524"), comma-separated for n >= 10.
    std::string to_text() const;
    static Permutation from_text(const std::string& text);

    auto operator<=>(const Permutation&) const = default;

private:
    struct unchecked_t {};
    Permutation(unchecked_t, std::vector<int> v) : v_(std::move(v)) {}

    std::vector<int> v_;

    friend void enumerate_sn(int, std::uint64_t, std::uint64_t,
                             const std::function<void(const Permutation&)>&, int);
    friend Permutation unrank_permutation(int, std::uint64_t);
};

/// The unique permutation order-isomorphic to a sequence of distinct
/// numbers. Throws DomainError on duplicates.
Permutation reduce(const std::vector<int>& seq);

/// n! as uint64; requires n <= 20.
std::uint64_t factorial_u64(int n);

/// Lexicographic rank of a permutation, 0-based.
std::uint64_t rank_permutation(const Permutation& p);

/// Inverse of rank_permutation. Throws DomainError when index >= n!.
Permutation unrank_permutation(int n, std::uint64_t index);

/// Visits permutations of S_n with lexicographic ranks in [begin, end),
/// in rank order. The Permutation handed to the callback is reused between
/// calls; copy it if it must outlive the visit. Disjoint chunks partition
/// S_n, so chunked runs can be reduced associatively in chunk order.
/// Throws CapExceededError when n > max_n.
void enumerate_sn(int n, std::uint64_t begin, std::uint64_t end,
                  const std::function<void(const Permutation&)>& fn,
                  int max_n = kDefaultMaxBruteN);

/// Full-range convenience overload.
void enumerate_sn(int n, const std::function<void(const Permutation&)>& fn,
                  int max_n = kDefaultMaxBruteN);

} // namespace permoment
