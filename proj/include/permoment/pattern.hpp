#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "permoment/numbers.hpp"
#include "permoment/perm.hpp"

namespace permoment {

/// Bivincular pattern: a permutation P of length k plus two subsets of
/// [k-1]. Index i in the position-adjacency set forces the occurrence
/// entries matching P's positions i and i+1 to sit at consecutive host
/// positions; index i in the value-adjacency set forces the i-th and
/// (i+1)-th smallest occurrence values to be consecutive integers.
class Pattern {
public:
    Pattern() = default;
    Pattern(Permutation perm, const std::vector<int>& adj_positions,
            const std::vector<int>& adj_values);

    int length() const { return perm_.size(); }
    const Permutation& perm() const { return perm_; }

    std::vector<int> adjacency_positions() const; // C, sorted
    std::vector<int> adjacency_values() const;    // D, sorted
    bool has_position_adjacency(int i) const { return (cmask_ >> (i - 1)) & 1u; }
    bool has_value_adjacency(int i) const { return (dmask_ >> (i - 1)) & 1u; }
    int position_adjacency_count() const; // c = |C|
    int value_adjacency_count() const;    // d = |D|

    bool is_classical() const { return cmask_ == 0 && dmask_ == 0; }
    bool is_vincular() const { return dmask_ == 0; }

    /// Text form: blocks of position-adjacent entries in square brackets,
    /// value adjacencies as a ";D=..." suffix, e.g. "2[31]4" or "3[12];D=2".
    std::string to_text() const;

    auto operator<=>(const Pattern&) const = default;

private:
    Permutation perm_;
    std::uint32_t cmask_ = 0;
    std::uint32_t dmask_ = 0;
};

/// An occurrence: increasing values t_1 < ... < t_k from the host, plus
/// positions[i] = host position of values[i].
struct Occurrence {
    std::vector<int> values;
    std::vector<int> positions;

    bool operator==(const Occurrence&) const = default;
};

/// Checks Definition-style occurrence conditions for one increasing value
/// tuple. Throws DomainError when the tuple is not increasing, has the
/// wrong length, or leaves [n].
bool is_occurrence(const Pattern& pat, const Permutation& sigma,
                   const std::vector<int>& values);

/// All occurrences, in lexicographic order of the value tuples.
std::vector<Occurrence> occurrences(const Pattern& pat, const Permutation& sigma);

/// Number of occurrences, without materializing them.
Integer count(const Pattern& pat, const Permutation& sigma);

/// Visits every occurrence; the spans are reused between calls.
void for_each_occurrence(
    const Pattern& pat, const Permutation& sigma,
    const std::function<void(const std::vector<int>& values,
                             const std::vector<int>& positions)>& fn);

/// Parses the bracket/suffix grammar; inverse of Pattern::to_text.
Pattern parse_pattern(const std::string& text);
std::string format_pattern(const Pattern& pat);

/// Reverse-complement: reverse positions and complement values. Classical
/// pattern counts are invariant under applying it to pattern and host.
Permutation reverse_complement(const Permutation& p);

} // namespace permoment
