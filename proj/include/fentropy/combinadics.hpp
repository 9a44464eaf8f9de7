#pragma once

#include <cstdint>
#include <vector>

// Lexicographic indexing of k-element subsets of {0, ..., d-1}. Subsets are
// strictly increasing integer vectors; their rank is the position in the
// lexicographic enumeration of all k-subsets, so ranks index the wedge basis
// of the N-fermion Hilbert space.
namespace fentropy {

using Subset = std::vector<int>;

// Exact binomial coefficient. Returns 0 when k > n and throws
// std::overflow_error when the value does not fit in 64 bits.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

// Rank of a strictly increasing subset of {0, ..., d-1} in lexicographic
// order. Throws std::invalid_argument on out-of-range or non-increasing
// input.
std::uint64_t subset_rank(const Subset& subset, int d);

// Inverse of subset_rank: the r-th k-subset of {0, ..., d-1}. Throws
// std::invalid_argument when r >= binomial(d, k).
Subset subset_unrank(std::uint64_t r, int d, int k);

struct MergedSubset {
  Subset subset;  // sorted union of the two inputs
  int sign;       // +1 or -1, parity of the interleaving permutation
};

// Merges two disjoint increasing subsets and reports the sign of the
// permutation that sorts the concatenation (a, c), i.e. the parity of the
// number of pairs (x, y) with x in a, y in c, x > y. Throws
// std::invalid_argument when the inputs overlap or are not increasing.
MergedSubset merge_sign(const Subset& a, const Subset& c);

}  // namespace fentropy
