#include "fentropy/combinadics.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace fentropy {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  // Running value after step i is binomial(n, i + 1) exactly; the division is
  // exact at every step. The widened intermediate cannot overflow before the
  // 64-bit check below fires.
  unsigned __int128 result = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    result = result * (n - i) / (i + 1);
    if (result > std::numeric_limits<std::uint64_t>::max()) {
      throw std::overflow_error("binomial(" + std::to_string(n) + ", " +
                                std::to_string(k) + ") exceeds 64 bits");
    }
  }
  return static_cast<std::uint64_t>(result);
}

namespace {

void require_increasing_in_range(const Subset& s, int d, const char* what) {
  int prev = -1;
  for (int x : s) {
    if (x <= prev)
      throw std::invalid_argument(std::string(what) +
                                  ": elements must be strictly increasing");
    if (x < 0 || x >= d)
      throw std::invalid_argument(std::string(what) + ": element " +
                                  std::to_string(x) + " outside [0, " +
                                  std::to_string(d) + ")");
    prev = x;
  }
}

}  // namespace

std::uint64_t subset_rank(const Subset& subset, int d) {
  if (d < 0) throw std::invalid_argument("subset_rank: negative d");
  require_increasing_in_range(subset, d, "subset_rank");
  const int k = static_cast<int>(subset.size());
  // Count subsets that precede this one: for each position i, the ones that
  // agree up to i and take a smaller element there.
  std::uint64_t rank = 0;
  int prev = -1;
  for (int i = 0; i < k; ++i) {
    for (int c = prev + 1; c < subset[i]; ++c) {
      rank += binomial(static_cast<std::uint64_t>(d - 1 - c),
                       static_cast<std::uint64_t>(k - 1 - i));
    }
    prev = subset[i];
  }
  return rank;
}

Subset subset_unrank(std::uint64_t r, int d, int k) {
  if (d < 0 || k < 0)
    throw std::invalid_argument("subset_unrank: negative d or k");
  const std::uint64_t total =
      binomial(static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(k));
  if (r >= total)
    throw std::invalid_argument("subset_unrank: rank " + std::to_string(r) +
                                " out of range for C(" + std::to_string(d) +
                                ", " + std::to_string(k) + ")");
  Subset subset;
  subset.reserve(static_cast<std::size_t>(k));
  int c = 0;
  for (int i = 0; i < k; ++i) {
    // Greedy: take the smallest admissible element whose block of completions
    // contains r.
    for (;; ++c) {
      const std::uint64_t block =
          binomial(static_cast<std::uint64_t>(d - 1 - c),
                   static_cast<std::uint64_t>(k - 1 - i));
      if (r < block) break;
      r -= block;
    }
    subset.push_back(c);
    ++c;
  }
  return subset;
}

MergedSubset merge_sign(const Subset& a, const Subset& c) {
  const int bound = std::numeric_limits<int>::max();
  require_increasing_in_range(a, bound, "merge_sign");
  require_increasing_in_range(c, bound, "merge_sign");
  MergedSubset out;
  out.subset.reserve(a.size() + c.size());
  // Standard merge; every element of c emitted while elements of a remain
  // pending contributes that many transpositions.
  std::size_t i = 0, j = 0;
  std::uint64_t inversions = 0;
  while (i < a.size() && j < c.size()) {
    if (a[i] == c[j])
      throw std::invalid_argument("merge_sign: subsets are not disjoint");
    if (a[i] < c[j]) {
      out.subset.push_back(a[i++]);
    } else {
      inversions += a.size() - i;
      out.subset.push_back(c[j++]);
    }
  }
  while (i < a.size()) out.subset.push_back(a[i++]);
  while (j < c.size()) out.subset.push_back(c[j++]);
  out.sign = (inversions % 2 == 0) ? 1 : -1;
  return out;
}

}  // namespace fentropy
