#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace feec
{

/// Largest ambient dimension supported by the packed index types.
inline constexpr int kMaxDim = 7;

/// Strictly increasing sequence (s_1 < ... < s_k) with entries in 1..n,
/// i.e. an element of Sigma(k, n). Indices are 1-based.
class IncreasingSequence
{
public:
  IncreasingSequence() = default;

  /// Throws std::invalid_argument if the entries are not strictly increasing
  /// inside [1, n].
  IncreasingSequence(std::vector<int> entries, int n);

  int n() const { return n_; }
  int size() const { return size_; }
  bool empty() const { return size_ == 0; }
  int operator[](int i) const { return entries_[i]; }
  std::vector<int> entries() const;

  bool contains(int index) const;

  /// Bit i-1 set for every entry i.
  std::uint32_t mask() const;

  /// Sequence with entry `index` removed; `index` must be present.
  IncreasingSequence without(int index) const;

  /// Position (0-based) of `index` in the sequence, or -1.
  int position(int index) const;

  std::string to_string() const;

  friend auto operator<=>(const IncreasingSequence& a,
                          const IncreasingSequence& b)
  {
    if (auto c = a.n_ <=> b.n_; c != 0)
      return c;
    for (int i = 0; i < a.size_ && i < b.size_; ++i)
      if (auto c = a.entries_[i] <=> b.entries_[i]; c != 0)
        return c;
    return a.size_ <=> b.size_;
  }
  friend bool operator==(const IncreasingSequence& a,
                         const IncreasingSequence& b)
      = default;

  static IncreasingSequence from_mask(std::uint32_t mask, int n);

private:
  std::array<std::int8_t, kMaxDim> entries_{};
  std::int8_t size_ = 0;
  std::int8_t n_ = 0;
};

/// Exponent vector of a monomial in at most kMaxDim variables. Exponents are
/// packed 8 bits each with variable 1 in the most significant byte, so the
/// integer order is the lexicographic order on exponent vectors.
class MultiIndex
{
public:
  MultiIndex() = default;
  explicit MultiIndex(const std::vector<int>& exponents);

  /// Exponent of variable i (1-based).
  int operator[](int i) const
  {
    return static_cast<int>((packed_ >> shift(i)) & 0xFFu);
  }
  MultiIndex with(int i, int exponent) const;
  int degree() const;
  std::vector<int> exponents(int n) const;
  std::uint64_t packed() const { return packed_; }

  /// Componentwise sum; throws std::overflow_error past exponent 255.
  friend MultiIndex operator+(MultiIndex a, MultiIndex b);

  friend auto operator<=>(MultiIndex a, MultiIndex b) = default;

  static MultiIndex from_packed(std::uint64_t p)
  {
    MultiIndex m;
    m.packed_ = p;
    return m;
  }

private:
  static int shift(int i) { return 8 * (kMaxDim - i); }
  std::uint64_t packed_ = 0;
};

MultiIndex operator+(MultiIndex a, MultiIndex b);

/// Binomial coefficient; zero when k < 0 or k > n or n < 0.
std::int64_t binomial(int n, int k);

/// All of Sigma(k, n) in lexicographic order.
/// Throws std::invalid_argument unless 0 <= k <= n <= kMaxDim.
std::vector<IncreasingSequence> enumerate_sigma(int k, int n);

/// Lexicographic rank of sigma inside Sigma(|sigma|, n).
int sigma_rank(const IncreasingSequence& sigma);

/// The complementary increasing sequence in {1..n}.
IncreasingSequence complement(const IncreasingSequence& sigma);

/// Sign of the permutation sorting the concatenation (sigma, tau); 0 when the
/// ranges intersect. dx^sigma ^ dx^tau = merge_sign * dx^{sorted union}.
int merge_sign(const IncreasingSequence& sigma, const IncreasingSequence& tau);

/// Sorted union of two disjoint sequences.
IncreasingSequence merge(const IncreasingSequence& sigma,
                         const IncreasingSequence& tau);

/// All exponent vectors in n variables with total degree exactly `degree`,
/// in lexicographic order.
std::vector<MultiIndex> monomials_of_degree(int n, int degree);

/// All exponent vectors with total degree <= `degree`, grouped by degree.
std::vector<MultiIndex> monomials_up_to(int n, int degree);

} // namespace feec
