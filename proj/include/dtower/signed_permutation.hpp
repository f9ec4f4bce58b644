#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace dtower {

/// A signed permutation of n coordinates. Acting on a vector x it sends the
/// entry at position i to position perm(i) and multiplies it by sign(i).
/// Composition g * h applies h first.
class SignedPermutation {
 public:
  SignedPermutation() = default;
  SignedPermutation(std::vector<int> perm, std::vector<int> signs);

  static SignedPermutation identity(std::size_t n);
  /// Swaps coordinates i and j (0-based).
  static SignedPermutation transposition(std::size_t n, std::size_t i, std::size_t j);
  /// Negates every listed coordinate.
  static SignedPermutation sign_flip(std::size_t n, const std::vector<std::size_t>& coords);

  std::size_t size() const { return perm_.size(); }
  int image(std::size_t i) const { return perm_[i]; }
  int sign(std::size_t i) const { return signs_[i]; }
  /// Number of -1 entries mod 2.
  int parity() const;
  bool is_identity() const;

  template <class Vec>
  Vec apply(const Vec& x) const {
    Vec out = x;
    for (std::size_t i = 0; i < perm_.size(); ++i) out[static_cast<std::size_t>(perm_[i])] = signs_[i] * x[i];
    return out;
  }

  SignedPermutation inverse() const;

  friend SignedPermutation operator*(const SignedPermutation& g, const SignedPermutation& h);
  friend bool operator==(const SignedPermutation&, const SignedPermutation&) = default;
  friend auto operator<=>(const SignedPermutation&, const SignedPermutation&) = default;

  std::string to_string() const;

 private:
  std::vector<int> perm_;
  std::vector<int> signs_;
};

}  // namespace dtower
