#include "dtower/signed_permutation.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace dtower {

SignedPermutation::SignedPermutation(std::vector<int> perm, std::vector<int> signs)
    : perm_(std::move(perm)), signs_(std::move(signs)) {
  if (perm_.size() != signs_.size()) throw std::invalid_argument("signed permutation: size mismatch");
  std::vector<bool> seen(perm_.size(), false);
  for (int p : perm_) {
    if (p < 0 || static_cast<std::size_t>(p) >= perm_.size() || seen[static_cast<std::size_t>(p)])
      throw std::invalid_argument("signed permutation: not a permutation");
    seen[static_cast<std::size_t>(p)] = true;
  }
  for (int s : signs_)
    if (s != 1 && s != -1) throw std::invalid_argument("signed permutation: signs must be +1 or -1");
}

SignedPermutation SignedPermutation::identity(std::size_t n) {
  std::vector<int> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<int>(i);
  return SignedPermutation(std::move(perm), std::vector<int>(n, 1));
}

SignedPermutation SignedPermutation::transposition(std::size_t n, std::size_t i, std::size_t j) {
  if (i >= n || j >= n) throw std::out_of_range("transposition index out of range");
  auto g = identity(n);
  std::swap(g.perm_[i], g.perm_[j]);
  return g;
}

SignedPermutation SignedPermutation::sign_flip(std::size_t n, const std::vector<std::size_t>& coords) {
  auto g = identity(n);
  for (auto c : coords) {
    if (c >= n) throw std::out_of_range("sign flip index out of range");
    g.signs_[c] = -g.signs_[c];
  }
  return g;
}

int SignedPermutation::parity() const {
  return static_cast<int>(std::count(signs_.begin(), signs_.end(), -1) % 2);
}

bool SignedPermutation::is_identity() const { return *this == identity(size()); }

SignedPermutation SignedPermutation::inverse() const {
  std::vector<int> perm(size()), signs(size());
  for (std::size_t i = 0; i < size(); ++i) {
    perm[static_cast<std::size_t>(perm_[i])] = static_cast<int>(i);
    signs[static_cast<std::size_t>(perm_[i])] = signs_[i];
  }
  return SignedPermutation(std::move(perm), std::move(signs));
}

SignedPermutation operator*(const SignedPermutation& g, const SignedPermutation& h) {
  if (g.size() != h.size()) throw std::invalid_argument("signed permutation: size mismatch in composition");
  std::vector<int> perm(h.size()), signs(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    const auto mid = static_cast<std::size_t>(h.perm_[i]);
    perm[i] = g.perm_[mid];
    signs[i] = g.signs_[mid] * h.signs_[i];
  }
  return SignedPermutation(std::move(perm), std::move(signs));
}

std::string SignedPermutation::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < size(); ++i) {
    if (i) os << ' ';
    os << (signs_[i] < 0 ? "-" : "+") << (perm_[i] + 1);
  }
  os << ']';
  return os.str();
}

}  // namespace dtower
