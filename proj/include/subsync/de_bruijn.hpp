#pragma once

#include <subsync/automaton.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace subsync {

/// Binary cyclic word of length 2^k containing every k-bit word exactly
/// once as a cyclic factor. `bits` holds '0' / '1'.
struct DeBruijnSeq {
  unsigned k = 0;
  std::string bits;

  std::size_t length() const { return bits.size(); }
  bool operator==(const DeBruijnSeq&) const = default;
};

/// True iff each k-bit word occurs exactly once as a cyclic factor.
inline bool verify_de_bruijn(const std::string& bits, unsigned k) {
  if (k == 0 || k > 30) throw Error("de Bruijn order must be in 1..30");
  const std::size_t m = std::size_t{1} << k;
  if (bits.size() != m)
    throw Error("de Bruijn sequence of order " + std::to_string(k) + " must have length " +
                std::to_string(m) + ", got " + std::to_string(bits.size()));
  for (char c : bits)
    if (c != '0' && c != '1') return false;
  std::vector<bool> seen(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t value = 0;
    for (unsigned j = 0; j < k; ++j) value = value * 2 + (bits[(i + j) % m] == '1');
    if (seen[value]) return false;
    seen[value] = true;
  }
  return true;
}

namespace detail {

// Lyndon-word concatenation (Fredricksen–Kessler–Maiorana).
inline void fkm(unsigned t, unsigned p, unsigned k, std::vector<int>& a, std::string& out) {
  if (t > k) {
    if (k % p == 0)
      for (unsigned j = 1; j <= p; ++j) out += static_cast<char>('0' + a[j]);
    return;
  }
  a[t] = a[t - p];
  fkm(t + 1, p, k, a, out);
  for (int j = a[t - p] + 1; j < 2; ++j) {
    a[t] = j;
    fkm(t + 1, t, k, a, out);
  }
}

}  // namespace detail

/// The lexicographically least binary de Bruijn sequence of order k.
inline DeBruijnSeq de_bruijn(unsigned k) {
  if (k == 0) throw Error("de Bruijn order must be at least 1");
  if (k > 24) throw Error("de Bruijn order too large");
  std::vector<int> a(k + 1, 0);
  DeBruijnSeq seq{k, {}};
  detail::fkm(1, 1, k, a, seq.bits);
  return seq;
}

/// pi[i] = value of the k-bit cyclic factor starting at position i (most
/// significant bit first); a permutation of 0..2^k-1 for valid sequences.
inline std::vector<std::uint32_t> pi_permutation(const DeBruijnSeq& xi) {
  const std::size_t m = xi.bits.size();
  std::vector<std::uint32_t> pi(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::uint32_t value = 0;
    for (unsigned j = 0; j < xi.k; ++j) value = value * 2 + (xi.bits[(i + j) % m] == '1');
    pi[i] = value;
  }
  return pi;
}

}  // namespace subsync
