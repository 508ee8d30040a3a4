#pragma once

#include "fqcover/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace fqcover {

/// Counts of friable monic polynomials over F_q: psi(v, mu) is the number of
/// monic polynomials of degree v whose irreducible factors all have degree <= mu.
class FriableTable {
public:
    FriableTable(std::uint64_t q, std::size_t max_degree, std::size_t max_smoothness);

    std::uint64_t q() const noexcept { return q_; }
    std::size_t max_degree() const noexcept { return max_degree_; }
    std::size_t max_smoothness() const noexcept { return max_smoothness_; }

    /// 0 <= v <= max_degree, 1 <= mu <= max_smoothness.
    const BigInt& psi(std::size_t v, std::size_t mu) const;
    /// pi_q(d) for 1 <= d <= max_smoothness.
    const BigInt& irreducibles(std::size_t d) const;

    /// Header "degree,m=1,...,m=M", then one row per degree with exact integers.
    std::string to_csv() const;

private:
    std::uint64_t q_;
    std::size_t max_degree_;
    std::size_t max_smoothness_;
    std::vector<BigInt> pi_;                 // index d, pi_[0] unused
    std::vector<std::vector<BigInt>> psi_;   // psi_[mu][v], mu >= 1
};

/// Number of monic irreducibles of degree d >= 1: (1/d) sum_{k | d} mu(k) q^{d/k}.
BigInt count_irreducibles(std::uint64_t q, std::size_t d);

BigInt psi(std::uint64_t q, std::size_t n, std::size_t m);

/// prod_{d <= m} (1 - q^{-d})^{-pi_q(d)} = sum_{v >= 0} psi(v, m) q^{-v}.
Rational friable_euler_product(std::uint64_t q, std::size_t m);

/// sum over monic d with deg d >= t and all prime factors of degree <= m of q^{-deg d}.
Rational friable_tail(std::uint64_t q, std::size_t t, std::size_t m);

/// Same sum restricted to d whose largest prime factor has degree exactly m.
/// Constants are never counted here.
Rational friable_tail_exact_top(std::uint64_t q, std::size_t t, std::size_t m);

/// sum_{d <= N} pi_q(d) / q^d, i.e. the sum of 1/|p| over primes with |p| <= q^N.
Rational mertens_sum(std::uint64_t q, std::size_t max_degree);

/// psi(n, m) / (q^n e^{-n/(2m)}) for n >= m >= 3. A diagnostic only.
double warlimont_ratio(std::uint64_t q, std::size_t n, std::size_t m);

} // namespace fqcover
