#pragma once

#include "fqcover/algebra.hpp"
#include "fqcover/covering.hpp"
#include "fqcover/system_io.hpp"

#include <random>
#include <string>
#include <vector>

namespace testing {

using namespace fqcover;

inline Poly P(const std::string& text, const FieldPtr& field) { return parse_poly(text, field); }

inline CoveringSystem S(const std::string& text) { return parse_system(text); }

inline Poly random_poly(const FieldPtr& field, std::size_t max_degree, std::mt19937_64& rng) {
    std::vector<FieldElem> coeffs(rng() % (max_degree + 2));
    for (auto& c : coeffs) c = field->element(static_cast<std::uint32_t>(rng() % field->order()));
    return Poly(field, std::move(coeffs));
}

inline Poly random_monic(const FieldPtr& field, std::size_t min_degree, std::size_t max_degree,
                         std::mt19937_64& rng) {
    const std::size_t n = min_degree + rng() % (max_degree - min_degree + 1);
    std::vector<FieldElem> coeffs(n + 1);
    for (std::size_t i = 0; i < n; ++i) coeffs[i] = field->element(static_cast<std::uint32_t>(rng() % field->order()));
    coeffs[n] = field->one();
    return Poly(field, std::move(coeffs));
}

/// All polynomials of degree < n (every residue mod a degree-n modulus), by index.
inline std::vector<Poly> all_below(const FieldPtr& field, std::size_t n) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < n; ++i) count *= field->order();
    std::vector<Poly> out;
    for (std::uint64_t k = 0; k < count; ++k) out.push_back(Poly::from_index(field, k));
    return out;
}

/// Irreducibility by exhaustive search for a monic divisor of degree 1..n/2.
inline bool naive_irreducible(const Poly& f) {
    const std::size_t n = f.deg();
    for (std::size_t d = 1; 2 * d <= n; ++d)
        for (const Poly& low : all_below(f.field_ptr(), d)) {
            Poly g = low + Poly::monomial(f.field_ptr(), f.field().one(), d);
            if ((f % g).is_zero()) return false;
        }
    return n >= 1;
}

/// Sparse random system over the field: moduli are random monic divisors of a
/// random bound with q^deg <= 2^max_bits, offsets uniform.
inline CoveringSystem random_small_system(const FieldPtr& field, std::size_t max_degree, std::mt19937_64& rng) {
    std::vector<ArithmeticProgression> aps;
    const std::size_t n = 1 + rng() % 6;
    Poly q = Poly::one(field);
    for (std::size_t i = 0; i < n; ++i) {
        Poly d = random_monic(field, 1, 3, rng);
        if (lcm(q, d).deg() > max_degree) continue;
        q = lcm(q, d);
        aps.emplace_back(random_poly(field, d.deg() - 1, rng), d);
    }
    if (aps.empty()) aps.emplace_back(Poly(field), Poly::x(field));
    return CoveringSystem(field, std::move(aps));
}

/// Largest prime-factor degree of every monic polynomial of degree <= n, by an
/// Eratosthenes-style sieve: lpd[d][k] for the monic x^d + from_index(k).
struct Sieve {
    std::uint64_t q;
    std::vector<std::vector<std::uint8_t>> lpd;
    std::vector<std::uint64_t> primes_of_degree;

    Sieve(std::uint64_t q, std::size_t n) : q(q), primes_of_degree(n + 1, 0) {
        auto f = Field::from_order(q);
        std::vector<std::uint64_t> count(n + 1, 1);
        for (std::size_t d = 1; d <= n; ++d) count[d] = count[d - 1] * q;
        for (std::size_t d = 0; d <= n; ++d) lpd.emplace_back(count[d], 0);
        auto monic = [&](std::size_t d, std::uint64_t k) {
            return Poly::from_index(f, k) + Poly::monomial(f, f->one(), d);
        };
        for (std::size_t d = 1; d <= n; ++d)
            for (std::uint64_t k = 0; k < count[d]; ++k) {
                if (lpd[d][k] != 0) continue;
                ++primes_of_degree[d];
                const Poly p = monic(d, k);
                for (std::size_t e = 0; d + e <= n; ++e)
                    for (std::uint64_t g = 0; g < count[e]; ++g) {
                        const Poly prod = p * monic(e, g);
                        const std::uint64_t low = (prod - Poly::monomial(f, f->one(), d + e)).index();
                        lpd[d + e][low] = static_cast<std::uint8_t>(d);
                    }
            }
    }

    std::uint64_t smooth(std::size_t n, std::size_t m) const {
        std::uint64_t c = 0;
        for (auto v : lpd[n]) c += v <= m ? 1 : 0;
        return c;
    }
};

} // namespace testing
