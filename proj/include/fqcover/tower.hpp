#pragma once

#include "fqcover/covering.hpp"
#include "fqcover/poly.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace fqcover {

/// Q = lcm of the moduli, factored as p_1^{nu_1} ... p_J^{nu_J} with the primes
/// in canonical order (by norm, ties broken lexicographically), together with
/// the partial products Q_0 = 1, Q_j = p_1^{nu_1} ... p_j^{nu_j}.
struct PrimeTower {
    FieldPtr field;
    std::vector<Poly> primes;
    std::vector<unsigned> exponents;
    std::vector<Poly> partial;

    std::size_t levels() const noexcept { return primes.size(); }
    const Poly& modulus() const { return partial.back(); }
    const Poly& prime(std::size_t j) const { return primes.at(j - 1); }
    unsigned exponent(std::size_t j) const { return exponents.at(j - 1); }
};

PrimeTower build_tower(const CoveringSystem& system);

/// Multiplicity of each tower prime in d, for d | Q. Throws InvalidArgument otherwise.
std::vector<unsigned> tower_exponents(const PrimeTower& tower, const Poly& d);

/// The level j with d | Q_j and d not dividing Q_{j-1}; 0 for d = 1.
std::size_t tower_level(const PrimeTower& tower, const Poly& d);

/// Integer coordinates for residues modulo Q_j. Residue r is stored as the
/// mixed-radix number whose i-th block holds the p_i-adic digits of
/// r mod p_i^{nu_i}, lowest block first, so that reduction mod Q_{j-1} is
/// index % size(j-1) and reduction mod p_i^e keeps the first e digits of block i.
class ResidueIndexer {
public:
    ResidueIndexer(PrimeTower tower, ExhaustiveLimit limit);

    const PrimeTower& tower() const noexcept { return tower_; }
    /// q^{deg Q_level}
    std::uint64_t size(std::size_t level) const { return size_.at(level); }
    /// q^{deg p_i}
    std::uint64_t digit_base(std::size_t i) const { return base_.at(i); }
    /// q^{nu_i deg p_i}
    std::uint64_t block_size(std::size_t i) const { return block_.at(i); }
    /// q^{e deg p_i}
    std::uint64_t digit_power(std::size_t i, unsigned e) const;

    std::uint64_t component(std::uint64_t index, std::size_t i) const { return index / size_[i - 1] % block_[i]; }

    std::uint64_t encode(const Poly& f, std::size_t level) const;
    Poly decode(std::uint64_t index, std::size_t level) const;
    /// p_i-adic digits of f mod p_i^e as an integer below digit_power(i, e).
    std::uint64_t local_code(const Poly& f, std::size_t i, unsigned e) const;

private:
    PrimeTower tower_;
    std::vector<std::uint64_t> size_;
    std::vector<std::uint64_t> base_;
    std::vector<std::uint64_t> block_;
    std::vector<Poly> prime_powers_;
};

} // namespace fqcover
