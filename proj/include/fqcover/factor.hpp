#pragma once

#include "fqcover/poly.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace fqcover {

/// True iff the monic f (deg >= 1) has no monic factor of degree in [1, deg f / 2].
/// Throws NotMonic / DegreeZero.
bool is_irreducible(const Poly& f);

struct Factorization {
    FieldElem unit;
    /// Monic irreducible factors, ascending in canonical order, with exponents.
    std::vector<std::pair<Poly, unsigned>> factors;

    Poly expand(const FieldPtr& field) const;
};

/// Trial division by monic polynomials in canonical order. Throws ZeroPolynomial.
Factorization factor(const Poly& f);

/// All q^n monic polynomials of degree n, in canonical order.
std::vector<Poly> enumerate_monic(const FieldPtr& field, std::size_t n);

/// Monic irreducibles of degree d >= 1, in canonical order.
std::vector<Poly> enumerate_irreducibles(const FieldPtr& field, std::size_t d);

/// Largest degree of an irreducible factor; 0 for nonzero constants.
std::size_t largest_prime_degree(const Poly& f);

} // namespace fqcover
