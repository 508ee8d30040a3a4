#pragma once

#include "fqcover/poly.hpp"

#include <span>

namespace fqcover {

struct Congruence {
    Poly residue;
    Poly modulus;
};

/// Solves r = r_i mod m_i for monic, nonconstant, pairwise coprime m_i.
/// Returns the reduced residue and the product modulus.
/// Throws NotMonic, DegreeZero, NonCoprimeModuli.
Congruence crt(std::span<const Congruence> system);

} // namespace fqcover
