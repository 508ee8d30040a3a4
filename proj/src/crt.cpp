#include "fqcover/crt.hpp"

#include "fqcover/error.hpp"

namespace fqcover {

Congruence crt(std::span<const Congruence> system) {
    if (system.empty()) throw Error(ErrorCode::InvalidArgument, "empty congruence system");
    for (const auto& c : system) {
        if (!c.modulus.is_monic()) throw Error(ErrorCode::NotMonic, "CRT moduli must be monic");
        if (c.modulus.deg() == 0) throw Error(ErrorCode::DegreeZero, "CRT moduli must be nonconstant");
    }
    for (std::size_t i = 0; i < system.size(); ++i)
        for (std::size_t j = i + 1; j < system.size(); ++j)
            if (!gcd(system[i].modulus, system[j].modulus).is_one())
                throw Error(ErrorCode::NonCoprimeModuli,
                            format_poly(system[i].modulus) + " and " + format_poly(system[j].modulus));

    Poly r = system[0].residue % system[0].modulus;
    Poly m = system[0].modulus;
    for (std::size_t i = 1; i < system.size(); ++i) {
        const auto& [ri, mi] = system[i];
        // r + m*k = ri (mod mi)  =>  k = (ri - r) * m^{-1} (mod mi)
        Poly m_inv = xgcd(m % mi, mi).s;
        Poly k = ((ri - r) * m_inv) % mi;
        r = r + m * k;
        m = m * mi;
        r = r % m;
    }
    return {std::move(r), std::move(m)};
}

} // namespace fqcover
