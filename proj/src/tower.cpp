#include "fqcover/tower.hpp"

#include "fqcover/crt.hpp"
#include "fqcover/error.hpp"
#include "fqcover/factor.hpp"

namespace fqcover {

PrimeTower build_tower(const CoveringSystem& system) {
    PrimeTower tower;
    tower.field = system.field_ptr();
    const Poly q = lcm_modulus(system);
    // factor() lists primes in canonical order, which sorts by norm first.
    for (auto& [p, e] : factor(q).factors) {
        tower.primes.push_back(p);
        tower.exponents.push_back(e);
    }
    tower.partial.push_back(Poly::one(tower.field));
    for (std::size_t j = 0; j < tower.primes.size(); ++j)
        tower.partial.push_back(tower.partial.back() * pow(tower.primes[j], tower.exponents[j]));
    return tower;
}

std::vector<unsigned> tower_exponents(const PrimeTower& tower, const Poly& d) {
    if (!divides(d, tower.modulus()))
        throw Error(ErrorCode::InvalidArgument, format_poly(d) + " does not divide " + format_poly(tower.modulus()));
    std::vector<unsigned> out(tower.levels(), 0);
    Poly rest = d;
    for (std::size_t i = 0; i < tower.levels(); ++i) {
        while (true) {
            auto [quot, rem] = divmod(rest, tower.primes[i]);
            if (!rem.is_zero()) break;
            rest = std::move(quot);
            ++out[i];
        }
    }
    return out;
}

std::size_t tower_level(const PrimeTower& tower, const Poly& d) {
    auto e = tower_exponents(tower, d);
    for (std::size_t i = e.size(); i-- > 0;)
        if (e[i] > 0) return i + 1;
    return 0;
}

ResidueIndexer::ResidueIndexer(PrimeTower tower, ExhaustiveLimit limit) : tower_(std::move(tower)) {
    limit.require(*tower_.field, tower_.modulus().deg());
    const std::uint64_t q = tower_.field->order();
    size_.push_back(1);
    base_.push_back(1);
    block_.push_back(1);
    prime_powers_.push_back(Poly::one(tower_.field));
    for (std::size_t i = 1; i <= tower_.levels(); ++i) {
        std::uint64_t base = 1;
        for (std::size_t k = 0; k < tower_.prime(i).deg(); ++k) base *= q;
        std::uint64_t block = 1;
        for (unsigned k = 0; k < tower_.exponent(i); ++k) block *= base;
        base_.push_back(base);
        block_.push_back(block);
        size_.push_back(size_.back() * block);
        prime_powers_.push_back(pow(tower_.prime(i), tower_.exponent(i)));
    }
}

std::uint64_t ResidueIndexer::digit_power(std::size_t i, unsigned e) const {
    std::uint64_t out = 1;
    for (unsigned k = 0; k < e; ++k) out *= base_.at(i);
    return out;
}

std::uint64_t ResidueIndexer::local_code(const Poly& f, std::size_t i, unsigned e) const {
    const Poly& p = tower_.prime(i);
    Poly rest = f % prime_powers_.at(i);
    std::uint64_t code = 0, place = 1;
    for (unsigned k = 0; k < e; ++k) {
        auto [quot, digit] = divmod(rest, p);
        code += digit.index() * place;
        place *= base_[i];
        rest = std::move(quot);
    }
    return code;
}

std::uint64_t ResidueIndexer::encode(const Poly& f, std::size_t level) const {
    if (level > tower_.levels()) throw Error(ErrorCode::LevelOutOfRange, "level " + std::to_string(level));
    std::uint64_t index = 0;
    for (std::size_t i = 1; i <= level; ++i) index += local_code(f, i, tower_.exponent(i)) * size_[i - 1];
    return index;
}

Poly ResidueIndexer::decode(std::uint64_t index, std::size_t level) const {
    if (level > tower_.levels()) throw Error(ErrorCode::LevelOutOfRange, "level " + std::to_string(level));
    if (level == 0) return Poly(tower_.field);
    std::vector<Congruence> parts;
    for (std::size_t i = 1; i <= level; ++i) {
        std::uint64_t block = component(index, i);
        Poly local(tower_.field);
        Poly place = Poly::one(tower_.field);
        for (unsigned k = 0; k < tower_.exponent(i); ++k) {
            local = local + Poly::from_index(tower_.field, block % base_[i]) * place;
            block /= base_[i];
            place = place * tower_.prime(i);
        }
        parts.push_back({std::move(local), prime_powers_[i]});
    }
    return crt(parts).residue;
}

} // namespace fqcover
