#include "fqcover/factor.hpp"

#include "fqcover/error.hpp"

namespace fqcover {

namespace {

// Monic polynomial of degree n whose lower coefficients are the base-q digits
// of rank, c_{n-1} least significant, so rank order is canonical order.
Poly monic_by_rank(const FieldPtr& field, std::size_t n, std::uint64_t rank) {
    const std::uint64_t q = field->order();
    std::vector<FieldElem> coeffs(n + 1, FieldElem{0});
    coeffs[n] = field->one();
    for (std::size_t i = n; i-- > 0;) {
        coeffs[i] = FieldElem{static_cast<std::uint32_t>(rank % q)};
        rank /= q;
    }
    return Poly(field, std::move(coeffs));
}

std::uint64_t count_monic(const FieldPtr& field, std::size_t n) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (count > (std::uint64_t{1} << 40) / field->order())
            throw Error(ErrorCode::InvalidArgument, "too many polynomials to enumerate");
        count *= field->order();
    }
    return count;
}

} // namespace

bool is_irreducible(const Poly& f) {
    if (f.is_zero() || !f.is_monic()) throw Error(ErrorCode::NotMonic, "irreducibility test needs a monic polynomial");
    const std::size_t n = f.deg();
    if (n == 0) throw Error(ErrorCode::DegreeZero, "constants are not irreducible");
    const auto& field = f.field_ptr();
    for (std::size_t d = 1; 2 * d <= n; ++d) {
        const std::uint64_t count = count_monic(field, d);
        for (std::uint64_t rank = 0; rank < count; ++rank)
            if (divides(monic_by_rank(field, d, rank), f)) return false;
    }
    return true;
}

Poly Factorization::expand(const FieldPtr& field) const {
    Poly out = Poly::constant(field, unit);
    for (const auto& [p, e] : factors) out = out * pow(p, e);
    return out;
}

Factorization factor(const Poly& f) {
    if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "cannot factor zero");
    const auto& field = f.field_ptr();
    Factorization out{f.leading(), {}};
    Poly rest = f.monic();
    for (std::size_t d = 1; 2 * d <= rest.deg(); ++d) {
        const std::uint64_t count = count_monic(field, d);
        for (std::uint64_t rank = 0; rank < count && 2 * d <= rest.deg(); ++rank) {
            Poly candidate = monic_by_rank(field, d, rank);
            unsigned e = 0;
            while (true) {
                auto [quot, rem] = divmod(rest, candidate);
                if (!rem.is_zero()) break;
                rest = std::move(quot);
                ++e;
            }
            if (e) out.factors.emplace_back(std::move(candidate), e);
        }
    }
    // No factor of degree <= deg(rest)/2 is left, so rest is 1 or irreducible.
    if (rest.deg() >= 1) out.factors.emplace_back(std::move(rest), 1);
    return out;
}

std::vector<Poly> enumerate_monic(const FieldPtr& field, std::size_t n) {
    const std::uint64_t count = count_monic(field, n);
    std::vector<Poly> out;
    out.reserve(count);
    for (std::uint64_t rank = 0; rank < count; ++rank) out.push_back(monic_by_rank(field, n, rank));
    return out;
}

std::vector<Poly> enumerate_irreducibles(const FieldPtr& field, std::size_t d) {
    if (d == 0) throw Error(ErrorCode::DegreeZero, "irreducibles have degree >= 1");
    std::vector<Poly> out;
    for (auto& f : enumerate_monic(field, d))
        if (is_irreducible(f)) out.push_back(std::move(f));
    return out;
}

std::size_t largest_prime_degree(const Poly& f) {
    std::size_t best = 0;
    for (const auto& [p, e] : factor(f).factors) best = std::max(best, p.deg());
    return best;
}

} // namespace fqcover
