#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fqcover {

/// An element of F_q, stored as its index sum_i c_i p^i in the power basis of t.
struct FieldElem {
    std::uint32_t index = 0;

    friend auto operator<=>(FieldElem, FieldElem) = default;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// The finite field F_{p^e} = F_p[t]/(modulus). Immutable once built.
class Field {
public:
    /// Validates p and the modulus. When e > 1 and no modulus is given, a
    /// Conway polynomial from the bundled table is used (q <= 64).
    static FieldPtr make(std::uint64_t p, unsigned e,
                         std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

    /// Accepts any prime power q; extension fields use the bundled table.
    static FieldPtr from_order(std::uint64_t q);

    std::uint32_t characteristic() const noexcept { return p_; }
    unsigned degree() const noexcept { return e_; }
    std::uint32_t order() const noexcept { return q_; }
    /// e+1 coefficients of the defining polynomial, constant term first ({0,1} when e = 1).
    const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

    FieldElem zero() const noexcept { return {0}; }
    FieldElem one() const noexcept { return {1}; }
    FieldElem element(std::uint32_t index) const;
    FieldElem from_coefficients(std::span<const std::uint32_t> coeffs) const;
    std::vector<std::uint32_t> coefficients(FieldElem a) const;

    FieldElem add(FieldElem a, FieldElem b) const;
    FieldElem sub(FieldElem a, FieldElem b) const;
    FieldElem neg(FieldElem a) const;
    FieldElem mul(FieldElem a, FieldElem b) const;
    /// Throws Error(DivisionByZero) for zero.
    FieldElem inv(FieldElem a) const;

    /// Decimal digit for prime fields, "(c_{e-1},...,c_0)" for extensions.
    std::string format(FieldElem a) const;

    bool operator==(const Field& other) const noexcept {
        return p_ == other.p_ && e_ == other.e_ && modulus_ == other.modulus_;
    }

    /// "q=p" or "q=p^e;modulus=<poly in t>"; the header line of a system file.
    std::string header() const;

private:
    Field(std::uint32_t p, unsigned e, std::vector<std::uint32_t> modulus);

    FieldElem mul_slow(FieldElem a, FieldElem b) const;

    std::uint32_t p_;
    unsigned e_;
    std::uint32_t q_;
    std::vector<std::uint32_t> modulus_;
    // Extension fields up to this order get full add/mul tables.
    static constexpr std::uint32_t kTableLimit = 256;
    std::vector<std::uint32_t> add_table_;
    std::vector<std::uint32_t> mul_table_;
    std::vector<std::uint32_t> inv_table_;
};

bool is_prime(std::uint64_t n) noexcept;

/// Bundled Conway polynomial for F_{p^e}, coefficients constant first, if q <= 64.
std::optional<std::vector<std::uint32_t>> conway_polynomial(std::uint32_t p, unsigned e);

} // namespace fqcover
