#pragma once

#include "fqcover/field.hpp"
#include "fqcover/rational.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace fqcover {

/// A polynomial in F_q[x], coefficients stored constant term first with no
/// trailing zeros. The zero polynomial has no degree (degree() is empty).
class Poly {
public:
    explicit Poly(FieldPtr field);
    Poly(FieldPtr field, std::vector<FieldElem> coeffs);

    static Poly constant(FieldPtr field, FieldElem c);
    static Poly one(FieldPtr field);
    static Poly x(FieldPtr field);
    static Poly monomial(FieldPtr field, FieldElem c, std::size_t k);
    /// Inverse of index(): digit i (base q) is the index of the coefficient of x^i.
    static Poly from_index(FieldPtr field, std::uint64_t index);

    const FieldPtr& field_ptr() const noexcept { return field_; }
    const Field& field() const noexcept { return *field_; }

    bool is_zero() const noexcept { return coeffs_.empty(); }
    std::optional<std::size_t> degree() const noexcept;
    /// Degree of a nonzero polynomial; throws Error(ZeroPolynomial) otherwise.
    std::size_t deg() const;
    FieldElem coeff(std::size_t i) const noexcept;
    FieldElem leading() const;
    const std::vector<FieldElem>& coefficients() const noexcept { return coeffs_; }
    bool is_monic() const noexcept;
    bool is_one() const noexcept;

    /// |f| = q^deg f; undefined (throws ZeroPolynomial) for f = 0.
    BigInt norm() const;
    std::uint64_t index() const;
    Poly monic() const;

    friend bool operator==(const Poly& a, const Poly& b);
    /// Canonical order: zero first, then by degree, then lexicographic on the
    /// coefficient vector starting from the constant term.
    friend std::strong_ordering operator<=>(const Poly& a, const Poly& b);

private:
    void trim() noexcept;

    FieldPtr field_;
    std::vector<FieldElem> coeffs_;
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator-(const Poly& a);
Poly operator*(const Poly& a, const Poly& b);
Poly scale(const Poly& a, FieldElem c);

struct DivMod {
    Poly quotient;
    Poly remainder;
};

/// f = quotient * g + remainder with deg remainder < deg g. Throws DivisionByZero.
DivMod divmod(const Poly& f, const Poly& g);
Poly operator/(const Poly& f, const Poly& g);
Poly operator%(const Poly& f, const Poly& g);
bool divides(const Poly& d, const Poly& f);

/// Monic gcd; gcd(0, 0) throws DivisionByZero.
Poly gcd(const Poly& a, const Poly& b);
/// Monic lcm of two nonzero polynomials.
Poly lcm(const Poly& a, const Poly& b);

struct ExtendedGcd {
    Poly gcd; // monic
    Poly s;
    Poly t; // s*a + t*b = gcd
};
ExtendedGcd xgcd(const Poly& a, const Poly& b);

Poly pow(const Poly& base, std::uint64_t exponent);

/// Grammar: terms joined by '+'; a term is c, x, x^k, cx or cx^k where c is a
/// decimal integer < p (prime fields) or a tuple (c_{e-1},...,c_0) (extensions).
/// Whitespace is ignored; repeated degrees are summed.
Poly parse_poly(std::string_view text, const FieldPtr& field, char variable = 'x');
std::string format_poly(const Poly& f, char variable = 'x');
std::ostream& operator<<(std::ostream& os, const Poly& f);

} // namespace fqcover
