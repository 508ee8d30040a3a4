#include "fqcover/field.hpp"

#include "fqcover/error.hpp"
#include "fqcover/factor.hpp"
#include "fqcover/poly.hpp"

#include <limits>
#include <map>
#include <sstream>
#include <utility>

namespace fqcover {

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::optional<std::vector<std::uint32_t>> conway_polynomial(std::uint32_t p, unsigned e) {
    // Conway polynomials for every non-prime q <= 64, constant term first.
    static const std::map<std::pair<std::uint32_t, unsigned>, std::vector<std::uint32_t>> table = {
        {{2, 2}, {1, 1, 1}},
        {{2, 3}, {1, 1, 0, 1}},
        {{2, 4}, {1, 1, 0, 0, 1}},
        {{2, 5}, {1, 0, 1, 0, 0, 1}},
        {{2, 6}, {1, 1, 0, 1, 1, 0, 1}},
        {{3, 2}, {2, 2, 1}},
        {{3, 3}, {1, 2, 0, 1}},
        {{5, 2}, {2, 4, 1}},
        {{7, 2}, {3, 6, 1}},
    };
    auto it = table.find({p, e});
    if (it == table.end()) return std::nullopt;
    return it->second;
}

FieldPtr Field::make(std::uint64_t p, unsigned e, std::optional<std::vector<std::uint32_t>> modulus) {
    if (!is_prime(p))
        throw Error(ErrorCode::CompositeCharacteristic, std::to_string(p) + " is not prime");
    if (e == 0) throw Error(ErrorCode::InvalidArgument, "extension degree must be >= 1");
    std::uint64_t q = 1;
    for (unsigned i = 0; i < e; ++i) {
        q *= p;
        if (q > std::numeric_limits<std::int32_t>::max())
            throw Error(ErrorCode::UnsupportedFieldSize, "field order exceeds 2^31");
    }
    const auto p32 = static_cast<std::uint32_t>(p);
    if (e == 1) return FieldPtr(new Field(p32, 1, {0, 1}));

    if (!modulus) {
        modulus = conway_polynomial(p32, e);
        if (!modulus)
            throw Error(ErrorCode::UnsupportedFieldSize,
                        "no bundled modulus for q = " + std::to_string(q) + "; supply one");
    }
    if (modulus->size() != e + 1 || modulus->back() != 1)
        throw Error(ErrorCode::ReducibleModulus, "modulus must be monic of degree " + std::to_string(e));
    for (auto c : *modulus)
        if (c >= p) throw Error(ErrorCode::CoefficientOutOfRange, "modulus coefficient out of range");

    auto base = make(p, 1);
    std::vector<FieldElem> coeffs;
    for (auto c : *modulus) coeffs.push_back(FieldElem{c});
    if (!is_irreducible(Poly(base, coeffs)))
        throw Error(ErrorCode::ReducibleModulus, "modulus is reducible over F_" + std::to_string(p));
    return FieldPtr(new Field(p32, e, std::move(*modulus)));
}

FieldPtr Field::from_order(std::uint64_t q) {
    if (q < 2) throw Error(ErrorCode::CompositeCharacteristic, "q must be a prime power >= 2");
    std::uint64_t p = 2;
    while (q % p != 0) ++p;
    unsigned e = 0;
    std::uint64_t rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++e;
    }
    if (rest != 1) throw Error(ErrorCode::CompositeCharacteristic, std::to_string(q) + " is not a prime power");
    return make(p, e);
}

Field::Field(std::uint32_t p, unsigned e, std::vector<std::uint32_t> modulus)
    : p_(p), e_(e), q_(1), modulus_(std::move(modulus)) {
    for (unsigned i = 0; i < e_; ++i) q_ *= p_;
    if (e_ > 1 && q_ <= kTableLimit) {
        add_table_.resize(std::size_t{q_} * q_);
        mul_table_.resize(std::size_t{q_} * q_);
        inv_table_.assign(q_, 0);
        for (std::uint32_t a = 0; a < q_; ++a) {
            for (std::uint32_t b = 0; b < q_; ++b) {
                std::uint32_t sum = 0, place = 1, x = a, y = b;
                for (unsigned i = 0; i < e_; ++i) {
                    sum += ((x % p_ + y % p_) % p_) * place;
                    x /= p_;
                    y /= p_;
                    place *= p_;
                }
                add_table_[std::size_t{a} * q_ + b] = sum;
            }
        }
        for (std::uint32_t a = 0; a < q_; ++a)
            for (std::uint32_t b = 0; b < q_; ++b) {
                auto prod = mul_slow({a}, {b}).index;
                mul_table_[std::size_t{a} * q_ + b] = prod;
                if (prod == 1) inv_table_[a] = b;
            }
    }
}

FieldElem Field::element(std::uint32_t index) const {
    if (index >= q_) throw Error(ErrorCode::CoefficientOutOfRange, std::to_string(index) + " is not in F_" + std::to_string(q_));
    return {index};
}

FieldElem Field::from_coefficients(std::span<const std::uint32_t> coeffs) const {
    if (coeffs.size() != e_) throw Error(ErrorCode::InvalidArgument, "expected " + std::to_string(e_) + " coefficients");
    std::uint32_t index = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        if (coeffs[i] >= p_) throw Error(ErrorCode::CoefficientOutOfRange, "coefficient " + std::to_string(coeffs[i]) + " >= p");
        index = index * p_ + coeffs[i];
    }
    return {index};
}

std::vector<std::uint32_t> Field::coefficients(FieldElem a) const {
    std::vector<std::uint32_t> out(e_);
    for (unsigned i = 0; i < e_; ++i) {
        out[i] = a.index % p_;
        a.index /= p_;
    }
    return out;
}

FieldElem Field::add(FieldElem a, FieldElem b) const {
    if (e_ == 1) {
        std::uint32_t s = a.index + b.index;
        return {s >= p_ ? s - p_ : s};
    }
    if (!add_table_.empty()) return {add_table_[std::size_t{a.index} * q_ + b.index]};
    std::uint32_t sum = 0, place = 1;
    for (unsigned i = 0; i < e_; ++i) {
        sum += ((a.index % p_ + b.index % p_) % p_) * place;
        a.index /= p_;
        b.index /= p_;
        place *= p_;
    }
    return {sum};
}

FieldElem Field::neg(FieldElem a) const {
    if (e_ == 1) return {a.index == 0 ? 0 : p_ - a.index};
    std::uint32_t out = 0, place = 1;
    for (unsigned i = 0; i < e_; ++i) {
        std::uint32_t c = a.index % p_;
        out += (c == 0 ? 0 : p_ - c) * place;
        a.index /= p_;
        place *= p_;
    }
    return {out};
}

FieldElem Field::sub(FieldElem a, FieldElem b) const { return add(a, neg(b)); }

FieldElem Field::mul(FieldElem a, FieldElem b) const {
    if (e_ == 1) return {static_cast<std::uint32_t>(std::uint64_t{a.index} * b.index % p_)};
    if (!mul_table_.empty()) return {mul_table_[std::size_t{a.index} * q_ + b.index]};
    return mul_slow(a, b);
}

FieldElem Field::mul_slow(FieldElem a, FieldElem b) const {
    auto x = coefficients(a);
    auto y = coefficients(b);
    std::vector<std::uint64_t> prod(2 * e_, 0);
    for (unsigned i = 0; i < e_; ++i)
        for (unsigned j = 0; j < e_; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{x[i]} * y[j]) % p_;
    // Reduce by the monic modulus from the top down.
    for (std::size_t k = prod.size(); k-- > e_;) {
        auto c = prod[k];
        if (c == 0) continue;
        for (unsigned i = 0; i <= e_; ++i) {
            auto& slot = prod[k - e_ + i];
            slot = (slot + (p_ - c) * modulus_[i]) % p_;
        }
    }
    std::vector<std::uint32_t> low(e_);
    for (unsigned i = 0; i < e_; ++i) low[i] = static_cast<std::uint32_t>(prod[i]);
    return from_coefficients(low);
}

FieldElem Field::inv(FieldElem a) const {
    if (a.index == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
    if (e_ == 1) {
        // Fermat: a^(p-2).
        std::uint64_t result = 1, base = a.index, exp = p_ - 2;
        while (exp) {
            if (exp & 1) result = result * base % p_;
            base = base * base % p_;
            exp >>= 1;
        }
        return {static_cast<std::uint32_t>(result)};
    }
    if (!inv_table_.empty()) return {inv_table_[a.index]};
    // a^(q-2) by square and multiply.
    FieldElem result = one(), base = a;
    std::uint64_t exp = q_ - 2;
    while (exp) {
        if (exp & 1) result = mul(result, base);
        base = mul(base, base);
        exp >>= 1;
    }
    return result;
}

std::string Field::format(FieldElem a) const {
    if (e_ == 1) return std::to_string(a.index);
    auto c = coefficients(a);
    std::ostringstream os;
    os << '(';
    for (std::size_t i = c.size(); i-- > 0;) {
        os << c[i];
        if (i) os << ',';
    }
    os << ')';
    return os.str();
}

std::string Field::header() const {
    if (e_ == 1) return "q=" + std::to_string(p_);
    auto base = make(p_, 1);
    std::vector<FieldElem> coeffs;
    for (auto c : modulus_) coeffs.push_back({c});
    return "q=" + std::to_string(p_) + "^" + std::to_string(e_) + ";modulus=" + format_poly(Poly(base, coeffs), 't');
}

} // namespace fqcover
