#include "fqcover/poly.hpp"

#include "fqcover/error.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <sstream>
#include <utility>

namespace fqcover {

namespace {

void require_same_field(const Poly& a, const Poly& b) {
    if (a.field_ptr() != b.field_ptr() && !(a.field() == b.field()))
        throw Error(ErrorCode::FieldMismatch, "polynomials over different fields");
}

} // namespace

Poly::Poly(FieldPtr field) : field_(std::move(field)) {}

Poly::Poly(FieldPtr field, std::vector<FieldElem> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    for (auto c : coeffs_)
        if (c.index >= field_->order()) throw Error(ErrorCode::CoefficientOutOfRange, "coefficient not in field");
    trim();
}

Poly Poly::constant(FieldPtr field, FieldElem c) { return Poly(std::move(field), {c}); }
Poly Poly::one(FieldPtr field) { return Poly(std::move(field), {FieldElem{1}}); }
Poly Poly::x(FieldPtr field) { return Poly(std::move(field), {FieldElem{0}, FieldElem{1}}); }

Poly Poly::monomial(FieldPtr field, FieldElem c, std::size_t k) {
    std::vector<FieldElem> coeffs(k + 1, FieldElem{0});
    coeffs[k] = c;
    return Poly(std::move(field), std::move(coeffs));
}

Poly Poly::from_index(FieldPtr field, std::uint64_t index) {
    const std::uint64_t q = field->order();
    std::vector<FieldElem> coeffs;
    while (index) {
        coeffs.push_back(FieldElem{static_cast<std::uint32_t>(index % q)});
        index /= q;
    }
    return Poly(std::move(field), std::move(coeffs));
}

void Poly::trim() noexcept {
    while (!coeffs_.empty() && coeffs_.back().index == 0) coeffs_.pop_back();
}

std::optional<std::size_t> Poly::degree() const noexcept {
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.size() - 1;
}

std::size_t Poly::deg() const {
    if (coeffs_.empty()) throw Error(ErrorCode::ZeroPolynomial, "degree of the zero polynomial");
    return coeffs_.size() - 1;
}

FieldElem Poly::coeff(std::size_t i) const noexcept { return i < coeffs_.size() ? coeffs_[i] : FieldElem{0}; }

FieldElem Poly::leading() const {
    if (coeffs_.empty()) throw Error(ErrorCode::ZeroPolynomial, "leading coefficient of zero");
    return coeffs_.back();
}

bool Poly::is_monic() const noexcept { return !coeffs_.empty() && coeffs_.back().index == 1; }
bool Poly::is_one() const noexcept { return coeffs_.size() == 1 && coeffs_[0].index == 1; }

BigInt Poly::norm() const { return pow(BigInt(field_->order()), deg()); }

std::uint64_t Poly::index() const {
    const std::uint64_t q = field_->order();
    std::uint64_t out = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        if (out > (std::numeric_limits<std::uint64_t>::max() - coeffs_[i].index) / q)
            throw Error(ErrorCode::InvalidArgument, "polynomial index overflows 64 bits");
        out = out * q + coeffs_[i].index;
    }
    return out;
}

Poly Poly::monic() const {
    if (coeffs_.empty()) throw Error(ErrorCode::ZeroPolynomial, "cannot normalize zero");
    return scale(*this, field_->inv(leading()));
}

bool operator==(const Poly& a, const Poly& b) {
    return a.coeffs_ == b.coeffs_ && (a.field_ == b.field_ || *a.field_ == *b.field_);
}

std::strong_ordering operator<=>(const Poly& a, const Poly& b) {
    if (auto c = a.coeffs_.size() <=> b.coeffs_.size(); c != 0) return c;
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        if (auto c = a.coeffs_[i] <=> b.coeffs_[i]; c != 0) return c;
    return std::strong_ordering::equal;
}

Poly operator+(const Poly& a, const Poly& b) {
    require_same_field(a, b);
    const Field& F = a.field();
    std::vector<FieldElem> out(std::max(a.coefficients().size(), b.coefficients().size()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = F.add(a.coeff(i), b.coeff(i));
    return Poly(a.field_ptr(), std::move(out));
}

Poly operator-(const Poly& a) {
    const Field& F = a.field();
    std::vector<FieldElem> out(a.coefficients().size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = F.neg(a.coeff(i));
    return Poly(a.field_ptr(), std::move(out));
}

Poly operator-(const Poly& a, const Poly& b) {
    require_same_field(a, b);
    const Field& F = a.field();
    std::vector<FieldElem> out(std::max(a.coefficients().size(), b.coefficients().size()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = F.sub(a.coeff(i), b.coeff(i));
    return Poly(a.field_ptr(), std::move(out));
}

Poly operator*(const Poly& a, const Poly& b) {
    require_same_field(a, b);
    if (a.is_zero() || b.is_zero()) return Poly(a.field_ptr());
    const Field& F = a.field();
    const auto& x = a.coefficients();
    const auto& y = b.coefficients();
    std::vector<FieldElem> out(x.size() + y.size() - 1, FieldElem{0});
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].index == 0) continue;
        for (std::size_t j = 0; j < y.size(); ++j) out[i + j] = F.add(out[i + j], F.mul(x[i], y[j]));
    }
    return Poly(a.field_ptr(), std::move(out));
}

Poly scale(const Poly& a, FieldElem c) {
    const Field& F = a.field();
    std::vector<FieldElem> out(a.coefficients().size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = F.mul(a.coeff(i), c);
    return Poly(a.field_ptr(), std::move(out));
}

DivMod divmod(const Poly& f, const Poly& g) {
    require_same_field(f, g);
    if (g.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by the zero polynomial");
    const Field& F = f.field();
    if (f.is_zero() || f.deg() < g.deg()) return {Poly(f.field_ptr()), f};
    std::vector<FieldElem> rem = f.coefficients();
    const auto& d = g.coefficients();
    const std::size_t dg = d.size() - 1;
    std::vector<FieldElem> quot(rem.size() - dg, FieldElem{0});
    const FieldElem lead_inv = F.inv(d.back());
    for (std::size_t k = rem.size(); k-- > dg;) {
        if (rem[k].index == 0) continue;
        FieldElem c = F.mul(rem[k], lead_inv);
        quot[k - dg] = c;
        FieldElem minus_c = F.neg(c);
        for (std::size_t i = 0; i <= dg; ++i) rem[k - dg + i] = F.add(rem[k - dg + i], F.mul(minus_c, d[i]));
    }
    rem.resize(dg);
    return {Poly(f.field_ptr(), std::move(quot)), Poly(f.field_ptr(), std::move(rem))};
}

Poly operator/(const Poly& f, const Poly& g) { return divmod(f, g).quotient; }
Poly operator%(const Poly& f, const Poly& g) { return divmod(f, g).remainder; }

bool divides(const Poly& d, const Poly& f) { return (f % d).is_zero(); }

Poly gcd(const Poly& a, const Poly& b) {
    if (a.is_zero() && b.is_zero()) throw Error(ErrorCode::DivisionByZero, "gcd(0, 0) is undefined");
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

Poly lcm(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) throw Error(ErrorCode::DivisionByZero, "lcm with the zero polynomial");
    return ((a / gcd(a, b)) * b).monic();
}

ExtendedGcd xgcd(const Poly& a, const Poly& b) {
    if (a.is_zero() && b.is_zero()) throw Error(ErrorCode::DivisionByZero, "gcd(0, 0) is undefined");
    const auto& field = a.field_ptr();
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::one(field), s1(field);
    Poly t0(field), t1 = Poly::one(field);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        Poly t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    FieldElem u = field->inv(r0.leading());
    return {scale(r0, u), scale(s0, u), scale(t0, u)};
}

Poly pow(const Poly& base, std::uint64_t exponent) {
    Poly result = Poly::one(base.field_ptr());
    Poly b = base;
    while (exponent) {
        if (exponent & 1) result = result * b;
        exponent >>= 1;
        if (exponent) b = b * b;
    }
    return result;
}

namespace {

class PolyParser {
public:
    PolyParser(std::string_view text, const FieldPtr& field, char variable)
        : field_(field), var_(variable) {
        for (char c : text)
            if (!std::isspace(static_cast<unsigned char>(c))) s_.push_back(c);
    }

    Poly parse() {
        if (s_.empty()) fail("empty polynomial");
        std::map<std::size_t, FieldElem> terms;
        while (true) {
            auto [c, k] = term();
            auto& slot = terms.try_emplace(k, FieldElem{0}).first->second;
            slot = field_->add(slot, c);
            if (pos_ == s_.size()) break;
            if (s_[pos_] != '+') fail("expected '+'");
            ++pos_;
        }
        std::vector<FieldElem> coeffs(terms.rbegin()->first + 1, FieldElem{0});
        for (auto [k, c] : terms) coeffs[k] = c;
        return Poly(field_, std::move(coeffs));
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw Error(ErrorCode::SyntaxError, why + " at position " + std::to_string(pos_) + " in '" + s_ + "'");
    }

    bool at(char c) const { return pos_ < s_.size() && s_[pos_] == c; }

    std::uint64_t number() {
        std::size_t start = pos_;
        std::uint64_t v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            if (v > (std::numeric_limits<std::uint64_t>::max() - 9) / 10) fail("number too large");
            v = v * 10 + static_cast<std::uint64_t>(s_[pos_] - '0');
            ++pos_;
        }
        if (pos_ == start) fail("expected a number");
        return v;
    }

    FieldElem coefficient() {
        const Field& F = *field_;
        if (at('(')) {
            ++pos_;
            std::vector<std::uint64_t> digits;
            while (true) {
                digits.push_back(number());
                if (at(',')) {
                    ++pos_;
                    continue;
                }
                if (at(')')) {
                    ++pos_;
                    break;
                }
                fail("expected ',' or ')'");
            }
            if (F.degree() == 1 || digits.size() != F.degree()) fail("coefficient tuple has the wrong length");
            std::vector<std::uint32_t> low_first(digits.size());
            for (std::size_t i = 0; i < digits.size(); ++i) {
                auto d = digits[digits.size() - 1 - i];
                if (d >= F.characteristic())
                    throw Error(ErrorCode::CoefficientOutOfRange, std::to_string(d) + " is not a digit mod " +
                                                                      std::to_string(F.characteristic()));
                low_first[i] = static_cast<std::uint32_t>(d);
            }
            return F.from_coefficients(low_first);
        }
        auto v = number();
        if (F.degree() != 1 && v > 1) fail("extension-field coefficients need tuple syntax");
        if (v >= F.characteristic())
            throw Error(ErrorCode::CoefficientOutOfRange,
                        std::to_string(v) + " is not in F_" + std::to_string(F.characteristic()));
        return FieldElem{static_cast<std::uint32_t>(v)};
    }

    std::pair<FieldElem, std::size_t> term() {
        FieldElem c = field_->one();
        bool has_coeff = false;
        if (at('(') || (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))) {
            c = coefficient();
            has_coeff = true;
        }
        if (!at(var_)) {
            if (!has_coeff) fail("expected a term");
            return {c, 0};
        }
        ++pos_;
        std::size_t k = 1;
        if (at('^')) {
            ++pos_;
            auto e = number();
            if (e > (1u << 20)) fail("exponent too large");
            k = static_cast<std::size_t>(e);
        }
        return {c, k};
    }

    const FieldPtr& field_;
    char var_;
    std::string s_;
    std::size_t pos_ = 0;
};

} // namespace

Poly parse_poly(std::string_view text, const FieldPtr& field, char variable) {
    return PolyParser(text, field, variable).parse();
}

std::string format_poly(const Poly& f, char variable) {
    if (f.is_zero()) return "0";
    const Field& F = f.field();
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = f.coefficients().size(); k-- > 0;) {
        FieldElem c = f.coeff(k);
        if (c.index == 0) continue;
        if (!first) os << '+';
        first = false;
        if (k == 0) {
            os << F.format(c);
            continue;
        }
        if (c.index != 1) os << F.format(c);
        os << variable;
        if (k > 1) os << '^' << k;
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Poly& f) { return os << format_poly(f); }

} // namespace fqcover
