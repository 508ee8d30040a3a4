#include "fqcover/rational.hpp"

#include "fqcover/error.hpp"

#include <cctype>

namespace fqcover {

Rational ratio(const BigInt& n, const BigInt& d) {
    if (d == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator");
    Rational r(n, d);
    r.canonicalize();
    return r;
}

std::string to_string(const BigInt& n) { return n.get_str(); }

std::string to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

} // namespace

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    bool negative = false;
    if (!s.empty() && s.front() == '-') {
        negative = true;
        s.erase(s.begin());
    }
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
        throw Error(ErrorCode::SyntaxError, "not a rational: '" + text + "'");
    BigInt d(den);
    if (d == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator in '" + text + "'");
    Rational r(BigInt(num), d);
    r.canonicalize();
    return negative ? Rational(-r) : r;
}

BigInt pow(const BigInt& base, std::uint64_t exponent) {
    BigInt out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
    return out;
}

Rational pow(const Rational& base, std::uint64_t exponent) {
    Rational out(pow(base.get_num(), exponent), pow(base.get_den(), exponent));
    out.canonicalize();
    return out;
}

} // namespace fqcover
