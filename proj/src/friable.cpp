#include "fqcover/friable.hpp"

#include "fqcover/error.hpp"
#include "fqcover/field.hpp"

#include <cmath>
#include <sstream>

namespace fqcover {

namespace {

void require_prime_power(std::uint64_t q) {
    if (q < 2) throw Error(ErrorCode::InvalidArgument, "q must be a prime power");
    std::uint64_t p = 2;
    while (q % p != 0) ++p;
    while (q % p == 0) q /= p;
    if (q != 1) throw Error(ErrorCode::InvalidArgument, "q must be a prime power");
}

int moebius(std::size_t n) {
    int sign = 1;
    for (std::size_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        sign = -sign;
    }
    return n > 1 ? -sign : sign;
}

BigInt binomial(const BigInt& n, std::size_t k) {
    BigInt out;
    mpz_bin_ui(out.get_mpz_t(), n.get_mpz_t(), k);
    return out;
}

} // namespace

BigInt count_irreducibles(std::uint64_t q, std::size_t d) {
    require_prime_power(q);
    if (d == 0) throw Error(ErrorCode::DegreeZero, "irreducibles have degree >= 1");
    BigInt sum = 0;
    for (std::size_t k = 1; k <= d; ++k) {
        if (d % k) continue;
        int mu = moebius(k);
        if (mu == 0) continue;
        BigInt term = pow(BigInt(q), d / k);
        sum += mu > 0 ? term : BigInt(-term);
    }
    return sum / BigInt(d);
}

FriableTable::FriableTable(std::uint64_t q, std::size_t max_degree, std::size_t max_smoothness)
    : q_(q), max_degree_(max_degree), max_smoothness_(max_smoothness) {
    require_prime_power(q);
    if (max_smoothness == 0) throw Error(ErrorCode::InvalidArgument, "smoothness bound must be >= 1");
    pi_.resize(max_smoothness + 1);
    for (std::size_t d = 1; d <= max_smoothness; ++d) pi_[d] = count_irreducibles(q, d);

    // Multiplying the generating function by (1 - x^mu)^{-pi(mu)} chooses a
    // multiset of k primes of degree mu in C(pi + k - 1, k) ways.
    psi_.assign(max_smoothness + 1, std::vector<BigInt>(max_degree + 1, 0));
    psi_[0][0] = 1;
    for (std::size_t mu = 1; mu <= max_smoothness; ++mu) {
        std::vector<BigInt> ways(max_degree / mu + 1);
        for (std::size_t k = 0; k < ways.size(); ++k) ways[k] = binomial(pi_[mu] + k - 1, k);
        for (std::size_t v = 0; v <= max_degree; ++v) {
            BigInt total = 0;
            for (std::size_t k = 0; k * mu <= v; ++k) total += psi_[mu - 1][v - k * mu] * ways[k];
            psi_[mu][v] = total;
        }
    }
}

const BigInt& FriableTable::psi(std::size_t v, std::size_t mu) const {
    if (v > max_degree_ || mu == 0 || mu > max_smoothness_)
        throw Error(ErrorCode::InvalidArgument, "psi index outside the table");
    return psi_[mu][v];
}

const BigInt& FriableTable::irreducibles(std::size_t d) const {
    if (d == 0 || d > max_smoothness_) throw Error(ErrorCode::InvalidArgument, "degree outside the table");
    return pi_[d];
}

std::string FriableTable::to_csv() const {
    std::ostringstream os;
    os << "degree";
    for (std::size_t mu = 1; mu <= max_smoothness_; ++mu) os << ",m=" << mu;
    os << '\n';
    for (std::size_t v = 0; v <= max_degree_; ++v) {
        os << v;
        for (std::size_t mu = 1; mu <= max_smoothness_; ++mu) os << ',' << psi_[mu][v].get_str();
        os << '\n';
    }
    return os.str();
}

BigInt psi(std::uint64_t q, std::size_t n, std::size_t m) {
    if (m == 0) throw Error(ErrorCode::InvalidArgument, "smoothness bound must be >= 1");
    if (m >= n) {
        require_prime_power(q);
        return pow(BigInt(q), n);
    }
    return FriableTable(q, n, m).psi(n, m);
}

Rational friable_euler_product(std::uint64_t q, std::size_t m) {
    require_prime_power(q);
    Rational product = 1;
    for (std::size_t d = 1; d <= m; ++d) {
        // (1 - q^{-d})^{-1} = q^d / (q^d - 1)
        BigInt qd = pow(BigInt(q), d);
        Rational factor = ratio(qd, qd - 1);
        product *= pow(factor, count_irreducibles(q, d).get_ui());
    }
    return product;
}

Rational friable_tail(std::uint64_t q, std::size_t t, std::size_t m) {
    if (m == 0) throw Error(ErrorCode::InvalidArgument, "smoothness bound must be >= 1");
    Rational tail = friable_euler_product(q, m);
    if (t == 0) return tail;
    FriableTable table(q, t - 1, m);
    BigInt qv = 1;
    for (std::size_t v = 0; v < t; ++v) {
        tail -= ratio(table.psi(v, m), qv);
        qv *= q;
    }
    return tail;
}

Rational friable_tail_exact_top(std::uint64_t q, std::size_t t, std::size_t m) {
    if (m == 0) throw Error(ErrorCode::InvalidArgument, "smoothness bound must be >= 1");
    // With no primes allowed only the constant 1 survives, contributing 1 when t = 0.
    Rational below = m == 1 ? Rational(t == 0 ? 1 : 0) : friable_tail(q, t, m - 1);
    return friable_tail(q, t, m) - below;
}

Rational mertens_sum(std::uint64_t q, std::size_t max_degree) {
    if (max_degree == 0) throw Error(ErrorCode::InvalidArgument, "max degree must be >= 1");
    Rational sum = 0;
    BigInt qd = 1;
    for (std::size_t d = 1; d <= max_degree; ++d) {
        qd *= q;
        sum += ratio(count_irreducibles(q, d), qd);
    }
    return sum;
}

double warlimont_ratio(std::uint64_t q, std::size_t n, std::size_t m) {
    if (m < 3 || n < m) throw Error(ErrorCode::InvalidArgument, "warlimont_ratio needs n >= m >= 3");
    return ratio(psi(q, n, m), pow(BigInt(q), n)).get_d() * std::exp(static_cast<double>(n) / (2.0 * static_cast<double>(m)));
}

} // namespace fqcover
