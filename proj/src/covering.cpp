#include "fqcover/covering.hpp"

#include "fqcover/error.hpp"
#include "fqcover/factor.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <utility>

namespace fqcover {

ArithmeticProgression::ArithmeticProgression(Poly offset, Poly modulus)
    : offset_(std::move(offset)), modulus_(std::move(modulus)) {
    if (!modulus_.is_monic()) throw Error(ErrorCode::NotMonic, "progression modulus must be monic");
    if (modulus_.deg() == 0) throw Error(ErrorCode::DegreeZero, "progression modulus must be nonconstant");
    offset_ = offset_ % modulus_;
}

bool ArithmeticProgression::contains(const Poly& f) const { return f % modulus_ == offset_; }

std::strong_ordering operator<=>(const ArithmeticProgression& a, const ArithmeticProgression& b) {
    if (auto c = a.modulus_ <=> b.modulus_; c != 0) return c;
    return a.offset_ <=> b.offset_;
}

CoveringSystem::CoveringSystem(FieldPtr field, std::vector<ArithmeticProgression> progressions)
    : field_(std::move(field)), progressions_(std::move(progressions)) {
    if (progressions_.empty()) throw Error(ErrorCode::EmptySystem, "a covering system needs at least one progression");
    for (const auto& a : progressions_)
        if (!(a.modulus().field() == *field_)) throw Error(ErrorCode::FieldMismatch, "progression over another field");
    std::sort(progressions_.begin(), progressions_.end());
}

CoveringSystem CoveringSystem::with(ArithmeticProgression extra) const {
    auto list = progressions_;
    list.push_back(std::move(extra));
    return CoveringSystem(field_, std::move(list));
}

bool ExhaustiveLimit::allows(const Field& field, std::size_t degree) const {
    return pow(BigInt(field.order()), degree) <= pow(BigInt(2), log2_residues);
}

void ExhaustiveLimit::require(const Field& field, std::size_t degree) const {
    if (!allows(field, degree))
        throw Error(ErrorCode::ExhaustiveLimitExceeded, std::to_string(field.order()) + "^" + std::to_string(degree) +
                                                            " residues exceed 2^" + std::to_string(log2_residues));
}

std::size_t multiplicity(const CoveringSystem& system) {
    std::size_t best = 0, run = 0;
    const auto& list = system.progressions();
    for (std::size_t i = 0; i < list.size(); ++i) {
        run = (i > 0 && list[i].modulus() == list[i - 1].modulus()) ? run + 1 : 1;
        best = std::max(best, run);
    }
    return best;
}

Poly lcm_modulus(const CoveringSystem& system) {
    Poly q = Poly::one(system.field_ptr());
    for (const auto& a : system.progressions()) q = lcm(q, a.modulus());
    return q;
}

bool is_distinct(const CoveringSystem& system) { return multiplicity(system) == 1; }

DensityReport density_sum(const CoveringSystem& system) {
    Rational sum = 0;
    for (const auto& a : system.progressions()) sum += ratio(1, a.modulus().norm());
    return {sum, sum >= 1};
}

CoverageReport covers(const CoveringSystem& system, ExhaustiveLimit limit) {
    const auto& field = system.field_ptr();
    const Field& F = *field;
    const Poly q_mod = lcm_modulus(system);
    const std::size_t degree = q_mod.deg();
    limit.require(F, degree);

    // Residues mod Q are walked as an odometer over their F_p coordinates,
    // coordinate (m, u) being the t^u part of the coefficient of x^m. A step
    // whose highest changed digit is P adds sum_{P' <= P} basis_{P'}, so each
    // progression keeps f mod d up to date with one vector addition.
    const std::uint32_t p = F.characteristic();
    const unsigned e = F.degree();
    const std::size_t digits = degree * e;

    struct Track {
        std::vector<FieldElem> target;
        std::vector<std::vector<FieldElem>> step;
        std::vector<FieldElem> rem;
    };
    std::vector<Track> tracks;
    for (const auto& a : system.progressions()) {
        const std::size_t n = a.modulus().deg();
        Track t;
        t.target.assign(n, F.zero());
        for (std::size_t i = 0; i < n; ++i) t.target[i] = a.offset().coeff(i);
        t.rem.assign(n, F.zero());
        Poly prefix(field);
        std::uint32_t unit = 1;
        for (std::size_t pos = 0; pos < digits; ++pos) {
            const std::size_t m = pos / e;
            if (pos % e == 0) unit = 1;
            prefix = prefix + Poly::monomial(field, FieldElem{unit}, m);
            unit *= p;
            Poly r = prefix % a.modulus();
            std::vector<FieldElem> v(n, F.zero());
            for (std::size_t i = 0; i < n; ++i) v[i] = r.coeff(i);
            t.step.push_back(std::move(v));
        }
        tracks.push_back(std::move(t));
    }

    std::uint64_t total = 1;
    for (std::size_t i = 0; i < degree; ++i) total *= F.order();

    std::vector<std::uint32_t> digit(digits, 0);
    std::optional<Poly> best;
    auto current = [&] {
        std::vector<FieldElem> coeffs(degree, F.zero());
        for (std::size_t m = 0; m < degree; ++m) {
            std::uint32_t idx = 0;
            for (unsigned u = e; u-- > 0;) idx = idx * p + digit[m * e + u];
            coeffs[m] = FieldElem{idx};
        }
        return Poly(field, std::move(coeffs));
    };

    for (std::uint64_t n = 0; n < total; ++n) {
        if (n > 0) {
            std::size_t pos = 0;
            while (digit[pos] == p - 1) digit[pos++] = 0;
            ++digit[pos];
            for (auto& t : tracks) {
                const auto& s = t.step[pos];
                for (std::size_t i = 0; i < s.size(); ++i) t.rem[i] = F.add(t.rem[i], s[i]);
            }
        }
        bool hit = false;
        for (const auto& t : tracks)
            if (t.rem == t.target) {
                hit = true;
                break;
            }
        if (!hit) {
            Poly f = current();
            if (!best || f < *best) best = std::move(f);
        }
    }

    CoverageReport report;
    report.covers = !best.has_value();
    report.witness = std::move(best);
    report.lcm_degree = degree;
    report.residues_checked = total;
    return report;
}

std::vector<Poly> monic_divisors(const Poly& f) {
    const auto factors = factor(f).factors;
    std::vector<Poly> out{Poly::one(f.field_ptr())};
    for (const auto& [prime, exponent] : factors) {
        std::vector<Poly> next;
        for (const auto& d : out) {
            Poly power = Poly::one(f.field_ptr());
            for (unsigned k = 0; k <= exponent; ++k) {
                next.push_back(d * power);
                power = power * prime;
            }
        }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Residues mod a bound, indexed by Poly::index, grouped by their class modulo
// each listed divisor.
struct ClassMap {
    std::uint64_t size = 0;
    std::vector<Poly> divisors;
    std::vector<std::vector<std::uint32_t>> cls;     // cls[k][f] = index of f mod divisors[k]
    std::vector<std::vector<std::uint32_t>> order;   // residues sorted by class
    std::vector<std::vector<std::uint32_t>> start;   // class c occupies order[start[c], start[c+1])

    ClassMap(const FieldPtr& field, const Poly& bound, std::vector<Poly> divs) : divisors(std::move(divs)) {
        size = 1;
        for (std::size_t i = 0; i < bound.deg(); ++i) size *= field->order();
        cls.resize(divisors.size());
        order.resize(divisors.size());
        start.resize(divisors.size());
        for (std::size_t k = 0; k < divisors.size(); ++k) cls[k].resize(size);
        for (std::uint64_t f = 0; f < size; ++f) {
            Poly poly = Poly::from_index(field, f);
            for (std::size_t k = 0; k < divisors.size(); ++k)
                cls[k][f] = static_cast<std::uint32_t>((poly % divisors[k]).index());
        }
        for (std::size_t k = 0; k < divisors.size(); ++k) {
            std::uint64_t classes = 1;
            for (std::size_t i = 0; i < divisors[k].deg(); ++i) classes *= field->order();
            std::vector<std::uint32_t> count(classes + 1, 0);
            for (auto c : cls[k]) ++count[c + 1];
            for (std::size_t c = 1; c <= classes; ++c) count[c] += count[c - 1];
            start[k] = count;
            order[k].resize(size);
            for (std::uint64_t f = 0; f < size; ++f) order[k][count[cls[k][f]]++] = static_cast<std::uint32_t>(f);
        }
    }

    std::uint64_t class_size(std::size_t k) const { return start[k][1] - start[k][0]; }
};

} // namespace

std::optional<CoveringSystem> search_distinct(const FieldPtr& field, std::size_t min_degree, const Poly& lcm_bound,
                                              ExhaustiveLimit limit) {
    if (!lcm_bound.is_monic()) throw Error(ErrorCode::NotMonic, "lcm bound must be monic");
    limit.require(*field, lcm_bound.deg());
    std::vector<Poly> eligible;
    for (auto& d : monic_divisors(lcm_bound))
        if (d.deg() >= std::max<std::size_t>(min_degree, 1)) eligible.push_back(std::move(d));
    if (eligible.empty()) return std::nullopt;

    const ClassMap map(field, lcm_bound, eligible);
    const std::size_t k_count = eligible.size();
    std::vector<char> covered(map.size, 0), used(k_count, 0);
    std::uint64_t uncovered = map.size;
    std::uint64_t capacity = 0;
    for (std::size_t k = 0; k < k_count; ++k) capacity += map.class_size(k);
    std::vector<std::pair<std::size_t, std::uint32_t>> chosen;

    // Branch on which unused modulus covers the least uncovered residue; the
    // offset is then forced, so the search is complete.
    std::function<bool(std::uint64_t)> dfs = [&](std::uint64_t from) -> bool {
        while (from < map.size && covered[from]) ++from;
        if (from == map.size) return true;
        if (capacity < uncovered) return false;
        for (std::size_t k = 0; k < k_count; ++k) {
            if (used[k]) continue;
            const std::uint32_t c = map.cls[k][from];
            std::vector<std::uint32_t> marked;
            for (auto i = map.start[k][c]; i < map.start[k][c + 1]; ++i) {
                auto f = map.order[k][i];
                if (!covered[f]) {
                    covered[f] = 1;
                    marked.push_back(f);
                }
            }
            used[k] = 1;
            uncovered -= marked.size();
            capacity -= map.class_size(k);
            chosen.emplace_back(k, c);
            if (dfs(from + 1)) return true;
            chosen.pop_back();
            capacity += map.class_size(k);
            uncovered += marked.size();
            used[k] = 0;
            for (auto f : marked) covered[f] = 0;
        }
        return false;
    };
    if (!dfs(0)) return std::nullopt;

    std::vector<ArithmeticProgression> list;
    for (auto [k, c] : chosen) list.emplace_back(Poly::from_index(field, c), eligible[k]);
    return CoveringSystem(field, std::move(list));
}

namespace {

Poly random_monic(const FieldPtr& field, std::size_t degree, std::mt19937_64& rng) {
    std::vector<FieldElem> coeffs(degree + 1);
    for (auto& c : coeffs) c = FieldElem{static_cast<std::uint32_t>(rng() % field->order())};
    coeffs[degree] = field->one();
    return Poly(field, std::move(coeffs));
}

Poly random_below(const FieldPtr& field, std::size_t degree, std::mt19937_64& rng) {
    std::vector<FieldElem> coeffs(degree);
    for (auto& c : coeffs) c = FieldElem{static_cast<std::uint32_t>(rng() % field->order())};
    return Poly(field, std::move(coeffs));
}

std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

CoveringSystem sparse_system(const FieldPtr& field, const SamplerOptions& opt, std::mt19937_64& rng) {
    const std::size_t target = pick(rng, 1, opt.max_progressions);
    std::vector<ArithmeticProgression> list;
    Poly q = Poly::one(field);
    for (std::size_t attempt = 0; attempt < 8 * target && list.size() < target; ++attempt) {
        Poly d = random_monic(field, pick(rng, 1, opt.max_modulus_degree), rng);
        Poly next = lcm(q, d);
        if (next.deg() > opt.max_lcm_degree) continue;
        q = std::move(next);
        list.emplace_back(random_below(field, d.deg(), rng), std::move(d));
    }
    if (list.empty()) list.emplace_back(random_below(field, 1, rng), random_monic(field, 1, rng));
    return CoveringSystem(field, std::move(list));
}

CoveringSystem greedy_system(const FieldPtr& field, const SamplerOptions& opt, bool complete, std::mt19937_64& rng) {
    // Keep the residue map small: q^{deg B} <= 2^14.
    std::size_t cap = 0;
    for (std::uint64_t size = field->order(); size <= (1u << 14); size *= field->order()) ++cap;
    cap = std::max<std::size_t>(1, std::min(cap, opt.max_lcm_degree));
    const std::size_t target = pick(rng, 1, cap);
    Poly bound = Poly::one(field);
    while (bound.deg() < target) {
        const std::size_t room = target - bound.deg();
        bound = bound * random_monic(field, pick(rng, 1, std::min<std::size_t>({room, 3, opt.max_modulus_degree})), rng);
    }
    std::vector<Poly> divs;
    for (auto& d : monic_divisors(bound))
        if (d.deg() >= 1 && d.deg() <= opt.max_modulus_degree) divs.push_back(std::move(d));
    if (divs.empty()) divs.push_back(factor(bound).factors.front().first);

    const ClassMap map(field, bound, divs);
    std::vector<char> covered(map.size, 0);
    std::uint64_t uncovered = map.size;
    const std::uint64_t stop = complete ? 0 : static_cast<std::uint64_t>(map.size * (rng() % 50) / 100);
    std::vector<ArithmeticProgression> list;
    while (uncovered > stop && list.size() < 64) {
        std::uint64_t u = rng() % map.size;
        while (covered[u]) u = (u + 1) % map.size;
        const std::size_t k = rng() % divs.size();
        const std::uint32_t c = map.cls[k][u];
        for (auto i = map.start[k][c]; i < map.start[k][c + 1]; ++i) {
            auto f = map.order[k][i];
            if (!covered[f]) {
                covered[f] = 1;
                --uncovered;
            }
        }
        list.emplace_back(Poly::from_index(field, c), divs[k]);
    }
    return CoveringSystem(field, std::move(list));
}

} // namespace

CoveringSystem random_system(const FieldPtr& field, const SamplerOptions& options, std::mt19937_64& rng) {
    if (options.max_lcm_degree == 0 || options.max_modulus_degree == 0 || options.max_progressions == 0)
        throw Error(ErrorCode::InvalidArgument, "sampler limits must be positive");
    switch (rng() % 3) {
    case 0: return sparse_system(field, options, rng);
    case 1: return greedy_system(field, options, true, rng);
    default: return greedy_system(field, options, false, rng);
    }
}

} // namespace fqcover
