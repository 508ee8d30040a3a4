#include "fqcover/distortion.hpp"

#include "fqcover/error.hpp"
#include "fqcover/friable.hpp"
#include "fqcover/system_io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <tuple>

namespace fqcover {

namespace {

void require_delta(const Rational& delta) {
    if (delta < 0 || delta > Rational(1, 2))
        throw Error(ErrorCode::InvalidArgument, "delta " + to_string(delta) + " outside [0, 1/2]");
}

/// Interning pool of relative densities.
class ValuePool {
public:
    std::uint32_t intern(const Rational& value) {
        auto [it, inserted] = ids_.try_emplace(value, static_cast<std::uint32_t>(values_.size()));
        if (inserted) values_.push_back(value);
        return it->second;
    }
    std::vector<Rational> take() { return std::move(values_); }

private:
    std::map<Rational, std::uint32_t> ids_;
    std::vector<Rational> values_;
};

Rational step_factor(std::uint64_t hits, std::uint64_t extensions, bool in_bad, const Rational& delta) {
    if (hits == 0) return 1;
    const Rational alpha = ratio(hits, extensions);
    if (alpha < delta) return in_bad ? Rational(0) : ratio(extensions, extensions - hits);
    if (in_bad) return (alpha - delta) / (alpha * (1 - delta));
    return 1 / (1 - delta);
}

std::uint64_t local_digits(const ResidueIndexer& indexer, std::uint64_t index, std::size_t i, unsigned e) {
    return indexer.component(index, i) % indexer.digit_power(i, e);
}

} // namespace

Rational BadSet::alpha(std::uint64_t parent) const { return ratio(hits(parent), extensions_); }

Rational MeasureTable::mass(std::uint64_t index) const {
    return relative_density(index) / Rational(BigInt(std::to_string(size())));
}

Rational MeasureTable::total() const {
    std::vector<std::uint64_t> count(values_.size(), 0);
    for (auto id : ids_) ++count[id];
    Rational sum = 0;
    for (std::size_t k = 0; k < values_.size(); ++k)
        if (count[k] != 0) sum += values_[k] * Rational(BigInt(std::to_string(count[k])));
    return sum / Rational(BigInt(std::to_string(size())));
}

bool MeasureTable::nonnegative() const {
    return std::all_of(values_.begin(), values_.end(), [](const Rational& v) { return v >= 0; });
}

DistortionModel::DistortionModel(const CoveringSystem& system, ExhaustiveLimit limit)
    : system_(system), indexer_(build_tower(system), limit) {
    const PrimeTower& tw = indexer_.tower();
    const auto& progs = system_.progressions();

    struct Split {
        std::size_t level;
        unsigned r;
        std::vector<unsigned> g;  // exponents of g = d / p_j^r at levels below
        std::vector<std::uint64_t> g_codes;
        std::uint64_t code;       // offset mod p_j^r
    };
    std::vector<Split> splits;
    for (const auto& ap : progs) {
        auto e = tower_exponents(tw, ap.modulus());
        Split s;
        s.level = tower_level(tw, ap.modulus());
        s.r = e[s.level - 1];
        s.g.assign(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(s.level - 1));
        for (std::size_t i = 1; i < s.level; ++i) s.g_codes.push_back(indexer_.local_code(ap.offset(), i, s.g[i - 1]));
        s.code = indexer_.local_code(ap.offset(), s.level, s.r);
        splits.push_back(std::move(s));
    }

    for (std::size_t j = 1; j <= tw.levels(); ++j) {
        BadSet bad;
        bad.level_ = j;
        bad.stride_ = indexer_.size(j - 1);
        bad.extensions_ = indexer_.block_size(j);
        for (std::size_t i = 0; i < splits.size(); ++i)
            if (splits[i].level == j) bad.progressions_.push_back(i);

        const Rational norm = Rational(tw.prime(j).norm());
        std::map<std::vector<std::uint8_t>, std::uint32_t> seen;
        bad.parent_pattern_.resize(bad.stride_);
        std::vector<std::uint8_t> live(bad.progressions_.size());
        for (std::uint64_t parent = 0; parent < bad.stride_; ++parent) {
            for (std::size_t k = 0; k < bad.progressions_.size(); ++k) {
                const Split& s = splits[bad.progressions_[k]];
                bool ok = true;
                for (std::size_t i = 1; i < j && ok; ++i)
                    ok = local_digits(indexer_, parent, i, s.g[i - 1]) == s.g_codes[i - 1];
                live[k] = ok ? 1 : 0;
            }
            auto [it, inserted] = seen.try_emplace(live, static_cast<std::uint32_t>(bad.patterns_.size()));
            if (inserted) {
                BadSet::Pattern pat;
                pat.member.assign(bad.extensions_, 0);
                pat.union_bound = 0;
                for (std::size_t k = 0; k < live.size(); ++k) {
                    if (!live[k]) continue;
                    const Split& s = splits[bad.progressions_[k]];
                    const std::uint64_t period = indexer_.digit_power(j, s.r);
                    for (std::uint64_t b = s.code; b < bad.extensions_; b += period) pat.member[b] = 1;
                    pat.union_bound += 1 / pow(norm, s.r);
                }
                pat.hits = static_cast<std::uint64_t>(std::count(pat.member.begin(), pat.member.end(), 1));
                bad.patterns_.push_back(std::move(pat));
            }
            bad.parent_pattern_[parent] = it->second;
        }
        bad_sets_.push_back(std::move(bad));
    }
}

const BadSet& DistortionModel::bad_set(std::size_t j) const {
    if (j < 1 || j > bad_sets_.size())
        throw Error(ErrorCode::LevelOutOfRange, "level " + std::to_string(j) + " outside 1.." +
                                                    std::to_string(bad_sets_.size()));
    return bad_sets_[j - 1];
}

Rational DistortionModel::alpha(std::size_t j, const Poly& f) const {
    const BadSet& bad = bad_set(j);
    return bad.alpha(indexer_.encode(f, j - 1));
}

MeasureTable DistortionModel::uniform() const {
    MeasureTable t;
    t.level_ = 0;
    t.ids_ = {0};
    t.values_ = {Rational(1)};
    return t;
}

MeasureTable DistortionModel::step(const MeasureTable& previous, const Rational& delta) const {
    require_delta(delta);
    const std::size_t j = previous.level() + 1;
    const BadSet& bad = bad_set(j);
    const std::uint64_t stride = bad.stride_;
    const std::uint64_t n = bad.extensions_;

    ValuePool pool;
    std::map<std::tuple<std::uint32_t, std::uint64_t, bool>, std::uint32_t> memo;
    std::map<std::uint64_t, std::pair<Rational, Rational>> factors;  // hits -> (outside, inside)

    MeasureTable out;
    out.level_ = j;
    out.ids_.resize(stride * n);
    for (std::uint64_t parent = 0; parent < stride; ++parent) {
        const auto& pat = bad.patterns_[bad.parent_pattern_[parent]];
        const std::uint32_t prev_id = previous.ids_[parent];
        for (std::uint64_t b = 0; b < n; ++b) {
            const bool in_bad = pat.member[b] != 0;
            auto key = std::make_tuple(prev_id, pat.hits, in_bad);
            auto it = memo.find(key);
            if (it == memo.end()) {
                auto f = factors.find(pat.hits);
                if (f == factors.end())
                    f = factors
                            .emplace(pat.hits, std::make_pair(step_factor(pat.hits, n, false, delta),
                                                              step_factor(pat.hits, n, true, delta)))
                            .first;
                const Rational& factor = in_bad ? f->second.second : f->second.first;
                it = memo.emplace(key, pool.intern(previous.values_[prev_id] * factor)).first;
            }
            out.ids_[parent + stride * b] = it->second;
        }
    }
    out.values_ = pool.take();
    return out;
}

Rational DistortionModel::moment(const MeasureTable& previous, unsigned k) const {
    const std::size_t j = previous.level() + 1;
    const BadSet& bad = bad_set(j);
    std::map<std::pair<std::uint32_t, std::uint64_t>, std::uint64_t> histogram;
    for (std::uint64_t parent = 0; parent < bad.stride_; ++parent)
        ++histogram[{previous.ids_[parent], bad.hits(parent)}];
    Rational sum = 0;
    for (const auto& [key, count] : histogram) {
        if (key.second == 0) continue;
        sum += previous.values_[key.first] * pow(ratio(key.second, bad.extensions_), k) *
               Rational(BigInt(std::to_string(count)));
    }
    return sum / Rational(BigInt(std::to_string(bad.stride_)));
}

Rational DistortionModel::bad_mass(const MeasureTable& table, std::size_t j) const {
    const BadSet& bad = bad_set(j);
    if (table.level() < j)
        throw Error(ErrorCode::LevelOutOfRange, "table level " + std::to_string(table.level()) + " below " +
                                                    std::to_string(j));
    const std::uint64_t modulus = indexer_.size(j);
    std::vector<std::uint64_t> count(table.values_.size(), 0);
    for (std::uint64_t index = 0; index < table.size(); ++index)
        if (bad.contains(index % modulus)) ++count[table.ids_[index]];
    Rational sum = 0;
    for (std::size_t k = 0; k < count.size(); ++k)
        if (count[k] != 0) sum += table.values_[k] * Rational(BigInt(std::to_string(count[k])));
    return sum / Rational(BigInt(std::to_string(table.size())));
}

Rational DistortionModel::class_mass(const MeasureTable& table, const Poly& f, const Poly& d) const {
    if (!d.is_monic()) throw Error(ErrorCode::NotMonic, format_poly(d));
    const auto e = tower_exponents(tower(), d);
    const std::size_t level = table.level();
    std::vector<std::uint64_t> target(level + 1, 0);
    for (std::size_t i = 1; i <= level; ++i) target[i] = indexer_.local_code(f, i, e[i - 1]);

    std::vector<std::uint64_t> count(table.values_.size(), 0);
    for (std::uint64_t index = 0; index < table.size(); ++index) {
        bool hit = true;
        for (std::size_t i = 1; i <= level && hit; ++i)
            hit = local_digits(indexer_, index, i, e[i - 1]) == target[i];
        if (hit) ++count[table.ids_[index]];
    }
    Rational sum = 0;
    for (std::size_t k = 0; k < count.size(); ++k)
        if (count[k] != 0) sum += table.values_[k] * Rational(BigInt(std::to_string(count[k])));
    sum /= Rational(BigInt(std::to_string(table.size())));
    // The part of d coprime to Q_level only splits fibres evenly.
    for (std::size_t i = level + 1; i <= tower().levels(); ++i)
        sum /= Rational(BigInt(std::to_string(indexer_.digit_power(i, e[i - 1]))));
    return sum;
}

DeltaSchedule explicit_schedule(std::vector<Rational> deltas) {
    for (const auto& d : deltas) require_delta(d);
    DeltaSchedule out;
    out.deltas = std::move(deltas);
    return out;
}

DeltaSchedule uniform_schedule(std::size_t levels, const Rational& delta) {
    return explicit_schedule(std::vector<Rational>(levels, delta));
}

DeltaSchedule schedule_auto(const CoveringSystem& system, const PrimeTower& tower, const Rational& c) {
    if (c < 0) throw Error(ErrorCode::InvalidArgument, "C must be nonnegative");
    const BigInt q = tower.field->order();
    const BigInt s = static_cast<unsigned long>(multiplicity(system));
    auto within = [&](std::size_t degree) {
        const Rational gap = Rational(BigInt(std::to_string(degree))) - c;
        if (gap <= 0) return true;
        // gap <= 3 log_q s  <=>  q^a <= s^{3b} for gap = a/b
        return pow(q, gap.get_num().get_ui()) <= pow(s, 3 * gap.get_den().get_ui());
    };
    DeltaSchedule out;
    out.source = DeltaSchedule::Source::Auto;
    out.c_value = c;
    std::size_t k = 0;
    for (std::size_t j = 1; j <= tower.levels(); ++j)
        if (within(tower.prime(j).deg())) k = j;
    for (std::size_t j = 1; j <= tower.levels(); ++j) out.deltas.push_back(j <= k ? Rational(0) : Rational(1, 2));
    return out;
}

std::optional<std::size_t> zero_then_half_split(const DeltaSchedule& schedule) {
    std::size_t k = 0;
    while (k < schedule.deltas.size() && schedule.deltas[k] == 0) ++k;
    for (std::size_t j = k; j < schedule.deltas.size(); ++j)
        if (schedule.deltas[j] != Rational(1, 2)) return std::nullopt;
    return k;
}

Rational m1_bound(const CoveringSystem& system, const PrimeTower& tower, std::size_t j) {
    if (j < 1 || j > tower.levels()) throw Error(ErrorCode::LevelOutOfRange, "level " + std::to_string(j));
    const std::size_t d1 = system.progressions().front().modulus().deg();
    const Rational tail = friable_tail_exact_top(tower.field->order(), d1, tower.prime(j).deg());
    return Rational(BigInt(std::to_string(multiplicity(system)))) * tail;
}

Rational m2_euler_factor(const BigInt& norm) {
    if (norm < 2) throw Error(ErrorCode::InvalidArgument, "norm must be at least 2");
    const Rational x = ratio(1, norm);
    const Rational y = 1 - x;
    return 1 + 2 * (2 * x / (y * y) + x / y);
}

Rational m2_bound(const CoveringSystem& system, const PrimeTower& tower, std::size_t j) {
    if (j < 1 || j > tower.levels()) throw Error(ErrorCode::LevelOutOfRange, "level " + std::to_string(j));
    const BigInt s = static_cast<unsigned long>(multiplicity(system));
    const BigInt gap = tower.prime(j).norm() - 1;
    Rational out = ratio(s * s, gap * gap);
    for (std::size_t i = 1; i < j; ++i) out *= m2_euler_factor(tower.prime(i).norm());
    return out;
}

Rational level_term(const Rational& m1, const Rational& m2, const Rational& delta) {
    if (delta == 0) return m1;
    const Rational second = m2 / (4 * delta * (1 - delta));
    return std::min(m1, second);
}

double theorem_threshold(std::uint64_t q, std::uint64_t s, double c) {
    if (q < 2 || s < 1 || !(c > 0)) throw Error(ErrorCode::InvalidArgument, "need q >= 2, s >= 1, c > 0");
    const double ds = static_cast<double>(s);
    const double logq_s = std::log(ds) / std::log(static_cast<double>(q));
    return 3.0 * (c + 3.0 * logq_s) * std::log(c * ds + 3.0 * ds * logq_s);
}

std::vector<MeasureTable> run_measures(const DistortionModel& model, const DeltaSchedule& schedule) {
    if (schedule.deltas.size() != model.levels())
        throw Error(ErrorCode::InvalidArgument, "schedule has " + std::to_string(schedule.deltas.size()) +
                                                    " entries for " + std::to_string(model.levels()) + " levels");
    std::vector<MeasureTable> tables{model.uniform()};
    for (std::size_t j = 1; j <= model.levels(); ++j) tables.push_back(model.step(tables.back(), schedule.deltas[j - 1]));
    return tables;
}

std::string system_digest(const CoveringSystem& system) {
    const std::string text = format_system(system);
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw Error(ErrorCode::InvalidArgument, "sha256 failed");
    std::string out = "sha256:";
    char buf[3];
    for (unsigned i = 0; i < len; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", md[i]);
        out += buf;
    }
    return out;
}

namespace {

Certificate skeleton(const CoveringSystem& system, const PrimeTower& tower, const DeltaSchedule& schedule,
                     CertifyMode mode) {
    if (schedule.deltas.size() != tower.levels())
        throw Error(ErrorCode::InvalidArgument, "schedule has " + std::to_string(schedule.deltas.size()) +
                                                    " entries for " + std::to_string(tower.levels()) + " levels");
    for (const auto& d : schedule.deltas) require_delta(d);
    Certificate cert;
    cert.digest = system_digest(system);
    cert.mode = mode;
    cert.tower = tower;
    cert.multiplicity = multiplicity(system);
    cert.schedule = schedule;
    cert.system_json = to_json(system);
    return cert;
}

void finish(Certificate& cert, const CoveringSystem& system, const CertifyOptions& options) {
    cert.eta = 0;
    for (const auto& level : cert.levels) cert.eta += level.term;
    cert.verdict = cert.eta < 1 ? Verdict::NotCoveringCertified : Verdict::Inconclusive;
    if (options.run_oracle && options.limit.allows(system.field(), lcm_modulus(system).deg())) {
        OracleCrossCheck check;
        check.report = covers(system, options.limit);
        check.consistent = !(check.report.covers && cert.verdict == Verdict::NotCoveringCertified);
        cert.oracle = std::move(check);
    }
}

bool zero_below(const DeltaSchedule& schedule, std::size_t j) {
    for (std::size_t i = 1; i < j; ++i)
        if (schedule.deltas[i - 1] != 0) return false;
    return true;
}

/// Masses of a table as integers over one common denominator.
struct IntegerMasses {
    std::vector<BigInt> numer;
    BigInt denom;
};

IntegerMasses integer_masses(const MeasureTable& table) {
    BigInt common = 1;
    for (const auto& v : table.values()) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), v.get_den_mpz_t());
    std::vector<BigInt> per_id;
    for (const auto& v : table.values()) per_id.push_back(v.get_num() * (common / v.get_den()));
    IntegerMasses out;
    out.numer.reserve(table.size());
    for (auto id : table.ids()) out.numer.push_back(per_id[id]);
    out.denom = common * BigInt(std::to_string(table.size()));
    return out;
}

} // namespace

Certificate certify_exact(const DistortionModel& model, const DeltaSchedule& schedule,
                          std::span<const MeasureTable> tables, const CertifyOptions& options) {
    const CoveringSystem& system = model.system();
    const PrimeTower& tower = model.tower();
    Certificate cert = skeleton(system, tower, schedule, CertifyMode::Exact);
    if (tables.size() != tower.levels() + 1) throw Error(ErrorCode::InvalidArgument, "wrong number of tables");

    CertificateChecks checks;
    for (const auto& t : tables) {
        checks.normalized = checks.normalized && t.total() == 1;
        checks.nonnegative = checks.nonnegative && t.nonnegative();
    }
    // bad[i][j] = P_i(B_j), from one pass of marginals per table.
    std::vector<std::vector<Rational>> bad(tables.size());
    for (std::size_t i = 1; i < tables.size(); ++i) {
        IntegerMasses masses = integer_masses(tables[i]);
        std::vector<BigInt> cur = std::move(masses.numer);
        bad[i].resize(i + 1);
        for (std::size_t k = i; k >= 1; --k) {
            const BadSet& set = model.bad_set(k);
            BigInt sum = 0;
            for (std::uint64_t r = 0; r < cur.size(); ++r)
                if (set.contains(r)) sum += cur[r];
            bad[i][k] = Rational(sum) / Rational(masses.denom);
            std::vector<BigInt> up(model.indexer().size(k - 1), 0);
            for (std::uint64_t r = 0; r < cur.size(); ++r) up[r % up.size()] += cur[r];
            cur = std::move(up);
        }
    }
    for (std::size_t j = 1; j <= tower.levels(); ++j) {
        const Rational& delta = schedule.deltas[j - 1];
        LevelReport r(j, tower.prime(j), tower.exponent(j), delta);
        r.m1 = model.moment(tables[j - 1], 1);
        r.m2 = model.moment(tables[j - 1], 2);
        if (zero_below(schedule, j)) r.m1_bound = m1_bound(system, tower, j);
        r.m2_bound = m2_bound(system, tower, j);
        r.term = level_term(*r.m1, *r.m2, delta);
        r.bad_mass = bad[j][j];
        r.bad_mass_final = bad[tower.levels()][j];

        checks.bad_mass_bounded = checks.bad_mass_bounded && *r.bad_mass <= r.term && *r.bad_mass <= *r.m1;
        for (std::size_t i = j + 1; i < tables.size(); ++i)
            checks.bad_mass_stable = checks.bad_mass_stable && bad[i][j] == *r.bad_mass;
        checks.bounds_dominate = checks.bounds_dominate && *r.m2 <= r.m2_bound &&
                                 (!r.m1_bound || *r.m1 <= *r.m1_bound);
        cert.levels.push_back(std::move(r));
    }
    cert.checks = checks;
    finish(cert, system, options);
    return cert;
}

Certificate certify(const CoveringSystem& system, const DeltaSchedule& schedule, CertifyMode mode,
                    const CertifyOptions& options) {
    if (mode == CertifyMode::Exact) {
        DistortionModel model(system, options.limit);
        if (schedule.deltas.size() != model.levels())
            throw Error(ErrorCode::InvalidArgument, "schedule has " + std::to_string(schedule.deltas.size()) +
                                                        " entries for " + std::to_string(model.levels()) + " levels");
        auto tables = run_measures(model, schedule);
        return certify_exact(model, schedule, tables, options);
    }

    const PrimeTower tower = build_tower(system);
    Certificate cert = skeleton(system, tower, schedule, CertifyMode::Bounded);
    auto split = zero_then_half_split(schedule);
    if (!split)
        throw Error(ErrorCode::ScheduleShapeInvalid, "bounded mode needs zeros followed only by 1/2");
    for (std::size_t j = 1; j <= tower.levels(); ++j) {
        LevelReport r(j, tower.prime(j), tower.exponent(j), schedule.deltas[j - 1]);
        if (j <= *split) r.m1_bound = m1_bound(system, tower, j);
        r.m2_bound = m2_bound(system, tower, j);
        r.term = j <= *split ? *r.m1_bound : r.m2_bound;
        cert.levels.push_back(std::move(r));
    }
    finish(cert, system, options);
    return cert;
}

std::string to_string(Verdict verdict) {
    return verdict == Verdict::NotCoveringCertified ? "NOT_COVERING_CERTIFIED" : "INCONCLUSIVE";
}

nlohmann::ordered_json to_json(const Certificate& cert) {
    using json = nlohmann::ordered_json;
    json out;
    out["digest"] = cert.digest;
    out["mode"] = cert.mode == CertifyMode::Exact ? "exact" : "bounded";
    out["system"] = cert.system_json;

    json tower;
    tower["Q"] = format_poly(cert.tower.modulus());
    tower["degree"] = cert.tower.modulus().deg();
    json primes = json::array();
    for (std::size_t j = 1; j <= cert.tower.levels(); ++j)
        primes.push_back({{"prime", format_poly(cert.tower.prime(j))},
                          {"exponent", cert.tower.exponent(j)},
                          {"norm", to_string(cert.tower.prime(j).norm())}});
    tower["primes"] = primes;
    out["tower"] = tower;
    out["multiplicity"] = cert.multiplicity;

    json schedule;
    schedule["source"] = cert.schedule.source == DeltaSchedule::Source::Auto ? "auto" : "explicit";
    if (cert.schedule.c_value) {
        schedule["C"] = to_string(*cert.schedule.c_value);
        schedule["log_base"] = "q";
    }
    json deltas = json::array();
    for (const auto& d : cert.schedule.deltas) deltas.push_back(to_string(d));
    schedule["deltas"] = deltas;
    out["schedule"] = schedule;

    json levels = json::array();
    auto opt = [](const std::optional<Rational>& v) { return v ? json(to_string(*v)) : json(nullptr); };
    for (const auto& r : cert.levels) {
        json l;
        l["level"] = r.level;
        l["prime"] = format_poly(r.prime);
        l["exponent"] = r.exponent;
        l["delta"] = to_string(r.delta);
        l["m1"] = opt(r.m1);
        l["m2"] = opt(r.m2);
        l["m1_bound"] = opt(r.m1_bound);
        l["m2_bound"] = to_string(r.m2_bound);
        l["term"] = to_string(r.term);
        l["bad_mass"] = opt(r.bad_mass);
        l["bad_mass_final"] = opt(r.bad_mass_final);
        levels.push_back(l);
    }
    out["levels"] = levels;
    out["eta"] = to_string(cert.eta);
    out["verdict"] = to_string(cert.verdict);
    if (cert.checks) {
        const auto& c = *cert.checks;
        out["checks"] = {{"normalized", c.normalized},
                         {"nonnegative", c.nonnegative},
                         {"bad_mass_bounded", c.bad_mass_bounded},
                         {"bad_mass_stable", c.bad_mass_stable},
                         {"bounds_dominate", c.bounds_dominate}};
    } else {
        out["checks"] = nullptr;
    }
    if (cert.oracle) {
        json o = to_json(cert.oracle->report);
        o["consistent"] = cert.oracle->consistent;
        out["oracle"] = o;
    } else {
        out["oracle"] = nullptr;
    }
    return out;
}

InequalityCheck check_alpha_bound(const DistortionModel& model) {
    InequalityCheck out;
    for (std::size_t j = 1; j <= model.levels(); ++j) {
        const BadSet& bad = model.bad_set(j);
        const std::uint64_t parents = model.indexer().size(j - 1);
        for (std::uint64_t parent = 0; parent < parents; ++parent) {
            ++out.cases;
            if (bad.alpha(parent) <= bad.union_bound(parent) || !out.holds) continue;
            out.holds = false;
            out.first_failure = "level " + std::to_string(j) + " residue " +
                                format_poly(model.indexer().decode(parent, j - 1));
        }
    }
    return out;
}

namespace {

/// Walks the divisors of Q_j from Q_j down, each class vector obtained from a
/// parent by dropping the top p_i-adic digit of one block.
struct DivisorWalk {
    const ResidueIndexer& idx;
    const DeltaSchedule& schedule;
    const IntegerMasses& masses;
    std::size_t level;
    InequalityCheck& out;

    void check(const std::vector<unsigned>& e, const std::vector<BigInt>& acc) {
        Rational bound = ratio(1, BigInt(std::to_string(acc.size())));
        for (std::size_t i = 1; i <= level; ++i)
            if (e[i - 1] > 0) bound /= 1 - schedule.deltas[i - 1];
        const BigInt& worst = *std::max_element(acc.begin(), acc.end());
        out.cases += acc.size();
        if (out.holds && Rational(worst) / Rational(masses.denom) > bound) {
            out.holds = false;
            Poly d = Poly::one(idx.tower().field);
            for (std::size_t i = 1; i <= level; ++i) d = d * pow(idx.tower().prime(i), e[i - 1]);
            out.first_failure = "level " + std::to_string(level) + " modulus " + format_poly(d);
        }
    }

    void visit(std::vector<unsigned>& e, const std::vector<BigInt>& acc, std::size_t start) {
        check(e, acc);
        for (std::size_t i = start; i < level; ++i) {
            if (e[i] == 0) continue;
            std::uint64_t low = 1;
            for (std::size_t k = 0; k < i; ++k) low *= idx.digit_power(k + 1, e[k]);
            const std::uint64_t span = idx.digit_power(i + 1, e[i]);
            const std::uint64_t kept = span / idx.digit_base(i + 1);
            std::vector<BigInt> next(acc.size() / idx.digit_base(i + 1), 0);
            for (std::uint64_t c = 0; c < acc.size(); ++c) {
                const std::uint64_t t = c / low;
                next[c % low + low * (t % span % kept) + low * kept * (t / span)] += acc[c];
            }
            --e[i];
            visit(e, next, i);
            ++e[i];
        }
    }
};

} // namespace

InequalityCheck check_progression_bound(const DistortionModel& model, std::span<const MeasureTable> tables,
                                        const DeltaSchedule& schedule) {
    InequalityCheck out;
    for (const MeasureTable& table : tables) {
        const std::size_t j = table.level();
        const IntegerMasses masses = integer_masses(table);
        // Divisors of Q_j suffice: the part of d coprime to Q_j scales both sides alike.
        std::vector<unsigned> e(model.tower().exponents.begin(),
                                model.tower().exponents.begin() + static_cast<std::ptrdiff_t>(j));
        DivisorWalk walk{model.indexer(), schedule, masses, j, out};
        walk.visit(e, masses.numer, 0);
    }
    return out;
}

} // namespace fqcover
