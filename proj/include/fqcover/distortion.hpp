#pragma once

#include "fqcover/covering.hpp"
#include "fqcover/rational.hpp"
#include "fqcover/tower.hpp"

#include "json.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fqcover {

/// B_j: the progressions whose modulus divides Q_j but not Q_{j-1}, viewed as
/// a subset of the residues mod Q_j.
///
/// Residues mod Q_j are split as parent (mod Q_{j-1}) and extension digit
/// b in [0, extensions()). Which progressions can meet the fibre over a parent
/// depends only on the parent, so parents are grouped into patterns that share
/// the set of live progressions and hence the exact same B_j-membership of
/// their extensions.
class BadSet {
public:
    std::size_t level() const noexcept { return level_; }
    /// Indices into the system's progression list.
    const std::vector<std::size_t>& progressions() const noexcept { return progressions_; }
    bool empty() const noexcept { return progressions_.empty(); }

    /// q^{deg Q_j - deg Q_{j-1}}, the number of lifts of a parent.
    std::uint64_t extensions() const noexcept { return extensions_; }
    /// Membership of the residue with the given index mod Q_j.
    bool contains(std::uint64_t index) const {
        const auto& pat = patterns_[parent_pattern_[index % stride_]];
        return pat.member[index / stride_] != 0;
    }
    /// Number of lifts of the parent (index mod Q_{j-1}) lying in B_j.
    std::uint64_t hits(std::uint64_t parent) const { return patterns_[parent_pattern_[parent]].hits; }
    /// alpha_j at any residue over the parent.
    Rational alpha(std::uint64_t parent) const;
    /// The union bound sum_{live i} |p_j|^{-r_i}, with p_j^{r_i} || d_i.
    const Rational& union_bound(std::uint64_t parent) const { return patterns_[parent_pattern_[parent]].union_bound; }

    std::size_t pattern_count() const noexcept { return patterns_.size(); }
    std::uint32_t pattern_of(std::uint64_t parent) const { return parent_pattern_[parent]; }
    std::uint64_t pattern_hits(std::uint32_t pattern) const { return patterns_[pattern].hits; }
    const Rational& pattern_union_bound(std::uint32_t pattern) const { return patterns_[pattern].union_bound; }

private:
    friend class DistortionModel;

    struct Pattern {
        std::vector<std::uint8_t> member;
        std::uint64_t hits = 0;
        Rational union_bound;
    };

    std::size_t level_ = 0;
    std::uint64_t stride_ = 1;
    std::uint64_t extensions_ = 1;
    std::vector<std::size_t> progressions_;
    std::vector<std::uint32_t> parent_pattern_;
    std::vector<Pattern> patterns_;
};

/// P_j as masses of the residue classes mod Q_j. Each residue mod Q in such a
/// class carries mass / q^{deg Q - deg Q_j}. Values are interned: entry r holds
/// an id into a small pool of relative densities (mass times the table size).
class MeasureTable {
public:
    std::size_t level() const noexcept { return level_; }
    std::uint64_t size() const noexcept { return ids_.size(); }

    Rational mass(std::uint64_t index) const;
    /// mass(index) * size()
    const Rational& relative_density(std::uint64_t index) const { return values_[ids_[index]]; }
    Rational total() const;
    bool nonnegative() const;

    std::span<const std::uint32_t> ids() const noexcept { return ids_; }
    std::span<const Rational> values() const noexcept { return values_; }

private:
    friend class DistortionModel;

    std::size_t level_ = 0;
    std::vector<std::uint32_t> ids_;
    std::vector<Rational> values_;
};

/// Everything the exact distortion computation needs for one system: the prime
/// tower, residue coordinates and the bad sets of every level.
class DistortionModel {
public:
    explicit DistortionModel(const CoveringSystem& system, ExhaustiveLimit limit = {});

    const CoveringSystem& system() const noexcept { return system_; }
    const PrimeTower& tower() const noexcept { return indexer_.tower(); }
    const ResidueIndexer& indexer() const noexcept { return indexer_; }
    std::size_t levels() const noexcept { return bad_sets_.size(); }

    /// 1 <= j <= J, else LevelOutOfRange.
    const BadSet& bad_set(std::size_t j) const;
    /// alpha_j(f) for any polynomial f; only f mod Q_{j-1} matters.
    Rational alpha(std::size_t j, const Poly& f) const;

    MeasureTable uniform() const;
    /// P_j from P_{j-1}; delta must lie in [0, 1/2].
    MeasureTable step(const MeasureTable& previous, const Rational& delta) const;
    /// M_j^{(k)} = E_{j-1}[alpha_j^k] for j = previous.level() + 1.
    Rational moment(const MeasureTable& previous, unsigned k) const;
    /// P_i(B_j) where i = table.level() >= j.
    Rational bad_mass(const MeasureTable& table, std::size_t j) const;
    /// P_i(f + <d>) for a monic d dividing Q.
    Rational class_mass(const MeasureTable& table, const Poly& f, const Poly& d) const;

private:
    CoveringSystem system_;
    ResidueIndexer indexer_;
    std::vector<BadSet> bad_sets_;
};

/// The distortion parameters delta_1..delta_J, each in [0, 1/2].
struct DeltaSchedule {
    enum class Source { Explicit, Auto };

    std::vector<Rational> deltas;
    Source source = Source::Explicit;
    /// The constant C of an automatic schedule.
    std::optional<Rational> c_value;
};

/// Throws InvalidArgument when some delta lies outside [0, 1/2].
DeltaSchedule explicit_schedule(std::vector<Rational> deltas);
DeltaSchedule uniform_schedule(std::size_t levels, const Rational& delta);
/// y = C + 3 log_q s; delta_j = 0 when deg p_j <= y and 1/2 otherwise. The
/// comparison deg p_j <= y is decided exactly.
DeltaSchedule schedule_auto(const CoveringSystem& system, const PrimeTower& tower, const Rational& c);
/// k when the schedule is k zeros followed only by 1/2; nothing otherwise.
std::optional<std::size_t> zero_then_half_split(const DeltaSchedule& schedule);

/// s * sum over monic d with deg d >= deg d_1 and largest prime degree
/// deg p_j of q^{-deg d}. Bounds M_j^{(1)} when delta_i = 0 for all i < j.
Rational m1_bound(const CoveringSystem& system, const PrimeTower& tower, std::size_t j);
/// s^2 / (|p_j| - 1)^2 * prod_{i<j} L(|p_i|). Bounds M_j^{(2)} for any schedule.
Rational m2_bound(const CoveringSystem& system, const PrimeTower& tower, std::size_t j);
/// L(P) = 1 + sum_{nu >= 1} 2(2nu+1)/P^nu in closed form.
Rational m2_euler_factor(const BigInt& norm);

/// min{M1, M2 / (4 delta (1 - delta))}, or M1 alone when delta = 0.
Rational level_term(const Rational& m1, const Rational& m2, const Rational& delta);

/// 3 (c + 3 log_q s) ln(c s + 3 s log_q s); the bare log is natural.
double theorem_threshold(std::uint64_t q, std::uint64_t s, double c);

enum class CertifyMode { Exact, Bounded };
enum class Verdict { NotCoveringCertified, Inconclusive };

struct LevelReport {
    LevelReport(std::size_t level, Poly prime, unsigned exponent, Rational delta)
        : level(level), prime(std::move(prime)), exponent(exponent), delta(std::move(delta)) {}

    std::size_t level = 0;
    Poly prime;
    unsigned exponent = 0;
    Rational delta;
    std::optional<Rational> m1;
    std::optional<Rational> m2;
    std::optional<Rational> m1_bound;
    Rational m2_bound;
    Rational term;
    std::optional<Rational> bad_mass;        // P_j(B_j)
    std::optional<Rational> bad_mass_final;  // P_J(B_j)
};

/// Self-checks recorded by exact certification.
struct CertificateChecks {
    bool normalized = true;        // every P_j sums to 1
    bool nonnegative = true;
    bool bad_mass_bounded = true;  // P_j(B_j) <= M1 and <= M2/(4 delta(1-delta)) when delta > 0
    bool bad_mass_stable = true;   // P_j(B_j) = P_{j+1}(B_j) = ... = P_J(B_j)
    bool bounds_dominate = true;   // M1 <= m1_bound where valid, M2 <= m2_bound

    bool all() const noexcept {
        return normalized && nonnegative && bad_mass_bounded && bad_mass_stable && bounds_dominate;
    }
};

struct OracleCrossCheck {
    CoverageReport report;
    /// False only if the system covers although certified as not covering.
    bool consistent = true;
};

struct Certificate {
    std::string digest;
    CertifyMode mode = CertifyMode::Exact;
    PrimeTower tower;
    std::size_t multiplicity = 0;
    DeltaSchedule schedule;
    std::vector<LevelReport> levels;
    Rational eta;
    Verdict verdict = Verdict::Inconclusive;
    std::optional<CertificateChecks> checks;
    std::optional<OracleCrossCheck> oracle;
    nlohmann::ordered_json system_json;
};

struct CertifyOptions {
    ExhaustiveLimit limit;
    bool run_oracle = true;
};

/// Exact mode evaluates the moments under the true measures and needs
/// q^{deg Q} within the limit; bounded mode uses m1_bound/m2_bound and needs a
/// zeros-then-halves schedule (else ScheduleShapeInvalid).
Certificate certify(const CoveringSystem& system, const DeltaSchedule& schedule, CertifyMode mode,
                    const CertifyOptions& options = {});

/// P_0, ..., P_J under the schedule.
std::vector<MeasureTable> run_measures(const DistortionModel& model, const DeltaSchedule& schedule);
Certificate certify_exact(const DistortionModel& model, const DeltaSchedule& schedule,
                          std::span<const MeasureTable> tables, const CertifyOptions& options = {});

/// "sha256:<hex>" of the canonical system text.
std::string system_digest(const CoveringSystem& system);
nlohmann::ordered_json to_json(const Certificate& certificate);
std::string to_string(Verdict verdict);

struct InequalityCheck {
    bool holds = true;
    std::uint64_t cases = 0;
    std::string first_failure;
};

/// alpha_j(f) <= union bound at every residue of every level.
InequalityCheck check_alpha_bound(const DistortionModel& model);
/// P_j(f + <d>) <= q^{-deg d} prod_{p_i | d, i <= j} (1 - delta_i)^{-1} for every
/// level j, monic d | Q and class mod d.
InequalityCheck check_progression_bound(const DistortionModel& model, std::span<const MeasureTable> tables,
                                        const DeltaSchedule& schedule);

} // namespace fqcover
