#pragma once

#include "fqcover/poly.hpp"
#include "fqcover/rational.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace fqcover {

/// The residue class offset + <modulus>, modulus monic and nonconstant,
/// offset reduced below the modulus.
class ArithmeticProgression {
public:
    ArithmeticProgression(Poly offset, Poly modulus);

    const Poly& offset() const noexcept { return offset_; }
    const Poly& modulus() const noexcept { return modulus_; }
    bool contains(const Poly& f) const;

    friend bool operator==(const ArithmeticProgression&, const ArithmeticProgression&) = default;
    /// Modulus norm first, then the modulus, then the offset (canonical order).
    friend std::strong_ordering operator<=>(const ArithmeticProgression& a, const ArithmeticProgression& b);

private:
    Poly offset_;
    Poly modulus_;
};

/// A nonempty list of progressions kept sorted so that |d_1| <= ... <= |d_n|.
/// Duplicate progressions are allowed and count towards the multiplicity.
class CoveringSystem {
public:
    CoveringSystem(FieldPtr field, std::vector<ArithmeticProgression> progressions);

    const FieldPtr& field_ptr() const noexcept { return field_; }
    const Field& field() const noexcept { return *field_; }
    const std::vector<ArithmeticProgression>& progressions() const noexcept { return progressions_; }
    std::size_t size() const noexcept { return progressions_.size(); }

    CoveringSystem with(ArithmeticProgression extra) const;

private:
    FieldPtr field_;
    std::vector<ArithmeticProgression> progressions_;
};

/// Exhaustive work is allowed while q^{deg Q} <= 2^log2_residues.
struct ExhaustiveLimit {
    unsigned log2_residues = 24;

    bool allows(const Field& field, std::size_t degree) const;
    /// Throws Error(ExhaustiveLimitExceeded) when !allows(field, degree).
    void require(const Field& field, std::size_t degree) const;
};

struct CoverageReport {
    bool covers = false;
    /// Least uncovered residue mod Q in canonical order; present iff !covers.
    std::optional<Poly> witness;
    std::size_t lcm_degree = 0;
    std::uint64_t residues_checked = 0;
};

struct DensityReport {
    Rational sum;
    /// sum >= 1, which every covering system satisfies.
    bool may_cover = false;
};

std::size_t multiplicity(const CoveringSystem& system);
Poly lcm_modulus(const CoveringSystem& system);
bool is_distinct(const CoveringSystem& system);
DensityReport density_sum(const CoveringSystem& system);

/// Decides coverage by enumerating every residue mod Q.
CoverageReport covers(const CoveringSystem& system, ExhaustiveLimit limit = {});

/// Monic divisors of a nonzero f, in canonical order.
std::vector<Poly> monic_divisors(const Poly& f);

/// A distinct covering system whose moduli divide lcm_bound and all have
/// degree >= min_degree, or nothing when no such system exists.
std::optional<CoveringSystem> search_distinct(const FieldPtr& field, std::size_t min_degree, const Poly& lcm_bound,
                                              ExhaustiveLimit limit = {});

struct SamplerOptions {
    std::size_t max_lcm_degree = 12;
    std::size_t max_modulus_degree = 4;
    std::size_t max_progressions = 8;
};

/// Random system with deg Q <= max_lcm_degree. Mixes sparse random systems,
/// greedily completed covers and partially completed covers.
CoveringSystem random_system(const FieldPtr& field, const SamplerOptions& options, std::mt19937_64& rng);

} // namespace fqcover
