// fqcover: covering systems of F_q[x] from the command line.
//
// Exit codes: 0 covers / certified / found, 1 the negative outcome, 2 error.

#include "fqcover/algebra.hpp"
#include "fqcover/covering.hpp"
#include "fqcover/distortion.hpp"
#include "fqcover/error.hpp"
#include "fqcover/friable.hpp"
#include "fqcover/system_io.hpp"
#include "fqcover/tower.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

using namespace fqcover;
using json = nlohmann::ordered_json;

namespace {

struct Common {
    std::uint64_t q = 0;
    std::string ext_modulus;
    unsigned limit = 24;
    bool json = false;
};

void add_common(CLI::App* cmd, Common& c, bool with_field) {
    if (with_field) {
        cmd->add_option("--q", c.q, "field order (prime power)");
        cmd->add_option("--ext-modulus", c.ext_modulus, "defining polynomial in t for extension fields");
    }
    cmd->add_option("--limit", c.limit, "exhaustive work allowed up to q^deg Q <= 2^limit")->check(CLI::Range(1u, 40u));
    cmd->add_flag("--json", c.json, "machine readable output");
}

FieldPtr field_from(const Common& c) {
    if (c.q == 0) throw Error(ErrorCode::InvalidArgument, "--q is required");
    if (c.ext_modulus.empty()) return Field::from_order(c.q);
    std::uint64_t p = 2;
    while (c.q % p != 0) ++p;
    unsigned e = 0;
    for (std::uint64_t r = c.q; r > 1; r /= p) {
        if (r % p != 0) throw Error(ErrorCode::CompositeCharacteristic, std::to_string(c.q) + " is not a prime power");
        ++e;
    }
    return parse_field_header("q=" + std::to_string(p) + "^" + std::to_string(e) + ";modulus=" + c.ext_modulus);
}

CoveringSystem read_system(const std::string& path, const Common& c) {
    CoveringSystem system = load_system(path);
    if (c.q != 0 && system.field().order() != c.q)
        throw Error(ErrorCode::FieldMismatch, "file is over q=" + std::to_string(system.field().order()) +
                                                  ", --q says " + std::to_string(c.q));
    return system;
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

DeltaSchedule read_schedule_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read " + path);
    std::vector<Rational> deltas;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream words(line);
        std::string word;
        while (words >> word) deltas.push_back(parse_rational(word));
    }
    return explicit_schedule(std::move(deltas));
}

int run_verify(const std::string& path, const Common& c) {
    CoveringSystem system = read_system(path, c);
    CoverageReport report = covers(system, ExhaustiveLimit{c.limit});
    if (c.json) {
        json out;
        out["system"] = to_json(system);
        out["report"] = to_json(report);
        emit(out);
    } else if (report.covers) {
        std::cout << "covers (" << report.residues_checked << " residues checked)\n";
    } else {
        std::cout << "does not cover; witness " << format_poly(*report.witness) << '\n';
    }
    return report.covers ? 0 : 1;
}

int run_certify(const std::string& path, const Common& c, const std::string& mode_text, const std::string& schedule_text,
                const std::string& delta_text, bool no_oracle) {
    CoveringSystem system = read_system(path, c);
    const CertifyMode mode = mode_text == "bounded" ? CertifyMode::Bounded : CertifyMode::Exact;
    const PrimeTower tower = build_tower(system);

    DeltaSchedule schedule;
    if (!delta_text.empty() && !schedule_text.empty())
        throw Error(ErrorCode::InvalidArgument, "--delta and --schedule are exclusive");
    if (!delta_text.empty()) {
        schedule = uniform_schedule(tower.levels(), parse_rational(delta_text));
    } else if (schedule_text.empty() || schedule_text.rfind("auto:", 0) == 0) {
        const Rational cval = schedule_text.empty() ? Rational(0) : parse_rational(schedule_text.substr(5));
        schedule = schedule_auto(system, tower, cval);
    } else if (schedule_text.rfind("file:", 0) == 0) {
        schedule = read_schedule_file(schedule_text.substr(5));
    } else {
        throw Error(ErrorCode::InvalidArgument, "schedule must be auto:<C> or file:<path>");
    }

    CertifyOptions options;
    options.limit = ExhaustiveLimit{c.limit};
    options.run_oracle = !no_oracle;
    Certificate cert = certify(system, schedule, mode, options);
    if (c.json) {
        emit(to_json(cert));
    } else {
        std::cout << "digest  " << cert.digest << '\n';
        std::cout << "Q       " << format_poly(cert.tower.modulus()) << "  (J=" << cert.tower.levels()
                  << ", s=" << cert.multiplicity << ")\n";
        for (const auto& r : cert.levels) {
            std::cout << "level " << r.level << "  p=" << format_poly(r.prime) << "^" << r.exponent
                      << "  delta=" << to_string(r.delta);
            if (r.m1) std::cout << "  M1=" << to_string(*r.m1);
            if (r.m2) std::cout << "  M2=" << to_string(*r.m2);
            std::cout << "  term=" << to_string(r.term) << '\n';
        }
        std::cout << "eta     " << to_string(cert.eta) << '\n';
        std::cout << "verdict " << to_string(cert.verdict) << '\n';
        if (cert.oracle) {
            std::cout << "oracle  " << (cert.oracle->report.covers ? "covers" : "does not cover");
            if (cert.oracle->report.witness) std::cout << "; witness " << format_poly(*cert.oracle->report.witness);
            std::cout << '\n';
        }
    }
    if (cert.oracle && !cert.oracle->consistent) return 2;
    return cert.verdict == Verdict::NotCoveringCertified ? 0 : 1;
}

int run_friable(const Common& c, std::size_t n, std::size_t m, bool csv, std::optional<std::size_t> tail) {
    if (c.q == 0) throw Error(ErrorCode::InvalidArgument, "--q is required");
    if (m == 0) throw Error(ErrorCode::InvalidArgument, "--m must be positive");
    if (csv) {
        std::cout << FriableTable(c.q, n, m).to_csv();
        return 0;
    }
    const BigInt value = psi(c.q, n, m);
    if (c.json) {
        json out{{"q", c.q}, {"n", n}, {"m", m}, {"psi", to_string(value)}};
        if (tail) {
            out["tail"] = to_string(friable_tail(c.q, *tail, m));
            out["tail_exact_top"] = to_string(friable_tail_exact_top(c.q, *tail, m));
        }
        emit(out);
    } else {
        std::cout << to_string(value) << '\n';
        if (tail) {
            std::cout << "tail " << to_string(friable_tail(c.q, *tail, m)) << '\n';
            std::cout << "tail_exact_top " << to_string(friable_tail_exact_top(c.q, *tail, m)) << '\n';
        }
    }
    return 0;
}

int run_mertens(const Common& c, std::size_t max_degree) {
    if (c.q == 0) throw Error(ErrorCode::InvalidArgument, "--q is required");
    const Rational total = mertens_sum(c.q, max_degree);
    if (c.json) {
        json rows = json::array();
        for (std::size_t d = 1; d <= max_degree; ++d)
            rows.push_back({{"degree", d},
                            {"irreducibles", to_string(count_irreducibles(c.q, d))},
                            {"sum", to_string(mertens_sum(c.q, d))}});
        emit(json{{"q", c.q}, {"max_degree", max_degree}, {"sum", to_string(total)}, {"rows", rows}});
    } else {
        std::cout << to_string(total) << '\n';
    }
    return 0;
}

int run_bound(const Common& c, std::uint64_t s, double cval) {
    if (c.q == 0) throw Error(ErrorCode::InvalidArgument, "--q is required");
    const double value = theorem_threshold(c.q, s, cval);
    if (c.json) {
        emit(json{{"q", c.q}, {"s", s}, {"c", cval}, {"log_base", "natural"}, {"threshold", value}});
    } else {
        std::cout << std::setprecision(12) << value << '\n';
    }
    return 0;
}

int run_search(const Common& c, std::size_t min_degree, const std::string& bound_text) {
    FieldPtr field = field_from(c);
    const Poly bound = parse_poly(bound_text, field);
    auto found = search_distinct(field, min_degree, bound, ExhaustiveLimit{c.limit});
    if (c.json) {
        emit(json{{"found", found.has_value()}, {"system", found ? to_json(*found) : json(nullptr)}});
    } else if (found) {
        std::cout << format_system(*found);
    } else {
        std::cout << "no distinct covering system\n";
    }
    return found ? 0 : 1;
}

int run_sample(const Common& c, std::uint64_t seed, const SamplerOptions& options) {
    FieldPtr field = field_from(c);
    std::mt19937_64 rng(seed);
    CoveringSystem system = random_system(field, options, rng);
    if (c.json)
        emit(to_json(system));
    else
        std::cout << format_system(system);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Covering systems of F_q[x]: brute-force verification and distortion certificates"};
    app.require_subcommand(1);

    Common common;
    std::string path, mode = "exact", schedule, delta, bound_text;
    bool no_oracle = false, csv = false;
    std::size_t n = 0, m = 1, max_degree = 1, min_degree = 1;
    std::optional<std::size_t> tail;
    std::uint64_t s = 1, seed = 0;
    double cval = 1.0;
    SamplerOptions sampler;

    auto* verify = app.add_subcommand("verify", "decide coverage by enumerating residues mod Q");
    verify->add_option("file", path, "system file")->required();
    add_common(verify, common, true);

    auto* cert = app.add_subcommand("certify", "certify non-coverage with the distortion method");
    cert->add_option("file", path, "system file")->required();
    add_common(cert, common, true);
    cert->add_option("--mode", mode, "exact or bounded")->check(CLI::IsMember({"exact", "bounded"}));
    cert->add_option("--schedule", schedule, "auto:<C> or file:<path>");
    cert->add_option("--delta", delta, "the same delta at every level");
    cert->add_flag("--no-oracle", no_oracle, "skip the brute-force cross-check");

    auto* fri = app.add_subcommand("friable", "count friable monic polynomials");
    add_common(fri, common, true);
    fri->add_option("--n", n, "degree")->required();
    fri->add_option("--m", m, "smoothness bound")->required();
    fri->add_flag("--csv", csv, "table for all degrees <= n and bounds <= m");
    fri->add_option("--tail", tail, "also print the tail sums from this degree");

    auto* mer = app.add_subcommand("mertens", "sum of 1/|p| over primes of degree <= N");
    add_common(mer, common, true);
    mer->add_option("--max-degree", max_degree, "N")->required();

    auto* bnd = app.add_subcommand("bound", "evaluate the multiplicity threshold");
    add_common(bnd, common, true);
    bnd->add_option("--s", s, "multiplicity")->required();
    bnd->add_option("--c", cval, "constant c > 0")->required();

    auto* srch = app.add_subcommand("search", "find a distinct covering system with moduli dividing a bound");
    add_common(srch, common, true);
    srch->add_option("--min-degree", min_degree, "least modulus degree")->required();
    srch->add_option("--lcm-bound", bound_text, "every modulus divides this monic polynomial")->required();

    auto* smp = app.add_subcommand("sample", "print a random system");
    add_common(smp, common, true);
    smp->add_option("--seed", seed, "random seed");
    smp->add_option("--max-lcm-degree", sampler.max_lcm_degree, "bound on deg Q");
    smp->add_option("--max-modulus-degree", sampler.max_modulus_degree, "bound on each modulus degree");
    smp->add_option("--max-progressions", sampler.max_progressions, "bound on the number of progressions");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*verify) return run_verify(path, common);
        if (*cert) return run_certify(path, common, mode, schedule, delta, no_oracle);
        if (*fri) return run_friable(common, n, m, csv, tail);
        if (*mer) return run_mertens(common, max_degree);
        if (*bnd) return run_bound(common, s, cval);
        if (*srch) return run_search(common, min_degree, bound_text);
        if (*smp) return run_sample(common, seed, sampler);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
