#include "fqcover/system_io.hpp"

#include "fqcover/error.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace fqcover {

namespace {

std::string strip(std::string_view s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    return out;
}

std::uint64_t parse_uint(const std::string& s, const std::string& context) {
    if (s.empty() || s.size() > 18) throw Error(ErrorCode::SyntaxError, "bad integer in '" + context + "'");
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) throw Error(ErrorCode::SyntaxError, "bad integer in '" + context + "'");
    return std::stoull(s);
}

} // namespace

FieldPtr parse_field_header(std::string_view line) {
    const std::string s = strip(line);
    if (s.rfind("q=", 0) != 0) throw Error(ErrorCode::SyntaxError, "expected 'q=' header, got '" + s + "'");
    std::string rest = s.substr(2);
    std::string modulus_text;
    if (auto semi = rest.find(';'); semi != std::string::npos) {
        std::string tail = rest.substr(semi + 1);
        rest = rest.substr(0, semi);
        if (tail.rfind("modulus=", 0) != 0) throw Error(ErrorCode::SyntaxError, "expected 'modulus=' in '" + s + "'");
        modulus_text = tail.substr(8);
    }
    std::uint64_t p = 0;
    unsigned e = 1;
    if (auto caret = rest.find('^'); caret != std::string::npos) {
        p = parse_uint(rest.substr(0, caret), s);
        e = static_cast<unsigned>(parse_uint(rest.substr(caret + 1), s));
    } else {
        p = parse_uint(rest, s);
    }
    if (modulus_text.empty()) {
        if (e == 1 && !is_prime(p)) return Field::from_order(p);
        return Field::make(p, e);
    }
    auto base = Field::make(p, 1);
    Poly m = parse_poly(modulus_text, base, 't');
    std::vector<std::uint32_t> coeffs;
    for (auto c : m.coefficients()) coeffs.push_back(c.index);
    return Field::make(p, e, coeffs);
}

CoveringSystem parse_system(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    FieldPtr field;
    std::vector<ArithmeticProgression> list;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        if (strip(raw).empty()) continue;
        if (!field) {
            field = parse_field_header(raw);
            continue;
        }
        auto bar = raw.find('|');
        if (bar == std::string::npos)
            throw Error(ErrorCode::SyntaxError, "line " + std::to_string(line_no) + ": expected '<offset> | <modulus>'");
        Poly offset = parse_poly(raw.substr(0, bar), field);
        Poly modulus = parse_poly(raw.substr(bar + 1), field);
        list.emplace_back(std::move(offset), std::move(modulus));
    }
    if (!field) throw Error(ErrorCode::SyntaxError, "missing 'q=' header");
    return CoveringSystem(field, std::move(list));
}

CoveringSystem load_system(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_system(buf.str());
}

std::string format_system(const CoveringSystem& system) {
    std::string out = system.field().header() + "\n";
    for (const auto& a : system.progressions())
        out += format_poly(a.offset()) + " | " + format_poly(a.modulus()) + "\n";
    return out;
}

nlohmann::ordered_json to_json(const CoveringSystem& system) {
    const Field& F = system.field();
    nlohmann::ordered_json j;
    j["q"] = F.order();
    j["p"] = F.characteristic();
    j["e"] = F.degree();
    if (F.degree() > 1) {
        std::vector<FieldElem> coeffs;
        for (auto c : F.modulus()) coeffs.push_back({c});
        j["modulus"] = format_poly(Poly(Field::make(F.characteristic(), 1), coeffs), 't');
    } else {
        j["modulus"] = nullptr;
    }
    auto list = nlohmann::ordered_json::array();
    for (const auto& a : system.progressions())
        list.push_back({{"offset", format_poly(a.offset())}, {"modulus", format_poly(a.modulus())}});
    j["progressions"] = std::move(list);
    return j;
}

nlohmann::ordered_json to_json(const CoverageReport& report) {
    nlohmann::ordered_json j;
    j["covers"] = report.covers;
    j["witness"] = report.witness ? nlohmann::ordered_json(format_poly(*report.witness)) : nlohmann::ordered_json(nullptr);
    j["lcm_degree"] = report.lcm_degree;
    j["residues_checked"] = report.residues_checked;
    return j;
}

} // namespace fqcover
