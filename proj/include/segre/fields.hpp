#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "segre/common.hpp"
#include "segre/ext_field.hpp"
#include "segre/prime_field.hpp"
#include "segre/rational.hpp"

namespace segre {

using FieldHandle = std::variant<RationalField, PrimeField, ExtField>;

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(s.substr(start));
            break;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

inline std::uint64_t parse_u64(const std::string& s, const char* what) {
    if (s.empty()) fail(ErrorKind::ConfigError, std::string("empty ") + what);
    std::uint64_t v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') fail(ErrorKind::ConfigError, std::string("bad ") + what + ": " + s);
        v = v * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return v;
}

}  // namespace detail

// Field strings: "Q" | "Fp:<p>" | "Fq:<p>:<k>" (modulus by seeded search) |
// "Fq:<p>:<k>:<c0,c1,...,ck>" (explicit monic modulus).
inline FieldHandle parse_field(const std::string& s, std::uint64_t seed = 0) {
    if (s == "Q") return RationalField{};
    auto parts = detail::split(s, ':');
    if (parts.size() == 2 && parts[0] == "Fp")
        return PrimeField(detail::parse_u64(parts[1], "prime"));
    if ((parts.size() == 3 || parts.size() == 4) && parts[0] == "Fq") {
        std::uint64_t p = detail::parse_u64(parts[1], "prime");
        std::uint64_t k = detail::parse_u64(parts[2], "extension degree");
        if (k == 0 || k > 64) fail(ErrorKind::ConfigError, "extension degree out of range");
        if (parts.size() == 4) {
            std::vector<std::uint64_t> mod;
            for (const auto& c : detail::split(parts[3], ','))
                mod.push_back(detail::parse_u64(c, "modulus coefficient"));
            return ExtField(p, mod);
        }
        return make_extension_field(p, static_cast<std::uint32_t>(k), seed);
    }
    fail(ErrorKind::ConfigError, "unrecognized field string: " + s);
}

inline std::string field_name(const FieldHandle& f) {
    return std::visit([](const auto& fld) { return fld.name(); }, f);
}

}  // namespace segre
