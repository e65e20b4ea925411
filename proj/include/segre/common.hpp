#pragma once

#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace segre {

enum class ErrorKind {
    DivisionByZero,
    MixedFields,
    NotPrime,
    HeightExceeded,
    DimensionMismatch,
    SingularMatrix,
    HeterogeneousTuple,
    NotHomogeneous,
    EmptyInput,
    AmbientMismatch,
    CenterContainsPoint,
    ZeroVector,
    IndexOutOfRange,
    ZeroHyperplane,
    FieldTooSmall,
    GenericityViolation,
    EnumerationTooLarge,
    CocycleViolation,
    PermDimMismatch,
    CoverageFailure,
    AveragingDegenerate,
    DegenerateSection,
    NoEquationFound,
    InsufficientSamples,
    ConfigError,
};

inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::DivisionByZero: return "DivisionByZero";
        case ErrorKind::MixedFields: return "MixedFields";
        case ErrorKind::NotPrime: return "NotPrime";
        case ErrorKind::HeightExceeded: return "HeightExceeded";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::SingularMatrix: return "SingularMatrix";
        case ErrorKind::HeterogeneousTuple: return "HeterogeneousTuple";
        case ErrorKind::NotHomogeneous: return "NotHomogeneous";
        case ErrorKind::EmptyInput: return "EmptyInput";
        case ErrorKind::AmbientMismatch: return "AmbientMismatch";
        case ErrorKind::CenterContainsPoint: return "CenterContainsPoint";
        case ErrorKind::ZeroVector: return "ZeroVector";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::ZeroHyperplane: return "ZeroHyperplane";
        case ErrorKind::FieldTooSmall: return "FieldTooSmall";
        case ErrorKind::GenericityViolation: return "GenericityViolation";
        case ErrorKind::EnumerationTooLarge: return "EnumerationTooLarge";
        case ErrorKind::CocycleViolation: return "CocycleViolation";
        case ErrorKind::PermDimMismatch: return "PermDimMismatch";
        case ErrorKind::CoverageFailure: return "CoverageFailure";
        case ErrorKind::AveragingDegenerate: return "AveragingDegenerate";
        case ErrorKind::DegenerateSection: return "DegenerateSection";
        case ErrorKind::NoEquationFound: return "NoEquationFound";
        case ErrorKind::InsufficientSamples: return "InsufficientSamples";
        case ErrorKind::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

namespace config {

// Bit-length ceiling for rational numerators/denominators.  Overridable via
// the SEGRE_MAX_BITS environment variable (read by the CLI / runner).
inline std::atomic<std::uint64_t>& max_rational_bits() {
    static std::atomic<std::uint64_t> bits{1000000};
    return bits;
}

inline void set_max_rational_bits(std::uint64_t b) { max_rational_bits().store(b); }

}  // namespace config

// Counter-based deterministic generator (splitmix64).  Streams derived from
// (seed, stream_id) are independent, so work items can be parallelized
// without any draw depending on scheduling.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(mix(seed ^ 0x9e3779b97f4a7c15ull)) {}

    static Rng stream(std::uint64_t seed, std::uint64_t stream_id) {
        Rng r(seed);
        r.state_ = mix(r.state_ + mix(stream_id + 0xbf58476d1ce4e5b9ull));
        return r;
    }

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ull;
        return mix(state_);
    }

    // Uniform draw in [0, n).  Rejection keeps the distribution exact.
    std::uint64_t bounded(std::uint64_t n) {
        if (n == 0) fail(ErrorKind::IndexOutOfRange, "bounded(0)");
        const std::uint64_t limit = UINT64_MAX / n * n;
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % n;
    }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

}  // namespace segre
