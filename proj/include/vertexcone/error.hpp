#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace vcone {

enum class ErrorKind {
    InvalidInput,
    NotInvertible,
    ResourceLimit,
    NotInSimplex,
    SingularBasis,
    PreconditionViolated,
    InsufficientWeight,
    NoDecomposition,
    NoCertificate,
    Parse,
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::NotInvertible: return "not-invertible";
    case ErrorKind::ResourceLimit: return "resource-limit";
    case ErrorKind::NotInSimplex: return "not-in-simplex";
    case ErrorKind::SingularBasis: return "singular-basis";
    case ErrorKind::PreconditionViolated: return "precondition-violated";
    case ErrorKind::InsufficientWeight: return "insufficient-weight";
    case ErrorKind::NoDecomposition: return "no-decomposition";
    case ErrorKind::NoCertificate: return "no-certificate";
    case ErrorKind::Parse: return "parse-error";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, const std::string& what) {
    if (!cond)
        fail(ErrorKind::InvalidInput, what);
}

// Budgets shared by every search in the library. All caps are hard: an
// operation that would exceed one throws ResourceLimit instead of degrading.
struct Limits {
    std::uint64_t config_cap = 20'000'000;
    std::uint64_t node_cap = 20'000'000;
    std::uint64_t box_cap = 20'000'000;
    std::uint64_t pricing_dp_cap = 1u << 16;
    std::optional<std::chrono::milliseconds> time_cap;
    unsigned threads = 1;
};

class Deadline {
public:
    explicit Deadline(const Limits& limits) {
        if (limits.time_cap)
            end_ = std::chrono::steady_clock::now() + *limits.time_cap;
    }

    bool expired() const { return end_ && std::chrono::steady_clock::now() > *end_; }

    void check(const char* what) const {
        if (expired())
            fail(ErrorKind::ResourceLimit, std::string(what) + ": time cap exceeded");
    }

private:
    std::optional<std::chrono::steady_clock::time_point> end_;
};

} // namespace vcone
