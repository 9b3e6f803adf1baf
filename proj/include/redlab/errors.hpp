#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace redlab {

// Configuration problems: malformed study files, targets referencing
// unknown points, values out of range. CLI maps these to exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A factorization (or similar) budget ran out. Carries the offending
// cofactor so the message can name it. CLI maps these to exit code 5.
struct BudgetError : std::runtime_error {
    std::uint64_t cofactor;
    BudgetError(const std::string& what, std::uint64_t cofactor)
        : std::runtime_error(what), cofactor(cofactor) {}
};

// A declared presentation contradicts itself (non-cyclic component
// torsion, component character of the wrong order, ...).
struct PresentationError : std::runtime_error {
    explicit PresentationError(const std::string& what) : std::runtime_error(what) {}
};

// Cache file does not belong to this study/bound or has a wrong version.
struct CacheStale : std::runtime_error {
    explicit CacheStale(const std::string& what) : std::runtime_error(what) {}
};

// Cache file is structurally damaged (truncation, bad magic, trailing bytes).
struct CacheCorrupt : std::runtime_error {
    explicit CacheCorrupt(const std::string& what) : std::runtime_error(what) {}
};

// Kummer level construction / evaluation errors (base not power-free,
// level too low, missing stabilization).
struct KummerError : std::runtime_error {
    explicit KummerError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace redlab
