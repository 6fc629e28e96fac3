#pragma once

#include <stdexcept>
#include <string>

namespace bmdist {

/// Matrix is singular (or below the scale-free singularity threshold).
struct SingularMatrix : std::domain_error {
    explicit SingularMatrix(const std::string& what) : std::domain_error(what) {}
};

/// Argument outside the documented domain of the operation.
struct OutOfRange : std::domain_error {
    explicit OutOfRange(const std::string& what) : std::domain_error(what) {}
};

/// No closed-form distance exists when p < 2 < q.
struct SidesStraddleTwo : std::domain_error {
    explicit SidesStraddleTwo(const std::string& what) : std::domain_error(what) {}
};

/// chain_bound was called with no anchors.
struct EmptyAnchors : std::invalid_argument {
    explicit EmptyAnchors(const std::string& what) : std::invalid_argument(what) {}
};

/// Every optimizer restart exceeded the feasibility threshold.
struct InfeasibleSearch : std::runtime_error {
    explicit InfeasibleSearch(const std::string& what) : std::runtime_error(what) {}
};

/// A certified enclosure is wider than allowed at the requested precision.
struct PrecisionExhausted : std::runtime_error {
    explicit PrecisionExhausted(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input text (matrix file, number literal, ledger record).
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid or unknown optimizer configuration.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bmdist
