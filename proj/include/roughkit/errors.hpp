#pragma once

#include <stdexcept>
#include <string>

namespace roughkit {

/// Invalid argument value or violated hypothesis of a lemma/operation.
/// Mapped to exit code 1 by the CLI.
class ParameterError : public std::invalid_argument {
public:
    explicit ParameterError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Out-of-range or misordered grid indices.
class IndexError : public std::out_of_range {
public:
    explicit IndexError(const std::string& msg) : std::out_of_range(msg) {}
};

/// Shape or kind mismatch between operands (dimension, pairing, grid).
class DimensionError : public std::invalid_argument {
public:
    explicit DimensionError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Input data fails a structural identity it is required to satisfy
/// (Chen's identity, group increment property, superadditivity).
class ConsistencyError : public std::runtime_error {
public:
    explicit ConsistencyError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A numerical diagnostic tripped during solving (contraction factor above
/// threshold, non-convergence). Mapped to exit code 2 by the CLI.
class DiagnosticError : public std::runtime_error {
public:
    explicit DiagnosticError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace roughkit
