#pragma once

#include <stdexcept>
#include <string>

namespace er {

// Invalid physical or dimensionless input (CLI exit code 2).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// H = 0: the dimensionless reduction is undefined (L diverges).
class FlatFieldError : public DomainError {
public:
    explicit FlatFieldError(const std::string& msg) : DomainError(msg) {}
};

// Point lies outside every reflectionless region.
class RegionError : public DomainError {
public:
    explicit RegionError(const std::string& msg) : DomainError(msg) {}
};

// Grid too coarse for a physical scale; message names the violated scale.
class ResolutionError : public DomainError {
public:
    explicit ResolutionError(const std::string& msg) : DomainError(msg) {}
};

// Valid inputs but no solution of the stated kind (e.g. no bounce turning point).
class PhysicsError : public std::runtime_error {
public:
    explicit PhysicsError(const std::string& msg) : std::runtime_error(msg) {}
};

// Iteration failed to converge (CLI exit code 3).
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace er
