#pragma once

#include <stdexcept>
#include <string>

namespace cspace {

// Base of everything the engine throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad caller input: alpha out of range, empty domain subset, malformed point text.
class ArgumentError : public Error {
public:
    using Error::Error;
};

// The domain model itself is inconsistent (maps to CLI exit code 2).
class ModelError : public Error {
public:
    using Error::Error;
};

class StructuralError : public ModelError {
public:
    using ModelError::ModelError;
};

class WeightError : public ModelError {
public:
    using ModelError::ModelError;
};

class CoreInvalidError : public ModelError {
public:
    CoreInvalidError(const std::string& what, std::string dimension)
        : ModelError(what), dimension_(std::move(dimension)) {}

    const std::string& dimension() const noexcept { return dimension_; }

private:
    std::string dimension_;
};

class UnboundedCuboidError : public ModelError {
public:
    using ModelError::ModelError;
};

class MidpointUndefinedError : public ModelError {
public:
    using ModelError::ModelError;
};

class NoCommonDomainError : public ModelError {
public:
    using ModelError::ModelError;
};

class UnknownConceptError : public ModelError {
public:
    using ModelError::ModelError;
};

// Zero-volume integration region.
class DegenerateDomainError : public ModelError {
public:
    using ModelError::ModelError;
};

// Dimension or cuboid count above the configured enumeration caps (exit code 3).
class LimitExceededError : public Error {
public:
    using Error::Error;
};

// Concept-space file could not be parsed (exit code 1).
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace cspace
