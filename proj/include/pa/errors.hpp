#pragma once

#include <stdexcept>
#include <string>

namespace pa {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DivisionByZero : Error {
    explicit DivisionByZero(const std::string& w = "division by zero in finite field") : Error(w) {}
};
struct SpecMismatch : Error {
    explicit SpecMismatch(const std::string& w = "field elements belong to different fields") : Error(w) {}
};
struct ZeroConditioning : Error {
    explicit ZeroConditioning(const std::string& w = "conditioning on a zero-mass symbol") : Error(w) {}
};
struct TooLarge : Error {
    explicit TooLarge(const std::string& w = "requested object exceeds the configured cap") : Error(w) {}
};
struct SupportMismatch : Error {
    explicit SupportMismatch(const std::string& w = "support condition violated") : Error(w) {}
};
struct ShapeError : Error {
    explicit ShapeError(const std::string& w = "alphabet shape does not match") : Error(w) {}
};
struct NotNormalized : Error {
    explicit NotNormalized(const std::string& w = "operation requires a normalized distribution") : Error(w) {}
};
struct DomainError : Error {
    explicit DomainError(const std::string& w = "parameter outside its admissible range") : Error(w) {}
};
struct DegenerateVariance : Error {
    explicit DegenerateVariance(const std::string& w = "conditional information variance is zero") : Error(w) {}
};

}  // namespace pa
