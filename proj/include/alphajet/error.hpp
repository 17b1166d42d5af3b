#pragma once

#include <stdexcept>
#include <string>

namespace alphajet {

/// Base of every exception thrown by the library. `code()` is a stable
/// machine-readable tag; the CLI forwards it in its error JSON.
class Error : public std::runtime_error
{
  public:
    Error(std::string code, const std::string& message, std::string location = {})
        : std::runtime_error(message), code_(std::move(code)), location_(std::move(location))
    {}

    const std::string& code() const noexcept { return code_; }
    const std::string& location() const noexcept { return location_; }
    /// Used when rethrowing with context the thrower did not have.
    void set_location(std::string location) { location_ = std::move(location); }

  private:
    std::string code_;
    std::string location_;
};

struct SpecMismatch : Error
{
    explicit SpecMismatch(const std::string& msg) : Error("spec_mismatch", msg) {}
};

/// log/sqrt of a non-positive value, division by zero, non-finite results.
struct DomainError : Error
{
    explicit DomainError(const std::string& msg) : Error("domain_error", msg) {}
};

struct InvalidMorphism : Error
{
    explicit InvalidMorphism(const std::string& msg) : Error("invalid_morphism", msg) {}
};

struct NotAutomorphism : Error
{
    explicit NotAutomorphism(const std::string& msg) : Error("not_automorphism", msg) {}
};

struct AlgebraNotJetType : Error
{
    explicit AlgebraNotJetType(const std::string& msg) : Error("algebra_not_jet_type", msg) {}
};

struct ArityMismatch : Error
{
    explicit ArityMismatch(const std::string& msg) : Error("arity_mismatch", msg) {}
};

struct InvalidArgument : Error
{
    explicit InvalidArgument(const std::string& msg, std::string location = {})
        : Error("invalid_argument", msg, std::move(location))
    {}
};

struct ParseError : Error
{
    ParseError(const std::string& msg, std::string location) : Error("parse_error", msg, std::move(location)) {}
};

} // namespace alphajet
