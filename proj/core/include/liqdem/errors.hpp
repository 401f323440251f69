#ifndef LIQDEM_ERRORS_HPP
#define LIQDEM_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace liqdem {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid input data (bad instance, out-of-range value, shape mismatch).
/// Maps to CLI exit code 1.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A resource guard tripped (enumeration too large, too many gurus).
/// Maps to CLI exit code 2.
class ResourceError : public Error {
public:
    using Error::Error;
};

class SupportTooLarge : public ResourceError {
public:
    SupportTooLarge(double product, double cap)
        : ResourceError("support enumeration would produce " + std::to_string(product) +
                        " profiles, exceeding cap " + std::to_string(cap) +
                        "; use sampling instead"),
          product(product), cap(cap) {}
    double product;
    double cap;
};

class TooManyGurus : public ResourceError {
public:
    TooManyGurus(int gurus, int limit)
        : ResourceError("exact accuracy enumeration over " + std::to_string(gurus) +
                        " gurus exceeds limit " + std::to_string(limit)),
          gurus(gurus), limit(limit) {}
    int gurus;
    int limit;
};

class InstanceTooLarge : public ResourceError {
public:
    InstanceTooLarge(int n, int limit, const std::string& operation)
        : ResourceError(operation + " supports at most n = " + std::to_string(limit) +
                        " agents, got " + std::to_string(n)),
          n(n), limit(limit) {}
    int n;
    int limit;
};

class NoGurus : public DomainError {
public:
    NoGurus() : DomainError("no agent carries positive weight") {}
};

class AllUninformative : public DomainError {
public:
    AllUninformative()
        : DomainError("every accuracy equals 0.5; optimal weights are undefined") {}
};

class PerfectAgent : public DomainError {
public:
    explicit PerfectAgent(int agent)
        : DomainError("agent " + std::to_string(agent) +
                      " has accuracy 1.0 (infinite log-odds); pass clamp_perfect to proceed"),
          agent(agent) {}
    int agent;
};

class InvalidInstance : public DomainError {
public:
    using DomainError::DomainError;
};

}  // namespace liqdem

#endif
