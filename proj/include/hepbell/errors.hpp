#pragma once

#include <stdexcept>
#include <string>

namespace hepbell {

// All library failures derive from Error so callers can catch one type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class NotAnEigenvalue : public Error {
public:
    using Error::Error;
};

class DegenerateEigenspace : public Error {
public:
    using Error::Error;
};

class ConditionOnNullEvent : public Error {
public:
    using Error::Error;
};

// An analytic result and its independent numerical route disagree.
class InternalInconsistency : public Error {
public:
    using Error::Error;
};

class NoData : public Error {
public:
    using Error::Error;
};

class InsufficientStatistics : public Error {
public:
    InsufficientStatistics(const std::string& bin, const std::string& what)
        : Error(what), bin_(bin) {}
    const std::string& bin() const noexcept { return bin_; }

private:
    std::string bin_;
};

class BelowThreshold : public Error {
public:
    using Error::Error;
};

}  // namespace hepbell
