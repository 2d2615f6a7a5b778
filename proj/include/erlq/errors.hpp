#pragma once

#include <stdexcept>
#include <string>

namespace erlq {

// Argument outside a function's mathematical domain (wrong sign, out of the
// supported range, non-finite, ...). The message names the offending value.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A numeric routine could not reach its accuracy target, or produced a
// non-finite intermediate. Carries the achieved error estimate when one is
// known (negative means "not available").
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what, double achieved = -1.0)
        : std::runtime_error(what), achieved_(achieved) {}

    double achieved_error() const noexcept { return achieved_; }

private:
    double achieved_;
};

}  // namespace erlq
