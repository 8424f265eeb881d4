#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace indturan {

/// Malformed or out-of-contract input supplied by the caller.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A search or enumeration ran past its configured budget. When the
/// operation is an optimisation, the best value found so far is attached.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what,
                           std::optional<std::int64_t> best_found = std::nullopt)
        : std::runtime_error(what), best_found_(best_found) {}

    std::optional<std::int64_t> best_found() const noexcept { return best_found_; }

private:
    std::optional<std::int64_t> best_found_;
};

/// A theorem-level guard (density, side-size, schedule) failed in strict mode.
class PreconditionError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A postcondition that the mathematics guarantees did not hold.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace indturan
