#pragma once

#include <stdexcept>
#include <string>

namespace refaudit {

/// Malformed input: unreadable file, bad CSV/JSON, wrong column set.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Well-formed input that violates a domain invariant.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A cited publication none of whose subject categories has a median.
class MissingBaselineError : public ValidationError {
public:
    explicit MissingBaselineError(const std::string& pub_id)
        : ValidationError("no citation baseline for any subject category of publication '" + pub_id + "'"),
          pub_id_(pub_id) {}

    const std::string& pub_id() const noexcept { return pub_id_; }

private:
    std::string pub_id_;
};

} // namespace refaudit
