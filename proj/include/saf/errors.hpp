#ifndef SAF_ERRORS_HPP
#define SAF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace saf {

/// Invalid configuration (bad variances, mismatched dimensions, malformed
/// scheme specs). Maps to CLI exit code 1.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Runtime evaluation failure (curve does not cross a target, not enough
/// points for a fit, ...). Maps to CLI exit code 2.
class EvalError : public std::runtime_error {
public:
    explicit EvalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace saf

#endif
