#pragma once

#include <stdexcept>
#include <string>

namespace dirac3t {

// Domain errors carry the module that raised them so callers (and the CLI)
// can surface machine-readable diagnostics.
class DomainError : public std::runtime_error {
public:
    DomainError(std::string module, const std::string& message)
        : std::runtime_error(message), module_(std::move(module)) {}

    const std::string& module() const noexcept { return module_; }

private:
    std::string module_;
};

}  // namespace dirac3t
