#ifndef BLOCKSPIN_ERRORS_HPP
#define BLOCKSPIN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace blockspin {

/// Thrown when an exact computation would exceed the documented size caps
/// (2^n enumeration, detailed-balance scans). CLI exit code 3.
class ResourceLimitError : public std::runtime_error {
  public:
    explicit ResourceLimitError(const std::string& what)
        : std::runtime_error(what) {}
};

/// Filesystem / serialization failures. CLI exit code 4.
class IoError : public std::runtime_error {
  public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace blockspin

#endif
