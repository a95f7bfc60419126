#pragma once

#include <stdexcept>
#include <string>

namespace fieldcount {

// Precondition violations on public operations. The CLI maps these to exit code 2.
class DomainError : public std::domain_error {
  public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// A computed value contradicted a mathematical invariant (e.g. a non-integral
// trace of an order element). Always a bug, never a user error.
class InternalConsistencyError : public std::logic_error {
  public:
    explicit InternalConsistencyError(const std::string& what) : std::logic_error(what) {}
};

// Malformed field cache. Carries the 1-based line number; exit code 3.
class CacheCorruptionError : public std::runtime_error {
  public:
    CacheCorruptionError(std::size_t line, const std::string& what)
        : std::runtime_error("cache line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

}  // namespace fieldcount
