#ifndef MZV_ERRORS_HPP
#define MZV_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mzv {

// Violated precondition or misuse of an API (maps to CLI exit code 2).
class contract_error : public std::invalid_argument {
public:
    explicit contract_error(const std::string& what) : std::invalid_argument(what) {}
};

// Malformed numeric or composition text; carries the offset of the first bad character.
class parse_error : public contract_error {
public:
    parse_error(const std::string& what, std::size_t position)
        : contract_error(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// A series whose terms decay too slowly to sum (maps to CLI exit code 3).
class divergence_error : public std::runtime_error {
public:
    explicit divergence_error(const std::string& what) : std::runtime_error(what) {}
};

// An enumeration or evaluation that would exceed the configured resource guard.
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// Bad suite/CLI configuration (unknown identity id, bad flag combination).
class config_error : public contract_error {
public:
    explicit config_error(const std::string& what) : contract_error(what) {}
};

}  // namespace mzv

#endif
