#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dseries {

enum class Errc {
    invalid_argument,
    not_invertible,
    overflow_window,
    table_too_small,
    overflow,
    budget_exceeded,
    unresolved_orbit,
    group_too_large,
    numeric_failure,
};

std::string_view to_string(Errc code) noexcept;

// Every failure raised by the library carries one of the codes above so the
// CLI and the python bindings can map it without parsing messages.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace dseries
