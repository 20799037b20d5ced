#include "dseries/error.hpp"

namespace dseries {

std::string_view to_string(Errc code) noexcept
{
    switch (code) {
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::not_invertible: return "not-invertible";
    case Errc::overflow_window: return "overflow-window";
    case Errc::table_too_small: return "table-too-small";
    case Errc::overflow: return "overflow";
    case Errc::budget_exceeded: return "budget-exceeded";
    case Errc::unresolved_orbit: return "unresolved-orbit";
    case Errc::group_too_large: return "group-too-large";
    case Errc::numeric_failure: return "numeric-failure";
    }
    return "unknown";
}

} // namespace dseries
