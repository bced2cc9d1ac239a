#include "hfinsler/errors.hpp"

#include <sstream>

namespace hfinsler {

std::string Inapplicable::format(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

namespace {
std::string join_violations(const std::vector<std::string>& v) {
    std::string out = "space definition is invalid:";
    for (const auto& s : v) out += "\n  - " + s;
    return out;
}
} // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : std::runtime_error(join_violations(violations)), violations_(std::move(violations)) {}

} // namespace hfinsler
