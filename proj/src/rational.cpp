#include "rforge/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace rforge {

Rational parse_rational(std::string_view text) {
    auto valid_int = [](std::string_view s, bool allow_sign) {
        if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };
    const auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
    if (!valid_int(num, true) || (slash != std::string_view::npos && !valid_int(den, false)))
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    std::string n(num);
    if (!n.empty() && n[0] == '+') n.erase(0, 1);
    Rational q;
    q.get_num() = Integer(n);
    q.get_den() = den.empty() ? Integer(1) : Integer(std::string(den));
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    q.canonicalize();
    return q;
}

} // namespace rforge
