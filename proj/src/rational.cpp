#include "ctx/rational.hpp"

#include <cctype>

#include "ctx/errors.hpp"

namespace ctx {

std::string to_string(const Rational& q) {
    return q.str();
}

Rational parse_rational(std::string_view text) {
    auto is_int = [](std::string_view s) {
        if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };
    const auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
    if (!is_int(num) || !is_int(den) || (!den.empty() && (den.front() == '-' || den.front() == '+')))
        throw ParseError("", "not a rational: '" + std::string(text) + "'");
    std::string n(num);
    if (n.front() == '+') n.erase(0, 1);
    boost::multiprecision::mpz_int d(std::string{den});
    if (d == 0) throw ParseError("", "zero denominator: '" + std::string(text) + "'");
    return Rational(boost::multiprecision::mpz_int(n), d);
}

}  // namespace ctx
