#include "oraclesim/rational.hpp"

#include <cctype>

#include "oraclesim/errors.hpp"

namespace oraclesim {

namespace {

bool is_plain_integer(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

}  // namespace

Rat rat_from_string(const std::string& text) {
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        const std::string num = text.substr(0, slash);
        const std::string den = text.substr(slash + 1);
        if (!is_plain_integer(num) || !is_plain_integer(den)) {
            throw ConfigError("not a rational: '" + text + "'");
        }
        const BigInt d(den);
        if (d == 0) throw ConfigError("zero denominator: '" + text + "'");
        return Rat(BigInt(num), d);
    }
    const auto dot = text.find('.');
    if (dot != std::string::npos) {
        const std::string whole = text.substr(0, dot);
        const std::string frac = text.substr(dot + 1);
        const bool neg = !whole.empty() && whole[0] == '-';
        if (!(whole.empty() || is_plain_integer(whole) || whole == "-" || whole == "+") ||
            frac.empty() || !is_plain_integer(frac) || frac[0] == '-' || frac[0] == '+') {
            throw ConfigError("not a rational: '" + text + "'");
        }
        BigInt scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        const BigInt whole_part =
            (whole.empty() || whole == "-" || whole == "+") ? BigInt(0) : BigInt(whole);
        BigInt num = abs(whole_part) * scale + BigInt(frac);
        if (neg || whole_part < 0) num = -num;
        return Rat(num, scale);
    }
    if (!is_plain_integer(text)) throw ConfigError("not a rational: '" + text + "'");
    return Rat(BigInt(text));
}

std::string rat_to_string(const Rat& value) {
    const BigInt num = numerator(value);
    const BigInt den = denominator(value);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

bool rat_is_integer(const Rat& value) { return denominator(value) == 1; }

BigInt rat_floor(const Rat& value) {
    BigInt q = numerator(value) / denominator(value);
    if (value < 0 && q * denominator(value) != numerator(value)) q -= 1;
    return q;
}

double rat_to_double(const Rat& value) { return value.convert_to<double>(); }

}  // namespace oraclesim
