#include "qh/scalar.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <system_error>

namespace qh {

namespace {

std::optional<mpz_class> exact_isqrt(const mpz_class& n) {
    if (sgn(n) < 0) {
        return std::nullopt;
    }
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0) {
        return std::nullopt;
    }
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    return root;
}

bool is_integer_literal(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) {
        return false;
    }
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
            return false;
        }
    }
    return true;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
    if (!is_integer_literal(s)) {
        throw Error(ErrorKind::Parse, "invalid number '" + std::string(whole) + "'");
    }
    std::string digits(s[0] == '+' ? s.substr(1) : s);
    return mpz_class(digits, 10);
}

mpz_class pow10(unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
    return r;
}

// Decimal with optional fraction and exponent, converted without rounding.
Rational parse_decimal(std::string_view s) {
    std::string_view mantissa = s;
    long exponent = 0;
    if (auto epos = s.find_first_of("eE"); epos != std::string_view::npos) {
        mantissa = s.substr(0, epos);
        std::string_view exp_text = s.substr(epos + 1);
        if (!is_integer_literal(exp_text) || exp_text.size() > 6) {
            throw Error(ErrorKind::Parse, "invalid exponent in '" + std::string(s) + "'");
        }
        exponent = std::stol(std::string(exp_text));
    }
    bool negative = false;
    if (!mantissa.empty() && (mantissa[0] == '-' || mantissa[0] == '+')) {
        negative = mantissa[0] == '-';
        mantissa.remove_prefix(1);
    }
    std::string digits;
    long frac_digits = 0;
    bool seen_point = false;
    for (char c : mantissa) {
        if (c == '.') {
            if (seen_point) {
                throw Error(ErrorKind::Parse, "invalid number '" + std::string(s) + "'");
            }
            seen_point = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            frac_digits += seen_point ? 1 : 0;
        } else {
            throw Error(ErrorKind::Parse, "invalid number '" + std::string(s) + "'");
        }
    }
    if (digits.empty()) {
        throw Error(ErrorKind::Parse, "invalid number '" + std::string(s) + "'");
    }
    mpz_class num(digits, 10);
    if (negative) {
        num = -num;
    }
    long shift = exponent - frac_digits;
    Rational r;
    if (shift >= 0) {
        r = Rational(num * pow10(static_cast<unsigned long>(shift)));
    } else {
        r = Rational(num, pow10(static_cast<unsigned long>(-shift)));
    }
    r.canonicalize();
    return r;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

}  // namespace

std::optional<Rational> exact_sqrt(const Rational& x) {
    if (sgn(x) < 0) {
        return std::nullopt;
    }
    auto num = exact_isqrt(x.get_num());
    auto den = exact_isqrt(x.get_den());
    if (!num || !den) {
        return std::nullopt;
    }
    Rational r(*num, *den);
    r.canonicalize();
    return r;
}

Rational field_sqrt(const Rational& x) {
    if (sgn(x) < 0) {
        throw Error(ErrorKind::Range, "square root of negative value " + to_string(x));
    }
    if (auto r = exact_sqrt(x)) {
        return *r;
    }
    throw Error(ErrorKind::Irrational,
                "sqrt(" + to_string(x) + ") is irrational; use float mode or a square rational");
}

double field_sqrt(double x) {
    if (x < 0.0) {
        throw Error(ErrorKind::Range, "square root of negative value " + to_string(x));
    }
    return std::sqrt(x);
}

void check_finite(double x, const char* where) {
    if (!std::isfinite(x)) {
        throw Error(ErrorKind::Pole, std::string("non-finite value in ") + where);
    }
}

Rational parse_rational(std::string_view text) {
    std::string_view s = trim(text);
    if (s.empty()) {
        throw Error(ErrorKind::Parse, "empty number");
    }
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        mpz_class num = parse_integer(trim(s.substr(0, slash)), s);
        mpz_class den = parse_integer(trim(s.substr(slash + 1)), s);
        if (den == 0) {
            throw Error(ErrorKind::Parse, "zero denominator in '" + std::string(s) + "'");
        }
        Rational r(num, den);
        r.canonicalize();
        return r;
    }
    if (is_integer_literal(s)) {
        return Rational(parse_integer(s, s));
    }
    return parse_decimal(s);
}

template <>
double parse_scalar<double>(std::string_view text) {
    std::string_view s = trim(text);
    if (s.find('/') != std::string_view::npos) {
        return parse_rational(s).get_d();
    }
    double value = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (!s.empty() && *first == '+') {
        ++first;
    }
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || s.empty()) {
        throw Error(ErrorKind::Parse, "invalid number '" + std::string(s) + "'");
    }
    return value;
}

std::string to_string(const Rational& x) {
    return x.get_str(10);
}

std::string to_string(double x) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), ptr);
}

}  // namespace qh
