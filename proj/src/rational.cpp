#include "stogen/rational.hpp"

#include <cctype>
#include <ostream>

#include "stogen/errors.hpp"

namespace stogen {

Rational::Rational(long num, long den) : q_(num, den) {
    if (den == 0) throw ParseError("rational with zero denominator");
    q_.canonicalize();
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw ParseError("division by zero");
    return Rational(mpq_class(a.q_ / b.q_));
}

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rational Rational::from_string(const std::string& input) {
    std::string s = input;
    // trim surrounding whitespace
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    if (s.empty()) throw ParseError("empty rational literal");

    bool negative = false;
    if (s[0] == '+' || s[0] == '-') {
        negative = (s[0] == '-');
        s.erase(s.begin());
    }
    if (s.empty()) throw ParseError("bare sign is not a rational literal");

    mpq_class q;
    if (auto slash = s.find('/'); slash != std::string::npos) {
        std::string num = s.substr(0, slash);
        std::string den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw ParseError("malformed fraction literal '" + input + "'");
        mpz_class n(num, 10), d(den, 10);
        if (d == 0) throw ParseError("zero denominator in '" + input + "'");
        q = mpq_class(n) / mpq_class(d);
    } else if (auto dot = s.find('.'); dot != std::string::npos) {
        // decimal literal, read exactly as p / 10^k
        std::string intpart = s.substr(0, dot);
        std::string fracpart = s.substr(dot + 1);
        if (intpart.empty() && fracpart.empty())
            throw ParseError("malformed decimal literal '" + input + "'");
        if (!intpart.empty() && !all_digits(intpart))
            throw ParseError("malformed decimal literal '" + input + "'");
        if (!fracpart.empty() && !all_digits(fracpart))
            throw ParseError("malformed decimal literal '" + input + "'");
        mpz_class digits((intpart.empty() ? "0" : intpart) + fracpart, 10);
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, fracpart.size());
        q = mpq_class(digits) / mpq_class(scale);
    } else {
        if (!all_digits(s)) throw ParseError("malformed rational literal '" + input + "'");
        q = mpq_class(mpz_class(s, 10));
    }
    if (negative) q = -q;
    q.canonicalize();
    return Rational(q);
}

std::string Rational::str() const {
    return q_.get_str();  // canonical "p" or "p/q"
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace stogen
