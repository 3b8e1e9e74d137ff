#include "fenchel/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace fenchel {

Rational::Rational(long num, long den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational::Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

Rational Rational::operator/(const Rational& o) const {
    if (o.q_ == 0) throw std::domain_error("Rational: division by zero");
    return Rational(mpq_class(q_ / o.q_));
}

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rational Rational::parse(const std::string& text) {
    const auto fail = [&]() -> Rational {
        throw std::invalid_argument("Rational: malformed literal '" + text + "'");
    };

    std::string s = text;
    bool neg = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        neg = (s[0] == '-');
        s.erase(0, 1);
    }
    if (s.empty()) return fail();

    // Fraction form a/b.
    if (auto slash = s.find('/'); slash != std::string::npos) {
        const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) return fail();
        mpz_class n(num, 10), d(den, 10);  // base must be pinned: base 0 reads "0…" as octal
        if (d == 0) return fail();
        mpq_class q(n, d);
        q.canonicalize();
        return Rational(neg ? mpq_class(-q) : q);
    }

    // Decimal form digits[.digits][e[+-]digits].
    long exp10 = 0;
    if (auto e = s.find_first_of("eE"); e != std::string::npos) {
        std::string es = s.substr(e + 1);
        s.erase(e);
        bool eneg = false;
        if (!es.empty() && (es[0] == '+' || es[0] == '-')) {
            eneg = (es[0] == '-');
            es.erase(0, 1);
        }
        if (!all_digits(es) || es.size() > 6) return fail();
        exp10 = std::stol(es);
        if (eneg) exp10 = -exp10;
    }
    std::string digits = s;
    long frac_len = 0;
    if (auto dot = s.find('.'); dot != std::string::npos) {
        digits = s.substr(0, dot) + s.substr(dot + 1);
        frac_len = static_cast<long>(s.size() - dot - 1);
    }
    if (!all_digits(digits)) return fail();

    mpz_class n(digits, 10);  // base must be pinned: base 0 reads "0…" as octal
    mpq_class q(n);
    long net = exp10 - frac_len;
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(net < 0 ? -net : net));
    if (net >= 0)
        q *= mpq_class(pow10);
    else
        q /= mpq_class(pow10);
    q.canonicalize();
    return Rational(neg ? mpq_class(-q) : q);
}

std::string Rational::to_string() const {
    const mpz_class num = q_.get_num(), den = q_.get_den();
    if (den == 1) return num.get_str();

    // Exact decimal exists iff den == 2^a 5^b.
    mpz_class d = den;
    unsigned long twos = 0, fives = 0;
    while (mpz_divisible_ui_p(d.get_mpz_t(), 2)) {
        mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), 2);
        ++twos;
    }
    while (mpz_divisible_ui_p(d.get_mpz_t(), 5)) {
        mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), 5);
        ++fives;
    }
    if (d != 1) return num.get_str() + "/" + den.get_str();

    const unsigned long places = twos > fives ? twos : fives;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, places);
    mpz_class scaled = num * scale / den;  // exact by construction
    const bool neg = scaled < 0;
    std::string body = mpz_class(::abs(scaled)).get_str();
    if (body.size() <= places) body.insert(0, places - body.size() + 1, '0');
    body.insert(body.size() - places, ".");
    return (neg ? "-" : "") + body;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
}

}  // namespace fenchel
