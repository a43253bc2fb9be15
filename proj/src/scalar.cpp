#include "orthomat/scalar.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <iomanip>
#include <limits>
#include <sstream>

namespace orthomat {

namespace {

constexpr std::array<unsigned long, 25> kSmallPrimes = {
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41,
    43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

bool is_square_integer(const mpz_class& z)
{
    return sgn(z) >= 0 && mpz_perfect_square_p(z.get_mpz_t()) != 0;
}

mpz_class isqrt(const mpz_class& z)
{
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), z.get_mpz_t());
    return r;
}

/// sqrt(q) if q is the square of a rational.
bool rational_sqrt(const Rational& q, Rational& out)
{
    if (!is_square_integer(q.get_num()) || !is_square_integer(q.get_den())) {
        return false;
    }
    out = Rational(isqrt(q.get_num()), isqrt(q.get_den()));
    out.canonicalize();
    return true;
}

std::string trim(std::string_view s)
{
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t')) --e;
    return std::string(s.substr(b, e - b));
}

}  // namespace

Surd::Surd(const Rational& c, const Rational& r) : coef_(c), radicand_(r)
{
    if (sgn(r) < 0) {
        throw std::domain_error("Surd: negative radicand");
    }
    if (sgn(r) == 0) {
        coef_ = 0;
        radicand_ = 1;
        return;
    }
    normalize();
}

void Surd::normalize()
{
    coef_.canonicalize();
    radicand_.canonicalize();
    if (sgn(coef_) == 0) {
        radicand_ = 1;
        return;
    }
    // sqrt(p/q) = sqrt(p*q)/q
    mpz_class den = radicand_.get_den();
    mpz_class rad = radicand_.get_num() * den;
    coef_ /= Rational(den);
    for (unsigned long p : kSmallPrimes) {
        const unsigned long p2 = p * p;
        while (mpz_divisible_ui_p(rad.get_mpz_t(), p2) != 0) {
            mpz_divexact_ui(rad.get_mpz_t(), rad.get_mpz_t(), p2);
            coef_ *= p;
        }
    }
    if (is_square_integer(rad)) {
        coef_ *= Rational(isqrt(rad));
        rad = 1;
    }
    radicand_ = Rational(rad);
    coef_.canonicalize();
}

Rational Surd::to_rational() const
{
    if (!is_rational()) {
        throw std::domain_error("Surd::to_rational: value " + str() + " is irrational");
    }
    return coef_;
}

double Surd::to_double() const
{
    return coef_.get_d() * std::sqrt(radicand_.get_d());
}

std::string Surd::str() const
{
    if (is_rational()) {
        return coef_.get_str();
    }
    const std::string root = "sqrt(" + radicand_.get_str() + ")";
    if (coef_ == 1) return root;
    if (coef_ == -1) return "-" + root;
    return coef_.get_str() + "*" + root;
}

Surd Surd::parse(std::string_view text)
{
    const std::string s = trim(text);
    const auto pos = s.find("sqrt(");
    if (pos == std::string::npos) {
        return Surd(parse_rational(s));
    }
    if (s.back() != ')') {
        throw std::invalid_argument("malformed surd: " + s);
    }
    const Rational rad = parse_rational(s.substr(pos + 5, s.size() - pos - 6));
    std::string head = trim(s.substr(0, pos));
    Rational c(1);
    if (head == "-") {
        c = -1;
    } else if (!head.empty()) {
        if (head.back() != '*') {
            throw std::invalid_argument("malformed surd: " + s);
        }
        head.pop_back();
        c = parse_rational(head);
    }
    return Surd(c, rad);
}

Surd Surd::operator-() const
{
    Surd r = *this;
    r.coef_ = -r.coef_;
    return r;
}

Surd& Surd::operator+=(const Surd& o)
{
    if (o.is_zero()) return *this;
    if (is_zero()) {
        *this = o;
        return *this;
    }
    if (radicand_ == o.radicand_) {
        coef_ += o.coef_;
        if (sgn(coef_) == 0) radicand_ = 1;
        return *this;
    }
    Rational ratio = o.radicand_ / radicand_;
    Rational k;
    if (!rational_sqrt(ratio, k)) {
        throw IncommensurableSurds("cannot add " + str() + " and " + o.str());
    }
    coef_ += o.coef_ * k;
    if (sgn(coef_) == 0) radicand_ = 1;
    return *this;
}

Surd& Surd::operator-=(const Surd& o)
{
    return *this += -o;
}

Surd& Surd::operator*=(const Surd& o)
{
    coef_ *= o.coef_;
    radicand_ *= o.radicand_;
    normalize();
    return *this;
}

Surd& Surd::operator/=(const Surd& o)
{
    if (o.is_zero()) {
        throw std::domain_error("Surd: division by zero");
    }
    // 1/(c sqrt(r)) = sqrt(r) / (c r)
    coef_ /= o.coef_ * o.radicand_;
    radicand_ *= o.radicand_;
    normalize();
    return *this;
}

bool operator==(const Surd& a, const Surd& b)
{
    return a.sign() == b.sign() && a.square() == b.square();
}

bool operator<(const Surd& a, const Surd& b)
{
    const int sa = a.sign();
    const int sb = b.sign();
    if (sa != sb) return sa < sb;
    if (sa == 0) return false;
    const Rational a2 = a.square();
    const Rational b2 = b.square();
    return sa > 0 ? a2 < b2 : a2 > b2;
}

std::string format_value(double x)
{
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), res.ptr);
}

std::string format_value(const Wide& x)
{
    std::ostringstream os;
    os << std::setprecision(std::numeric_limits<Wide>::digits10) << x;
    return os.str();
}

std::string format_value(const Rational& x)
{
    return x.get_str();
}

std::string format_value(const Surd& x)
{
    return x.str();
}

Rational parse_rational(std::string_view text)
{
    const std::string s = trim(text);
    if (s.empty() || s.find_first_of(".eE") != std::string::npos) {
        throw std::invalid_argument("not a rational literal: '" + s + "'");
    }
    const auto slash = s.find('/');
    try {
        Rational r;
        if (slash == std::string::npos) {
            r = Rational(mpz_class(s, 10));
        } else {
            mpz_class num(s.substr(0, slash), 10);
            mpz_class den(s.substr(slash + 1), 10);
            if (sgn(den) == 0) {
                throw std::invalid_argument("zero denominator in '" + s + "'");
            }
            r = Rational(num, den);
            r.canonicalize();
        }
        return r;
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("not a rational literal: '" + s + "'");
    }
}

}  // namespace orthomat
