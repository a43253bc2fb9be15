#pragma once

// Numeric backends.
//
//   double    -- float mode, IEEE binary64
//   Wide      -- float mode, 100 significant decimal digits (deep Hankel orders)
//   Rational  -- exact mode, GMP rationals
//
// Orthonormal quantities carry square roots of pivots. In the float backends
// they are plain floats; in exact mode they are Surd values c*sqrt(r) with
// rational c and r, which is closed under the products that occur in the
// moment-matrix calculus (each entry of L, Pi, connection and linearization
// tables has a single radicand).

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

namespace orthomat {

using Rational = mpq_class;
using Wide = boost::multiprecision::cpp_bin_float_100;

/// Raised when two surds with incompatible radicands are added.
class IncommensurableSurds : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Exact value c*sqrt(r), r > 0. The radicand is kept as an integer with small
/// square factors pulled into the coefficient; zero always has radicand 1.
class Surd {
public:
    Surd() : coef_(0), radicand_(1) {}
    Surd(const Rational& c) : coef_(c), radicand_(1) {}  // NOLINT(implicit)
    Surd(long c) : coef_(c), radicand_(1) {}             // NOLINT(implicit)
    Surd(const Rational& c, const Rational& r);

    static Surd sqrt(const Rational& r) { return Surd(Rational(1), r); }

    const Rational& coef() const { return coef_; }
    const Rational& radicand() const { return radicand_; }

    bool is_rational() const { return radicand_ == 1; }
    bool is_zero() const { return sgn(coef_) == 0; }
    int sign() const { return sgn(coef_); }

    /// Throws std::domain_error if the value is irrational.
    Rational to_rational() const;
    /// c^2 * r, always rational.
    Rational square() const { return coef_ * coef_ * radicand_; }
    double to_double() const;

    std::string str() const;
    /// Accepts "p/q", "sqrt(r)", "p/q*sqrt(r)" and "-sqrt(r)".
    static Surd parse(std::string_view text);

    Surd operator-() const;
    Surd& operator+=(const Surd& o);
    Surd& operator-=(const Surd& o);
    Surd& operator*=(const Surd& o);
    Surd& operator/=(const Surd& o);

    friend Surd operator+(Surd a, const Surd& b) { return a += b; }
    friend Surd operator-(Surd a, const Surd& b) { return a -= b; }
    friend Surd operator*(Surd a, const Surd& b) { return a *= b; }
    friend Surd operator/(Surd a, const Surd& b) { return a /= b; }

    friend bool operator==(const Surd& a, const Surd& b);
    friend bool operator!=(const Surd& a, const Surd& b) { return !(a == b); }
    friend bool operator<(const Surd& a, const Surd& b);
    friend bool operator>(const Surd& a, const Surd& b) { return b < a; }
    friend bool operator<=(const Surd& a, const Surd& b) { return !(b < a); }
    friend bool operator>=(const Surd& a, const Surd& b) { return !(a < b); }

private:
    void normalize();

    Rational coef_;
    Rational radicand_;  // integer valued
};

// ---------------------------------------------------------------------------
// Field traits. K is the field (double, Wide, Rational); Root<K> is the type of
// square roots of positive field elements.

template <class K>
struct FieldTraits;

template <>
struct FieldTraits<double> {
    using root_type = double;
    static constexpr bool exact = false;
    static constexpr const char* name = "float";
    /// Cholesky pivots at or below pivot_tol * m_{2k} count as breakdown.
    static constexpr double pivot_tol = 1e-12;
    static double from_rational(const Rational& r) { return r.get_d(); }
    static double from_double(double d) { return d; }
    static double to_double(double x) { return x; }
    static root_type sqrt(double x) { return std::sqrt(x); }
    static double root_to_field(double x) { return x; }
    static double root_square(double x) { return x * x; }
    static double root_to_double(double x) { return x; }
};

template <>
struct FieldTraits<Wide> {
    using root_type = Wide;
    static constexpr bool exact = false;
    static constexpr const char* name = "wide";
    static constexpr double pivot_tol = 1e-80;
    static Wide from_rational(const Rational& r)
    {
        return Wide(r.get_num().get_str()) / Wide(r.get_den().get_str());
    }
    static Wide from_double(double d) { return Wide(d); }
    static double to_double(const Wide& x) { return static_cast<double>(x); }
    static root_type sqrt(const Wide& x) { return boost::multiprecision::sqrt(x); }
    static Wide root_to_field(const Wide& x) { return x; }
    static Wide root_square(const Wide& x) { return x * x; }
    static double root_to_double(const Wide& x) { return static_cast<double>(x); }
};

template <>
struct FieldTraits<Rational> {
    using root_type = Surd;
    static constexpr bool exact = true;
    static constexpr const char* name = "rational";
    static constexpr double pivot_tol = 0.0;
    static Rational from_rational(const Rational& r) { return r; }
    /// Exact binary value of d.
    static Rational from_double(double d) { return Rational(d); }
    static double to_double(const Rational& x) { return x.get_d(); }
    static root_type sqrt(const Rational& x) { return Surd::sqrt(x); }
    static Rational root_to_field(const Surd& x) { return x.to_rational(); }
    static Rational root_square(const Surd& x) { return x.square(); }
    static double root_to_double(const Surd& x) { return x.to_double(); }
};

template <class K>
using Root = typename FieldTraits<K>::root_type;

template <class K>
inline constexpr bool is_exact_v = FieldTraits<K>::exact;

/// Result type of a*b for the element types used here (gmpxx expression
/// templates are collapsed to Rational).
template <class A, class B>
struct product_type {
    using type = std::conditional_t<
        std::is_same_v<A, Surd> || std::is_same_v<B, Surd>, Surd,
        std::conditional_t<std::is_same_v<A, Rational> || std::is_same_v<B, Rational>, Rational,
                           std::common_type_t<A, B>>>;
};

template <class A, class B>
using product_t = typename product_type<A, B>::type;

template <class T>
concept Field = requires { typename FieldTraits<T>::root_type; };

inline double to_double(double x) { return x; }
inline double to_double(const Wide& x) { return static_cast<double>(x); }
inline double to_double(const Rational& x) { return x.get_d(); }
inline double to_double(const Surd& x) { return x.to_double(); }

inline int sign_of(double x) { return (x > 0) - (x < 0); }
inline int sign_of(const Wide& x) { return x.sign(); }
inline int sign_of(const Rational& x) { return sgn(x); }
inline int sign_of(const Surd& x) { return x.sign(); }

/// Exact equality for exact types; |a-b| <= tol*max(1,|a|,|b|) otherwise.
template <class T>
bool approx_equal(const T& a, const T& b, double tol)
{
    if constexpr (std::is_same_v<T, Rational> || std::is_same_v<T, Surd>) {
        (void)tol;
        return a == b;
    } else {
        using std::abs;
        using boost::multiprecision::abs;
        const T scale = std::max<T>(T(1), std::max<T>(abs(a), abs(b)));
        return abs(a - b) <= T(tol) * scale;
    }
}

/// Magnitude of a - b as a double (exact types: exact difference, then rounded).
template <class T>
double abs_diff(const T& a, const T& b)
{
    if constexpr (std::is_same_v<T, Surd>) {
        // a - b may be non-representable; fall back to floating evaluation.
        try {
            return std::abs((a - b).to_double());
        } catch (const IncommensurableSurds&) {
            return std::abs(a.to_double() - b.to_double());
        }
    } else {
        return std::abs(to_double(T(a - b)));
    }
}

/// Serialization: "p/q" strings in exact mode, shortest round-trip decimal in float mode.
std::string format_value(double x);
std::string format_value(const Wide& x);
std::string format_value(const Rational& x);
std::string format_value(const Surd& x);

/// Parses "p/q" or an integer. Decimal points are rejected.
Rational parse_rational(std::string_view text);

}  // namespace orthomat
