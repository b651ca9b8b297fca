#ifndef SPHCODES_SCALAR_HPP
#define SPHCODES_SCALAR_HPP

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>
#include <variant>

namespace sphcodes {

enum class Mode { exact, floating };

std::string_view to_string(Mode mode);

/// Comparison slack for float-mode arithmetic. Exact mode ignores it.
struct Tolerance {
    double rel = 1e-9;
    double abs = 1e-12;
};

/// A number that is either an exact reduced rational or a binary64 float.
///
/// Mixed-mode arithmetic promotes to float. Comparisons are always exact:
/// a float operand is converted losslessly to its rational value first.
class Scalar {
public:
    Scalar() : value_(mpq_class(0)) {}
    Scalar(int v) : value_(mpq_class(v)) {}
    Scalar(long v) : value_(mpq_class(v)) {}
    Scalar(unsigned long v) : value_(mpq_class(v)) {}
    explicit Scalar(mpq_class v);
    explicit Scalar(const mpz_class& v) : value_(mpq_class(v)) {}

    static Scalar rational(long num, long den);
    static Scalar from_double(double v) { return Scalar(FloatTag{}, v); }

    Mode mode() const { return is_exact() ? Mode::exact : Mode::floating; }
    bool is_exact() const { return std::holds_alternative<mpq_class>(value_); }

    /// Exact value. Throws std::logic_error in float mode.
    const mpq_class& rational() const;
    /// Exact value of either mode (float converts losslessly).
    mpq_class exact_value() const;
    double to_double() const;

    Scalar to_exact() const { return Scalar(exact_value()); }
    Scalar to_float() const { return from_double(to_double()); }
    Scalar to_mode(Mode m) const { return m == Mode::exact ? to_exact() : to_float(); }

    int sign() const;
    bool is_zero() const { return sign() == 0; }

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    /// Throws std::domain_error on exact division by zero.
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);
    friend bool operator==(const Scalar& a, const Scalar& b) { return (a <=> b) == 0; }

    /// Text form in the scalar grammar: `-3`, `7/2` (exact) or `0.25`, `-1.0` (float).
    std::string to_string() const;

private:
    struct FloatTag {};
    Scalar(FloatTag, double v) : value_(v) {}

    std::variant<mpq_class, double> value_;
};

Scalar abs(const Scalar& s);
Scalar max(const Scalar& a, const Scalar& b);
Scalar min(const Scalar& a, const Scalar& b);

/// Parses optional sign followed by `digits`, `digits.digits` or `digits/digits`.
/// Integers and fractions are exact; decimals are floats. Throws ParseError.
Scalar parse_scalar(std::string_view text);

/// True when the slack of `lhs <= rhs` is acceptable under the tolerance.
/// Exact operands compare exactly; otherwise slack >= -(abs + rel * max(|lhs|, |rhs|)).
bool leq_within(const Scalar& lhs, const Scalar& rhs, const Tolerance& tol);

}  // namespace sphcodes

#endif  // SPHCODES_SCALAR_HPP
