#include "sphcodes/scalar.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "sphcodes/errors.hpp"

namespace sphcodes {

std::string_view to_string(Mode mode) { return mode == Mode::exact ? "exact" : "float"; }

Scalar::Scalar(mpq_class v) : value_(std::move(v)) { std::get<mpq_class>(value_).canonicalize(); }

Scalar Scalar::rational(long num, long den) {
    if (den == 0) throw std::domain_error("Scalar::rational: zero denominator");
    return Scalar(mpq_class(mpz_class(num), mpz_class(den)));
}

const mpq_class& Scalar::rational() const {
    if (const auto* q = std::get_if<mpq_class>(&value_)) return *q;
    throw std::logic_error("Scalar::rational called on a float-mode value");
}

mpq_class Scalar::exact_value() const {
    if (const auto* q = std::get_if<mpq_class>(&value_)) return *q;
    const double d = std::get<double>(value_);
    if (!std::isfinite(d)) throw std::domain_error("non-finite float has no rational value");
    return mpq_class(d);
}

double Scalar::to_double() const {
    if (const auto* q = std::get_if<mpq_class>(&value_)) return q->get_d();
    return std::get<double>(value_);
}

int Scalar::sign() const {
    if (const auto* q = std::get_if<mpq_class>(&value_)) return sgn(*q);
    const double d = std::get<double>(value_);
    return (d > 0) - (d < 0);
}

Scalar Scalar::operator-() const {
    if (const auto* q = std::get_if<mpq_class>(&value_)) return Scalar(mpq_class(-*q));
    return from_double(-std::get<double>(value_));
}

// Mixed-mode promotes to float; exact/exact stays exact.
#define SPHCODES_SCALAR_OP(op)                                                 \
    Scalar& Scalar::operator op##=(const Scalar& o) {                          \
        if (is_exact() && o.is_exact()) {                                      \
            std::get<mpq_class>(value_) op##= std::get<mpq_class>(o.value_);   \
        } else {                                                               \
            value_ = to_double() op o.to_double();                             \
        }                                                                      \
        return *this;                                                          \
    }

SPHCODES_SCALAR_OP(+)
SPHCODES_SCALAR_OP(-)
SPHCODES_SCALAR_OP(*)
#undef SPHCODES_SCALAR_OP

Scalar& Scalar::operator/=(const Scalar& o) {
    if (is_exact() && o.is_exact()) {
        if (o.is_zero()) throw std::domain_error("Scalar: exact division by zero");
        std::get<mpq_class>(value_) /= std::get<mpq_class>(o.value_);
    } else {
        value_ = to_double() / o.to_double();
    }
    return *this;
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
    int c = 0;
    if (a.is_exact() && b.is_exact()) {
        c = cmp(std::get<mpq_class>(a.value_), std::get<mpq_class>(b.value_));
    } else if (!a.is_exact() && !b.is_exact()) {
        const double x = std::get<double>(a.value_), y = std::get<double>(b.value_);
        c = (x > y) - (x < y);
    } else {
        c = cmp(a.exact_value(), b.exact_value());
    }
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

std::string Scalar::to_string() const {
    if (const auto* q = std::get_if<mpq_class>(&value_)) return q->get_str();
    const double d = std::get<double>(value_);
    char buf[512];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, d, std::chars_format::fixed);
    if (ec != std::errc{}) throw std::runtime_error("Scalar::to_string: float does not fit");
    std::string s(buf, end);
    // keep the decimal point so the token reparses as a float
    if (s.find('.') == std::string::npos) s += ".0";
    return s;
}

Scalar abs(const Scalar& s) { return s.sign() < 0 ? -s : s; }
Scalar max(const Scalar& a, const Scalar& b) { return a < b ? b : a; }
Scalar min(const Scalar& a, const Scalar& b) { return b < a ? b : a; }

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
    const auto fail = [&] { return ParseError("invalid scalar token '" + std::string(text) + "'"); };
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '+' || body.front() == '-')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    if (const auto slash = body.find('/'); slash != std::string_view::npos) {
        const auto num = body.substr(0, slash), den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) throw fail();
        const mpz_class n{std::string(num), 10}, d{std::string(den), 10};
        if (d == 0) throw ParseError("zero denominator in scalar token '" + std::string(text) + "'");
        mpq_class q(n, d);
        q.canonicalize();
        return Scalar(negative ? mpq_class(-q) : q);
    }
    if (const auto dot = body.find('.'); dot != std::string_view::npos) {
        if (!all_digits(body.substr(0, dot)) || !all_digits(body.substr(dot + 1))) throw fail();
        double d = 0;
        auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), d, std::chars_format::fixed);
        if (ec != std::errc{} || ptr != body.data() + body.size()) throw fail();
        return Scalar::from_double(negative ? -d : d);
    }
    if (!all_digits(body)) throw fail();
    const mpz_class n{std::string(body), 10};
    return Scalar(negative ? mpz_class(-n) : n);
}

bool leq_within(const Scalar& lhs, const Scalar& rhs, const Tolerance& tol) {
    if (lhs.is_exact() && rhs.is_exact()) return lhs <= rhs;
    const double l = lhs.to_double(), r = rhs.to_double();
    return r - l >= -(tol.abs + tol.rel * std::max(std::abs(l), std::abs(r)));
}

}  // namespace sphcodes
