#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace curvtess {

using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational in canonical form: gcd(|num|, den) == 1,
/// den > 0. All curvature arithmetic in this library goes through this
/// type; there is no floating point anywhere on the curvature path.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(const BigInt& n) : num_(n), den_(1) {}
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }

    Rational operator-() const { return Rational(nonorm{}, -num_, den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }

    Rational& operator+=(const Rational& o) { *this = *this + o; return *this; }
    Rational& operator-=(const Rational& o) { *this = *this - o; return *this; }
    Rational& operator*=(const Rational& o) { *this = *this * o; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    /// "p/q", or just "p" when the value is an integer.
    std::string str() const {
        std::string s = num_.str();
        if (den_ != 1) { s += '/'; s += den_.str(); }
        return s;
    }

    /// Parse "p", "p/q", with optional leading '-'. Returns nullopt on
    /// malformed input or zero denominator.
    static std::optional<Rational> parse(std::string_view text);

private:
    struct nonorm {};
    Rational(nonorm, BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {}

    void normalize() {
        if (den_ == 0) throw std::domain_error("Rational: zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (num_ == 0) den_ = 1;
    }

    BigInt num_;
    BigInt den_;
};

inline std::optional<Rational> Rational::parse(std::string_view text) {
    if (text.empty()) return std::nullopt;
    auto parse_int = [](std::string_view s) -> std::optional<BigInt> {
        if (s.empty()) return std::nullopt;
        std::size_t i = 0;
        if (s[0] == '-' || s[0] == '+') i = 1;
        if (i == s.size()) return std::nullopt;
        for (std::size_t j = i; j < s.size(); ++j)
            if (s[j] < '0' || s[j] > '9') return std::nullopt;
        return BigInt(std::string(s));
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        auto n = parse_int(text);
        if (!n) return std::nullopt;
        return Rational(*n);
    }
    auto n = parse_int(text.substr(0, slash));
    auto d = parse_int(text.substr(slash + 1));
    if (!n || !d || *d == 0) return std::nullopt;
    return Rational(*n, *d);
}

/// An angle stored as a rational multiple of pi.
struct Angle {
    Rational pi_coeff;

    Angle() = default;
    explicit Angle(Rational c) : pi_coeff(std::move(c)) {}

    friend Angle operator+(const Angle& a, const Angle& b) { return Angle(a.pi_coeff + b.pi_coeff); }
    friend Angle operator-(const Angle& a, const Angle& b) { return Angle(a.pi_coeff - b.pi_coeff); }
    friend bool operator==(const Angle& a, const Angle& b) { return a.pi_coeff == b.pi_coeff; }
    friend bool operator!=(const Angle& a, const Angle& b) { return !(a == b); }

    std::string str() const { return pi_coeff.str() + "*pi"; }
};

} // namespace curvtess
