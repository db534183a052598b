#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "jetnoether/errors.hpp"

namespace jetnoether {

/// Exact rational number on 64-bit numerator/denominator.
///
/// All intermediate products go through 128-bit arithmetic and throw
/// OverflowError instead of wrapping, so results are either exact or loud.
class Rational {
public:
    Rational() = default;
    Rational(long long n) : num_(n) {}
    Rational(long long n, long long d) : num_(n), den_(d) { reduce(); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_one() const { return num_ == 1 && den_ == 1; }
    bool is_integer() const { return den_ == 1; }
    bool is_negative() const { return num_ < 0; }

    Rational operator-() const { return Rational(checked_neg(num_), den_, already_reduced{}); }

    Rational operator+(const Rational& o) const {
        long long g = std::gcd(den_, o.den_);
        long long l = checked_mul(den_ / g, o.den_);
        long long a = checked_mul(num_, o.den_ / g);
        long long b = checked_mul(o.num_, den_ / g);
        return Rational(checked_add(a, b), l);
    }
    Rational operator-(const Rational& o) const { return *this + (-o); }
    Rational operator*(const Rational& o) const {
        long long g1 = std::gcd(std::abs(num_), o.den_);
        long long g2 = std::gcd(std::abs(o.num_), den_);
        return Rational(checked_mul(num_ / g1, o.num_ / g2),
                        checked_mul(den_ / g2, o.den_ / g1), already_reduced{});
    }
    Rational operator/(const Rational& o) const {
        if (o.num_ == 0) throw Error("rational division by zero");
        Rational r = *this * Rational(o.den_, o.num_, already_reduced{});
        if (r.den_ < 0) { r.num_ = checked_neg(r.num_); r.den_ = -r.den_; }
        return r;
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const {
        return (__int128)num_ * o.den_ < (__int128)o.num_ * den_;
    }

    Rational abs() const { return num_ < 0 ? -*this : *this; }

    std::string str() const {
        std::string s = std::to_string(num_);
        if (den_ != 1) s += "/" + std::to_string(den_);
        return s;
    }

private:
    struct already_reduced {};
    Rational(long long n, long long d, already_reduced) : num_(n), den_(d) {}

    void reduce() {
        if (den_ == 0) throw Error("rational with zero denominator");
        if (den_ < 0) { num_ = checked_neg(num_); den_ = checked_neg(den_); }
        long long g = std::gcd(std::abs(num_), den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (num_ == 0) den_ = 1;
    }

    static long long checked_add(long long a, long long b) {
        __int128 r = (__int128)a + b;
        return narrow(r);
    }
    static long long checked_mul(long long a, long long b) {
        __int128 r = (__int128)a * b;
        return narrow(r);
    }
    static long long checked_neg(long long a) {
        if (a == INT64_MIN) throw OverflowError("rational overflow");
        return -a;
    }
    static long long narrow(__int128 r) {
        if (r > INT64_MAX || r < INT64_MIN) throw OverflowError("rational overflow");
        return (long long)r;
    }

    long long num_ = 0;
    long long den_ = 1;
};

/// gcd of |p/q| values: g with every input an integer multiple of g.
inline Rational rational_gcd(const Rational& a, const Rational& b) {
    long long n = std::gcd(std::abs(a.num()), std::abs(b.num()));
    long long g = std::gcd(a.den(), b.den());
    long long l = a.den() / g * b.den();
    return Rational(n, l);
}

} // namespace jetnoether
