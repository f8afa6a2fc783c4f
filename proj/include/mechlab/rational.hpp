#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mechlab {

/// Exact rational number with 64-bit numerator and positive 64-bit
/// denominator, always stored in lowest terms. All arithmetic and
/// comparisons are exact; intermediate products use 128-bit integers and
/// overflow of the reduced result throws std::overflow_error.
class Rational {
public:
    constexpr Rational() noexcept : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long num, long long den) { assign(num, den); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    /// 2^e for any integer e (negative exponents give dyadic fractions).
    static Rational pow2(int e) {
        if (e >= 0) {
            if (e > 62) throw std::overflow_error("Rational::pow2 exponent too large");
            return Rational(1LL << e, 1);
        }
        if (e < -62) throw std::overflow_error("Rational::pow2 exponent too small");
        return Rational(1, 1LL << (-e));
    }

    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                       i128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return from128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                       i128(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("Rational division by zero");
        return from128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    // Cross-multiplication in 128 bits: exact for the full representable range.
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// "num" when the denominator is 1, otherwise "num/den".
    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Parses "num" or "num/den".
    static Rational parse(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(std::stoll(s), 1);
        return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    }

private:
    using i128 = __int128;

    long long num_;
    long long den_;

    void assign(long long num, long long den) {
        Rational r = from128(i128(num), i128(den));
        num_ = r.num_;
        den_ = r.den_;
    }

    static i128 abs128(i128 v) { return v < 0 ? -v : v; }

    static i128 gcd128(i128 a, i128 b) {
        a = abs128(a);
        b = abs128(b);
        while (b != 0) {
            i128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static long long narrow(i128 v) {
        if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("Rational overflow");
        return static_cast<long long>(v);
    }

    static Rational from128(i128 num, i128 den) {
        if (den == 0) throw std::domain_error("Rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        i128 g = gcd128(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        Rational r;
        r.num_ = narrow(num);
        r.den_ = narrow(den);
        return r;
    }
};

}  // namespace mechlab
