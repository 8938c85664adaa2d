#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace moldable {

/// Exact rational number. Always stored in canonical (reduced, positive
/// denominator) form, so equality is structural.
class Rat {
public:
    Rat() = default;
    Rat(long v) : v_(v) {}
    Rat(int v) : v_(static_cast<long>(v)) {}
    Rat(long num, long den);
    explicit Rat(const mpq_class& v) : v_(v) { v_.canonicalize(); }
    explicit Rat(mpq_class&& v) : v_(std::move(v)) { v_.canonicalize(); }

    /// Accepts "p", "p/q", and decimal strings such as "-12.5e-3".
    /// Throws std::invalid_argument on malformed text or a zero denominator.
    static Rat parse(std::string_view text);

    /// Exact conversion; every finite double is a dyadic rational.
    static Rat from_double(double x);

    std::string str() const;  // "p" or "p/q"
    double to_double() const { return v_.get_d(); }

    const mpq_class& raw() const { return v_; }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    int sign() const { return sgn(v_); }
    bool is_zero() const { return sign() == 0; }

    mpz_class floor() const;
    mpz_class ceil() const;

    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
    friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.v_)); }

    friend bool operator==(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) == 0; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        const int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

private:
    mpq_class v_{0};
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

inline Rat min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }

}  // namespace moldable
