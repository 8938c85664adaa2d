#include "moldable/rat.hpp"

#include <cctype>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace moldable {

Rat::Rat(long num, long den) {
    if (den == 0) throw std::invalid_argument("Rat: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) throw std::domain_error("Rat: division by zero");
    v_ /= o.v_;
    return *this;
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

mpz_class parse_int(std::string_view s) {
    bool neg = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) throw std::invalid_argument("Rat: bad integer '" + std::string(s) + "'");
    mpz_class z(std::string(s), 10);
    return neg ? mpz_class(-z) : z;
}

mpz_class pow10(unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
    return r;
}

}  // namespace

Rat Rat::parse(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw std::invalid_argument("Rat: empty string");

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        mpz_class n = parse_int(text.substr(0, slash));
        std::string_view ds = text.substr(slash + 1);
        if (!all_digits(ds)) throw std::invalid_argument("Rat: bad denominator in '" + std::string(text) + "'");
        mpz_class d(std::string(ds), 10);
        if (d == 0) throw std::invalid_argument("Rat: zero denominator");
        mpq_class q(n, d);
        q.canonicalize();
        return Rat(std::move(q));
    }

    bool neg = false;
    std::string_view s = text;
    if (s.front() == '-' || s.front() == '+') {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        mpz_class ez = parse_int(s.substr(e + 1));
        if (!ez.fits_slong_p() || abs(ez) > 100000) throw std::invalid_argument("Rat: exponent out of range");
        exponent = ez.get_si();
        s = s.substr(0, e);
    }
    std::string digits;
    long frac_len = 0;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
        if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
            throw std::invalid_argument("Rat: bad decimal '" + std::string(text) + "'");
        digits = std::string(ip) + std::string(fp);
        frac_len = static_cast<long>(fp.size());
    } else {
        if (!all_digits(s)) throw std::invalid_argument("Rat: bad number '" + std::string(text) + "'");
        digits = std::string(s);
    }
    mpq_class q(mpz_class(digits, 10));
    const long scale = exponent - frac_len;
    if (scale > 0) q *= pow10(static_cast<unsigned long>(scale));
    if (scale < 0) q /= pow10(static_cast<unsigned long>(-scale));
    q.canonicalize();
    if (neg) q = -q;
    return Rat(std::move(q));
}

Rat Rat::from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("Rat: non-finite double");
    mpq_class q;
    q = x;
    return Rat(std::move(q));
}

std::string Rat::str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

mpz_class Rat::floor() const {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return r;
}

mpz_class Rat::ceil() const {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return r;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

}  // namespace moldable
