#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace qpa {

/// Arbitrary-precision rational, always stored in canonical (reduced) form.
using Rat = mpq_class;

/// Raised when a rational function is evaluated at a root of its denominator.
class PoleError : public std::runtime_error {
public:
    explicit PoleError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised on arithmetic between scalars of different modes (generic vs root).
class ModeError : public std::logic_error {
public:
    explicit ModeError(const std::string& what) : std::logic_error(what) {}
};

inline std::string rat_to_string(const Rat& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Parses "a/b" or a bare integer "a".
inline Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    Rat r;
    if (slash == std::string::npos) {
        r = Rat(mpz_class(s));
    } else {
        mpz_class num(s.substr(0, slash));
        mpz_class den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("rational with zero denominator: " + s);
        r = Rat(num, den);
    }
    r.canonicalize();
    return r;
}

/// Exact square root in Q, if it exists.
inline std::optional<Rat> rat_sqrt(const Rat& a) {
    if (a < 0) return std::nullopt;
    if (a == 0) return Rat(0);
    mpz_class n = a.get_num(), d = a.get_den();
    mpz_class sn, sd;
    mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
    if (sn * sn != n || sd * sd != d) return std::nullopt;
    Rat r(sn, sd);
    r.canonicalize();
    return r;
}

} // namespace qpa
