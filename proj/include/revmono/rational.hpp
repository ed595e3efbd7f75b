#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace revmono {

using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rat: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Parses "num" or "num/den" with optional sign, decimal digits only.
inline Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("rat_from_string: empty");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            Rat r(mpz_class(s, 10));
            return r;
        }
        mpz_class num(s.substr(0, slash), 10);
        mpz_class den(s.substr(slash + 1), 10);
        if (den == 0) throw std::invalid_argument("rat_from_string: zero denominator");
        Rat r(num, den);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("rat_from_string: bad literal '" + s + "'");
    }
}

inline std::string num_string(const Rat& r) { return r.get_num().get_str(10); }
inline std::string den_string(const Rat& r) { return r.get_den().get_str(10); }

// "num" when integral, otherwise "num/den".
inline std::string rat_to_string(const Rat& r) {
    if (r.get_den() == 1) return num_string(r);
    return num_string(r) + "/" + den_string(r);
}

inline double rat_to_double(const Rat& r) { return r.get_d(); }

inline const Rat& rat_min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline const Rat& rat_max(const Rat& a, const Rat& b) { return a < b ? b : a; }

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

}  // namespace revmono
