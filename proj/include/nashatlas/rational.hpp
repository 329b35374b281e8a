// Exact rational scalar type used throughout the library.
#ifndef NASHATLAS_RATIONAL_HPP
#define NASHATLAS_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace nashatlas {

using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

inline int rat_sign(const Rat& r) { return r < 0 ? -1 : (r > 0 ? 1 : 0); }

// Parses "p", "-p/q" or a plain decimal integer. Throws on malformed input.
inline Rat parse_rat(const std::string& text) {
    try {
        return Rat(text);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a rational: '" + text + "'");
    }
}

inline std::string to_string(const Rat& r) { return r.str(); }

using RatVec = std::vector<Rat>;

inline std::vector<double> to_doubles(const RatVec& v) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = to_double(v[i]);
    return out;
}

}  // namespace nashatlas

#endif
