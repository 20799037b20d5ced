#pragma once

#include <map>

#include "dseries/series.hpp"
#include "oracles.hpp"

namespace helpers {

using namespace dseries;

inline Series exact(u64 window, std::initializer_list<std::pair<u64, Rational>> coeffs)
{
    Series f(window, ScalarMode::exact);
    for (const auto& [n, c] : coeffs) {
        f.set(n, Scalar(ExactComplex(c)));
    }
    return f;
}

inline Scalar q(long num, long den = 1)
{
    Rational r{mpz_class(num), mpz_class(den)};
    r.canonicalize();
    return Scalar(ExactComplex(r));
}

inline oracle::Dense to_dense(const Series& f)
{
    oracle::Dense d(f.window());
    for (const auto& [n, c] : f.coeffs()) {
        d.re[n] = c.exact().re();
        d.im[n] = c.exact().im();
    }
    return d;
}

inline Series from_dense(const oracle::Dense& d)
{
    Series f(d.window(), ScalarMode::exact);
    for (u64 n = 1; n <= d.window(); ++n) {
        f.set(n, Scalar(ExactComplex(d.re[n], d.im[n])));
    }
    return f;
}

inline std::map<u64, oracle::cd> to_float_map(const Series& f)
{
    std::map<u64, oracle::cd> out;
    for (const auto& [n, c] : f.coeffs()) {
        out[n] = c.as_float();
    }
    return out;
}

} // namespace helpers
