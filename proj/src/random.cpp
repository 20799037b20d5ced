#include "dseries/random.hpp"

#include <algorithm>
#include <limits>

#include "dseries/error.hpp"

namespace dseries {

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi)
{
    if (hi < lo) {
        fail(Errc::invalid_argument, "empty integer range");
    }
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) {
        return static_cast<std::int64_t>(next());
    }
    // Rejection keeps the draw unbiased.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x = next();
    while (x >= limit) {
        x = next();
    }
    return lo + static_cast<std::int64_t>(x % span);
}

double Rng::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

Scalar random_scalar(Rng& rng, const RandomSeriesSpec& spec)
{
    auto part = [&] {
        const std::int64_t num = rng.uniform(-spec.max_num, spec.max_num);
        const std::int64_t den = rng.uniform(1, spec.max_den);
        Rational q(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
        q.canonicalize();
        return q;
    };
    if (spec.mode == ScalarMode::exact) {
        Rational re = part();
        Rational im = spec.complex ? part() : Rational(0);
        re.canonicalize();
        im.canonicalize();
        return Scalar(ExactComplex(re, im));
    }
    const double re = rng.uniform_real(-1.0, 1.0);
    const double im = spec.complex ? rng.uniform_real(-1.0, 1.0) : 0.0;
    return Scalar(FloatComplex(re, im));
}

Series random_series(Rng& rng, const RandomSeriesSpec& spec)
{
    Series f(spec.window, spec.mode);
    for (u64 n = 1; n <= spec.window; ++n) {
        if (rng.coin(spec.density)) {
            f.set(n, random_scalar(rng, spec));
        }
    }
    return f;
}

Series random_unit(Rng& rng, const RandomSeriesSpec& spec)
{
    Series f = random_series(rng, spec);
    Scalar a1 = random_scalar(rng, spec);
    while (a1.is_zero()) {
        a1 = random_scalar(rng, spec);
    }
    f.set(1, a1);
    return f;
}

std::vector<u64> smooth_support(std::uint32_t max_index, std::uint32_t max_omega, const PrimeTable& table)
{
    std::vector<u64> out;
    auto rec = [&](auto&& self, std::uint32_t from, std::uint32_t left, u64 value) -> void {
        out.push_back(value);
        if (left == 0) {
            return;
        }
        for (std::uint32_t i = from; i <= max_index; ++i) {
            u64 next = 0;
            if (!checked_mul(value, table.prime(i), default_ceiling, next)) {
                fail(Errc::overflow, "smooth support exceeds the integer ceiling");
            }
            self(self, i, left - 1, next);
        }
    };
    rec(rec, 1, max_omega, 1);
    std::sort(out.begin(), out.end());
    return out;
}

Series random_series_on(Rng& rng, std::span<const u64> support, u64 window, const RandomSeriesSpec& spec)
{
    Series f(window, spec.mode);
    for (u64 n : support) {
        if (n <= window && rng.coin(spec.density)) {
            f.set(n, random_scalar(rng, spec));
        }
    }
    return f;
}

Permutation random_permutation(Rng& rng, std::uint32_t max_index, std::uint32_t moved)
{
    std::vector<std::uint32_t> points(max_index);
    for (std::uint32_t i = 0; i < max_index; ++i) {
        points[i] = i + 1;
    }
    moved = std::min(moved, max_index);
    // Partial Fisher-Yates for the subset, then a full shuffle of it.
    for (std::uint32_t i = 0; i < moved; ++i) {
        std::swap(points[i], points[static_cast<std::size_t>(rng.uniform(i, max_index - 1))]);
    }
    std::vector<std::uint32_t> images(points.begin(), points.begin() + moved);
    for (std::uint32_t i = moved; i > 1; --i) {
        std::swap(images[i - 1], images[static_cast<std::size_t>(rng.uniform(0, i - 1))]);
    }
    Permutation::Map map;
    for (std::uint32_t i = 0; i < moved; ++i) {
        map.emplace(points[i], images[i]);
    }
    return Permutation::from_map(map);
}

} // namespace dseries
