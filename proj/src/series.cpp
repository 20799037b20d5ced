#include "dseries/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dseries/error.hpp"

namespace dseries {

Series::Series(u64 window, ScalarMode mode) : window_(window), mode_(mode)
{
    if (window < 1) {
        fail(Errc::invalid_argument, "series window must be >= 1");
    }
}

Series::Series(u64 window, ScalarMode mode, Map coeffs) : Series(window, mode)
{
    for (auto& [n, c] : coeffs) {
        set(n, std::move(c));
    }
}

Series Series::one(u64 window, ScalarMode mode)
{
    Series s(window, mode);
    s.set(1, Scalar::one(mode));
    return s;
}

Series Series::zeta(u64 window, ScalarMode mode)
{
    Series s(window, mode);
    for (u64 n = 1; n <= window; ++n) {
        s.coeffs_.emplace_hint(s.coeffs_.end(), n, Scalar::one(mode));
    }
    return s;
}

Series Series::monomial(u64 n, const Scalar& c, u64 window)
{
    Series s(window, c.mode());
    s.set(n, c);
    return s;
}

Scalar Series::coeff(u64 n) const
{
    if (n < 1 || n > window_) {
        fail(Errc::invalid_argument, "index " + std::to_string(n) + " outside the window");
    }
    auto it = coeffs_.find(n);
    return it == coeffs_.end() ? Scalar::zero(mode_) : it->second;
}

void Series::set(u64 n, Scalar c)
{
    if (n < 1 || n > window_) {
        fail(Errc::invalid_argument,
             "index " + std::to_string(n) + " outside window [1, " + std::to_string(window_) + "]");
    }
    if (c.mode() != mode_) {
        fail(Errc::invalid_argument, "coefficient mode differs from series mode");
    }
    if (c.is_zero()) {
        coeffs_.erase(n);
    } else {
        coeffs_.insert_or_assign(n, std::move(c));
    }
}

Series Series::truncated(u64 window) const
{
    Series s(std::min(window, window_), mode_);
    for (auto it = coeffs_.begin(); it != coeffs_.end() && it->first <= s.window_; ++it) {
        s.coeffs_.emplace_hint(s.coeffs_.end(), it->first, it->second);
    }
    return s;
}

Series Series::with_window(u64 window) const
{
    if (window < max_index()) {
        fail(Errc::invalid_argument, "new window would drop stored coefficients");
    }
    Series s(window, mode_);
    s.coeffs_ = coeffs_;
    return s;
}

Series Series::to_mode(ScalarMode mode) const
{
    Series s(window_, mode);
    for (const auto& [n, c] : coeffs_) {
        s.set(n, c.to_mode(mode));
    }
    return s;
}

bool Series::identical(const Series& other) const
{
    return window_ == other.window_ && mode_ == other.mode_ && coeffs_ == other.coeffs_;
}

bool operator==(const Series& a, const Series& b)
{
    if (a.mode_ != b.mode_) {
        return false;
    }
    const u64 w = std::min(a.window_, b.window_);
    auto ia = a.coeffs_.begin();
    auto ib = b.coeffs_.begin();
    while (true) {
        const bool ea = ia == a.coeffs_.end() || ia->first > w;
        const bool eb = ib == b.coeffs_.end() || ib->first > w;
        if (ea || eb) {
            return ea && eb;
        }
        if (ia->first != ib->first || !(ia->second == ib->second)) {
            return false;
        }
        ++ia;
        ++ib;
    }
}

namespace {

void require_same_mode(const Series& f, const Series& g)
{
    if (f.mode() != g.mode()) {
        fail(Errc::invalid_argument, "series scalar modes differ");
    }
}

} // namespace

Series add(const Series& f, const Series& g)
{
    require_same_mode(f, g);
    Series result = f.truncated(g.window());
    for (const auto& [n, c] : g.coeffs()) {
        if (n > result.window()) {
            break;
        }
        auto it = result.coeffs().find(n);
        result.set(n, it == result.coeffs().end() ? c : it->second + c);
    }
    return result;
}

Series sub(const Series& f, const Series& g) { return add(f, scale(Scalar::from_int(-1, g.mode()), g)); }

Series scale(const Scalar& c, const Series& f)
{
    if (c.mode() != f.mode()) {
        fail(Errc::invalid_argument, "scalar mode differs from series mode");
    }
    Series result(f.window(), f.mode());
    for (const auto& [n, a] : f.coeffs()) {
        result.set(n, c * a);
    }
    return result;
}

Series mul(const Series& f, const Series& g)
{
    require_same_mode(f, g);
    const u64 window = std::min(f.window(), g.window());
    Series::Map acc;
    for (const auto& [d, a] : f.coeffs()) {
        if (d > window) {
            break;
        }
        for (const auto& [e, b] : g.coeffs()) {
            u64 n = 0;
            if (!checked_mul(d, e, window, n)) {
                break;
            }
            auto [it, fresh] = acc.try_emplace(n, a * b);
            if (!fresh) {
                it->second += a * b;
            }
        }
    }
    return Series(window, f.mode(), std::move(acc));
}

Series invert(const Series& f, double tolerance)
{
    const u64 window = f.window();
    auto first = f.coeffs().find(1);
    if (first == f.coeffs().end()) {
        fail(Errc::not_invertible, "constant coefficient a_1 is zero");
    }
    const Scalar& a1 = first->second;
    if (!a1.is_exact() && !(a1.abs() > tolerance)) {
        fail(Errc::not_invertible, "|a_1| does not exceed the inversion tolerance");
    }
    const Scalar inv_a1 = Scalar::one(f.mode()) / a1;

    // b_n = -(1/a_1) sum_{d | n, d > 1} a_d b_{n/d}. Contributions are pushed
    // forward from each finished b_m to the multiples d*m, so every pending
    // entry below the current index is already complete when it is popped.
    Series result(window, f.mode());
    Series::Map pending;
    pending.emplace(1, Scalar::zero(f.mode()));
    while (!pending.empty()) {
        auto node = pending.extract(pending.begin());
        const u64 m = node.key();
        const Scalar bm = (m == 1) ? inv_a1 : -(node.mapped() * inv_a1);
        if (bm.is_zero()) {
            continue;
        }
        for (const auto& [d, ad] : f.coeffs()) {
            if (d == 1) {
                continue;
            }
            u64 n = 0;
            if (!checked_mul(d, m, window, n)) {
                break;
            }
            auto [it, fresh] = pending.try_emplace(n, ad * bm);
            if (!fresh) {
                it->second += ad * bm;
            }
        }
        result.set(m, bm);
    }
    return result;
}

Series dilate(const Series& f, const Scalar& r, const PrimeTable& table)
{
    if (r.mode() != f.mode()) {
        fail(Errc::invalid_argument, "dilation factor mode differs from series mode");
    }
    Series result(f.window(), f.mode());
    for (const auto& [n, a] : f.coeffs()) {
        result.set(n, pow(r, table.factor_smooth(n).omega()) * a);
    }
    return result;
}

double l1_norm(const Series& f)
{
    // Summing sorted moduli makes the value depend only on the multiset of
    // coefficients, so rearrangements such as group actions preserve it exactly.
    std::vector<double> moduli;
    moduli.reserve(f.size());
    for (const auto& [n, a] : f.coeffs()) {
        moduli.push_back(a.abs());
    }
    std::sort(moduli.begin(), moduli.end());
    double total = 0.0;
    for (double m : moduli) {
        total += m;
    }
    return total;
}

namespace {

std::optional<Rational> exact_sqrt(const Rational& q)
{
    if (mpz_perfect_square_p(q.get_num_mpz_t()) == 0 || mpz_perfect_square_p(q.get_den_mpz_t()) == 0) {
        return std::nullopt;
    }
    mpz_class num;
    mpz_class den;
    mpz_sqrt(num.get_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(den.get_mpz_t(), q.get_den_mpz_t());
    return Rational(num, den);
}

} // namespace

std::optional<Rational> l1_norm_exact(const Series& f)
{
    if (f.mode() != ScalarMode::exact) {
        return std::nullopt;
    }
    Rational total = 0;
    for (const auto& [n, a] : f.coeffs()) {
        const auto& v = a.exact();
        if (v.is_real()) {
            total += abs(v.re());
        } else if (sgn(v.re()) == 0) {
            total += abs(v.im());
        } else if (auto root = exact_sqrt(v.norm())) {
            total += *root;
        } else {
            return std::nullopt;
        }
    }
    return total;
}

} // namespace dseries
