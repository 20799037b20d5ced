#include "dseries/poly.hpp"

#include <algorithm>
#include <string>

#include "dseries/error.hpp"

namespace dseries {

SparseMultiPoly::SparseMultiPoly(std::uint32_t nvars, ScalarMode mode, Map terms) : SparseMultiPoly(nvars, mode)
{
    for (auto& [m, c] : terms) {
        set(m, std::move(c));
    }
}

SparseMultiPoly SparseMultiPoly::constant(const Scalar& c, std::uint32_t nvars)
{
    SparseMultiPoly p(nvars, c.mode());
    p.set(Monomial{}, c);
    return p;
}

SparseMultiPoly SparseMultiPoly::variable(std::uint32_t index, ScalarMode mode)
{
    SparseMultiPoly p(index, mode);
    p.set(Monomial({{index, 1}}), Scalar::one(mode));
    return p;
}

Scalar SparseMultiPoly::coeff(const Monomial& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar::zero(mode_) : it->second;
}

void SparseMultiPoly::set(const Monomial& m, Scalar c)
{
    if (m.max_index() > nvars_) {
        fail(Errc::invalid_argument, "monomial uses x_" + std::to_string(m.max_index()) + " but nvars is " +
                                         std::to_string(nvars_));
    }
    if (c.mode() != mode_) {
        fail(Errc::invalid_argument, "coefficient mode differs from polynomial mode");
    }
    if (c.is_zero()) {
        terms_.erase(m);
    } else {
        terms_.insert_or_assign(m, std::move(c));
    }
}

std::uint32_t SparseMultiPoly::degree_in(std::uint32_t index) const
{
    std::uint32_t d = 0;
    for (const auto& [m, c] : terms_) {
        d = std::max(d, m.exponent_of(index));
    }
    return d;
}

std::uint32_t SparseMultiPoly::total_degree() const
{
    std::uint32_t d = 0;
    for (const auto& [m, c] : terms_) {
        d = std::max(d, m.omega());
    }
    return d;
}

std::vector<std::uint32_t> SparseMultiPoly::variables() const
{
    std::vector<std::uint32_t> vars;
    for (const auto& [m, c] : terms_) {
        for (const auto& e : m.entries()) {
            vars.push_back(e.index);
        }
    }
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
}

SparseMultiPoly SparseMultiPoly::to_mode(ScalarMode mode) const
{
    SparseMultiPoly p(nvars_, mode);
    for (const auto& [m, c] : terms_) {
        p.set(m, c.to_mode(mode));
    }
    return p;
}

SparseMultiPoly SparseMultiPoly::with_nvars(std::uint32_t nvars) const
{
    SparseMultiPoly p(nvars, mode_);
    for (const auto& [m, c] : terms_) {
        p.set(m, c);
    }
    return p;
}

Monomial monomial_product(const Monomial& a, const Monomial& b)
{
    std::vector<PrimePower> out;
    auto ia = a.entries().begin();
    auto ib = b.entries().begin();
    while (ia != a.entries().end() || ib != b.entries().end()) {
        if (ib == b.entries().end() || (ia != a.entries().end() && ia->index < ib->index)) {
            out.push_back(*ia++);
        } else if (ia == a.entries().end() || ib->index < ia->index) {
            out.push_back(*ib++);
        } else {
            out.push_back({ia->index, ia->exponent + ib->exponent});
            ++ia;
            ++ib;
        }
    }
    return Monomial(std::move(out));
}

namespace {

void require_same_mode(const SparseMultiPoly& p, const SparseMultiPoly& q)
{
    if (p.mode() != q.mode()) {
        fail(Errc::invalid_argument, "polynomial scalar modes differ");
    }
}

} // namespace

SparseMultiPoly poly_add(const SparseMultiPoly& p, const SparseMultiPoly& q)
{
    require_same_mode(p, q);
    SparseMultiPoly result = p.with_nvars(std::max(p.nvars(), q.nvars()));
    for (const auto& [m, c] : q.terms()) {
        result.set(m, result.coeff(m) + c);
    }
    return result;
}

SparseMultiPoly poly_sub(const SparseMultiPoly& p, const SparseMultiPoly& q)
{
    return poly_add(p, poly_scale(Scalar::from_int(-1, q.mode()), q));
}

SparseMultiPoly poly_mul(const SparseMultiPoly& p, const SparseMultiPoly& q)
{
    require_same_mode(p, q);
    SparseMultiPoly::Map acc;
    for (const auto& [mp, cp] : p.terms()) {
        for (const auto& [mq, cq] : q.terms()) {
            auto [it, fresh] = acc.try_emplace(monomial_product(mp, mq), cp * cq);
            if (!fresh) {
                it->second += cp * cq;
            }
        }
    }
    return SparseMultiPoly(std::max(p.nvars(), q.nvars()), p.mode(), std::move(acc));
}

SparseMultiPoly poly_scale(const Scalar& c, const SparseMultiPoly& p)
{
    SparseMultiPoly result(p.nvars(), p.mode());
    for (const auto& [m, a] : p.terms()) {
        result.set(m, c * a);
    }
    return result;
}

SparseMultiPoly poly_dilate(const SparseMultiPoly& p, const Scalar& r)
{
    SparseMultiPoly result(p.nvars(), p.mode());
    for (const auto& [m, a] : p.terms()) {
        result.set(m, pow(r, m.omega()) * a);
    }
    return result;
}

SparseMultiPoly poly_restrict_variables(const SparseMultiPoly& p, std::span<const std::uint32_t> keep)
{
    SparseMultiPoly result(p.nvars(), p.mode());
    for (const auto& [m, a] : p.terms()) {
        const bool kept = std::all_of(m.entries().begin(), m.entries().end(), [&](const PrimePower& e) {
            return std::binary_search(keep.begin(), keep.end(), e.index);
        });
        if (kept) {
            result.set(m, a);
        }
    }
    return result;
}

SparseMultiPoly poly_truncate_to_window(const SparseMultiPoly& p, u64 window, const PrimeTable& table)
{
    SparseMultiPoly result(p.nvars(), p.mode());
    for (const auto& [m, a] : p.terms()) {
        u64 n = 1;
        bool fits = true;
        for (const auto& e : m.entries()) {
            for (std::uint32_t k = 0; k < e.exponent && fits; ++k) {
                fits = checked_mul(n, table.prime(e.index), window, n);
            }
        }
        if (fits) {
            result.set(m, a);
        }
    }
    return result;
}

} // namespace dseries
