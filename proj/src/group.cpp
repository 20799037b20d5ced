#include "dseries/group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "dseries/error.hpp"

namespace dseries {

namespace {

class DisjointSet {
public:
    explicit DisjointSet(std::size_t n) : parent_(n), rank_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x)
    {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a == b) {
            return;
        }
        if (rank_[a] < rank_[b]) {
            std::swap(a, b);
        }
        parent_[b] = a;
        if (rank_[a] == rank_[b]) {
            ++rank_[a];
        }
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::uint8_t> rank_;
};

// Value of f when it is at most `limit`. `beyond_table` is set when f uses a
// prime past the table: the value then exceeds table.bound(), but whether it
// exceeds `limit` is only known when limit <= table.bound().
struct Bounded {
    std::optional<u64> value;
    bool beyond_table = false;
};

Bounded bounded_value(const Factorization& f, const PrimeTable& table, u64 limit)
{
    u64 result = 1;
    for (const auto& e : f.entries()) {
        if (e.index > table.prime_count()) {
            return {std::nullopt, limit > table.bound()};
        }
        const u64 p = table.prime(e.index);
        for (std::uint32_t k = 0; k < e.exponent; ++k) {
            if (!checked_mul(result, p, limit, result)) {
                return {};
            }
        }
    }
    return {result};
}

Factorization hat_apply_inverse(const Permutation& sigma, const Factorization& n)
{
    std::vector<PrimePower> entries;
    for (const auto& e : n.entries()) {
        entries.push_back({sigma.inverse_apply(e.index), e.exponent});
    }
    std::sort(entries.begin(), entries.end());
    return Factorization(std::move(entries));
}

bool all_finite(std::span<const Permutation> generators)
{
    return std::all_of(generators.begin(), generators.end(), [](const Permutation& g) { return g.finite_support(); });
}

// Whether the index orbit of i stays within 1..index_bound.
bool index_orbit_finite(std::span<const Permutation> generators, std::uint32_t i, std::uint32_t index_bound)
{
    if (all_finite(generators)) {
        return true;
    }
    std::set<std::uint32_t> seen{i};
    std::deque<std::uint32_t> queue{i};
    while (!queue.empty()) {
        const std::uint32_t x = queue.front();
        queue.pop_front();
        for (const auto& g : generators) {
            for (std::uint32_t y : {g(x), g.inverse_apply(x)}) {
                if (y > index_bound) {
                    return false;
                }
                if (seen.insert(y).second) {
                    queue.push_back(y);
                }
            }
        }
    }
    return true;
}

} // namespace

PermutationGroup::PermutationGroup(std::vector<Permutation> generators, std::size_t enumeration_cap)
    : generators_(std::move(generators)), cap_(enumeration_cap)
{
    if (!finitely_supported()) {
        return;
    }
    std::set<Permutation> seen{Permutation{}};
    std::deque<Permutation> queue{Permutation{}};
    while (!queue.empty()) {
        const Permutation x = queue.front();
        queue.pop_front();
        for (const auto& g : generators_) {
            Permutation y = compose(g, x);
            if (seen.insert(y).second) {
                if (seen.size() > cap_) {
                    return;
                }
                queue.push_back(std::move(y));
            }
        }
    }
    elements_.emplace(seen.begin(), seen.end());
}

const std::vector<Permutation>& PermutationGroup::elements() const
{
    if (!elements_) {
        fail(Errc::group_too_large, "group is not enumerated (rule-based generators or more than " +
                                        std::to_string(cap_) + " elements)");
    }
    return *elements_;
}

bool PermutationGroup::finitely_supported() const noexcept { return all_finite(generators_); }

UnresolvedPolicy parse_policy(const std::string& text)
{
    if (text == "error") {
        return UnresolvedPolicy::error;
    }
    if (text == "zero_unresolved") {
        return UnresolvedPolicy::zero_unresolved;
    }
    fail(Errc::invalid_argument, "unknown policy '" + text + "' (expected error or zero_unresolved)");
}

Factorization hat_apply(const Permutation& sigma, const Factorization& n)
{
    std::vector<PrimePower> entries;
    entries.reserve(n.entries().size());
    for (const auto& e : n.entries()) {
        entries.push_back({sigma(e.index), e.exponent});
    }
    std::sort(entries.begin(), entries.end());
    return Factorization(std::move(entries));
}

u64 hat_apply(const Permutation& sigma, u64 n, const PrimeTable& table, u64 ceiling)
{
    return table.value(hat_apply(sigma, table.factor_smooth(n)), ceiling);
}

Series act(const Permutation& sigma, const Series& f, const PrimeTable& table, u64 ceiling)
{
    Series::Map moved;
    u64 window = f.window();
    for (const auto& [k, a] : f.coeffs()) {
        const u64 image = hat_apply(sigma, k, table, ceiling);
        window = std::max(window, image);
        moved.emplace(image, a);
    }
    return Series(window, f.mode(), std::move(moved));
}

SparseMultiPoly act(const Permutation& sigma, const SparseMultiPoly& p)
{
    std::uint32_t nvars = p.nvars();
    for (std::uint32_t v : p.variables()) {
        nvars = std::max(nvars, sigma(v));
    }
    return poly_relabel(p, [&](std::uint32_t i) { return sigma(i); }, nvars);
}

IntegerOrbit integer_orbit(std::span<const Permutation> generators, u64 n, u64 bound, const PrimeTable& table)
{
    if (n < 1 || n > bound) {
        fail(Errc::invalid_argument, "orbit seed must lie in [1, bound]");
    }
    IntegerOrbit orbit;
    orbit.seed = n;
    orbit.bound = bound;
    std::set<u64> members{n};
    std::deque<Factorization> queue{table.factor_smooth(n)};
    while (!queue.empty()) {
        const Factorization x = std::move(queue.front());
        queue.pop_front();
        for (const auto& g : generators) {
            for (const Factorization& y : {hat_apply(g, x), hat_apply_inverse(g, x)}) {
                const Bounded image = bounded_value(y, table, bound);
                if (!image.value) {
                    orbit.status = OrbitStatus::unresolved;
                    if (image.beyond_table) {
                        // Only the escape past the sieve is certified.
                        orbit.bound = std::min(orbit.bound, table.bound());
                    }
                    continue;
                }
                if (members.insert(*image.value).second) {
                    queue.push_back(y);
                }
            }
        }
    }
    orbit.members.assign(members.begin(), members.end());
    return orbit;
}

OrbitPartition index_orbits(std::span<const Permutation> generators, std::uint32_t index_bound)
{
    OrbitPartition partition;
    partition.index_bound = index_bound;
    DisjointSet sets(index_bound + 1);
    std::vector<bool> escapes(index_bound + 1, false);
    for (std::uint32_t i = 1; i <= index_bound; ++i) {
        for (const auto& g : generators) {
            for (std::uint32_t j : {g(i), g.inverse_apply(i)}) {
                if (j > index_bound) {
                    escapes[i] = true;
                } else {
                    sets.unite(i, j);
                }
            }
        }
    }
    std::map<std::size_t, std::size_t> orbit_of_root;
    for (std::uint32_t i = 1; i <= index_bound; ++i) {
        const std::size_t root = sets.find(i);
        auto [it, fresh] = orbit_of_root.try_emplace(root, partition.orbits.size());
        if (fresh) {
            partition.orbits.emplace_back();
        }
        auto& orbit = partition.orbits[it->second];
        orbit.members.push_back(i);
        if (escapes[i]) {
            orbit.status = OrbitStatus::unresolved;
        }
    }
    return partition;
}

Series project_invariant(const Series& f, const PermutationGroup& group, UnresolvedPolicy policy,
                         const PrimeTable& table, u64 ceiling)
{
    const auto& gens = group.generators();
    const auto index_bound = static_cast<std::uint32_t>(table.prime_count());
    std::map<std::uint32_t, bool> index_finite;
    auto finite_index = [&](std::uint32_t i) {
        auto [it, fresh] = index_finite.try_emplace(i, false);
        if (fresh) {
            it->second = index_orbit_finite(gens, i, index_bound);
        }
        return it->second;
    };

    struct OrbitSum {
        std::vector<u64> members;
        Scalar sum;
    };
    std::vector<OrbitSum> orbits;
    std::map<u64, std::size_t> orbit_of;
    for (const auto& [k, a] : f.coeffs()) {
        if (auto it = orbit_of.find(k); it != orbit_of.end()) {
            orbits[it->second].sum += a;
            continue;
        }
        const Factorization fk = table.factor_smooth(k);
        const bool resolved = std::all_of(fk.entries().begin(), fk.entries().end(),
                                          [&](const PrimePower& e) { return finite_index(e.index); });
        IntegerOrbit orbit;
        if (resolved) {
            orbit = integer_orbit(gens, k, ceiling, table);
        }
        if (!resolved || orbit.status != OrbitStatus::finite) {
            if (policy == UnresolvedPolicy::error) {
                fail(Errc::unresolved_orbit, "orbit of " + std::to_string(k) + " is not finite within the bounds");
            }
            continue;
        }
        for (u64 m : orbit.members) {
            orbit_of.emplace(m, orbits.size());
        }
        orbits.push_back({std::move(orbit.members), a});
    }

    u64 window = f.window();
    Series::Map coeffs;
    for (auto& orbit : orbits) {
        const Scalar avg = orbit.sum / Scalar::from_int(static_cast<long>(orbit.members.size()), f.mode());
        for (u64 m : orbit.members) {
            window = std::max(window, m);
            coeffs.emplace(m, avg);
        }
    }
    return Series(window, f.mode(), std::move(coeffs));
}

Series group_average(const Series& f, const PermutationGroup& group, const PrimeTable& table, u64 ceiling)
{
    const auto& elements = group.elements();
    u64 window = f.window();
    Series::Map acc;
    for (const auto& sigma : elements) {
        const Series moved = act(sigma, f, table, ceiling);
        window = std::max(window, moved.window());
        for (const auto& [n, a] : moved.coeffs()) {
            auto [it, fresh] = acc.try_emplace(n, a);
            if (!fresh) {
                it->second += a;
            }
        }
    }
    const Scalar order = Scalar::from_int(static_cast<long>(elements.size()), f.mode());
    for (auto& [n, a] : acc) {
        a /= order;
    }
    return Series(window, f.mode(), std::move(acc));
}

InvarianceReport is_invariant(const Series& f, const PermutationGroup& group, const PrimeTable& table)
{
    InvarianceReport report;
    for (const auto& [n, a] : f.coeffs()) {
        const Factorization fn = table.factor_smooth(n);
        bool escaped = false;
        for (std::size_t gi = 0; gi < group.generators().size(); ++gi) {
            const Bounded image = bounded_value(hat_apply(group.generators()[gi], fn), table, f.window());
            if (!image.value) {
                escaped = true;
                continue;
            }
            if (!(f.coeff(*image.value) == a)) {
                report.status = InvarianceReport::Status::violated;
                report.witness = n;
                report.generator = gi;
                return report;
            }
        }
        if (escaped) {
            report.escaping.push_back(n);
        }
    }
    if (!report.escaping.empty()) {
        report.status = InvarianceReport::Status::inconclusive;
    }
    return report;
}

Series phi_restrict(const Series& f, std::span<const std::uint32_t> indices, const PrimeTable& table)
{
    if (!std::is_sorted(indices.begin(), indices.end())) {
        fail(Errc::invalid_argument, "index set must be sorted");
    }
    Series result(f.window(), f.mode());
    for (const auto& [n, a] : f.coeffs()) {
        const Factorization fn = table.factor_smooth(n);
        const bool member = std::all_of(fn.entries().begin(), fn.entries().end(), [&](const PrimePower& e) {
            return std::binary_search(indices.begin(), indices.end(), e.index);
        });
        if (member) {
            result.set(n, a);
        }
    }
    return result;
}

namespace {

void monomials_up_to(std::uint32_t nvars, std::uint32_t degree, std::uint32_t var, std::vector<PrimePower>& current,
                     std::vector<Monomial>& out)
{
    if (var > nvars) {
        out.emplace_back(current);
        return;
    }
    for (std::uint32_t e = 0; e <= degree; ++e) {
        if (e > 0) {
            current.push_back({var, e});
        }
        monomials_up_to(nvars, degree - e, var + 1, current, out);
        if (e > 0) {
            current.pop_back();
        }
    }
}

} // namespace

std::vector<SparseMultiPoly> invariant_orbit_sums(std::uint32_t nvars, std::uint32_t degree,
                                                  const PermutationGroup& group)
{
    const auto& elements = group.elements();
    for (const auto& sigma : elements) {
        for (const auto& [i, j] : sigma.support_map()) {
            if ((i <= nvars) != (j <= nvars)) {
                fail(Errc::invalid_argument, "group does not preserve the variables x_1..x_" + std::to_string(nvars));
            }
        }
    }
    std::vector<Monomial> monomials;
    std::vector<PrimePower> scratch;
    monomials_up_to(nvars, degree, 1, scratch, monomials);

    std::set<Monomial> assigned;
    std::vector<std::set<Monomial>> orbits;
    for (const auto& m : monomials) {
        if (assigned.contains(m)) {
            continue;
        }
        std::set<Monomial> orbit;
        for (const auto& sigma : elements) {
            orbit.insert(hat_apply(sigma, m));
        }
        assigned.insert(orbit.begin(), orbit.end());
        orbits.push_back(std::move(orbit));
    }
    std::sort(orbits.begin(), orbits.end(), [](const auto& a, const auto& b) {
        const auto da = a.begin()->omega();
        const auto db = b.begin()->omega();
        return da != db ? da < db : *a.begin() < *b.begin();
    });

    std::vector<SparseMultiPoly> sums;
    for (const auto& orbit : orbits) {
        SparseMultiPoly p(nvars, ScalarMode::exact);
        for (const auto& m : orbit) {
            p.set(m, Scalar::one(ScalarMode::exact));
        }
        sums.push_back(std::move(p));
    }
    return sums;
}

} // namespace dseries
