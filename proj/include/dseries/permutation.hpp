#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>

namespace dseries {

/// Permutation of the positive integers (prime indices).
///
/// Two kinds are supported: finitely supported permutations stored as the
/// off-identity map, and rule-based permutations given by a forward and an
/// inverse function (for instance the infinite cycle ... 4 2 1 3 5 ...).
/// Rule-based permutations cannot be compared or enumerated.
class Permutation {
public:
    using Map = std::map<std::uint32_t, std::uint32_t>;
    using IndexFn = std::function<std::uint32_t(std::uint32_t)>;

    Permutation() = default;

    /// Throws invalid_argument unless `map` is a bijection of its keys onto
    /// the same set. Fixed points are dropped.
    static Permutation from_map(const Map& map);

    /// Cycle notation over positive integers, e.g. "(1 2)(4 5 6)"; "()" or
    /// "" is the identity. The token "(... 4 2 1 3 5 ...)" (alias "zigzag")
    /// denotes the infinite cycle that sends 2k+2 -> 2k, 2 -> 1, 1 -> 3 and
    /// 2k+1 -> 2k+3.
    static Permutation parse(std::string_view text);

    static Permutation zigzag();
    static Permutation from_rule(std::string name, IndexFn forward, IndexFn backward);

    std::uint32_t operator()(std::uint32_t i) const;
    std::uint32_t inverse_apply(std::uint32_t i) const;
    Permutation inverse() const;

    bool finite_support() const noexcept { return rule_ == nullptr; }
    bool is_identity() const noexcept { return finite_support() && forward_.empty(); }

    /// Off-identity map; throws for rule-based permutations.
    const Map& support_map() const;
    /// Largest moved point, 0 for the identity; throws for rule-based ones.
    std::uint32_t max_moved() const;

    std::string to_string() const;

    /// (a * b)(i) = a(b(i)).
    friend Permutation compose(const Permutation& a, const Permutation& b);

    friend bool operator==(const Permutation& a, const Permutation& b);
    friend bool operator<(const Permutation& a, const Permutation& b);

private:
    struct Rule {
        std::string name;
        IndexFn forward;
        IndexFn backward;
    };

    Map forward_;
    Map backward_;
    std::shared_ptr<const Rule> rule_;
};

} // namespace dseries
