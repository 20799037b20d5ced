#include "dseries/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <vector>

#include "dseries/error.hpp"

namespace dseries {

namespace {

constexpr std::string_view zigzag_text = "(... 4 2 1 3 5 ...)";

std::string trim(std::string_view s)
{
    auto b = s.find_first_not_of(" \t\n\r");
    if (b == std::string_view::npos) {
        return {};
    }
    auto e = s.find_last_not_of(" \t\n\r");
    return std::string(s.substr(b, e - b + 1));
}

} // namespace

Permutation Permutation::from_map(const Map& map)
{
    Permutation p;
    std::set<std::uint32_t> images;
    for (const auto& [from, to] : map) {
        if (from == 0 || to == 0) {
            fail(Errc::invalid_argument, "permutations act on positive integers");
        }
        if (!images.insert(to).second) {
            fail(Errc::invalid_argument, "permutation map is not injective");
        }
    }
    for (const auto& [from, to] : map) {
        if (!map.contains(to)) {
            fail(Errc::invalid_argument, "permutation map does not send its support onto itself");
        }
        if (from != to) {
            p.forward_.emplace(from, to);
            p.backward_.emplace(to, from);
        }
    }
    return p;
}

Permutation Permutation::parse(std::string_view text)
{
    const std::string s = trim(text);
    if (s == zigzag_text || s == "zigzag") {
        return zigzag();
    }
    Map map;
    std::size_t pos = 0;
    while (pos < s.size()) {
        if (std::isspace(static_cast<unsigned char>(s[pos]))) {
            ++pos;
            continue;
        }
        if (s[pos] != '(') {
            fail(Errc::invalid_argument, "expected '(' in cycle notation '" + s + "'");
        }
        const auto close = s.find(')', pos);
        if (close == std::string::npos) {
            fail(Errc::invalid_argument, "unterminated cycle in '" + s + "'");
        }
        std::vector<std::uint32_t> cycle;
        std::string body = s.substr(pos + 1, close - pos - 1);
        std::replace(body.begin(), body.end(), ',', ' ');
        std::istringstream in(body);
        std::string token;
        while (in >> token) {
            if (!std::all_of(token.begin(), token.end(), [](unsigned char c) { return std::isdigit(c); }) ||
                token.size() > 9) {
                fail(Errc::invalid_argument, "bad cycle entry '" + token + "'");
            }
            const auto v = static_cast<std::uint32_t>(std::stoul(token));
            if (v == 0) {
                fail(Errc::invalid_argument, "cycle entries must be positive");
            }
            cycle.push_back(v);
        }
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            if (map.contains(cycle[i])) {
                fail(Errc::invalid_argument, "cycles in '" + s + "' are not disjoint");
            }
            map.emplace(cycle[i], cycle[(i + 1) % cycle.size()]);
        }
        pos = close + 1;
    }
    return from_map(map);
}

Permutation Permutation::zigzag()
{
    auto forward = [](std::uint32_t i) -> std::uint32_t {
        if (i == 1) {
            return 3;
        }
        if (i == 2) {
            return 1;
        }
        return (i % 2 == 0) ? i - 2 : i + 2;
    };
    auto backward = [](std::uint32_t i) -> std::uint32_t {
        if (i == 1) {
            return 2;
        }
        if (i == 3) {
            return 1;
        }
        return (i % 2 == 0) ? i + 2 : i - 2;
    };
    return from_rule(std::string(zigzag_text), forward, backward);
}

Permutation Permutation::from_rule(std::string name, IndexFn forward, IndexFn backward)
{
    Permutation p;
    p.rule_ = std::make_shared<const Rule>(Rule{std::move(name), std::move(forward), std::move(backward)});
    return p;
}

std::uint32_t Permutation::operator()(std::uint32_t i) const
{
    if (rule_) {
        return rule_->forward(i);
    }
    auto it = forward_.find(i);
    return it == forward_.end() ? i : it->second;
}

std::uint32_t Permutation::inverse_apply(std::uint32_t i) const
{
    if (rule_) {
        return rule_->backward(i);
    }
    auto it = backward_.find(i);
    return it == backward_.end() ? i : it->second;
}

Permutation Permutation::inverse() const
{
    Permutation p;
    if (rule_) {
        p.rule_ = std::make_shared<const Rule>(Rule{rule_->name + "^-1", rule_->backward, rule_->forward});
    } else {
        p.forward_ = backward_;
        p.backward_ = forward_;
    }
    return p;
}

const Permutation::Map& Permutation::support_map() const
{
    if (rule_) {
        fail(Errc::invalid_argument, "rule-based permutation has no finite support map");
    }
    return forward_;
}

std::uint32_t Permutation::max_moved() const { return support_map().empty() ? 0 : support_map().rbegin()->first; }

std::string Permutation::to_string() const
{
    if (rule_) {
        return rule_->name;
    }
    if (forward_.empty()) {
        return "()";
    }
    std::string out;
    std::set<std::uint32_t> seen;
    for (const auto& [start, image] : forward_) {
        if (seen.contains(start)) {
            continue;
        }
        out += '(';
        std::uint32_t i = start;
        do {
            if (i != start) {
                out += ' ';
            }
            out += std::to_string(i);
            seen.insert(i);
            i = forward_.at(i);
        } while (i != start);
        out += ')';
    }
    return out;
}

Permutation compose(const Permutation& a, const Permutation& b)
{
    if (a.rule_ || b.rule_) {
        Permutation ai = a.inverse();
        Permutation bi = b.inverse();
        return Permutation::from_rule(
            a.to_string() + b.to_string(), [a, b](std::uint32_t i) { return a(b(i)); },
            [ai, bi](std::uint32_t i) { return bi(ai(i)); });
    }
    Permutation::Map map;
    for (const auto& [i, j] : b.forward_) {
        map.emplace(i, a(j));
    }
    for (const auto& [i, j] : a.forward_) {
        map.try_emplace(i, j);
    }
    return Permutation::from_map(map);
}

bool operator==(const Permutation& a, const Permutation& b)
{
    if (a.rule_ || b.rule_) {
        return a.rule_ == b.rule_;
    }
    return a.forward_ == b.forward_;
}

bool operator<(const Permutation& a, const Permutation& b)
{
    if (a.rule_ || b.rule_) {
        fail(Errc::invalid_argument, "rule-based permutations are not ordered");
    }
    return a.forward_ < b.forward_;
}

} // namespace dseries
