#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gnf {

// Per-agent sets of outgoing edge targets, kept sorted and duplicate-free so
// profiles compare and hash canonically.
struct StrategyProfile {
    std::vector<std::vector<int>> strategies;

    StrategyProfile() = default;
    explicit StrategyProfile(int n) : strategies(n) {}

    int n() const { return static_cast<int>(strategies.size()); }

    void set(int agent, std::vector<int> targets) {
        std::sort(targets.begin(), targets.end());
        targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
        strategies[agent] = std::move(targets);
    }

    void add_edge(int agent, int target) {
        auto& s = strategies[agent];
        auto it = std::lower_bound(s.begin(), s.end(), target);
        if (it == s.end() || *it != target) s.insert(it, target);
    }

    void remove_edge(int agent, int target) {
        auto& s = strategies[agent];
        auto it = std::lower_bound(s.begin(), s.end(), target);
        if (it != s.end() && *it == target) s.erase(it);
    }

    bool has_edge(int agent, int target) const {
        const auto& s = strategies[agent];
        return std::binary_search(s.begin(), s.end(), target);
    }

    int edge_count() const {
        int total = 0;
        for (const auto& s : strategies) total += static_cast<int>(s.size());
        return total;
    }

    void validate(int n_agents) const {
        if (n() != n_agents) throw std::invalid_argument("profile size does not match agent count");
        for (int u = 0; u < n(); ++u) {
            for (int t : strategies[u]) {
                if (t < 0 || t >= n_agents) throw std::invalid_argument("strategy target out of range");
                if (t == u) throw std::invalid_argument("self-loop in strategy of agent " + std::to_string(u));
            }
        }
    }

    friend bool operator==(const StrategyProfile& a, const StrategyProfile& b) = default;
};

struct ProfileHash {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    friend bool operator==(const ProfileHash&, const ProfileHash&) = default;
};

// 128-bit FNV-1a style hash over the canonical encoding. Collisions are
// resolved by exact comparison wherever cycle claims are made.
inline ProfileHash hash_profile(const StrategyProfile& p) {
    auto mix = [](std::uint64_t h, std::uint64_t byte, std::uint64_t prime) {
        h ^= byte;
        return h * prime;
    };
    std::uint64_t a = 0xcbf29ce484222325ULL;
    std::uint64_t b = 0x9e3779b97f4a7c15ULL;
    auto feed = [&](std::uint64_t v) {
        a = mix(a, v, 0x100000001b3ULL);
        b = mix(b, v ^ 0x5bd1e995, 0xc6a4a7935bd1e995ULL);
    };
    feed(static_cast<std::uint64_t>(p.n()));
    for (const auto& s : p.strategies) {
        feed(0xfffffffffULL);  // agent separator
        for (int t : s) feed(static_cast<std::uint64_t>(t) + 1);
    }
    return {a, b};
}

// A single-edge strategy change: add, delete or swap of one outgoing edge.
struct Move {
    enum class Kind { del, swap, add };
    Kind kind;
    int remove = -1;  // valid for del/swap
    int add = -1;     // valid for swap/add

    std::string str() const {
        switch (kind) {
            case Kind::del: return "delete(" + std::to_string(remove) + ")";
            case Kind::swap: return "swap(" + std::to_string(remove) + "->" + std::to_string(add) + ")";
            case Kind::add: return "add(" + std::to_string(add) + ")";
        }
        return "?";
    }
};

inline std::vector<int> apply_move(const std::vector<int>& strategy, const Move& mv) {
    std::vector<int> out = strategy;
    auto erase = [&](int t) {
        auto it = std::lower_bound(out.begin(), out.end(), t);
        if (it == out.end() || *it != t) throw std::invalid_argument("move removes a missing edge");
        out.erase(it);
    };
    auto insert = [&](int t) {
        auto it = std::lower_bound(out.begin(), out.end(), t);
        if (it != out.end() && *it == t) throw std::invalid_argument("move adds an existing edge");
        out.insert(it, t);
    };
    switch (mv.kind) {
        case Move::Kind::del: erase(mv.remove); break;
        case Move::Kind::swap: erase(mv.remove); insert(mv.add); break;
        case Move::Kind::add: insert(mv.add); break;
    }
    return out;
}

}  // namespace gnf
