#include "gnf/setcover.hpp"

#include <algorithm>

namespace gnf {

namespace {

struct ExactState {
    const CoverInstance& inst;
    std::vector<std::vector<int>> coverers;  // element -> candidate indices
    std::vector<int> cover_count;            // how often each element is covered so far
    std::vector<char> used;
    std::vector<int> chosen;                 // candidate indices
    Rat chosen_weight;

    bool have_best = false;
    Rat best_weight;
    std::vector<int> best_ids;

    explicit ExactState(const CoverInstance& i) : inst(i) {
        coverers.resize(inst.n_elements);
        for (size_t c = 0; c < inst.candidates.size(); ++c)
            for (int e : inst.candidates[c].covers) coverers[e].push_back(static_cast<int>(c));
        cover_count.assign(inst.n_elements, 0);
        used.assign(inst.candidates.size(), 0);
    }

    bool better_than_best(const Rat& w, const std::vector<int>& ids) const {
        if (!have_best) return true;
        if (w != best_weight) return w < best_weight;
        if (ids.size() != best_ids.size()) return ids.size() < best_ids.size();
        return ids < best_ids;
    }

    std::vector<int> chosen_ids() const {
        std::vector<int> ids;
        ids.reserve(chosen.size());
        for (int c : chosen) ids.push_back(inst.candidates[c].id);
        std::sort(ids.begin(), ids.end());
        return ids;
    }

    void solve() {
        if (have_best && chosen_weight > best_weight) return;
        int pick = -1;
        size_t fewest = SIZE_MAX;
        for (int e = 0; e < inst.n_elements; ++e) {
            if (cover_count[e] > 0) continue;
            size_t options = 0;
            for (int c : coverers[e])
                if (!used[c]) ++options;
            if (options < fewest) {
                fewest = options;
                pick = e;
            }
        }
        if (pick < 0) {
            auto ids = chosen_ids();
            if (better_than_best(chosen_weight, ids)) {
                have_best = true;
                best_weight = chosen_weight;
                best_ids = std::move(ids);
            }
            return;
        }
        if (fewest == 0) return;  // uncoverable on this branch
        // Complete branching: candidate j covers `pick`, with all earlier
        // coverers of `pick` excluded on that branch.
        std::vector<int> options;
        for (int c : coverers[pick])
            if (!used[c]) options.push_back(c);
        std::vector<int> banned;
        for (int c : options) {
            used[c] = 1;
            chosen.push_back(c);
            chosen_weight += inst.candidates[c].weight;
            for (int e : inst.candidates[c].covers) ++cover_count[e];
            solve();
            for (int e : inst.candidates[c].covers) --cover_count[e];
            chosen_weight -= inst.candidates[c].weight;
            chosen.pop_back();
            banned.push_back(c);  // stays used=1 for the remaining options
        }
        for (int c : banned) used[c] = 0;
    }
};

}  // namespace

std::optional<std::vector<int>> exact_weighted_cover(const CoverInstance& inst) {
    ExactState state(inst);
    state.solve();
    if (!state.have_best) return std::nullopt;
    return state.best_ids;
}

std::optional<std::vector<int>> greedy_weighted_cover(const CoverInstance& inst) {
    std::vector<char> covered(inst.n_elements, 0);
    std::vector<char> used(inst.candidates.size(), 0);
    int remaining = inst.n_elements;
    std::vector<int> ids;
    while (remaining > 0) {
        int pick = -1;
        int pick_new = 0;
        Rat pick_w;
        for (size_t c = 0; c < inst.candidates.size(); ++c) {
            if (used[c]) continue;
            int fresh = 0;
            for (int e : inst.candidates[c].covers)
                if (!covered[e]) ++fresh;
            if (fresh == 0) continue;
            // price = weight / fresh; compare by cross multiplication
            const Rat& w = inst.candidates[c].weight;
            bool take;
            if (pick < 0) {
                take = true;
            } else {
                Rat lhs = w * Rat(pick_new);
                Rat rhs = pick_w * Rat(fresh);
                take = lhs < rhs ||
                       (lhs == rhs && inst.candidates[c].id < inst.candidates[pick].id);
            }
            if (take) {
                pick = static_cast<int>(c);
                pick_new = fresh;
                pick_w = w;
            }
        }
        if (pick < 0) return std::nullopt;  // uncoverable
        used[pick] = 1;
        ids.push_back(inst.candidates[pick].id);
        for (int e : inst.candidates[pick].covers) {
            if (!covered[e]) {
                covered[e] = 1;
                --remaining;
            }
        }
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

}  // namespace gnf
