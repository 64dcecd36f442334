#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>

#include "dpds/query_model.hpp"

// Quine-McCluskey: enumerate the minterms of the tree's boolean function,
// combine them into prime implicants, pick essential primes, then cover the
// rest (exhaustively when the prime table is small, greedily otherwise).
// The chosen sum-of-products is re-binarized into a right-leaning tree.

namespace dpds {

namespace {

constexpr int kMaxAtomics = 16;

// Implicant over n variables: `values` holds the fixed bits, `dashes` marks
// the don't-care positions.
struct Implicant {
    std::uint32_t values = 0;
    std::uint32_t dashes = 0;

    bool operator<(const Implicant& o) const {
        return std::tie(dashes, values) < std::tie(o.dashes, o.values);
    }
    bool operator==(const Implicant& o) const {
        return values == o.values && dashes == o.dashes;
    }
    bool covers(std::uint32_t minterm) const {
        return (minterm & ~dashes) == (values & ~dashes);
    }
    int literal_count(int n) const { return n - __builtin_popcount(dashes); }
};

std::vector<Implicant> prime_implicants(const std::vector<std::uint32_t>& minterms, int n) {
    std::set<Implicant> current;
    for (auto m : minterms) current.insert({m, 0});

    std::set<Implicant> primes;
    while (!current.empty()) {
        std::set<Implicant> next;
        std::set<Implicant> combined;
        std::vector<Implicant> items(current.begin(), current.end());
        for (std::size_t i = 0; i < items.size(); ++i) {
            for (std::size_t j = i + 1; j < items.size(); ++j) {
                if (items[i].dashes != items[j].dashes) continue;
                std::uint32_t diff = items[i].values ^ items[j].values;
                if (__builtin_popcount(diff) != 1) continue;
                Implicant merged{items[i].values & ~diff, items[i].dashes | diff};
                next.insert(merged);
                combined.insert(items[i]);
                combined.insert(items[j]);
            }
        }
        for (const auto& imp : items)
            if (!combined.count(imp)) primes.insert(imp);
        current = std::move(next);
    }
    (void)n;
    return {primes.begin(), primes.end()};
}

// Exhaustive minimum cover over the remaining primes; cost is (terms,
// literals). Only used when the table is small enough to search.
struct CoverSearch {
    const std::vector<Implicant>& primes;
    const std::vector<std::uint32_t>& minterms;
    int n;
    std::vector<int> best;
    long best_cost = -1;

    long cost_of(const std::vector<int>& chosen) const {
        long literals = 0;
        for (int idx : chosen) literals += primes[idx].literal_count(n);
        return static_cast<long>(chosen.size()) * 1000 + literals;
    }

    void search(std::size_t mi, std::vector<int>& chosen, std::vector<int>& cover_count) {
        if (best_cost >= 0 && cost_of(chosen) >= best_cost) return;
        while (mi < minterms.size() && cover_count[mi] > 0) ++mi;
        if (mi == minterms.size()) {
            long c = cost_of(chosen);
            if (best_cost < 0 || c < best_cost) {
                best_cost = c;
                best = chosen;
            }
            return;
        }
        for (std::size_t p = 0; p < primes.size(); ++p) {
            if (!primes[p].covers(minterms[mi])) continue;
            chosen.push_back(static_cast<int>(p));
            for (std::size_t m = 0; m < minterms.size(); ++m)
                if (primes[p].covers(minterms[m])) ++cover_count[m];
            search(mi + 1, chosen, cover_count);
            chosen.pop_back();
            for (std::size_t m = 0; m < minterms.size(); ++m)
                if (primes[p].covers(minterms[m])) --cover_count[m];
        }
    }
};

std::vector<Implicant> select_cover(const std::vector<Implicant>& primes,
                                    const std::vector<std::uint32_t>& minterms, int n) {
    std::vector<Implicant> chosen;
    std::set<std::uint32_t> uncovered(minterms.begin(), minterms.end());

    // essential primes: sole cover of some minterm
    for (auto m : minterms) {
        int cover = -1;
        bool unique = true;
        for (std::size_t p = 0; p < primes.size(); ++p) {
            if (primes[p].covers(m)) {
                if (cover >= 0) { unique = false; break; }
                cover = static_cast<int>(p);
            }
        }
        if (unique && cover >= 0 &&
            std::find(chosen.begin(), chosen.end(), primes[cover]) == chosen.end())
            chosen.push_back(primes[cover]);
    }
    for (const auto& imp : chosen)
        for (auto it = uncovered.begin(); it != uncovered.end();)
            it = imp.covers(*it) ? uncovered.erase(it) : std::next(it);
    if (uncovered.empty()) return chosen;

    std::vector<Implicant> rest_primes;
    for (const auto& p : primes) {
        bool useful = false;
        for (auto m : uncovered)
            if (p.covers(m)) { useful = true; break; }
        if (useful && std::find(chosen.begin(), chosen.end(), p) == chosen.end())
            rest_primes.push_back(p);
    }
    std::vector<std::uint32_t> rest(uncovered.begin(), uncovered.end());

    if (rest_primes.size() <= 18) {
        CoverSearch cs{rest_primes, rest, n, {}, -1};
        std::vector<int> cur;
        std::vector<int> counts(rest.size(), 0);
        cs.search(0, cur, counts);
        for (int idx : cs.best) chosen.push_back(rest_primes[idx]);
        return chosen;
    }

    // greedy: most uncovered minterms per step, fewer literals on ties
    while (!uncovered.empty()) {
        std::size_t best_p = 0;
        long best_score = -1;
        for (std::size_t p = 0; p < rest_primes.size(); ++p) {
            long covered = 0;
            for (auto m : uncovered)
                if (rest_primes[p].covers(m)) ++covered;
            long score = covered * 100 - rest_primes[p].literal_count(n);
            if (covered > 0 && score > best_score) {
                best_score = score;
                best_p = p;
            }
        }
        chosen.push_back(rest_primes[best_p]);
        for (auto it = uncovered.begin(); it != uncovered.end();)
            it = rest_primes[best_p].covers(*it) ? uncovered.erase(it) : std::next(it);
    }
    return chosen;
}

QueryNodePtr implicant_to_node(const Implicant& imp, const std::vector<std::string>& ids) {
    // AND chain over fixed positive literals, right-leaning. The function is
    // monotone (no negations in the grammar), so every prime implicant of it
    // has positive literals only.
    std::vector<std::string> lits;
    for (std::size_t bit = 0; bit < ids.size(); ++bit) {
        if (imp.dashes & (1u << bit)) continue;
        if (imp.values & (1u << bit)) lits.push_back(ids[bit]);
    }
    if (lits.empty())
        throw std::logic_error("implicant with no positive literal in a monotone function");
    QueryNodePtr node = QueryNode::leaf(lits.back());
    for (auto it = lits.rbegin() + 1; it != lits.rend(); ++it)
        node = QueryNode::branch(QueryNode::Kind::And, QueryNode::leaf(*it), std::move(node));
    return node;
}

} // namespace

CompiledQuery compile_tree(const QueryTree& tree, bool minimize) {
    if (!tree.valid()) throw std::invalid_argument("empty query tree");
    if (minimize) return minimize_tree(tree);

    CompiledQuery out;
    out.tree = tree;
    out.atomic_ids = tree.distinct_atomics();
    out.occurrences.assign(out.atomic_ids.size(), 0);
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < out.atomic_ids.size(); ++i) index[out.atomic_ids[i]] = i;
    std::vector<QueryNodePtr> stack{tree.root()};
    while (!stack.empty()) {
        auto node = stack.back();
        stack.pop_back();
        if (node->kind == QueryNode::Kind::Leaf) {
            out.occurrences[index[node->atomic_id]]++;
        } else {
            stack.push_back(node->left);
            stack.push_back(node->right);
        }
    }
    return out;
}

CompiledQuery minimize_tree(const QueryTree& tree) {
    if (!tree.valid()) throw std::invalid_argument("empty query tree");
    std::vector<std::string> ids = tree.distinct_atomics();
    int n = static_cast<int>(ids.size());
    if (n > kMaxAtomics)
        throw std::invalid_argument("too many distinct atomics (> 16) for minimization");

    std::vector<std::uint32_t> minterms;
    std::map<std::string, bool> assignment;
    for (std::uint32_t m = 0; m < (1u << n); ++m) {
        for (int bit = 0; bit < n; ++bit) assignment[ids[bit]] = (m >> bit) & 1;
        if (evaluate_truth(tree, assignment)) minterms.push_back(m);
    }
    // AND/OR-only trees are monotone and never constant
    if (minterms.empty() || minterms.size() == (1u << n))
        throw std::logic_error("constant boolean function from AND/OR tree");

    auto primes = prime_implicants(minterms, n);
    auto cover = select_cover(primes, minterms, n);

    // deterministic term order: fewest literals first, then bit pattern
    std::sort(cover.begin(), cover.end(), [n](const Implicant& a, const Implicant& b) {
        int la = a.literal_count(n), lb = b.literal_count(n);
        if (la != lb) return la < lb;
        return a.values < b.values;
    });

    QueryNodePtr root = implicant_to_node(cover.back(), ids);
    for (auto it = cover.rbegin() + 1; it != cover.rend(); ++it)
        root = QueryNode::branch(QueryNode::Kind::Or, implicant_to_node(*it, ids),
                                 std::move(root));

    return compile_tree(QueryTree(std::move(root)), /*minimize=*/false);
}

} // namespace dpds
