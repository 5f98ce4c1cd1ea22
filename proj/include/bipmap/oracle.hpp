#pragma once

// Independent brute-force verification for tiny n: enumerate every rotation
// system of K_{n,n} directly (first black vertex pinned to the identity
// ordering), keep the maps whose color-preserving orientation-preserving
// automorphism count reaches n^2, and classify the survivors up to
// isomorphism allowing a color swap.  No group theory from the main pipeline
// is involved.

#include <future>
#include <vector>

#include "bipmap/oriented_map.hpp"

namespace bipmap {

inline constexpr int kDefaultOracleCap = 4;

namespace detail {

// All cyclic orders of {0..n-1} starting at 0, i.e. permutations of 1..n-1.
inline std::vector<std::vector<int>> pinned_cycles(int n) {
    std::vector<int> rest;
    for (int v = 1; v < n; ++v) rest.push_back(v);
    std::vector<std::vector<int>> out;
    do {
        std::vector<int> cyc{0};
        cyc.insert(cyc.end(), rest.begin(), rest.end());
        out.push_back(cyc);
    } while (std::next_permutation(rest.begin(), rest.end()));
    return out;
}

inline std::vector<int> cycle_successor(const std::vector<int>& cyc) {
    std::vector<int> succ(cyc.size());
    for (std::size_t i = 0; i < cyc.size(); ++i) succ[cyc[i]] = cyc[(i + 1) % cyc.size()];
    return succ;
}

// choice[v] indexes the catalogue cycle of vertex v: blacks 0..n-1, then
// whites; choice[0] is pinned to 0.
inline OrientedMap assemble(int n, const std::vector<std::vector<int>>& succs,
                            const std::vector<int>& choice) {
    OrientedMap m;
    m.n = n;
    const int edges = n * n;
    m.rotation.resize(2 * edges);
    m.edge_swap.resize(2 * edges);
    m.vertex_of.resize(2 * edges);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const int e = i * n + j;
            m.rotation[2 * e] = 2 * (i * n + succs[choice[i]][j]);
            m.rotation[2 * e + 1] = 2 * (succs[choice[n + j]][i] * n + j) + 1;
            m.edge_swap[2 * e] = 2 * e + 1;
            m.edge_swap[2 * e + 1] = 2 * e;
            m.vertex_of[2 * e] = i;
            m.vertex_of[2 * e + 1] = n + j;
        }
    }
    return m;
}

}  // namespace detail

// Visit every pinned rotation assignment, in odometer order with the second
// vertex's rotation as the most significant digit.
template <typename Fn>
inline void enumerate_embeddings(i64 n, Fn&& visit, int cap = kDefaultOracleCap) {
    if (n < 2 || n > cap) throw ScaleError("enumerate_embeddings: n outside the oracle cap");
    const int nn = static_cast<int>(n);
    const auto cycles = detail::pinned_cycles(nn);
    std::vector<std::vector<int>> succs;
    for (const auto& c : cycles) succs.push_back(detail::cycle_successor(c));

    std::vector<int> choice(2 * nn, 0);
    const std::size_t slots = 2 * nn - 1;  // black 0 stays pinned
    while (true) {
        visit(detail::assemble(nn, succs, choice));
        std::size_t k = slots;
        while (k > 0 && ++choice[k] == static_cast<int>(cycles.size())) choice[k--] = 0;
        if (k == 0) break;
    }
}

struct BruteForceCensus {
    i64 count = 0;
    std::vector<OrientedMap> representatives;  // first-seen order
};

// Regular survivors classified by canonical form.  The assignment space is
// partitioned by the second vertex's rotation; partitions run concurrently
// and merge in partition order, so the result is deterministic.
inline BruteForceCensus brute_force_census(i64 n, int cap = kDefaultOracleCap) {
    if (n < 2 || n > cap) throw ScaleError("brute_force_census: n outside the oracle cap");
    const int nn = static_cast<int>(n);
    const auto cycles = detail::pinned_cycles(nn);
    std::vector<std::vector<int>> succs;
    for (const auto& c : cycles) succs.push_back(detail::cycle_successor(c));

    using Found = std::vector<std::pair<std::vector<int>, OrientedMap>>;
    auto scan_partition = [&](int first_choice) {
        Found found;
        std::vector<int> choice(2 * nn, 0);
        choice[1] = first_choice;
        const std::size_t slots = 2 * nn - 1;
        while (true) {
            OrientedMap m = detail::assemble(nn, succs, choice);
            if (count_color_orientation_automorphisms(m) == static_cast<i64>(n) * n)
                found.emplace_back(canonical_form(m), std::move(m));
            std::size_t k = slots;
            while (k > 1 && ++choice[k] == static_cast<int>(cycles.size())) choice[k--] = 0;
            if (k == 1) break;  // never advance the partition digit
        }
        return found;
    };

    std::vector<std::future<Found>> futs;
    const int partitions = (nn >= 3) ? static_cast<int>(cycles.size()) : 1;
    for (int part = 0; part < partitions; ++part)
        futs.push_back(std::async(std::launch::async, scan_partition, part));

    BruteForceCensus out;
    std::vector<std::vector<int>> seen;
    for (auto& f : futs) {
        for (auto& [form, m] : f.get()) {
            if (std::find(seen.begin(), seen.end(), form) != seen.end()) continue;
            seen.push_back(form);
            out.representatives.push_back(std::move(m));
        }
    }
    out.count = static_cast<i64>(out.representatives.size());
    return out;
}

}  // namespace bipmap
