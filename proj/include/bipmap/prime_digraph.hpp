#pragma once

// The directed graphs Pi_n on the primes dividing n (arc q -> p iff q | p-1,
// labelled r with q^r || p-1), their short spanning subgraphs, and the inverse
// problems: realizing an abstract labelled digraph as some Pi_n and finding
// extension-property witness primes.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bipmap/numthy.hpp"

namespace bipmap {

struct NotRealizableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SearchExhaustedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PrimeArc {
    i64 q = 0;  // tail
    i64 p = 0;  // head
    int r = 0;  // q^r || p-1
    friend auto operator<=>(const PrimeArc&, const PrimeArc&) = default;
};

struct PrimeDigraph {
    std::vector<i64> vertices;   // ascending primes
    std::vector<PrimeArc> arcs;  // sorted by (q, p)
    friend bool operator==(const PrimeDigraph&, const PrimeDigraph&) = default;
};

inline PrimeDigraph pi_graph(i64 n) {
    if (n < 2) throw ContractError("pi_graph: n must be >= 2");
    PrimeDigraph g;
    for (const auto& pp : factorize(n)) g.vertices.push_back(pp.p);
    std::sort(g.vertices.begin(), g.vertices.end());
    for (i64 q : g.vertices)
        for (i64 p : g.vertices)
            if (q != p && (p - 1) % q == 0) g.arcs.push_back({q, p, valuation(p - 1, q)});
    std::sort(g.arcs.begin(), g.arcs.end());
    return g;
}

// Spanning subgraph with no directed path of length 2: no vertex is both the
// head of one chosen arc and the tail of another.
struct ShortSubgraph {
    PrimeDigraph parent;
    std::vector<PrimeArc> arcs;  // sorted subset of parent.arcs

    std::vector<i64> terminals() const {
        std::vector<i64> t;
        for (const auto& a : arcs) t.push_back(a.p);
        std::sort(t.begin(), t.end());
        t.erase(std::unique(t.begin(), t.end()), t.end());
        return t;
    }
    std::vector<i64> non_terminals() const {
        auto t = terminals();
        std::vector<i64> nt;
        for (i64 v : parent.vertices)
            if (!std::binary_search(t.begin(), t.end(), v)) nt.push_back(v);
        return nt;
    }
    bool is_terminal(i64 p) const {
        for (const auto& a : arcs)
            if (a.p == p) return true;
        return false;
    }
    friend bool operator==(const ShortSubgraph&, const ShortSubgraph&) = default;
};

inline bool is_short_arc_set(const std::vector<PrimeArc>& arcs) {
    for (const auto& a : arcs)
        for (const auto& b : arcs)
            if (a.p == b.q) return false;
    return true;
}

// All short spanning subgraphs, ordered lexicographically by their sorted arc
// lists; the null subgraph comes first.
inline std::vector<ShortSubgraph> short_spanning_subgraphs(const PrimeDigraph& g) {
    if (g.arcs.size() > 20) throw ScaleError("short_spanning_subgraphs: too many arcs");
    std::vector<ShortSubgraph> out;
    const std::size_t m = g.arcs.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
        std::vector<PrimeArc> sel;
        for (std::size_t i = 0; i < m; ++i)
            if (mask >> i & 1) sel.push_back(g.arcs[i]);
        if (is_short_arc_set(sel)) out.push_back({g, std::move(sel)});
    }
    std::sort(out.begin(), out.end(),
              [](const ShortSubgraph& a, const ShortSubgraph& b) { return a.arcs < b.arcs; });
    return out;
}

// ---------------------------------------------------------------------------
// Abstract labelled digraphs and realizability
// ---------------------------------------------------------------------------

struct LabelledArc {
    i64 from = 0;
    i64 to = 0;
    int label = 1;
    friend auto operator<=>(const LabelledArc&, const LabelledArc&) = default;
};

struct AbstractDigraph {
    std::vector<i64> vertices;
    std::vector<LabelledArc> arcs;
};

inline AbstractDigraph as_abstract(const PrimeDigraph& g) {
    AbstractDigraph d;
    d.vertices = g.vertices;
    for (const auto& a : g.arcs) d.arcs.push_back({a.q, a.p, a.r});
    return d;
}

inline bool is_acyclic(const AbstractDigraph& d) {
    std::map<i64, int> out_deg;
    for (i64 v : d.vertices) out_deg[v] = 0;
    for (const auto& a : d.arcs) ++out_deg[a.from];
    std::vector<i64> alive = d.vertices;
    std::vector<LabelledArc> arcs = d.arcs;
    while (!alive.empty()) {
        auto it = std::find_if(alive.begin(), alive.end(),
                               [&](i64 v) { return out_deg[v] == 0; });
        if (it == alive.end()) return false;
        i64 v = *it;
        alive.erase(it);
        std::erase_if(arcs, [&](const LabelledArc& a) {
            if (a.to == v) { --out_deg[a.from]; return true; }
            return false;
        });
    }
    return true;
}

// Exhaustive labelled-digraph isomorphism; in-scope inputs have <= 8 vertices.
inline bool labelled_digraphs_isomorphic(const AbstractDigraph& a, const AbstractDigraph& b) {
    if (a.vertices.size() != b.vertices.size() || a.arcs.size() != b.arcs.size()) return false;
    if (a.vertices.size() > 8) throw ScaleError("labelled_digraphs_isomorphic: too large");
    std::vector<i64> bv = b.vertices;
    std::sort(bv.begin(), bv.end());
    std::vector<LabelledArc> barcs = b.arcs;
    std::sort(barcs.begin(), barcs.end());
    do {
        std::map<i64, i64> phi;
        for (std::size_t i = 0; i < a.vertices.size(); ++i) phi[a.vertices[i]] = bv[i];
        std::vector<LabelledArc> mapped;
        for (const auto& arc : a.arcs) mapped.push_back({phi[arc.from], phi[arc.to], arc.label});
        std::sort(mapped.begin(), mapped.end());
        if (mapped == barcs) return true;
    } while (std::next_permutation(bv.begin(), bv.end()));
    return false;
}

enum class RealizeStrategy { ProofFollowing, MinimalSearch };

struct RealizeOptions {
    i64 prime_bound = 100000;
    int max_vertices = 8;
    bool allow_even = false;  // MinimalSearch may use the prime 2 for a universal tail
};

struct Realization {
    i64 n = 1;
    std::map<i64, i64> assignment;  // input vertex id -> prime
};

// The digraphs realizable with 2 | n are the acyclic ones with a vertex having
// an arc to every other vertex.
inline bool has_universal_tail(const AbstractDigraph& d) {
    for (i64 v : d.vertices) {
        std::size_t fan = 0;
        for (const auto& a : d.arcs)
            if (a.from == v) ++fan;
        if (fan + 1 == d.vertices.size()) return true;
    }
    return false;
}

namespace detail {

inline std::vector<i64> primes_below(i64 bound) {
    std::vector<char> composite(static_cast<std::size_t>(std::max<i64>(bound, 2)), 0);
    std::vector<i64> ps;
    for (i64 p = 2; p < bound; ++p) {
        if (composite[p]) continue;
        ps.push_back(p);
        for (i64 m = p * p; m < bound; m += p) composite[m] = 1;
    }
    return ps;
}

// Reverse removal order of out-degree-0 vertices; the first vertex removed is
// assigned last and so receives the largest prime.
inline std::vector<i64> peel_order(const AbstractDigraph& d) {
    std::vector<i64> removed;
    std::vector<i64> alive = d.vertices;
    std::vector<LabelledArc> arcs = d.arcs;
    while (!alive.empty()) {
        std::optional<i64> pick;
        for (i64 v : alive) {
            bool is_source = std::any_of(arcs.begin(), arcs.end(),
                                         [&](const LabelledArc& a) { return a.from == v; });
            if (!is_source) { pick = v; break; }
        }
        if (!pick) throw NotRealizableError("realize_digraph: input digraph is cyclic");
        removed.push_back(*pick);
        std::erase(alive, *pick);
        std::erase_if(arcs, [&](const LabelledArc& a) { return a.to == *pick; });
    }
    std::reverse(removed.begin(), removed.end());
    return removed;
}

inline Realization realize_proof_following(const AbstractDigraph& d, const RealizeOptions& opt) {
    Realization res;
    for (i64 v : peel_order(d)) {
        // p = q^{r_q} + 1 (mod q^{r_q+1}) for every earlier prime q, with
        // r_q = 0 when there is no arc; then take the least such prime that
        // exceeds all earlier ones.
        std::vector<Residue> congs;
        i64 floor = 2;
        for (const auto& [u, q] : res.assignment) {
            int r = 0;
            for (const auto& a : d.arcs)
                if (a.from == u && a.to == v) r = a.label;
            congs.emplace_back(ipow(q, r) + 1, ipow(q, r + 1));
            floor = std::max(floor, q);
        }
        Residue cls = crt_combine(congs);
        i64 p = -1;
        for (i64 cand = cls.value; cand < opt.prime_bound; cand += cls.modulus) {
            if (cand > floor && cand % 2 == 1 && is_prime(cand)) { p = cand; break; }
        }
        if (p < 0) throw SearchExhaustedError("realize_digraph: no prime below bound");
        res.assignment[v] = p;
        res.n *= p;
    }
    return res;
}

struct MinimalSearchState {
    const AbstractDigraph& d;
    const RealizeOptions& opt;
    std::vector<i64> order;              // vertices in assignment order
    std::vector<i64> primes;             // candidate pool, ascending
    std::vector<i64> chosen;             // chosen[i] = prime of order[i]
    std::vector<i64> best_choice;
    i64 best_n = -1;

    bool compatible(std::size_t idx, i64 p) const {
        for (std::size_t j = 0; j < idx; ++j) {
            i64 q = chosen[j];
            if (q == p) return false;
            int want = 0;  // no arc means no divisibility either way
            for (const auto& a : d.arcs)
                if (a.from == order[j] && a.to == order[idx]) want = a.label;
            if (valuation(p - 1, q) != want) return false;
            if ((q - 1) % p == 0) return false;  // would create the reverse arc
        }
        return true;
    }

    void run(std::size_t idx, i64 product) {
        if (idx == order.size()) {
            if (best_n < 0 || product < best_n ||
                (product == best_n && chosen < best_choice)) {
                best_n = product;
                best_choice = chosen;
            }
            return;
        }
        for (i64 p : primes) {
            if (p == 2) {
                if (!opt.allow_even) continue;
                // 2 | n forces an arc from this vertex to every other one
                std::size_t fan = 0;
                for (const auto& a : d.arcs)
                    if (a.from == order[idx]) ++fan;
                if (fan + 1 != d.vertices.size()) continue;
            }
            if (best_n >= 0 && product * p >= best_n) break;  // primes ascend
            if (!compatible(idx, p)) continue;
            chosen[idx] = p;
            run(idx + 1, product * p);
        }
    }
};

inline Realization realize_minimal_search(const AbstractDigraph& d, const RealizeOptions& opt) {
    // peel_order is topological with tails first, so between an earlier and a
    // later vertex only forward arcs can exist.
    MinimalSearchState st{d, opt, peel_order(d), primes_below(opt.prime_bound), {}, {}, -1};
    st.chosen.assign(st.order.size(), 0);
    st.run(0, 1);
    if (st.best_n < 0)
        throw SearchExhaustedError("realize_digraph: no assignment below prime bound");
    Realization res;
    res.n = st.best_n;
    for (std::size_t i = 0; i < st.order.size(); ++i) res.assignment[st.order[i]] = st.best_choice[i];
    return res;
}

}  // namespace detail

inline Realization realize_digraph(const AbstractDigraph& d,
                                   RealizeStrategy strategy = RealizeStrategy::MinimalSearch,
                                   const RealizeOptions& opt = {}) {
    if (d.vertices.empty()) throw ContractError("realize_digraph: empty vertex set");
    if (static_cast<int>(d.vertices.size()) > opt.max_vertices)
        throw ScaleError("realize_digraph: too many vertices");
    std::vector<i64> vs = d.vertices;
    std::sort(vs.begin(), vs.end());
    if (std::adjacent_find(vs.begin(), vs.end()) != vs.end())
        throw ContractError("realize_digraph: duplicate vertex ids");
    for (const auto& a : d.arcs) {
        if (a.label < 1) throw ContractError("realize_digraph: arc labels must be positive");
        if (!std::binary_search(vs.begin(), vs.end(), a.from) ||
            !std::binary_search(vs.begin(), vs.end(), a.to) || a.from == a.to)
            throw ContractError("realize_digraph: arc endpoints must be distinct listed vertices");
    }
    if (!is_acyclic(d)) throw NotRealizableError("realize_digraph: input digraph is cyclic");
    return strategy == RealizeStrategy::ProofFollowing
               ? detail::realize_proof_following(d, opt)
               : detail::realize_minimal_search(d, opt);
}

// Undirected graph -> orient edges low index to high index, label every arc 1.
inline Realization realize_underlying_graph(const std::vector<i64>& vertices,
                                            const std::vector<std::pair<i64, i64>>& edges,
                                            RealizeStrategy strategy = RealizeStrategy::MinimalSearch,
                                            const RealizeOptions& opt = {}) {
    std::map<i64, std::size_t> pos;
    for (std::size_t i = 0; i < vertices.size(); ++i) pos[vertices[i]] = i;
    AbstractDigraph d;
    d.vertices = vertices;
    for (auto [u, v] : edges) {
        if (u == v) throw ContractError("realize_underlying_graph: loops not allowed");
        if (pos[u] > pos[v]) std::swap(u, v);
        d.arcs.push_back({u, v, 1});
    }
    std::sort(d.arcs.begin(), d.arcs.end());
    return realize_digraph(d, strategy, opt);
}

// Least odd prime p adjacent in Pi' to every prime in U and to none in V:
// u | p-1 for all u in U, v does not divide p-1 and p does not divide v-1
// for all v in V.
inline i64 extension_witness(const std::vector<i64>& U, const std::vector<i64>& V,
                             i64 bound = 100000) {
    for (i64 u : U)
        if (u == 2 || !is_prime(u)) throw ContractError("extension_witness: U must hold odd primes");
    for (i64 v : V) {
        if (v == 2 || !is_prime(v)) throw ContractError("extension_witness: V must hold odd primes");
        if (std::find(U.begin(), U.end(), v) != U.end())
            throw ContractError("extension_witness: U and V must be disjoint");
    }
    std::vector<Residue> congs;
    for (i64 u : U) congs.emplace_back(1, u);
    for (i64 v : V) congs.emplace_back(v - 1, v);
    Residue cls = crt_combine(congs);
    for (i64 p = 3; p < bound; p += 2) {
        if (p % cls.modulus != cls.value) continue;
        if (!is_prime(p)) continue;
        if (std::find(U.begin(), U.end(), p) != U.end()) continue;
        if (std::find(V.begin(), V.end(), p) != V.end()) continue;
        bool ok = true;
        for (i64 u : U) ok = ok && (p - 1) % u == 0;
        for (i64 v : V) ok = ok && (p - 1) % v != 0 && (v - 1) % p != 0;
        if (ok) return p;
    }
    throw SearchExhaustedError("extension_witness: no witness below bound");
}

inline std::string to_dot(const PrimeDigraph& g, const std::string& name = "pi") {
    std::string s = "digraph " + name + " {\n";
    for (i64 v : g.vertices) s += "  \"" + std::to_string(v) + "\";\n";
    for (const auto& a : g.arcs)
        s += "  \"" + std::to_string(a.q) + "\" -> \"" + std::to_string(a.p) + "\" [label=\"" +
             std::to_string(a.r) + "\"];\n";
    s += "}\n";
    return s;
}

}  // namespace bipmap
