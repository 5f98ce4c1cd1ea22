#pragma once

// Generic finite-group substrate.  A group is built once by closing a set of
// generators under a caller-supplied multiplication rule on opaque element
// encodings; afterwards it is immutable and indexed, with the identity at
// index 0 and breadth-first discovery order fixing every downstream output.

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "bipmap/numthy.hpp"

namespace bipmap {

struct AxiomError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Opaque element encoding: a short tuple of integers whose meaning is owned
// by the multiplication rule (exponent pairs, Frattini normal forms, product
// tuples, parent-group indices, ...).
inline constexpr int kMaxEncodingSlots = 8;

struct ElemEncoding {
    std::array<i64, kMaxEncodingSlots> slot{};
    int len = 0;

    static ElemEncoding of(std::initializer_list<i64> vals) {
        ElemEncoding e;
        if (static_cast<int>(vals.size()) > kMaxEncodingSlots)
            throw ScaleError("ElemEncoding: too many slots");
        for (i64 v : vals) e.slot[e.len++] = v;
        return e;
    }
    friend bool operator==(const ElemEncoding&, const ElemEncoding&) = default;
};

struct ElemEncodingHash {
    std::size_t operator()(const ElemEncoding& e) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ull ^ static_cast<std::uint64_t>(e.len);
        for (int i = 0; i < e.len; ++i) {
            std::uint64_t v = static_cast<std::uint64_t>(e.slot[i]);
            v *= 0xbf58476d1ce4e5b9ull;
            v ^= v >> 31;
            h = (h ^ v) * 0x94d049bb133111ebull;
        }
        return static_cast<std::size_t>(h);
    }
};

using MulRule = std::function<ElemEncoding(const ElemEncoding&, const ElemEncoding&)>;

inline constexpr int kDefaultGroupSizeBound = 2 * 120 * 120;

// Spanning-tree links from a breadth-first closure: parent element and the
// generator whose right-multiplication discovered each element.
struct BfsSpan {
    std::vector<int> order;    // element indices in discovery order
    std::vector<int> parent;   // -1 for the root
    std::vector<int> via_gen;  // index into the generator list, -1 for root
    bool spans = false;
};

class FiniteGroup {
  public:
    FiniteGroup(MulRule rule, ElemEncoding identity, std::vector<ElemEncoding> gens,
                int size_bound)
        : rule_(std::move(rule)) {
        index_elem(identity);
        generators_.reserve(gens.size());
        for (const auto& g : gens) generators_.push_back(index_elem(g));
        // Breadth-first closure under right multiplication by generators.
        parent_.assign(elements_.size(), -1);
        via_gen_.assign(elements_.size(), -1);
        for (std::size_t a = 0; a < elements_.size(); ++a) {
            for (std::size_t k = 0; k < generators_.size(); ++k) {
                ElemEncoding prod = rule_(elements_[a], elements_[generators_[k]]);
                auto it = index_.find(prod);
                if (it == index_.end()) {
                    if (static_cast<int>(elements_.size()) >= size_bound)
                        throw ScaleError("close_generators: closure exceeds size bound");
                    index_elem(prod);
                    parent_.push_back(static_cast<int>(a));
                    via_gen_.push_back(static_cast<int>(k));
                }
            }
        }
        check_identity_laws();
        compute_inverses();
        spot_check_associativity();
    }

    int size() const { return static_cast<int>(elements_.size()); }
    int identity() const { return 0; }
    const std::vector<int>& generators() const { return generators_; }
    const ElemEncoding& encoding(int i) const { return elements_[i]; }

    int index_of(const ElemEncoding& e) const {
        auto it = index_.find(e);
        if (it == index_.end()) throw ContractError("index_of: encoding not in the group");
        return it->second;
    }

    int mul(int a, int b) const {
        auto it = index_.find(rule_(elements_[a], elements_[b]));
        if (it == index_.end())
            throw AxiomError("multiply: product left the closed set (rule not associative?)");
        return it->second;
    }

    int inv(int a) const { return inverse_[a]; }

    int pow(int a, i64 e) const {
        if (e < 0) return pow(inv(a), -e);
        int r = identity();
        int base = a;
        for (; e > 0; e >>= 1) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
        }
        return r;
    }

    // Normal-form word over the construction generators reaching element i.
    std::vector<int> word(int i) const {
        std::vector<int> w;
        for (int cur = i; parent_[cur] != -1; cur = parent_[cur]) w.push_back(via_gen_[cur]);
        std::reverse(w.begin(), w.end());
        return w;
    }

    // Breadth-first span from an arbitrary generating list (element indices).
    // spans == false when the listed elements generate a proper subgroup.
    BfsSpan span_from(const std::vector<int>& gens) const {
        BfsSpan s;
        s.parent.assign(size(), -2);  // -2 = unvisited
        s.via_gen.assign(size(), -1);
        s.parent[identity()] = -1;
        s.order.push_back(identity());
        for (std::size_t head = 0; head < s.order.size(); ++head) {
            int a = s.order[head];
            for (std::size_t k = 0; k < gens.size(); ++k) {
                int b = mul(a, gens[k]);
                if (s.parent[b] == -2) {
                    s.parent[b] = a;
                    s.via_gen[b] = static_cast<int>(k);
                    s.order.push_back(b);
                }
            }
        }
        s.spans = static_cast<int>(s.order.size()) == size();
        return s;
    }

  private:
    int index_elem(const ElemEncoding& e) {
        auto [it, fresh] = index_.emplace(e, static_cast<int>(elements_.size()));
        if (fresh) elements_.push_back(e);
        return it->second;
    }

    void check_identity_laws() const {
        for (int a = 0; a < size(); ++a) {
            if (mul(identity(), a) != a || mul(a, identity()) != a)
                throw AxiomError("close_generators: identity laws fail");
        }
    }

    void compute_inverses() {
        inverse_.assign(size(), -1);
        for (int a = 0; a < size(); ++a) {
            int prev = identity();
            int cur = a;
            int steps = 0;
            while (cur != identity()) {
                prev = cur;
                cur = mul(cur, a);
                if (++steps > size())
                    throw AxiomError("close_generators: element has no finite order");
            }
            inverse_[a] = (a == identity()) ? identity() : prev;
        }
    }

    // Full associativity is O(|G|^3); a deterministic pseudo-random sample
    // runs at construction, the exhaustive sweep lives in the test suite.
    void spot_check_associativity() const {
        std::uint64_t state = 0x2545f4914f6cdd1dull ^ static_cast<std::uint64_t>(size());
        auto next = [&state]() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            return state;
        };
        const int samples = 64;
        for (int i = 0; i < samples; ++i) {
            int a = static_cast<int>(next() % size());
            int b = static_cast<int>(next() % size());
            int c = static_cast<int>(next() % size());
            if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                throw AxiomError("close_generators: rule is not associative");
        }
    }

    MulRule rule_;
    std::vector<ElemEncoding> elements_;
    std::unordered_map<ElemEncoding, int, ElemEncodingHash> index_;
    std::vector<int> generators_;
    std::vector<int> parent_, via_gen_;
    std::vector<int> inverse_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

inline GroupPtr close_generators(MulRule rule, ElemEncoding identity,
                                 std::vector<ElemEncoding> gens,
                                 int size_bound = kDefaultGroupSizeBound) {
    return std::make_shared<FiniteGroup>(std::move(rule), std::move(identity),
                                         std::move(gens), size_bound);
}

// Exhaustive axiom sweep; associativity is cubic so it is gated by a bound.
inline void verify_group_axioms(const FiniteGroup& g, int exhaustive_assoc_bound = 64) {
    for (int a = 0; a < g.size(); ++a) {
        if (g.mul(g.identity(), a) != a || g.mul(a, g.identity()) != a)
            throw AxiomError("identity laws fail");
        if (g.mul(a, g.inv(a)) != g.identity() || g.mul(g.inv(a), a) != g.identity())
            throw AxiomError("inverse laws fail");
        for (int b = 0; b < g.size(); ++b) g.mul(a, b);  // closure (throws on violation)
    }
    if (g.size() <= exhaustive_assoc_bound) {
        for (int a = 0; a < g.size(); ++a)
            for (int b = 0; b < g.size(); ++b)
                for (int c = 0; c < g.size(); ++c)
                    if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
                        throw AxiomError("associativity fails");
    }
}

inline i64 element_order(const FiniteGroup& g, int a) {
    i64 k = 1;
    int cur = a;
    while (cur != g.identity()) {
        cur = g.mul(cur, a);
        if (++k > g.size()) throw AxiomError("element_order: no finite order");
    }
    return k;
}

struct GroupMorphism {
    const FiniteGroup* source = nullptr;
    const FiniteGroup* target = nullptr;
    std::vector<int> images;  // per source element index
    bool bijective = false;
};

// The unique morphism candidate sending gens_a[k] to images_b[k], evaluated
// along breadth-first words and accepted iff phi(a*s) = phi(a)*phi(s) for
// every element a and listed generator s.  That condition is equivalent to
// being a homomorphism because positive words over gens_a span the source.
inline std::optional<GroupMorphism> extend_generator_map(const FiniteGroup& a,
                                                         const FiniteGroup& b,
                                                         const std::vector<int>& gens_a,
                                                         const std::vector<int>& images_b) {
    if (gens_a.size() != images_b.size())
        throw ContractError("extend_generator_map: generator/image length mismatch");
    BfsSpan span = a.span_from(gens_a);
    if (!span.spans) return std::nullopt;

    std::vector<int> phi(a.size(), -1);
    phi[a.identity()] = b.identity();
    for (std::size_t i = 1; i < span.order.size(); ++i) {
        int el = span.order[i];
        phi[el] = b.mul(phi[span.parent[el]], images_b[span.via_gen[el]]);
    }
    for (int el = 0; el < a.size(); ++el) {
        for (std::size_t k = 0; k < gens_a.size(); ++k) {
            if (phi[a.mul(el, gens_a[k])] != b.mul(phi[el], images_b[k]))
                return std::nullopt;
        }
    }
    GroupMorphism m;
    m.source = &a;
    m.target = &b;
    m.images = std::move(phi);
    if (a.size() == b.size()) {
        std::vector<char> hit(b.size(), 0);
        m.bijective = true;
        for (int v : m.images) {
            if (hit[v]) { m.bijective = false; break; }
            hit[v] = 1;
        }
    }
    return m;
}

// (G, x, y) with |x| = |y| = n, G = XY, X cap Y = 1 and a swap automorphism;
// the algebraic form of a regular embedding of K_{n,n}.
struct IsobicyclicTriple {
    GroupPtr group;
    int x = 0;
    int y = 0;
    i64 n = 1;
};

inline bool is_isobicyclic(const FiniteGroup& g, int x, int y, i64 n) {
    if (static_cast<i64>(g.size()) != n * n) return false;
    if (element_order(g, x) != n || element_order(g, y) != n) return false;

    std::vector<int> xpow(n), ypow(n);
    xpow[0] = ypow[0] = g.identity();
    for (i64 i = 1; i < n; ++i) {
        xpow[i] = g.mul(xpow[i - 1], x);
        ypow[i] = g.mul(ypow[i - 1], y);
    }
    // X cap Y = 1
    std::vector<char> in_x(g.size(), 0);
    for (int e : xpow) in_x[e] = 1;
    for (i64 j = 1; j < n; ++j)
        if (in_x[ypow[j]]) return false;
    // G = XY, checked as an explicit cover
    std::vector<char> seen(g.size(), 0);
    i64 distinct = 0;
    for (i64 i = 0; i < n; ++i) {
        for (i64 j = 0; j < n; ++j) {
            int e = g.mul(xpow[i], ypow[j]);
            if (!seen[e]) { seen[e] = 1; ++distinct; }
        }
    }
    if (distinct != static_cast<i64>(g.size())) return false;
    // swap automorphism x <-> y
    auto swap = extend_generator_map(g, g, {x, y}, {y, x});
    return swap.has_value() && swap->bijective;
}

inline IsobicyclicTriple make_triple(GroupPtr g, int x, int y, i64 n) {
    if (!is_isobicyclic(*g, x, y, n))
        throw ConstructionError("make_triple: candidate is not isobicyclic");
    return IsobicyclicTriple{std::move(g), x, y, n};
}

// Anchored isomorphism: G -> G' sending x to x' and y to y'.
inline bool triples_isomorphic(const IsobicyclicTriple& t1, const IsobicyclicTriple& t2) {
    if (t1.n != t2.n) throw ContractError("triples_isomorphic: mismatched n");
    auto m = extend_generator_map(*t1.group, *t2.group, {t1.x, t1.y}, {t2.x, t2.y});
    return m.has_value() && m->bijective;
}

}  // namespace bipmap
