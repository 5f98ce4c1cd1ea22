#pragma once

// Operations on maps at the triple level: the hole operations H_j with
// (G, x, y) -> (G, x^j, y^j), the mirror H_{-1}, the Petrie dual
// (G, x, y) -> (G, x, y^{-1}), reflexibility and self-Petrie tests, and the
// closed-form counts rho(n), sigma(n) and chi(n) of reflexible maps,
// self-Petrie maps and chiral pairs.

#include <optional>
#include <string>

#include "bipmap/group.hpp"
#include "bipmap/labelling.hpp"
#include "bipmap/nu_formula.hpp"

namespace bipmap {

struct NotRegularError : std::runtime_error {
    i64 petrie_half_length;  // m' = |x y^{-1}|, reported for diagnostics
    NotRegularError(const std::string& what, i64 m_dash)
        : std::runtime_error(what), petrie_half_length(m_dash) {}
};

inline IsobicyclicTriple hole_operation(const IsobicyclicTriple& t, i64 j) {
    j = mod_norm(j, t.n);
    if (std::gcd(j, t.n) != 1) throw ContractError("hole_operation: j must be coprime to n");
    return make_triple(t.group, t.group->pow(t.x, j), t.group->pow(t.y, j), t.n);
}

inline IsobicyclicTriple mirror(const IsobicyclicTriple& t) {
    return make_triple(t.group, t.group->inv(t.x), t.group->inv(t.y), t.n);
}

inline bool is_reflexible(const IsobicyclicTriple& t) {
    auto m = extend_generator_map(*t.group, *t.group, {t.x, t.y},
                                  {t.group->inv(t.x), t.group->inv(t.y)});
    return m.has_value() && m->bijective;
}

inline bool is_self_petrie(const IsobicyclicTriple& t) {
    auto m = extend_generator_map(*t.group, *t.group, {t.x, t.y}, {t.x, t.group->inv(t.y)});
    return m.has_value() && m->bijective;
}

// Half the Petrie polygon length of the map of t.
inline i64 petrie_half_length(const IsobicyclicTriple& t) {
    return element_order(*t.group, t.group->mul(t.x, t.group->inv(t.y)));
}

// Defined only on reflexible triples: the Petrie dual of a chiral regular
// embedding is an embedding but not a regular one.
inline IsobicyclicTriple petrie_dual(const IsobicyclicTriple& t) {
    if (!is_reflexible(t))
        throw NotRegularError("petrie_dual: input is chiral, dual is not regular",
                              petrie_half_length(t));
    return make_triple(t.group, t.x, t.group->inv(t.y), t.n);
}

namespace detail {

inline int odd_prime_count(i64 n) {
    int r = 0;
    for (const auto& pp : factorize(n))
        if (pp.p != 2) ++r;
    return r;
}

}  // namespace detail

// rho(n): number of reflexible embeddings; 1, 2^r, 2^{r+1}, 3*2^{r+1} as
// 2^e || n with e = 0, 1, 2, >= 3, where r counts the odd primes dividing n.
inline i64 rho(i64 n) {
    if (n < 1) throw ContractError("rho: n must be >= 1");
    const int e = valuation(n, 2);
    const int r = detail::odd_prime_count(n);
    if (e == 0) return 1;
    if (e == 1) return ipow(2, r);
    if (e == 2) return ipow(2, r + 1);
    return 3 * ipow(2, r + 1);
}

// sigma(n): number of self-Petrie embeddings; differs from rho only at
// e >= 3, where it is 2^{r+2}.
inline i64 sigma(i64 n) {
    if (n < 1) throw ContractError("sigma: n must be >= 1");
    const int e = valuation(n, 2);
    const int r = detail::odd_prime_count(n);
    if (e == 0) return 1;
    if (e == 1) return ipow(2, r);
    if (e == 2) return ipow(2, r + 1);
    return ipow(2, r + 2);
}

// chi(n) = (nu(n) - rho(n)) / 2, the number of chiral pairs.
inline i64 chi_pairs(i64 n) {
    const i64 diff = nu_formula(n).total - rho(n);
    if (diff < 0 || diff % 2 != 0)
        throw ClassificationViolationError("chi_pairs: nu - rho is not an even nonneg number");
    return diff / 2;
}

struct ChiralityReport {
    bool reflexible = false;
    bool self_petrie = false;
    std::string mirror_partner;                 // labelling id of H_{-1} image
    std::optional<std::string> petrie_partner;  // absent when the dual is not regular
    i64 petrie_face_length = 2;                 // 2m'
};

inline ChiralityReport analyze_chirality(const IsobicyclicTriple& t) {
    ChiralityReport rep;
    rep.reflexible = is_reflexible(t);
    rep.self_petrie = is_self_petrie(t);
    rep.mirror_partner = render_labelling(labelling_from_triple(mirror(t)));
    rep.petrie_face_length = 2 * petrie_half_length(t);
    if (rep.reflexible)
        rep.petrie_partner = render_labelling(labelling_from_triple(petrie_dual(t)));
    return rep;
}

}  // namespace bipmap
