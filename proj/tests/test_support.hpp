#pragma once

// Shared helpers for the test suites.

#include "bipmap/group.hpp"
#include "bipmap/labelling.hpp"

namespace bipmap::testing {

// C_n x C_n with the usual basis generators, built independently of the
// prime-power catalogue (additive rule on exponent pairs).
inline IsobicyclicTriple standard_triple(i64 n) {
    MulRule rule = [n](const ElemEncoding& a, const ElemEncoding& b) {
        return ElemEncoding::of(
            {mod_norm(a.slot[0] + b.slot[0], n), mod_norm(a.slot[1] + b.slot[1], n)});
    };
    GroupPtr g = close_generators(rule, ElemEncoding::of({0, 0}),
                                  {ElemEncoding::of({1, 0}), ElemEncoding::of({0, 1})},
                                  static_cast<int>(n * n) + 1);
    return make_triple(g, g->generators()[0], g->generators()[1], n);
}

inline PrimePowerLabel metacyclic_label(i64 p, int e, int f, i64 u) {
    return PrimePowerLabel{p, e, PrimePowerLabel::Kind::Metacyclic, f, u, 0, 0};
}

inline PrimePowerLabel non_metacyclic_label(int e, int k, int l) {
    return PrimePowerLabel{2, e, PrimePowerLabel::Kind::NonMetacyclic, 1, 1, k, l};
}

// Full O(|A| |B|)-free double-loop homomorphism assertion for small groups.
inline bool verified_homomorphism(const FiniteGroup& a, const FiniteGroup& b,
                                  const std::vector<int>& images) {
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < a.size(); ++j)
            if (images[a.mul(i, j)] != b.mul(images[i], images[j])) return false;
    return true;
}

}  // namespace bipmap::testing
