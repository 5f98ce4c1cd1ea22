#pragma once

// The classified prime-power isobicyclic triples: metacyclic groups
//   G_f = < g, h | g^{p^e} = h^{p^e} = 1, h^g = h^{1+p^f} >
// with canonical generators x = g^u, y = g^u h, and the four exceptional
// non-metacyclic 2-groups G(2^e; k, l).  Also the admissible eigenvalues for
// diagonal actions of a prime-power triple on C_{p^d} x C_{p^d}.

#include <string>
#include <vector>

#include "bipmap/group.hpp"
#include "bipmap/numthy.hpp"

namespace bipmap {

struct PrimePowerLabel {
    enum class Kind { Metacyclic, NonMetacyclic };

    i64 p = 2;
    int e = 1;
    Kind kind = Kind::Metacyclic;
    int f = 1;   // metacyclic twist, 1..e (f >= 2 when p = 2, e >= 2)
    i64 u = 1;   // metacyclic generator choice, unit mod p^{e-f}, 1 <= u <= p^{e-f}
    int k = 0;   // non-metacyclic parameters, in {0,1}; k = l = 0 forced at e = 2
    int l = 0;

    bool is_standard() const { return kind == Kind::Metacyclic && f == e; }
    friend bool operator==(const PrimePowerLabel&, const PrimePowerLabel&) = default;
};

inline void validate_label(const PrimePowerLabel& lab) {
    if (!is_prime(lab.p)) throw ContractError("label: p must be prime");
    if (lab.e < 1) throw ContractError("label: exponent must be >= 1");
    if (lab.kind == PrimePowerLabel::Kind::Metacyclic) {
        if (lab.f < 1 || lab.f > lab.e) throw ContractError("label: f out of range");
        if (lab.p == 2 && lab.e >= 2 && lab.f < 2)
            throw ContractError("label: f = 1 is excluded for 2-groups with e >= 2");
        i64 umax = ipow(lab.p, lab.e - lab.f);
        if (lab.u < 1 || lab.u > umax || lab.u % lab.p == 0)
            throw ContractError("label: u must be a unit representative mod p^{e-f}");
    } else {
        if (lab.p != 2 || lab.e < 2)
            throw ContractError("label: non-metacyclic labels need p = 2, e >= 2");
        if (lab.k < 0 || lab.k > 1 || lab.l < 0 || lab.l > 1)
            throw ContractError("label: k, l must be 0 or 1");
        if (lab.e == 2 && (lab.k != 0 || lab.l != 0))
            throw ContractError("label: only G(4;0,0) exists at e = 2");
    }
}

// f_G: the metacyclic twist, defined as 1 for the non-metacyclic 2-groups.
inline int f_invariant(const PrimePowerLabel& lab) {
    return lab.kind == PrimePowerLabel::Kind::Metacyclic ? lab.f : 1;
}

inline std::string render_label(const PrimePowerLabel& lab) {
    std::string s = std::to_string(lab.p) + "^" + std::to_string(lab.e) + ":";
    if (lab.is_standard()) return s + "std";
    if (lab.kind == PrimePowerLabel::Kind::Metacyclic)
        return s + "M(" + std::to_string(lab.f) + "," + std::to_string(lab.u) + ")";
    return s + "N(" + std::to_string(lab.k) + "," + std::to_string(lab.l) + ")";
}

// Complete list of isomorphism-class representatives for I(p^e), in the
// canonical order: metacyclic by ascending f then u, then the non-metacyclic
// labels by (k, l).
inline std::vector<PrimePowerLabel> enumerate_prime_power_labels(i64 p, int e) {
    std::vector<PrimePowerLabel> out;
    int f_lo = (p == 2 && e >= 2) ? 2 : 1;
    for (int f = f_lo; f <= e; ++f) {
        i64 umax = ipow(p, e - f);
        for (i64 u = 1; u <= umax; ++u) {
            if (u % p == 0) continue;
            out.push_back({p, e, PrimePowerLabel::Kind::Metacyclic, f, u, 0, 0});
        }
    }
    if (p == 2 && e >= 2) {
        if (e == 2) {
            out.push_back({2, e, PrimePowerLabel::Kind::NonMetacyclic, 1, 1, 0, 0});
        } else {
            for (int k = 0; k <= 1; ++k)
                for (int l = 0; l <= 1; ++l)
                    out.push_back({2, e, PrimePowerLabel::Kind::NonMetacyclic, 1, 1, k, l});
        }
    }
    return out;
}

namespace detail {

// Metacyclic elements are exponent pairs (i, j) <-> g^i h^j; the relation
// h^g = h^{1+p^f} forces (i1,j1)(i2,j2) = (i1+i2, j1 w^{i2} + j2), w = 1+p^f.
inline IsobicyclicTriple build_metacyclic(const PrimePowerLabel& lab) {
    const i64 n = ipow(lab.p, lab.e);
    const i64 w = mod_norm(1 + ipow(lab.p, lab.f), n);
    MulRule rule = [n, w](const ElemEncoding& a, const ElemEncoding& b) {
        return ElemEncoding::of({mod_norm(a.slot[0] + b.slot[0], n),
                                 mod_norm(mul_mod(a.slot[1], pow_mod(w, b.slot[0], n), n) +
                                              b.slot[1],
                                          n)});
    };
    GroupPtr g = close_generators(rule, ElemEncoding::of({0, 0}),
                                  {ElemEncoding::of({lab.u, 0}), ElemEncoding::of({lab.u, 1})},
                                  static_cast<int>(n * n) + 1);
    if (static_cast<i64>(g->size()) != n * n)
        throw ConstructionError("metacyclic closure has wrong order");
    return make_triple(g, g->generators()[0], g->generators()[1], n);
}

// Frattini normal form for G(2^e; k, l): (a, b, eps, delta) stands for
// x^{2a} y^{2b} x^eps y^delta with a, b mod 2^{e-1}.  Conjugation of the
// abelian Phi = <x^2, y^2> by x and y follows (y^2)^x = y^-2 z^l and
// (x^2)^y = x^-2 z^l with z = x^{n/2} y^{n/2}, both involutions on Phi.
struct FrattiniRules {
    i64 M;   // 2^{e-1}
    i64 h;   // 2^{e-2}, so z = (h, h) in Phi coordinates
    int k, l;

    std::pair<i64, i64> cbx(i64 a, i64 b) const {
        return {mod_norm(a + b * l * h, M), mod_norm(b * (l * h - 1), M)};
    }
    std::pair<i64, i64> cby(i64 a, i64 b) const {
        return {mod_norm(a * (l * h - 1), M), mod_norm(a * l * h + b, M)};
    }
    std::pair<i64, i64> conj(std::pair<i64, i64> u, int eps, int delta) const {
        if (delta) u = cby(u.first, u.second);
        if (eps) u = cbx(u.first, u.second);
        return u;
    }
    std::pair<i64, i64> commutator_c() const {
        // c = [y, x] = x^{2+k 2^{e-1}} y^{-2-k 2^{e-1}}
        i64 t = mod_norm(1 + k * h, M);
        return {t, mod_norm(-t, M)};
    }

    // rep_mult[e1][d1][e2][d2] = (phi, eps, delta) with
    // x^{e1} y^{d1} x^{e2} y^{d2} = x^{2 phi.a} y^{2 phi.b} x^eps y^delta
    struct RepProduct {
        std::pair<i64, i64> phi;
        int eps, delta;
    };
    RepProduct rep_mult(int e1, int d1, int e2, int d2) const {
        auto add = [this](std::pair<i64, i64> u, std::pair<i64, i64> v) {
            return std::pair<i64, i64>{mod_norm(u.first + v.first, M),
                                       mod_norm(u.second + v.second, M)};
        };
        const std::pair<i64, i64> zero{0, 0};
        if (e1 == 0 && d1 == 0) return {zero, e2, d2};
        if (e2 == 0 && d2 == 0) return {zero, e1, d1};
        const auto c = commutator_c();
        if (e1 == 1 && d1 == 0) {
            if (e2 == 1 && d2 == 0) return {{1, 0}, 0, 0};        // x.x = x^2
            if (e2 == 0 && d2 == 1) return {zero, 1, 1};          // x.y = xy
            return {{1, 0}, 0, 1};                                // x.xy = x^2 y
        }
        if (e1 == 0 && d1 == 1) {
            if (e2 == 1 && d2 == 0)
                return {conj(c, 1, 1), 1, 1};                     // y.x = conj_xy(c) xy
            if (e2 == 0 && d2 == 1) return {{0, 1}, 0, 0};        // y.y = y^2
            auto phi = cby(c.first, c.second);                    // y.xy = cbx(y^2 cby(c)) x
            phi = add(phi, {0, 1});
            return {conj(phi, 1, 0), 1, 0};
        }
        // e1 == 1 && d1 == 1
        if (e2 == 1 && d2 == 0)
            return {add({1, 0}, cby(c.first, c.second)), 0, 1};   // xy.x = x^2 cby(c) y
        if (e2 == 0 && d2 == 1) return {conj({0, 1}, 1, 0), 1, 0};  // xy.y = cbx(y^2) x
        return {add({1, 1}, cby(c.first, c.second)), 0, 0};       // xy.xy = x^2 y^2 cby(c)
    }
};

inline IsobicyclicTriple build_non_metacyclic(const PrimePowerLabel& lab) {
    const i64 n = ipow(2, lab.e);
    const FrattiniRules fr{n / 2, n / 4, lab.k, lab.l};
    MulRule rule = [fr](const ElemEncoding& a, const ElemEncoding& b) {
        const int e1 = static_cast<int>(a.slot[2]), d1 = static_cast<int>(a.slot[3]);
        const int e2 = static_cast<int>(b.slot[2]), d2 = static_cast<int>(b.slot[3]);
        auto phi2 = fr.conj({b.slot[0], b.slot[1]}, e1, d1);
        auto rep = fr.rep_mult(e1, d1, e2, d2);
        return ElemEncoding::of(
            {mod_norm(a.slot[0] + phi2.first + rep.phi.first, fr.M),
             mod_norm(a.slot[1] + phi2.second + rep.phi.second, fr.M), rep.eps, rep.delta});
    };
    GroupPtr g = close_generators(rule, ElemEncoding::of({0, 0, 0, 0}),
                                  {ElemEncoding::of({0, 0, 1, 0}), ElemEncoding::of({0, 0, 0, 1})},
                                  static_cast<int>(n * n) + 1);
    if (static_cast<i64>(g->size()) != n * n)
        throw ConstructionError("non-metacyclic closure has wrong order");

    // Check the defining presentation; a failure here means the rewriting
    // rules above were transcribed wrongly.
    const int x = g->generators()[0], y = g->generators()[1];
    const i64 half = n / 2, quarter = n / 4;
    auto mul3 = [&](int a, int b, int c) { return g->mul(g->mul(a, b), c); };
    int c_elem = g->mul(mul3(g->inv(y), g->inv(x), y), x);
    if (c_elem != g->mul(g->pow(x, 2 + lab.k * half), g->pow(y, -(2 + lab.k * half))))
        throw ConstructionError("G(n;k,l): commutator relation fails");
    if (mul3(g->inv(x), c_elem, x) !=
        g->mul(g->pow(c_elem, -1 + lab.l * quarter), g->pow(x, 4)))
        throw ConstructionError("G(n;k,l): c^x relation fails");
    if (mul3(g->inv(y), c_elem, y) !=
        g->mul(g->pow(c_elem, -1 - lab.l * quarter), g->pow(y, -4)))
        throw ConstructionError("G(n;k,l): c^y relation fails");
    if (element_order(*g, x) != n || element_order(*g, y) != n)
        throw ConstructionError("G(n;k,l): generator order is not n");
    int z = g->mul(g->pow(x, half), g->pow(y, half));
    if (g->mul(z, x) != g->mul(x, z) || g->mul(z, y) != g->mul(y, z) ||
        g->mul(z, z) != g->identity())
        throw ConstructionError("G(n;k,l): z is not a central involution");
    int xy = g->mul(x, y);
    if (g->mul(xy, xy) != g->pow(z, lab.k + lab.l))
        throw ConstructionError("G(n;k,l): (xy)^2 != z^{k+l}");
    return make_triple(g, x, y, n);
}

}  // namespace detail

inline IsobicyclicTriple build_prime_power_triple(const PrimePowerLabel& lab) {
    validate_label(lab);
    if (lab.kind == PrimePowerLabel::Kind::Metacyclic) return detail::build_metacyclic(lab);
    return detail::build_non_metacyclic(lab);
}

// Eigenvalues lambda in Z_{p^d} admissible for a diagonal action of the
// labelled q-group: lambda^{q^m} = 1 with m = min{f_Q, r}, q^r || p-1.
// Enumerated by brute force; exactly q^m of them, always including 1.
inline std::vector<Residue> admissible_eigenvalues(const PrimePowerLabel& q_label, i64 p,
                                                   int d) {
    if (q_label.p == p) throw ContractError("admissible_eigenvalues: q must differ from p");
    if (p == 2 || !is_prime(p))
        throw ContractError("admissible_eigenvalues: p must be an odd prime");
    const int r = valuation(p - 1, q_label.p);
    const int m = std::min(f_invariant(q_label), r);
    const i64 mod = ipow(p, d);
    const i64 target = ipow(q_label.p, m);
    std::vector<Residue> out;
    for (i64 lam = 1; lam < mod; ++lam) {
        if (lam % p == 0) continue;
        if (pow_mod(lam, target, mod) == 1) out.emplace_back(lam, mod);
    }
    if (static_cast<i64>(out.size()) != target)
        throw ConstructionError("admissible_eigenvalues: count disagrees with q^m");
    return out;
}

}  // namespace bipmap
