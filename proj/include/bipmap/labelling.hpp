#pragma once

// Isobicyclic labellings: a short spanning subgraph of Pi_n with prime-power
// triple labels on vertices (standard at terminal vertices) and nontrivial
// admissible eigenvalues on arcs.  Labellings are in bijection with the
// isobicyclic triples; both directions are implemented here, together with
// the cartesian-product and diagonal semidirect-product constructions that
// realize a labelling as a concrete group.

#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bipmap/group.hpp"
#include "bipmap/prime_digraph.hpp"
#include "bipmap/prime_power.hpp"

namespace bipmap {

// Raised when a verified isobicyclic triple fails to match the classified
// catalogue; this signals an engine bug, never a user error.
struct ClassificationViolationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IsoLabelling {
    i64 n = 1;
    ShortSubgraph gamma;
    std::map<i64, PrimePowerLabel> vertex_labels;          // prime -> label
    std::map<std::pair<i64, i64>, Residue> arc_labels;     // (q, p) -> lambda mod p^{e_p}
    friend bool operator==(const IsoLabelling&, const IsoLabelling&) = default;
};

// s, t, lambda of the canonical decomposition G = T : S with t minimal.
struct CanonicalDecomposition {
    i64 s = 1;
    i64 t = 1;
    std::vector<PrimePowerLabel> s_factors;  // non-terminal labels, ascending prime
    Residue lambda{0, 1};
    i64 lambda_order = 1;                    // lcm of per-terminal orders
    std::set<i64> pi;                        // terminal primes
};

// ---------------------------------------------------------------------------
// Descriptor strings (the census's labelling ids)
//   labelling := vertexlabel (";" vertexlabel)* ("|" arclabel)*
//   vertexlabel := prime "^" exp ":" ("std" | "M(" f "," u ")" | "N(" k "," l ")")
//   arclabel := q "->" p ":" lambda
// ---------------------------------------------------------------------------

inline std::string render_labelling(const IsoLabelling& lab) {
    std::string s;
    for (const auto& [p, vl] : lab.vertex_labels) {
        if (!s.empty()) s += ";";
        s += render_label(vl);
    }
    for (const auto& [arc, lam] : lab.arc_labels) {
        s += "|" + std::to_string(arc.first) + "->" + std::to_string(arc.second) + ":" +
             std::to_string(lam.value);
    }
    return s;
}

inline void validate_labelling(const IsoLabelling& lab) {
    i64 n = 1;
    for (const auto& [p, vl] : lab.vertex_labels) {
        validate_label(vl);
        if (vl.p != p) throw ContractError("labelling: vertex label prime mismatch");
        n *= ipow(vl.p, vl.e);
    }
    if (n != lab.n) throw ContractError("labelling: n does not match vertex labels");
    if (n == 1) {
        if (!lab.gamma.arcs.empty() || !lab.arc_labels.empty())
            throw ContractError("labelling: n = 1 admits only the empty labelling");
        return;
    }
    if (!(lab.gamma.parent == pi_graph(n)))
        throw ContractError("labelling: subgraph parent is not Pi_n");
    if (!is_short_arc_set(lab.gamma.arcs))
        throw ContractError("labelling: arc set is not short");
    for (const auto& a : lab.gamma.arcs) {
        if (!std::binary_search(lab.gamma.parent.arcs.begin(), lab.gamma.parent.arcs.end(), a))
            throw ContractError("labelling: arc not present in Pi_n");
        auto it = lab.arc_labels.find({a.q, a.p});
        if (it == lab.arc_labels.end()) throw ContractError("labelling: arc missing its label");
        const PrimePowerLabel& ql = lab.vertex_labels.at(a.q);
        const PrimePowerLabel& pl = lab.vertex_labels.at(a.p);
        auto adm = admissible_eigenvalues(ql, a.p, pl.e);
        if (it->second.value == 1 || it->second.modulus != ipow(a.p, pl.e) ||
            std::find(adm.begin(), adm.end(), it->second) == adm.end())
            throw ContractError("labelling: arc label is not a nontrivial admissible eigenvalue");
    }
    if (lab.arc_labels.size() != lab.gamma.arcs.size())
        throw ContractError("labelling: stray arc labels");
    for (i64 p : lab.gamma.terminals())
        if (!lab.vertex_labels.at(p).is_standard())
            throw ContractError("labelling: terminal vertices must carry the standard triple");
}

inline IsoLabelling parse_labelling(const std::string& desc) {
    IsoLabelling lab;
    if (desc.empty()) return lab;  // n = 1

    auto fail = [&](const std::string& why) -> ContractError {
        return ContractError("parse_labelling: " + why + " in '" + desc + "'");
    };
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t bar = desc.find('|', start);
        parts.push_back(desc.substr(start, bar == std::string::npos ? bar : bar - start));
        if (bar == std::string::npos) break;
        start = bar + 1;
    }
    // vertex labels
    const std::string& head = parts[0];
    start = 0;
    while (start <= head.size()) {
        std::size_t semi = head.find(';', start);
        std::string tok = head.substr(start, semi == std::string::npos ? semi : semi - start);
        std::size_t caret = tok.find('^'), colon = tok.find(':');
        if (caret == std::string::npos || colon == std::string::npos || caret > colon)
            throw fail("malformed vertex label '" + tok + "'");
        PrimePowerLabel vl;
        vl.p = std::stoll(tok.substr(0, caret));
        vl.e = std::stoi(tok.substr(caret + 1, colon - caret - 1));
        std::string kind = tok.substr(colon + 1);
        if (kind == "std") {
            vl.kind = PrimePowerLabel::Kind::Metacyclic;
            vl.f = vl.e;
            vl.u = 1;
        } else if (kind.size() > 3 && (kind[0] == 'M' || kind[0] == 'N') && kind[1] == '(' &&
                   kind.back() == ')') {
            std::string args = kind.substr(2, kind.size() - 3);
            std::size_t comma = args.find(',');
            if (comma == std::string::npos) throw fail("malformed label arguments '" + kind + "'");
            if (kind[0] == 'M') {
                vl.kind = PrimePowerLabel::Kind::Metacyclic;
                vl.f = std::stoi(args.substr(0, comma));
                vl.u = std::stoll(args.substr(comma + 1));
            } else {
                vl.kind = PrimePowerLabel::Kind::NonMetacyclic;
                vl.k = std::stoi(args.substr(0, comma));
                vl.l = std::stoi(args.substr(comma + 1));
            }
        } else {
            throw fail("unknown vertex label kind '" + kind + "'");
        }
        if (lab.vertex_labels.count(vl.p)) throw fail("duplicate vertex label");
        lab.vertex_labels[vl.p] = vl;
        lab.n *= ipow(vl.p, vl.e);
        if (semi == std::string::npos) break;
        start = semi + 1;
    }
    lab.gamma.parent = pi_graph(lab.n);
    // arc labels
    for (std::size_t i = 1; i < parts.size(); ++i) {
        const std::string& tok = parts[i];
        std::size_t arrow = tok.find("->"), colon = tok.find(':', arrow);
        if (arrow == std::string::npos || colon == std::string::npos)
            throw fail("malformed arc label '" + tok + "'");
        i64 q = std::stoll(tok.substr(0, arrow));
        i64 p = std::stoll(tok.substr(arrow + 2, colon - arrow - 2));
        i64 lam = std::stoll(tok.substr(colon + 1));
        auto pit = std::find_if(lab.gamma.parent.arcs.begin(), lab.gamma.parent.arcs.end(),
                                [&](const PrimeArc& a) { return a.q == q && a.p == p; });
        if (pit == lab.gamma.parent.arcs.end()) throw fail("arc is not present in Pi_n");
        if (!lab.vertex_labels.count(p)) throw fail("arc head has no vertex label");
        lab.gamma.arcs.push_back(*pit);
        lab.arc_labels[{q, p}] = Residue(lam, ipow(p, lab.vertex_labels.at(p).e));
    }
    std::sort(lab.gamma.arcs.begin(), lab.gamma.arcs.end());
    validate_labelling(lab);
    return lab;
}

// ---------------------------------------------------------------------------
// Enumeration of L(n)
// ---------------------------------------------------------------------------

// Complete, duplicate-free, deterministically ordered: short subgraphs first
// (lexicographic), then non-terminal vertex labels in catalogue order, then
// arc eigenvalues in ascending residue order.
inline std::vector<IsoLabelling> enumerate_labellings(i64 n) {
    if (n < 1) throw ContractError("enumerate_labellings: n must be >= 1");
    if (n == 1) return {IsoLabelling{}};

    std::map<i64, int> exp_of;
    for (const auto& pp : factorize(n)) exp_of[pp.p] = pp.e;

    std::vector<IsoLabelling> out;
    for (const ShortSubgraph& sub : short_spanning_subgraphs(pi_graph(n))) {
        const std::vector<i64> nts = sub.non_terminals();
        std::vector<std::vector<PrimePowerLabel>> vopts;
        for (i64 q : nts) vopts.push_back(enumerate_prime_power_labels(q, exp_of[q]));

        std::vector<std::size_t> vidx(nts.size(), 0);
        while (true) {
            IsoLabelling lab;
            lab.n = n;
            lab.gamma = sub;
            for (i64 p : sub.terminals())
                lab.vertex_labels[p] = {p, exp_of[p], PrimePowerLabel::Kind::Metacyclic,
                                        exp_of[p], 1, 0, 0};
            for (std::size_t i = 0; i < nts.size(); ++i)
                lab.vertex_labels[nts[i]] = vopts[i][vidx[i]];

            // nontrivial admissible eigenvalues per arc, given the tail labels
            std::vector<std::vector<Residue>> aopts;
            for (const PrimeArc& a : sub.arcs) {
                std::vector<Residue> adm =
                    admissible_eigenvalues(lab.vertex_labels.at(a.q), a.p, exp_of[a.p]);
                std::erase_if(adm, [](const Residue& r) { return r.value == 1; });
                aopts.push_back(std::move(adm));
            }
            bool any_empty = std::any_of(aopts.begin(), aopts.end(),
                                         [](const auto& v) { return v.empty(); });
            if (!any_empty) {
                std::vector<std::size_t> aidx(sub.arcs.size(), 0);
                while (true) {
                    IsoLabelling item = lab;
                    for (std::size_t i = 0; i < sub.arcs.size(); ++i)
                        item.arc_labels[{sub.arcs[i].q, sub.arcs[i].p}] = aopts[i][aidx[i]];
                    out.push_back(std::move(item));
                    std::size_t k = aidx.size();
                    while (k > 0 && ++aidx[k - 1] == aopts[k - 1].size()) aidx[--k] = 0;
                    if (k == 0) break;
                }
            }
            std::size_t k = vidx.size();
            while (k > 0 && ++vidx[k - 1] == vopts[k - 1].size()) vidx[--k] = 0;
            if (k == 0) break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Constructions 4.1 / 4.2
// ---------------------------------------------------------------------------

inline IsobicyclicTriple trivial_triple() {
    MulRule rule = [](const ElemEncoding&, const ElemEncoding&) { return ElemEncoding::of({}); };
    GroupPtr g = close_generators(rule, ElemEncoding::of({}), {}, 2);
    return IsobicyclicTriple{g, 0, 0, 1};
}

// Direct product with componentwise canonical generators.
inline IsobicyclicTriple cartesian_product(const std::vector<IsobicyclicTriple>& triples) {
    if (triples.empty()) return trivial_triple();
    if (triples.size() == 1) return triples.front();
    if (triples.size() > static_cast<std::size_t>(kMaxEncodingSlots))
        throw ScaleError("cartesian_product: too many factors");
    i64 n = 1;
    for (const auto& t : triples) {
        if (std::gcd(n, t.n) != 1)
            throw ContractError("cartesian_product: factor orders must be coprime");
        n *= t.n;
    }
    std::vector<GroupPtr> factors;
    for (const auto& t : triples) factors.push_back(t.group);
    const std::size_t k = triples.size();
    MulRule rule = [factors, k](const ElemEncoding& a, const ElemEncoding& b) {
        ElemEncoding r;
        r.len = static_cast<int>(k);
        for (std::size_t i = 0; i < k; ++i)
            r.slot[i] = factors[i]->mul(static_cast<int>(a.slot[i]), static_cast<int>(b.slot[i]));
        return r;
    };
    ElemEncoding id, gx, gy;
    id.len = gx.len = gy.len = static_cast<int>(k);
    for (std::size_t i = 0; i < k; ++i) {
        id.slot[i] = triples[i].group->identity();
        gx.slot[i] = triples[i].x;
        gy.slot[i] = triples[i].y;
    }
    GroupPtr g = close_generators(rule, id, {gx, gy}, static_cast<int>(n * n) + 1);
    if (static_cast<i64>(g->size()) != n * n)
        throw ConstructionError("cartesian_product: closure has wrong order");
    return make_triple(g, g->generators()[0], g->generators()[1], n);
}

// Diagonal semidirect product: T = Z_t^2 acted on by S via
// x_S -> diag(1, lambda), y_S -> diag(lambda, 1), generators x = x_S x_T and
// y = y_S y_T.  With lambda = 1 this degenerates to S x S(t).
inline IsobicyclicTriple semidirect_product(const IsobicyclicTriple& s_triple, i64 t,
                                            const Residue& lambda) {
    if (t < 1) throw ContractError("semidirect_product: t must be positive");
    if (std::gcd(s_triple.n, t) != 1)
        throw ContractError("semidirect_product: s and t must be coprime");
    if (lambda.modulus != t || std::gcd(lambda.value, t) != 1)
        throw ContractError("semidirect_product: lambda must be a unit mod t");
    if (t == 1) return s_triple;

    const FiniteGroup& sg = *s_triple.group;
    // psi(sigma) along breadth-first words over {x_S, y_S}; diagonal matrices
    // stored as their two entries.
    BfsSpan span = sg.span_from({s_triple.x, s_triple.y});
    if (!span.spans) throw ConstructionError("semidirect_product: generators do not span S");
    const std::array<std::pair<i64, i64>, 2> gen_psi{{{1, lambda.value}, {lambda.value, 1}}};
    std::vector<std::pair<i64, i64>> psi(sg.size());
    psi[sg.identity()] = {1, 1};
    for (std::size_t i = 1; i < span.order.size(); ++i) {
        int el = span.order[i];
        const auto& par = psi[span.parent[el]];
        const auto& gp = gen_psi[span.via_gen[el]];
        psi[el] = {mul_mod(par.first, gp.first, t), mul_mod(par.second, gp.second, t)};
    }
    const std::array<int, 2> gens{s_triple.x, s_triple.y};
    for (int a = 0; a < sg.size(); ++a) {
        for (int k = 0; k < 2; ++k) {
            const auto& lhs = psi[sg.mul(a, gens[k])];
            if (lhs.first != mul_mod(psi[a].first, gen_psi[k].first, t) ||
                lhs.second != mul_mod(psi[a].second, gen_psi[k].second, t))
                throw ConstructionError("semidirect_product: diagonal action is inconsistent");
        }
    }

    const i64 n = s_triple.n * t;
    GroupPtr sgp = s_triple.group;
    MulRule rule = [sgp, psi, t](const ElemEncoding& a, const ElemEncoding& b) {
        const auto& m = psi[b.slot[2]];
        return ElemEncoding::of({mod_norm(mul_mod(a.slot[0], m.first, t) + b.slot[0], t),
                                 mod_norm(mul_mod(a.slot[1], m.second, t) + b.slot[1], t),
                                 sgp->mul(static_cast<int>(a.slot[2]), static_cast<int>(b.slot[2]))});
    };
    GroupPtr g = close_generators(rule, ElemEncoding::of({0, 0, sg.identity()}),
                                  {ElemEncoding::of({1, 0, s_triple.x}),
                                   ElemEncoding::of({0, 1, s_triple.y})},
                                  static_cast<int>(n * n) + 1);
    if (static_cast<i64>(g->size()) != n * n)
        throw ConstructionError("semidirect_product: closure has wrong order");
    return make_triple(g, g->generators()[0], g->generators()[1], n);
}

// ---------------------------------------------------------------------------
// The bijection of labellings with triples
// ---------------------------------------------------------------------------

inline CanonicalDecomposition canonical_decomposition(const IsoLabelling& lab) {
    CanonicalDecomposition d;
    std::vector<Residue> congs;
    for (i64 p : lab.gamma.terminals()) {
        const int e = lab.vertex_labels.at(p).e;
        const i64 mod = ipow(p, e);
        Residue lam_p(1, mod);
        i64 ord_p = 1;
        for (const auto& a : lab.gamma.arcs) {
            if (a.p != p) continue;
            const Residue& al = lab.arc_labels.at({a.q, a.p});
            lam_p = Residue(mul_mod(lam_p.value, al.value, mod), mod);
            ord_p *= multiplicative_order(al);  // coprime orders, one per tail prime
        }
        d.pi.insert(p);
        d.t *= mod;
        d.lambda_order = std::lcm(d.lambda_order, ord_p);
        congs.push_back(lam_p);
    }
    d.s = lab.n / d.t;
    d.lambda = crt_combine(congs);
    for (const auto& [p, vl] : lab.vertex_labels)
        if (!d.pi.count(p)) d.s_factors.push_back(vl);
    if (d.t > 1 && std::gcd(mod_norm(d.lambda.value - 1, d.t), d.t) != 1)
        throw ClassificationViolationError("canonical decomposition: lambda - 1 is not a unit");
    return d;
}

inline IsobicyclicTriple triple_from_labelling(const IsoLabelling& lab) {
    if (lab.n == 1) return trivial_triple();
    CanonicalDecomposition dec = canonical_decomposition(lab);
    std::vector<IsobicyclicTriple> factors;
    for (const auto& vl : dec.s_factors) factors.push_back(build_prime_power_triple(vl));
    IsobicyclicTriple s = cartesian_product(factors);
    if (dec.t == 1) return s;
    return semidirect_product(s, dec.t, dec.lambda);
}

namespace detail {

// Catalogue of built prime-power triples, shared by concurrent callers.
inline const std::vector<std::pair<PrimePowerLabel, IsobicyclicTriple>>& catalogue_triples(
    i64 p, int e) {
    static std::map<std::pair<i64, int>, std::vector<std::pair<PrimePowerLabel, IsobicyclicTriple>>>
        cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(p, e);
    auto it = cache.find(key);
    if (it == cache.end()) {
        std::vector<std::pair<PrimePowerLabel, IsobicyclicTriple>> built;
        for (const auto& lab : enumerate_prime_power_labels(p, e))
            built.emplace_back(lab, build_prime_power_triple(lab));
        it = cache.emplace(key, std::move(built)).first;
    }
    return it->second;
}

}  // namespace detail

// Recover (Gamma, Lambda) from a verified triple: canonical Sylow generators
// x_p = x^{a_p} with a_p = 1 mod p^{e_p}, 0 mod n/p^{e_p}; each Sylow triple is
// matched against the classified catalogue, and arcs with their eigenvalues
// are read off from the conjugation x_p^{y_q} = x_p^lambda.
inline IsoLabelling labelling_from_triple(const IsobicyclicTriple& t) {
    IsoLabelling lab;
    lab.n = t.n;
    if (t.n == 1) return lab;
    lab.gamma.parent = pi_graph(t.n);

    const FiniteGroup& g = *t.group;
    const Factorization fact = factorize(t.n);
    std::map<i64, int> exp_of;
    std::map<i64, int> xg, yg;  // canonical Sylow generators, as elements of G
    for (const auto& [p, e] : fact) {
        exp_of[p] = e;
        const i64 pe = ipow(p, e);
        const i64 a_p = crt_combine({Residue(1, pe), Residue(0, t.n / pe)}).value;
        xg[p] = g.pow(t.x, a_p);
        yg[p] = g.pow(t.y, a_p);
    }

    for (const auto& [p, e] : fact) {
        const i64 pe = ipow(p, e);
        // the canonical Sylow p-subgroup, re-indexed as its own group
        MulRule rule = [gp = t.group](const ElemEncoding& a, const ElemEncoding& b) {
            return ElemEncoding::of(
                {gp->mul(static_cast<int>(a.slot[0]), static_cast<int>(b.slot[0]))});
        };
        GroupPtr sylow = close_generators(
            rule, ElemEncoding::of({g.identity()}),
            {ElemEncoding::of({xg[p]}), ElemEncoding::of({yg[p]})},
            static_cast<int>(pe * pe) + 1);
        if (static_cast<i64>(sylow->size()) != pe * pe)
            throw ClassificationViolationError("Sylow subgroup has unexpected order");
        IsobicyclicTriple st{sylow, sylow->generators()[0], sylow->generators()[1], pe};

        bool matched = false;
        for (const auto& [cand, cand_triple] : detail::catalogue_triples(p, e)) {
            if (triples_isomorphic(st, cand_triple)) {
                lab.vertex_labels[p] = cand;
                matched = true;
                break;
            }
        }
        if (!matched)
            throw ClassificationViolationError("Sylow triple matches no catalogued label");
    }

    // Arcs and eigenvalues by conjugation.  Only pairs with q | p-1 can carry
    // a nontrivial action, and exactly for those pairs the conjugate of x_p
    // by y_q is guaranteed to stay inside <x_p>.
    for (const PrimeArc& cand : lab.gamma.parent.arcs) {
        const i64 pe = ipow(cand.p, exp_of[cand.p]);
        const int conj = g.mul(g.mul(g.inv(yg[cand.q]), xg[cand.p]), yg[cand.q]);
        i64 lambda = -1;
        int cur = g.identity();
        for (i64 k = 0; k < pe; ++k) {
            if (cur == conj) { lambda = k; break; }
            cur = g.mul(cur, xg[cand.p]);
        }
        if (lambda < 0)
            throw ClassificationViolationError("conjugate fell outside the Sylow cyclic part");
        if (lambda != 1) {
            lab.gamma.arcs.push_back(cand);
            lab.arc_labels[{cand.q, cand.p}] = Residue(lambda, pe);
        }
    }
    std::sort(lab.gamma.arcs.begin(), lab.gamma.arcs.end());
    validate_labelling(lab);
    return lab;
}

}  // namespace bipmap
