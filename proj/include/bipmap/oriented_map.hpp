#pragma once

// Oriented maps of K_{n,n} as dart permutations.  Darts are numbered
// 2*edge + 0 for the black end and 2*edge + 1 for the white end; the
// rotation permutes darts around their vertex and the edge involution swaps
// the two ends.  Faces are the orbits of rotation composed with edge swap.

#include <string>
#include <vector>

#include "json.hpp"

#include "bipmap/group.hpp"
#include "bipmap/labelling.hpp"

namespace bipmap {

struct RegularityViolationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OrientedMap {
    i64 n = 1;
    std::vector<int> rotation;   // dart -> next dart around its vertex
    std::vector<int> edge_swap;  // dart -> other end of the same edge
    std::vector<int> vertex_of;  // dart -> vertex id; black 0..n-1, white n..2n-1

    int dart_count() const { return static_cast<int>(rotation.size()); }
    static int edge_of(int dart) { return dart / 2; }
    static bool is_black(int dart) { return dart % 2 == 0; }
};

struct MapInvariants {
    i64 face_length = 2;  // 2m
    i64 face_count = 1;
    i64 euler = 2;
    i64 genus = 0;
    i64 n = 1;

    i64 m() const { return face_length / 2; }
    friend bool operator==(const MapInvariants&, const MapInvariants&) = default;
};

// Realization per the triple: edges are the group elements, black vertices
// the cosets gX, white vertices the cosets gY; the rotation advances the
// black dart of edge g to the black dart of g*x (right multiplication keeps
// the coset), and similarly with y at white vertices.
inline OrientedMap realize_map(const IsobicyclicTriple& t) {
    const FiniteGroup& g = *t.group;
    const int edges = g.size();
    OrientedMap m;
    m.n = t.n;
    m.rotation.resize(2 * edges);
    m.edge_swap.resize(2 * edges);
    m.vertex_of.assign(2 * edges, -1);
    for (int e = 0; e < edges; ++e) {
        m.rotation[2 * e] = 2 * g.mul(e, t.x);
        m.rotation[2 * e + 1] = 2 * g.mul(e, t.y) + 1;
        m.edge_swap[2 * e] = 2 * e + 1;
        m.edge_swap[2 * e + 1] = 2 * e;
    }
    // Coset numbering: scan edges ascending, walk each unvisited x-cycle
    // (black coset) resp. y-cycle; ids are ordered by least member element.
    int next_black = 0, next_white = 0;
    for (int e = 0; e < edges; ++e) {
        if (m.vertex_of[2 * e] < 0) {
            for (int cur = e; m.vertex_of[2 * cur] < 0; cur = g.mul(cur, t.x))
                m.vertex_of[2 * cur] = next_black;
            ++next_black;
        }
        if (m.vertex_of[2 * e + 1] < 0) {
            for (int cur = e; m.vertex_of[2 * cur + 1] < 0; cur = g.mul(cur, t.y))
                m.vertex_of[2 * cur + 1] = next_white;
            ++next_white;
        }
    }
    if (next_black != t.n || next_white != t.n)
        throw ConstructionError("realize_map: coset structure is not 2n vertices");
    for (int d = 1; d < m.dart_count(); d += 2) m.vertex_of[d] += static_cast<int>(t.n);
    return m;
}

// Face orbits of rotation o edge_swap; deterministic: faces sorted by least
// dart, each starting at its least dart.
inline std::vector<std::vector<int>> face_orbits(const OrientedMap& m) {
    std::vector<char> seen(m.dart_count(), 0);
    std::vector<std::vector<int>> faces;
    for (int d = 0; d < m.dart_count(); ++d) {
        if (seen[d]) continue;
        std::vector<int> face;
        int cur = d;
        do {
            seen[cur] = 1;
            face.push_back(cur);
            cur = m.rotation[m.edge_swap[cur]];
        } while (cur != d);
        faces.push_back(std::move(face));
    }
    return faces;
}

inline MapInvariants trace_faces(const OrientedMap& m) {
    const auto faces = face_orbits(m);
    MapInvariants inv;
    inv.n = m.n;
    inv.face_length = static_cast<i64>(faces.front().size());
    inv.face_count = static_cast<i64>(faces.size());
    for (const auto& f : faces)
        if (static_cast<i64>(f.size()) != inv.face_length)
            throw RegularityViolationError("trace_faces: faces of unequal length");
    if (inv.face_length % 2 != 0)
        throw RegularityViolationError("trace_faces: odd face length on a bipartite map");
    const i64 n = m.n, mm = inv.face_length / 2;
    if (n * n % mm != 0 || inv.face_count != n * n / mm)
        throw RegularityViolationError("trace_faces: face count disagrees with n^2/m");
    inv.euler = 2 * n - n * n + n * n / mm;  // V - E + F
    if (inv.euler % 2 != 0)
        throw RegularityViolationError("trace_faces: odd Euler characteristic");
    inv.genus = 1 - inv.euler / 2;
    return inv;
}

// m_G = m_S: the order of xy predicted from the non-terminal vertex labels
// alone (q^e for a metacyclic label, 2 or 4 for a non-metacyclic one).
inline i64 predicted_xy_order(const IsoLabelling& lab) {
    i64 m = 1;
    for (i64 q : lab.gamma.non_terminals()) {
        const PrimePowerLabel& vl = lab.vertex_labels.at(q);
        if (vl.kind == PrimePowerLabel::Kind::Metacyclic)
            m *= ipow(vl.p, vl.e);
        else
            m *= (vl.k == vl.l) ? 2 : 4;
    }
    return m;
}

// Closed-form type and genus by the terminal-set case split.
inline MapInvariants predicted_invariants(const IsoLabelling& lab) {
    const i64 n = lab.n;
    std::set<i64> pi;
    for (i64 p : lab.gamma.terminals()) pi.insert(p);
    const i64 n_pi = pi_part(n, pi);
    const i64 n_pi_dash = n / n_pi;

    i64 m = 0;
    const bool even = (n % 2 == 0);
    const PrimePowerLabel* two = even ? &lab.vertex_labels.at(2) : nullptr;
    if (!even || two->kind == PrimePowerLabel::Kind::Metacyclic) {
        m = n_pi_dash;  // type {2 n_pi', n}
    } else {
        const i64 n_pi_star = n_pi_dash / ipow(2, two->e);  // pi' minus {2}
        m = (two->k == two->l) ? 2 * n_pi_star : 4 * n_pi_star;
    }
    MapInvariants inv;
    inv.n = n;
    inv.face_length = 2 * m;
    inv.face_count = n * n / m;
    inv.euler = 2 * n - n * n + n * n / m;
    inv.genus = 1 - inv.euler / 2;
    return inv;
}

// ---------------------------------------------------------------------------
// Map isomorphism machinery (shared with the brute-force oracle)
// ---------------------------------------------------------------------------

namespace detail {

// Attempt the unique extension of base -> image commuting with rotation and
// edge swap; the dart graph of a connected map is connected, so the image of
// one dart determines everything.
inline bool propagate_dart_map(const OrientedMap& m, int base, int image) {
    std::vector<int> a(m.dart_count(), -1);
    std::vector<int> stack{base};
    a[base] = image;
    while (!stack.empty()) {
        int d = stack.back();
        stack.pop_back();
        const std::pair<int, int> steps[2] = {{m.rotation[d], m.rotation[a[d]]},
                                              {m.edge_swap[d], m.edge_swap[a[d]]}};
        for (auto [nd, ni] : steps) {
            if (a[nd] == -1) {
                a[nd] = ni;
                stack.push_back(nd);
            } else if (a[nd] != ni) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace detail

// Orientation- and color-preserving dart automorphisms; the map is regular
// exactly when this count reaches n^2.
inline i64 count_color_orientation_automorphisms(const OrientedMap& m, bool allow_color_swap = false) {
    i64 count = 0;
    const int base = 0;  // dart 0 is black
    for (int image = 0; image < m.dart_count(); ++image) {
        if (!allow_color_swap && !OrientedMap::is_black(image)) continue;
        if (detail::propagate_dart_map(m, base, image)) ++count;
    }
    return count;
}

// Canonical form under orientation-preserving isomorphism with colors
// interchangeable: the lexicographically least (rotation, edge_swap) table
// over all breadth-first relabellings from each base dart.
inline std::vector<int> canonical_form(const OrientedMap& m) {
    const int dcount = m.dart_count();
    std::vector<int> best;
    std::vector<int> relabel(dcount), order;
    for (int base = 0; base < dcount; ++base) {
        std::fill(relabel.begin(), relabel.end(), -1);
        order.clear();
        relabel[base] = 0;
        order.push_back(base);
        for (std::size_t head = 0; head < order.size(); ++head) {
            int d = order[head];
            for (int nd : {m.rotation[d], m.edge_swap[d]}) {
                if (relabel[nd] == -1) {
                    relabel[nd] = static_cast<int>(order.size());
                    order.push_back(nd);
                }
            }
        }
        std::vector<int> code(2 * dcount);
        for (int d = 0; d < dcount; ++d) {
            code[relabel[d]] = relabel[m.rotation[d]];
            code[dcount + relabel[d]] = relabel[m.edge_swap[d]];
        }
        if (best.empty() || code < best) best = std::move(code);
    }
    return best;
}

inline bool maps_isomorphic(const OrientedMap& a, const OrientedMap& b) {
    if (a.dart_count() != b.dart_count()) return false;
    return canonical_form(a) == canonical_form(b);
}

// ---------------------------------------------------------------------------
// JSON export
// ---------------------------------------------------------------------------

inline nlohmann::json map_to_json(const OrientedMap& m, const std::string& labelling_id) {
    nlohmann::json j;
    j["n"] = m.n;
    j["labelling"] = labelling_id;
    const int edges = m.dart_count() / 2;
    auto vertex_block = [&](bool black) {
        nlohmann::json arr = nlohmann::json::array();
        const i64 base = black ? 0 : m.n;
        for (i64 v = 0; v < m.n; ++v) {
            int start = -1;
            for (int e = 0; e < edges && start < 0; ++e) {
                int d = 2 * e + (black ? 0 : 1);
                if (m.vertex_of[d] == base + v) start = d;
            }
            nlohmann::json rot = nlohmann::json::array();
            int cur = start;
            do {
                rot.push_back(OrientedMap::edge_of(cur));
                cur = m.rotation[cur];
            } while (cur != start);
            arr.push_back({{"id", v}, {"rotation", rot}});
        }
        return arr;
    };
    j["black"] = vertex_block(true);
    j["white"] = vertex_block(false);
    nlohmann::json faces = nlohmann::json::array();
    for (const auto& f : face_orbits(m)) faces.push_back(f);
    j["faces"] = faces;
    const MapInvariants inv = trace_faces(m);
    j["type"] = {inv.face_length, inv.n};
    j["genus"] = inv.genus;
    return j;
}

}  // namespace bipmap
