#pragma once

// The constructive census: one record per labelling, joining the canonical
// decomposition, the closed-form invariants and the chirality analysis, with
// CSV and JSON emission.  nu_constructive independently counts by building
// every triple and checking pairwise non-isomorphism.

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "bipmap/labelling.hpp"
#include "bipmap/map_ops.hpp"
#include "bipmap/nu_formula.hpp"
#include "bipmap/oriented_map.hpp"

namespace bipmap {

inline constexpr i64 kDefaultConstructiveBudget = 60;

struct CensusRecord {
    i64 n = 1;
    std::string labelling;
    i64 s = 1;
    i64 t = 1;
    i64 lambda = 0;
    i64 face_length = 2;
    i64 genus = 0;
    bool reflexible = true;
    bool self_petrie = true;
    std::string mirror_partner;
    std::optional<std::string> petrie_partner;
};

// Builds every labelling's triple, verifies it and checks that distinct
// labellings give non-isomorphic triples; the count must equal nu(n).
inline i64 nu_constructive(i64 n, i64 budget = kDefaultConstructiveBudget) {
    if (n > budget) throw ScaleError("nu_constructive: n exceeds the constructive budget");
    const auto labellings = enumerate_labellings(n);
    std::vector<IsobicyclicTriple> triples;
    for (const auto& lab : labellings) {
        IsobicyclicTriple t = triple_from_labelling(lab);
        if (!is_isobicyclic(*t.group, t.x, t.y, t.n))
            throw ClassificationViolationError("nu_constructive: built triple not isobicyclic");
        triples.push_back(std::move(t));
    }
    for (std::size_t i = 0; i < triples.size(); ++i)
        for (std::size_t j = i + 1; j < triples.size(); ++j)
            if (triples_isomorphic(triples[i], triples[j]))
                throw ClassificationViolationError(
                    "nu_constructive: distinct labellings gave isomorphic triples (" +
                    render_labelling(labellings[i]) + " vs " + render_labelling(labellings[j]) +
                    ")");
    return static_cast<i64>(triples.size());
}

inline std::vector<CensusRecord> census_report(i64 n, i64 budget = kDefaultConstructiveBudget) {
    if (n > budget) throw ScaleError("census_report: n exceeds the constructive budget");
    std::vector<CensusRecord> out;
    for (const auto& lab : enumerate_labellings(n)) {
        CensusRecord rec;
        rec.n = n;
        rec.labelling = render_labelling(lab);
        const CanonicalDecomposition dec = canonical_decomposition(lab);
        rec.s = dec.s;
        rec.t = dec.t;
        rec.lambda = dec.lambda.value;
        const MapInvariants inv = predicted_invariants(lab);
        rec.face_length = inv.face_length;
        rec.genus = inv.genus;
        const ChiralityReport chir = analyze_chirality(triple_from_labelling(lab));
        rec.reflexible = chir.reflexible;
        rec.self_petrie = chir.self_petrie;
        rec.mirror_partner = chir.mirror_partner;
        rec.petrie_partner = chir.petrie_partner;
        out.push_back(std::move(rec));
    }
    return out;
}

inline std::string census_csv_header() {
    return "n,labelling,s,t,lambda,face_length,genus,reflexible,self_petrie,mirror_partner,"
           "petrie_partner";
}

inline std::string census_csv_row(const CensusRecord& r) {
    std::ostringstream os;
    os << r.n << ',' << r.labelling << ',' << r.s << ',' << r.t << ',' << r.lambda << ','
       << r.face_length << ',' << r.genus << ',' << (r.reflexible ? "true" : "false") << ','
       << (r.self_petrie ? "true" : "false") << ',' << r.mirror_partner << ','
       << (r.petrie_partner ? *r.petrie_partner : "");
    return os.str();
}

inline nlohmann::json census_json(const std::vector<CensusRecord>& recs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : recs) {
        nlohmann::json j{{"n", r.n},
                         {"labelling", r.labelling},
                         {"s", r.s},
                         {"t", r.t},
                         {"lambda", r.lambda},
                         {"face_length", r.face_length},
                         {"genus", r.genus},
                         {"reflexible", r.reflexible},
                         {"self_petrie", r.self_petrie},
                         {"mirror_partner", r.mirror_partner}};
        if (r.petrie_partner)
            j["petrie_partner"] = *r.petrie_partner;
        else
            j["petrie_partner"] = nullptr;
        arr.push_back(std::move(j));
    }
    return arr;
}

}  // namespace bipmap
