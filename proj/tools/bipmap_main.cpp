// bipmap: census, construction and verification of the orientable regular
// embeddings of complete bipartite graphs K_{n,n}.
//
// Subcommands: census, build, verify, ops, pi-graph, realize-digraph,
// witness.  Exit codes: 0 success, 1 verification mismatch or computation
// failure, 2 usage error.  All output is deterministic.

#include <fstream>
#include <future>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "bipmap/bipmap.hpp"

namespace {

using namespace bipmap;

struct RangeSpec {
    i64 lo = 1;
    i64 hi = 1;
};

RangeSpec parse_range(const std::string& s) {
    const auto dots = s.find("..");
    RangeSpec r;
    if (dots == std::string::npos) {
        r.lo = r.hi = std::stoll(s);
    } else {
        r.lo = std::stoll(s.substr(0, dots));
        r.hi = std::stoll(s.substr(dots + 2));
    }
    if (r.lo < 1 || r.hi < r.lo) throw ContractError("bad range '" + s + "'");
    return r;
}

void write_out(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + path);
    f << content;
}

int cmd_census(const RangeSpec& range, bool check_table1, const std::string& format,
               const std::string& out_path, int jobs, i64 budget) {
    if (check_table1) {
        const Table1Report rep = table1_check(range.lo, std::min<i64>(range.hi, 120));
        std::ostringstream os;
        for (const auto& row : rep.rows) {
            os << "n=" << row.n << " nu=" << row.computed << " table=" << row.expected << ' '
               << (row.match ? "ok" : "MISMATCH");
            if (!row.note.empty()) os << "  # " << row.note;
            os << '\n';
        }
        os << (rep.mismatches == 0 ? "all values match\n"
                                   : std::to_string(rep.mismatches) + " mismatches\n");
        write_out(out_path, os.str());
        return rep.mismatches == 0 ? 0 : 1;
    }

    std::vector<std::vector<CensusRecord>> per_n(range.hi - range.lo + 1);
    if (jobs <= 1) {
        for (i64 n = range.lo; n <= range.hi; ++n) per_n[n - range.lo] = census_report(n, budget);
    } else {
        std::mutex mtx;
        i64 next = range.lo;
        auto worker = [&]() {
            while (true) {
                i64 n;
                {
                    std::lock_guard<std::mutex> lock(mtx);
                    if (next > range.hi) return;
                    n = next++;
                }
                auto recs = census_report(n, budget);
                std::lock_guard<std::mutex> lock(mtx);
                per_n[n - range.lo] = std::move(recs);
            }
        };
        std::vector<std::thread> pool;
        for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::vector<CensusRecord> all;
    for (auto& recs : per_n)
        for (auto& r : recs) all.push_back(std::move(r));

    if (format == "json") {
        write_out(out_path, census_json(all).dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << census_csv_header() << '\n';
        for (const auto& r : all) os << census_csv_row(r) << '\n';
        write_out(out_path, os.str());
    }
    return 0;
}

int cmd_build(i64 n, const std::string& desc, const std::string& emit_path) {
    const IsoLabelling lab = parse_labelling(desc);
    if (n != 0 && lab.n != n)
        throw ContractError("--n disagrees with the labelling descriptor (descriptor has n=" +
                            std::to_string(lab.n) + ")");
    const IsobicyclicTriple t = triple_from_labelling(lab);
    const OrientedMap m = realize_map(t);
    const MapInvariants inv = trace_faces(m);
    write_out(emit_path, map_to_json(m, render_labelling(lab)).dump(2) + "\n");
    if (!emit_path.empty())
        std::cout << "n=" << lab.n << " |G|=" << t.group->size() << " type={"
                  << inv.face_length << "," << inv.n << "} genus=" << inv.genus << " -> "
                  << emit_path << '\n';
    return 0;
}

int cmd_verify(i64 n, bool constructive, bool oracle, i64 budget, int oracle_cap) {
    const i64 nu = nu_formula(n).total;
    std::cout << "n=" << n << " nu_formula=" << nu << '\n';
    bool ok = true;
    if (constructive) {
        const i64 built = nu_constructive(n, budget);
        const i64 enumerated = static_cast<i64>(enumerate_labellings(n).size());
        const bool agree = built == nu && enumerated == nu;
        std::cout << "constructive: built=" << built << " labellings=" << enumerated << ' '
                  << (agree ? "ok" : "MISMATCH") << '\n';
        ok = ok && agree;
    }
    if (oracle) {
        const BruteForceCensus bf = brute_force_census(n, oracle_cap);
        bool agree = bf.count == nu;
        // match representatives against the pipeline realizations
        std::vector<std::vector<int>> pipeline_forms, oracle_forms;
        for (const auto& lab : enumerate_labellings(n))
            pipeline_forms.push_back(canonical_form(realize_map(triple_from_labelling(lab))));
        for (const auto& m : bf.representatives) oracle_forms.push_back(canonical_form(m));
        std::sort(pipeline_forms.begin(), pipeline_forms.end());
        std::sort(oracle_forms.begin(), oracle_forms.end());
        const bool reps_match = pipeline_forms == oracle_forms;
        std::cout << "oracle: count=" << bf.count << " reps_match="
                  << (reps_match ? "yes" : "NO") << ' '
                  << (agree && reps_match ? "ok" : "MISMATCH") << '\n';
        ok = ok && agree && reps_match;
    }
    return ok ? 0 : 1;
}

int cmd_ops(const std::string& desc, i64 hole_j, bool do_mirror, bool do_petrie) {
    const IsoLabelling lab = parse_labelling(desc);
    IsobicyclicTriple t = triple_from_labelling(lab);
    if (hole_j != 0) t = hole_operation(t, hole_j);
    if (do_mirror) t = mirror(t);
    if (do_petrie) t = petrie_dual(t);
    std::cout << render_labelling(labelling_from_triple(t)) << '\n';
    return 0;
}

int cmd_pi_graph(i64 n, const std::string& out_path) {
    write_out(out_path, to_dot(pi_graph(n), "pi_" + std::to_string(n)));
    return 0;
}

int cmd_realize(const std::string& input_path, const std::string& strategy, i64 prime_bound,
                bool allow_even) {
    std::ifstream f(input_path);
    if (!f) throw std::runtime_error("cannot open " + input_path);
    nlohmann::json j;
    f >> j;
    AbstractDigraph d;
    for (const auto& v : j.at("vertices")) d.vertices.push_back(v.get<i64>());
    for (const auto& a : j.at("arcs"))
        d.arcs.push_back({a.at("from").get<i64>(), a.at("to").get<i64>(),
                          a.at("label").get<int>()});
    RealizeOptions opt;
    opt.prime_bound = prime_bound;
    opt.allow_even = allow_even;
    const Realization r =
        realize_digraph(d,
                        strategy == "proof" ? RealizeStrategy::ProofFollowing
                                            : RealizeStrategy::MinimalSearch,
                        opt);
    nlohmann::json out{{"n", r.n}};
    nlohmann::json assign = nlohmann::json::object();
    for (const auto& [v, p] : r.assignment) assign[std::to_string(v)] = p;
    out["assignment"] = assign;
    std::cout << out.dump(2) << '\n';
    return 0;
}

std::vector<i64> parse_prime_list(const std::string& s) {
    std::vector<i64> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(std::stoll(tok));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"census of orientable regular embeddings of K_{n,n}"};
    app.require_subcommand(1);

    // census
    auto* census = app.add_subcommand("census", "enumerate embeddings over a range of n");
    std::string range_str = "1..120", format = "csv", out_path;
    bool check_table1 = false;
    int jobs = 1;
    i64 budget = kDefaultConstructiveBudget;
    census->add_option("--range", range_str, "range of n, e.g. 1..120 or a single n");
    census->add_flag("--check-table1", check_table1, "compare nu against the embedded table");
    census->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    census->add_option("--out", out_path, "output path (stdout when omitted)");
    census->add_option("--jobs", jobs, "worker threads across n")->check(CLI::PositiveNumber);
    census->add_option("--budget", budget, "constructive budget (max n to build groups for)");

    // build
    auto* build = app.add_subcommand("build", "build one labelling and emit its map as JSON");
    i64 build_n = 0;
    std::string build_desc, emit_path;
    build->add_option("--n", build_n, "expected n (cross-checked against the descriptor)");
    build->add_option("--labelling", build_desc, "labelling descriptor")->required();
    build->add_option("--emit", emit_path, "write the map JSON here (stdout when omitted)");

    // verify
    auto* verify = app.add_subcommand("verify", "check nu(n) along independent routes");
    i64 verify_n = 4;
    bool v_constructive = false, v_oracle = false;
    int oracle_cap = kDefaultOracleCap;
    i64 v_budget = kDefaultConstructiveBudget;
    verify->add_option("--n", verify_n, "the n to verify")->required();
    verify->add_flag("--constructive", v_constructive, "build all triples and compare counts");
    verify->add_flag("--oracle", v_oracle, "brute-force rotation systems (n <= oracle cap)");
    verify->add_option("--oracle-cap", oracle_cap, "max n admitted to the oracle");
    verify->add_option("--budget", v_budget, "constructive budget");

    // ops
    auto* ops = app.add_subcommand("ops", "apply hole/mirror/Petrie operations to a labelling");
    std::string ops_desc;
    i64 ops_hole = 0;
    bool ops_mirror = false, ops_petrie = false;
    ops->add_option("--labelling", ops_desc, "labelling descriptor")->required();
    ops->add_option("--hole", ops_hole, "apply H_j with this j (coprime to n)");
    ops->add_flag("--mirror", ops_mirror, "apply the mirror H_{-1}");
    ops->add_flag("--petrie", ops_petrie, "apply the Petrie dual (reflexible inputs only)");

    // pi-graph
    auto* pig = app.add_subcommand("pi-graph", "emit Pi_n in DOT format");
    i64 pig_n = 2;
    std::string pig_out;
    pig->add_option("--n", pig_n, "the n whose prime digraph to emit")->required();
    pig->add_option("--out", pig_out, "output path (stdout when omitted)");

    // realize-digraph
    auto* rd = app.add_subcommand("realize-digraph",
                                  "find n with Pi_n isomorphic to a labelled digraph");
    std::string rd_input, rd_strategy = "minimal";
    i64 rd_bound = 100000;
    bool rd_even = false;
    rd->add_option("--input", rd_input, "JSON file {vertices:[...], arcs:[{from,to,label}]}")
        ->required();
    rd->add_option("--strategy", rd_strategy, "proof or minimal")
        ->check(CLI::IsMember({"proof", "minimal"}));
    rd->add_option("--prime-bound", rd_bound, "search bound for primes");
    rd->add_flag("--allow-even", rd_even, "let the minimal search use the prime 2");

    // witness
    auto* wit = app.add_subcommand("witness", "extension-property witness prime");
    std::string wit_u, wit_v;
    i64 wit_bound = 100000;
    wit->add_option("--u", wit_u, "comma-separated odd primes the witness must be adjacent to");
    wit->add_option("--v", wit_v, "comma-separated odd primes the witness must avoid");
    wit->add_option("--bound", wit_bound, "search bound");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(census))
            return cmd_census(parse_range(range_str), check_table1, format, out_path, jobs,
                              budget);
        if (app.got_subcommand(build)) return cmd_build(build_n, build_desc, emit_path);
        if (app.got_subcommand(verify))
            return cmd_verify(verify_n, v_constructive, v_oracle, v_budget, oracle_cap);
        if (app.got_subcommand(ops)) {
            if (static_cast<int>(ops_hole != 0) + static_cast<int>(ops_mirror) +
                    static_cast<int>(ops_petrie) !=
                1)
                throw ContractError("ops: choose exactly one of --hole/--mirror/--petrie");
            return cmd_ops(ops_desc, ops_hole, ops_mirror, ops_petrie);
        }
        if (app.got_subcommand(pig)) return cmd_pi_graph(pig_n, pig_out);
        if (app.got_subcommand(rd)) return cmd_realize(rd_input, rd_strategy, rd_bound, rd_even);
        if (app.got_subcommand(wit)) {
            std::cout << extension_witness(parse_prime_list(wit_u), parse_prime_list(wit_v),
                                           wit_bound)
                      << '\n';
            return 0;
        }
    } catch (const ContractError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
