#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "repro.hpp"
#include "rainbow/behrend.hpp"
#include "rainbow/bounds.hpp"
#include "rainbow/constructions.hpp"
#include "rainbow/finder.hpp"
#include "rainbow/instance_io.hpp"
#include "rainbow/lattice_probes.hpp"
#include "rainbow/multilinear.hpp"
#include "rainbow/probfield.hpp"
#include "rainbow/search.hpp"

namespace rainbow::cli {

namespace {

using json = nlohmann::ordered_json;

struct Globals {
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::uint64_t budget_nodes = 0;
    std::uint64_t budget_ms = 0;
    bool json = false;

    [[nodiscard]] SearchBudget budget() const {
        SearchBudget b;
        if (budget_nodes) b.max_nodes = budget_nodes;
        if (budget_ms) b.max_millis = budget_ms;
        b.threads = std::max(1U, threads);
        return b;
    }
};

class IoFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Instance load(const std::string& path) {
    if (!std::filesystem::exists(path)) throw IoFailure("cannot open " + path);
    return read_instance(path);
}

void store(const std::string& path, const Instance& inst, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << encode(inst) << "\n";
        return;
    }
    std::ofstream f(path);
    if (!f) throw IoFailure("cannot write " + path);
    f << encode(inst) << "\n";
    if (!f) throw IoFailure("write failed for " + path);
}

std::string certificate_text(const RainbowCertificate& cert) {
    std::ostringstream os;
    for (const auto& p : cert.picks) os << "  color " << p.color << ": " << p.edge.vertices.to_string() << "\n";
    return os.str();
}

PrimeModulus pick_prime(std::size_t r, std::size_t t, std::uint64_t prime, bool window, std::uint64_t cap) {
    if (window) return choose_prime_window(r, t, cap);
    if (prime == 0) throw DomainError("either --prime or --window-prime is required");
    return choose_prime_relaxed(t, prime);
}

std::vector<std::uint64_t> parse_csv(const std::string& s) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stoull(item));
    return out;
}

struct PrimeArgs {
    std::uint64_t prime = 0;
    bool window = false;
    std::uint64_t cap = std::uint64_t{1} << 31;
    std::string method = "auto";
    std::string base_set;

    void attach(CLI::App* sc) {
        sc->add_option("--prime", prime, "Prime modulus P (relaxed mode)");
        sc->add_flag("--window-prime", window, "Smallest prime in the admissible window");
        sc->add_option("--prime-cap", cap, "Refuse window primes above this value");
        sc->add_option("--behrend-method", method, "auto, exhaustive, greedy, sphere");
        sc->add_option("--base-set", base_set, "Explicit comma-separated base set");
    }

    [[nodiscard]] BehrendSystem system(std::size_t r, std::size_t t) const {
        const PrimeModulus P = pick_prime(r, t, prime, window, cap);
        if (!base_set.empty()) return behrend_from_base_set(P, t, parse_csv(base_set));
        BehrendOptions opt;
        opt.method = behrend_method_from_string(method);
        return behrend_system(P, t, opt);
    }
};

json behrend_json(const BehrendSystem& sys) {
    json j;
    j["P"] = sys.P();
    j["t"] = sys.t();
    j["R"] = sys.R();
    j["method"] = to_string(sys.method());
    j["optimal"] = sys.optimal();
    j["base_set"] = sys.base_set();
    const auto v = verify_behrend(sys);
    j["verified"] = v.ok;
    j["verification"] = v.how;
    return j;
}

std::string formula_for(const std::string& name, std::size_t r, std::size_t t) {
    if (name == "prob-f") return "isolated candidates of one random functional";
    if (name == "sum-tuple-F") return "sum-tuple system";
    if (r < 2 || t < 2) return "";
    const auto rep = bounds_report(r, t);
    for (const auto& e : rep.lower)
        if (e.name == name) return e.formula + " = " + e.value.str();
    if (name == "fixed-r") return "(floor(t/r)-1)^r";
    return "";
}

int cmd_generate(const Globals& g, const std::string& name, std::size_t r, std::size_t t, std::size_t n,
                 const PrimeArgs& pa, const std::string& outpath, std::ostream& out, std::ostream& err) {
    Instance inst;
    if (name == "fixed-r") {
        inst = fixed_r_construction(r, t);
    } else if (name == "simple-F") {
        inst = simple_F_construction(r, t);
    } else if (name == "simple-f") {
        inst = simple_f_construction(r, t);
    } else if (name == "t2-complete") {
        inst = t2_complete_construction(r);
        t = 2;
    } else if (name == "t2-partite") {
        inst = t2_partite_construction(r);
        t = 2;
    } else if (name == "prob-f") {
        const BehrendSystem sys = pa.system(r, t);
        inst = build_partite_family(r, t, sys, sample_functional(sys.P(), t * r, g.seed)).instance;
    } else if (name == "sum-tuple-F") {
        inst = tuples_to_matchings_F(generate_sum_tuples(t, n, g.budget()));
    } else {
        err << "unknown construction '" << name
            << "' (fixed-r, simple-F, simple-f, t2-complete, t2-partite, prob-f, sum-tuple-F)\n";
        return kUsage;
    }
    inst.metadata["seed"] = std::to_string(g.seed);
    if (const auto rep = validate_instance(inst); !rep.ok()) throw std::logic_error("generator output invalid: " + rep.summary());

    const std::string formula = formula_for(name, r, t);
    std::ostream& report = (outpath.empty() || outpath == "-") ? err : out;
    store(outpath, inst, out);
    if (g.json) {
        json j;
        j["generator"] = name;
        j["N"] = inst.matchings.size();
        j["formula"] = formula;
        j["num_vertices"] = inst.num_vertices;
        j["out"] = outpath;
        report << j.dump() << "\n";
    } else {
        report << "N=" << inst.matchings.size() << " vertices=" << inst.num_vertices;
        if (!formula.empty()) report << " formula: " << formula;
        report << "\n";
    }
    return kOk;
}

int cmd_verify(const Globals& g, const std::string& path, bool strong, std::ostream& out) {
    const Instance inst = load(path);
    json j;
    const auto rep = validate_instance(inst);
    j["valid"] = rep.ok();
    if (!rep.ok()) {
        j["violations"] = rep.summary();
        if (g.json)
            out << j.dump(2) << "\n";
        else
            out << "invalid instance: " << rep.summary() << "\n";
        return kInvalidInstance;
    }
    const auto res = find_rainbow(inst, inst.t, g.budget());
    j["rainbow"] = to_json(res);
    int code = kOk;
    std::ostringstream text;
    text << "rainbow matching of size " << inst.t << ": " << to_string(res.status) << " (" << res.nodes_visited
         << " nodes)\n";
    if (res.found()) {
        text << certificate_text(*res.certificate);
        code = kRainbowFound;
    } else if (res.status == SearchStatus::Indeterminate) {
        code = kIndeterminate;
    } else if (strong) {
        const auto s = check_strong_property(inst, g.budget());
        j["strong"] = to_json(s);
        text << "strong property: " << to_string(s.status) << " (" << s.nodes_visited << " nodes)\n";
        if (s.status == StrongStatus::Fails) {
            text << certificate_text(*s.witness);
            code = kRainbowFound;
        } else if (s.status == StrongStatus::Indeterminate) {
            code = kIndeterminate;
        }
    }
    j["exit"] = code;
    if (g.json)
        out << j.dump(2) << "\n";
    else
        out << text.str();
    return code;
}

int cmd_find(const Globals& g, const std::string& path, const std::string& method, std::size_t size, std::ostream& out,
             std::ostream& err) {
    const Instance inst = load(path);
    if (const auto rep = validate_instance(inst); !rep.ok()) {
        err << "invalid instance: " << rep.summary() << "\n";
        return kInvalidInstance;
    }
    json j;
    SearchOutcome res;
    if (method == "exhaustive" || (size != 0 && size != inst.t)) {
        res = find_rainbow(inst, size ? size : inst.t, g.budget());
        j = to_json(res);
        j["path"] = "exhaustive";
    } else if (method == "constructive" || method == "auto") {
        const auto c = find_rainbow_constructive(inst, g.budget());
        res = c.outcome;
        j = to_json(res);
        j["path"] = to_string(c.path);
        json stats;
        stats["above_threshold"] = c.above_threshold;
        stats["steps"] = c.steps;
        stats["residual"] = c.residual;
        stats["chosen_color"] = c.chosen_color;
        stats["m"] = c.m;
        if (!c.note.empty()) stats["note"] = c.note;
        j["decomposition_stats"] = stats;
    } else if (method == "algebraic") {
        const auto a = rainbow_via_multilinear(inst, g.budget(), g.seed);
        res = a.outcome;
        j = to_json(a);
        j["path"] = "algebraic";
        j["N"] = inst.matchings.size();
    } else {
        err << "unknown method '" << method << "' (auto, constructive, exhaustive, algebraic)\n";
        return kUsage;
    }
    if (g.json) {
        out << j.dump(2) << "\n";
    } else {
        out << "status: " << to_string(res.status) << " path: " << j["path"].get<std::string>() << "\n";
        if (j.contains("threshold_general"))
            out << "N=" << inst.matchings.size() << " thresholds: (t-1)C(tr,r)=" << j["threshold_general"].get<std::string>()
                << " (t-1)t^r=" << j["threshold_partite"].get<std::string>() << "\n";
        if (res.certificate) out << certificate_text(*res.certificate);
    }
    return res.status == SearchStatus::Indeterminate ? kIndeterminate : kOk;
}

int cmd_exact(const Globals& g, const ExactValueParams& p, const std::string& outpath, std::ostream& out) {
    const auto res = exact_value_search(p, g.budget());
    if (!outpath.empty()) store(outpath, res.witness, out);
    if (g.json) {
        json j;
        j["r"] = p.r;
        j["t"] = p.t;
        j["universe"] = p.universe;
        j["partite"] = p.partite;
        j["multiplicity_cap"] = p.multiplicity_cap;
        j["n_max"] = res.n_max;
        j["complete"] = res.complete;
        j["candidate_matchings"] = res.candidate_matchings;
        j["nodes_visited"] = res.nodes_visited;
        if (outpath.empty()) j["witness"] = json::parse(encode(res.witness));
        out << j.dump(2) << "\n";
    } else {
        out << "n_max=" << res.n_max << (res.complete ? " (complete)" : " (lower bound, budget exhausted)")
            << " candidates=" << res.candidate_matchings << " nodes=" << res.nodes_visited << "\n";
        for (std::size_t i = 0; i < res.witness.matchings.size(); ++i) {
            out << "  M" << i << ":";
            for (const auto& e : res.witness.matchings[i].edges) out << " " << e.vertices.to_string();
            out << "\n";
        }
    }
    return res.complete ? kOk : kIndeterminate;
}

int cmd_prob_construct(const Globals& g, std::size_t r, std::size_t t, const PrimeArgs& pa, const std::string& outpath,
                       std::ostream& out, std::ostream& err) {
    const BehrendSystem sys = pa.system(r, t);
    const Functional f = sample_functional(sys.P(), t * r, g.seed);
    auto rep = build_partite_family(r, t, sys, f);
    rep.instance.metadata["seed"] = std::to_string(g.seed);
    std::ostream& report = (outpath.empty() || outpath == "-") ? err : out;
    store(outpath, rep.instance, out);
    json j;
    j["r"] = r;
    j["t"] = t;
    j["behrend"] = behrend_json(sys);
    j["seed"] = g.seed;
    j["tuples"] = rep.tuples;
    j["candidates"] = rep.candidates;
    j["N"] = rep.isolated;
    j["expected_floor"] = to_string(rep.expected_floor);
    if (g.json) {
        report << j.dump(2) << "\n";
    } else {
        report << "P=" << sys.P() << " R=" << sys.R() << " (" << to_string(sys.method()) << ") tuples=" << rep.tuples
               << " candidates=" << rep.candidates << " N=" << rep.isolated
               << " expected floor=" << to_string(rep.expected_floor) << "\n";
    }
    return kOk;
}

int cmd_probe(const Globals& g, const std::string& kind, std::size_t r, std::size_t t, const PrimeArgs& pa,
              std::uint64_t tuple, std::size_t max_b, std::ostream& out, std::ostream& err) {
    json j;
    bool ok = true;
    if (kind == "probability") {
        const BehrendSystem sys = pa.system(r, t);
        const auto rep = probability_probe(r, t, sys);
        j["r"] = r;
        j["t"] = t;
        j["P"] = rep.P;
        j["R"] = rep.R;
        j["functionals"] = rep.hyperplane_size;
        j["candidates"] = rep.candidate_count;
        j["expected_candidates"] = to_string(rep.expected_candidates);
        j["candidates_exact"] = rep.candidates_exact();
        j["isolated"] = rep.isolated_count;
        j["isolated_floor"] = to_string(rep.isolated_floor);
        j["isolated_ok"] = rep.isolated_ok();
        j["characterization_mismatches"] = rep.characterization_mismatches;
        ok = rep.candidates_exact() && rep.isolated_ok() && rep.characterization_mismatches == 0;
    } else if (kind == "counting") {
        const PrimeModulus P = pick_prime(r, t, pa.prime, pa.window, pa.cap);
        const auto rep = counting_probe(r, t, tuple, P.P);
        j["r"] = r;
        j["t"] = t;
        j["P"] = P.P;
        j["tuple"] = tuple;
        j["sharing"] = rep.sharing;
        j["rows"] = json::array();
        for (const auto& row : rep.rows)
            j["rows"].push_back({{"d", row.d}, {"count", row.count}, {"within_bound", row.within_bound}});
        j["d_out_of_range"] = rep.d_out_of_range;
        j["component_bound_failures"] = rep.component_bound_failures;
        j["component_equality"] = rep.component_equality;
        j["asymmetric_components"] = rep.asymmetric_components;
        j["partition_classes"] = rep.partition_classes;
        j["partition_bound_failures"] = rep.partition_bound_failures;
        ok = rep.ok();
    } else if (kind == "factorial") {
        const auto rep = factorial_inequality_check(max_b);
        j["max_b"] = rep.max_b;
        j["checked"] = rep.checked;
        j["failures"] = rep.failures;
        ok = rep.failures == 0;
    } else if (kind == "behrend") {
        j = behrend_json(pa.system(r, t));
        ok = j["verified"].get<bool>();
    } else {
        err << "unknown probe '" << kind << "' (probability, counting, factorial, behrend)\n";
        return kUsage;
    }
    j["ok"] = ok;
    out << j.dump(g.json ? 2 : -1) << "\n";
    return ok ? kOk : kRainbowFound;
}

int cmd_repro(const Globals& g, const std::string& suite, std::ostream& out, std::ostream& err) {
    std::vector<int> ids;
    try {
        ids = repro::suite_criteria(suite);
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return kUsage;
    }
    repro::ReproOptions opts;
    opts.threads = g.threads;
    opts.seed = g.seed;
    bool all = true;
    json j = json::array();
    for (int id : ids) {
        const auto res = repro::run_criterion(id, opts);
        all = all && res.pass;
        if (g.json)
            j.push_back({{"id", res.id}, {"name", res.name}, {"pass", res.pass}, {"detail", res.detail}, {"seconds", res.seconds}});
        else
            out << repro::format_result(res) << std::endl;
        if (!res.pass) err << "failing criterion: [" << res.id << "] " << res.name << "\n";
    }
    if (g.json) out << j.dump(2) << "\n";
    return all ? kOk : kRainbowFound;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rainbow matching constructions, verification and solvers", "rainbow"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--seed", g.seed, "Random seed");
    app.add_option("--threads", g.threads, "Worker threads for exhaustive search");
    app.add_option("--budget-nodes", g.budget_nodes, "Node cap for searches (0 = none)");
    app.add_option("--budget-ms", g.budget_ms, "Time cap in milliseconds (0 = none)");
    app.add_flag("--json", g.json, "JSON output");

    std::size_t r = 0, t = 0, n = 0, size = 0, max_b = 12;
    std::uint64_t tuple = 0;
    std::string name, path, outpath, method = "auto", suite, kind;
    bool strong = false;
    PrimeArgs pa;
    ExactValueParams ep;

    auto* gen = app.add_subcommand("generate", "Write a construction to an instance file");
    gen->add_option("construction", name, "fixed-r, simple-F, simple-f, t2-complete, t2-partite, prob-f, sum-tuple-F")
        ->required();
    gen->add_option("--r", r, "Uniformity");
    gen->add_option("--t", t, "Matching size");
    gen->add_option("--n", n, "Ground set size (sum-tuple-F)");
    gen->add_option("--out", outpath, "Output file (stdout when omitted)");
    pa.attach(gen);

    auto* ver = app.add_subcommand("verify", "Check that an instance has no rainbow matching");
    ver->add_option("file", path)->required();
    ver->add_flag("--strong", strong, "Also check the strong property");

    auto* fnd = app.add_subcommand("find", "Search for a rainbow matching");
    fnd->add_option("file", path)->required();
    fnd->add_option("--method", method, "auto, constructive, exhaustive, algebraic");
    fnd->add_option("--size", size, "Target size (default t)");

    auto* ex = app.add_subcommand("exact", "Exact maximum number of matchings without a rainbow matching");
    ex->add_option("--r", ep.r)->required();
    ex->add_option("--t", ep.t)->required();
    ex->add_option("--universe", ep.universe)->required();
    ex->add_flag("--partite", ep.partite);
    ex->add_option("--cap", ep.multiplicity_cap, "Maximum multiplicity per matching");
    ex->add_option("--out", outpath, "Write the witness instance");

    auto* bnd = app.add_subcommand("bounds", "Exact bounds table");
    bnd->add_option("--r", r)->required();
    bnd->add_option("--t", t)->required();

    auto* pc = app.add_subcommand("prob-construct", "Random functional construction over F_P");
    pc->add_option("--r", r)->required();
    pc->add_option("--t", t)->required();
    pc->add_option("--out", outpath, "Output file (stdout when omitted)");
    pa.attach(pc);

    auto* pr = app.add_subcommand("probe", "Diagnostics: probability, counting, factorial, behrend");
    pr->add_option("kind", kind)->required();
    pr->add_option("--r", r);
    pr->add_option("--t", t);
    pr->add_option("--tuple", tuple, "Fixed lattice tuple index (counting)");
    pr->add_option("--max-b", max_b, "Largest b (factorial)");
    pa.attach(pr);

    auto* rp = app.add_subcommand("repro", "Run acceptance experiments");
    rp->add_option("suite", suite, "constructions, prob, finder, algebraic, probes, all")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kUsage;
    }

    try {
        if (*gen) return cmd_generate(g, name, r, t, n, pa, outpath, out, err);
        if (*ver) return cmd_verify(g, path, strong, out);
        if (*fnd) return cmd_find(g, path, method, size, out, err);
        if (*ex) return cmd_exact(g, ep, outpath, out);
        if (*bnd) {
            const auto rep = bounds_report(r, t);
            out << (g.json ? to_json(rep).dump(2) + "\n" : format_table(rep));
            return kOk;
        }
        if (*pc) return cmd_prob_construct(g, r, t, pa, outpath, out, err);
        if (*pr) return cmd_probe(g, kind, r, t, pa, tuple, max_b, out, err);
        if (*rp) return cmd_repro(g, suite, out, err);
    } catch (const IoFailure& e) {
        err << "error: " << e.what() << "\n";
        return kIoError;
    } catch (const DecodeError& e) {
        err << "decode error: " << e.what() << "\n";
        return kIoError;
    } catch (const DomainError& e) {
        // Parameters outside a generator's or probe's domain.
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kIoError;
    }
    return kUsage;
}

} // namespace rainbow::cli
