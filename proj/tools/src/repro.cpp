#include "repro.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "reference.hpp"
#include "rainbow/behrend.hpp"
#include "rainbow/bounds.hpp"
#include "rainbow/constructions.hpp"
#include "rainbow/finder.hpp"
#include "rainbow/lattice_probes.hpp"
#include "rainbow/multilinear.hpp"
#include "rainbow/probfield.hpp"
#include "rainbow/search.hpp"

namespace rainbow::repro {

namespace {

Edge make_edge(const std::vector<VertexId>& vs) {
    VertexSet s;
    for (auto v : vs) s.insert(v);
    return Edge{std::move(s)};
}

Matching random_matching(std::size_t r, std::size_t t, std::size_t n, std::mt19937_64& rng) {
    std::vector<VertexId> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<VertexId>(i);
    std::shuffle(perm.begin(), perm.end(), rng);
    Matching m;
    for (std::size_t i = 0; i < t; ++i)
        m.edges.push_back(make_edge(std::vector<VertexId>(perm.begin() + static_cast<std::ptrdiff_t>(i * r),
                                                          perm.begin() + static_cast<std::ptrdiff_t>((i + 1) * r))));
    m.canonicalize();
    return m;
}

Instance shell(std::size_t r, std::size_t t, std::size_t n) {
    Instance inst;
    inst.r = r;
    inst.t = t;
    inst.num_vertices = n;
    return inst;
}

// Binomial coefficient by Pascal's rule, kept apart from the library's product formula.
BigInt pascal_binomial(std::size_t n, std::size_t k) {
    std::vector<BigInt> row{1};
    for (std::size_t i = 1; i <= n; ++i) {
        std::vector<BigInt> next(i + 1, 1);
        for (std::size_t j = 1; j < i; ++j) next[j] = row[j - 1] + row[j];
        row = std::move(next);
    }
    return k <= n ? row[k] : BigInt(0);
}

struct Checker {
    bool pass = true;
    std::ostringstream detail;
    void expect(bool ok, const std::string& what) {
        if (!ok) {
            if (!pass) detail << "; ";
            pass = false;
            detail << what;
        }
    }
};

CriterionResult criterion_counts() {
    Checker c;
    auto count = [&](const std::string& name, const Instance& inst, std::uint64_t expected) {
        c.expect(validate_instance(inst).ok(), name + " invalid");
        c.expect(inst.matchings.size() == expected,
                 name + " N=" + std::to_string(inst.matchings.size()) + " expected " + std::to_string(expected));
    };
    count("fixed-r(3,12)", fixed_r_construction(3, 12), 27);
    count("simple-F(2,3)", simple_F_construction(2, 3), 4);
    count("simple-F(4,2)", simple_F_construction(4, 2), 8);
    count("simple-f(3,3)", simple_f_construction(3, 3), 6);
    for (std::size_t r = 2; r <= 6; ++r) {
        const auto expected = static_cast<std::uint64_t>(pascal_binomial(2 * r, r) / 2);
        count("t2-complete(" + std::to_string(r) + ")", t2_complete_construction(r), expected);
    }
    for (std::size_t r = 2; r <= 8; ++r)
        count("t2-partite(" + std::to_string(r) + ")", t2_partite_construction(r), std::uint64_t{1} << (r - 1));
    if (c.pass) c.detail << "all construction counts match";
    return {1, "construction counts", c.pass, c.detail.str(), 0};
}

CriterionResult criterion_no_rainbow(const ReproOptions& opts) {
    Checker c;
    std::ostringstream timings;
    auto none = [&](const std::string& name, const Instance& inst, double limit_s) {
        SearchBudget b;
        b.threads = opts.threads;
        b.max_millis = static_cast<std::uint64_t>(limit_s * 1000);
        const auto start = std::chrono::steady_clock::now();
        const auto out = find_rainbow(inst, inst.t, b);
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        timings << name << "=" << std::fixed << std::setprecision(3) << s << "s ";
        c.expect(out.status == SearchStatus::NoneExists, name + " returned " + to_string(out.status));
        c.expect(s < limit_s, name + " exceeded " + std::to_string(limit_s) + "s");
    };
    none("simple-F(2,3)", simple_F_construction(2, 3), 1);
    none("simple-F(4,2)", simple_F_construction(4, 2), 1);
    none("simple-f(3,3)", simple_f_construction(3, 3), 1);
    none("simple-f(3,2)", simple_f_construction(3, 2), 1);
    none("lift(simple-F(2,3))", lift_uniformity(simple_F_construction(2, 3), 3), 1);
    none("fixed-r(3,12)", fixed_r_construction(3, 12), 300);
    if (!c.pass) c.detail << " | ";
    c.detail << timings.str();
    return {2, "no-rainbow verification", c.pass, c.detail.str(), 0};
}

CriterionResult criterion_strong() {
    Checker c;
    auto holds = [&](const std::string& name, const Instance& inst) {
        const auto out = check_strong_property(inst);
        c.expect(out.status == StrongStatus::Holds, name + " " + to_string(out.status));
    };
    for (std::size_t r = 2; r <= 4; ++r) holds("t2-complete(" + std::to_string(r) + ")", t2_complete_construction(r));
    for (std::size_t r = 2; r <= 5; ++r) holds("t2-partite(" + std::to_string(r) + ")", t2_partite_construction(r));
    const auto P = choose_prime_relaxed(3, 7);
    const BehrendSystem sys = behrend_system(P, 3);
    std::uint64_t total = 0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const auto rep = build_partite_family(3, 3, sys, sample_functional(7, 9, seed));
        total += rep.isolated;
        c.expect(validate_instance(rep.instance).ok(), "prob-f seed " + std::to_string(seed) + " invalid");
        holds("prob-f seed " + std::to_string(seed), rep.instance);
    }
    if (c.pass) c.detail << "holds on all; prob-f R=" << sys.R() << " total N over 50 seeds=" << total;
    return {3, "strong property", c.pass, c.detail.str(), 0};
}

CriterionResult criterion_probability() {
    Checker c;
    const auto P = choose_prime_relaxed(3, 7);
    const BehrendSystem sys = behrend_from_base_set(P, 3, {0, 1});
    const auto rep = probability_probe(2, 3, sys);
    c.expect(rep.R == 2, "R=" + std::to_string(rep.R));
    c.expect(rep.hyperplane_size == 16807, "hyperplane " + std::to_string(rep.hyperplane_size));
    c.expect(rep.candidate_count == 686, "candidates " + std::to_string(rep.candidate_count));
    c.expect(rep.candidates_exact(), "candidate count differs from hyperplane*R/P^(t-1)");
    c.expect(rep.isolated_count >= 343, "isolated " + std::to_string(rep.isolated_count));
    c.expect(rep.characterization_mismatches == 0, "candidate characterizations disagree");
    if (c.pass)
        c.detail << "functionals=" << rep.hyperplane_size << " candidates=" << rep.candidate_count
                 << " isolated=" << rep.isolated_count;
    return {4, "exact probability probe", c.pass, c.detail.str(), 0};
}

CriterionResult criterion_span() {
    Checker c;
    const TupleLattice lat(3, 3);
    const auto total = static_cast<std::uint64_t>(lat.num_tuples());
    std::map<std::size_t, std::uint64_t> per_d;
    std::uint64_t sharing = 0, equality = 0;
    for (std::uint64_t fixed = 0; fixed < total; ++fixed) {
        const auto rep = counting_probe(3, 3, fixed, 7);
        const std::string tag = " (tuple " + std::to_string(fixed) + ")";
        c.expect(rep.d_out_of_range == 0, std::to_string(rep.d_out_of_range) + " pairs with d outside [4,5]" + tag);
        for (const auto& row : rep.rows) {
            c.expect(row.d == 4 || row.d == 5, "d=" + std::to_string(row.d) + " observed" + tag);
            c.expect(row.within_bound, "count at d=" + std::to_string(row.d) + " exceeds the bound" + tag);
            per_d[row.d] += row.count;
        }
        c.expect(rep.component_bound_failures == 0, "component count below 2t-d" + tag);
        c.expect(rep.asymmetric_components == 0, "asymmetric components" + tag);
        c.expect(rep.partition_bound_failures == 0, "component partition bound failed" + tag);
        sharing += rep.sharing;
        equality += rep.component_equality;
    }
    const auto fac = factorial_inequality_check(12);
    c.expect(fac.failures == 0, "factorial inequality failed");
    if (c.pass) {
        c.detail << total << " fixed tuples, " << sharing << " sharing pairs:";
        for (const auto& [d, n] : per_d) c.detail << " d" << d << "=" << n;
        c.detail << "; components==2t-d on " << equality << "/" << sharing;
    }
    return {5, "span/dimension suite", c.pass, c.detail.str(), 0};
}

CriterionResult criterion_finder(const ReproOptions& opts) {
    Checker c;
    std::mt19937_64 rng(opts.seed + 6);
    std::size_t constructive = 0;
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = 6 + rng() % 5;
        const Instance inst = random_distinct_matchings(2, 2, n, 36, rng);
        const auto out = find_rainbow_constructive(inst);
        const bool verified = out.outcome.certificate && check_certificate(inst, *out.outcome.certificate);
        c.expect(out.path == FinderPath::Constructive, "instance " + std::to_string(i) + " fell back: " + out.note);
        c.expect(out.outcome.found() && verified, "instance " + std::to_string(i) + " has no verified certificate");
        constructive += out.path == FinderPath::Constructive ? 1 : 0;
    }
    std::vector<std::pair<std::string, Instance>> cons = {
        {"simple-F(2,3)", simple_F_construction(2, 3)}, {"simple-F(4,2)", simple_F_construction(4, 2)},
        {"simple-f(3,3)", simple_f_construction(3, 3)}, {"simple-f(3,2)", simple_f_construction(3, 2)},
        {"fixed-r(3,6)", fixed_r_construction(3, 6)},   {"fixed-r(3,9)", fixed_r_construction(3, 9)}};
    for (std::size_t r = 2; r <= 4; ++r) cons.emplace_back("t2-complete(" + std::to_string(r) + ")", t2_complete_construction(r));
    for (std::size_t r = 2; r <= 5; ++r) cons.emplace_back("t2-partite(" + std::to_string(r) + ")", t2_partite_construction(r));
    for (const auto& [name, inst] : cons) {
        const auto out = find_rainbow_constructive(inst);
        c.expect(!out.outcome.found(), name + ": finder reported a rainbow matching");
        c.expect(out.outcome.status == SearchStatus::NoneExists, name + ": " + to_string(out.outcome.status));
    }
    if (c.pass) c.detail << constructive << "/100 constructive, " << cons.size() << " constructions cross-checked";
    return {6, "finder guarantee", c.pass, c.detail.str(), 0};
}

CriterionResult criterion_exact() {
    Checker c;
    ExactValueParams p;
    p.r = 2;
    p.t = 2;
    p.universe = 4;
    p.partite = true;
    p.multiplicity_cap = 1;
    const auto res = exact_value_search(p);
    c.expect(res.complete, "search incomplete");
    c.expect(res.n_max == 2, "n_max=" + std::to_string(res.n_max));
    std::set<std::vector<std::vector<VertexId>>> got;
    for (const auto& m : res.witness.matchings) {
        std::vector<std::vector<VertexId>> es;
        for (const auto& e : m.edges) es.push_back(e.vertices.to_vector());
        std::sort(es.begin(), es.end());
        got.insert(es);
    }
    const std::set<std::vector<std::vector<VertexId>>> want = {{{0, 2}, {1, 3}}, {{0, 3}, {1, 2}}};
    c.expect(got == want, "witness is not the two perfect matchings of K_{2,2}");
    if (c.pass) c.detail << "n_max=2 with both perfect matchings of K_{2,2}";
    return {7, "exact small values", c.pass, c.detail.str(), 0};
}

CriterionResult criterion_multilinear(const ReproOptions& opts) {
    Checker c;
    for (std::size_t t : {2, 3})
        for (std::size_t dim : {2, 3, 4}) {
            const std::string tag = "(t=" + std::to_string(t) + ",dim=" + std::to_string(dim) + ")";
            const auto tight = tightness_family(t, dim);
            c.expect(tight.family.size() == (t - 1) * dim, "tightness size " + tag);
            c.expect(multilinear_rainbow_find(tight.family, tight.phi).status == MultilinearStatus::Exhausted,
                     "tightness family not exhausted " + tag);
            for (std::uint64_t seed = 0; seed < 100; ++seed) {
                const auto prob = random_family(t, dim, (t - 1) * dim + 1, opts.seed + seed * 1000 + t * 10 + dim);
                const auto res = multilinear_rainbow_find(prob.family, prob.phi);
                bool ok = res.status == MultilinearStatus::Found;
                if (ok) {
                    std::vector<std::size_t> ids;
                    for (std::size_t i = 0; i < t; ++i) ids.push_back(prob.family.tuples[res.indices[i]][res.choices[i]]);
                    ok = prob.phi.eval(ids) != 0 && std::set<std::size_t>(res.indices.begin(), res.indices.end()).size() == t;
                }
                c.expect(ok, "random family " + tag + " seed " + std::to_string(seed));
            }
        }
    std::mt19937_64 rng(opts.seed + 8);
    const Instance inst = random_partite_matchings(2, 2, 3, 9, rng);
    const auto alg = rainbow_via_multilinear(inst, {}, opts.seed);
    c.expect(alg.partite_threshold == 4, "partite threshold " + alg.partite_threshold.str());
    c.expect(alg.outcome.found() && check_certificate(inst, *alg.outcome.certificate),
             "algebraic path on N=9 partite: " + to_string(alg.outcome.status));
    if (c.pass) c.detail << "tightness exhausted, 600 random families found, partite N=9 found";
    return {8, "multilinear engine", c.pass, c.detail.str(), 0};
}

CriterionResult criterion_oracle(const ReproOptions& opts) {
    Checker c;
    std::mt19937_64 rng(opts.seed + 9);
    std::size_t found = 0;
    for (int i = 0; i < 500; ++i) {
        const std::size_t t = 1 + rng() % 3;
        const std::size_t r = 1 + rng() % std::min<std::size_t>(3, 12 / t);
        const std::size_t n = t * r + rng() % (12 - t * r + 1);
        const std::size_t N = 1 + rng() % 6;
        const std::size_t size = 1 + rng() % t;
        const Instance inst = random_matchings(r, t, n, N, rng);
        const auto out = find_rainbow(inst, size);
        const bool expected = reference::has_rainbow(inst, size);
        c.expect(out.status != SearchStatus::Indeterminate, "instance " + std::to_string(i) + " indeterminate");
        c.expect(out.found() == expected, "instance " + std::to_string(i) + " disagrees with brute force");
        if (out.found()) {
            ++found;
            c.expect(check_certificate(inst, *out.certificate) && out.certificate->size() == size,
                     "instance " + std::to_string(i) + " certificate invalid");
        }
    }
    if (c.pass) c.detail << "500 agree (" << found << " with a rainbow matching)";
    return {9, "oracle completeness", c.pass, c.detail.str(), 0};
}

CriterionResult criterion_bounds() {
    Checker c;
    const auto small = bounds_report(2, 3);
    c.expect(small.upper_F.value == 30, "upper F " + small.upper_F.value.str());
    c.expect(small.upper_f.value == 18, "upper f " + small.upper_f.value.str());
    c.expect(small.best_lower_F.value == 4, "lower " + small.best_lower_F.value.str());
    const std::string table = format_table(small);
    for (const char* needle : {"F <=  30", "f <=  18", "best F >=  4"})
        c.expect(table.find(needle) != std::string::npos, std::string("table lacks '") + needle + "'");
    const auto big = bounds_report(10, 10);
    const BigInt c100 = pascal_binomial(100, 10);
    c.expect(c100 == BigInt("17310309456440"), "independent C(100,10) " + c100.str());
    c.expect(big.upper_F.value == 9 * c100, "upper F(10,10) " + big.upper_F.value.str());
    BigInt thr = 1;
    for (int i = 0; i < 10; ++i) thr *= 110;
    c.expect(big.threshold.value == thr, "threshold (110)^10 " + big.threshold.value.str());
    BigInt tt = 1;
    for (int i = 0; i < 10; ++i) tt *= 10;
    c.expect(big.upper_f.value == 9 * tt, "upper f(10,10) " + big.upper_f.value.str());
    if (c.pass) c.detail << "(2,3): 30/18/4; (10,10): 9*C(100,10)=" << big.upper_F.value.str();
    return {10, "bounds table", c.pass, c.detail.str(), 0};
}

} // namespace

std::vector<int> suite_criteria(const std::string& suite) {
    if (suite == "constructions") return {1, 2, 7, 10};
    if (suite == "prob") return {3};
    if (suite == "probes") return {4, 5};
    if (suite == "finder") return {6, 9};
    if (suite == "algebraic") return {8};
    if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    throw std::invalid_argument("unknown suite '" + suite + "' (constructions, prob, finder, algebraic, probes, all)");
}

CriterionResult run_criterion(int id, const ReproOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    CriterionResult res;
    try {
        switch (id) {
        case 1: res = criterion_counts(); break;
        case 2: res = criterion_no_rainbow(opts); break;
        case 3: res = criterion_strong(); break;
        case 4: res = criterion_probability(); break;
        case 5: res = criterion_span(); break;
        case 6: res = criterion_finder(opts); break;
        case 7: res = criterion_exact(); break;
        case 8: res = criterion_multilinear(opts); break;
        case 9: res = criterion_oracle(opts); break;
        case 10: res = criterion_bounds(); break;
        default: throw std::invalid_argument("unknown criterion " + std::to_string(id));
        }
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception& e) {
        res.id = id;
        res.name = "criterion " + std::to_string(id);
        res.pass = false;
        res.detail = std::string("exception: ") + e.what();
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

std::vector<CriterionResult> run_suite(const std::string& suite, const ReproOptions& opts) {
    std::vector<CriterionResult> out;
    for (int id : suite_criteria(suite)) out.push_back(run_criterion(id, opts));
    return out;
}

std::string format_result(const CriterionResult& res) {
    std::ostringstream os;
    os << (res.pass ? "PASS" : "FAIL") << " [" << res.id << "] " << res.name << ": " << res.detail << " ("
       << std::fixed << std::setprecision(2) << res.seconds << "s)";
    return os.str();
}

Instance random_distinct_matchings(std::size_t r, std::size_t t, std::size_t n, std::size_t N, std::mt19937_64& rng) {
    Instance inst = shell(r, t, n);
    std::set<Matching, std::function<bool(const Matching&, const Matching&)>> seen(
        [](const Matching& a, const Matching& b) { return a.edges < b.edges; });
    for (std::size_t guard = 0; inst.matchings.size() < N; ++guard) {
        if (guard > 1000 * (N + 1)) throw std::runtime_error("random_distinct_matchings: not enough distinct matchings");
        Matching m = random_matching(r, t, n, rng);
        if (seen.insert(m).second) inst.matchings.push_back(std::move(m));
    }
    return inst;
}

Instance random_partite_matchings(std::size_t r, std::size_t t, std::size_t m, std::size_t N, std::mt19937_64& rng) {
    if (m < t) throw std::invalid_argument("random_partite_matchings: parts must hold at least t vertices");
    Instance inst = shell(r, t, r * m);
    inst.partition = consecutive_partition(r * m, r);
    std::set<std::vector<Edge>> seen;
    for (std::size_t guard = 0; inst.matchings.size() < N; ++guard) {
        if (guard > 1000 * (N + 1)) throw std::runtime_error("random_partite_matchings: not enough distinct matchings");
        std::vector<std::vector<VertexId>> edges(t);
        for (std::size_t p = 0; p < r; ++p) {
            std::vector<VertexId> part(m);
            for (std::size_t i = 0; i < m; ++i) part[i] = static_cast<VertexId>(p * m + i);
            std::shuffle(part.begin(), part.end(), rng);
            for (std::size_t i = 0; i < t; ++i) edges[i].push_back(part[i]);
        }
        Matching mt;
        for (const auto& e : edges) mt.edges.push_back(make_edge(e));
        mt.canonicalize();
        if (seen.insert(mt.edges).second) inst.matchings.push_back(std::move(mt));
    }
    return inst;
}

Instance random_matchings(std::size_t r, std::size_t t, std::size_t n, std::size_t N, std::mt19937_64& rng) {
    Instance inst = shell(r, t, n);
    for (std::size_t i = 0; i < N; ++i) inst.matchings.push_back(random_matching(r, t, n, rng));
    return inst;
}

} // namespace rainbow::repro
