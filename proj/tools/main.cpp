/**
 * @file main.cpp
 * @brief rittlab command line: every library capability behind stable,
 *        scriptable subcommands.
 *
 * Output is JSON on stdout (--pretty indents it, nothing else changes);
 * graph --format dot emits DOT text instead. Exit codes: 0 success,
 * 1 domain error (bad expression, impossible request), 2 usage error,
 * 3 budget exhaustion with the partial result still emitted. Batch files
 * re-enter the same dispatcher, so every subcommand behaves identically
 * under batch, and --jobs N only changes wall time, never output bytes.
 */

#include <atomic>
#include <cctype>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "rittlab/decgraph.hpp"
#include "rittlab/decompose.hpp"
#include "rittlab/dynamics.hpp"
#include "rittlab/equivalence.hpp"
#include "rittlab/jsonio.hpp"
#include "rittlab/parse.hpp"

namespace {

using nlohmann::ordered_json;
using namespace rittlab;

constexpr int kOk = 0, kDomain = 1, kUsage = 2, kBudget = 3;

struct CmdResult {
    int code = kOk;
    std::string out; // payload for stdout
    std::string err; // message for stderr, already formatted
};

struct SplitFlags {
    std::string tier = "numeric";
    std::int64_t partition_cap = SplitBudget{}.partition_cap;
    std::int64_t subset_cap = SplitBudget{}.subset_cap;
    std::int64_t den_bound = SplitBudget{}.den_bound;
    long degree_budget = degree_budget_default();

    SplitBudget make() const {
        SplitBudget b;
        b.tier = tier == "exact" ? SplitBudget::Tier::Exact : SplitBudget::Tier::Numeric;
        b.partition_cap = partition_cap;
        b.subset_cap = subset_cap;
        b.den_bound = den_bound;
        b.degree_budget = degree_budget;
        return b;
    }
};

void add_split_flags(CLI::App* sub, SplitFlags& f) {
    sub->add_option("--tier", f.tier, "split search tier")
        ->check(CLI::IsMember({"numeric", "exact"}))
        ->capture_default_str();
    sub->add_option("--partition-cap", f.partition_cap, "fiber partitions tried per degree split")
        ->capture_default_str();
    sub->add_option("--subset-cap", f.subset_cap, "divisor/candidate cap in the exact tier")
        ->capture_default_str();
    sub->add_option("--den-bound", f.den_bound, "rational reconstruction denominator bound")
        ->capture_default_str();
    sub->add_option("--degree-budget", f.degree_budget,
                    "composition degree cap (env RITTLAB_DEGREE_BUDGET)")
        ->capture_default_str();
}

// Quote-aware whitespace tokenizer for batch lines; nullopt on an
// unbalanced quote.
std::optional<std::vector<std::string>> tokenize(const std::string& line) {
    std::vector<std::string> toks;
    std::string cur;
    bool quoted = false, in = false;
    char q = 0;
    for (char ch : line) {
        if (in) {
            if (ch == q)
                in = false;
            else
                cur += ch;
        } else if (ch == '\'' || ch == '"') {
            in = true;
            q = ch;
            quoted = true;
        } else if (std::isspace(static_cast<unsigned char>(ch))) {
            if (quoted || !cur.empty()) toks.push_back(cur);
            cur.clear();
            quoted = false;
        } else {
            cur += ch;
        }
    }
    if (in) return std::nullopt;
    if (quoted || !cur.empty()) toks.push_back(cur);
    return toks;
}

CmdResult run_command(const std::vector<std::string>& args, bool allow_batch);

struct BatchJob {
    int line = 0;
    std::vector<std::string> argv;
    std::string error; // set when the entry itself was malformed
};

std::vector<BatchJob> read_jobs(const std::string& content, std::string& file_error) {
    std::vector<BatchJob> jobs;
    size_t first = content.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && content[first] == '[') {
        ordered_json arr;
        try {
            arr = ordered_json::parse(content);
        } catch (const ordered_json::parse_error& e) {
            file_error = std::string("malformed job list: ") + e.what();
            return jobs;
        }
        int n = 0;
        for (const auto& entry : arr) {
            BatchJob job;
            job.line = ++n;
            if (entry.is_string()) {
                auto toks = tokenize(entry.get<std::string>());
                if (!toks)
                    job.error = "unbalanced quote";
                else
                    job.argv = std::move(*toks);
            } else if (entry.is_array()) {
                bool ok = true;
                for (const auto& item : entry) {
                    if (!item.is_string()) {
                        ok = false;
                        break;
                    }
                    job.argv.push_back(item.get<std::string>());
                }
                if (!ok) {
                    job.error = "argument vectors must hold strings only";
                    job.argv.clear();
                }
            } else {
                job.error = "job entries must be strings or argument vectors";
            }
            if (job.error.empty() && job.argv.empty()) job.error = "empty job entry";
            jobs.push_back(std::move(job));
        }
        return jobs;
    }

    std::istringstream lines(content);
    std::string line;
    int lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        const size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        BatchJob job;
        job.line = lineno;
        auto toks = tokenize(line);
        if (!toks)
            job.error = "unbalanced quote";
        else
            job.argv = std::move(*toks);
        jobs.push_back(std::move(job));
    }
    return jobs;
}

CmdResult run_batch(const std::string& path, int threads, bool pretty) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return {kDomain, "", "rittlab: cannot read batch file: " + path};
    std::ostringstream buf;
    buf << in.rdbuf();

    std::string file_error;
    std::vector<BatchJob> jobs = read_jobs(buf.str(), file_error);
    if (!file_error.empty()) return {kDomain, "", "rittlab: " + file_error};

    std::vector<CmdResult> results(jobs.size());
    auto run_job = [&](size_t i) {
        if (!jobs[i].error.empty()) {
            results[i] = {kUsage, "", jobs[i].error};
        } else {
            results[i] = run_command(jobs[i].argv, /*allow_batch=*/false);
        }
    };
    if (threads <= 1) {
        for (size_t i = 0; i < jobs.size(); ++i) run_job(i);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        const size_t width = std::min<size_t>(static_cast<size_t>(threads), jobs.size());
        for (size_t t = 0; t < width; ++t)
            pool.emplace_back([&] {
                for (size_t i; (i = next.fetch_add(1)) < jobs.size();) run_job(i);
            });
        for (auto& th : pool) th.join();
    }

    ordered_json report;
    report["jobs"] = ordered_json::array();
    int failed = 0;
    for (size_t i = 0; i < jobs.size(); ++i) {
        ordered_json rec;
        rec["line"] = jobs[i].line;
        rec["argv"] = jobs[i].argv;
        rec["exit"] = results[i].code;
        if (!results[i].out.empty()) {
            try {
                rec["output"] = ordered_json::parse(results[i].out);
            } catch (const ordered_json::parse_error&) {
                rec["output"] = results[i].out; // non-JSON payloads (DOT) stay text
            }
        }
        if (!results[i].err.empty()) rec["error"] = results[i].err;
        if (results[i].code != kOk) ++failed;
        report["jobs"].push_back(std::move(rec));
    }
    report["total"] = static_cast<int>(jobs.size());
    report["failed"] = failed;

    CmdResult r;
    r.out = pretty ? report.dump(2) : report.dump();
    r.code = failed > 0 ? kDomain : kOk;
    return r;
}

CmdResult run_command(const std::vector<std::string>& args, bool allow_batch) {
    CLI::App app{"exact decomposition, equivalence, and dynamics of rational maps"};
    app.name("rittlab");
    app.require_subcommand(1);
    bool pretty = false;
    app.add_flag("--pretty", pretty, "indent JSON output (cosmetic only)");

    auto* c_compose = app.add_subcommand("compose", "compose maps, outermost first");
    std::vector<std::string> compose_exprs;
    c_compose->add_option("expr", compose_exprs, "map expressions")->required()->expected(-1);

    auto* c_iterate = app.add_subcommand("iterate", "n-fold iterate of a map");
    std::string iterate_expr;
    int iterate_n = 1;
    c_iterate->add_option("expr", iterate_expr, "map expression")->required();
    c_iterate->add_option("n", iterate_n, "iterate count")->required()->check(CLI::PositiveNumber);

    auto* c_decompose = app.add_subcommand("decompose", "two-factor splits of a map");
    std::string decompose_expr;
    std::vector<int> decompose_split;
    SplitFlags decompose_flags;
    c_decompose->add_option("expr", decompose_expr, "map expression")->required();
    c_decompose->add_option("--split", decompose_split, "degree split d1,d2")->delimiter(',');
    add_split_flags(c_decompose, decompose_flags);

    auto* c_primes = app.add_subcommand("primes", "maximal prime chains up to equivalence");
    std::string primes_expr;
    SplitFlags primes_flags;
    c_primes->add_option("expr", primes_expr, "map expression")->required();
    add_split_flags(c_primes, primes_flags);

    auto* c_equiv = app.add_subcommand("equiv", "equivalence of two decomposition chains");
    std::string equiv_a, equiv_b;
    SplitFlags equiv_flags;
    c_equiv->add_option("chainA", equiv_a, "comma-separated factors, outermost first")->required();
    c_equiv->add_option("chainB", equiv_b, "comma-separated factors, outermost first")->required();
    add_split_flags(c_equiv, equiv_flags);

    auto* c_prime = app.add_subcommand("prime-check", "primality of a map");
    std::string prime_expr;
    SplitFlags prime_flags;
    c_prime->add_option("expr", prime_expr, "map expression")->required();
    add_split_flags(c_prime, prime_flags);

    auto* c_commute = app.add_subcommand("commute", "commutation and common iterates");
    std::string commute_a, commute_b;
    int commute_maxn = 0;
    long commute_db = degree_budget_default();
    c_commute->add_option("exprA", commute_a, "map expression")->required();
    c_commute->add_option("exprB", commute_b, "map expression")->required();
    c_commute->add_option("--maxN", commute_maxn, "search common iterates up to this level (0 skips)")
        ->capture_default_str();
    c_commute->add_option("--degree-budget", commute_db, "composition degree cap")
        ->capture_default_str();

    auto* c_vscan = app.add_subcommand("vscan", "virtual decomposability scan over iterates");
    std::string vscan_expr;
    int vscan_maxn = 2;
    SplitFlags vscan_flags;
    c_vscan->add_option("expr", vscan_expr, "map expression")->required();
    c_vscan->add_option("--maxN", vscan_maxn, "highest iterate level")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_split_flags(c_vscan, vscan_flags);

    auto* c_critical = app.add_subcommand("critical", "critical points with indices");
    std::string critical_expr;
    double critical_tol = RootOptions{}.tol;
    c_critical->add_option("expr", critical_expr, "map expression")->required();
    c_critical->add_option("--tol", critical_tol, "root-finder convergence target")
        ->capture_default_str();

    auto* c_classify = app.add_subcommand("classify", "critical orbit classification");
    std::string classify_expr;
    OrbitOptions classify_opts;
    c_classify->add_option("expr", classify_expr, "map expression")->required();
    c_classify->add_option("--max-iter", classify_opts.max_iter, "orbit iteration budget")
        ->capture_default_str();
    c_classify->add_option("--tol", classify_opts.tol, "chordal near-return threshold")
        ->capture_default_str();
    c_classify->add_option("--period-cap", classify_opts.period_cap, "longest cycle considered")
        ->capture_default_str();
    c_classify->add_option("--margin", classify_opts.margin, "multiplier margin for verdicts")
        ->capture_default_str();

    auto* c_detect = app.add_subcommand("detect", "power / Chebyshev form detection");
    std::string detect_expr;
    c_detect->add_option("expr", detect_expr, "map expression")->required();

    auto* c_conj = app.add_subcommand("conj", "Moebius conjugacy of two maps");
    std::string conj_a, conj_b;
    SplitFlags conj_flags;
    c_conj->add_option("exprA", conj_a, "map expression")->required();
    c_conj->add_option("exprB", conj_b, "map expression")->required();
    add_split_flags(c_conj, conj_flags);

    auto* c_graph = app.add_subcommand("graph", "decomposition graph of a map");
    std::string graph_expr, graph_format = "json";
    int graph_maxv = GraphBudget{}.max_vertices;
    SplitFlags graph_flags;
    c_graph->add_option("expr", graph_expr, "map expression")->required();
    c_graph->add_option("--format", graph_format, "output format")
        ->check(CLI::IsMember({"json", "dot"}))
        ->capture_default_str();
    c_graph->add_option("--max-vertices", graph_maxv, "vertex budget")->capture_default_str();
    add_split_flags(c_graph, graph_flags);

    auto* c_homology = app.add_subcommand("homology", "homology of the decomposition complex");
    std::string homology_expr;
    bool homology_bare = false;
    int homology_maxv = GraphBudget{}.max_vertices;
    SplitFlags homology_flags;
    c_homology->add_option("expr", homology_expr, "map expression")->required();
    c_homology->add_flag("--bare", homology_bare, "stop at the 1-complex; skip higher cells");
    c_homology->add_option("--max-vertices", homology_maxv, "vertex budget")
        ->capture_default_str();
    add_split_flags(c_homology, homology_flags);

    auto* c_batch = app.add_subcommand("batch", "run a file of jobs");
    std::string batch_path;
    int batch_jobs = 1;
    c_batch->add_option("file", batch_path, "newline-delimited commands or a JSON job list")
        ->required();
    c_batch->add_option("--jobs", batch_jobs, "worker threads; output order stays input order")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        std::ostringstream out, err;
        const int code = app.exit(e, out, err);
        return {code == 0 ? kOk : kUsage, out.str(), err.str()};
    }

    const int indent = pretty ? 2 : -1;
    auto dumps = [&](const ordered_json& j) { return indent < 0 ? j.dump() : j.dump(indent); };

    CmdResult res;
    try {
        if (c_compose->parsed()) {
            const long db = degree_budget_default();
            RatMap acc = parse_ratmap(compose_exprs[0], db);
            for (size_t i = 1; i < compose_exprs.size(); ++i)
                acc = compose(acc, parse_ratmap(compose_exprs[i], db), db);
            ordered_json j;
            j["map"] = print_ratmap(acc);
            j["degree"] = acc.degree();
            res.out = dumps(j);
        } else if (c_iterate->parsed()) {
            const long db = degree_budget_default();
            const RatMap r = iterate(parse_ratmap(iterate_expr, db), iterate_n, db);
            ordered_json j;
            j["map"] = print_ratmap(r);
            j["degree"] = r.degree();
            res.out = dumps(j);
        } else if (c_decompose->parsed()) {
            const SplitBudget budget = decompose_flags.make();
            const RatMap r = parse_ratmap(decompose_expr, budget.degree_budget);
            if (!decompose_split.empty()) {
                if (decompose_split.size() != 2)
                    return {kUsage, "", "rittlab: --split wants exactly d1,d2"};
                const DegreeSplit s{decompose_split[0], decompose_split[1]};
                const SplitOutcome out = rat_decompose_split(r, s, budget);
                res.out = split_report_json(r, s, out, indent);
                if (out.budget_exhausted) res.code = kBudget;
            } else {
                ordered_json j;
                j["product"] = print_ratmap(r);
                j["queries"] = ordered_json::array();
                bool exhausted = false;
                for (const DegreeSplit s : degree_splits(r.degree())) {
                    const SplitOutcome out = rat_decompose_split(r, s, budget);
                    j["queries"].push_back(ordered_json::parse(split_report_json(r, s, out)));
                    exhausted = exhausted || out.budget_exhausted;
                }
                res.out = dumps(j);
                if (exhausted) res.code = kBudget;
            }
        } else if (c_primes->parsed()) {
            const SplitBudget budget = primes_flags.make();
            const RatMap r = parse_ratmap(primes_expr, budget.degree_budget);
            const ChainSearch out = prime_decompositions(r, budget);
            res.out = chain_search_json(r, out, indent);
            if (out.budget_exhausted) res.code = kBudget;
        } else if (c_equiv->parsed()) {
            const SplitBudget budget = equiv_flags.make();
            const Decomposition a =
                make_chain(parse_chain(equiv_a, budget.degree_budget), budget.degree_budget);
            const Decomposition b =
                make_chain(parse_chain(equiv_b, budget.degree_budget), budget.degree_budget);
            const EquivOutcome out = decompositions_equivalent(a, b, budget);
            res.out = equivalence_json(a, b, out, indent);
        } else if (c_prime->parsed()) {
            const SplitBudget budget = prime_flags.make();
            const RatMap r = parse_ratmap(prime_expr, budget.degree_budget);
            const PrimalityReport rep = is_prime(r, budget);
            res.out = primality_json(r, rep, indent);
            if (rep.verdict == Primality::Unknown && rep.budget_exhausted) res.code = kBudget;
        } else if (c_commute->parsed()) {
            const RatMap a = parse_ratmap(commute_a, commute_db);
            const RatMap b = parse_ratmap(commute_b, commute_db);
            ordered_json j;
            j["maps"] = ordered_json::array({print_ratmap(a), print_ratmap(b)});
            j["commute"] = commutes(a, b, commute_db);
            if (commute_maxn > 0) {
                const auto ci = common_iterate_search(a, b, commute_maxn, commute_db);
                if (ci) {
                    ordered_json c;
                    c["n"] = ci->first;
                    c["m"] = ci->second;
                    j["commonIterate"] = std::move(c);
                } else {
                    j["commonIterate"] = nullptr;
                }
            }
            res.out = dumps(j);
        } else if (c_vscan->parsed()) {
            const SplitBudget budget = vscan_flags.make();
            const RatMap r = parse_ratmap(vscan_expr, budget.degree_budget);
            const VirtualReport rep = virtual_decomposability_scan(r, vscan_maxn, budget);
            res.out = virtual_report_json(r, rep, indent);
            if (rep.partial) res.code = kBudget;
        } else if (c_critical->parsed()) {
            const RatMap r = parse_ratmap(critical_expr);
            RootOptions opts;
            opts.tol = critical_tol;
            res.out = critical_points_json(r, critical_points(r, opts), indent);
        } else if (c_classify->parsed()) {
            const RatMap r = parse_ratmap(classify_expr);
            res.out = classification_json(r, critical_points(r),
                                          classify_critical_orbits(r, classify_opts), indent);
        } else if (c_detect->parsed()) {
            const RatMap r = parse_ratmap(detect_expr);
            res.out = special_report_json(r, detect_special(r), indent);
        } else if (c_conj->parsed()) {
            const SplitBudget budget = conj_flags.make();
            const RatMap a = parse_ratmap(conj_a, budget.degree_budget);
            const RatMap b = parse_ratmap(conj_b, budget.degree_budget);
            res.out = conjugacy_json(a, b, conjugate_maps(a, b, budget), indent);
        } else if (c_graph->parsed()) {
            GraphBudget gb;
            gb.max_vertices = graph_maxv;
            gb.split = graph_flags.make();
            const RatMap r = parse_ratmap(graph_expr, gb.split.degree_budget);
            const DecGraph g = build_graph(r, gb);
            if (graph_format == "dot") {
                res.out = export_graph(g, GraphFormat::Dot);
            } else {
                res.out = ordered_json::parse(export_graph(g, GraphFormat::Json)).dump(indent);
            }
            if (g.partial) res.code = kBudget;
        } else if (c_homology->parsed()) {
            GraphBudget gb;
            gb.max_vertices = homology_maxv;
            gb.split = homology_flags.make();
            const RatMap r = parse_ratmap(homology_expr, gb.split.degree_budget);
            const DecGraph g = build_graph(r, gb);
            CWComplex complex;
            bool filled = false;
            if (!homology_bare && !g.partial) {
                // A cut-short chain search inside the completion also means
                // the cell set cannot be certified; fall back to the bare
                // complex and flag the budget.
                try {
                    complex = cw_complete(g, gb);
                    filled = true;
                } catch (const std::domain_error&) {
                    complex = graph_complex(g);
                    res.code = kBudget;
                }
            } else {
                complex = graph_complex(g);
            }
            res.out = homology_json(g, complex, homology(complex), filled, indent);
            if (g.partial) res.code = kBudget;
        } else if (c_batch->parsed()) {
            if (!allow_batch)
                return {kUsage, "", "rittlab: batch files cannot contain batch jobs"};
            return run_batch(batch_path, batch_jobs, pretty);
        }
    } catch (const BudgetExceeded& e) {
        return {kBudget, "", std::string("rittlab: ") + e.what()};
    } catch (const std::exception& e) {
        return {kDomain, "", std::string("rittlab: ") + e.what()};
    }
    return res;
}

} // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    const CmdResult res = run_command(args, /*allow_batch=*/true);
    if (!res.out.empty()) {
        std::cout << res.out;
        if (res.out.back() != '\n') std::cout << '\n';
    }
    if (!res.err.empty()) {
        std::cerr << res.err;
        if (res.err.back() != '\n') std::cerr << '\n';
    }
    return res.code;
}
