// bentctl: command-line front end for the bent library.
// Exit codes: 0 ok, 1 usage or input error, 2 verification failure, 3 solver refusal.

#include <CLI11.hpp>

#include <bent/bent.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

namespace {

using namespace bent;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct VerifyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    int n = 4;
    std::string conditions = "all";
    std::string condition;
    std::string mode = "exact";
    AnnealSchedule schedule;
    std::uint64_t limit = 0;
    std::string input;
    std::string output;
    std::string graph;
    std::string pairs;
    std::string from, to;
    std::string catalog;
    bool csv = false;
};

// Expands runs written as "1^64" inside a condition literal.
std::string expand_runs(const std::string& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i + 1 < s.size() && s[i + 1] == '^' && (s[i] == '0' || s[i] == '1')) {
            std::size_t j = i + 2, k = j;
            while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
            if (k == j) throw UsageError("bad repetition in condition '" + s + "'");
            out.append(std::stoul(s.substr(j, k - j)), s[i]);
            i = k - 1;
        } else {
            out += s[i];
        }
    }
    return out;
}

std::vector<ConditionVector> parse_levels(const std::string& s) {
    try {
        return parse_condition_path(expand_runs(s));
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

// "all" or a comma-separated list of condition paths.
std::vector<std::vector<ConditionVector>> condition_list(int n, const std::string& spec) {
    std::vector<std::vector<ConditionVector>> out;
    if (spec == "all") {
        if (n != 2 && n != 4) throw UsageError("--conditions all needs n in {2, 4}; pass explicit conditions for n=" + std::to_string(n));
        for (auto f : {Family::A, Family::B})
            for (auto& c : valid_conditions(n, f)) out.push_back({c});
        return out;
    }
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(parse_levels(item));
    if (out.empty()) throw UsageError("no conditions given");
    return out;
}

void check_n(int n, std::initializer_list<int> allowed) {
    for (int a : allowed)
        if (a == n) return;
    std::string s;
    for (int a : allowed) s += (s.empty() ? "" : ", ") + std::to_string(a);
    throw UsageError("n=" + std::to_string(n) + " not supported here (allowed: " + s + ")");
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path + "'");
    return in;
}

// Output goes to --output when given, stdout otherwise; status lines always go to stdout.
struct Sink {
    std::unique_ptr<std::ofstream> file;
    std::ostream* out = &std::cout;

    explicit Sink(const std::string& path) {
        if (path.empty()) return;
        file = std::make_unique<std::ofstream>(path);
        if (!*file) throw UsageError("cannot write '" + path + "'");
        out = file.get();
    }
    std::ostream& operator*() { return *out; }
};

std::string header(const std::string& sub, const std::vector<std::pair<std::string, std::string>>& kv) {
    std::string h = std::string("# bentctl ") + version + " " + sub;
    for (auto& [k, v] : kv) h += " " + k + "=" + (v.empty() ? "-" : v);
    return h;
}

std::vector<std::pair<std::string, std::string>> schedule_kv(const Config& c) {
    std::ostringstream bs, be;
    bs << c.schedule.beta_start;
    be << c.schedule.beta_end;
    return {{"sweeps", std::to_string(c.schedule.sweeps)}, {"beta_start", bs.str()}, {"beta_end", be.str()},
            {"restarts", std::to_string(c.schedule.restarts)}, {"seed", std::to_string(c.schedule.seed)}};
}

std::vector<TruthTable> load_tables(const std::string& path) {
    auto in = open_in(path);
    return read_truth_tables(in);
}

int cmd_wht(const Config& c) {
    auto tables = load_tables(c.input);
    Sink s(c.output);
    *s << header("wht", {{"input", c.input}, {"output", c.output}}) << '\n';
    for (auto& t : tables) {
        auto w = walsh_transform(t);
        *s << t.str() << " spectrum=" << w.str();
        if (t.n() % 2 == 0) *s << " bent=" << (is_bent_spectrum(w) ? "true" : "false");
        else *s << " bent=false";
        *s << " nonlinearity=" << nonlinearity(t) << '\n';
    }
    return 0;
}

// Condition validity with -n, or bentness of every table in --input (truth tables or a catalog).
int cmd_check(const Config& c) {
    Sink s(c.output);
    if (!c.input.empty()) {
        *s << header("check", {{"input", c.input}, {"output", c.output}}) << '\n';
        auto in = open_in(c.input);
        std::stringstream buf;
        buf << in.rdbuf();
        std::vector<TruthTable> tables;
        if (buf.str().find("count=") != std::string::npos) tables = read_catalog(buf).tables();
        else tables = read_truth_tables(buf);
        std::size_t bad = 0;
        for (auto& t : tables) {
            bool ok = t.n() % 2 == 0 && is_bent(t);
            bad += !ok;
            *s << t.str() << ' ' << (ok ? "bent" : "not-bent") << '\n';
        }
        *s << "checked=" << tables.size() << " bent=" << tables.size() - bad << '\n';
        if (bad) throw VerifyError(std::to_string(bad) + " table(s) are not bent");
        return 0;
    }
    check_n(c.n, {2, 4, 6});
    *s << header("check", {{"n", std::to_string(c.n)}, {"conditions", c.conditions}, {"output", c.output}}) << '\n';
    std::vector<ConditionVector> conds;
    if (c.conditions == "all") {
        if (c.n > 4) throw UsageError("--conditions all needs n in {2, 4}");
        for (auto f : {Family::A, Family::B})
            for (auto& cv : ConditionVector::all(f, condition_length(c.n))) conds.push_back(cv);
    } else {
        for (auto& lv : condition_list(c.n, c.conditions)) conds.push_back(lv.front());
    }
    auto full = build_full_model(c.n);
    std::size_t valid = 0;
    for (auto& cv : conds) {
        if (cv.groups() != condition_length(c.n)) throw UsageError("condition " + cv.str() + " has the wrong length for n=" + std::to_string(c.n));
        bool ok = check_symmetric_structure(split(full, cv));
        valid += ok;
        *s << cv.str() << ' ' << (ok ? "valid" : "invalid") << '\n';
    }
    *s << "n=" << c.n << " checked=" << conds.size() << " valid=" << valid << '\n';
    return 0;
}

int cmd_enumerate(const Config& c) {
    check_n(c.n, {2, 4});
    auto tables = enumerate_bent(c.n);
    Sink s(c.output);
    *s << header("enumerate", {{"n", std::to_string(c.n)}, {"output", c.output}}) << '\n';
    write_truth_tables(*s, tables);
    // keep stdout a readable truth-table file
    std::cout << (c.output.empty() ? "# " : "") << "n=" << c.n << " bent=" << tables.size() << '\n';
    return 0;
}

// Full model, or the reduction plan for --condition.
int cmd_model(const Config& c) {
    check_n(c.n, {2, 4, 6, 8});
    Sink s(c.output);
    *s << header("model", {{"n", std::to_string(c.n)}, {"condition", c.condition}, {"output", c.output}}) << '\n';
    auto full = build_full_model(c.n);
    if (c.condition.empty()) {
        write_model(*s, full);
        return 0;
    }
    auto levels = parse_levels(c.condition);
    ReductionPlan plan;
    try {
        plan = reduce_recursive(split(full, levels));
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    write_plan(*s, plan);
    return 0;
}

void print_state(std::ostream& out, const SpinAssignment& a) {
    bool first = true;
    for (auto& [id, v] : a.values) {
        out << (first ? "" : " ") << id.str() << '=' << (v > 0 ? '+' : '-');
        first = false;
    }
    out << '\n';
}

int cmd_solve(const Config& c) {
    auto in = open_in(c.input);
    auto model = read_model(in);
    auto mode = parse_mode(c.mode);
    auto kv = std::vector<std::pair<std::string, std::string>>{{"input", c.input}, {"mode", c.mode}};
    if (mode == SolveMode::anneal)
        for (auto& p : schedule_kv(c)) kv.push_back(p);
    kv.push_back({"limit", std::to_string(c.limit)});
    kv.push_back({"output", c.output});
    Sink s(c.output);
    *s << header("solve", kv) << '\n';
    SolveResult r;
    if (mode == SolveMode::exact) {
        r = solve_exact(model);
    } else {
        c.schedule.validate();
        r = solve_anneal(model, c.schedule);
    }
    *s << "spins=" << model.spins().size() << " ground_energy=" << r.ground_energy << " ground_states=" << r.ground_states.size()
       << (r.truncated ? " truncated=true" : "") << '\n';
    std::size_t shown = 0;
    for (auto& g : r.ground_states) {
        if (c.limit && shown++ >= c.limit) break;
        print_state(*s, g);
    }
    return 0;
}

int cmd_pipeline(const Config& c) {
    check_n(c.n, {2, 4, 6, 8});
    RunOptions opt;
    opt.mode = parse_mode(c.mode);
    opt.schedule = c.schedule;
    opt.limit = c.limit;
    if (opt.mode == SolveMode::anneal) opt.schedule.validate();
    auto lists = condition_list(c.n, c.conditions);
    std::vector<BentCatalog> cats;
    std::uint64_t rejected = 0, streamed = 0;
    long long worst = 0;
    for (auto& levels : lists) {
        ConditionRun run;
        try {
            run = run_condition(c.n, levels, opt);
        } catch (const ReductionError& e) {
            throw UsageError(std::string("condition ") + condition_path_str(levels) + " is not reducible: " + e.what());
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        rejected += run.stats.rejected;
        streamed += run.stats.streamed;
        worst = std::min(worst, run.stats.ground_energy);
        cats.push_back(std::move(run.catalog));
    }
    auto all = merge(cats);
    std::size_t verified = 0;
    for (auto& [t, e] : all.entries) verified += is_bent(t);
    auto kv = std::vector<std::pair<std::string, std::string>>{{"n", std::to_string(c.n)}, {"conditions", c.conditions}, {"mode", c.mode}};
    if (opt.mode == SolveMode::anneal)
        for (auto& p : schedule_kv(c)) kv.push_back(p);
    kv.push_back({"limit", std::to_string(c.limit)});
    kv.push_back({"output", c.output});
    Sink s(c.output);
    *s << header("pipeline", kv) << '\n';
    write_catalog(*s, all);
    std::cout << "n=" << c.n << " conditions=" << lists.size() << " found=" << all.size() << " verified=" << verified << '\n';
    if (rejected || verified != all.size())
        throw VerifyError(std::to_string(rejected) + " of " + std::to_string(streamed) + " decoded solutions failed the Walsh check");
    if (worst < -(1LL << (3 * c.n / 2))) throw VerifyError("energy below the theoretical minimum");
    return 0;
}

int cmd_map(const Config& c) {
    SymmetryMap m;
    if (!c.pairs.empty()) {
        try {
            m.pairs = SymmetryMap::parse_pairs(c.pairs);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    } else if (!c.from.empty() && !c.to.empty()) {
        check_n(c.n, {2, 4});
        auto src = ConditionVector::parse(c.from), dst = ConditionVector::parse(c.to);
        auto found = find_symmetry_map(c.n, src, dst);
        if (!found) throw VerifyError("no swap map carries " + src.str() + " onto " + dst.str());
        m = *found;
    } else {
        throw UsageError("map needs --pairs or --from/--to");
    }
    auto tables = load_tables(c.input);
    Sink s(c.output);
    *s << header("map", {{"input", c.input}, {"pairs", c.pairs}, {"from", c.from}, {"to", c.to}, {"output", c.output}}) << '\n';
    *s << "pairs " << m.str() << '\n';
    std::size_t bad = 0;
    for (auto& t : tables) {
        TruthTable out;
        try {
            out = symmetry_map(t, m);
        } catch (const std::exception& e) {
            throw UsageError(e.what());
        }
        bool ok = out.n() % 2 == 0 && is_bent(out);
        bad += !ok;
        *s << t.str() << " -> " << out.str() << " bent=" << (ok ? "true" : "false") << '\n';
    }
    if (bad) throw VerifyError(std::to_string(bad) + " mapped table(s) are not bent");
    return 0;
}

void arch_summary(std::ostream& out, const TreeArchitecture& a) {
    out << "n=" << a.n << " parts=" << a.parts << " condition=" << a.condition << '\n';
    for (int p = 0; p < a.parts; ++p)
        out << "part " << p << " qubits=" << a.node_count(p) << " couplers=" << a.edge_count(p) << " tree=" << (a.is_tree(p) ? "yes" : "no") << '\n';
    out << "total qubits=" << a.nodes.size() << " couplers=" << a.edges.size() << " max_degree=" << a.max_degree()
        << " problem-coupling=" << a.edge_count(EdgeKind::problem_coupling) << " chain-equality=" << a.edge_count(EdgeKind::chain_equality)
        << " control-link=" << a.edge_count(EdgeKind::control_link) << '\n';
}

int cmd_arch(const Config& c) {
    check_n(c.n, {2, 4, 8});
    auto a = build_tree(c.n);
    auto bad = a.validate_structure();
    std::cout << header("arch", {{"n", std::to_string(c.n)}, {"graph", c.graph}, {"csv", c.csv ? "true" : "false"}}) << '\n';
    arch_summary(std::cout, a);
    if (!c.graph.empty()) {
        Sink g(c.graph);
        *g << header("arch", {{"n", std::to_string(c.n)}, {"graph", c.graph}}) << '\n';
        write_graph(*g, a);
    }
    std::vector<ResourceRow> rows;
    for (auto& r : resource_table())
        if (r.n == c.n) rows.push_back(r);
    if (c.csv) write_resource_csv(std::cout, rows);
    else write_resource_table(std::cout, rows);
    for (auto& b : bad) std::cerr << "structure: " << b << '\n';
    if (!bad.empty()) throw VerifyError("architecture violates its structural rules");
    return 0;
}

// Resource table, plus a per-condition breakdown of --catalog.
int cmd_report(const Config& c) {
    Sink s(c.output);
    *s << header("report", {{"catalog", c.catalog}, {"csv", c.csv ? "true" : "false"}, {"output", c.output}}) << '\n';
    if (c.csv) write_resource_csv(*s, resource_table());
    else write_resource_table(*s, resource_table());
    if (c.catalog.empty()) return 0;
    auto in = open_in(c.catalog);
    auto cat = read_catalog(in);
    std::map<std::string, std::size_t> per;
    std::size_t bad = 0;
    for (auto& [t, e] : cat.entries) {
        bad += !is_bent(t);
        for (auto& p : e.provenance) ++per[provenance_condition(p)];
    }
    *s << "catalog n=" << cat.n << " count=" << cat.size() << " verified=" << cat.size() - bad << '\n';
    for (auto& [cond, k] : per) *s << "  " << cond << ' ' << k << '\n';
    if (bad) throw VerifyError(std::to_string(bad) + " catalog entries are not bent");
    return 0;
}

void add_schedule(CLI::App* sub, Config& c) {
    sub->add_option("--sweeps", c.schedule.sweeps, "sweeps per restart")->check(CLI::PositiveNumber);
    sub->add_option("--beta-start", c.schedule.beta_start, "initial inverse temperature");
    sub->add_option("--beta-end", c.schedule.beta_end, "final inverse temperature");
    sub->add_option("--restarts", c.schedule.restarts, "restarts per leaf")->check(CLI::PositiveNumber);
    sub->add_option("--seed", c.schedule.seed, "master seed");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bent function design through reduced Ising models"};
    app.set_version_flag("--version", std::string(bent::version));
    app.require_subcommand(1);
    Config c;

    auto wht = app.add_subcommand("wht", "Walsh spectrum, bentness and nonlinearity of each table");
    wht->add_option("input", c.input, "truth-table file")->required();
    wht->add_option("-o,--output", c.output);

    auto check = app.add_subcommand("check", "condition validity (-n) or bentness of a file (--input)");
    check->add_option("-n", c.n, "variables");
    check->add_option("--conditions", c.conditions, "'all' or comma-separated vectors");
    check->add_option("--input", c.input, "truth tables or catalog to verify");
    check->add_option("-o,--output", c.output);

    auto enumerate = app.add_subcommand("enumerate", "brute-force list of all bent functions");
    enumerate->add_option("-n", c.n, "variables (2 or 4)")->required();
    enumerate->add_option("-o,--output", c.output);

    auto model = app.add_subcommand("model", "full Ising model, or its reduction plan");
    model->add_option("-n", c.n, "variables")->required();
    model->add_option("--condition", c.condition, "condition path, e.g. A:1111 or A:1^64/A:1^16");
    model->add_option("-o,--output", c.output);

    auto solve = app.add_subcommand("solve", "ground states of a model file");
    solve->add_option("input", c.input, "model file")->required();
    solve->add_option("--mode", c.mode, "exact or anneal")->check(CLI::IsMember({"exact", "anneal"}));
    solve->add_option("--limit", c.limit, "print at most this many states (0 = all)");
    solve->add_option("-o,--output", c.output);
    add_schedule(solve, c);

    auto pipeline = app.add_subcommand("pipeline", "split, solve, recombine and verify");
    pipeline->add_option("-n", c.n, "variables")->required();
    pipeline->add_option("--conditions", c.conditions, "'all' or comma-separated condition paths");
    pipeline->add_option("--mode", c.mode, "exact or anneal")->check(CLI::IsMember({"exact", "anneal"}));
    pipeline->add_option("--limit", c.limit, "stop each condition after this many functions (0 = all)");
    pipeline->add_option("-o,--output", c.output, "catalog file");
    add_schedule(pipeline, c);

    auto map = app.add_subcommand("map", "apply a position-swap symmetry map");
    map->add_option("input", c.input, "truth-table file")->required();
    map->add_option("--pairs", c.pairs, "swaps, e.g. 2-10,4-12");
    map->add_option("-n", c.n, "variables for --from/--to");
    map->add_option("--from", c.from, "source condition");
    map->add_option("--to", c.to, "target condition");
    map->add_option("-o,--output", c.output);

    auto arch = app.add_subcommand("arch", "tree architecture and resource comparison");
    arch->add_option("-n", c.n, "variables (2, 4 or 8)")->required();
    arch->add_option("--graph", c.graph, "write the graph export here");
    arch->add_flag("--csv", c.csv, "resource table as CSV");

    auto report = app.add_subcommand("report", "resource table and catalog summary");
    report->add_option("--catalog", c.catalog);
    report->add_flag("--csv", c.csv);
    report->add_option("-o,--output", c.output);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*wht) return cmd_wht(c);
        if (*check) return cmd_check(c);
        if (*enumerate) return cmd_enumerate(c);
        if (*model) return cmd_model(c);
        if (*solve) return cmd_solve(c);
        if (*pipeline) return cmd_pipeline(c);
        if (*map) return cmd_map(c);
        if (*arch) return cmd_arch(c);
        if (*report) return cmd_report(c);
    } catch (const VerifyError& e) {
        std::cerr << "verification failed: " << e.what() << '\n';
        return 2;
    } catch (const SolverRefusal& e) {
        std::cerr << "solver refused: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
