#include "commands.hpp"

#include "isr/covering.hpp"
#include "isr/fpt_opt.hpp"
#include "isr/gadgets.hpp"
#include "isr/generators.hpp"
#include "isr/io.hpp"
#include "isr/oracle.hpp"
#include "isr/separation.hpp"
#include "isr/tjr_meta.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace isr::cli {
namespace {

struct SolveFlags {
    std::string variant = "tso";
    std::string algo = "fpt";
    std::string family = "exact";
    std::uint64_t seed = 0;
    std::size_t guess_cap = 10'000'000;
    std::optional<std::size_t> trials;
    std::optional<std::size_t> rounds;
    bool exhaustive = false;
    std::size_t threads = 1;
    bool timing = false;
    std::string input;
};

struct GenFlags {
    std::string gadget = "tso";
    std::size_t k = 3;
    std::string witness;
    std::string out;
    std::string witness_out;
    std::string layout_out;
    bool dimacs = false;
    std::string input;
};

struct FamilyFlags {
    std::string mode = "exact";
    std::optional<std::size_t> k;
    std::optional<std::size_t> rounds;
    std::string inner = "exact";
    std::uint64_t seed = 0;
    std::size_t threads = 1;
    bool verify = false;
    bool dimacs = false;
    std::string input;
};

struct BenchFlags {
    std::string suite = "random-degenerate";
    std::string sizes = "6,8";
    std::size_t per_size = 3;
    std::uint64_t seed = 0;
    bool timing = false;
    std::string out;
};

struct VerifyFlags {
    std::string variant = "tso";
    std::string instance;
    std::string result;
};

/// Thrown for flag combinations that make no sense; maps to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open " + path);
    return parse_json(in);
}

Graph read_dimacs_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open " + path);
    return read_dimacs(in);
}

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw UsageError("cannot write " + path);
    f << text;
    if (!f)
        throw UsageError("cannot write " + path);
}

std::vector<std::size_t> parse_list(const std::string& text)
{
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            continue;
        std::size_t pos = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(item, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != item.size())
            throw UsageError("'" + item + "' is not a nonnegative integer");
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

Rule rule_of(const std::string& variant) { return variant == "tso" ? Rule::slide : Rule::jump; }

int exit_code(Answer a)
{
    switch (a) {
    case Answer::yes:
        return exit_yes;
    case Answer::no:
    case Answer::probably_no:
        return exit_no;
    case Answer::budget_exceeded:
        return exit_resource;
    }
    return exit_error;
}

struct BuiltFamily {
    CoveringFamily family;
    bool verified = true;
};

std::size_t degeneracy_outside(const Graph& g, const VertexSet& m)
{
    return degeneracy(induced_subgraph(g, complement(g, m)).graph);
}

BuiltFamily build_family(const Instance& inst, const SolveFlags& f)
{
    const Graph& g = inst.graph();
    const std::size_t k = std::max<std::size_t>(inst.k(), 1);
    if (f.family == "exact")
        return {exact_family(g, k), true};
    if (f.family == "sampled") {
        const std::size_t d = degeneracy(g);
        if (f.rounds)
            return {sampled_family(g, k, d, *f.rounds, f.seed, {0, f.threads}), false};
        return {sampled_family_verified(g, k, d, f.seed, std::size_t{1} << 24, {0, f.threads}).family, true};
    }
    if (f.family == "modulator") {
        if (!inst.modulator())
            throw UsageError("--family modulator needs a modulator in the instance");
        const VertexSet& m = *inst.modulator();
        InnerFamily inner;
        inner.seed = f.seed;
        inner.threads = f.threads;
        if (f.rounds) {
            inner.kind = InnerFamily::Kind::sampled;
            inner.rounds = *f.rounds;
        }
        return {modulator_family(g, m, k, degeneracy_outside(g, m), inner), !f.rounds.has_value()};
    }
    CoveringFamily fam = family_from_json(read_json_file(f.family), k);
    bool verified = false;
    try {
        verified = verify_cover(g, k, fam).ok();
    } catch (const ResourceError&) {
        verified = false;
    }
    return {std::move(fam), verified};
}

SolveResult oracle_solve(const Instance& inst, const std::string& variant)
{
    SolveResult r;
    OracleOptions opt;
    if (variant != "tjr")
        opt.max_depth = inst.ell();
    OracleStats stats;
    auto seq = bfs_witness(inst, rule_of(variant), opt, &stats);
    r.stats.nodes_expanded = stats.nodes_expanded;
    if (seq && (variant == "tjr" || seq->length() <= inst.ell())) {
        r.answer = Answer::yes;
        r.sequence = std::move(seq);
    } else {
        r.answer = Answer::no;
    }
    return r;
}

SolveResult dispatch(const Instance& inst, const SolveFlags& f)
{
    if (f.variant != "tso" && f.variant != "tjo" && f.variant != "tjr")
        throw UsageError("--variant must be tso, tjo or tjr");
    if (f.algo == "oracle")
        return oracle_solve(inst, f.variant);
    if (f.algo == "separation") {
        if (f.variant == "tjr")
            throw UsageError("random separation solves tso and tjo only");
        if (!inst.modulator())
            throw UsageError("--algo separation needs a modulator in the instance");
        SeparationOptions opt;
        opt.trials = f.trials;
        opt.exhaustive = f.exhaustive;
        opt.seed = f.seed;
        return solve_separation(inst, *inst.modulator(), rule_of(f.variant), opt);
    }
    if (f.algo != "fpt")
        throw UsageError("--algo must be fpt, oracle or separation");
    BuiltFamily fam = build_family(inst, f);
    if (f.variant == "tjr")
        return solve_tjr(inst, fam.family, {fam.verified});
    OptOptions opt;
    opt.guess_cap = f.guess_cap;
    SolveResult r = solve_opt(inst, fam.family, rule_of(f.variant), opt);
    if (!fam.verified)
        r.warning = "covering family not verified; a no answer may be wrong";
    return r;
}

int cmd_solve(const SolveFlags& f, std::ostream& out)
{
    const auto start = std::chrono::steady_clock::now();
    const InstanceFile file = instance_from_json(read_json_file(f.input));
    SolveResult r = dispatch(file.instance, f);
    if (r.answer == Answer::yes) {
        const LengthBound bound = f.variant == "tjr" ? LengthBound::ignore : LengthBound::enforce;
        if (!r.sequence || !validate_sequence(file.instance, *r.sequence, rule_of(f.variant), bound))
            throw InternalError("solver returned an invalid witness");
    }
    ResultExtras extras{f.seed, std::nullopt};
    if (f.timing)
        extras.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    out << result_to_json(r, extras).dump(2) << '\n';
    return exit_code(r.answer);
}

VertexSet parse_clique(const std::string& spec)
{
    std::vector<Vertex> vs;
    for (std::size_t v : parse_list(spec))
        vs.push_back(static_cast<Vertex>(v));
    return VertexSet(std::move(vs));
}

int cmd_gen(const GenFlags& f, std::ostream& out)
{
    MulticoloredGraph mc = f.dimacs ? MulticoloredGraph{read_dimacs_file(f.input), {}}
                                    : colored_graph_from_json(read_json_file(f.input));
    std::optional<Gadget> gadget;
    ReconfigSequence witness;
    if (f.gadget == "tso") {
        if (mc.colors.empty())
            throw UsageError("the sliding gadget needs a 'colors' array in the source graph");
        gadget = gen_tso_gadget(mc, f.k);
        if (!f.witness.empty())
            witness = tso_witness(*gadget, mc, parse_clique(f.witness));
    } else if (f.gadget == "tjo") {
        gadget = gen_tjo_gadget(mc.graph, f.k);
        if (!f.witness.empty())
            witness = tjo_witness(*gadget, mc.graph, parse_clique(f.witness));
    } else {
        throw UsageError("--gadget must be tso or tjo");
    }
    Json meta{{"gadget", f.gadget}, {"clique_k", f.k}};
    const std::string text = instance_to_json(gadget->instance, meta).dump() + "\n";
    if (f.out.empty())
        out << text;
    else
        write_text(f.out, text);
    if (!f.layout_out.empty())
        write_text(f.layout_out, layout_to_json(gadget->layout).dump() + "\n");
    if (!f.witness.empty()) {
        if (auto check = validate_sequence(gadget->instance, witness, rule_of(f.gadget)); !check)
            throw InternalError("gadget witness rejected: " + check.message);
        Json w{{"length", witness.length()}, {"sequence", sequence_to_json(witness)}};
        if (f.witness_out.empty())
            out << w.dump() << '\n';
        else
            write_text(f.witness_out, w.dump() + "\n");
    }
    return exit_yes;
}

int cmd_family(const FamilyFlags& f, std::ostream& out, std::ostream& err)
{
    Graph g;
    std::optional<VertexSet> modulator;
    std::optional<std::size_t> inst_k;
    if (f.dimacs) {
        g = read_dimacs_file(f.input);
    } else {
        Json j = read_json_file(f.input);
        if (j.contains("s")) {
            InstanceFile file = instance_from_json(j);
            g = file.instance.graph();
            modulator = file.instance.modulator();
            inst_k = file.instance.k();
        } else {
            g = detail::graph_from_json(j);
            if (j.contains("modulator"))
                modulator = detail::set_field(j, "modulator");
        }
    }
    const std::size_t k = f.k.value_or(inst_k.value_or(0));
    if (k == 0)
        throw UsageError("--k must be positive (or come from an instance file)");

    CoveringFamily fam;
    if (f.mode == "exact") {
        fam = exact_family(g, k);
    } else if (f.mode == "sampled") {
        const std::size_t d = degeneracy(g);
        fam = f.rounds ? sampled_family(g, k, d, *f.rounds, f.seed, {0, f.threads})
                       : sampled_family_verified(g, k, d, f.seed, std::size_t{1} << 24, {0, f.threads}).family;
    } else if (f.mode == "modulator") {
        const VertexSet m = modulator.value_or(VertexSet{});
        InnerFamily inner;
        inner.seed = f.seed;
        inner.threads = f.threads;
        if (f.inner == "sampled") {
            inner.kind = f.rounds ? InnerFamily::Kind::sampled : InnerFamily::Kind::sampled_verified;
            inner.rounds = f.rounds.value_or(0);
        } else if (f.inner != "exact") {
            throw UsageError("--inner must be exact or sampled");
        }
        fam = modulator_family(g, m, k, degeneracy_outside(g, m), inner);
    } else {
        throw UsageError("--mode must be exact, sampled or modulator");
    }
    out << family_to_json(fam).dump() << '\n';
    if (!f.verify)
        return exit_yes;
    const CoverCheck check = verify_cover(g, k, fam);
    if (check.ok()) {
        err << "cover ok (" << check.enumerated << " independent sets checked)\n";
        return exit_yes;
    }
    err << "uncovered independent set: " << detail::to_json(*check.missing).dump() << '\n';
    return exit_no;
}

std::string csv_number(double ms)
{
    std::ostringstream s;
    s << std::fixed << std::setprecision(3) << ms;
    return s.str();
}

int cmd_bench(const BenchFlags& f, std::ostream& out)
{
    if (f.suite != "random-degenerate" && f.suite != "gadgets")
        throw UsageError("--suite must be random-degenerate or gadgets");
    std::ostringstream csv;
    csv << "instance_id,variant,algo,answer,length,guesses,frontier_peak,ms,agree\n";
    auto row = [&](const std::string& id, const std::string& variant, const std::string& algo,
                   const SolveResult& r, double ms, bool agree) {
        csv << id << ',' << variant << ',' << algo << ',' << to_string(r.answer) << ','
            << (r.sequence ? std::to_string(r.sequence->length()) : "") << ',' << r.stats.guesses << ','
            << r.stats.frontier_peak << ',' << (f.timing ? csv_number(ms) : "0") << ',' << (agree ? "true" : "false")
            << '\n';
    };
    auto timed = [](auto&& fn) {
        const auto start = std::chrono::steady_clock::now();
        auto r = fn();
        return std::make_pair(std::move(r),
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count());
    };

    for (std::size_t n : parse_list(f.sizes)) {
        for (std::size_t i = 0; i < f.per_size; ++i) {
            Rng rng(derive_seed(f.seed, n * 1'000'003 + i));
            const std::string id = f.suite + "-n" + std::to_string(n) + "-" + std::to_string(i);
            if (f.suite == "random-degenerate") {
                const Graph g = random_degenerate_graph(n, 2, 0.6, rng);
                auto inst = random_instance(g, 2, 4, rng);
                if (!inst)
                    continue;
                const CoveringFamily fam = exact_family(g, 2);
                for (const std::string variant : {"tso", "tjo", "tjr"}) {
                    const Rule rule = rule_of(variant);
                    auto [r, ms] = timed([&] {
                        return variant == std::string("tjr") ? solve_tjr(*inst, fam) : solve_opt(*inst, fam, rule);
                    });
                    OracleOptions opt;
                    if (variant != std::string("tjr"))
                        opt.max_depth = inst->ell();
                    auto dist = bfs_distance(*inst, rule, opt);
                    const bool oracle_yes = dist && (variant == std::string("tjr") || *dist <= inst->ell());
                    row(id, variant, "fpt", r, ms, oracle_yes == (r.answer == Answer::yes));
                }
            } else {
                const std::size_t k = 2 + i % 2;
                const PlantedColoredGraph pc = random_colored_graph(std::max(n, k), k, 0.4, true, rng);
                for (const std::string variant : {"tso", "tjo"}) {
                    auto [g, ms] = timed([&] {
                        Gadget gadget = variant == std::string("tso") ? gen_tso_gadget(pc.graph, k)
                                                                      : gen_tjo_gadget(pc.graph.graph, k);
                        ReconfigSequence w = variant == std::string("tso")
                            ? tso_witness(gadget, pc.graph, *pc.clique)
                            : tjo_witness(gadget, pc.graph.graph, *pc.clique);
                        return std::make_pair(std::move(gadget), std::move(w));
                    });
                    SolveResult r;
                    r.answer = Answer::yes;
                    r.sequence = g.second;
                    const std::size_t expected = variant == std::string("tso") ? tso_length(k) : tjo_length(k);
                    const bool agree = degeneracy(g.first.instance.graph()) <= 2 && g.second.length() == expected
                        && static_cast<bool>(validate_sequence(g.first.instance, g.second, rule_of(variant)));
                    row(id, variant, "witness", r, ms, agree);
                }
            }
        }
    }
    if (f.out.empty())
        out << csv.str();
    else
        write_text(f.out, csv.str());
    return exit_yes;
}

int cmd_verify(const VerifyFlags& f, std::ostream& out)
{
    const InstanceFile file = instance_from_json(read_json_file(f.instance));
    const Json result = read_json_file(f.result);
    const std::string answer = detail::field_as<std::string>(result, "answer");
    if (answer != "yes") {
        out << "nothing to verify: answer is " << answer << '\n';
        return exit_yes;
    }
    const ReconfigSequence seq = sequence_from_json(detail::field(result, "sequence"));
    const LengthBound bound = f.variant == "tjr" ? LengthBound::ignore : LengthBound::enforce;
    if (auto check = validate_sequence(file.instance, seq, rule_of(f.variant), bound); !check) {
        out << "invalid at step " << check.step << ": " << check.message << '\n';
        return exit_no;
    }
    out << "valid sequence of length " << seq.length() << '\n';
    return exit_yes;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Independent set reconfiguration solvers", "isr"};
    app.require_subcommand(1);

    SolveFlags solve;
    auto* s = app.add_subcommand("solve", "solve an instance file");
    s->add_option("--variant", solve.variant, "tso, tjo or tjr")->check(CLI::IsMember({"tso", "tjo", "tjr"}));
    s->add_option("--algo", solve.algo, "fpt, oracle or separation")
        ->check(CLI::IsMember({"fpt", "oracle", "separation"}));
    s->add_option("--family", solve.family, "exact, sampled, modulator or a family JSON path");
    s->add_option("--seed", solve.seed);
    s->add_option("--guess-cap", solve.guess_cap);
    s->add_option("--trials", solve.trials);
    s->add_option("--rounds", solve.rounds, "fixed number of sampling rounds (unverified family)");
    s->add_flag("--exhaustive", solve.exhaustive, "separation: try every coloring of H");
    s->add_option("--threads", solve.threads)->check(CLI::PositiveNumber);
    s->add_flag("--timing", solve.timing, "include wall time in the result");
    s->add_option("input", solve.input)->required();

    GenFlags gen;
    auto* g = app.add_subcommand("gen", "generate a hardness gadget");
    g->add_option("--gadget", gen.gadget)->check(CLI::IsMember({"tso", "tjo"}));
    g->add_option("--k", gen.k)->check(CLI::Range(2, 64));
    g->add_option("--witness", gen.witness, "comma-separated clique, emits the optimal witness");
    g->add_option("--out", gen.out);
    g->add_option("--witness-out", gen.witness_out);
    g->add_option("--layout-out", gen.layout_out);
    g->add_flag("--dimacs", gen.dimacs, "source graph is DIMACS instead of JSON");
    g->add_option("input", gen.input)->required();

    FamilyFlags fam;
    auto* fm = app.add_subcommand("family", "build an independence covering family");
    fm->add_option("--mode", fam.mode)->check(CLI::IsMember({"exact", "sampled", "modulator"}));
    fm->add_option("--k", fam.k);
    fm->add_option("--rounds", fam.rounds);
    fm->add_option("--inner", fam.inner, "modulator mode: exact or sampled");
    fm->add_option("--seed", fam.seed);
    fm->add_option("--threads", fam.threads)->check(CLI::PositiveNumber);
    fm->add_flag("--verify", fam.verify);
    fm->add_flag("--dimacs", fam.dimacs);
    fm->add_option("input", fam.input)->required();

    BenchFlags bench;
    auto* b = app.add_subcommand("bench", "run a benchmark suite and write CSV");
    b->add_option("--suite", bench.suite)->check(CLI::IsMember({"random-degenerate", "gadgets"}));
    b->add_option("--sizes", bench.sizes, "comma-separated sizes");
    b->add_option("--per-size", bench.per_size);
    b->add_option("--seed", bench.seed);
    b->add_flag("--timing", bench.timing, "record milliseconds instead of 0");
    b->add_option("--out", bench.out);

    VerifyFlags verify;
    auto* v = app.add_subcommand("verify", "check a result file against an instance");
    v->add_option("--variant", verify.variant)->check(CLI::IsMember({"tso", "tjo", "tjr"}));
    v->add_option("instance", verify.instance)->required();
    v->add_option("result", verify.result)->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_yes : exit_error;
    }

    try {
        if (s->parsed())
            return cmd_solve(solve, out);
        if (g->parsed())
            return cmd_gen(gen, out);
        if (fm->parsed())
            return cmd_family(fam, out, err);
        if (b->parsed())
            return cmd_bench(bench, out);
        if (v->parsed())
            return cmd_verify(verify, out);
    } catch (const ResourceError& e) {
        err << "resource limit: " << e.what() << '\n';
        return exit_resource;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
        return exit_error;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_error;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return exit_error;
    }
    return exit_error;
}

} // namespace isr::cli
