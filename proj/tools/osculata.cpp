// osculata command-line front end: gen, analyze, audit.
//
// Exit codes: 0 ok, 1 usage error, 2 spec parse error, 3 invalid point,
// 4 internal invariant violation, 5 audit found a stable theorem violation.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "osculata/osculata.hpp"

namespace {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kParse = 2,
    kBadPoint = 3,
    kInvariant = 4,
    kViolation = 5,
};

/// Unreadable or schema-invalid spec input; maps to the parse-error exit code.
struct SpecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

osculata::VarietySpec load_spec(const std::string& path)
{
    std::ifstream is(path);
    if (!is) throw SpecError("cannot open '" + path + "'");
    std::stringstream buf;
    buf << is.rdbuf();
    try {
        return osculata::parse_spec(buf.str());
    } catch (const osculata::InputError& e) {
        throw SpecError(path + ": " + e.what());
    }
}

void write_output(const std::string& text, const std::string& out)
{
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(out);
    if (!os) throw osculata::InputError("cannot write '" + out + "'");
    os << text;
}

/// --seed, else $OSCULATA_SEED, else 1.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag)
{
    if (flag) return *flag;
    if (const char* env = std::getenv("OSCULATA_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw osculata::InputError("OSCULATA_SEED is not an unsigned integer");
        }
    }
    return 1;
}

osculata::RatVector parse_point(const std::string& text)
{
    osculata::RatVector x;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        const auto last = item.find_last_not_of(" \t");
        if (first == std::string::npos) throw osculata::InputError("empty coordinate in --point");
        x.push_back(osculata::parse_rational(item.substr(first, last - first + 1)));
    }
    return x;
}

struct GenOptions {
    std::string kind;
    std::size_t n = 1;
    std::uint32_t d = 3;
    std::vector<std::size_t> dims;
    std::string spec;
    std::size_t target = 0;
    std::optional<std::uint64_t> seed;
    std::int64_t bound = 10;
    std::string out;
};

struct AnalyzeOptions {
    std::string spec;
    std::string point;
    bool sample = false;
    std::uint32_t max_order = 4;
    std::optional<std::uint64_t> seed;
    std::uint32_t trials = 3;
    std::int64_t bound = 10;
    std::string chart = "auto";
    std::string format = "json";
    std::string out;
};

struct AuditOptions {
    std::string corpus;
    bool builtin = false;
    std::vector<std::uint64_t> seeds{1, 2, 3};
    std::uint32_t max_order = 4;
    std::uint32_t trials = 3;
    std::int64_t bound = 10;
    std::string format = "text";
};

int run_gen(const GenOptions& o)
{
    using namespace osculata;
    std::optional<VarietySpec> spec;
    if (o.kind == "veronese") {
        spec = gen_veronese(o.n, o.d);
    } else if (o.kind == "rnc") {
        spec = gen_rnc(o.d);
    } else if (o.kind == "segre") {
        if (o.dims.empty()) throw InputError("segre needs --dims");
        spec = gen_segre(o.dims);
    } else if (o.kind == "projection") {
        if (o.spec.empty()) throw InputError("projection needs --spec");
        spec = gen_projection(load_spec(o.spec), o.target, resolve_seed(o.seed), o.bound);
    } else if (o.kind == "cone") {
        if (o.spec.empty()) throw InputError("cone needs --spec");
        spec = gen_cone(load_spec(o.spec));
    } else {
        throw InputError("unknown generator '" + o.kind + "'");
    }
    write_output(pretty_print(*spec), o.out);
    (o.out.empty() ? std::cerr : std::cout) << "sha256:" << spec_digest(*spec) << "\n";
    return kOk;
}

int run_analyze(const AnalyzeOptions& o)
{
    using namespace osculata;
    if (o.point.empty() == !o.sample) throw InputError("give exactly one of --point or --sample");
    if (o.format != "json" && o.format != "text") throw InputError("--format must be json or text");
    const auto spec = load_spec(o.spec);
    AnalyzeConfig cfg;
    cfg.sampler = SamplerConfig{resolve_seed(o.seed), o.trials, o.bound};
    cfg.max_order = o.max_order;
    if (o.chart != "auto") {
        try {
            cfg.chart = std::stoul(o.chart);
        } catch (const std::exception&) {
            throw InputError("--chart must be 'auto' or a coordinate index");
        }
    }
    if (!o.point.empty()) {
        try {
            cfg.point = parse_point(o.point);
        } catch (const InputError& e) {
            throw PointRejected(PointRejected::Reason::BasePoint, e.what());
        }
        if (cfg.point->size() != spec.nparams()) {
            throw PointRejected(PointRejected::Reason::BasePoint,
                                "--point has " + std::to_string(cfg.point->size()) + " coordinates, spec has " +
                                    std::to_string(spec.nparams()) + " parameters");
        }
    }
    const auto doc = analyze(spec, cfg);
    write_output(o.format == "json" ? doc.dump(2) + "\n" : to_text(doc), o.out);
    return kOk;
}

int run_audit_cmd(const AuditOptions& o)
{
    using namespace osculata;
    if (o.format != "json" && o.format != "text") throw InputError("--format must be json or text");
    if (o.corpus.empty() == !o.builtin) throw InputError("give exactly one of --corpus or --builtin");
    const auto inputs = o.builtin ? builtin_audit_inputs() : load_corpus(o.corpus);
    const auto rows = run_audit(inputs, o.seeds, o.max_order, o.trials, o.bound);
    if (o.format == "json") {
        std::cout << audit_json(rows).dump(2) << "\n";
    } else {
        std::cout << audit_table(rows);
    }
    for (const auto& r : rows) {
        if (r.violation()) return kViolation;
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"osculata: osculating spaces, fundamental forms and their invariants"};
    app.require_subcommand(1);
    app.set_version_flag("--version", osculata::kVersion);

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a variety spec");
    gen_cmd->add_option("kind", gen.kind, "veronese | segre | rnc | projection | cone")
        ->required()
        ->check(CLI::IsMember({"veronese", "segre", "rnc", "projection", "cone"}));
    gen_cmd->add_option("--n", gen.n, "Veronese: projective dimension n")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--d", gen.d, "Veronese/rnc: degree d")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--dims", gen.dims, "Segre: factor dimensions")->delimiter(',');
    gen_cmd->add_option("--spec", gen.spec, "Projection/cone: source spec file");
    gen_cmd->add_option("--target", gen.target, "Projection: target ambient dimension");
    gen_cmd->add_option("--seed", gen.seed, "Projection: matrix seed");
    gen_cmd->add_option("--coord-bound", gen.bound, "Projection: entries drawn from [-B, B]")
        ->check(CLI::PositiveNumber);
    gen_cmd->add_option("--out", gen.out, "Write the generated spec file here instead of stdout");

    AnalyzeOptions an;
    auto* an_cmd = app.add_subcommand("analyze", "Analyze a spec at a point");
    an_cmd->add_option("spec", an.spec, "Spec JSON file")->required();
    auto* point_opt = an_cmd->add_option("--point", an.point, "Chart point, comma-separated rationals");
    an_cmd->add_flag("--sample", an.sample, "Sample the point from the seed")->excludes(point_opt);
    an_cmd->add_option("--max-order", an.max_order, "Highest jet order K (>= 2)")->check(CLI::Range(2u, 64u));
    an_cmd->add_option("--seed", an.seed, "Sampler seed (default $OSCULATA_SEED, else 1)");
    an_cmd->add_option("--trials", an.trials, "Independent trials per generic invariant")
        ->check(CLI::PositiveNumber);
    an_cmd->add_option("--coord-bound", an.bound, "Sample integers from [-B, B]")->check(CLI::PositiveNumber);
    an_cmd->add_option("--chart", an.chart, "auto or a coordinate index");
    an_cmd->add_option("--format", an.format, "json | text")->check(CLI::IsMember({"json", "text"}));
    an_cmd->add_option("--out", an.out, "Write the report here instead of stdout");

    AuditOptions au;
    auto* au_cmd = app.add_subcommand("audit", "Audit theorem verdicts over a corpus");
    auto* corpus_opt = au_cmd->add_option("--corpus", au.corpus, "Directory of spec JSON files")
                           ->check(CLI::ExistingDirectory);
    au_cmd->add_flag("--builtin", au.builtin, "Use the built-in corpus")->excludes(corpus_opt);
    au_cmd->add_option("--seeds", au.seeds, "Seeds, comma-separated")->delimiter(',');
    au_cmd->add_option("--max-order", au.max_order, "Highest jet order K (>= 3)")->check(CLI::Range(3u, 64u));
    au_cmd->add_option("--trials", au.trials, "Independent trials per generic invariant")
        ->check(CLI::PositiveNumber);
    au_cmd->add_option("--coord-bound", au.bound, "Sample integers from [-B, B]")->check(CLI::PositiveNumber);
    au_cmd->add_option("--format", au.format, "json | text")->check(CLI::IsMember({"json", "text"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (gen_cmd->parsed()) return run_gen(gen);
        if (an_cmd->parsed()) return run_analyze(an);
        if (au_cmd->parsed()) return run_audit_cmd(au);
    } catch (const SpecError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const osculata::PointRejected& e) {
        std::cerr << "invalid point: " << e.what() << "\n";
        return kBadPoint;
    } catch (const osculata::InvariantViolation& e) {
        std::cerr << "internal invariant violation: " << e.what() << "\n";
        return kInvariant;
    } catch (const osculata::StabilizationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const osculata::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
