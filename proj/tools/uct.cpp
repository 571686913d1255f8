// uct: command-line front end for the uniform continuity pipeline.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "uct/uct.hpp"

namespace {

enum ExitCode { kOk = 0, kConfig = 1, kNegative = 2, kInconclusive = 3, kLppViolation = 4 };

struct RunConfig {
    std::size_t prec_cap = 4096;
    std::size_t max_depth = 0;  // 0: per-command default
    std::string strategy = "greedy";
    bool trace = false;
    bool json = false;
    bool text = false;
};

// JSON unless the command defaults to text and --json was not given.
bool want_json(const RunConfig& run, bool text_default) {
    if (run.json) {
        return true;
    }
    if (run.text) {
        return false;
    }
    return !text_default;
}

void emit(const uct::Json& j) { std::cout << j.dump() << '\n'; }

uct::EvalConfig eval_config(const RunConfig& run) {
    uct::EvalConfig cfg;
    cfg.precision_cap = run.prec_cap;
    cfg.start_precision = std::min(cfg.start_precision, run.prec_cap);
    return cfg;
}

uct::Dyadic positive_dyadic(const std::string& text, const char* what) {
    uct::Dyadic d = uct::Dyadic::parse(text);
    if (d.sign() <= 0) {
        throw uct::InvalidNumber(std::string(what) + " must be positive, got " + text);
    }
    return d;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw uct::TreeFormatError("cannot open " + path);
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// --- encode ---------------------------------------------------------------

int cmd_encode(const RunConfig& run, const std::string& op, const std::vector<std::string>& args) {
    auto need = [&](std::size_t n) {
        if (args.size() != n) {
            throw CLI::ValidationError("encode " + op, "expects " + std::to_string(n) + " argument(s)");
        }
    };
    auto word = [](const std::string& s) { return uct::BinaryWord::parse(s); };
    std::string out;
    uct::Json j;
    if (op == "g") {
        need(1);
        out = uct::encode_g(word(args[0])).to_string();
        j = out;
    } else if (op == "decode") {
        need(2);
        std::size_t n = std::stoul(args[1]);
        out = uct::decode_g(uct::Dyadic::parse(args[0]), n).to_string();
        j = out;
    } else if (op == "sum") {
        need(2);
        out = uct::sum_words(word(args[0]), word(args[1])).to_string();
        j = out;
    } else if (op == "proj0" || op == "proj1") {
        need(1);
        auto c = word(args[0]);
        out = (op == "proj0" ? uct::proj0(c) : uct::proj1(c)).to_string();
        j = out;
    } else if (op == "interval") {
        need(1);
        auto J = uct::interval_of_word(word(args[0]));
        out = J.to_string();
        j = uct::Json::array({J.lo().to_string(), J.hi().to_string()});
    } else if (op == "grid") {
        need(1);
        std::size_t n = std::stoul(args[0]);
        if (n < 1 || n > 20) {
            throw CLI::ValidationError("encode grid", "level must be in 1..20");
        }
        j = uct::Json::array();
        for (const auto& p : uct::level_grid(n)) {
            out += (out.empty() ? "" : " ") + p.to_string();
            j.push_back(p.to_string());
        }
    } else {
        throw CLI::ValidationError("encode", "unknown operation " + op);
    }
    if (want_json(run, true)) {
        emit(j);
    } else {
        std::cout << out << '\n';
    }
    return kOk;
}

// --- tree -----------------------------------------------------------------

// Exhaustive check: prefix(n) of the path leaves T only if T has no member
// of length >= n.
std::optional<std::size_t> lpp_violation(const uct::DecidableTree& tree, const uct::BinaryWord& path,
                                         std::size_t depth) {
    auto h = uct::tree_height(tree, depth);
    for (std::size_t n = 0; n <= path.size(); ++n) {
        if (!tree.contains(path.prefix(n)) && n <= h.value) {
            return n;
        }
    }
    return std::nullopt;
}

int cmd_tree(const RunConfig& run, const std::string& op, const std::string& file, std::optional<std::size_t> depth,
             bool check_lpp) {
    uct::TreeFile tf = uct::parse_tree(read_file(file));
    const std::size_t d = depth ? *depth : (run.max_depth ? run.max_depth : uct::kDefaultTreeDepth);
    uct::Json j;
    std::optional<uct::BinaryWord> checked;
    if (op == "path") {
        auto r = uct::wkl_path(tf.tree, d);
        j = uct::to_json(r);
        checked = r.word;
    } else if (op == "longest") {
        auto r = uct::longest_path(tf.tree, d);
        j = uct::to_json(r);
        checked = r.word;
    } else if (op == "height") {
        auto h = uct::tree_height(tf.tree, d);
        j["height"] = h.value;
        j["unbounded"] = h.unbounded;
        j["empty"] = h.empty;
    } else if (op == "reduce") {
        auto red = uct::lpp_reduction(tf.tree, d);
        j["type"] = "explicit";
        j["words"] = uct::Json::array();
        std::vector<uct::BinaryWord> level{uct::BinaryWord{}};
        for (std::size_t len = 0; len <= d && !level.empty(); ++len) {
            std::vector<uct::BinaryWord> next;
            for (const auto& w : level) {
                if (!red.contains(w)) {
                    continue;
                }
                j["words"].push_back(w.to_string());
                if (len < d) {
                    next.push_back(w.extended(0));
                    next.push_back(w.extended(1));
                }
            }
            level = std::move(next);
        }
    } else {
        throw CLI::ValidationError("tree", "unknown operation " + op);
    }
    if (check_lpp) {
        if (!checked) {
            checked = uct::longest_path(tf.tree, d).word;
        }
        if (auto n = lpp_violation(tf.tree, *checked, d)) {
            std::cerr << "uct: LPP law violated at prefix length " << *n << '\n';
            return kLppViolation;
        }
        j["lpp_check"] = "ok";
    }
    if (want_json(run, false)) {
        emit(j);
    } else if (j.contains("word")) {
        std::cout << j["word"].get<std::string>() << '\n';
    } else {
        std::cout << j.dump(2) << '\n';
    }
    return kOk;
}

// --- witness / modulus / verify --------------------------------------------

int cmd_witness(const RunConfig& run, const std::string& expr, const std::string& eps, const std::string& delta) {
    auto f = uct::parse(expr);
    auto e = positive_dyadic(eps, "--eps");
    auto d = positive_dyadic(delta, "--delta");
    auto report = uct::find_witnesses(f, e, d, run.max_depth ? run.max_depth : 8, eval_config(run));
    if (want_json(run, false)) {
        emit(uct::to_json(report, run.trace));
    } else if (report.found) {
        std::cout << "found x=" << report.found->x.to_string() << " y=" << report.found->y.to_string()
                  << " flip_level=" << report.found->flip_level << '\n';
    } else {
        std::cout << "none_up_to depth=" << report.depth << '\n';
    }
    return report.is_found() ? kOk : kNegative;
}

int cmd_modulus(const RunConfig& run, const std::string& expr, const std::string& eps) {
    auto f = uct::parse(expr);
    auto e = positive_dyadic(eps, "--eps");
    uct::ModulusConfig cfg;
    cfg.strategy = run.strategy == "faithful" ? uct::Strategy::Faithful : uct::Strategy::Greedy;
    cfg.max_depth = run.max_depth;
    cfg.eval = eval_config(run);
    auto cert = uct::extract_modulus(f, e, cfg);
    if (want_json(run, false)) {
        emit(uct::to_json(cert, run.trace));
    } else {
        std::cout << "delta=" << cert.delta().to_string() << " xi=" << cert.xi_interval.to_string()
                  << " depth_used=" << cert.depth_used << '\n';
    }
    return kOk;
}

int cmd_verify(const RunConfig& run, const std::string& expr, const std::string& eps, const std::string& delta,
               std::size_t resolution) {
    auto f = uct::parse(expr);
    auto e = positive_dyadic(eps, "--eps");
    auto d = positive_dyadic(delta, "--delta");
    uct::ModulusConfig cfg;
    cfg.eval = eval_config(run);
    cfg.verify_resolution_exp = resolution;
    auto v = uct::verify_modulus(f, e, d, cfg);
    if (want_json(run, false)) {
        emit(uct::to_json(v, e, d));
    } else if (v.verdict == uct::Verdict::Counterexample) {
        std::cout << "counterexample x=" << v.x.to_string() << " y=" << v.y.to_string() << '\n';
    } else {
        std::cout << uct::to_string(v.verdict) << '\n';
    }
    switch (v.verdict) {
        case uct::Verdict::Certified: return kOk;
        case uct::Verdict::Counterexample: return kNegative;
        case uct::Verdict::Inconclusive: return kInconclusive;
    }
    return kInconclusive;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certified moduli of uniform continuity on [0,1]"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig run;
    app.add_option("--prec-cap", run.prec_cap, "precision cap in bits")
        ->envname("UCT_PREC_CAP")
        ->check(CLI::Range(std::size_t{8}, std::size_t{1} << 20));
    app.add_option("--max-depth", run.max_depth, "depth bound")->check(CLI::PositiveNumber);
    app.add_option("--strategy", run.strategy, "faithful or greedy")
        ->check(CLI::IsMember({"faithful", "greedy"}));
    app.add_flag("--trace", run.trace, "include the lambda trace and tree sizes");
    auto* json_flag = app.add_flag("--json", run.json, "JSON output");
    auto* text_flag = app.add_flag("--text", run.text, "plain text output");
    json_flag->excludes(text_flag);

    auto* encode = app.add_subcommand("encode", "word and dyadic codings");
    std::string encode_op;
    std::vector<std::string> encode_args;
    encode->add_option("op", encode_op, "g|decode|sum|proj0|proj1|interval|grid")
        ->required()
        ->check(CLI::IsMember({"g", "decode", "sum", "proj0", "proj1", "interval", "grid"}));
    encode->add_option("args", encode_args, "operands");

    auto* tree = app.add_subcommand("tree", "paths in a tree file");
    std::string tree_op, tree_file;
    std::optional<std::size_t> tree_depth;
    bool check_lpp = false;
    tree->add_option("op", tree_op, "path|longest|reduce|height")
        ->required()
        ->check(CLI::IsMember({"path", "longest", "reduce", "height"}));
    tree->add_option("file", tree_file, "tree JSON file")->required();
    tree->add_option("--depth", tree_depth, "search depth");
    tree->add_flag("--check-lpp", check_lpp, "assert the longest-path law by enumeration");

    std::string expr, eps, delta;
    std::size_t resolution = 0;
    auto* witness = app.add_subcommand("witness", "find a violating pair");
    witness->add_option("--expr", expr)->required();
    witness->add_option("--eps", eps)->required();
    witness->add_option("--delta", delta)->required();

    auto* modulus = app.add_subcommand("modulus", "extract a certified modulus");
    modulus->add_option("--expr", expr)->required();
    modulus->add_option("--eps", eps)->required();

    auto* verify = app.add_subcommand("verify", "check a candidate modulus");
    verify->add_option("--expr", expr)->required();
    verify->add_option("--eps", eps)->required();
    verify->add_option("--delta", delta)->required();
    verify->add_option("--resolution", resolution, "cover resolution exponent")->check(CLI::Range(1, 30));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        if (encode->parsed()) {
            return cmd_encode(run, encode_op, encode_args);
        }
        if (tree->parsed()) {
            return cmd_tree(run, tree_op, tree_file, tree_depth, check_lpp);
        }
        if (witness->parsed()) {
            return cmd_witness(run, expr, eps, delta);
        }
        if (modulus->parsed()) {
            return cmd_modulus(run, expr, eps);
        }
        if (verify->parsed()) {
            return cmd_verify(run, expr, eps, delta, resolution);
        }
    } catch (const uct::DepthExhausted& e) {
        std::cerr << "uct: " << e.what() << '\n';
        return kInconclusive;
    } catch (const uct::RefinementBudgetExceeded& e) {
        std::cerr << "uct: " << e.what() << '\n';
        return kInconclusive;
    } catch (const uct::Error& e) {
        std::cerr << "uct: " << e.what() << '\n';
        return kConfig;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "uct: " << e.what() << '\n';
        return kConfig;
    } catch (const std::exception& e) {
        std::cerr << "uct: " << e.what() << '\n';
        return kConfig;
    }
    return kConfig;
}
