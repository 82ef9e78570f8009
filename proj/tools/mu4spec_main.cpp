// Command line front end. Builds a JSON request from flags, hands it to the
// shared library through the C interface, and prints the reply (JSON, or CSV
// for grid reports). Exit codes: 0 success, 2 usage error, 3 input
// validation error. Mathematical verdicts never drive the exit code; the
// one exception is `regress`, which exits 1 when a criterion fails.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mu4spec.h"

namespace {

using json = nlohmann::ordered_json;

struct CommonOpts {
    std::string out_path;
    std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOpts& common) {
    cmd->add_option("--out", common.out_path, "write the report to a file instead of stdout");
    cmd->add_option("--format", common.format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
}

std::string run_or_die(const json& request) {
    char* reply = nullptr;
    mu4spec_status st = mu4spec_run(request.dump().c_str(), &reply);
    if (st != MU4SPEC_OK) {
        std::cerr << "error: " << mu4spec_last_error() << "\n";
        std::exit(st == MU4SPEC_ERR_INTERNAL ? 1 : 3);
    }
    std::string out(reply);
    mu4spec_string_free(reply);
    return out;
}

std::string to_csv(const json& reply) {
    // CSV export is defined for grid reports: (xi, Q) columns.
    if (!reply.contains("grid") || !reply.contains("Q"))
        throw CLI::ValidationError("--format csv", "csv output needs a grid report");
    std::ostringstream os;
    os << "xi,Q\n";
    const auto& grid = reply.at("grid");
    const auto& q = reply.at("Q");
    char buf[80];
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.12g,%.12g\n", grid[i].get<double>(),
                      q[i].get<double>());
        os << buf;
    }
    return os.str();
}

int emit(const std::string& reply_text, const CommonOpts& common) {
    std::string body = reply_text;
    if (common.format == "csv") {
        json reply = json::parse(reply_text);
        body = to_csv(reply);
    }
    if (!body.empty() && body.back() != '\n') body += '\n';
    if (common.out_path.empty()) {
        std::cout << body;
    } else {
        std::ofstream f(common.out_path, std::ios::binary);
        if (!f) {
            std::cerr << "error: cannot open " << common.out_path << "\n";
            return 3;
        }
        f << body;
    }
    return 0;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw CLI::ValidationError("--label-file", "cannot read " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

struct SelectorOpts {
    std::string set = "canonical";
    std::string p = "1";
    std::string label;
    std::string label_file;
    int r = 1;
    std::string free_mode = "c0";
};

void add_selector(CLI::App* cmd, SelectorOpts& sel) {
    cmd->add_option("--set", sel.set, "canonical | scaled | label | thm47 | gamma")
        ->check(CLI::IsMember({"canonical", "scaled", "label", "thm47", "gamma"}));
    cmd->add_option("--p", sel.p, "odd scaling factor (scaled, thm47)");
    cmd->add_option("--label", sel.label, "inline level label, e.g. \"(3)\"");
    cmd->add_option("--label-file", sel.label_file, "label file path");
    cmd->add_option("--r", sel.r, "forced-position spacing (gamma)");
    cmd->add_option("--free", sel.free_mode, "free digit rule for gamma: c0|c1|alternate")
        ->check(CLI::IsMember({"c0", "c1", "alternate"}));
}

json selector_json(const SelectorOpts& sel) {
    json j;
    j["kind"] = sel.set;
    if (sel.set == "scaled" || sel.set == "thm47") j["p"] = sel.p;
    if (sel.set == "label") {
        if (!sel.label_file.empty())
            j["label"] = slurp(sel.label_file);
        else
            j["label"] = sel.label;
    }
    if (sel.set == "gamma") {
        j["r"] = sel.r;
        j["free"] = sel.free_mode;
    }
    return j;
}

std::string label_argument(const std::string& label, const std::string& label_file) {
    if (!label_file.empty()) return slurp(label_file);
    return label;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact and numerical spectra toolkit for the middle-fourth Cantor measure"};
    app.require_subcommand(1);

    CommonOpts common;
    json request;
    bool regress_mode = false;

    // ---- adic ----
    auto* adic = app.add_subcommand("adic", "exact arithmetic on eventually periodic words");
    adic->require_subcommand(1);
    {
        static long long m = 4;
        static std::string w, w1, w2, a, lambda;
        static long long n = 1, s = 1, p = 1, depth = 8;
        static std::vector<std::string> terms;

        auto add_m = [&](CLI::App* c) { c->add_option("--m", m, "alphabet size (default 4)"); };

        auto* c_add = adic->add_subcommand("add", "componentwise sum with carries");
        c_add->add_option("--w1", w1)->required();
        c_add->add_option("--w2", w2)->required();
        add_m(c_add);
        add_common(c_add, common);
        c_add->callback([&] {
            request = {{"op", "adic.add"}, {"m", m}, {"w1", w1}, {"w2", w2}};
        });

        auto* c_sub = adic->add_subcommand("sub", "difference");
        c_sub->add_option("--w1", w1)->required();
        c_sub->add_option("--w2", w2)->required();
        add_m(c_sub);
        add_common(c_sub, common);
        c_sub->callback([&] {
            request = {{"op", "adic.sub"}, {"m", m}, {"w1", w1}, {"w2", w2}};
        });

        auto* c_neg = adic->add_subcommand("negate", "additive inverse");
        c_neg->add_option("--w", w)->required();
        add_m(c_neg);
        add_common(c_neg, common);
        c_neg->callback([&] { request = {{"op", "adic.negate"}, {"m", m}, {"w", w}}; });

        auto* c_mul = adic->add_subcommand("mul", "scalar product a * w");
        c_mul->add_option("--a", a)->required();
        c_mul->add_option("--w", w)->required();
        add_m(c_mul);
        add_common(c_mul, common);
        c_mul->callback([&] {
            request = {{"op", "adic.mul"}, {"m", m}, {"a", a}, {"w", w}};
        });

        auto* c_div = adic->add_subcommand("div", "exact quotient w / a, gcd(a, m) = 1");
        c_div->add_option("--a", a)->required();
        c_div->add_option("--w", w)->required();
        add_m(c_div);
        add_common(c_div, common);
        c_div->callback([&] {
            request = {{"op", "adic.div"}, {"m", m}, {"a", a}, {"w", w}};
        });

        auto* c_rho = adic->add_subcommand("rho", "ultrametric distance");
        c_rho->add_option("--w1", w1)->required();
        c_rho->add_option("--w2", w2)->required();
        add_m(c_rho);
        add_common(c_rho, common);
        c_rho->callback([&] {
            request = {{"op", "adic.rho"}, {"m", m}, {"w1", w1}, {"w2", w2}};
        });

        auto* c_rec = adic->add_subcommand("recode", "group s digits into one base-m^s digit");
        c_rec->add_option("--s", s)->required();
        c_rec->add_option("--w", w)->required();
        add_m(c_rec);
        add_common(c_rec, common);
        c_rec->callback([&] {
            request = {{"op", "adic.recode"}, {"m", m}, {"s", s}, {"w", w}};
        });

        auto* c_dec = adic->add_subcommand("decode", "split base-m^s digits back to base m");
        c_dec->add_option("--s", s)->required();
        c_dec->add_option("--w", w)->required();
        add_m(c_dec);
        add_common(c_dec, common);
        c_dec->callback([&] {
            request = {{"op", "adic.decode"}, {"m", m}, {"s", s}, {"w", w}};
        });

        auto* c_from = adic->add_subcommand("from-int", "base-m expansion of an integer");
        c_from->add_option("--lambda", lambda)->required();
        add_m(c_from);
        add_common(c_from, common);
        c_from->callback([&] {
            request = {{"op", "adic.from_int"}, {"m", m}, {"lambda", lambda}};
        });

        auto* c_to = adic->add_subcommand("to-int", "integer value of a word, when defined");
        c_to->add_option("--w", w)->required();
        add_m(c_to);
        add_common(c_to, common);
        c_to->callback([&] { request = {{"op", "adic.to_int"}, {"m", m}, {"w", w}}; });

        auto* c_dig = adic->add_subcommand("digit", "n-th expansion digit of an integer");
        c_dig->add_option("--lambda", lambda)->required();
        c_dig->add_option("--n", n)->required();
        add_m(c_dig);
        add_common(c_dig, common);
        c_dig->callback([&] {
            request = {{"op", "adic.digit"}, {"m", m}, {"lambda", lambda}, {"n", n}};
        });

        auto* c_ser = adic->add_subcommand("series", "digit stream of sum 4^(k-1) * term_k");
        c_ser->add_option("--terms", terms, "integer terms")->required()->delimiter(',');
        c_ser->add_option("--depth", depth)->required();
        add_common(c_ser, common);
        c_ser->callback([&] {
            json ts = json::array();
            for (auto& t : terms) ts.push_back(t);
            request = {{"op", "adic.series"}, {"terms", ts}, {"depth", depth}};
        });

        auto* c_hp = adic->add_subcommand("hp", "transform of a {-p,0,p} digit stream");
        c_hp->add_option("--p", p)->required();
        c_hp->add_option("--w", w, "omega word over {-p,0,p}")->required();
        c_hp->add_option("--depth", depth)->required();
        add_common(c_hp, common);
        c_hp->callback([&] {
            request = {{"op", "adic.hp"}, {"p", p}, {"omega", w}, {"depth", depth}};
        });
    }

    // ---- construct ----
    auto* construct = app.add_subcommand("construct", "frequency sets and labels");
    construct->require_subcommand(1);
    {
        static SelectorOpts sel;
        static std::string label, label_file, bound = "16", digits;
        static long long depth = 4, p = 1;
        static int r = 1;
        static std::string free_mode = "c0";

        auto* c_lambda = construct->add_subcommand("lambda", "enumerate a frequency set");
        add_selector(c_lambda, sel);
        c_lambda->add_option("--depth", depth)->required();
        add_common(c_lambda, common);
        c_lambda->callback([&] {
            request = {{"op", "construct.lambda"},
                       {"selector", selector_json(sel)},
                       {"depth", depth}};
        });

        auto* c_gen = construct->add_subcommand("lambda-general",
                                                "enumerate a general tree-label prefix");
        c_gen->add_option("--label-file", label_file)->required();
        c_gen->add_option("--depth", depth);
        add_common(c_gen, common);
        c_gen->callback([&] {
            request = {{"op", "construct.lambda_general"}, {"file", slurp(label_file)}};
            if (c_gen->count("--depth")) request["depth"] = depth;
        });

        auto* c_li = construct->add_subcommand(
            "lambda-i", "all integers in [-bound, bound] meeting every congruence");
        c_li->add_option("--label", label);
        c_li->add_option("--label-file", label_file);
        c_li->add_option("--bound", bound)->required();
        add_common(c_li, common);
        c_li->callback([&] {
            request = {{"op", "construct.lambda_i"},
                       {"label", label_argument(label, label_file)},
                       {"bound", bound}};
        });

        auto* c_47 = construct->add_subcommand("thm47", "growing-blocks label digits");
        c_47->add_option("--p", p)->required();
        c_47->add_option("--depth", depth)->required();
        add_common(c_47, common);
        c_47->callback([&] {
            request = {{"op", "construct.thm47"}, {"p", p}, {"depth", depth}};
        });

        auto* c_gamma = construct->add_subcommand("gamma", "forced-period label digits");
        c_gamma->add_option("--r", r)->required();
        c_gamma->add_option("--free", free_mode)
            ->check(CLI::IsMember({"c0", "c1", "alternate"}));
        c_gamma->add_option("--depth", depth)->required();
        add_common(c_gamma, common);
        c_gamma->callback([&] {
            request = {{"op", "construct.gamma"},
                       {"r", r},
                       {"free", free_mode},
                       {"depth", depth}};
        });

        auto* c_val = construct->add_subcommand("validate", "digit set validation report");
        c_val->add_option("--digits", digits)->required();
        add_common(c_val, common);
        c_val->callback([&] {
            request = {{"op", "construct.validate"}, {"digits", digits}};
        });
    }

    // ---- decide ----
    auto* decide = app.add_subcommand("decide", "exact spectrality decisions");
    decide->require_subcommand(1);
    {
        static std::string digits, label, label_file, lambda, p = "1";
        static long long bound = 8;

        auto* c_ex = decide->add_subcommand(
            "exists", "does any label over C admit an infinite expansion?");
        c_ex->add_option("--digits", digits)->required();
        add_common(c_ex, common);
        c_ex->callback([&] { request = {{"op", "decide.exists"}, {"digits", digits}}; });

        auto* c_lab = decide->add_subcommand("label", "classify one integer against a label");
        c_lab->add_option("--label", label);
        c_lab->add_option("--label-file", label_file);
        c_lab->add_option("--lambda", lambda)->required();
        add_common(c_lab, common);
        c_lab->callback([&] {
            request = {{"op", "decide.label"},
                       {"label", label_argument(label, label_file)},
                       {"lambda", lambda}};
        });

        auto* c_spec = decide->add_subcommand("spectrum", "is the labelled set a spectrum?");
        c_spec->add_option("--label", label);
        c_spec->add_option("--label-file", label_file);
        add_common(c_spec, common);
        c_spec->callback([&] {
            request = {{"op", "decide.spectrum"},
                       {"label", label_argument(label, label_file)}};
        });

        auto* c_game = decide->add_subcommand(
            "game", "universal game: does every label fail?");
        c_game->add_option("--digits", digits)->required();
        add_common(c_game, common);
        c_game->callback([&] { request = {{"op", "decide.game"}, {"digits", digits}}; });

        auto* c_47 = decide->add_subcommand("thm47", "growing-blocks spectrality check");
        c_47->add_option("--p", p)->required();
        c_47->add_option("--bound", bound, "cycle length bound (default 8)");
        add_common(c_47, common);
        c_47->callback([&] {
            request = {{"op", "decide.thm47"}, {"p", p}, {"bound", bound}};
        });
    }

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "transform, orthogonality and frame checks");
    verify->require_subcommand(1);
    {
        static SelectorOpts sel;
        static double xi = 0.0;
        static long long terms = 25, grid = 256, depth = 8;
        static std::string z;
        static std::vector<long long> checkpoints;

        auto* c_mu = verify->add_subcommand("muhat", "truncated transform value");
        c_mu->add_option("--xi", xi)->required();
        c_mu->add_option("--terms", terms);
        add_common(c_mu, common);
        c_mu->callback([&] {
            request = {{"op", "verify.muhat"}, {"xi", xi}, {"terms", terms}};
        });

        auto* c_zero = verify->add_subcommand("zero", "exact zero-set membership");
        c_zero->add_option("--lambda", z, "nonzero integer")->required();
        add_common(c_zero, common);
        c_zero->callback([&] { request = {{"op", "verify.zero"}, {"z", z}}; });

        auto* c_orth = verify->add_subcommand("orth", "pairwise orthogonality");
        add_selector(c_orth, sel);
        c_orth->add_option("--depth", depth)->required();
        add_common(c_orth, common);
        c_orth->callback([&] {
            request = {{"op", "verify.orthogonality"},
                       {"selector", selector_json(sel)},
                       {"depth", depth}};
        });

        auto* c_frame = verify->add_subcommand("frame", "frame function on a grid");
        add_selector(c_frame, sel);
        c_frame->add_option("--depth", depth)->required();
        c_frame->add_option("--terms", terms);
        c_frame->add_option("--grid", grid);
        c_frame->add_option("--checkpoints", checkpoints)->delimiter(',');
        add_common(c_frame, common);
        c_frame->callback([&] {
            request = {{"op", "verify.frame"},
                       {"selector", selector_json(sel)},
                       {"depth", depth},
                       {"terms", terms},
                       {"grid", grid}};
            if (!checkpoints.empty()) request["checkpoints"] = checkpoints;
        });

        auto* c_rep = verify->add_subcommand(
            "report", "combined exact decision + numeric diagnostics");
        add_selector(c_rep, sel);
        c_rep->add_option("--depth", depth)->required();
        c_rep->add_option("--terms", terms);
        c_rep->add_option("--grid", grid);
        add_common(c_rep, common);
        c_rep->callback([&] {
            request = {{"op", "verify.report"},
                       {"selector", selector_json(sel)},
                       {"depth", depth},
                       {"terms", terms},
                       {"grid", grid}};
        });
    }

    // ---- measure ----
    auto* measure = app.add_subcommand("measure", "label-measure of surviving expansions");
    measure->require_subcommand(1);
    {
        static std::string digits, lambda;
        static long long depth = 8, samples = 100000, seed = 0;

        auto* c_decay = measure->add_subcommand("decay", "exact surviving measure");
        c_decay->add_option("--digits", digits)->required();
        c_decay->add_option("--lambda", lambda)->required();
        c_decay->add_option("--depth", depth)->required();
        add_common(c_decay, common);
        c_decay->callback([&] {
            request = {{"op", "measure.decay"},
                       {"digits", digits},
                       {"lambda", lambda},
                       {"depth", depth}};
        });

        auto* c_sample = measure->add_subcommand("sample", "Monte Carlo estimate");
        c_sample->add_option("--digits", digits)->required();
        c_sample->add_option("--lambda", lambda)->required();
        c_sample->add_option("--depth", depth)->required();
        c_sample->add_option("--samples", samples);
        c_sample->add_option("--seed", seed, "RNG seed (default 0, echoed in the report)");
        add_common(c_sample, common);
        c_sample->callback([&] {
            request = {{"op", "measure.sample"}, {"digits", digits},
                       {"lambda", lambda},      {"depth", depth},
                       {"samples", samples},    {"seed", seed}};
        });
    }

    // ---- regress ----
    {
        static std::string filter;
        auto* c_reg = app.add_subcommand("regress", "run the pinned regression suite");
        c_reg->add_option("--filter", filter, "only criteria whose name contains this");
        add_common(c_reg, common);
        c_reg->callback([&] {
            request = {{"op", "regress"}};
            if (!filter.empty()) request["filter"] = filter;
            regress_mode = true;
        });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        std::string reply = run_or_die(request);
        int rc = emit(reply, common);
        if (rc != 0) return rc;
        if (regress_mode) {
            json parsed = json::parse(reply);
            if (!parsed.value("all_pass", false)) return 1;
        }
        return 0;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
