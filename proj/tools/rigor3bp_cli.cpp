// Command line driver: re-runs the verification lemmas individually or as a
// whole, writes the deterministic report and optional CSV enclosure dumps,
// and supports parameter experiments through overrides.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rigor3bp/pipeline.hpp"

namespace {

using namespace rigor3bp;

// Apply "rel.field=value" to the stored parameters.  Accepts the qualified
// run fields (vertical.grid, horizontal.step, ...), the scalar fields
// (mono_grid, mono_order, mono_step, center_order, center_step, t0,
// crossings), and the shorthands order/step/grid that retune the whole
// relation while keeping step signs.
bool apply_override(ProofData& data, const std::string& text, std::string& err) {
    const auto eq = text.find('=');
    const auto arrow = text.find("=>");
    // The relation name itself contains "=>"; the assignment is the first
    // '=' that is not part of it.
    std::size_t assign = std::string::npos;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '=') continue;
        if (i + 1 < text.size() && text[i + 1] == '>') {
            ++i;
            continue;
        }
        assign = i;
        break;
    }
    (void)eq;
    (void)arrow;
    if (assign == std::string::npos) {
        err = "override needs rel.field=value: " + text;
        return false;
    }
    const std::string lhs = text.substr(0, assign);
    const std::string value = text.substr(assign + 1);
    const auto dot = lhs.find('.');
    if (dot == std::string::npos) {
        err = "override needs rel.field=value: " + text;
        return false;
    }
    const std::string rel = lhs.substr(0, dot);
    const std::string field = lhs.substr(dot + 1);

    RelationSpec* spec = data.find_relation(rel);
    if (!spec) {
        err = "unknown relation: " + rel;
        return false;
    }

    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0') {
        err = "bad numeric value: " + value;
        return false;
    }
    const int vi = static_cast<int>(v);
    CheckParams& p = spec->params;

    if (field == "vertical.grid") p.vertical.grid = vi;
    else if (field == "vertical.order") p.vertical.order = vi;
    else if (field == "vertical.step") p.vertical.step = v;
    else if (field == "horizontal.grid") p.horizontal.grid = vi;
    else if (field == "horizontal.order") p.horizontal.order = vi;
    else if (field == "horizontal.step") p.horizontal.step = v;
    else if (field == "mono_grid") p.mono_grid = vi;
    else if (field == "mono_order") p.mono_order = vi;
    else if (field == "mono_step") p.mono_step = v;
    else if (field == "center_order") p.center_order = vi;
    else if (field == "center_step") p.center_step = v;
    else if (field == "t0") p.t0 = v;
    else if (field == "crossings") spec->crossings = vi;
    else if (field == "order") {
        p.vertical.order = p.horizontal.order = vi;
        p.mono_order = p.center_order = vi;
    } else if (field == "grid") {
        p.vertical.grid = p.horizontal.grid = p.mono_grid = vi;
    } else if (field == "step") {
        const double m = std::fabs(v);
        p.vertical.step = std::copysign(m, p.vertical.step);
        p.horizontal.step = std::copysign(m, p.horizontal.step);
        p.mono_step = m;
        p.center_step = m;
    } else {
        err = "unknown field: " + field;
        return false;
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rigorous verification of connecting orbits and symbolic dynamics"};
    app.require_subcommand(1);

    std::string selector;
    std::string report_path, plot_dir;
    std::vector<std::string> overrides;
    VerifyConfig cfg;
    ProofOptions options;
    int order = 0, grid = 0, threads = 1;
    double step = 0.0;
    bool dump = false;

    CLI::App* verify = app.add_subcommand("verify", "run verification lemmas");
    verify->add_option("selector", selector,
                       "lyapunov|dp|heteroclinic|exterior|interior|hyperbolic|all")
        ->required();
    verify->add_option("--order", order, "override every integrator order");
    verify->add_option("--step", step, "override step magnitudes (signs kept)");
    verify->add_option("--grid", grid, "override subdivision counts");
    verify->add_option("--report", report_path, "write the report to this file");
    verify->add_option("--plot-dir", plot_dir, "write CSV enclosure dumps here");
    verify->add_option("--threads", threads, "parallelism budget");
    verify->add_flag("--auto-refine", cfg.auto_refine,
                     "retry failed relations with doubled grids");
    verify->add_flag("--dump-params", dump, "print stored parameters and exit");
    verify->add_option("--override", overrides, "rel.field=value parameter override");
    verify->add_option("--h2-stable-scale", options.h2_stable_scale,
                       "stable-direction scale of the large set at the second orbit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const auto& ids = ProofPipeline::lemma_ids();
    const bool known = selector == "all" ||
                       std::find(ids.begin(), ids.end(), selector) != ids.end();
    if (!known) {
        std::cerr << "unknown selector: " << selector << "\n";
        return 2;
    }

    ProofData data(options);
    for (const auto& o : overrides) {
        std::string err;
        if (!apply_override(data, o, err)) {
            std::cerr << err << "\n";
            return 2;
        }
    }

    if (dump) {
        dump_params(std::cout, data);
        return 0;
    }

    if (order > 0) cfg.order = order;
    if (step != 0.0) cfg.step = step;
    if (grid > 0) cfg.grid = grid;
    cfg.threads = threads;
    cfg.plot_dir = plot_dir;
    cfg.log = &std::cerr;

    bool ok = false;
    std::ostringstream report;
    if (selector == "all") {
        ProofPipeline pipe(std::move(data), cfg);
        const Certificate cert = pipe.run_all();
        write_report(report, cert);
        ok = cert.all_verified;
    } else {
        ProofPipeline pipe(std::move(data), cfg);
        const LemmaReport lemma = pipe.run_lemma(selector);
        write_report(report, {lemma}, nullptr);
        ok = lemma.verified;
    }

    if (!report_path.empty()) {
        std::ofstream out(report_path);
        if (!out) {
            std::cerr << "cannot write report to " << report_path << "\n";
            return 2;
        }
        out << report.str();
        std::cout << "RESULT " << (ok ? "Verified" : "Failed") << " (report: " << report_path
                  << ")\n";
    } else {
        std::cout << report.str();
    }
    return ok ? 0 : 1;
}
