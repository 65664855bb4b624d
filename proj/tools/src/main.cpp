#include "commands.hpp"

#include "irt/errors.hpp"

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"

namespace {

struct Flags {
    std::string config, roi, keep_frames, masks, out, input, preset;
    std::optional<std::size_t> phi, nos, workers, filter_order;
    std::optional<std::uint64_t> seed;
    std::optional<double> cutoff;
};

void add_common(CLI::App* sub, Flags& f, bool positional_input) {
    sub->add_option("--config", f.config, "JSON run config");
    sub->add_option("--roi", f.roi, "region of interest x0,y0,w,h");
    sub->add_option("--phi", f.phi, "number of intensity phases");
    sub->add_option("--nos", f.nos, "windows sampled per size");
    sub->add_option("--seed", f.seed, "random seed");
    sub->add_option("--keep-frames", f.keep_frames, "inclusive frame ranges a:b[,c:d]");
    sub->add_option("--masks", f.masks, "defect.pgm,reference.pgm");
    sub->add_option("--filter-order", f.filter_order, "Butterworth order");
    sub->add_option("--cutoff", f.cutoff, "low-pass cutoff as a fraction of Nyquist");
    sub->add_option("--workers", f.workers, "worker threads, 0 = all cores");
    sub->add_option("--out", f.out, "output directory");
    if (positional_input) sub->add_option("input", f.input, "input directory");
}

irt::cli::RunConfig resolve(const Flags& f, bool simulate) {
    using namespace irt;
    cli::RunConfig c;
    if (const char* env = std::getenv("IRT_RANK_WORKERS"); env && *env) {
        try {
            c.workers = std::stoul(env);
        } catch (const std::exception&) {
            throw ConfigError(std::string("IRT_RANK_WORKERS is not a number: ") + env);
        }
    }
    if (!f.config.empty()) {
        const auto env_workers = c.workers;
        c = cli::load_config(f.config);
        if (c.workers == 0) c.workers = env_workers;
    }
    if (simulate && !f.preset.empty()) {
        const auto seed = c.phantom.spec.seed;
        c.phantom = cli::preset_phantom(cli::parse_preset(f.preset));
        c.phantom.spec.seed = seed;
    }
    if (!f.input.empty()) c.input = f.input;
    if (!f.out.empty()) c.out = f.out;
    if (!f.roi.empty()) c.roi = parse_rect(f.roi);
    if (!f.keep_frames.empty()) c.keep_frames = parse_index_ranges(f.keep_frames);
    if (!f.masks.empty()) {
        const auto comma = f.masks.find(',');
        if (comma == std::string::npos) throw ConfigError("--masks expects defect.pgm,reference.pgm");
        c.masks = {f.masks.substr(0, comma), f.masks.substr(comma + 1)};
    }
    if (f.phi) {
        if (*f.phi < 2) throw ConfigError("--phi must be at least 2");
        c.rea.phi = *f.phi;
    }
    if (f.nos) {
        if (*f.nos == 0) throw ConfigError("--nos must be positive");
        c.rea.plan.nos_set = *f.nos;
    }
    if (f.seed) {
        c.rea.plan.seed = *f.seed;
        c.phantom.spec.seed = *f.seed;
    }
    if (f.filter_order) {
        if (*f.filter_order == 0) throw ConfigError("--filter-order must be positive");
        c.curves.filter_order = static_cast<int>(*f.filter_order);
    }
    if (f.cutoff) {
        if (!(*f.cutoff > 0.0 && *f.cutoff < 1.0)) throw ConfigError("--cutoff must lie in (0, 1)");
        c.curves.cutoff = *f.cutoff;
    }
    if (f.workers) c.workers = *f.workers;
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rank images of an infrared thermography sequence by their likelihood of showing anomalies"};
    app.require_subcommand(1);
    Flags f;
    auto* sim = app.add_subcommand("simulate", "write a synthetic multilayer phantom stack with masks");
    add_common(sim, f, false);
    sim->add_option("--preset", f.preset, "single, six_roi, none or custom");
    auto* ppt = app.add_subcommand("ppt", "pulse phase transform of a time stack");
    add_common(ppt, f, true);
    auto* rank = app.add_subcommand("rank", "metric curves, peak ranges and plots");
    add_common(rank, f, true);
    auto* report = app.add_subcommand("report", "overlay curve CSVs of a directory");
    add_common(report, f, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (sim->parsed()) {
            irt::cli::cmd_simulate(resolve(f, true), std::cout);
        } else if (ppt->parsed()) {
            irt::cli::cmd_ppt(resolve(f, false), std::cout);
        } else if (rank->parsed()) {
            irt::cli::cmd_rank(resolve(f, false), std::cout);
        } else if (report->parsed()) {
            irt::cli::cmd_report(resolve(f, false), std::cout);
        }
    } catch (const irt::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const irt::DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 3;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 3;
    } catch (const irt::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
