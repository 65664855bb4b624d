#include "commands.hpp"

#include "irt/errors.hpp"
#include "irt/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace irt::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void write_json(const fs::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

void make_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw DataError("cannot create " + dir.string() + ": " + ec.message());
}

Sequence load_input(const RunConfig& cfg) {
    if (cfg.input.empty()) throw ConfigError("no input stack given");
    Sequence seq = load_sequence(cfg.input);
    if (cfg.roi) {
        if (!cfg.roi->fits(seq.width(), seq.height()))
            throw ConfigError("roi " + format_rect(*cfg.roi) + " does not fit a " + std::to_string(seq.width()) + "x" +
                              std::to_string(seq.height()) + " stack");
        seq = crop_roi(seq, *cfg.roi);
    }
    if (!cfg.keep_frames.empty()) seq = exclude_frames(seq, cfg.keep_frames);
    return seq;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_truth_csv(const fs::path& path, const Phantom& ph, const std::vector<double>& times) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    out << "index,time,reference";
    for (std::size_t d = 0; d < ph.defect_responses.size(); ++d) out << ",defect_" << d + 1 << ",delta_" << d + 1;
    out << '\n';
    for (std::size_t i = 0; i < times.size(); ++i) {
        out << i << ',' << fmt(times[i]) << ',' << fmt(ph.reference_response[i]);
        for (const auto& r : ph.defect_responses) out << ',' << fmt(r[i]) << ',' << fmt(r[i] - ph.reference_response[i]);
        out << '\n';
    }
}

void write_phantom(const PhantomSpec& spec, const fs::path& dir) {
    const Phantom ph = generate_phantom(spec);
    make_dir(dir);
    save_sequence(ph.sequence, dir / "stack");
    save_mask_pgm(ph.defect, dir / "defect.pgm");
    save_mask_pgm(ph.reference, dir / "reference.pgm");
    write_truth_csv(dir / "truth.csv", ph, spec.frame_times());
}

json peaks_json(const std::vector<PeakRange>& peaks, const MetricCurve& c) {
    json arr = json::array();
    for (const auto& p : peaks)
        arr.push_back({{"first", p.first},
                       {"last", p.last},
                       {"peak", p.peak},
                       {"axis_first", c.axis_values[p.first]},
                       {"axis_last", c.axis_values[p.last]},
                       {"axis_peak", c.axis_values[p.peak]},
                       {"value", p.value},
                       {"prominence", p.prominence},
                       {"global", p.is_global}});
    return arr;
}

}  // namespace

bool fill_non_finite(std::vector<double>& v) {
    double lo = std::numeric_limits<double>::infinity();
    for (double x : v)
        if (std::isfinite(x)) lo = std::min(lo, x);
    if (!std::isfinite(lo)) return false;
    for (double& x : v)
        if (!std::isfinite(x)) x = lo;
    return true;
}

MetricSummary summarize(const MetricCurve& raw, const CurveConfig& cfg) {
    MetricSummary s;
    s.name = raw.name;
    s.raw = raw;
    MetricCurve work = raw;
    if (!fill_non_finite(work.values)) return s;
    s.filtered = butterworth_lowpass(work, cfg.filter_order, cfg.cutoff);
    s.normalized = normalize01(s.filtered);
    s.peaks = find_max_ranges(s.normalized, cfg.prominence, cfg.top_k);
    return s;
}

RankResult rank_sequence(const Sequence& input, const Mask* defect, const Mask* reference, const RunConfig& cfg) {
    Sequence seq = input;
    if (cfg.background_filter) {
        std::vector<Frame> frames(input.n_frames());
        parallel_for(frames.size(), cfg.workers, [&](std::size_t i) {
            const Frame& f = input.frame(i);
            frames[i] = subtract_background(f, fit_quadratic_background(f));
        });
        seq = Sequence(std::move(frames), input.axis_kind(), input.axis_values());
    }

    RankResult out;
    const auto wants = [&](const char* m) {
        return std::find(cfg.metrics.begin(), cfg.metrics.end(), m) != cfg.metrics.end();
    };
    if (wants("HI")) {
        HIConfig h = cfg.hi;
        h.seed = cfg.rea.plan.seed;
        out.metrics.push_back(summarize(hi_curve(seq, h, cfg.workers), cfg.curves));
    }
    if (wants("TVE") || wants("REA")) {
        auto [tve, rea] = rea_tve_curve(seq, cfg.rea, cfg.workers);
        if (wants("TVE")) out.metrics.push_back(summarize(tve, cfg.curves));
        if (wants("REA")) out.metrics.push_back(summarize(rea, cfg.curves));
    }
    if (defect && reference) {
        auto [snr_c, tc] = reference_curves(seq, *defect, *reference, cfg.detector, false, cfg.workers);
        out.metrics.push_back(summarize(snr_c, cfg.curves));
        out.metrics.push_back(summarize(tc, cfg.curves));
    }

    std::vector<const PeakRange*> globals;
    for (const auto& m : out.metrics)
        for (const auto& p : m.peaks)
            if (p.is_global) globals.push_back(&p);
    out.all_global_overlap = !globals.empty();
    for (std::size_t i = 0; i < globals.size(); ++i)
        for (std::size_t j = i + 1; j < globals.size(); ++j)
            if (!ranges_overlap(*globals[i], *globals[j])) out.all_global_overlap = false;
    return out;
}

void cmd_simulate(const RunConfig& cfg, std::ostream& log) {
    const fs::path out = cfg.out;
    make_dir(out);
    const auto& pc = cfg.phantom;
    validate(pc.spec);
    if (pc.batch_depths.empty()) {
        write_phantom(pc.spec, out);
        log << "wrote " << pc.spec.width << "x" << pc.spec.height << "x" << pc.spec.n_frames() << " phantom with "
            << pc.spec.defects.size() << " defect(s) to " << out.string() << '\n';
    } else {
        if (pc.spec.defects.empty()) throw ConfigError("phantom.batch_depths needs a defect template in phantom.defects");
        for (std::size_t k = 0; k < pc.batch_depths.size(); ++k) {
            PhantomSpec s = pc.spec;
            s.defects.resize(1);
            s.defects[0].depth = pc.batch_depths[k];
            s.seed = derive_seed(pc.spec.seed, k);
            validate(s);
            const auto dir = out / ("roi_" + std::to_string(k + 1));
            write_phantom(s, dir);
            log << "wrote " << dir.string() << " (defect depth " << pc.batch_depths[k] * 1e3 << " mm)\n";
        }
    }
    write_json(out / "effective_config.json", effective_config(cfg));
}

void cmd_ppt(const RunConfig& cfg, std::ostream& log) {
    const Sequence seq = load_input(cfg);
    const SpectralPair sp = ppt_transform(seq, cfg.ppt_method);
    const fs::path out = cfg.out;
    make_dir(out);
    save_sequence(sp.amplitude, out / "amplitude");
    save_sequence(sp.phase, out / "phase");
    write_json(out / "effective_config.json", effective_config(cfg));
    log << "wrote " << sp.frequencies.size() << " amplitude and phase images (0 .. " << sp.frequencies.back()
        << " Hz) to " << out.string() << '\n';
}

RankResult cmd_rank(const RunConfig& cfg, std::ostream& log) {
    const Sequence seq = load_input(cfg);
    std::optional<Mask> defect, reference;
    if (cfg.masks) {
        defect = load_mask_pgm(cfg.masks->first);
        reference = load_mask_pgm(cfg.masks->second);
        if (cfg.roi) {
            if (!cfg.roi->fits(defect->width(), defect->height()) || !cfg.roi->fits(reference->width(), reference->height()))
                throw ConfigError("roi does not fit the masks");
            defect = crop_mask(*defect, *cfg.roi);
            reference = crop_mask(*reference, *cfg.roi);
        }
        if (defect->width() != seq.width() || defect->height() != seq.height() ||
            reference->width() != seq.width() || reference->height() != seq.height())
            throw DataError("mask size does not match the stack");
    }

    const RankResult res = rank_sequence(seq, defect ? &*defect : nullptr, reference ? &*reference : nullptr, cfg);
    if (!cfg.masks) log << "note: no masks given, SNR and TC are not computed\n";

    const fs::path out = cfg.out;
    make_dir(out);
    json report;
    report["axis_kind"] = std::string(to_string(seq.axis_kind()));
    report["frames"] = seq.n_frames();
    std::vector<SvgSeries> series;
    for (std::size_t i = 0; i < res.metrics.size(); ++i) {
        const auto& m = res.metrics[i];
        const bool has = !m.normalized.values.empty();
        write_curve_csv(out / (m.name + ".csv"), m.raw, has ? &m.filtered : nullptr, has ? &m.normalized : nullptr);
        report["metrics"][m.name] = has ? peaks_json(m.peaks, m.normalized) : json::array();
        if (!has) {
            log << "note: " << m.name << " has no finite values\n";
            continue;
        }
        SvgSeries s;
        s.name = m.name;
        s.x.assign(m.normalized.indices.begin(), m.normalized.indices.end());
        s.y = m.normalized.values;
        s.color = palette_color(i);
        s.dashed = m.name == "SNR" || m.name == "TC";
        s.bars = m.peaks;
        series.push_back(std::move(s));

        log << m.name << ":";
        if (m.peaks.empty()) log << " no peaks";
        for (const auto& p : m.peaks)
            log << " [" << p.first << ".." << p.last << " peak " << p.peak << (p.is_global ? " global" : "") << "]";
        log << '\n';
    }
    json overlap = json::object();
    for (const auto& a : res.metrics)
        for (const auto& b : res.metrics) {
            if (&a >= &b || a.peaks.empty() || b.peaks.empty()) continue;
            overlap[a.name + "/" + b.name] = ranges_overlap(a.peaks.front(), b.peaks.front());
        }
    report["global_overlap"] = overlap;
    report["all_global_overlap"] = res.all_global_overlap;
    write_json(out / "peaks.json", report);
    write_svg_plot(out / "curves.svg", "Metric curves (filtered, normalized)", "sequence index", series);
    write_json(out / "effective_config.json", effective_config(cfg));
    log << "global peak ranges " << (res.all_global_overlap ? "overlap" : "do not all overlap") << '\n';
    return res;
}

namespace {

std::vector<fs::path> csv_files(const fs::path& dir) {
    std::vector<fs::path> out;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".csv") out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

void overlay(const std::vector<fs::path>& files, const fs::path& svg, const fs::path& csv, const std::string& title,
             const CurveConfig& cc) {
    std::vector<CurveTable> tables;
    for (const auto& f : files) tables.push_back(read_curve_csv(f));
    std::vector<SvgSeries> series;
    std::size_t rows = 0;
    for (std::size_t i = 0; i < tables.size(); ++i) {
        const auto& t = tables[i];
        MetricCurve c;
        c.name = t.name;
        c.indices = t.indices;
        c.axis_values = t.axis_values;
        c.values = t.normalized.empty() ? t.raw : t.normalized;
        if (!fill_non_finite(c.values)) continue;
        if (t.normalized.empty()) c = normalize01(c);
        SvgSeries s;
        s.name = t.name;
        s.x.assign(c.indices.begin(), c.indices.end());
        s.y = c.values;
        s.color = palette_color(i);
        s.dashed = t.name == "SNR" || t.name == "TC";
        s.bars = find_max_ranges(c, cc.prominence, 1);
        series.push_back(std::move(s));
        rows = std::max(rows, c.size());
    }
    write_svg_plot(svg, title, "sequence index", series);

    std::ofstream out(csv);
    if (!out) throw DataError("cannot write " + csv.string());
    out << "row";
    for (const auto& s : series) out << ',' << s.name;
    out << '\n';
    for (std::size_t r = 0; r < rows; ++r) {
        out << r;
        for (const auto& s : series) {
            out << ',';
            if (r < s.y.size()) out << fmt(s.y[r]);
        }
        out << '\n';
    }
}

}  // namespace

void cmd_report(const RunConfig& cfg, std::ostream& log) {
    if (cfg.input.empty()) throw ConfigError("no curves directory given");
    const fs::path in = cfg.input;
    if (!fs::is_directory(in)) throw DataError(in.string() + " is not a directory");
    const fs::path out = cfg.out;

    const auto here = csv_files(in);
    if (!here.empty()) {
        make_dir(out);
        overlay(here, out / "report.svg", out / "report.csv", in.filename().string(), cfg.curves);
        log << "wrote overlay of " << here.size() << " curve(s) to " << (out / "report.svg").string() << '\n';
        return;
    }
    std::vector<fs::path> subdirs;
    for (const auto& e : fs::directory_iterator(in))
        if (e.is_directory() && !csv_files(e.path()).empty()) subdirs.push_back(e.path());
    std::sort(subdirs.begin(), subdirs.end());
    if (subdirs.empty()) throw DataError(in.string() + " holds no curve CSV files");
    make_dir(out);
    for (const auto& d : subdirs) {
        const auto name = d.filename().string();
        overlay(csv_files(d), out / (name + ".svg"), out / (name + ".csv"), name, cfg.curves);
    }
    log << "wrote " << subdirs.size() << " overlay(s) to " << out.string() << '\n';
}

}  // namespace irt::cli
