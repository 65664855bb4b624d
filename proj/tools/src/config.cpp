#include "config.hpp"

#include "irt/errors.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace irt::cli {

using nlohmann::json;

std::string_view to_string(PhantomPreset p) {
    switch (p) {
        case PhantomPreset::single: return "single";
        case PhantomPreset::six_roi: return "six_roi";
        case PhantomPreset::none: return "none";
        case PhantomPreset::custom: return "custom";
    }
    return "custom";
}

PhantomPreset parse_preset(std::string_view text) {
    if (text == "single") return PhantomPreset::single;
    if (text == "six_roi") return PhantomPreset::six_roi;
    if (text == "none") return PhantomPreset::none;
    if (text == "custom") return PhantomPreset::custom;
    throw ConfigError("unknown phantom preset '" + std::string(text) + "' (expected single, six_roi, none or custom)");
}

PhantomConfig preset_phantom(PhantomPreset p) {
    PhantomConfig c;
    c.preset = p;
    auto& s = c.spec;
    s.plate = {materials::cfrp(1.7e-3)};
    s.a1 = 1e-5;
    s.a2 = 1e-5;
    switch (p) {
        case PhantomPreset::single:
        case PhantomPreset::custom:
            s.width = s.height = 64;
            s.frame_rate = 60.0;
            s.duration = 10.0;
            s.defects = {{Rect{18, 18, 27, 27}, 0.135e-3, materials::fep(0.0), 50e-6}};
            break;
        case PhantomPreset::none:
            s.width = s.height = 64;
            s.frame_rate = 60.0;
            s.duration = 10.0;
            break;
        case PhantomPreset::six_roi:
            // 15 mm defects at 0.3 mm/px inside 118 px ROIs, one ROI per depth.
            s.width = s.height = 118;
            s.frame_rate = 180.0;
            s.duration = 1781.0 / 180.0;
            s.defects = {{Rect{34, 34, 50, 50}, 0.135e-3, materials::fep(0.0), 50e-6}};
            for (int k = 1; k <= 6; ++k) c.batch_depths.push_back(0.135e-3 * k);
            break;
    }
    return c;
}

std::string format_rect(const Rect& r) {
    return std::to_string(r.x0) + "," + std::to_string(r.y0) + "," + std::to_string(r.w) + "," + std::to_string(r.h);
}

std::string format_ranges(const std::vector<IndexRange>& r) {
    std::string s;
    for (const auto& x : r) {
        if (!s.empty()) s += ',';
        s += std::to_string(x.first) + ":" + std::to_string(x.last);
    }
    return s;
}

// ---------------------------------------------------------------------------
// JsonLocator: a structural scan, only used to attach line numbers to errors.

namespace {

std::string escape_token(const std::string& key) {
    std::string out;
    for (char c : key) {
        if (c == '~') out += "~0";
        else if (c == '/') out += "~1";
        else out += c;
    }
    return out;
}

}  // namespace

JsonLocator::JsonLocator(std::string_view text) {
    struct Level {
        bool object;
        std::string pointer;
        std::string key;
        std::size_t index = 0;
        bool expect_key = true;
    };
    std::vector<Level> stack;
    std::size_t line = 1;
    auto value_pointer = [&]() -> std::string {
        if (stack.empty()) return "";
        auto& top = stack.back();
        return top.pointer + "/" + (top.object ? escape_token(top.key) : std::to_string(top.index));
    };
    auto mark = [&]() {
        const auto p = value_pointer();
        lines_.try_emplace(p, line);
        return p;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '\n') {
            ++line;
        } else if (c == '"') {
            std::string s;
            for (++i; i < text.size() && text[i] != '"'; ++i) {
                if (text[i] == '\\' && i + 1 < text.size()) {
                    ++i;
                    s += text[i];
                } else {
                    if (text[i] == '\n') ++line;
                    s += text[i];
                }
            }
            if (!stack.empty() && stack.back().object && stack.back().expect_key) {
                stack.back().key = s;
                stack.back().expect_key = false;
                // A key line also locates a missing or mistyped value.
                lines_.try_emplace(value_pointer(), line);
            } else {
                mark();
            }
        } else if (c == '{' || c == '[') {
            const auto p = mark();
            stack.push_back({c == '{', p, {}, 0, true});
        } else if (c == '}' || c == ']') {
            if (!stack.empty()) stack.pop_back();
        } else if (c == ',') {
            if (!stack.empty()) {
                if (stack.back().object) stack.back().expect_key = true;
                else ++stack.back().index;
            }
        } else if (c != ':' && c != ' ' && c != '\t' && c != '\r') {
            mark();
            while (i + 1 < text.size() && std::string_view(",]}\n \t\r").find(text[i + 1]) == std::string_view::npos) ++i;
        }
    }
}

std::size_t JsonLocator::line_of(const std::string& pointer) const {
    // Fall back to the closest located ancestor.
    std::string p = pointer;
    while (true) {
        if (auto it = lines_.find(p); it != lines_.end()) return it->second;
        const auto slash = p.rfind('/');
        if (slash == std::string::npos || p.empty()) return 1;
        p.erase(slash);
    }
}

// ---------------------------------------------------------------------------

namespace {

class Reader {
public:
    Reader(const JsonLocator& loc, std::string origin) : loc_(loc), origin_(std::move(origin)) {}

    [[noreturn]] void fail(const std::string& pointer, const std::string& msg) const {
        throw ConfigError(origin_ + ":" + std::to_string(loc_.line_of(pointer)) + ": " + dotted(pointer) + ": " + msg);
    }

    void only(const json& obj, const std::string& ptr, std::initializer_list<const char*> keys) const {
        if (!obj.is_object()) fail(ptr, "expected an object");
        std::set<std::string> allowed(keys.begin(), keys.end());
        for (auto it = obj.begin(); it != obj.end(); ++it)
            if (!allowed.count(it.key())) fail(ptr + "/" + escape_token(it.key()), "unknown key");
    }

    template <class F>
    void with(const json& obj, const std::string& ptr, const char* key, F&& f) const {
        if (!obj.contains(key)) return;
        const std::string p = ptr + "/" + key;
        try {
            f(obj.at(key), p);
        } catch (const ConfigError& e) {
            const std::string what = e.what();
            if (what.rfind(origin_ + ":", 0) == 0) throw;
            fail(p, what);
        }
    }

    std::size_t count(const json& v, const std::string& p, bool allow_zero = false) const {
        if (!v.is_number_integer() || (v.is_number_integer() && v.get<long long>() < (allow_zero ? 0 : 1)))
            fail(p, allow_zero ? "expected a non-negative integer" : "expected a positive integer");
        return v.get<std::size_t>();
    }
    std::uint64_t seed(const json& v, const std::string& p) const {
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
            fail(p, "expected a non-negative integer");
        return v.get<std::uint64_t>();
    }
    double number(const json& v, const std::string& p) const {
        if (!v.is_number() || !std::isfinite(v.get<double>())) fail(p, "expected a finite number");
        return v.get<double>();
    }
    double positive(const json& v, const std::string& p) const {
        const double d = number(v, p);
        if (!(d > 0.0)) fail(p, "must be positive");
        return d;
    }
    std::string text(const json& v, const std::string& p) const {
        if (!v.is_string()) fail(p, "expected a string");
        return v.get<std::string>();
    }
    bool boolean(const json& v, const std::string& p) const {
        if (!v.is_boolean()) fail(p, "expected true or false");
        return v.get<bool>();
    }

private:
    static std::string dotted(const std::string& pointer) {
        std::string s;
        for (char c : pointer) s += c == '/' ? '.' : c;
        return s.empty() ? "(root)" : s.substr(1);
    }

    const JsonLocator& loc_;
    std::string origin_;
};

LayerSpec read_layer(const Reader& r, const json& v, const std::string& p, bool needs_thickness) {
    r.only(v, p, {"material", "thickness", "density", "specific_heat", "conductivity"});
    LayerSpec l;
    double thickness = 0.0;
    r.with(v, p, "thickness", [&](const json& x, const std::string& q) { thickness = r.positive(x, q); });
    if (needs_thickness && !v.contains("thickness")) r.fail(p, "missing thickness");
    if (v.contains("material")) {
        r.with(v, p, "material", [&](const json& x, const std::string& q) {
            l = materials::by_name(r.text(x, q), thickness);
        });
    } else {
        for (const char* k : {"density", "specific_heat", "conductivity"})
            if (!v.contains(k)) r.fail(p, std::string("missing ") + k + " (or give a material name)");
    }
    l.thickness = thickness;
    r.with(v, p, "density", [&](const json& x, const std::string& q) { l.density = r.positive(x, q); });
    r.with(v, p, "specific_heat", [&](const json& x, const std::string& q) { l.specific_heat = r.positive(x, q); });
    r.with(v, p, "conductivity", [&](const json& x, const std::string& q) { l.conductivity = r.positive(x, q); });
    return l;
}

void read_phantom(const Reader& r, const json& v, const std::string& p, PhantomConfig& pc) {
    r.only(v, p,
           {"preset", "width", "height", "plate", "defects", "batch_depths", "pixel_pitch", "frame_rate", "duration",
            "fluence", "a1", "a2", "noise_std", "lateral_blur_px", "reference_gap", "seed", "solver"});
    r.with(v, p, "preset", [&](const json& x, const std::string& q) { pc = preset_phantom(parse_preset(r.text(x, q))); });
    auto& s = pc.spec;
    r.with(v, p, "width", [&](const json& x, const std::string& q) { s.width = r.count(x, q); });
    r.with(v, p, "height", [&](const json& x, const std::string& q) { s.height = r.count(x, q); });
    r.with(v, p, "plate", [&](const json& x, const std::string& q) {
        if (!x.is_array() || x.empty()) r.fail(q, "expected a non-empty array of layers");
        s.plate.clear();
        for (std::size_t i = 0; i < x.size(); ++i) s.plate.push_back(read_layer(r, x[i], q + "/" + std::to_string(i), true));
    });
    r.with(v, p, "defects", [&](const json& x, const std::string& q) {
        if (!x.is_array()) r.fail(q, "expected an array");
        s.defects.clear();
        for (std::size_t i = 0; i < x.size(); ++i) {
            const auto qi = q + "/" + std::to_string(i);
            const json& d = x[i];
            r.only(d, qi, {"rect", "depth", "material", "thickness"});
            for (const char* k : {"rect", "depth", "material", "thickness"})
                if (!d.contains(k)) r.fail(qi, std::string("missing ") + k);
            PhantomDefect pd;
            r.with(d, qi, "rect", [&](const json& y, const std::string& u) { pd.rect = parse_rect(r.text(y, u)); });
            r.with(d, qi, "depth", [&](const json& y, const std::string& u) { pd.depth = r.positive(y, u); });
            r.with(d, qi, "thickness", [&](const json& y, const std::string& u) { pd.thickness = r.positive(y, u); });
            r.with(d, qi, "material", [&](const json& y, const std::string& u) {
                pd.material = y.is_string() ? materials::by_name(y.get<std::string>(), 0.0)
                                            : read_layer(r, y, u, false);
            });
            s.defects.push_back(pd);
        }
    });
    r.with(v, p, "batch_depths", [&](const json& x, const std::string& q) {
        if (!x.is_array()) r.fail(q, "expected an array");
        pc.batch_depths.clear();
        for (std::size_t i = 0; i < x.size(); ++i) pc.batch_depths.push_back(r.positive(x[i], q + "/" + std::to_string(i)));
    });
    r.with(v, p, "pixel_pitch", [&](const json& x, const std::string& q) { s.pixel_pitch = r.positive(x, q); });
    r.with(v, p, "frame_rate", [&](const json& x, const std::string& q) { s.frame_rate = r.positive(x, q); });
    r.with(v, p, "duration", [&](const json& x, const std::string& q) { s.duration = r.positive(x, q); });
    r.with(v, p, "fluence", [&](const json& x, const std::string& q) { s.fluence = r.positive(x, q); });
    r.with(v, p, "a1", [&](const json& x, const std::string& q) { s.a1 = r.number(x, q); });
    r.with(v, p, "a2", [&](const json& x, const std::string& q) { s.a2 = r.number(x, q); });
    r.with(v, p, "noise_std", [&](const json& x, const std::string& q) {
        s.noise_std = r.number(x, q);
        if (s.noise_std < 0.0) r.fail(q, "must be non-negative");
    });
    r.with(v, p, "lateral_blur_px", [&](const json& x, const std::string& q) {
        s.lateral_blur_px = r.number(x, q);
        if (s.lateral_blur_px < 0.0) r.fail(q, "must be non-negative");
    });
    r.with(v, p, "reference_gap", [&](const json& x, const std::string& q) { s.reference_gap = r.count(x, q, true); });
    r.with(v, p, "seed", [&](const json& x, const std::string& q) { s.seed = r.seed(x, q); });
    r.with(v, p, "solver", [&](const json& x, const std::string& q) {
        r.only(x, q, {"cells_per_thinnest_layer", "max_cell_size", "dt_max", "relative_step", "steps_per_period"});
        auto& o = s.solver;
        r.with(x, q, "cells_per_thinnest_layer", [&](const json& y, const std::string& u) { o.cells_per_thinnest_layer = r.count(y, u); });
        r.with(x, q, "max_cell_size", [&](const json& y, const std::string& u) { o.max_cell_size = r.number(y, u); });
        r.with(x, q, "dt_max", [&](const json& y, const std::string& u) { o.dt_max = r.number(y, u); });
        r.with(x, q, "relative_step", [&](const json& y, const std::string& u) { o.relative_step = r.positive(y, u); });
        r.with(x, q, "steps_per_period", [&](const json& y, const std::string& u) { o.steps_per_period = r.count(y, u); });
    });
}

}  // namespace

RunConfig parse_config(std::string_view text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1;
        for (std::size_t i = 0; i < std::min<std::size_t>(e.byte, text.size()); ++i)
            if (text[i] == '\n') ++line;
        std::string msg = e.what();
        if (auto pos = msg.find("syntax error"); pos != std::string::npos) msg = msg.substr(pos);
        throw ConfigError(origin + ":" + std::to_string(line) + ": " + msg);
    }
    const JsonLocator loc(text);
    const Reader r(loc, origin);
    r.only(doc, "",
           {"input", "out", "roi", "keep_frames", "masks", "workers", "metrics", "segmentation", "sampling", "minkowski",
            "rea", "hi", "curves", "reference", "ppt", "phantom"});

    RunConfig c;
    r.with(doc, "", "input", [&](const json& v, const std::string& p) { c.input = r.text(v, p); });
    r.with(doc, "", "out", [&](const json& v, const std::string& p) { c.out = r.text(v, p); });
    r.with(doc, "", "roi", [&](const json& v, const std::string& p) {
        if (!v.is_null()) c.roi = parse_rect(r.text(v, p));
    });
    r.with(doc, "", "keep_frames", [&](const json& v, const std::string& p) {
        if (!v.is_null()) c.keep_frames = parse_index_ranges(r.text(v, p));
    });
    r.with(doc, "", "masks", [&](const json& v, const std::string& p) {
        if (v.is_null()) return;
        r.only(v, p, {"defect", "reference"});
        if (!v.contains("defect") || !v.contains("reference")) r.fail(p, "needs both defect and reference");
        c.masks = {r.text(v["defect"], p + "/defect"), r.text(v["reference"], p + "/reference")};
    });
    r.with(doc, "", "workers", [&](const json& v, const std::string& p) { c.workers = r.count(v, p, true); });
    r.with(doc, "", "metrics", [&](const json& v, const std::string& p) {
        if (!v.is_array()) r.fail(p, "expected an array");
        c.metrics.clear();
        for (std::size_t i = 0; i < v.size(); ++i) {
            const auto q = p + "/" + std::to_string(i);
            const auto m = r.text(v[i], q);
            if (m != "HI" && m != "TVE" && m != "REA") r.fail(q, "unknown metric '" + m + "' (expected HI, TVE or REA)");
            c.metrics.push_back(m);
        }
    });
    r.with(doc, "", "segmentation", [&](const json& v, const std::string& p) {
        r.only(v, p, {"phi", "method"});
        r.with(v, p, "phi", [&](const json& x, const std::string& q) {
            c.rea.phi = r.count(x, q);
            if (c.rea.phi < 2) r.fail(q, "must be at least 2");
        });
        r.with(v, p, "method", [&](const json& x, const std::string& q) { c.rea.method = parse_segmentation_method(r.text(x, q)); });
    });
    r.with(doc, "", "sampling", [&](const json& v, const std::string& p) {
        r.only(v, p, {"strategy", "nos", "seed", "stride"});
        r.with(v, p, "strategy", [&](const json& x, const std::string& q) { c.rea.plan.strategy = parse_sampling_strategy(r.text(x, q)); });
        r.with(v, p, "nos", [&](const json& x, const std::string& q) { c.rea.plan.nos_set = r.count(x, q); });
        r.with(v, p, "seed", [&](const json& x, const std::string& q) { c.rea.plan.seed = r.seed(x, q); });
        r.with(v, p, "stride", [&](const json& x, const std::string& q) { c.rea.stride = r.count(x, q); });
    });
    r.with(doc, "", "minkowski", [&](const json& v, const std::string& p) {
        r.only(v, p, {"normalization", "connectivity"});
        r.with(v, p, "normalization", [&](const json& x, const std::string& q) { c.rea.normalization = parse_normalization(r.text(x, q)); });
        r.with(v, p, "connectivity", [&](const json& x, const std::string& q) {
            const auto n = r.count(x, q);
            if (n != 4 && n != 8) r.fail(q, "must be 4 or 8");
            c.rea.connectivity = n == 4 ? Connectivity::four : Connectivity::eight;
        });
    });
    r.with(doc, "", "rea", [&](const json& v, const std::string& p) {
        r.only(v, p, {"tail_tol", "cv_eps", "cv_max"});
        r.with(v, p, "tail_tol", [&](const json& x, const std::string& q) { c.rea.tail_tol = r.positive(x, q); });
        r.with(v, p, "cv_eps", [&](const json& x, const std::string& q) { c.rea.guard.eps = r.positive(x, q); });
        r.with(v, p, "cv_max", [&](const json& x, const std::string& q) { c.rea.guard.cv_max = r.positive(x, q); });
    });
    r.with(doc, "", "hi", [&](const json& v, const std::string& p) {
        r.only(v, p, {"bins", "cell_size", "mode", "conv_rel_tol", "conv_window", "max_iters"});
        r.with(v, p, "bins", [&](const json& x, const std::string& q) {
            if (!x.is_null()) c.hi.bins = r.count(x, q);
        });
        r.with(v, p, "cell_size", [&](const json& x, const std::string& q) {
            if (!x.is_null()) c.hi.cell_size = r.count(x, q);
        });
        r.with(v, p, "mode", [&](const json& x, const std::string& q) { c.hi.mode = parse_hi_mode(r.text(x, q)); });
        r.with(v, p, "conv_rel_tol", [&](const json& x, const std::string& q) { c.hi.conv_rel_tol = r.positive(x, q); });
        r.with(v, p, "conv_window", [&](const json& x, const std::string& q) { c.hi.conv_window = r.count(x, q); });
        r.with(v, p, "max_iters", [&](const json& x, const std::string& q) { c.hi.max_iters = r.count(x, q); });
    });
    r.with(doc, "", "curves", [&](const json& v, const std::string& p) {
        r.only(v, p, {"filter_order", "cutoff", "prominence", "top_k"});
        r.with(v, p, "filter_order", [&](const json& x, const std::string& q) { c.curves.filter_order = static_cast<int>(r.count(x, q)); });
        r.with(v, p, "cutoff", [&](const json& x, const std::string& q) {
            c.curves.cutoff = r.positive(x, q);
            if (c.curves.cutoff >= 1.0) r.fail(q, "must be below 1 (fraction of Nyquist)");
        });
        r.with(v, p, "prominence", [&](const json& x, const std::string& q) {
            c.curves.prominence = r.number(x, q);
            if (c.curves.prominence < 0.0 || c.curves.prominence > 1.0) r.fail(q, "must lie in [0, 1]");
        });
        r.with(v, p, "top_k", [&](const json& x, const std::string& q) { c.curves.top_k = r.count(x, q); });
    });
    r.with(doc, "", "reference", [&](const json& v, const std::string& p) {
        r.only(v, p, {"detector", "quantile", "background_filter"});
        r.with(v, p, "detector", [&](const json& x, const std::string& q) { c.detector.kind = parse_detector(r.text(x, q)); });
        r.with(v, p, "quantile", [&](const json& x, const std::string& q) {
            c.detector.quantile = r.number(x, q);
            if (!(c.detector.quantile > 0.0 && c.detector.quantile < 1.0)) r.fail(q, "must lie in (0, 1)");
        });
        r.with(v, p, "background_filter", [&](const json& x, const std::string& q) { c.background_filter = r.boolean(x, q); });
    });
    r.with(doc, "", "ppt", [&](const json& v, const std::string& p) {
        r.only(v, p, {"method"});
        r.with(v, p, "method", [&](const json& x, const std::string& q) {
            const auto m = r.text(x, q);
            if (m == "automatic") c.ppt_method = DftMethod::automatic;
            else if (m == "fft") c.ppt_method = DftMethod::fft;
            else if (m == "direct") c.ppt_method = DftMethod::direct;
            else r.fail(q, "expected automatic, fft or direct");
        });
    });
    r.with(doc, "", "phantom", [&](const json& v, const std::string& p) { read_phantom(r, v, p, c.phantom); });
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path.string());
}

namespace {

json layer_json(const LayerSpec& l, bool with_thickness) {
    json j;
    if (with_thickness) j["thickness"] = l.thickness;
    j["density"] = l.density;
    j["specific_heat"] = l.specific_heat;
    j["conductivity"] = l.conductivity;
    return j;
}

std::string_view method_name(DftMethod m) {
    switch (m) {
        case DftMethod::automatic: return "automatic";
        case DftMethod::fft: return "fft";
        case DftMethod::direct: return "direct";
    }
    return "automatic";
}

}  // namespace

json effective_config(const RunConfig& c) {
    json j;
    j["input"] = c.input;
    j["out"] = c.out;
    j["roi"] = c.roi ? json(format_rect(*c.roi)) : json(nullptr);
    j["keep_frames"] = c.keep_frames.empty() ? json(nullptr) : json(format_ranges(c.keep_frames));
    j["masks"] = c.masks ? json{{"defect", c.masks->first}, {"reference", c.masks->second}} : json(nullptr);
    j["workers"] = c.workers;
    j["metrics"] = c.metrics;
    j["segmentation"] = {{"phi", c.rea.phi},
                         {"method", c.rea.method == SegmentationMethod::kmeans1d ? "kmeans1d" : "equal_width"}};
    j["sampling"] = {{"strategy", std::string(to_string(c.rea.plan.strategy))},
                     {"nos", c.rea.plan.nos_set},
                     {"seed", c.rea.plan.seed},
                     {"stride", c.rea.stride}};
    j["minkowski"] = {{"normalization", std::string(to_string(c.rea.normalization))},
                      {"connectivity", static_cast<int>(c.rea.connectivity)}};
    j["rea"] = {{"tail_tol", c.rea.tail_tol}, {"cv_eps", c.rea.guard.eps}, {"cv_max", c.rea.guard.cv_max}};
    j["hi"] = {{"bins", c.hi.bins ? json(*c.hi.bins) : json(nullptr)},
               {"cell_size", c.hi.cell_size ? json(*c.hi.cell_size) : json(nullptr)},
               {"mode", std::string(to_string(c.hi.mode))},
               {"conv_rel_tol", c.hi.conv_rel_tol},
               {"conv_window", c.hi.conv_window},
               {"max_iters", c.hi.max_iters}};
    j["curves"] = {{"filter_order", c.curves.filter_order},
                   {"cutoff", c.curves.cutoff},
                   {"prominence", c.curves.prominence},
                   {"top_k", c.curves.top_k}};
    j["reference"] = {{"detector", c.detector.kind == DetectorKind::otsu ? "otsu" : "quantile"},
                      {"quantile", c.detector.quantile},
                      {"background_filter", c.background_filter}};
    j["ppt"] = {{"method", std::string(method_name(c.ppt_method))}};

    const auto& s = c.phantom.spec;
    json ph;
    ph["preset"] = std::string(to_string(c.phantom.preset));
    ph["width"] = s.width;
    ph["height"] = s.height;
    ph["plate"] = json::array();
    for (const auto& l : s.plate) ph["plate"].push_back(layer_json(l, true));
    ph["defects"] = json::array();
    for (const auto& d : s.defects)
        ph["defects"].push_back({{"rect", format_rect(d.rect)},
                                 {"depth", d.depth},
                                 {"material", layer_json(d.material, false)},
                                 {"thickness", d.thickness}});
    ph["batch_depths"] = c.phantom.batch_depths;
    ph["pixel_pitch"] = s.pixel_pitch;
    ph["frame_rate"] = s.frame_rate;
    ph["duration"] = s.duration;
    ph["fluence"] = s.fluence;
    ph["a1"] = s.a1;
    ph["a2"] = s.a2;
    ph["noise_std"] = s.noise_std;
    ph["lateral_blur_px"] = s.lateral_blur_px;
    ph["reference_gap"] = s.reference_gap;
    ph["seed"] = s.seed;
    ph["solver"] = {{"cells_per_thinnest_layer", s.solver.cells_per_thinnest_layer},
                    {"max_cell_size", s.solver.max_cell_size},
                    {"dt_max", s.solver.dt_max},
                    {"relative_step", s.solver.relative_step},
                    {"steps_per_period", s.solver.steps_per_period}};
    j["phantom"] = std::move(ph);
    return j;
}

}  // namespace irt::cli
