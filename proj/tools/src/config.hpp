#pragma once

#include "irt/curve_tools.hpp"
#include "irt/hi_metric.hpp"
#include "irt/minkowski.hpp"
#include "irt/phantom.hpp"
#include "irt/ppt.hpp"
#include "irt/rea_tve.hpp"
#include "irt/reference_metrics.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace irt::cli {

enum class PhantomPreset { single, six_roi, none, custom };

std::string_view to_string(PhantomPreset p);
PhantomPreset parse_preset(std::string_view text);

/// Phantom spec plus the batch layout used by the six-ROI preset.
struct PhantomConfig {
    PhantomPreset preset = PhantomPreset::single;
    PhantomSpec spec;
    /// When non-empty, one stack per depth is written, each with defects[0] moved to that depth.
    std::vector<double> batch_depths;
};

PhantomConfig preset_phantom(PhantomPreset p);

struct CurveConfig {
    int filter_order = 3;
    double cutoff = 0.05;
    double prominence = 0.1;
    std::size_t top_k = 3;
};

struct RunConfig {
    std::string input;
    std::string out = "irt_out";
    std::optional<Rect> roi;
    std::vector<IndexRange> keep_frames;  ///< empty keeps every frame
    std::optional<std::pair<std::string, std::string>> masks;  ///< defect, reference
    std::size_t workers = 0;  ///< 0: one per hardware thread
    std::vector<std::string> metrics{"HI", "TVE", "REA"};

    ReaTveConfig rea;     ///< plan.seed doubles as the HI seed
    HIConfig hi;
    CurveConfig curves;
    DetectorConfig detector;
    bool background_filter = true;
    DftMethod ppt_method = DftMethod::automatic;
    PhantomConfig phantom = preset_phantom(PhantomPreset::single);
};

/// Maps JSON pointers of a document to the 1-based line where their value starts.
class JsonLocator {
public:
    explicit JsonLocator(std::string_view text);
    std::size_t line_of(const std::string& pointer) const;

private:
    std::map<std::string, std::size_t> lines_;
};

/// Parses and validates a config document. Errors carry "<origin>:<line>: ...".
RunConfig parse_config(std::string_view text, const std::string& origin = "config");
RunConfig load_config(const std::filesystem::path& path);

/// Every field, defaults included.
nlohmann::json effective_config(const RunConfig& cfg);

std::string format_rect(const Rect& r);
std::string format_ranges(const std::vector<IndexRange>& r);

}  // namespace irt::cli
