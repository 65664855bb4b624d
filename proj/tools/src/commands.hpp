#pragma once

#include "config.hpp"

#include <iosfwd>

namespace irt::cli {

struct MetricSummary {
    std::string name;
    MetricCurve raw;
    MetricCurve filtered;
    MetricCurve normalized;
    std::vector<PeakRange> peaks;
};

struct RankResult {
    std::vector<MetricSummary> metrics;
    bool all_global_overlap = false;
};

/// Replaces non-finite samples with the smallest finite value. Returns false when none is finite.
bool fill_non_finite(std::vector<double>& v);

/// Filter, normalize, and locate peak ranges of one raw metric curve.
MetricSummary summarize(const MetricCurve& raw, const CurveConfig& cfg);

void cmd_simulate(const RunConfig& cfg, std::ostream& log);
void cmd_ppt(const RunConfig& cfg, std::ostream& log);
RankResult cmd_rank(const RunConfig& cfg, std::ostream& log);
void cmd_report(const RunConfig& cfg, std::ostream& log);

/// Rank pipeline on an in-memory sequence (no I/O), used by cmd_rank and the tests.
RankResult rank_sequence(const Sequence& seq, const Mask* defect, const Mask* reference, const RunConfig& cfg);

}  // namespace irt::cli
