#include "irt/hi_metric.hpp"
#include "irt/minkowski.hpp"
#include "irt/phantom.hpp"
#include "irt/ppt.hpp"
#include "irt/rea_tve.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace irt;

namespace {

Frame noise_frame(std::size_t side, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n(0.0, 1.0);
    Frame f(side, side);
    for (auto& v : f.values()) v = n(rng);
    return f;
}

void BM_hi_static(benchmark::State& st) {
    const auto f = noise_frame(static_cast<std::size_t>(st.range(0)), 1);
    for (auto _ : st) benchmark::DoNotOptimize(hi(f, HIConfig{}).hi);
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(f.size()));
}
BENCHMARK(BM_hi_static)->Arg(64)->Arg(118)->Arg(256);

void BM_hi_dynamic(benchmark::State& st) {
    const auto f = noise_frame(118, 2);
    HIConfig cfg;
    cfg.mode = HIMode::dynamic;
    for (auto _ : st) benchmark::DoNotOptimize(hi(f, cfg).hi);
}
BENCHMARK(BM_hi_dynamic);

void BM_windowed_build(benchmark::State& st) {
    const auto seg = segment(noise_frame(static_cast<std::size_t>(st.range(0)), 3), 4);
    for (auto _ : st) {
        WindowedFunctionals wf(seg, 1);
        benchmark::DoNotOptimize(wf.width());
    }
}
BENCHMARK(BM_windowed_build)->Arg(64)->Arg(118);

void BM_windowed_query(benchmark::State& st) {
    const auto seg = segment(noise_frame(118, 4), 4);
    const WindowedFunctionals wf(seg, 1);
    SamplingPlan plan;
    const auto windows = sample_windows(118, 118, 30, plan);
    for (auto _ : st)
        for (const auto& w : windows) benchmark::DoNotOptimize(wf.raw(w));
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(windows.size()));
}
BENCHMARK(BM_windowed_query);

void BM_stage1(benchmark::State& st) {
    const auto f = noise_frame(static_cast<std::size_t>(st.range(0)), 5);
    const auto seg = segment(f, 4);
    SamplingPlan plan;
    plan.sizes = size_schedule(f.width(), f.height(), 4);
    for (auto _ : st) benchmark::DoNotOptimize(stage1(seg, plan).size());
}
BENCHMARK(BM_stage1)->Arg(64)->Arg(118)->Unit(benchmark::kMillisecond);

void BM_evaluate_frame(benchmark::State& st) {
    const auto f = noise_frame(118, 6);
    ReaTveConfig cfg;
    for (auto _ : st) benchmark::DoNotOptimize(evaluate_frame(f, cfg).tve);
}
BENCHMARK(BM_evaluate_frame)->Unit(benchmark::kMillisecond);

void BM_ppt(benchmark::State& st) {
    const auto n = static_cast<std::size_t>(st.range(0));
    std::vector<Frame> frames;
    std::vector<double> t;
    for (std::size_t k = 0; k < n; ++k) {
        frames.push_back(noise_frame(32, k));
        t.push_back(double(k + 1) / 180.0);
    }
    const Sequence seq(std::move(frames), AxisKind::time, std::move(t));
    for (auto _ : st) benchmark::DoNotOptimize(ppt_transform(seq).frequencies.size());
}
BENCHMARK(BM_ppt)->Arg(600)->Arg(1781)->Unit(benchmark::kMillisecond);

void BM_fd_solve(benchmark::State& st) {
    const auto plate = insert_defect({materials::cfrp(1.7e-3)}, 0.405e-3, materials::fep(0.0), 50e-6);
    std::vector<double> times;
    for (int i = 1; i <= 600; ++i) times.push_back(i / 60.0);
    for (auto _ : st) benchmark::DoNotOptimize(fd_solve(plate, 8000.0, times).back());
}
BENCHMARK(BM_fd_solve)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
