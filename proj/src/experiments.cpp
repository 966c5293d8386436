#include "rfm/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include <omp.h>

#include "rfm/breakdown.hpp"
#include "rfm/datagen.hpp"
#include "rfm/fusion.hpp"
#include "rfm/median_toy.hpp"
#include "rfm/rng.hpp"

namespace rfm {

namespace {

void log_line(const ExperimentConfig& cfg, const std::string& line) {
    if (cfg.log) cfg.log(line);
}

std::size_t replicates_or(const ExperimentConfig& cfg, std::size_t fallback) {
    return cfg.replicates ? cfg.replicates : fallback;
}

}  // namespace

CsvTable run_table1(const ExperimentConfig& cfg) {
    std::vector<std::size_t> m_list = cfg.m_list;
    if (m_list.empty()) m_list = {5, 10, 30, 50, 100, 150};
    const std::size_t replicates = replicates_or(cfg, 5000);

    CsvTable table;
    table.header.push_back("m");
    for (double p : cfg.p_list) table.header.push_back("p=" + format_double(p));
    for (std::size_t m : m_list) {
        std::vector<std::string> row;
        row.push_back(std::to_string(m));
        for (double p : cfg.p_list) {
            BreakdownConfig bc;
            bc.n = cfg.n ? cfg.n : 30'000;
            bc.m = m;
            bc.p = p;
            bc.replicates = replicates;
            bc.seed = cfg.seed;
            const BreakdownReport report = simulate_breakdown(bc);
            row.push_back(format_double(report.break_fraction));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

namespace {

double elapsed_since(double t0) { return omp_get_wtime() - t0; }

}  // namespace

std::vector<Table23Cell> run_table23_cells(const ExperimentConfig& cfg) {
    std::vector<std::size_t> m_list = cfg.m_list;
    if (m_list.empty()) m_list = {20, 50, 100, 1000};
    const std::size_t replicates = replicates_or(cfg, 5);
    if (cfg.n < 2) throw ContractError("table23 needs n >= 2");

    KrausConfig base;
    base.n = cfg.n;
    base.p = cfg.p;
    base.t_count = cfg.t_count;

    const CovMatrix truth = true_cov(base);
    const EstimatorKind classical = EstimatorKind::classical();
    const EstimatorKind robust = EstimatorKind::robust(cfg.alpha);

    std::vector<Table23Cell> cells(m_list.size());
    for (std::size_t mi = 0; mi < m_list.size(); ++mi) {
        cells[mi].n = cfg.n;
        cells[mi].m = m_list[mi];
    }

    for (std::size_t rep = 0; rep < replicates; ++rep) {
        KrausConfig kc = base;
        kc.seed = RandomStream(cfg.seed, 0xEC5E, rep + 1)();
        const FunctionalSample sample = generate(kc);
        const SampleView whole = sample.view();

        // Whole-sample estimates are shared by every m row.
        const double t_cov0 = omp_get_wtime();
        const CovMatrix cov = sample_cov(whole);
        const double classical_seconds = elapsed_since(t_cov0);

        const double t_rob0 = omp_get_wtime();
        const CovMatrix covrob = trimmed_mean(whole, TrimConfig{cfg.alpha}).estimate;
        const double time0 = elapsed_since(t_rob0);
        log_line(cfg, "rep " + std::to_string(rep) + ": whole-sample classical " +
                          format_double(classical_seconds) + " s, robust " +
                          format_double(time0) + " s");

        const double err_cov = cov_hs_distance(cov, truth);
        const double err_covrob = cov_hs_distance(covrob, truth);

        for (std::size_t mi = 0; mi < m_list.size(); ++mi) {
            const std::size_t m = m_list[mi];
            const std::size_t usable = (cfg.n / m) * m;
            if (usable != cfg.n) {
                log_line(cfg, "m=" + std::to_string(m) + ": truncating sample from " +
                                  std::to_string(cfg.n) + " to " + std::to_string(usable) +
                                  " rows to honour n = m l");
            }
            if (usable / m < 2)
                throw ContractError("m = " + std::to_string(m) + " leaves blocks shorter than 2");
            const SampleView view = sample.view(0, usable);
            const SplitPlan plan = make_split_plan(usable, m);

            // Classical block estimates, fused both ways.
            const auto classical_blocks = estimate_blocks(view, plan, classical);
            const CovMatrix avcov = fuse_average(classical_blocks);
            const CovMatrix cov_rfm = fuse_deepest(classical_blocks).first;

            // Robust fusion pipeline with the cost model decomposition.
            FusionTimings timings;
            const double t_fusion0 = omp_get_wtime();
            (void)split(view, plan);
            timings.time_split = elapsed_since(t_fusion0);
            const auto robust_blocks = estimate_blocks(view, plan, robust, &timings);
            const double t_fuse0 = omp_get_wtime();
            const auto [rfm_fused, depth] = fuse_deepest(robust_blocks);
            timings.time_fuse = elapsed_since(t_fuse0);
            const double time1 =
                timings.time_split + timings.time_blocks_wall + timings.time_fuse;
            const CovMatrix avrob = fuse_average(robust_blocks);

            log_line(cfg, "rep " + std::to_string(rep) + " m=" + std::to_string(m) +
                              ": time1=" + format_double(time1) + " s {split=" +
                              format_double(timings.time_split) + ", blocks_total=" +
                              format_double(timings.time_blocks_total) + ", blocks_max=" +
                              format_double(timings.time_blocks_max) + ", fuse=" +
                              format_double(timings.time_fuse) + "}");

            Table23Cell& cell = cells[mi];
            cell.time0 += time0;
            cell.time1 += time1;
            cell.err_cov += err_cov;
            cell.err_covrob += err_covrob;
            cell.err_avcov += cov_hs_distance(avcov, truth);
            cell.err_cov_rfm += cov_hs_distance(cov_rfm, truth);
            cell.err_avrob += cov_hs_distance(avrob, truth);
            cell.err_rfm += cov_hs_distance(rfm_fused, truth);
        }
    }

    const double k = static_cast<double>(replicates);
    for (auto& cell : cells) {
        cell.time0 /= k;
        cell.time1 /= k;
        cell.err_cov /= k;
        cell.err_avcov /= k;
        cell.err_cov_rfm /= k;
        cell.err_covrob /= k;
        cell.err_avrob /= k;
        cell.err_rfm /= k;
    }
    return cells;
}

CsvTable run_table23(const ExperimentConfig& cfg) {
    const auto cells = run_table23_cells(cfg);
    CsvTable table;
    table.header = {"n",       "m",        "time0",      "time1",      "err_cov",
                    "err_avcov", "err_cov_rfm", "err_covrob", "err_avrob", "err_rfm"};
    for (const auto& cell : cells) {
        table.rows.push_back({std::to_string(cell.n), std::to_string(cell.m),
                              format_double(cell.time0), format_double(cell.time1),
                              format_double(cell.err_cov), format_double(cell.err_avcov),
                              format_double(cell.err_cov_rfm), format_double(cell.err_covrob),
                              format_double(cell.err_avrob), format_double(cell.err_rfm)});
    }
    return table;
}

namespace {

// Monte Carlo variance ratio of the full-sample median vs the median of
// medians on Uniform(0,1) data, blocks of length l = 2k+1.
std::pair<double, double> median_mc_variances(int k, std::size_t m, std::size_t replicates,
                                              std::uint64_t seed) {
    const std::size_t l = 2 * static_cast<std::size_t>(k) + 1;
    const std::size_t n = m * l;
    std::vector<double> full(replicates), fused(replicates);
#pragma omp parallel
    {
        std::vector<double> values(n);
#pragma omp for schedule(static)
        for (std::int64_t rep = 0; rep < static_cast<std::int64_t>(replicates); ++rep) {
            RandomStream rng(seed, 0x3ED1A, static_cast<std::uint64_t>(rep) + 1);
            for (std::size_t i = 0; i < n; ++i) values[i] = rng.uniform01();
            std::vector<double> copy = values;
            const std::size_t mid = (n - 1) / 2;
            std::nth_element(copy.begin(), copy.begin() + mid, copy.end());
            full[static_cast<std::size_t>(rep)] = copy[mid];
            if (l >= 2) {
                fused[static_cast<std::size_t>(rep)] =
                    median_of_medians(values, SplitPlan{n, m, l});
            } else {
                // l = 1: each block is a single value, so the fusion is the
                // plain median again.
                fused[static_cast<std::size_t>(rep)] = full[static_cast<std::size_t>(rep)];
            }
        }
    }
    auto variance = [](const std::vector<double>& xs) {
        double mean = 0.0;
        for (double x : xs) mean += x;
        mean /= static_cast<double>(xs.size());
        double acc = 0.0;
        for (double x : xs) acc += (x - mean) * (x - mean);
        return acc / static_cast<double>(xs.size() - 1);
    };
    return {variance(full), variance(fused)};
}

}  // namespace

CsvTable run_median_eff(const ExperimentConfig& cfg) {
    const std::size_t replicates = replicates_or(cfg, 100'000);
    CsvTable table;
    table.header = {"k", "l", "g_at_theta", "var_ratio_closed", "var_ratio_mc", "replicates"};
    for (int k : cfg.k_list) {
        const std::size_t l = 2 * static_cast<std::size_t>(k) + 1;
        // Block count: keep the total comparable to cfg.n without demanding
        // divisibility from the caller.
        const std::size_t m = std::max<std::size_t>(1, cfg.n / l);
        const std::size_t n = m * l;
        const MedianLaw law = uniform_parent(k);
        const auto closed = asymptotic_variances(law, n, m, 0.5);
        const double ratio_closed = closed.var_full / closed.var_fused;
        const auto [var_full_mc, var_fused_mc] =
            median_mc_variances(k, m, replicates, cfg.seed);
        const double ratio_mc = var_full_mc / var_fused_mc;
        table.rows.push_back({std::to_string(k), std::to_string(l),
                              format_double(median_pdf(law, closed.theta_fused)),
                              format_double(ratio_closed), format_double(ratio_mc),
                              std::to_string(replicates)});
    }
    return table;
}

}  // namespace rfm
