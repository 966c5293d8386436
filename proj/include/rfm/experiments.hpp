#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rfm/io.hpp"

namespace rfm {

enum class Scenario { table1, table23, median_eff };

// One simulation campaign. Not every field matters for every scenario:
// table1 uses m_list x p_list, table23 uses m_list with a single p and
// alpha, median_eff uses k_list.
struct ExperimentConfig {
    Scenario scenario = Scenario::table23;
    std::size_t n = 50'000;
    std::vector<std::size_t> m_list;
    std::vector<double> p_list = {0.45, 0.49, 0.495, 0.499};
    double p = 0.15;
    double alpha = 0.25;
    std::size_t t_count = 20;
    std::size_t replicates = 0;  // 0 picks the scenario default
    std::uint64_t seed = 1;
    std::vector<int> k_list = {0, 1, 2, 5};
    std::string out_path;

    // One-line progress/diagnostic sink; defaults to silent.
    std::function<void(const std::string&)> log;
};

// Error columns of one table23 cell, kept numeric for assertions; the CSV
// row is the formatted version of this.
struct Table23Cell {
    std::size_t n = 0, m = 0;
    double time0 = 0.0, time1 = 0.0;
    double err_cov = 0.0, err_avcov = 0.0, err_cov_rfm = 0.0;
    double err_covrob = 0.0, err_avrob = 0.0, err_rfm = 0.0;
};

// Breakdown grid: one row per m, one break-fraction column per p.
CsvTable run_table1(const ExperimentConfig& cfg);

// Six-estimator comparison on contaminated functional data; columns are
// n, m, time0, time1, err_cov, err_avcov, err_cov_rfm, err_covrob,
// err_avrob, err_rfm averaged over the replicates.
CsvTable run_table23(const ExperimentConfig& cfg);
std::vector<Table23Cell> run_table23_cells(const ExperimentConfig& cfg);

// Closed-form block-median efficiency next to a Monte Carlo estimate of the
// same variance ratio, per k.
CsvTable run_median_eff(const ExperimentConfig& cfg);

}  // namespace rfm
