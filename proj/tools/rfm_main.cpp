#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <omp.h>

#include "rfm/datagen.hpp"
#include "rfm/errors.hpp"
#include "rfm/experiments.hpp"
#include "rfm/fusion.hpp"
#include "rfm/io.hpp"
#include "rfm/trimmed_cov.hpp"

namespace {

void emit_table(const rfm::CsvTable& table, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << rfm::to_string(table);
    } else {
        rfm::write_csv(out_path, table);
        std::cerr << "wrote " << out_path << "\n";
    }
}

void add_common_flags(CLI::App* cmd, rfm::ExperimentConfig& cfg) {
    cmd->add_option("--n", cfg.n, "total sample size");
    cmd->add_option("--m", cfg.m_list, "subsample counts (repeatable or comma separated)")
        ->delimiter(',');
    cmd->add_option("--p", cfg.p, "outlier proportion");
    cmd->add_option("--alpha", cfg.alpha, "trimming proportion");
    cmd->add_option("--t", cfg.t_count, "grid size T");
    cmd->add_option("--reps", cfg.replicates, "replicates (0 = scenario default)");
    cmd->add_option("--seed", cfg.seed, "RNG seed");
    cmd->add_option("--out", cfg.out_path, "output CSV path (default: stdout)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Robust fusion estimation experiments"};
    app.set_config("--config", "", "flat key=value config file");
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads, "worker thread count (0 = OpenMP default)");
    bool verbose = false;
    app.add_flag("--verbose", verbose, "log per-replicate timing decompositions");

    rfm::ExperimentConfig cfg;

    auto* table1 = app.add_subcommand("table1", "breakdown fractions over an m x p grid");
    add_common_flags(table1, cfg);
    std::vector<double> p_list;
    table1->add_option("--p-list", p_list, "outlier probabilities (columns)")->delimiter(',');

    auto* table23 =
        app.add_subcommand("table23", "six-estimator comparison on contaminated data");
    add_common_flags(table23, cfg);

    auto* median_eff =
        app.add_subcommand("median-eff", "median-of-medians efficiency: closed form vs MC");
    add_common_flags(median_eff, cfg);
    median_eff->add_option("--k", cfg.k_list, "block half-widths k (l = 2k+1)")->delimiter(',');

    auto* gen = app.add_subcommand("gen", "generate a contaminated sample");
    add_common_flags(gen, cfg);
    bool gen_csv = false;
    bool gen_fixed = false;
    gen->add_flag("--csv", gen_csv, "also write a CSV copy of the sample");
    gen->add_flag("--fixed-count", gen_fixed, "exactly ceil(p n) outliers instead of Bernoulli");

    auto* trim = app.add_subcommand("trim", "one-shot trimmed estimate from a sample file");
    add_common_flags(trim, cfg);
    std::string trim_in;
    trim->add_option("--in", trim_in, "sample file (.bin or .csv)")->required();

    try {
        app.parse(argc, argv);
        if (threads > 0) omp_set_num_threads(threads);
        if (verbose) cfg.log = [](const std::string& line) { std::cerr << line << "\n"; };

        if (table1->parsed()) {
            cfg.scenario = rfm::Scenario::table1;
            if (cfg.n == 50'000) cfg.n = 30'000;  // breakdown default grid size
            if (!p_list.empty()) cfg.p_list = p_list;
            emit_table(rfm::run_table1(cfg), cfg.out_path);
        } else if (table23->parsed()) {
            cfg.scenario = rfm::Scenario::table23;
            emit_table(rfm::run_table23(cfg), cfg.out_path);
        } else if (median_eff->parsed()) {
            cfg.scenario = rfm::Scenario::median_eff;
            emit_table(rfm::run_median_eff(cfg), cfg.out_path);
        } else if (gen->parsed()) {
            rfm::KrausConfig kc;
            kc.n = cfg.n;
            kc.p = cfg.p;
            kc.t_count = cfg.t_count;
            kc.seed = cfg.seed;
            kc.fixed_outlier_count = gen_fixed;
            const rfm::FunctionalSample sample = rfm::generate(kc);
            const std::string base = cfg.out_path.empty() ? "sample" : cfg.out_path;
            rfm::write_sample_binary(base + ".bin", sample.view());
            rfm::write_labels_csv(base + ".labels.csv", sample);
            if (gen_csv) rfm::write_sample_csv(base + ".csv", sample.view());
            std::cerr << "wrote " << base << ".bin (" << sample.size() << " x "
                      << sample.t_count() << ") and " << base << ".labels.csv\n";
        } else if (trim->parsed()) {
            const std::filesystem::path in(trim_in);
            rfm::FunctionalSample sample = in.extension() == ".csv"
                                               ? rfm::read_sample_csv(in)
                                               : rfm::read_sample_binary(in);
            const rfm::TrimResult result =
                rfm::trimmed_mean(sample.view(), rfm::TrimConfig{cfg.alpha});
            const std::string base = cfg.out_path.empty() ? "trimmed" : cfg.out_path;
            rfm::write_trim_bundle(base, result);
            std::cout << "gamma=" << result.gamma << " r=" << result.r
                      << " radius=" << rfm::format_double(result.radius) << "\n";
            std::cerr << "wrote " << base << ".csv and " << base << ".json\n";
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const rfm::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
