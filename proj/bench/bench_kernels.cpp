// Times the OpenMP kernels against their serial reference twins and checks
// that both produce identical bits. Run: rfm_bench [n] [threads]
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <omp.h>

#include "rfm/breakdown.hpp"
#include "rfm/datagen.hpp"
#include "rfm/depth.hpp"
#include "rfm/fusion.hpp"
#include "rfm/trimmed_cov.hpp"

namespace {

struct Row {
    std::string name;
    double serial_s;
    double parallel_s;
    bool identical;
};

void print(const Row& row) {
    std::cout << row.name << "," << row.serial_s << "," << row.parallel_s << ","
              << (row.serial_s / row.parallel_s) << "," << (row.identical ? "yes" : "no")
              << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    const std::size_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 4000;
    if (argc > 2) omp_set_num_threads(std::atoi(argv[2]));

    std::cout << "kernel,serial_s,parallel_s,speedup,bit_identical\n";

    rfm::KrausConfig kc;
    kc.n = n;
    kc.p = 0.15;
    kc.t_count = 20;
    kc.seed = 7;

    double t0 = omp_get_wtime();
    const rfm::FunctionalSample sample_serial = rfm::generate_serial(kc);
    double t1 = omp_get_wtime();
    const rfm::FunctionalSample sample = rfm::generate(kc);
    double t2 = omp_get_wtime();
    print({"generate", t1 - t0, t2 - t1, sample.data() == sample_serial.data()});

    const std::size_t r = rfm::trim_keep_count(n, 0.25);
    t0 = omp_get_wtime();
    const auto radii_serial = rfm::nn_radii_serial(sample.view(), r);
    t1 = omp_get_wtime();
    const auto radii = rfm::nn_radii(sample.view(), r);
    t2 = omp_get_wtime();
    print({"nn_radii", t1 - t0, t2 - t1, radii == radii_serial});

    t0 = omp_get_wtime();
    const auto trim_serial = rfm::trimmed_mean_serial(sample.view(), rfm::TrimConfig{0.25});
    t1 = omp_get_wtime();
    const auto trim = rfm::trimmed_mean(sample.view(), rfm::TrimConfig{0.25});
    t2 = omp_get_wtime();
    print({"trimmed_mean", t1 - t0, t2 - t1,
           trim.estimate.values() == trim_serial.estimate.values() &&
               trim.gamma == trim_serial.gamma});

    const rfm::SplitPlan plan = rfm::make_split_plan(n - n % 8, 8);
    const auto view = sample.view(0, plan.n);
    const auto est = rfm::EstimatorKind::robust(0.25);
    t0 = omp_get_wtime();
    const auto blocks_serial = rfm::estimate_blocks_serial(view, plan, est);
    t1 = omp_get_wtime();
    const auto blocks = rfm::estimate_blocks(view, plan, est);
    t2 = omp_get_wtime();
    bool blocks_same = blocks.size() == blocks_serial.size();
    for (std::size_t j = 0; blocks_same && j < blocks.size(); ++j)
        blocks_same = blocks[j].values() == blocks_serial[j].values();
    print({"estimate_blocks", t1 - t0, t2 - t1, blocks_same});

    std::vector<rfm::DepthPoint> points;
    points.reserve(blocks.size() * 32);
    for (int copy = 0; copy < 32; ++copy) {
        for (const auto& b : blocks) {
            rfm::DepthPoint p = rfm::embed_hs(b);
            p.coords[0] += 1e-3 * copy;
            points.push_back(std::move(p));
        }
    }
    t0 = omp_get_wtime();
    const auto deep_serial = rfm::deepest_serial(points);
    t1 = omp_get_wtime();
    const auto deep = rfm::deepest(points);
    t2 = omp_get_wtime();
    print({"deepest", t1 - t0, t2 - t1,
           deep.depths == deep_serial.depths && deep.argmax_index == deep_serial.argmax_index});

    rfm::BreakdownConfig bc;
    bc.n = 30'000;
    bc.m = 100;
    bc.p = 0.495;
    bc.replicates = 20'000;
    bc.seed = 7;
    t0 = omp_get_wtime();
    const auto report_serial = rfm::simulate_breakdown_serial(bc);
    t1 = omp_get_wtime();
    const auto report = rfm::simulate_breakdown(bc);
    t2 = omp_get_wtime();
    print({"simulate_breakdown", t1 - t0, t2 - t1,
           report.break_fraction == report_serial.break_fraction});

    return 0;
}
