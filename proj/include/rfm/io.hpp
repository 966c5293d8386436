#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "rfm/fusion.hpp"
#include "rfm/grid.hpp"
#include "rfm/hs_ops.hpp"
#include "rfm/trimmed_cov.hpp"

namespace rfm {

// Shortest decimal form that parses back to the same double.
std::string format_double(double v);
double parse_double(const std::string& s);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string to_string(const CsvTable& table);
CsvTable parse_csv(const std::string& text);
void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);

// Dense binary layout: uint64 T, uint64 n, then n*T little-endian float64
// row-major. The grid is reconstructed as the uniform grid on [0,1].
void write_sample_binary(const std::filesystem::path& path, SampleView s);
FunctionalSample read_sample_binary(const std::filesystem::path& path);

// Debug CSV: one row per observation, T columns, no header.
void write_sample_csv(const std::filesystem::path& path, SampleView s);
FunctionalSample read_sample_csv(const std::filesystem::path& path);

// One 0/1 flag per line.
void write_labels_csv(const std::filesystem::path& path, const FunctionalSample& sample);

// T rows x T columns.
void write_cov_csv(const std::filesystem::path& path, const CovMatrix& m);
CovMatrix read_cov_csv(const std::filesystem::path& path);
void write_cov_binary(const std::filesystem::path& path, const CovMatrix& m);
CovMatrix read_cov_binary(const std::filesystem::path& path);

// Estimate bundle: {base}.csv holds the matrix, {base}.json one metadata
// line {gamma, r, radius}.
void write_trim_bundle(const std::filesystem::path& base, const TrimResult& result);

// Same shape for a fusion outcome; the JSON line carries the selection and
// the timing record {time_split, time_blocks_total, time_blocks_max, time_fuse}.
void write_fusion_bundle(const std::filesystem::path& base, const FusionOutcome& outcome,
                         FusionKind kind);

}  // namespace rfm
