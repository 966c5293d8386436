#include "rfm/io.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rfm {

static_assert(std::endian::native == std::endian::little,
              "binary sample format is little-endian");

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw IoError("cannot parse '" + s + "' as a number");
    return v;
}

std::string to_string(const CsvTable& table) {
    std::string out;
    auto emit_row = [&out](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out.push_back(',');
            out += row[i];
        }
        out.push_back('\n');
    };
    if (!table.header.empty()) emit_row(table.header);
    for (const auto& row : table.rows) emit_row(row);
    return out;
}

CsvTable parse_csv(const std::string& text) {
    CsvTable table;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ls(line);
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (line.empty()) fields.clear();
        if (!line.empty() && line.back() == ',') fields.push_back("");
        if (first) {
            table.header = std::move(fields);
            first = false;
        } else {
            table.rows.push_back(std::move(fields));
        }
    }
    return table;
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << to_string(table);
    if (!out) throw IoError("failed while writing " + path.string());
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str());
}

namespace {

void write_u64(std::ostream& out, std::uint64_t v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

std::uint64_t read_u64(std::istream& in) {
    std::uint64_t v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof(v));
    if (!in) throw IoError("truncated binary header");
    return v;
}

void write_matrix_binary(const std::filesystem::path& path, std::uint64_t t, std::uint64_t n,
                         const double* data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    write_u64(out, t);
    write_u64(out, n);
    out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(n * t * 8));
    if (!out) throw IoError("failed while writing " + path.string());
}

std::pair<std::vector<double>, std::uint64_t> read_matrix_binary(
    const std::filesystem::path& path, std::uint64_t* n_out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    const std::uint64_t t = read_u64(in);
    const std::uint64_t n = read_u64(in);
    if (t == 0) throw IoError(path.string() + ": zero grid size");
    std::vector<double> data(n * t);
    in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(n * t * 8));
    if (!in) throw IoError(path.string() + ": truncated payload");
    if (n_out) *n_out = n;
    return {std::move(data), t};
}

}  // namespace

void write_sample_binary(const std::filesystem::path& path, SampleView s) {
    const std::size_t t = s.t_count();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    write_u64(out, t);
    write_u64(out, s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        out.write(reinterpret_cast<const char*>(s.row(i).data()),
                  static_cast<std::streamsize>(t * 8));
    }
    if (!out) throw IoError("failed while writing " + path.string());
}

FunctionalSample read_sample_binary(const std::filesystem::path& path) {
    std::uint64_t n = 0;
    auto [data, t] = read_matrix_binary(path, &n);
    return FunctionalSample(Grid::uniform(t), std::move(data));
}

void write_sample_csv(const std::filesystem::path& path, SampleView s) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto row = s.row(i);
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out.put(',');
            out << format_double(row[j]);
        }
        out.put('\n');
    }
    if (!out) throw IoError("failed while writing " + path.string());
}

FunctionalSample read_sample_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<double> data;
    std::size_t t = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string field;
        std::size_t count = 0;
        while (std::getline(ls, field, ',')) {
            data.push_back(parse_double(field));
            ++count;
        }
        if (t == 0) {
            t = count;
        } else if (count != t) {
            throw IoError(path.string() + ": ragged CSV rows");
        }
    }
    if (t == 0) throw IoError(path.string() + ": empty sample");
    return FunctionalSample(Grid::uniform(t), std::move(data));
}

void write_labels_csv(const std::filesystem::path& path, const FunctionalSample& sample) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const bool flag = sample.labels() ? (*sample.labels())[i] != 0 : false;
        out << (flag ? '1' : '0') << '\n';
    }
    if (!out) throw IoError("failed while writing " + path.string());
}

void write_cov_csv(const std::filesystem::path& path, const CovMatrix& m) {
    CsvTable table;
    const std::size_t t = m.t_count();
    table.rows.resize(t);
    for (std::size_t s = 0; s < t; ++s) {
        table.rows[s].reserve(t);
        for (std::size_t u = 0; u < t; ++u) table.rows[s].push_back(format_double(m.at(s, u)));
    }
    write_csv(path, table);
}

CovMatrix read_cov_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) row.push_back(parse_double(field));
        rows.push_back(std::move(row));
    }
    const std::size_t t = rows.size();
    if (t == 0) throw IoError(path.string() + ": empty matrix");
    std::vector<double> values;
    values.reserve(t * t);
    for (const auto& row : rows) {
        if (row.size() != t) throw IoError(path.string() + ": matrix is not square");
        values.insert(values.end(), row.begin(), row.end());
    }
    return CovMatrix(Grid::uniform(t), std::move(values));
}

void write_cov_binary(const std::filesystem::path& path, const CovMatrix& m) {
    write_matrix_binary(path, m.t_count(), m.t_count(), m.values().data());
}

CovMatrix read_cov_binary(const std::filesystem::path& path) {
    std::uint64_t n = 0;
    auto [data, t] = read_matrix_binary(path, &n);
    if (n != t) throw IoError(path.string() + ": expected a square matrix");
    return CovMatrix(Grid::uniform(t), std::move(data));
}

void write_trim_bundle(const std::filesystem::path& base, const TrimResult& result) {
    std::filesystem::path csv = base;
    csv += ".csv";
    write_cov_csv(csv, result.estimate);
    nlohmann::json meta;
    meta["gamma"] = result.gamma;
    meta["r"] = result.r;
    meta["radius"] = result.radius;
    std::filesystem::path js = base;
    js += ".json";
    std::ofstream out(js, std::ios::binary);
    if (!out) throw IoError("cannot open " + js.string() + " for writing");
    out << meta.dump() << '\n';
}

void write_fusion_bundle(const std::filesystem::path& base, const FusionOutcome& outcome,
                         FusionKind kind) {
    std::filesystem::path csv = base;
    csv += ".csv";
    write_cov_csv(csv, outcome.fused);
    nlohmann::json meta;
    meta["fusion"] = kind == FusionKind::deepest ? "deepest" : "average";
    meta["m"] = outcome.per_subsample.size();
    if (outcome.depth_result) {
        meta["argmax_index"] = outcome.depth_result->argmax_index;
        meta["max_depth"] = outcome.depth_result->max_depth;
    }
    meta["time_split"] = outcome.timings.time_split;
    meta["time_blocks_total"] = outcome.timings.time_blocks_total;
    meta["time_blocks_max"] = outcome.timings.time_blocks_max;
    meta["time_fuse"] = outcome.timings.time_fuse;
    std::filesystem::path js = base;
    js += ".json";
    std::ofstream out(js, std::ios::binary);
    if (!out) throw IoError("cannot open " + js.string() + " for writing");
    out << meta.dump() << '\n';
}

}  // namespace rfm
