#include "muskat/io.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace muskat::io {

using nlohmann::json;

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

void write_snapshot(const std::filesystem::path& path, const Curve& c, double time) {
    json hdr = {{"N", c.size()}, {"time", time}};
    std::ostringstream ss;
    ss << "# " << hdr.dump() << "\n";
    ss << "alpha,z1,z2\n";
    for (int j = 0; j < c.size(); ++j)
        ss << fmt_double(c.node(j)) << ',' << fmt_double(c.z1(j)) << ','
           << fmt_double(c.z2(j)) << "\n";
    write_file(path, ss.str());
}

Snapshot read_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open snapshot " + path.string());
    std::string line;
    if (!std::getline(in, line) || line.rfind("# ", 0) != 0)
        throw std::runtime_error("snapshot " + path.string() + ": missing JSON header");
    const json hdr = json::parse(line.substr(2));
    const int n = hdr.at("N").get<int>();
    const double time = hdr.at("time").get<double>();
    if (!std::getline(in, line) || line != "alpha,z1,z2")
        throw std::runtime_error("snapshot " + path.string() + ": missing column header");

    std::vector<double> q1(n), q2(n);
    for (int j = 0; j < n; ++j) {
        if (!std::getline(in, line))
            throw std::runtime_error("snapshot " + path.string() + ": truncated");
        double alpha, z1, z2;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &alpha, &z1, &z2) != 3)
            throw std::runtime_error("snapshot " + path.string() + ": bad row " + line);
        q1[j] = z1 - alpha;
        q2[j] = z2;
    }
    return Snapshot{Curve(SpectralField(std::move(q1)), SpectralField(std::move(q2))),
                    time};
}

const std::vector<std::string>& diagnostics_columns() {
    static const std::vector<std::string> cols = {
        "t", "sup_F", "min_sigma", "H3_norm", "tangent_dev", "residual", "b_t",
        "mode_amp"};
    return cols;
}

void write_diagnostics_csv(const std::filesystem::path& path,
                           const std::vector<StepDiagnostics>& series) {
    std::ostringstream ss;
    const auto& cols = diagnostics_columns();
    for (std::size_t i = 0; i < cols.size(); ++i)
        ss << cols[i] << (i + 1 < cols.size() ? ',' : '\n');
    for (const auto& d : series) {
        ss << fmt_double(d.t) << ',' << fmt_double(d.sup_F) << ','
           << fmt_double(d.min_sigma) << ',' << fmt_double(d.h3_norm) << ','
           << fmt_double(d.tangent_dev) << ',' << fmt_double(d.residual) << ','
           << fmt_double(d.b_t) << ',' << fmt_double(d.mode_amp) << "\n";
    }
    write_file(path, ss.str());
}

std::vector<StepDiagnostics> read_diagnostics_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open diagnostics " + path.string());
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("diagnostics " + path.string() + ": empty");
    std::vector<StepDiagnostics> out;
    while (std::getline(in, line)) {
        StepDiagnostics d;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf,%lf,%lf", &d.t,
                        &d.sup_F, &d.min_sigma, &d.h3_norm, &d.tangent_dev,
                        &d.residual, &d.b_t, &d.mode_amp) != 8)
            throw std::runtime_error("diagnostics " + path.string() + ": bad row " + line);
        out.push_back(d);
    }
    return out;
}

std::string fnv1a_hex(const std::string& content) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : content) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string hash_file(const std::filesystem::path& path) {
    return fnv1a_hex(read_file(path));
}

} // namespace muskat::io
