#ifndef MUSKAT_IO_HPP
#define MUSKAT_IO_HPP

#include "muskat/curve.hpp"
#include "muskat/dynamics.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace muskat::io {

/// Shortest round-trippable decimal representation of a double.
std::string fmt_double(double v);

struct Snapshot {
    Curve curve;
    double time = 0.0;
};

/// Curve snapshot: a `# {"N":..,"time":..}` JSON header line followed by
/// `alpha,z1,z2` rows, one per node.
void write_snapshot(const std::filesystem::path& path, const Curve& c, double time);
Snapshot read_snapshot(const std::filesystem::path& path);

/// Per-step series, one row per step:
/// t,sup_F,min_sigma,H3_norm,tangent_dev,residual,b_t,mode_amp
void write_diagnostics_csv(const std::filesystem::path& path,
                           const std::vector<StepDiagnostics>& series);
std::vector<StepDiagnostics> read_diagnostics_csv(const std::filesystem::path& path);

/// Column names of the diagnostics series, in file order.
const std::vector<std::string>& diagnostics_columns();

/// FNV-1a 64-bit content hash, hex-encoded.
std::string fnv1a_hex(const std::string& content);
std::string hash_file(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

} // namespace muskat::io

#endif
