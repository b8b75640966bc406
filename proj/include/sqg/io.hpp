#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "sqg/field.hpp"
#include "sqg/trajectory.hpp"

namespace sqg {

// Deterministic shortest-exact double formatting ("%.17g"); keeps CSV output
// byte-identical across reruns.
std::string format_double(double v);

std::uint64_t fnv1a64(const void* data, std::size_t size);
std::uint64_t fnv1a64(const std::string& text);
std::string to_hex(std::uint64_t v);

// All file output funnels through here: counts writes for the fault-injection
// hook (SQGLAB_CRASH_AFTER_WRITES aborts the process mid-sequence) and keeps
// write-then-rename semantics simple.
void write_file(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

// Field snapshots as flat CSV tables: header "k1,k2,coefficient", one row per
// in-ball mode, deterministic order.
std::string field_to_csv(const SpectralScalarField& f);
SpectralScalarField field_from_csv(const std::string& text);

// Grid renders in the SQGFLD01 container: 8-byte magic, u64 rows, u64 cols,
// row-major float64 payload (little-endian).
std::string grid_to_container(std::size_t rows, std::size_t cols,
                              const std::vector<double>& values);
std::vector<double> grid_from_container(const std::string& bytes, std::size_t& rows,
                                        std::size_t& cols);
// Renders the field on a side x side uniform grid and packs it.
std::string field_to_container(const SpectralScalarField& f, int side);
SpectralScalarField field_from_container(const std::string& bytes, int truncation);

// One CSV per trajectory: time, per-field norms, one column per observable.
std::string trajectory_to_csv(const TrajectoryRecord& rec);

struct FileEntry {
    std::string name;
    std::uintmax_t bytes = 0;
    std::string checksum; // fnv1a64 hex
};

struct RunManifest {
    std::string tool_version;
    std::string command;
    std::string config_hash;
    std::uint64_t seed = 0;
    std::string started_at;  // wall-clock metadata; excluded from comparisons
    std::string finished_at;
    std::vector<FileEntry> files;
};

std::string manifest_to_json(const RunManifest& manifest);

// Output directory with atomic-rename discipline: everything is written into
// "<target>.partial.<pid>" and becomes visible only on commit().
class AtomicOutputDir {
  public:
    explicit AtomicOutputDir(std::filesystem::path target);
    ~AtomicOutputDir(); // removes the partial directory when not committed

    const std::filesystem::path& staging() const { return staging_; }
    void write(const std::string& name, const std::string& content);
    // Writes the manifest (with checksums of everything written) and renames.
    void commit(RunManifest manifest);

  private:
    std::filesystem::path target_;
    std::filesystem::path staging_;
    std::vector<FileEntry> entries_;
    bool committed_ = false;
};

} // namespace sqg
