#include "sqg/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

#include "sqg/transform.hpp"

namespace sqg {

namespace fs = std::filesystem;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::uint64_t fnv1a64(const void* data, std::size_t size) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < size; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t fnv1a64(const std::string& text) { return fnv1a64(text.data(), text.size()); }

std::string to_hex(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

namespace {
// Fault-injection hook: crash hard after the configured number of writes.
void maybe_crash_after_write() {
    static int limit = [] {
        const char* env = std::getenv("SQGLAB_CRASH_AFTER_WRITES");
        return env ? std::atoi(env) : -1;
    }();
    static int count = 0;
    if (limit >= 0 && ++count >= limit) ::_exit(9);
}
} // namespace

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path.string());
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    os.close();
    if (!os) throw std::runtime_error("write failed: " + path.string());
    maybe_crash_after_write();
}

std::string read_file(const fs::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open: " + path.string());
    std::ostringstream buf;
    buf << is.rdbuf();
    return buf.str();
}

std::string field_to_csv(const SpectralScalarField& f) {
    std::string out = "k1,k2,coefficient\n";
    f.for_each([&](Wavevector k, double v) {
        out += std::to_string(k.k1);
        out += ',';
        out += std::to_string(k.k2);
        out += ',';
        out += format_double(v);
        out += '\n';
    });
    return out;
}

SpectralScalarField field_from_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line.rfind("k1,k2,coefficient", 0) != 0)
        throw std::runtime_error("bad field CSV header");
    struct Row {
        Wavevector k;
        double v;
    };
    std::vector<Row> rows;
    std::int64_t max_norm_sq = 1;
    int lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        Row row{};
        char* end = nullptr;
        const char* p = line.c_str();
        row.k.k1 = static_cast<int>(std::strtol(p, &end, 10));
        if (*end != ',') throw std::runtime_error("bad field CSV at line " + std::to_string(lineno));
        row.k.k2 = static_cast<int>(std::strtol(end + 1, &end, 10));
        if (*end != ',') throw std::runtime_error("bad field CSV at line " + std::to_string(lineno));
        row.v = std::strtod(end + 1, &end);
        rows.push_back(row);
        max_norm_sq = std::max(max_norm_sq, row.k.norm_sq());
    }
    const int n = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(max_norm_sq)) - 1e-9));
    SpectralScalarField f(n);
    for (const auto& row : rows)
        if (row.v != 0.0) f.set_coeff(row.k, row.v);
    return f;
}

namespace {
constexpr char kMagic[9] = "SQGFLD01";

void append_u64(std::string& out, std::uint64_t v) {
    char buf[8];
    std::memcpy(buf, &v, 8);
    out.append(buf, 8);
}

std::uint64_t read_u64(const std::string& bytes, std::size_t offset) {
    std::uint64_t v;
    std::memcpy(&v, bytes.data() + offset, 8);
    return v;
}
} // namespace

std::string grid_to_container(std::size_t rows, std::size_t cols,
                              const std::vector<double>& values) {
    if (values.size() != rows * cols) throw std::invalid_argument("grid size mismatch");
    std::string out(kMagic, 8);
    append_u64(out, rows);
    append_u64(out, cols);
    out.append(reinterpret_cast<const char*>(values.data()), values.size() * sizeof(double));
    return out;
}

std::vector<double> grid_from_container(const std::string& bytes, std::size_t& rows,
                                        std::size_t& cols) {
    if (bytes.size() < 24 || std::memcmp(bytes.data(), kMagic, 8) != 0)
        throw std::runtime_error("not an SQGFLD01 container");
    rows = read_u64(bytes, 8);
    cols = read_u64(bytes, 16);
    const std::size_t expected = 24 + rows * cols * sizeof(double);
    if (bytes.size() != expected) throw std::runtime_error("truncated SQGFLD01 container");
    std::vector<double> values(rows * cols);
    std::memcpy(values.data(), bytes.data() + 24, values.size() * sizeof(double));
    return values;
}

std::string field_to_container(const SpectralScalarField& f, int side) {
    SpectralTransform& tr = transform_for(side);
    return grid_to_container(static_cast<std::size_t>(side), static_cast<std::size_t>(side),
                             tr.to_grid(f));
}

SpectralScalarField field_from_container(const std::string& bytes, int truncation) {
    std::size_t rows = 0, cols = 0;
    const auto values = grid_from_container(bytes, rows, cols);
    if (rows != cols) throw std::runtime_error("field containers hold square grids");
    SpectralTransform& tr = transform_for(static_cast<int>(rows));
    return tr.from_grid(values, truncation);
}

std::string trajectory_to_csv(const TrajectoryRecord& rec) {
    std::string out = "time";
    for (const auto& f : rec.fields)
        out += "," + f.name + "_l2," + f.name + "_grad_l2," + f.name + "_diss_integral";
    for (const auto& [id, series] : rec.observables) out += ",obs:" + id;
    out += '\n';
    for (std::size_t i = 0; i < rec.times.size(); ++i) {
        out += format_double(rec.times[i]);
        for (const auto& f : rec.fields) {
            out += ',';
            out += format_double(f.l2[i]);
            out += ',';
            out += format_double(f.grad_l2[i]);
            out += ',';
            out += format_double(f.dissipation_integral[i]);
        }
        for (const auto& [id, series] : rec.observables) {
            out += ',';
            out += format_double(series[i]);
        }
        out += '\n';
    }
    return out;
}

std::string manifest_to_json(const RunManifest& m) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"tool_version\": \"" << m.tool_version << "\",\n";
    os << "  \"command\": \"" << m.command << "\",\n";
    os << "  \"config_hash\": \"" << m.config_hash << "\",\n";
    os << "  \"seed\": " << m.seed << ",\n";
    os << "  \"started_at\": \"" << m.started_at << "\",\n";
    os << "  \"finished_at\": \"" << m.finished_at << "\",\n";
    os << "  \"files\": [\n";
    for (std::size_t i = 0; i < m.files.size(); ++i) {
        const auto& f = m.files[i];
        os << "    {\"name\": \"" << f.name << "\", \"bytes\": " << f.bytes
           << ", \"fnv1a64\": \"" << f.checksum << "\"}" << (i + 1 < m.files.size() ? "," : "")
           << "\n";
    }
    os << "  ]\n}\n";
    return os.str();
}

AtomicOutputDir::AtomicOutputDir(fs::path target) : target_(std::move(target)) {
    staging_ = target_;
    staging_ += ".partial." + std::to_string(::getpid());
    fs::create_directories(staging_);
}

AtomicOutputDir::~AtomicOutputDir() {
    if (!committed_) {
        std::error_code ec;
        fs::remove_all(staging_, ec);
    }
}

void AtomicOutputDir::write(const std::string& name, const std::string& content) {
    write_file(staging_ / name, content);
    entries_.push_back({name, content.size(), to_hex(fnv1a64(content))});
}

void AtomicOutputDir::commit(RunManifest manifest) {
    manifest.files = entries_;
    const std::string json = manifest_to_json(manifest);
    write_file(staging_ / "manifest.json", json);
    if (fs::exists(target_)) {
        // Replace atomically: move the old directory aside first.
        fs::path old = target_;
        old += ".old." + std::to_string(::getpid());
        fs::rename(target_, old);
        fs::rename(staging_, target_);
        std::error_code ec;
        fs::remove_all(old, ec);
    } else {
        fs::create_directories(target_.parent_path().empty() ? "." : target_.parent_path());
        fs::rename(staging_, target_);
    }
    committed_ = true;
}

} // namespace sqg
