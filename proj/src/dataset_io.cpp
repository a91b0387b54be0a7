#include "sgb/dataset_io.hpp"

#include <bit>
#include <cstring>
#include <type_traits>

#include "sgb/errors.hpp"

namespace sgb {

namespace {

// Explicit little-endian packing so files are identical across hosts.
template <typename T>
void put(std::string& buf, T v) {
    static_assert(std::is_arithmetic_v<T>);
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, &v, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) {
        for (std::size_t i = 0; i < sizeof(T) / 2; ++i)
            std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
    }
    buf.append(reinterpret_cast<const char*>(bytes), sizeof(T));
}

class Reader {
public:
    explicit Reader(const std::filesystem::path& path) : in_(path, std::ios::binary) {
        if (!in_) throw IoError("cannot open dataset file: " + path.string());
    }

    template <typename T>
    T get() {
        unsigned char bytes[sizeof(T)];
        in_.read(reinterpret_cast<char*>(bytes), sizeof(T));
        if (!in_) throw IoError("dataset file truncated");
        if constexpr (std::endian::native == std::endian::big) {
            for (std::size_t i = 0; i < sizeof(T) / 2; ++i)
                std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
        }
        T v;
        std::memcpy(&v, bytes, sizeof(T));
        return v;
    }

    void get_floats(float* dst, std::size_t count) {
        in_.read(reinterpret_cast<char*>(dst), static_cast<std::streamsize>(count * 4));
        if (!in_) throw IoError("dataset file truncated in sample block");
        if constexpr (std::endian::native == std::endian::big) {
            for (std::size_t i = 0; i < count; ++i) {
                char* p = reinterpret_cast<char*>(dst + i);
                std::swap(p[0], p[3]);
                std::swap(p[1], p[2]);
            }
        }
    }

    void get_raw(char* dst, std::size_t count) {
        in_.read(dst, static_cast<std::streamsize>(count));
        if (!in_) throw IoError("dataset file truncated");
    }

    bool at_eof() {
        in_.peek();
        return in_.eof();
    }

private:
    std::ifstream in_;
};

std::string encode_params(const ScenarioParams& p) {
    std::string blob;
    put<std::uint64_t>(blob, p.seed);
    put<std::uint8_t>(blob, static_cast<std::uint8_t>(p.fault_line));
    put<double>(blob, p.fault_position);
    put<double>(blob, p.fault_start);
    put<double>(blob, p.system_frequency);
    put<double>(blob, p.load_angle);
    put<double>(blob, p.load_magnitude);
    for (double len : p.line_lengths_km) put<double>(blob, len);
    put<double>(blob, p.fault_current_ratio);
    put<double>(blob, p.dc_offset_tau);
    put<double>(blob, p.fault_inception_angle);
    return blob;
}

ScenarioParams decode_params(Reader& r, std::uint32_t blob_len) {
    constexpr std::uint32_t kKnownLen = 8 + 1 + 8 * 12;
    if (blob_len < kKnownLen) throw IoError("params blob too short");
    ScenarioParams p;
    p.seed = r.get<std::uint64_t>();
    p.fault_line = r.get<std::uint8_t>();
    p.fault_position = r.get<double>();
    p.fault_start = r.get<double>();
    p.system_frequency = r.get<double>();
    p.load_angle = r.get<double>();
    p.load_magnitude = r.get<double>();
    for (double& len : p.line_lengths_km) len = r.get<double>();
    p.fault_current_ratio = r.get<double>();
    p.dc_offset_tau = r.get<double>();
    p.fault_inception_angle = r.get<double>();
    // Skip any trailing fields written by a newer minor revision.
    for (std::uint32_t i = kKnownLen; i < blob_len; ++i) r.get<std::uint8_t>();
    return p;
}

} // namespace

DatasetWriter::DatasetWriter(const std::filesystem::path& path, std::uint32_t fs_hz,
                             std::uint32_t n_records)
    : out_(path, std::ios::binary), expected_(n_records) {
    if (!out_) throw IoError("cannot open dataset file for writing: " + path.string());
    std::string h;
    h.append(kDatasetMagic, 4);
    put<std::uint16_t>(h, kDatasetVersion);
    put<std::uint32_t>(h, fs_hz);
    put<std::uint32_t>(h, n_records);
    put<std::uint8_t>(h, static_cast<std::uint8_t>(kNumChannels));
    out_.write(h.data(), static_cast<std::streamsize>(h.size()));
    bytes_ += h.size();
}

void DatasetWriter::append(const WaveformRecord& rec) {
    if (written_ >= expected_) throw IoError("more records appended than declared");
    if (has_last_id_ && rec.record_id <= last_id_)
        throw IoError("records must be appended in ascending record_id order");
    last_id_ = rec.record_id;
    has_last_id_ = true;

    std::string head;
    put<std::uint64_t>(head, rec.record_id);
    put<std::uint32_t>(head, static_cast<std::uint32_t>(rec.n_samples()));
    put<std::uint8_t>(head, static_cast<std::uint8_t>(rec.meta.fault_line));
    put<double>(head, rec.meta.fault_start);
    const std::string blob = encode_params(rec.meta);
    put<std::uint32_t>(head, static_cast<std::uint32_t>(blob.size()));
    head += blob;
    out_.write(head.data(), static_cast<std::streamsize>(head.size()));

    if constexpr (std::endian::native == std::endian::big) {
        std::string s;
        s.reserve(rec.samples.size() * 4);
        for (float v : rec.samples) put<float>(s, v);
        out_.write(s.data(), static_cast<std::streamsize>(s.size()));
    } else {
        out_.write(reinterpret_cast<const char*>(rec.samples.data()),
                   static_cast<std::streamsize>(rec.samples.size() * 4));
    }
    if (!out_) throw IoError("write failure on dataset file");
    bytes_ += head.size() + rec.samples.size() * 4;
    ++written_;
}

void DatasetWriter::close() {
    if (written_ != expected_)
        throw IoError("record count mismatch: declared " + std::to_string(expected_) +
                      ", wrote " + std::to_string(written_));
    out_.flush();
    if (!out_) throw IoError("flush failure on dataset file");
    out_.close();
}

void write_dataset(const std::filesystem::path& path, const Dataset& ds) {
    DatasetWriter w(path, ds.fs_hz, static_cast<std::uint32_t>(ds.records.size()));
    for (const WaveformRecord& rec : ds.records) w.append(rec);
    w.close();
}

Dataset read_dataset(const std::filesystem::path& path) {
    Reader r(path);
    char magic[4];
    r.get_raw(magic, 4);
    if (std::memcmp(magic, kDatasetMagic, 4) != 0)
        throw IoError("not a dataset file (bad magic): " + path.string());
    const auto version = r.get<std::uint16_t>();
    if (version > kDatasetVersion)
        throw IoError("dataset version " + std::to_string(version) +
                      " is newer than supported version " +
                      std::to_string(kDatasetVersion));
    Dataset ds;
    ds.fs_hz = r.get<std::uint32_t>();
    const auto n_records = r.get<std::uint32_t>();
    const auto n_channels = r.get<std::uint8_t>();
    if (n_channels != kNumChannels)
        throw IoError("unexpected channel count: " + std::to_string(n_channels));

    ds.records.reserve(n_records);
    for (std::uint32_t i = 0; i < n_records; ++i) {
        WaveformRecord rec;
        rec.record_id = r.get<std::uint64_t>();
        const auto n_samples = r.get<std::uint32_t>();
        const auto fault_line = r.get<std::uint8_t>();
        const double fault_start = r.get<double>();
        const auto blob_len = r.get<std::uint32_t>();
        rec.meta = decode_params(r, blob_len);
        if (rec.meta.fault_line != fault_line ||
            (fault_line != 0 && rec.meta.fault_start != fault_start))
            throw IoError("record header disagrees with params blob");
        rec.fs_hz = ds.fs_hz;
        rec.duration_s = static_cast<double>(n_samples) / static_cast<double>(ds.fs_hz);
        rec.samples.resize(static_cast<std::size_t>(kNumChannels) * n_samples);
        r.get_floats(rec.samples.data(), rec.samples.size());
        ds.records.push_back(std::move(rec));
    }
    if (!r.at_eof()) throw IoError("trailing bytes after final record");
    return ds;
}

} // namespace sgb
