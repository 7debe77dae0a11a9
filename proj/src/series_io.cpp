#include "sqz/series_io.hpp"

#include "sqz/errors.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace sqz {

namespace {

constexpr char kMagic[4] = {'S', 'Q', 'T', 'S'};

template <typename T>
T byteswap_if_big(T v) {
    if constexpr (std::endian::native == std::endian::little) {
        return v;
    } else {
        auto raw = std::bit_cast<std::array<std::byte, sizeof(T)>>(v);
        std::reverse(raw.begin(), raw.end());
        return std::bit_cast<T>(raw);
    }
}

template <typename T>
void put(std::vector<std::byte>& out, T v) {
    const auto le = byteswap_if_big(v);
    const auto* p = reinterpret_cast<const std::byte*>(&le);
    out.insert(out.end(), p, p + sizeof(T));
}

template <typename T>
T get(std::span<const std::byte> in, std::size_t offset, const char* field) {
    if (offset + sizeof(T) > in.size()) {
        std::ostringstream os;
        os << "truncated time series: " << field << " at byte " << offset << " needs "
           << sizeof(T) << " bytes, file has " << in.size();
        throw FormatError(offset, os.str());
    }
    T v;
    std::memcpy(&v, in.data() + offset, sizeof(T));
    return byteswap_if_big(v);
}

}  // namespace

std::vector<std::byte> encode_series(const TimeSeries& ts) {
    ts.validate();
    std::vector<std::byte> out;
    out.reserve(kSeriesHeaderBytes + 8 * ts.samples.size());
    for (char c : kMagic) out.push_back(static_cast<std::byte>(c));
    put<std::uint32_t>(out, kSeriesVersion);
    put<double>(out, ts.sample_rate);
    put<std::uint64_t>(out, ts.samples.size());
    put<std::uint64_t>(out, ts.seed);
    for (double x : ts.samples) put<double>(out, x);
    return out;
}

TimeSeries decode_series(std::span<const std::byte> bytes) {
    for (std::size_t i = 0; i < 4; ++i) {
        if (i >= bytes.size() || bytes[i] != static_cast<std::byte>(kMagic[i])) {
            std::ostringstream os;
            os << "bad magic at byte " << i << ": not an SQTS time series";
            throw FormatError(i, os.str());
        }
    }
    const auto version = get<std::uint32_t>(bytes, 4, "version");
    if (version != kSeriesVersion) {
        std::ostringstream os;
        os << "unsupported SQTS version " << version << " at byte 4";
        throw FormatError(4, os.str());
    }
    TimeSeries ts;
    ts.sample_rate = get<double>(bytes, 8, "sample_rate");
    if (!(ts.sample_rate > 0.0) || !std::isfinite(ts.sample_rate))
        throw FormatError(8, "invalid sample_rate at byte 8");
    const auto n = get<std::uint64_t>(bytes, 16, "n_samples");
    ts.seed = get<std::uint64_t>(bytes, 24, "seed");
    const std::size_t payload = bytes.size() - kSeriesHeaderBytes;
    if (n == 0 || payload / 8 != n || payload % 8 != 0) {
        std::ostringstream os;
        os << "n_samples at byte 16 says " << n << " but payload starting at byte "
           << kSeriesHeaderBytes << " holds " << payload << " bytes";
        throw FormatError(16, os.str());
    }
    ts.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        ts.samples[i] = get<double>(bytes, kSeriesHeaderBytes + 8 * i, "sample");
    return ts;
}

void write_series(const std::filesystem::path& path, const TimeSeries& ts) {
    const auto bytes = encode_series(ts);
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open " + path.string() + " for writing");
    os.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!os) throw IoError("write failed: " + path.string());
}

TimeSeries read_series(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open " + path.string());
    std::vector<char> raw((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    const auto* p = reinterpret_cast<const std::byte*>(raw.data());
    return decode_series(std::span<const std::byte>(p, raw.size()));
}

void write_trace_csv(std::ostream& os, const Trace& t) {
    os << "freq_hz,value_db\n";
    os << std::setprecision(17);
    for (std::size_t i = 0; i < t.freqs.size(); ++i) os << t.freqs[i] << ',' << t.values_db[i] << '\n';
}

nlohmann::json trace_to_json(const Trace& t) {
    return {{"freqs", t.freqs}, {"values_db", t.values_db}, {"rbw", t.rbw}, {"vbw", t.vbw}};
}

Trace trace_from_json(const nlohmann::json& j) {
    Trace t;
    try {
        t.freqs = j.at("freqs").get<std::vector<double>>();
        t.values_db = j.at("values_db").get<std::vector<double>>();
        t.rbw = j.at("rbw").get<double>();
        t.vbw = j.at("vbw").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(0, std::string("invalid trace JSON: ") + e.what());
    }
    t.validate();
    return t;
}

}  // namespace sqz
