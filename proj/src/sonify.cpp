#include "vdp/sonify.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <ostream>

namespace vdp {

namespace {

void put_u32(std::ostream& out, std::uint32_t v) {
    const char bytes[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                           static_cast<char>((v >> 16) & 0xff),
                           static_cast<char>((v >> 24) & 0xff)};
    out.write(bytes, 4);
}

void put_u16(std::ostream& out, std::uint16_t v) {
    const char bytes[2] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff)};
    out.write(bytes, 2);
}

std::uint32_t get_u32(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    return b[0] | (b[1] << 8) | (b[2] << 16) | (std::uint32_t{b[3]} << 24);
}

std::uint16_t get_u16(std::istream& in) {
    unsigned char b[2];
    in.read(reinterpret_cast<char*>(b), 2);
    return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
}

}  // namespace

AudioBuffer synthesize(const PeakList& peaks, double k_scale, double duration,
                       int sample_rate) {
    if (!(duration > 0)) throw DomainError("synthesize: duration must be > 0");
    if (sample_rate <= 0) throw DomainError("synthesize: sample_rate must be > 0");

    AudioBuffer buf;
    buf.sample_rate = sample_rate;
    const auto n = static_cast<std::size_t>(std::llround(duration * sample_rate));
    buf.samples.assign(n, 0.0);
    if (peaks.peaks.empty()) return buf;

    bool any_audible = false;
    for (const auto& pk : peaks.peaks) {
        const double f = k_scale * pk.freq;
        if (f >= 16.0 && f <= 20000.0) any_audible = true;
        const double w = 2.0 * std::numbers::pi * f / sample_rate;
        for (std::size_t i = 0; i < n; ++i)
            buf.samples[i] += pk.rel * std::sin(w * static_cast<double>(i));
    }
    buf.inaudible_range = !any_audible;

    double peak = 0.0;
    for (double s : buf.samples) peak = std::max(peak, std::fabs(s));
    if (peak > 0)
        for (double& s : buf.samples) s /= peak;
    return buf;
}

void write_wav(std::ostream& out, const AudioBuffer& buf) {
    const auto n = static_cast<std::uint32_t>(buf.samples.size());
    const std::uint32_t data_bytes = 2 * n;
    const auto rate = static_cast<std::uint32_t>(buf.sample_rate);

    out.write("RIFF", 4);
    put_u32(out, 36 + data_bytes);
    out.write("WAVE", 4);
    out.write("fmt ", 4);
    put_u32(out, 16);       // fmt chunk size
    put_u16(out, 1);        // PCM
    put_u16(out, 1);        // mono
    put_u32(out, rate);
    put_u32(out, rate * 2); // byte rate
    put_u16(out, 2);        // block align
    put_u16(out, 16);       // bits per sample
    out.write("data", 4);
    put_u32(out, data_bytes);
    for (double s : buf.samples) {
        long q = std::lround(s * 32767.0);
        q = std::clamp(q, -32768l, 32767l);
        put_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(q)));
    }
    if (!out) throw IoError("write_wav: stream failure");
}

void write_wav_file(const std::string& path, const AudioBuffer& buf) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("write_wav: cannot open " + path);
    write_wav(out, buf);
}

AudioBuffer read_wav(std::istream& in) {
    char tag[5] = {};
    in.read(tag, 4);
    if (std::strncmp(tag, "RIFF", 4) != 0) throw IoError("read_wav: missing RIFF tag");
    get_u32(in);
    in.read(tag, 4);
    if (std::strncmp(tag, "WAVE", 4) != 0) throw IoError("read_wav: missing WAVE tag");
    in.read(tag, 4);
    if (std::strncmp(tag, "fmt ", 4) != 0) throw IoError("read_wav: missing fmt chunk");
    if (get_u32(in) != 16) throw IoError("read_wav: unexpected fmt chunk size");
    if (get_u16(in) != 1) throw IoError("read_wav: not PCM");
    if (get_u16(in) != 1) throw IoError("read_wav: not mono");
    AudioBuffer buf;
    buf.sample_rate = static_cast<int>(get_u32(in));
    get_u32(in);
    get_u16(in);
    if (get_u16(in) != 16) throw IoError("read_wav: not 16-bit");
    in.read(tag, 4);
    if (std::strncmp(tag, "data", 4) != 0) throw IoError("read_wav: missing data chunk");
    const std::uint32_t data_bytes = get_u32(in);
    buf.samples.reserve(data_bytes / 2);
    for (std::uint32_t i = 0; i < data_bytes / 2; ++i) {
        const auto q = static_cast<std::int16_t>(get_u16(in));
        buf.samples.push_back(static_cast<double>(q) / 32767.0);
    }
    if (!in) throw IoError("read_wav: truncated stream");
    return buf;
}

}  // namespace vdp
