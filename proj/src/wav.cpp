#include "speechcmd/wav.hpp"

#include <cmath>
#include <cstring>

#include "speechcmd/errors.hpp"
#include "speechcmd/textio.hpp"

namespace speechcmd::audio {

namespace {

std::uint32_t read_u32(std::span<const std::uint8_t> b, size_t off) {
    return static_cast<std::uint32_t>(b[off]) | (static_cast<std::uint32_t>(b[off + 1]) << 8) |
           (static_cast<std::uint32_t>(b[off + 2]) << 16) |
           (static_cast<std::uint32_t>(b[off + 3]) << 24);
}

std::uint16_t read_u16(std::span<const std::uint8_t> b, size_t off) {
    return static_cast<std::uint16_t>(b[off] | (b[off + 1] << 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xff));
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
}

[[noreturn]] void chunk_error(const std::string& chunk, const std::string& why) {
    throw DataError("wav parse error in chunk '" + chunk + "': " + why);
}

}  // namespace

Utterance parse_wav(std::span<const std::uint8_t> bytes, const std::string& source_id) {
    if (bytes.size() < 12) chunk_error("RIFF", "file shorter than the RIFF header");
    if (std::memcmp(bytes.data(), "RIFF", 4) != 0) chunk_error("RIFF", "missing RIFF magic");
    if (std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) chunk_error("RIFF", "missing WAVE tag");

    bool have_fmt = false;
    std::uint16_t format_code = 0, channels = 0, bits = 0;
    std::uint32_t sample_rate = 0;
    std::span<const std::uint8_t> data;
    bool have_data = false;

    size_t off = 12;
    while (off + 8 <= bytes.size()) {
        char id[5] = {0};
        std::memcpy(id, bytes.data() + off, 4);
        std::uint32_t size = read_u32(bytes, off + 4);
        off += 8;
        if (off + size > bytes.size()) chunk_error(id, "chunk extends past end of file");

        if (std::memcmp(id, "fmt ", 4) == 0) {
            if (size < 16) chunk_error("fmt ", "chunk shorter than 16 bytes");
            format_code = read_u16(bytes, off + 0);
            channels = read_u16(bytes, off + 2);
            sample_rate = read_u32(bytes, off + 4);
            bits = read_u16(bytes, off + 14);
            have_fmt = true;
        } else if (std::memcmp(id, "data", 4) == 0) {
            data = bytes.subspan(off, size);
            have_data = true;
        }
        // Other chunks (LIST, fact, ...) are skipped.
        off += size + (size & 1);  // chunks are word-aligned
    }

    if (!have_fmt) chunk_error("fmt ", "chunk missing");
    if (!have_data) chunk_error("data", "chunk missing");
    if (format_code != 1)
        throw DataError("unsupported wav format: audio format code " + std::to_string(format_code) +
                        " (integer PCM required)");
    if (channels != 1)
        throw DataError("unsupported wav format: " + std::to_string(channels) +
                        " channels (mono required)");
    if (bits != 8 && bits != 16 && bits != 24 && bits != 32)
        throw DataError("unsupported wav format: " + std::to_string(bits) + "-bit samples");
    if (sample_rate == 0) chunk_error("fmt ", "zero sample rate");

    const size_t bytes_per_sample = bits / 8;
    if (data.size() % bytes_per_sample != 0)
        chunk_error("data", "size is not a multiple of the sample size");
    const size_t n = data.size() / bytes_per_sample;
    if (n == 0) chunk_error("data", "no samples");

    Utterance u;
    u.sample_rate_hz = static_cast<int>(sample_rate);
    u.source_id = source_id;
    u.samples.resize(n);
    for (size_t i = 0; i < n; ++i) {
        const std::uint8_t* p = data.data() + i * bytes_per_sample;
        double v = 0.0;
        switch (bits) {
            case 8:
                // 8-bit wav is unsigned with midpoint 128
                v = (static_cast<int>(p[0]) - 128) / 128.0;
                break;
            case 16: {
                std::int16_t s = static_cast<std::int16_t>(p[0] | (p[1] << 8));
                v = s / 32768.0;
                break;
            }
            case 24: {
                std::int32_t s = p[0] | (p[1] << 8) | (p[2] << 16);
                if (s & 0x800000) s |= ~0xffffff;  // sign extend
                v = s / 8388608.0;
                break;
            }
            case 32: {
                std::int32_t s = static_cast<std::int32_t>(read_u32(data, i * 4));
                v = s / 2147483648.0;
                break;
            }
        }
        u.samples[i] = v;
    }
    return u;
}

Utterance parse_wav_file(const std::string& path) {
    auto bytes = read_binary_file(path);
    return parse_wav(bytes, path);
}

std::vector<std::uint8_t> serialize_wav(const Utterance& u) {
    const std::uint32_t n = static_cast<std::uint32_t>(u.samples.size());
    const std::uint32_t data_size = n * 2;
    const std::uint32_t rate = static_cast<std::uint32_t>(u.sample_rate_hz);

    std::vector<std::uint8_t> out;
    out.reserve(44 + data_size);
    out.insert(out.end(), {'R', 'I', 'F', 'F'});
    put_u32(out, 36 + data_size);
    out.insert(out.end(), {'W', 'A', 'V', 'E'});
    out.insert(out.end(), {'f', 'm', 't', ' '});
    put_u32(out, 16);
    put_u16(out, 1);  // integer PCM
    put_u16(out, 1);  // mono
    put_u32(out, rate);
    put_u32(out, rate * 2);  // byte rate
    put_u16(out, 2);         // block align
    put_u16(out, 16);        // bits
    out.insert(out.end(), {'d', 'a', 't', 'a'});
    put_u32(out, data_size);

    for (double x : u.samples) {
        double scaled = std::nearbyint(x * 32768.0);
        if (scaled > 32767.0) scaled = 32767.0;
        if (scaled < -32768.0) scaled = -32768.0;
        put_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(scaled)));
    }
    return out;
}

void write_wav_file(const std::string& path, const Utterance& u) {
    write_binary_file(path, serialize_wav(u));
}

}  // namespace speechcmd::audio
