#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace semantrix::io {

// All on-disk integers are little-endian, written byte by byte so the
// format does not depend on host endianness.

inline void write_u8(std::ostream& out, std::uint8_t v) {
    out.put(static_cast<char>(v));
}

inline void write_u16(std::ostream& out, std::uint16_t v) {
    for (int i = 0; i < 2; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline void write_u32(std::ostream& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline void write_u64(std::ostream& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline void write_i64(std::ostream& out, std::int64_t v) {
    write_u64(out, static_cast<std::uint64_t>(v));
}

inline void write_bytes(std::ostream& out, const void* data, std::size_t len) {
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(len));
}

inline void write_string(std::ostream& out, const std::string& s) {
    write_u32(out, static_cast<std::uint32_t>(s.size()));
    write_bytes(out, s.data(), s.size());
}

[[noreturn]] inline void fail_eof() {
    throw std::runtime_error("unexpected end of stream");
}

inline std::uint8_t read_u8(std::istream& in) {
    int c = in.get();
    if (c == std::char_traits<char>::eof()) fail_eof();
    return static_cast<std::uint8_t>(c);
}

inline std::uint16_t read_u16(std::istream& in) {
    std::uint16_t v = 0;
    for (int i = 0; i < 2; ++i) v |= static_cast<std::uint16_t>(read_u8(in)) << (8 * i);
    return v;
}

inline std::uint32_t read_u32(std::istream& in) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(read_u8(in)) << (8 * i);
    return v;
}

inline std::uint64_t read_u64(std::istream& in) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(read_u8(in)) << (8 * i);
    return v;
}

inline std::int64_t read_i64(std::istream& in) {
    return static_cast<std::int64_t>(read_u64(in));
}

inline void read_bytes(std::istream& in, void* data, std::size_t len) {
    in.read(static_cast<char*>(data), static_cast<std::streamsize>(len));
    if (static_cast<std::size_t>(in.gcount()) != len) fail_eof();
}

inline std::string read_string(std::istream& in) {
    std::uint32_t len = read_u32(in);
    std::string s(len, '\0');
    if (len > 0) read_bytes(in, s.data(), len);
    return s;
}

inline void write_u64_vector(std::ostream& out, const std::vector<std::uint64_t>& v) {
    for (std::uint64_t x : v) write_u64(out, x);
}

inline void read_u64_vector(std::istream& in, std::vector<std::uint64_t>& v, std::size_t count) {
    v.resize(count);
    for (std::size_t i = 0; i < count; ++i) v[i] = read_u64(in);
}

} // namespace semantrix::io
