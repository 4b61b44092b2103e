#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>

namespace foundry {

// Minimal FIPS 180-4 SHA-256, used for content hashes and call ids.
class Sha256 {
public:
    Sha256();

    void update(const void* data, std::size_t len);
    void update(std::string_view s) { update(s.data(), s.size()); }

    // Finalizes the stream; further updates are invalid.
    std::array<std::uint8_t, 32> digest();

private:
    void process_block(const std::uint8_t* block);

    std::array<std::uint32_t, 8> state_;
    std::array<std::uint8_t, 64> buffer_;
    std::uint64_t total_bytes_ = 0;
    std::size_t buffered_ = 0;
};

std::string sha256_hex(std::string_view data);

// 16-hex-char identifier over '\x1f'-joined parts.
std::string short_hash(std::initializer_list<std::string_view> parts);

}  // namespace foundry
