#ifndef ADAFW_DETAIL_SHA1_HPP
#define ADAFW_DETAIL_SHA1_HPP

#include <array>
#include <cstdint>
#include <cstring>
#include <string>
#include <string_view>

namespace adafw::detail {

/// Minimal SHA-1, used only for content-addressing experiment inputs.
class Sha1 {
 public:
  Sha1() { reset(); }

  void reset() {
    state_ = {0x67452301u, 0xefcdab89u, 0x98badcfeu, 0x10325476u, 0xc3d2e1f0u};
    buffer_len_ = 0;
    total_bits_ = 0;
  }

  void update(std::string_view data) {
    for (unsigned char byte : data) {
      buffer_[buffer_len_++] = byte;
      total_bits_ += 8;
      if (buffer_len_ == 64) {
        process_block();
        buffer_len_ = 0;
      }
    }
  }

  std::string hex_digest() {
    const std::uint64_t bits = total_bits_;
    update("\x80");
    while (buffer_len_ != 56) {
      update(std::string_view("\0", 1));
    }
    for (int shift = 56; shift >= 0; shift -= 8) {
      const char byte = static_cast<char>((bits >> shift) & 0xffu);
      update(std::string_view(&byte, 1));
    }
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(40);
    for (std::uint32_t word : state_) {
      for (int shift = 28; shift >= 0; shift -= 4) {
        out.push_back(digits[(word >> shift) & 0xfu]);
      }
    }
    return out;
  }

 private:
  static std::uint32_t rotl(std::uint32_t x, int s) {
    return (x << s) | (x >> (32 - s));
  }

  void process_block() {
    std::array<std::uint32_t, 80> w{};
    for (int i = 0; i < 16; ++i) {
      w[i] = (std::uint32_t(buffer_[4 * i]) << 24) |
             (std::uint32_t(buffer_[4 * i + 1]) << 16) |
             (std::uint32_t(buffer_[4 * i + 2]) << 8) |
             std::uint32_t(buffer_[4 * i + 3]);
    }
    for (int i = 16; i < 80; ++i) {
      w[i] = rotl(w[i - 3] ^ w[i - 8] ^ w[i - 14] ^ w[i - 16], 1);
    }
    auto [a, b, c, d, e] = state_;
    for (int i = 0; i < 80; ++i) {
      std::uint32_t f, k;
      if (i < 20) {
        f = (b & c) | (~b & d);
        k = 0x5a827999u;
      } else if (i < 40) {
        f = b ^ c ^ d;
        k = 0x6ed9eba1u;
      } else if (i < 60) {
        f = (b & c) | (b & d) | (c & d);
        k = 0x8f1bbcdcu;
      } else {
        f = b ^ c ^ d;
        k = 0xca62c1d6u;
      }
      const std::uint32_t next = rotl(a, 5) + f + e + k + w[i];
      e = d;
      d = c;
      c = rotl(b, 30);
      b = a;
      a = next;
    }
    state_[0] += a;
    state_[1] += b;
    state_[2] += c;
    state_[3] += d;
    state_[4] += e;
  }

  std::array<std::uint32_t, 5> state_{};
  unsigned char buffer_[64] = {};
  std::size_t buffer_len_ = 0;
  std::uint64_t total_bits_ = 0;
};

inline std::string sha1_hex(std::string_view data) {
  Sha1 hasher;
  hasher.update(data);
  return hasher.hex_digest();
}

/// Same construction git uses for blob objects:
/// sha1("blob <size>\0<content>").
inline std::string git_blob_sha1(std::string_view content) {
  Sha1 hasher;
  hasher.update("blob ");
  hasher.update(std::to_string(content.size()));
  hasher.update(std::string_view("\0", 1));
  hasher.update(content);
  return hasher.hex_digest();
}

}  // namespace adafw::detail

#endif  // ADAFW_DETAIL_SHA1_HPP
