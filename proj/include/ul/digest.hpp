#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace ul {

// FNV-1a over the raw bytes fed to it. Used to tag inputs in reports;
// not a cryptographic hash.
class Digest {
 public:
  Digest& bytes(const void* data, std::size_t size);
  Digest& u64(std::uint64_t v) { return bytes(&v, sizeof v); }
  Digest& f64(double v) { return bytes(&v, sizeof v); }
  Digest& text(std::string_view s) { return u64(s.size()).bytes(s.data(), s.size()); }
  Digest& complex_span(std::span<const std::complex<double>> values);

  std::uint64_t value() const { return state_; }

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value);

std::string digest_hex(std::uint64_t digest);
std::uint64_t parse_digest_hex(std::string_view hex);

}  // namespace ul
