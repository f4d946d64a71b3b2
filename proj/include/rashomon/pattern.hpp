#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "rashomon/dataset.hpp"

namespace rashomon {

// Per-sample predictions packed 64 to a word. Unused high bits of the last
// word stay zero so equality and popcount work on whole words.
class Pattern {
 public:
  Pattern() = default;
  explicit Pattern(std::size_t n);
  explicit Pattern(const Labels& bits);
  static Pattern from_string(std::string_view bits);

  std::size_t size() const noexcept { return n_; }
  bool operator[](std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool value) noexcept;

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }
  std::size_t popcount() const noexcept;
  std::size_t hamming(const Pattern& other) const;
  Labels to_labels() const;
  std::string to_string() const;

  bool operator==(const Pattern& other) const noexcept = default;
  bool operator<(const Pattern& other) const noexcept;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct PatternHash {
  std::size_t operator()(const Pattern& p) const noexcept;
};

// Mistakes of the pattern against labels.
std::size_t mistakes(const Pattern& p, const Labels& labels);

// Bit-packed stream: patterns back to back, n bits each, sample 0 first,
// filled LSB-first into bytes; total ceil(count * n / 8) bytes.
void write_packed(std::ostream& out, const std::vector<Pattern>& patterns);
std::vector<Pattern> read_packed(std::istream& in, std::size_t n, std::size_t count);
void write_packed_file(const std::string& path, const std::vector<Pattern>& patterns);
std::vector<Pattern> read_packed_file(const std::string& path, std::size_t n, std::size_t count);

}  // namespace rashomon
