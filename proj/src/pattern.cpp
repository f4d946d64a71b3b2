#include "rashomon/pattern.hpp"

#include <bit>
#include <fstream>
#include <istream>
#include <ostream>

#include "rashomon/error.hpp"

namespace rashomon {

Pattern::Pattern(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

Pattern::Pattern(const Labels& bits) : Pattern(bits.size()) {
  for (std::size_t i = 0; i < bits.size(); ++i) {
    require(bits[i] <= 1, ErrorCode::kNonBinaryPrediction, "pattern entries must be 0 or 1");
    set(i, bits[i] != 0);
  }
}

Pattern Pattern::from_string(std::string_view bits) {
  Pattern p(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    require(bits[i] == '0' || bits[i] == '1', ErrorCode::kInvalidArgument,
            "pattern string must contain only 0 and 1");
    p.set(i, bits[i] == '1');
  }
  return p;
}

void Pattern::set(std::size_t i, bool value) noexcept {
  const std::uint64_t mask = std::uint64_t{1} << (i & 63);
  if (value) {
    words_[i >> 6] |= mask;
  } else {
    words_[i >> 6] &= ~mask;
  }
}

std::size_t Pattern::popcount() const noexcept {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::size_t Pattern::hamming(const Pattern& other) const {
  require(n_ == other.n_, ErrorCode::kLengthMismatch, "patterns differ in length");
  std::size_t total = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    total += static_cast<std::size_t>(std::popcount(words_[w] ^ other.words_[w]));
  }
  return total;
}

Labels Pattern::to_labels() const {
  Labels out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = (*this)[i] ? 1 : 0;
  return out;
}

std::string Pattern::to_string() const {
  std::string s(n_, '0');
  for (std::size_t i = 0; i < n_; ++i) {
    if ((*this)[i]) s[i] = '1';
  }
  return s;
}

// Lexicographic in sample order, so sorted output reads naturally as strings.
bool Pattern::operator<(const Pattern& other) const noexcept {
  if (n_ != other.n_) return n_ < other.n_;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    const std::uint64_t diff = words_[w] ^ other.words_[w];
    if (diff != 0) {
      const std::uint64_t low = diff & (~diff + 1);
      return (words_[w] & low) == 0;
    }
  }
  return false;
}

std::size_t PatternHash::operator()(const Pattern& p) const noexcept {
  std::uint64_t h = 0xCBF29CE484222325ull ^ p.size();
  for (auto w : p.words()) {
    h ^= w;
    h *= 0x100000001B3ull;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

std::size_t mistakes(const Pattern& p, const Labels& labels) {
  require(p.size() == labels.size(), ErrorCode::kLengthMismatch, "pattern and labels differ in length");
  std::size_t count = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) count += (p[i] ? 1u : 0u) != labels[i];
  return count;
}

void write_packed(std::ostream& out, const std::vector<Pattern>& patterns) {
  unsigned char byte = 0;
  int filled = 0;
  for (const auto& p : patterns) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i]) byte |= static_cast<unsigned char>(1u << filled);
      if (++filled == 8) {
        out.put(static_cast<char>(byte));
        byte = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.put(static_cast<char>(byte));
  require(static_cast<bool>(out), ErrorCode::kIo, "packed pattern write failed");
}

std::vector<Pattern> read_packed(std::istream& in, std::size_t n, std::size_t count) {
  std::vector<Pattern> patterns;
  patterns.reserve(count);
  int byte = 0;
  int left = 0;
  for (std::size_t k = 0; k < count; ++k) {
    Pattern p(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (left == 0) {
        byte = in.get();
        require(byte != std::char_traits<char>::eof(), ErrorCode::kIo, "packed pattern stream truncated");
        left = 8;
      }
      p.set(i, (byte & 1) != 0);
      byte >>= 1;
      --left;
    }
    patterns.push_back(std::move(p));
  }
  return patterns;
}

void write_packed_file(const std::string& path, const std::vector<Pattern>& patterns) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorCode::kIo, "cannot write " + path);
  write_packed(out, patterns);
}

std::vector<Pattern> read_packed_file(const std::string& path, std::size_t n, std::size_t count) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::kMissingFile, "cannot open " + path);
  return read_packed(in, n, count);
}

}  // namespace rashomon
