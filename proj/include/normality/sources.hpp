#pragma once

// Concrete digit sources and the canonical source-spec strings used by the CLI:
//
//   rational:<a/b>       exact rational in [0,1), expanded by long division
//   champernowne         0.1 2 3 ... (concatenated base-r numerals of 1, 2, 3, ...)
//   file:<path>          digit file (format below)
//   random:<seed>        seeded pseudorandom digits
//   digits:<0-9a-z...>   literal finite digit string
//
// Digit-file format. The first line is `base=<r>`. An optional second line
// `integer=<decimal>` gives the integer part, used for display only. The rest
// of the file holds the digits after the radix point: for r <= 36 one
// character per digit from 0-9a-z (case-insensitive), for r > 36 bracketed
// decimal values such as [14]. Whitespace is ignored everywhere after the
// header. Uniqueness condition (ii) (no infinite tail of r-1) cannot be
// checked from a finite file and is assumed.
//
// Pseudorandom digits. State is 64 bits, initialized as splitmix64(seed)
// (replaced by 0x9E3779B97F4A7C15 if that yields 0) and advanced per draw by
// xorshift64*: x ^= x >> 12; x ^= x << 25; x ^= x >> 27; out = x *
// 0x2545F4914F6CDD1D. Outputs below 2^64 mod r are rejected, the digit is
// out mod r.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "normality/exact_rational.hpp"
#include "normality/radix.hpp"

namespace normality {

inline DigitStream rational_stream(const ExactRational& q, Base base) {
  return DigitStream(base, std::make_unique<LongDivisionSource>(std::make_shared<LongDivision>(q, base)));
}

namespace detail {

class ChampernowneSource final : public DigitSource {
 public:
  explicit ChampernowneSource(Base base) : base_(base) {}

  std::optional<Digit> pull() override {
    if (index_ == numeral_.size()) {
      ++counter_;
      numeral_.clear();
      for (std::uint64_t v = counter_; v != 0; v /= base_.radix()) numeral_.push_back(v % base_.radix());
      std::reverse(numeral_.begin(), numeral_.end());
      index_ = 0;
    }
    return numeral_[index_++];
  }

 private:
  Base base_;
  std::uint64_t counter_ = 0;
  std::vector<Digit> numeral_;
  std::size_t index_ = 0;
};

}  // namespace detail

inline DigitStream champernowne_stream(Base base) {
  return DigitStream(base, std::make_unique<detail::ChampernowneSource>(base));
}

class XorShift64Star {
 public:
  explicit XorShift64Star(std::uint64_t seed) : state_(splitmix64(seed)) {
    if (state_ == 0) state_ = 0x9E3779B97F4A7C15ULL;
  }

  std::uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
  }

  /// Uniform value in [0, bound) by rejection of the biased low range.
  std::uint64_t uniform_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t x = next();
      if (x >= threshold) return x % bound;
    }
  }

  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

 private:
  std::uint64_t state_;
};

namespace detail {

class RandomSource final : public DigitSource {
 public:
  RandomSource(Base base, std::uint64_t seed) : radix_(base.radix()), rng_(seed) {}
  std::optional<Digit> pull() override { return rng_.uniform_below(radix_); }

 private:
  std::uint64_t radix_;
  XorShift64Star rng_;
};

}  // namespace detail

/// Seed used by the regression runs and by the CLI when none is given.
inline constexpr std::uint64_t kDefaultMonteCarloSeed = 20240601;

inline DigitStream random_stream(Base base, std::uint64_t seed) {
  return DigitStream(base, std::make_unique<detail::RandomSource>(base, seed));
}

/// Errors while reading a digit file. Line and column are 1-based; 0 when
/// not applicable (I/O failures).
class DigitFileError : public std::runtime_error {
 public:
  enum class Kind { io, malformed_header, digit_out_of_range, invalid_character };

  DigitFileError(Kind kind, const std::string& path, std::size_t line, std::size_t column,
                 const std::string& what)
      : std::runtime_error(path + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        kind_(kind),
        line_(line),
        column_(column) {}

  Kind kind() const { return kind_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  Kind kind_;
  std::size_t line_;
  std::size_t column_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::optional<Digit> alnum_digit(char c) {
  const auto u = static_cast<unsigned char>(c);
  if (std::isdigit(u)) return static_cast<Digit>(c - '0');
  if (std::isalpha(u)) return static_cast<Digit>(std::tolower(u) - 'a' + 10);
  return std::nullopt;
}

/// Lazily parses the digit section of an open digit file.
class FileDigitSource final : public DigitSource {
 public:
  FileDigitSource(std::ifstream in, std::string path, Base base, std::size_t line)
      : in_(std::move(in)), path_(std::move(path)), base_(base), line_(line) {}

  std::optional<Digit> pull() override {
    for (;;) {
      const int ch = get();
      if (ch == EOF) {
        if (in_.bad()) fail(DigitFileError::Kind::io, "read error");
        return std::nullopt;
      }
      const char c = static_cast<char>(ch);
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      if (base_.radix() <= 36) {
        auto d = alnum_digit(c);
        if (!d) fail(DigitFileError::Kind::invalid_character, std::string("unexpected character '") + c + "'");
        if (!base_.contains(*d))
          fail(DigitFileError::Kind::digit_out_of_range,
               std::string("digit '") + c + "' is not valid in base " + std::to_string(base_.radix()));
        return d;
      }
      if (c != '[') fail(DigitFileError::Kind::invalid_character, std::string("expected '[', found '") + c + "'");
      return bracketed();
    }
  }

 private:
  int get() {
    const int ch = in_.get();
    if (ch == '\n') {
      ++line_;
      column_ = 0;
    } else if (ch != EOF) {
      ++column_;
    }
    return ch;
  }

  Digit bracketed() {
    const std::size_t open_line = line_;
    const std::size_t open_column = column_;
    BigInt value = 0;
    bool any = false;
    for (;;) {
      const int ch = get();
      if (ch == EOF) fail(DigitFileError::Kind::invalid_character, "unterminated '['");
      const char c = static_cast<char>(ch);
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      if (c == ']') break;
      if (!std::isdigit(static_cast<unsigned char>(c)))
        fail(DigitFileError::Kind::invalid_character, std::string("unexpected character '") + c + "' in bracket");
      value = value * 10 + (c - '0');
      any = true;
    }
    if (!any) fail(DigitFileError::Kind::invalid_character, "empty bracket digit");
    if (value >= base_.radix())
      throw DigitFileError(DigitFileError::Kind::digit_out_of_range, path_, open_line, open_column,
                           "digit [" + value.str() + "] is not valid in base " + std::to_string(base_.radix()));
    return static_cast<Digit>(value);
  }

  [[noreturn]] void fail(DigitFileError::Kind kind, const std::string& what) const {
    throw DigitFileError(kind, path_, line_, column_, what);
  }

  std::ifstream in_;
  std::string path_;
  Base base_;
  std::size_t line_;
  std::size_t column_ = 0;
};

}  // namespace detail

struct DigitFile {
  Base base;
  BigInt integer_part;
  DigitStream digits;
};

/// Opens a digit file, validates its header and returns a lazy stream over
/// its digits. Bad digits are reported when they are reached.
inline DigitFile open_digit_file(const std::filesystem::path& path) {
  const std::string name = path.string();
  std::ifstream in(path);
  if (!in) throw DigitFileError(DigitFileError::Kind::io, name, 0, 0, "cannot open file");

  std::string line;
  if (!std::getline(in, line))
    throw DigitFileError(DigitFileError::Kind::malformed_header, name, 1, 1, "missing 'base=<r>' header");
  const std::string_view header = detail::trim(line);
  if (header.substr(0, 5) != "base=")
    throw DigitFileError(DigitFileError::Kind::malformed_header, name, 1, 1, "expected 'base=<r>' header");
  std::optional<Base> base;
  try {
    const BigInt r = parse_bigint(header.substr(5));
    if (r < 2 || r > BigInt(UINT64_MAX)) throw std::invalid_argument("out of range");
    base.emplace(static_cast<std::uint64_t>(r));
  } catch (const std::invalid_argument&) {
    throw DigitFileError(DigitFileError::Kind::malformed_header, name, 1, 6,
                         "invalid base '" + std::string(header.substr(5)) + "'");
  }

  // Optional integer part on line 2.
  BigInt integer_part = 0;
  std::size_t next_line = 2;
  const auto mark = in.tellg();
  if (std::string second; std::getline(in, second)) {
    const std::string_view t = detail::trim(second);
    if (t.substr(0, 8) == "integer=") {
      try {
        integer_part = parse_bigint(t.substr(8));
      } catch (const std::invalid_argument&) {
        throw DigitFileError(DigitFileError::Kind::malformed_header, name, 2, 9,
                             "invalid integer part '" + std::string(t.substr(8)) + "'");
      }
      if (integer_part < 0)
        throw DigitFileError(DigitFileError::Kind::malformed_header, name, 2, 9, "negative integer part");
      next_line = 3;
    } else {
      in.clear();
      in.seekg(mark);
    }
  } else {
    in.clear();
  }

  DigitStream digits(*base, std::make_unique<detail::FileDigitSource>(std::move(in), name, *base, next_line));
  return DigitFile{*base, std::move(integer_part), std::move(digits)};
}

inline DigitStream file_digit_stream(const std::filesystem::path& path) { return open_digit_file(path).digits; }

/// Parses a literal alphanumeric digit string in the given base.
inline std::vector<Digit> parse_digit_literal(std::string_view text, Base base) {
  if (base.radix() > 36) throw std::invalid_argument("literal digit strings need a base of at most 36");
  std::vector<Digit> out;
  for (char c : text) {
    auto d = detail::alnum_digit(c);
    if (!d || !base.contains(*d))
      throw std::invalid_argument(std::string("invalid digit '") + c + "' for base " + std::to_string(base.radix()));
    out.push_back(*d);
  }
  return out;
}

struct RationalSpec {
  ExactRational value;
};
struct ChampernowneSpec {};
struct FileSpec {
  std::filesystem::path path;
};
struct RandomSpec {
  std::uint64_t seed = 0;
};
struct LiteralSpec {
  std::string digits;
};

/// Re-expandable description of a number: any base can be requested when
/// the stream is opened.
using SourceSpec = std::variant<RationalSpec, ChampernowneSpec, FileSpec, RandomSpec, LiteralSpec>;

inline SourceSpec parse_source_spec(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view kind = text.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  auto need_arg = [&] {
    if (colon == std::string_view::npos || arg.empty())
      throw std::invalid_argument("source '" + std::string(kind) + "' needs an argument");
  };
  if (kind == "rational") {
    need_arg();
    ExactRational q = ExactRational::parse(arg);
    if (q.sign() < 0 || q >= ExactRational(1))
      throw std::invalid_argument("rational source must lie in [0,1), got " + q.to_string());
    return RationalSpec{std::move(q)};
  }
  if (kind == "champernowne") {
    if (colon != std::string_view::npos) throw std::invalid_argument("champernowne takes no argument");
    return ChampernowneSpec{};
  }
  if (kind == "file") {
    need_arg();
    return FileSpec{std::filesystem::path(std::string(arg))};
  }
  if (kind == "random") {
    need_arg();
    const BigInt seed = parse_bigint(arg);
    if (seed < 0 || seed > BigInt(UINT64_MAX)) throw std::invalid_argument("seed must fit in 64 unsigned bits");
    return RandomSpec{static_cast<std::uint64_t>(seed)};
  }
  if (kind == "digits") {
    need_arg();
    return LiteralSpec{std::string(arg)};
  }
  throw std::invalid_argument("unknown source kind '" + std::string(kind) + "'");
}

inline std::string to_string(const SourceSpec& spec) {
  struct Visitor {
    std::string operator()(const RationalSpec& s) const { return "rational:" + s.value.to_string(); }
    std::string operator()(const ChampernowneSpec&) const { return "champernowne"; }
    std::string operator()(const FileSpec& s) const { return "file:" + s.path.string(); }
    std::string operator()(const RandomSpec& s) const { return "random:" + std::to_string(s.seed); }
    std::string operator()(const LiteralSpec& s) const { return "digits:" + s.digits; }
  };
  return std::visit(Visitor{}, spec);
}

struct SourceOptions {
  /// Fallback directory for relative file paths that do not exist as given.
  /// When unset, the NORMALITY_LAB_ASSETS environment variable is consulted.
  std::optional<std::filesystem::path> assets_dir;
};

inline std::filesystem::path resolve_digit_file(const std::filesystem::path& path, const SourceOptions& options = {}) {
  if (path.is_absolute() || std::filesystem::exists(path)) return path;
  std::vector<std::filesystem::path> dirs;
  if (const char* env = std::getenv("NORMALITY_LAB_ASSETS"); env != nullptr && *env != '\0') dirs.emplace_back(env);
  if (options.assets_dir) dirs.push_back(*options.assets_dir);
  for (const auto& dir : dirs)
    if (std::filesystem::exists(dir / path)) return dir / path;
  return path;
}

namespace detail {

/// Exponent n with from^n == to, if any.
inline std::optional<unsigned> power_exponent(Base from, Base to) {
  std::uint64_t value = from.radix();
  for (unsigned n = 1;; ++n) {
    if (value == to.radix()) return n;
    if (value > to.radix() / from.radix()) return std::nullopt;
    value *= from.radix();
  }
}

inline std::pair<BigInt, DigitStream> open_with_integer(const SourceSpec& spec, Base base,
                                                         const SourceOptions& options) {
  if (const auto* s = std::get_if<RationalSpec>(&spec)) return {0, rational_stream(s->value, base)};
  if (std::holds_alternative<ChampernowneSpec>(spec)) return {0, champernowne_stream(base)};
  if (const auto* s = std::get_if<RandomSpec>(&spec)) return {0, random_stream(base, s->seed)};
  if (const auto* s = std::get_if<LiteralSpec>(&spec)) return {0, make_finite_stream(base, parse_digit_literal(s->digits, base))};
  const auto& file = std::get<FileSpec>(spec);
  DigitFile opened = open_digit_file(resolve_digit_file(file.path, options));
  const auto exponent = power_exponent(opened.base, base);
  if (!exponent)
    throw std::invalid_argument("digit file is in base " + std::to_string(opened.base.radix()) +
                                "; requested base " + std::to_string(base.radix()) + " is not a power of it");
  return {std::move(opened.integer_part), regroup_to_power_base(std::move(opened.digits), *exponent)};
}

}  // namespace detail

/// Fractional digits of the described number in the requested base.
inline DigitStream open_stream(const SourceSpec& spec, Base base, const SourceOptions& options = {}) {
  return detail::open_with_integer(spec, base, options).second;
}

/// Full expansion (integer part included) for display. Rationals carry
/// their period metadata.
inline DigitExpansion open_expansion(const SourceSpec& spec, Base base, std::size_t count,
                                     const SourceOptions& options = {}) {
  if (const auto* s = std::get_if<RationalSpec>(&spec)) return expand_rational(s->value, base, count);
  auto [integer_part, stream] = detail::open_with_integer(spec, base, options);
  return expansion_from_stream(integer_part, std::move(stream));
}

}  // namespace normality
