#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bt::freegroup {

/// Generators of F₂ and their inverses. Text form: a, b, A (= a⁻¹), B (= b⁻¹).
enum class Letter : std::uint8_t { a = 0, b = 1, a_inv = 2, b_inv = 3 };

/// Shortlex letter order used by every enumeration.
inline constexpr std::array<Letter, 4> kLetters = {Letter::a, Letter::b, Letter::a_inv, Letter::b_inv};

constexpr Letter inverse(Letter x) { return static_cast<Letter>((static_cast<std::uint8_t>(x) + 2) % 4); }
char to_char(Letter x);
Letter letter_from_char(char c);

enum class PrefixClass { Wa, Wa_inv, Wb, Wb_inv, Identity };

std::string to_string(PrefixClass c);
PrefixClass prefix_class_of(Letter first);

/// A reduced word of F₂, stored inline (two bits per letter, at most 32
/// letters). Every constructor and product reduces, so no adjacent
/// letter-inverse pair is ever stored.
class Word {
 public:
  static constexpr std::size_t kMaxLength = 32;

  Word() = default;
  explicit Word(Letter x) : bits_(static_cast<std::uint64_t>(x)), size_(1) {}

  /// Free reduction of an arbitrary letter sequence.
  static Word reduce(std::span<const Letter> letters);
  /// Parses letters "abAB"; "" and "e" denote the identity. Reduces.
  static Word parse(std::string_view text);

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  Letter operator[](std::size_t i) const { return static_cast<Letter>((bits_ >> (2 * i)) & 3u); }
  Letter first() const { return (*this)[0]; }
  Letter last() const { return (*this)[size_ - 1]; }
  std::vector<Letter> letters() const;

  [[nodiscard]] Word prepend(Letter x) const;
  [[nodiscard]] Word append(Letter x) const;
  Word inverse() const;
  friend Word operator*(const Word& u, const Word& v);

  /// "" for the identity.
  std::string str() const;
  /// "ε" for the identity; for messages.
  std::string display() const;

  std::uint64_t bits() const { return bits_; }

  friend bool operator==(const Word&, const Word&) = default;
  /// Shortlex: shorter first, then letterwise in kLetters order.
  friend std::strong_ordering operator<=>(const Word& u, const Word& v);

 private:
  std::uint64_t bits_ = 0;
  std::uint8_t size_ = 0;
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    return std::hash<std::uint64_t>{}(w.bits() * 0x9E3779B97F4A7C15ull ^ w.size());
  }
};

PrefixClass classify_prefix(const Word& w);

/// Number of reduced words of length exactly n: 1, 4, 12, 36, ...
std::uint64_t sphere_count(int n);
/// Number of reduced words of length ≤ L: 2·3^L - 1.
std::uint64_t ball_count(int L);

/// Every reduced word of length ≤ L exactly once, in shortlex order.
std::vector<Word> enumerate_ball(int L);

/// Words of length L+1 obtained by prepending a letter to each word of
/// `level` (all of length L), in shortlex order when `level` is.
std::vector<Word> next_level(const std::vector<Word>& level);

struct TranslateIdentityReport {
  int depth = 0;
  std::uint64_t words_checked = 0;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

/// On the ball of radius L-1, F₂ = W(a) ⊔ a·W(a⁻¹) and F₂ = W(b) ⊔ b·W(b⁻¹),
/// where the translated classes range over words of length ≤ L. Each ball
/// word must be covered exactly once by each decomposition.
TranslateIdentityReport check_translate_identity(int L);

}  // namespace bt::freegroup
