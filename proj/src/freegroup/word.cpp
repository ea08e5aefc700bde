#include "bt/freegroup/word.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "bt/error.hpp"

namespace bt::freegroup {

char to_char(Letter x) {
  switch (x) {
    case Letter::a: return 'a';
    case Letter::b: return 'b';
    case Letter::a_inv: return 'A';
    case Letter::b_inv: return 'B';
  }
  return '?';
}

Letter letter_from_char(char c) {
  switch (c) {
    case 'a': return Letter::a;
    case 'b': return Letter::b;
    case 'A': return Letter::a_inv;
    case 'B': return Letter::b_inv;
    default: throw ParseError(std::string("unknown letter '") + c + "' (expected a, b, A, B)");
  }
}

std::string to_string(PrefixClass c) {
  switch (c) {
    case PrefixClass::Wa: return "W(a)";
    case PrefixClass::Wa_inv: return "W(a^-1)";
    case PrefixClass::Wb: return "W(b)";
    case PrefixClass::Wb_inv: return "W(b^-1)";
    case PrefixClass::Identity: return "identity";
  }
  return "?";
}

PrefixClass prefix_class_of(Letter first) {
  switch (first) {
    case Letter::a: return PrefixClass::Wa;
    case Letter::a_inv: return PrefixClass::Wa_inv;
    case Letter::b: return PrefixClass::Wb;
    case Letter::b_inv: return PrefixClass::Wb_inv;
  }
  return PrefixClass::Identity;
}

Word Word::reduce(std::span<const Letter> letters) {
  Word w;
  for (Letter x : letters) w = w.append(x);
  return w;
}

Word Word::parse(std::string_view text) {
  if (text == "e" || text == "ε") return {};
  std::vector<Letter> letters;
  letters.reserve(text.size());
  for (char c : text) letters.push_back(letter_from_char(c));
  return reduce(letters);
}

std::vector<Letter> Word::letters() const {
  std::vector<Letter> out;
  out.reserve(size_);
  for (std::size_t i = 0; i < size_; ++i) out.push_back((*this)[i]);
  return out;
}

Word Word::prepend(Letter x) const {
  Word out;
  if (size_ > 0 && first() == freegroup::inverse(x)) {
    out.bits_ = bits_ >> 2;
    out.size_ = static_cast<std::uint8_t>(size_ - 1);
    return out;
  }
  if (size_ == kMaxLength) throw std::length_error("word exceeds 32 letters");
  out.bits_ = (bits_ << 2) | static_cast<std::uint64_t>(x);
  out.size_ = static_cast<std::uint8_t>(size_ + 1);
  return out;
}

Word Word::append(Letter x) const {
  Word out;
  if (size_ > 0 && last() == freegroup::inverse(x)) {
    const std::size_t n = size_ - 1u;
    out.bits_ = n == 0 ? 0 : bits_ & ((std::uint64_t{1} << (2 * n)) - 1);
    out.size_ = static_cast<std::uint8_t>(n);
    return out;
  }
  if (size_ == kMaxLength) throw std::length_error("word exceeds 32 letters");
  out.bits_ = bits_ | (static_cast<std::uint64_t>(x) << (2 * size_));
  out.size_ = static_cast<std::uint8_t>(size_ + 1);
  return out;
}

Word Word::inverse() const {
  Word out;
  for (std::size_t i = size_; i-- > 0;) out = out.append(freegroup::inverse((*this)[i]));
  return out;
}

Word operator*(const Word& u, const Word& v) {
  Word out = u;
  for (std::size_t i = 0; i < v.size(); ++i) out = out.append(v[i]);
  return out;
}

std::string Word::str() const {
  std::string out;
  out.reserve(size_);
  for (std::size_t i = 0; i < size_; ++i) out.push_back(to_char((*this)[i]));
  return out;
}

std::string Word::display() const { return empty() ? "ε" : str(); }

std::strong_ordering operator<=>(const Word& u, const Word& v) {
  if (u.size_ != v.size_) return u.size_ <=> v.size_;
  for (std::size_t i = 0; i < u.size_; ++i) {
    const auto x = static_cast<std::uint8_t>(u[i]);
    const auto y = static_cast<std::uint8_t>(v[i]);
    if (x != y) return x <=> y;
  }
  return std::strong_ordering::equal;
}

PrefixClass classify_prefix(const Word& w) { return w.empty() ? PrefixClass::Identity : prefix_class_of(w.first()); }

std::uint64_t sphere_count(int n) {
  if (n < 0) return 0;
  if (n == 0) return 1;
  std::uint64_t out = 4;
  for (int i = 1; i < n; ++i) out *= 3;
  return out;
}

std::uint64_t ball_count(int L) {
  std::uint64_t out = 0;
  for (int n = 0; n <= L; ++n) out += sphere_count(n);
  return out;
}

std::vector<Word> next_level(const std::vector<Word>& level) {
  std::vector<Word> out;
  out.reserve(level.size() * 3 + 4);
  for (Letter x : kLetters) {
    for (const Word& w : level) {
      if (!w.empty() && w.first() == inverse(x)) continue;
      out.push_back(w.prepend(x));
    }
  }
  return out;
}

std::vector<Word> enumerate_ball(int L) {
  if (L < 0) throw std::invalid_argument("enumerate_ball: depth must be non-negative");
  std::vector<Word> out{Word{}};
  std::vector<Word> level{Word{}};
  for (int n = 1; n <= L; ++n) {
    level = next_level(level);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

TranslateIdentityReport check_translate_identity(int L) {
  if (L < 1) throw std::invalid_argument("check_translate_identity: depth must be at least 1");
  TranslateIdentityReport report;
  report.depth = L;
  const std::vector<Word> ball = enumerate_ball(L);
  report.words_checked = ball.size();

  struct Decomposition {
    Letter generator;
    PrefixClass kept;
    PrefixClass translated;
  };
  const Decomposition decompositions[] = {{Letter::a, PrefixClass::Wa, PrefixClass::Wa_inv},
                                          {Letter::b, PrefixClass::Wb, PrefixClass::Wb_inv}};
  for (const auto& dec : decompositions) {
    std::unordered_map<Word, int, WordHash> multiplicity;
    multiplicity.reserve(ball.size());
    for (const Word& w : ball)
      if (w.size() <= static_cast<std::size_t>(L - 1)) multiplicity.emplace(w, 0);
    const std::string name = std::string(1, to_char(dec.generator));
    for (const Word& w : ball) {
      const PrefixClass c = classify_prefix(w);
      if (c == dec.kept && w.size() <= static_cast<std::size_t>(L - 1)) ++multiplicity[w];
      if (c == dec.translated) {
        const Word image = w.prepend(dec.generator);
        auto it = multiplicity.find(image);
        if (it == multiplicity.end()) {
          report.failures.push_back(name + "-translate of " + w.display() + " leaves the radius-" +
                                    std::to_string(L - 1) + " ball");
        } else {
          ++it->second;
        }
      }
    }
    std::vector<Word> bad;
    for (const auto& [w, m] : multiplicity)
      if (m != 1) bad.push_back(w);
    std::sort(bad.begin(), bad.end());
    for (const Word& w : bad)
      report.failures.push_back(w.display() + " covered " + std::to_string(multiplicity[w]) + " times by W(" + name +
                                ") ⊔ " + name + "W(" + name + "^-1)");
  }
  return report;
}

}  // namespace bt::freegroup
