#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "bt/freegroup/pair.hpp"

namespace bt::freegroup {

struct FreenessReport {
  std::string pair;
  int max_len = 0;
  std::uint64_t words_checked = 0;
  /// Shortlex-least word of the first failing length that evaluates to I.
  std::optional<Word> counterexample;
  bool passed() const { return !counterexample.has_value(); }
};

/// Exact check that no nonidentity reduced word of length ≤ max_len
/// evaluates to the identity. Words are expanded one length at a time with
/// their matrices, so each word costs a single matrix product. The report
/// does not depend on `jobs`.
template <class S>
FreenessReport check_freeness(const GeneratorPair<S>& pair, int max_len, unsigned jobs = 1) {
  if (max_len < 1) throw std::invalid_argument("check_freeness: max length must be at least 1");
  if (jobs == 0) jobs = 1;
  struct Node {
    Word word;
    Matrix<S> value;
  };
  FreenessReport report;
  report.pair = pair.label();
  report.max_len = max_len;
  const Matrix<S> id = Matrix<S>::identity(pair.dim());

  std::vector<Node> level{{Word{}, id}};
  for (int len = 1; len <= max_len; ++len) {
    const std::size_t chunks = std::min<std::size_t>(jobs, level.size());
    std::vector<std::vector<Node>> next(chunks);
    std::vector<std::optional<Word>> found(chunks);
    auto work = [&](std::size_t c) {
      const std::size_t lo = level.size() * c / chunks;
      const std::size_t hi = level.size() * (c + 1) / chunks;
      for (std::size_t i = lo; i < hi; ++i) {
        const Node& node = level[i];
        for (Letter y : kLetters) {
          if (!node.word.empty() && node.word.last() == inverse(y)) continue;
          Node child{node.word.append(y), node.value * pair.image(y)};
          if (child.value == id && (!found[c] || child.word < *found[c])) found[c] = child.word;
          if (len < max_len) next[c].push_back(std::move(child));
        }
      }
    };
    if (chunks == 1) {
      work(0);
    } else {
      std::vector<std::thread> threads;
      for (std::size_t c = 0; c < chunks; ++c) threads.emplace_back(work, c);
      for (auto& t : threads) t.join();
    }
    report.words_checked += sphere_count(len);
    for (const auto& f : found)
      if (f && (!report.counterexample || *f < *report.counterexample)) report.counterexample = f;
    if (report.counterexample) return report;
    level.clear();
    for (auto& part : next) std::move(part.begin(), part.end(), std::back_inserter(level));
  }
  return report;
}

}  // namespace bt::freegroup
