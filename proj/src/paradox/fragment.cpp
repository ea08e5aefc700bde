#include "bt/paradox/fragment.hpp"

#include <map>

namespace bt::paradox {

std::optional<Word> Fragment::find(const AnyPoint& p) const { return find_key(key(p)); }

std::optional<Word> Fragment::find_key(const std::string& k) const {
  const auto it = index_.find(k);
  if (it == index_.end()) return std::nullopt;
  return points_[it->second].word;
}

Fragment orbit_fragment(const AnyPoint& seed, const ActingPair& pair, int depth, const std::string& origin) {
  if (depth < 0) throw std::invalid_argument("orbit_fragment: negative depth");
  Fragment f;
  f.seed_ = seed;
  f.pair_ = pair;
  f.depth_ = depth;
  auto add = [&f, &origin](ProvenancedPoint p) {
    std::string k = key(p.point);
    const auto [it, inserted] = f.index_.emplace(k, f.points_.size());
    if (!inserted) {
      const Word& earlier = f.points_[it->second].word;
      const Word fixing = earlier.inverse() * p.word;
      throw FixedSeedError(fixing, "seed is fixed by the word " + fixing.str() + " (" + earlier.display() + "·seed = " +
                                       p.word.display() + "·seed)");
    }
    p.origin = origin;
    f.points_.push_back(std::move(p));
  };
  add({seed, Word{}, -1, origin});
  std::size_t level_begin = 0;
  for (int len = 1; len <= depth; ++len) {
    const std::size_t level_end = f.points_.size();
    for (Letter x : freegroup::kLetters) {
      for (std::size_t i = level_begin; i < level_end; ++i) {
        const Word& w = f.points_[i].word;
        if (!w.empty() && w.first() == freegroup::inverse(x)) continue;
        const Word next = w.prepend(x);
        AnyPoint moved = act(pair.image(x), f.points_[i].point);
        add({std::move(moved), next, -1, origin});
      }
    }
    level_begin = level_end;
  }
  return f;
}

Json ReassemblyReport::to_json() const {
  Json j{{"depth", depth},
         {"pieces",
          {{"W(a)", piece_sizes[0]},
           {"W(a^-1)", piece_sizes[1]},
           {"W(b)", piece_sizes[2]},
           {"W(b^-1)", piece_sizes[3]},
           {"identity", piece_sizes[4]}}},
         {"covered_checked", covered_checked},
         {"failures", failures},
         {"examples", examples}};
  j["failure_radius"] = failure_radius ? Json(*failure_radius) : Json(nullptr);
  return j;
}

ReassemblyReport check_reassembly(const Fragment& f, const AnyMatrix& translate_a, const AnyMatrix& translate_b) {
  using freegroup::PrefixClass;
  ReassemblyReport r;
  r.depth = f.depth();
  const int inner = f.depth() - 1;
  auto note = [&r](int radius, const std::string& msg) {
    ++r.failures;
    if (!r.failure_radius || radius < *r.failure_radius) r.failure_radius = radius;
    if (r.examples.size() < 5) r.examples.push_back(msg);
  };
  for (const auto& p : f.points()) ++r.piece_sizes[static_cast<std::size_t>(freegroup::classify_prefix(p.word))];

  for (Letter x : {Letter::a, Letter::b}) {
    const PrefixClass own = freegroup::prefix_class_of(x);
    const PrefixClass moved = freegroup::prefix_class_of(freegroup::inverse(x));
    const AnyMatrix& t = x == Letter::a ? translate_a : translate_b;
    // Multiplicity of each radius-(L-1) word, keyed by its position.
    std::map<Word, int> count;
    for (const auto& p : f.points()) {
      if (static_cast<int>(p.word.size()) > inner) continue;
      count[p.word] = freegroup::classify_prefix(p.word) == own ? 1 : 0;
    }
    for (const auto& p : f.points()) {
      if (freegroup::classify_prefix(p.word) != moved) continue;
      const auto hit = f.find(act(t, p.point));
      if (!hit) {
        note(static_cast<int>(p.word.size()) - 1,
             std::string(1, freegroup::to_char(x)) + "-translate of " + p.word.display() + "·seed leaves the fragment");
        continue;
      }
      if (static_cast<int>(hit->size()) <= inner) ++count[*hit];
    }
    for (const auto& [w, c] : count) {
      ++r.covered_checked;
      if (c != 1)
        note(static_cast<int>(w.size()), w.display() + "·seed covered " + std::to_string(c) + " times by W(" +
                                              std::string(1, freegroup::to_char(x)) + ") and its translate");
    }
  }
  return r;
}

}  // namespace bt::paradox
