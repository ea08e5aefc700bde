#include "bt/spaces/descriptor.hpp"

#include <cctype>
#include <charconv>

#include "bt/error.hpp"

namespace bt::spaces {

char to_char(Field k) {
  switch (k) {
    case Field::R: return 'R';
    case Field::C: return 'C';
    case Field::H: return 'H';
  }
  return '?';
}

Field field_from_string(const std::string& text) {
  if (text == "R") return Field::R;
  if (text == "C") return Field::C;
  if (text == "H") return Field::H;
  throw ParseError("unknown field '" + text + "' (expected R, C or H)");
}

SpaceDescriptor SpaceDescriptor::sphere(std::size_t n) {
  SpaceDescriptor d;
  d.kind = Kind::Sphere;
  d.n = n;
  return d;
}

SpaceDescriptor SpaceDescriptor::projective(Field f, std::size_t n) {
  SpaceDescriptor d;
  d.kind = Kind::Projective;
  d.field = f;
  d.n = n;
  return d;
}

SpaceDescriptor SpaceDescriptor::grassmann(Field f, std::size_t n, std::size_t k) {
  SpaceDescriptor d;
  d.kind = Kind::Grassmann;
  d.field = f;
  d.n = n;
  d.k = k;
  return d;
}

SpaceDescriptor SpaceDescriptor::flag(Field f, std::vector<std::size_t> dims) {
  SpaceDescriptor d;
  d.kind = Kind::Flag;
  d.field = f;
  d.n = dims.empty() ? 0 : dims.back();
  d.dims = std::move(dims);
  return d;
}

namespace {

// proj(K,n) and grass(K,n,1) as (n, k) pairs; other kinds unchanged.
bool grassmann_form(const SpaceDescriptor& d, std::size_t& k) {
  if (d.kind == SpaceDescriptor::Kind::Projective) {
    k = 1;
    return true;
  }
  if (d.kind == SpaceDescriptor::Kind::Grassmann) {
    k = d.k;
    return true;
  }
  return false;
}

}  // namespace

bool SpaceDescriptor::same_space(const SpaceDescriptor& other) const {
  std::size_t k1 = 0, k2 = 0;
  if (grassmann_form(*this, k1) && grassmann_form(other, k2))
    return field == other.field && n == other.n && k1 == k2;
  return *this == other;
}

std::string SpaceDescriptor::str() const {
  const std::string f(1, to_char(field));
  switch (kind) {
    case Kind::Sphere: return "sphere(" + std::to_string(n) + ")";
    case Kind::Projective: return "proj(" + f + "," + std::to_string(n) + ")";
    case Kind::Grassmann: return "grass(" + f + "," + std::to_string(n) + "," + std::to_string(k) + ")";
    case Kind::Flag: {
      std::string out = "flag(" + f + ";";
      for (std::size_t i = 0; i < dims.size(); ++i) out += (i ? "," : "") + std::to_string(dims[i]);
      return out + ")";
    }
  }
  return "?";
}

void validate(const SpaceDescriptor& d) {
  const std::string nk = std::to_string(base_dimension(d.field));
  const std::string f(1, to_char(d.field));
  switch (d.kind) {
    case SpaceDescriptor::Kind::Sphere:
      if (d.n < 2) throw ConstraintError(d.str() + ": spheres are paradoxical only for n >= 2");
      return;
    case SpaceDescriptor::Kind::Projective:
      if (d.n < base_dimension(d.field))
        throw ConstraintError(d.str() + ": requires n >= n_K = " + nk + " for K = " + f);
      return;
    case SpaceDescriptor::Kind::Grassmann:
      if (d.n < base_dimension(d.field))
        throw ConstraintError(d.str() + ": requires n >= n_K = " + nk + " for K = " + f);
      if (d.k < 1 || d.k + 1 > d.n) throw ConstraintError(d.str() + ": requires 1 <= k <= n-1");
      return;
    case SpaceDescriptor::Kind::Flag: {
      if (d.dims.empty()) throw ConstraintError("flag: empty dimension list");
      for (std::size_t i = 0; i < d.dims.size(); ++i) {
        if (d.dims[i] == 0) throw ConstraintError(d.str() + ": dimensions must be positive");
        if (i > 0 && d.dims[i] <= d.dims[i - 1])
          throw ConstraintError(d.str() + ": dimensions must be strictly increasing");
      }
      if (d.dims.size() < 2)
        throw ConstraintError(d.str() + ": a flag needs a proper component 0 < d_i < n (a one-point space is not paradoxical)");
      if (d.n < base_dimension(d.field))
        throw ConstraintError(d.str() + ": requires n = d_k >= n_K = " + nk + " for K = " + f);
      return;
    }
  }
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  std::string word() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }
  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::size_t number() {
    skip_space();
    std::size_t value = 0;
    const auto* begin = text_.data() + pos_;
    const auto [ptr, ec] = std::from_chars(begin, text_.data() + text_.size(), value);
    if (ec != std::errc{} || ptr == begin) fail("expected a non-negative integer");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return value;
  }
  Field field() {
    const std::string w = word();
    if (w.empty()) fail("expected a field R, C or H");
    return field_from_string(w);
  }
  void finish() {
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters");
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("cannot parse space '" + std::string(text_) + "': " + what + " at position " +
                     std::to_string(pos_));
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

SpaceDescriptor parse_descriptor(std::string_view text) {
  Parser p(text);
  const std::string head = p.word();
  SpaceDescriptor d;
  p.expect('(');
  if (head == "sphere") {
    d = SpaceDescriptor::sphere(p.number());
  } else if (head == "proj") {
    const Field f = p.field();
    p.expect(',');
    d = SpaceDescriptor::projective(f, p.number());
  } else if (head == "grass") {
    const Field f = p.field();
    p.expect(',');
    const std::size_t n = p.number();
    p.expect(',');
    d = SpaceDescriptor::grassmann(f, n, p.number());
  } else if (head == "flag") {
    const Field f = p.field();
    p.expect(';');
    std::vector<std::size_t> dims{p.number()};
    while (p.accept(',')) dims.push_back(p.number());
    d = SpaceDescriptor::flag(f, std::move(dims));
  } else {
    p.fail("unknown space '" + head + "' (expected sphere, proj, grass or flag)");
  }
  p.expect(')');
  p.finish();
  validate(d);
  return d;
}

}  // namespace bt::spaces
