#include "stringy/count.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <optional>
#include <set>

#include "stringy/errors.hpp"

namespace stringy {

// ---- CountPoly -------------------------------------------------------------

CountPoly::CountPoly(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) {
  trim();
}

CountPoly CountPoly::constant(const mpz_class& c) { return CountPoly({c}); }

CountPoly CountPoly::q_power(unsigned k) {
  std::vector<mpz_class> c(k + 1, mpz_class(0));
  c[k] = 1;
  return CountPoly(std::move(c));
}

CountPoly CountPoly::geometric(unsigned k) {
  return CountPoly(std::vector<mpz_class>(k + 1, mpz_class(1)));
}

void CountPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

mpz_class CountPoly::operator()(const mpz_class& q) const {
  mpz_class acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * q + *it;
  return acc;
}

CountPoly operator+(const CountPoly& a, const CountPoly& b) {
  std::vector<mpz_class> c(std::max(a.coeffs_.size(), b.coeffs_.size()), mpz_class(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
  return CountPoly(std::move(c));
}

CountPoly operator-(const CountPoly& a, const CountPoly& b) {
  std::vector<mpz_class> c(std::max(a.coeffs_.size(), b.coeffs_.size()), mpz_class(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] -= b.coeffs_[i];
  return CountPoly(std::move(c));
}

CountPoly operator*(const CountPoly& a, const CountPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpz_class> c(a.coeffs_.size() + b.coeffs_.size() - 1, mpz_class(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return CountPoly(std::move(c));
}

CountPoly CountPoly::pow(unsigned k) const {
  CountPoly out = constant(1);
  for (unsigned i = 0; i < k; ++i) out = out * *this;
  return out;
}

EPoly CountPoly::to_epoly() const { return EPoly::from_w_coefficients(coeffs_); }

std::string CountPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    const mpz_class& c = coeffs_[k];
    if (c == 0) continue;
    if (!out.empty()) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    const mpz_class mag = abs(c);
    if (k == 0) {
      out += mag.get_str();
      continue;
    }
    if (mag != 1) out += mag.get_str() + "*";
    out += k == 1 ? "q" : "q^" + std::to_string(k);
  }
  return out;
}

// ---- CountScheme -----------------------------------------------------------

CountScheme CountScheme::affine(unsigned n) {
  CountScheme s;
  s.kind_ = Kind::Affine;
  s.n_ = s.dimension_ = n;
  s.count_ = CountPoly::q_power(n);
  return s;
}

CountScheme CountScheme::projective(unsigned n) {
  CountScheme s;
  s.kind_ = Kind::Projective;
  s.n_ = s.dimension_ = n;
  s.count_ = CountPoly::geometric(n);
  return s;
}

CountScheme CountScheme::torus(unsigned n) {
  CountScheme s;
  s.kind_ = Kind::Torus;
  s.n_ = s.dimension_ = n;
  s.count_ = CountPoly({-1, 1}).pow(n);
  return s;
}

CountScheme CountScheme::point() {
  CountScheme s;
  s.kind_ = Kind::Point;
  s.count_ = CountPoly::constant(1);
  return s;
}

CountScheme CountScheme::product(CountScheme a, CountScheme b) {
  CountScheme s;
  s.kind_ = Kind::Product;
  s.dimension_ = a.dimension_ + b.dimension_;
  s.count_ = a.count_ * b.count_;
  s.children_ = {std::move(a), std::move(b)};
  return s;
}

CountScheme CountScheme::disjoint_union(CountScheme a, CountScheme b) {
  CountScheme s;
  s.kind_ = Kind::DisjointUnion;
  s.dimension_ = std::max(a.dimension_, b.dimension_);
  s.count_ = a.count_ + b.count_;
  s.children_ = {std::move(a), std::move(b)};
  return s;
}

CountScheme CountScheme::complement(CountScheme ambient, CountScheme closed) {
  CountScheme s;
  s.kind_ = Kind::Complement;
  s.dimension_ = ambient.dimension_;
  s.count_ = ambient.count_ - closed.count_;
  if (s.count_(2) < 0) {
    throw NegativeCount("complement(" + ambient.to_string() + "," + closed.to_string() +
                        ") has negative count " + s.count_(2).get_str() + " at q = 2");
  }
  s.children_ = {std::move(ambient), std::move(closed)};
  return s;
}

CountScheme CountScheme::blowup_origin_affine(unsigned n) {
  CountScheme s;
  s.kind_ = Kind::BlowupOriginAffine;
  s.n_ = s.dimension_ = n;
  s.count_ = CountPoly::q_power(n) - CountPoly::constant(1) +
             (n == 0 ? CountPoly() : CountPoly::geometric(n - 1));
  return s;
}

bool CountScheme::has_gauge_form() const noexcept {
  return kind_ == Kind::Affine || kind_ == Kind::Torus;
}

std::string CountScheme::to_string() const {
  switch (kind_) {
    case Kind::Affine:
      return "affine(" + std::to_string(n_) + ")";
    case Kind::Projective:
      return "projective(" + std::to_string(n_) + ")";
    case Kind::Torus:
      return "torus(" + std::to_string(n_) + ")";
    case Kind::Point:
      return "point";
    case Kind::Product:
      return "product(" + children_[0].to_string() + "," + children_[1].to_string() + ")";
    case Kind::DisjointUnion:
      return "disjoint_union(" + children_[0].to_string() + "," +
             children_[1].to_string() + ")";
    case Kind::Complement:
      return "complement(" + children_[0].to_string() + "," + children_[1].to_string() +
             ")";
    case Kind::BlowupOriginAffine:
      return "blowup_origin_affine(" + std::to_string(n_) + ")";
  }
  return "?";
}

// ---- parser ----------------------------------------------------------------

namespace {

class SchemeParser {
 public:
  explicit SchemeParser(std::string_view text) {
    for (char c : text) {
      if (!std::isspace(static_cast<unsigned char>(c))) text_ += c;
    }
  }

  CountScheme parse() {
    CountScheme s = expr();
    if (pos_ != text_.size()) fail("trailing text");
    return s;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError(0, "scheme expression '" + text_ + "': " + why + " at offset " +
                            std::to_string(pos_));
  }

  std::string ident() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) fail("expected a constructor name");
    return text_.substr(start, pos_ - start);
  }

  void expect(char c) {
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  unsigned number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_ || pos_ - start > 4) fail("expected a small non-negative integer");
    return static_cast<unsigned>(std::stoul(text_.substr(start, pos_ - start)));
  }

  unsigned int_arg() {
    expect('(');
    const unsigned n = number();
    expect(')');
    return n;
  }

  std::vector<CountScheme> scheme_args() {
    expect('(');
    std::vector<CountScheme> out{expr()};
    while (pos_ < text_.size() && text_[pos_] == ',') {
      ++pos_;
      out.push_back(expr());
    }
    expect(')');
    return out;
  }

  CountScheme fold(std::vector<CountScheme> args,
                   CountScheme (*op)(CountScheme, CountScheme)) {
    if (args.size() < 2) fail("expected at least two arguments");
    CountScheme acc = std::move(args[0]);
    for (std::size_t i = 1; i < args.size(); ++i) acc = op(std::move(acc), std::move(args[i]));
    return acc;
  }

  CountScheme expr() {
    const std::string name = ident();
    if (name == "affine") return CountScheme::affine(int_arg());
    if (name == "projective") return CountScheme::projective(int_arg());
    if (name == "torus") return CountScheme::torus(int_arg());
    if (name == "blowup_origin_affine") return CountScheme::blowup_origin_affine(int_arg());
    if (name == "point") {
      if (pos_ + 1 < text_.size() && text_[pos_] == '(' && text_[pos_ + 1] == ')') pos_ += 2;
      return CountScheme::point();
    }
    if (name == "product") return fold(scheme_args(), &CountScheme::product);
    if (name == "disjoint_union") return fold(scheme_args(), &CountScheme::disjoint_union);
    if (name == "complement") {
      auto args = scheme_args();
      if (args.size() != 2) fail("complement takes (ambient, closed)");
      return CountScheme::complement(std::move(args[0]), std::move(args[1]));
    }
    fail("unknown constructor '" + name + "'");
  }

  std::string text_;
  std::size_t pos_ = 0;
};

}  // namespace

CountScheme parse_scheme(std::string_view text) { return SchemeParser(text).parse(); }

mpz_class count_points(const CountScheme& s, const mpz_class& q) {
  if (q < 2) throw InvalidField("count_points needs q >= 2");
  return s.count()(q);
}

// ---- brute force -----------------------------------------------------------

namespace {

using Point = std::vector<std::uint8_t>;
using Embedding = std::function<Point(const Point&)>;

constexpr std::size_t kMaxPoints = 2'000'000;
constexpr std::uint8_t kUnionTag = 200;

void guard(double size, const CountScheme& s) {
  if (size > static_cast<double>(kMaxPoints)) {
    throw Unenumerable(s.to_string() + " has too many points to enumerate");
  }
}

/// All tuples in F_q^n, optionally restricted to non-zero coordinates.
std::vector<Point> tuples(unsigned n, unsigned q, bool units_only) {
  const unsigned lo = units_only ? 1 : 0;
  std::vector<Point> out;
  Point cur(n, static_cast<std::uint8_t>(lo));
  while (true) {
    out.push_back(cur);
    std::size_t i = 0;
    while (i < n) {
      if (cur[i] + 1u < q) {
        ++cur[i];
        break;
      }
      cur[i] = static_cast<std::uint8_t>(lo);
      ++i;
    }
    if (i == n) break;
  }
  return out;
}

bool is_projective_rep(const Point& p) {
  for (auto c : p) {
    if (c != 0) return c == 1;
  }
  return false;
}

std::optional<Embedding> embedding(const CountScheme& closed, const CountScheme& ambient) {
  using K = CountScheme::Kind;
  const unsigned k = closed.n();
  const unsigned n = ambient.n();
  switch (ambient.kind()) {
    case K::Affine:
      if (closed.kind() == K::Point) return [n](const Point&) { return Point(n, 0); };
      if ((closed.kind() == K::Affine || closed.kind() == K::Torus) && k <= n) {
        return [n](const Point& p) {
          Point out = p;
          out.resize(n, 0);
          return out;
        };
      }
      break;
    case K::Projective:
      if (closed.kind() == K::Point) {
        return [n](const Point&) {
          Point out(n + 1, 0);
          out[0] = 1;
          return out;
        };
      }
      if (closed.kind() == K::Projective && k <= n) {
        return [n](const Point& p) {
          Point out = p;
          out.resize(n + 1, 0);
          return out;
        };
      }
      if (closed.kind() == K::Affine && k <= n) {
        return [n](const Point& p) {
          Point out{1};
          out.insert(out.end(), p.begin(), p.end());
          out.resize(n + 1, 0);
          return out;
        };
      }
      break;
    case K::Torus:
      if (closed.kind() == K::Point) return [n](const Point&) { return Point(n, 1); };
      if (closed.kind() == K::Torus && k <= n) {
        return [n](const Point& p) {
          Point out = p;
          out.resize(n, 1);
          return out;
        };
      }
      break;
    case K::Product: {
      const auto& a = ambient.children()[0];
      const auto& b = ambient.children()[1];
      if (closed.kind() == K::Product) {
        auto ea = embedding(closed.children()[0], a);
        auto eb = embedding(closed.children()[1], b);
        if (!ea || !eb) break;
        // Split the closed point at the dimension of its first factor.
        auto width = [](const CountScheme& s) -> std::optional<std::size_t> {
          switch (s.kind()) {
            case K::Affine:
            case K::Torus:
              return s.n();
            case K::Projective:
              return s.n() + 1;
            case K::Point:
              return 0;
            default:
              return std::nullopt;
          }
        };
        const auto w = width(closed.children()[0]);
        if (!w) break;
        return [ea = *ea, eb = *eb, w = *w](const Point& p) {
          Point left(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(w));
          Point right(p.begin() + static_cast<std::ptrdiff_t>(w), p.end());
          Point out = ea(left);
          const Point r = eb(right);
          out.insert(out.end(), r.begin(), r.end());
          return out;
        };
      }
      if (closed.kind() == K::Point) {
        auto ea = embedding(closed, a);
        auto eb = embedding(closed, b);
        if (!ea || !eb) break;
        return [ea = *ea, eb = *eb](const Point& p) {
          Point out = ea(p);
          const Point r = eb(p);
          out.insert(out.end(), r.begin(), r.end());
          return out;
        };
      }
      break;
    }
    default:
      break;
  }
  return std::nullopt;
}

std::vector<Point> enumerate(const CountScheme& s, unsigned q) {
  using K = CountScheme::Kind;
  switch (s.kind()) {
    case K::Affine:
      guard(std::pow(double(q), double(s.n())), s);
      return tuples(s.n(), q, false);
    case K::Torus:
      guard(std::pow(double(q - 1), double(s.n())), s);
      return tuples(s.n(), q, true);
    case K::Projective: {
      guard(std::pow(double(q), double(s.n() + 1)), s);
      std::vector<Point> out;
      for (auto& p : tuples(s.n() + 1, q, false)) {
        if (is_projective_rep(p)) out.push_back(std::move(p));
      }
      return out;
    }
    case K::Point:
      return {Point{}};
    case K::Product: {
      const auto a = enumerate(s.children()[0], q);
      const auto b = enumerate(s.children()[1], q);
      guard(double(a.size()) * double(b.size()), s);
      std::vector<Point> out;
      out.reserve(a.size() * b.size());
      for (const auto& x : a) {
        for (const auto& y : b) {
          Point p = x;
          p.insert(p.end(), y.begin(), y.end());
          out.push_back(std::move(p));
        }
      }
      return out;
    }
    case K::DisjointUnion: {
      std::vector<Point> out;
      for (std::uint8_t tag = 0; tag < 2; ++tag) {
        for (auto& p : enumerate(s.children()[tag], q)) {
          p.insert(p.begin(), static_cast<std::uint8_t>(kUnionTag + tag));
          out.push_back(std::move(p));
        }
      }
      return out;
    }
    case K::Complement: {
      const auto& ambient = s.children()[0];
      const auto& closed = s.children()[1];
      const auto embed = embedding(closed, ambient);
      if (!embed) {
        throw Unenumerable("no coordinate embedding of " + closed.to_string() + " into " +
                           ambient.to_string());
      }
      const auto all = enumerate(ambient, q);
      std::set<Point> removed;
      for (const auto& p : enumerate(closed, q)) removed.insert((*embed)(p));
      const std::set<Point> present(all.begin(), all.end());
      for (const auto& p : removed) {
        if (!present.count(p)) {
          throw Unenumerable(closed.to_string() + " does not embed in " + ambient.to_string());
        }
      }
      std::vector<Point> out;
      for (const auto& p : all) {
        if (!removed.count(p)) out.push_back(p);
      }
      return out;
    }
    case K::BlowupOriginAffine: {
      // Incidence pairs (x, L) with x on the line L through the origin.
      const unsigned n = s.n();
      if (n == 0) throw Unenumerable("blowup_origin_affine(0) is empty of lines");
      const auto xs = tuples(n, q, false);
      const auto lines = enumerate(CountScheme::projective(n - 1), q);
      guard(double(xs.size()) * double(lines.size()), s);
      std::vector<Point> out;
      for (const auto& x : xs) {
        for (const auto& l : lines) {
          bool on_line = true;
          for (unsigned i = 0; i < n && on_line; ++i) {
            for (unsigned j = i + 1; j < n && on_line; ++j) {
              on_line = (x[i] * l[j]) % q == (x[j] * l[i]) % q;
            }
          }
          if (!on_line) continue;
          Point p = x;
          p.insert(p.end(), l.begin(), l.end());
          out.push_back(std::move(p));
        }
      }
      return out;
    }
  }
  throw Unenumerable("unsupported expression " + s.to_string());
}

}  // namespace

mpz_class brute_force_count(const CountScheme& s, unsigned q) {
  if (q > 13) throw FieldTooLarge("brute force is limited to q <= 13, got " + std::to_string(q));
  if (q < 2 || mpz_probab_prime_p(mpz_class(q).get_mpz_t(), 25) == 0) {
    throw InvalidField("brute force needs a prime field, got q = " + std::to_string(q));
  }
  return mpz_class(static_cast<unsigned long>(enumerate(s, q).size()));
}

EPoly e_polynomial_of(const CountScheme& s) { return s.count().to_epoly(); }

BlowupData blowup_strata(unsigned n) {
  if (n < 2) throw ValidationError("blowup_strata needs n >= 2");
  BlowupData out;
  auto& r = out.resolution;
  r.name = "Bl_0(A^" + std::to_string(n) + ")";
  r.dimension = static_cast<int>(n);
  r.divisors = {Divisor{"E", mpq_class(static_cast<long>(n) - 1)}};
  r.strata = StratumTable(Flavor::Open, 1);
  const CountPoly open = CountPoly::q_power(n) - CountPoly::constant(1);
  const CountPoly exceptional = CountPoly::geometric(n - 1);
  r.strata.set(0, open.to_epoly());
  r.strata.set(1, exceptional.to_epoly());
  out.counts = {{0, open}, {1, exceptional}};
  return out;
}

ResolutionData affine_identity(unsigned n) {
  ResolutionData r;
  r.name = "A^" + std::to_string(n);
  r.dimension = static_cast<int>(n);
  r.strata = StratumTable(Flavor::Open, 0);
  r.strata.set(0, EPoly::w_power(n));
  return r;
}

std::vector<CountScheme> catalog() {
  std::vector<CountScheme> out;
  for (const char* text : {
           "point",
           "affine(1)",
           "affine(2)",
           "affine(3)",
           "torus(1)",
           "torus(2)",
           "torus(3)",
           "projective(1)",
           "projective(2)",
           "projective(3)",
           "product(affine(1),torus(1))",
           "product(projective(1),projective(1))",
           "disjoint_union(point,affine(1))",
           "complement(affine(2),point)",
           "complement(projective(2),point)",
           "complement(projective(2),projective(1))",
           "complement(affine(2),affine(1))",
           "complement(product(projective(1),projective(1)),point)",
           "blowup_origin_affine(2)",
           "blowup_origin_affine(3)",
       }) {
    out.push_back(parse_scheme(text));
  }
  return out;
}

}  // namespace stringy
