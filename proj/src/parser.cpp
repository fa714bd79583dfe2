#include "crosscap/parser.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <regex>
#include <set>
#include <sstream>

namespace crosscap {

namespace {

constexpr int kExtraOrder = 16;
constexpr long kMaxExponent = 64;

struct Value {
  Jet2<Rational> jet;
  int degree_bound = 0;
};

class PolyParser {
 public:
  PolyParser(const std::string& src, int order) : s_(src), order_(order), work_(order + kExtraOrder) {}

  ParsedPoly run() {
    Value v = expr();
    skip_ws();
    if (pos_ < s_.size()) fail(std::string("unexpected character '") + s_[pos_] + "'");
    ParsedPoly out;
    out.jet = v.jet.truncated(order_);
    out.truncated = v.degree_bound > work_ || v.jet.degree() > order_;
    out.variables.assign(vars_.begin(), vars_.end());
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  Value expr() {
    bool negate = false;
    if (peek('+') || peek('-')) {
      negate = s_[pos_] == '-';
      ++pos_;
    }
    Value acc = term();
    if (negate) acc.jet = -acc.jet;
    for (;;) {
      if (peek('+')) {
        ++pos_;
        Value t = term();
        acc = {acc.jet + t.jet, std::max(acc.degree_bound, t.degree_bound)};
      } else if (peek('-')) {
        ++pos_;
        Value t = term();
        acc = {acc.jet - t.jet, std::max(acc.degree_bound, t.degree_bound)};
      } else {
        return acc;
      }
    }
  }

  Value term() {
    Value acc = factor();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        Value f = factor();
        acc = {acc.jet * f.jet, acc.degree_bound + f.degree_bound};
      } else if (peek('/')) {
        fail("division is only allowed inside a rational literal");
      } else {
        return acc;
      }
    }
  }

  Value factor() {
    Value b = base();
    if (!peek('^')) return b;
    ++pos_;
    skip_ws();
    const std::size_t start = pos_;
    const std::string digits = read_digits();
    if (digits.empty()) fail("expected a natural exponent after '^'");
    if (digits.size() > 3 || std::stol(digits) > kMaxExponent) {
      pos_ = start;
      fail("exponent larger than " + std::to_string(kMaxExponent));
    }
    const long e = std::stol(digits);
    Value r{Jet2<Rational>::constant(Rational(1), work_), 0};
    for (long k = 0; k < e; ++k) r = {r.jet * b.jet, r.degree_bound + b.degree_bound};
    return r;
  }

  Value base() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == 'u' || c == 'v') {
      ++pos_;
      vars_.insert(std::string(1, c));
      return {c == 'u' ? Jet2<Rational>::u(work_) : Jet2<Rational>::v(work_), 1};
    }
    if (c == '(') {
      ++pos_;
      Value v = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return {Jet2<Rational>::constant(rational_literal(), work_), 0};
    fail("expected a number, 'u', 'v' or '('");
  }

  std::string read_digits() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return s_.substr(start, pos_ - start);
  }

  Rational rational_literal() {
    const std::string num = read_digits();
    Rational r(mpz_class(num), 1);
    if (peek('/')) {
      ++pos_;
      skip_ws();
      const std::string den = read_digits();
      if (den.empty()) fail("expected a positive integer denominator");
      mpz_class d(den);
      if (d == 0) fail("zero denominator");
      r = Rational(mpz_class(num), d);
      r.canonicalize();
    }
    return r;
  }

  const std::string& s_;
  int order_;
  int work_;
  std::size_t pos_ = 0;
  std::set<std::string> vars_;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_decimal(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double d = std::stod(value, &used);
    if (used != value.size() || !std::isfinite(d)) throw std::invalid_argument("trailing");
    return d;
  } catch (const std::exception&) {
    throw InputError(key + ": expected a decimal number, got '" + value + "'");
  }
}

bool looks_rational(const std::string& v) {
  static const std::regex re(R"(^[+-]?\s*\d+\s*(/\s*\d+)?$)");
  return std::regex_match(v, re);
}

std::string format_double(double d) {
  std::ostringstream os;
  os.precision(17);
  os << d;
  return os.str();
}

const std::set<std::string>& poly_keys(DocKind k) {
  static const std::set<std::string> map_keys{"f1", "f2", "f3"};
  static const std::set<std::string> ruled_keys{"gamma1", "gamma3", "c3"};
  static const std::set<std::string> none;
  if (k == DocKind::Map) return map_keys;
  if (k == DocKind::Ruled) return ruled_keys;
  return none;
}

}  // namespace

ParsedPoly parse_poly(const std::string& src, int order) {
  if (order < 0) throw PreconditionError("parse_poly: negative order");
  return PolyParser(src, order).run();
}

Rational parse_rational(const std::string& src) {
  const std::string t = trim(src);
  if (!looks_rational(t)) throw InputError("expected a rational number such as -3/4, got '" + src + "'");
  std::string compact;
  for (char c : t)
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  bool neg = false;
  std::size_t p = 0;
  if (compact[0] == '+' || compact[0] == '-') {
    neg = compact[0] == '-';
    p = 1;
  }
  const auto slash = compact.find('/');
  mpz_class num(compact.substr(p, slash == std::string::npos ? std::string::npos : slash - p));
  mpz_class den(1);
  if (slash != std::string::npos) {
    den = mpz_class(compact.substr(slash + 1));
    if (den == 0) throw InputError("zero denominator in '" + src + "'");
  }
  Rational r(num, den);
  r.canonicalize();
  return neg ? Rational(-r) : r;
}

const char* to_string(DocKind k) {
  switch (k) {
    case DocKind::Map: return "map";
    case DocKind::Ruled: return "ruled";
    case DocKind::Center: return "center";
    case DocKind::Folded: return "folded";
    case DocKind::SBNormal: return "sb-normal";
    case DocKind::HNormal: return "h-normal";
  }
  return "?";
}

std::optional<DocKind> doc_kind_from_string(const std::string& s) {
  for (DocKind k : {DocKind::Map, DocKind::Ruled, DocKind::Center, DocKind::Folded, DocKind::SBNormal, DocKind::HNormal})
    if (s == to_string(k)) return k;
  return std::nullopt;
}

bool operator==(const MapSpecDoc& x, const MapSpecDoc& y) {
  return x.kind == y.kind && x.order == y.order && x.mode == y.mode && x.polys == y.polys && x.a == y.a &&
         x.b == y.b && x.theta_exact == y.theta_exact && x.theta_float == y.theta_float;
}

MapSpecDoc parse_doc(const std::string& text) {
  MapSpecDoc doc;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  bool have_kind = false;
  std::vector<std::pair<std::string, std::pair<std::string, int>>> entries;
  std::set<std::string> seen;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (line.front() == '[') {
      if (have_kind) throw InputError(where + "only one [kind] header is allowed");
      if (line.back() != ']') throw InputError(where + "malformed header '" + line + "'");
      const auto k = doc_kind_from_string(trim(line.substr(1, line.size() - 2)));
      if (!k) throw InputError(where + "unknown kind '" + line + "' (map, ruled, center, folded, sb-normal, h-normal)");
      doc.kind = *k;
      have_kind = true;
      continue;
    }
    if (!have_kind) throw InputError(where + "expected a [kind] header before any key");
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw InputError(where + "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw InputError(where + "empty key");
    if (!seen.insert(key).second) throw InputError(where + key + ": duplicate key");
    entries.push_back({key, {value, lineno}});
  }
  if (!have_kind) throw InputError("missing [kind] header");

  // settings first, so that polynomials see the final order
  for (const auto& [key, vl] : entries) {
    const auto& [value, ln] = vl;
    const std::string where = "line " + std::to_string(ln) + ": ";
    if (key == "order") {
      if (!std::regex_match(value, std::regex(R"(^\d{1,3}$)")))
        throw InputError(where + "order: expected an integer, got '" + value + "'");
      doc.order = std::stoi(value);
      if (doc.order < kMinUserOrder || doc.order > kMaxUserOrder)
        throw InputError(where + "order: must lie in " + std::to_string(kMinUserOrder) + ".." +
                         std::to_string(kMaxUserOrder));
    } else if (key == "mode") {
      if (value == "exact") {
        doc.mode = Mode::Exact;
      } else if (value == "float") {
        doc.mode = Mode::Float;
      } else {
        throw InputError(where + "mode: expected 'exact' or 'float', got '" + value + "'");
      }
    }
  }

  static const std::regex coeff_key(R"(^([ab])(\d)(\d)$)");
  std::optional<std::string> cos_text, sin_text, theta_text;
  for (const auto& [key, vl] : entries) {
    const auto& [value, ln] = vl;
    const std::string where = "line " + std::to_string(ln) + ": ";
    if (key == "order" || key == "mode") continue;
    std::smatch m;
    try {
      if (poly_keys(doc.kind).count(key)) {
        ParsedPoly p = parse_poly(value, doc.order);
        if (p.truncated) doc.warnings.push_back(key + ": terms above order " + std::to_string(doc.order) + " dropped");
        if (doc.kind == DocKind::Ruled && std::find(p.variables.begin(), p.variables.end(), "u") != p.variables.end())
          throw InputError("must be a polynomial in v only");
        doc.polys[key] = p.jet;
      } else if (std::regex_match(key, m, coeff_key)) {
        const bool is_b = m[1] == "b";
        const bool allowed = doc.kind == DocKind::Center || doc.kind == DocKind::Folded ||
                             doc.kind == DocKind::SBNormal || doc.kind == DocKind::HNormal;
        if (!allowed || (is_b && doc.kind != DocKind::SBNormal && doc.kind != DocKind::HNormal))
          throw InputError("unknown key for [" + std::string(to_string(doc.kind)) + "]");
        const std::pair<int, int> ij{std::stoi(m[2]), std::stoi(m[3])};
        if (is_b && doc.kind == DocKind::SBNormal && (ij.first != 0 || ij.second < 3 || ij.second > 5))
          throw InputError("only b03, b04, b05 are allowed in an SB normal form");
        const Rational r = parse_rational(value);
        if (sgn(r) != 0) (is_b ? doc.b : doc.a)[ij] = r;
      } else if (doc.kind == DocKind::Folded && key == "theta_cos") {
        cos_text = value;
      } else if (doc.kind == DocKind::Folded && key == "theta_sin") {
        sin_text = value;
      } else if (doc.kind == DocKind::Folded && key == "theta") {
        theta_text = value;
      } else {
        throw InputError("unknown key for [" + std::string(to_string(doc.kind)) + "]");
      }
    } catch (const ParseError& e) {
      throw InputError(where + key + ": " + e.what());
    } catch (const InputError& e) {
      throw InputError(where + key + ": " + e.what());
    }
  }

  auto require = [&](const std::string& key) {
    if (!doc.polys.count(key)) throw InputError(key + ": missing component");
  };
  switch (doc.kind) {
    case DocKind::Map:
      for (const char* k : {"f1", "f2", "f3"}) require(k);
      if (doc.mode != Mode::Exact) throw InputError("mode: map documents are exact");
      break;
    case DocKind::Ruled:
      for (const char* k : {"gamma1", "gamma3", "c3"}) require(k);
      if (sgn(doc.polys["gamma3"].coeff(0, 0)) != 0) throw InputError("gamma3: gamma3(0) must vanish");
      break;
    case DocKind::Center:
      doc_monge(doc).validate_center();
      break;
    case DocKind::Folded: {
      doc_monge(doc).validate(2, 5);
      if (theta_text && (cos_text || sin_text)) throw InputError("theta: give either theta or theta_cos/theta_sin");
      if (cos_text.has_value() != sin_text.has_value())
        throw InputError(cos_text ? "theta_sin: missing" : "theta_cos: missing");
      if (theta_text) {
        const double t = parse_decimal("theta", *theta_text);
        doc.mode = Mode::Float;
        doc.theta_float = {std::cos(t), std::sin(t)};
      } else if (cos_text) {
        if (doc.mode == Mode::Float && !(looks_rational(*cos_text) && looks_rational(*sin_text))) {
          doc.theta_float = {parse_decimal("theta_cos", *cos_text), parse_decimal("theta_sin", *sin_text)};
        } else {
          const Rational c = parse_rational(*cos_text), s = parse_rational(*sin_text);
          if (c * c + s * s != 1)
            throw InputError("theta_cos/theta_sin: cos^2 + sin^2 = " + to_string(Rational(c * c + s * s)) + ", not 1");
          if (doc.mode == Mode::Float) {
            doc.theta_float = {c.get_d(), s.get_d()};
          } else {
            doc.theta_exact = {c, s};
          }
        }
      } else if (doc.mode == Mode::Float) {
        doc.theta_float = {1.0, 0.0};
      } else {
        doc.theta_exact = {Rational(1), Rational(0)};
      }
      if (doc.theta_float) {
        const auto [c, s] = *doc.theta_float;
        if (std::fabs(c * c + s * s - 1.0) > 1e-12)
          throw InputError("theta_cos/theta_sin: not a point on the unit circle");
      }
      break;
    }
    case DocKind::SBNormal:
      doc_sb_normal(doc).validate();
      break;
    case DocKind::HNormal:
      doc_h_normal(doc).validate();
      break;
  }
  if (doc.mode == Mode::Float && doc.kind != DocKind::Folded) throw InputError("mode: float is only used by folded documents");
  return doc;
}

std::string print_doc(const MapSpecDoc& doc) {
  std::ostringstream os;
  os << "[" << to_string(doc.kind) << "]\n";
  os << "order = " << doc.order << "\n";
  if (doc.mode == Mode::Float) os << "mode = float\n";
  for (const auto& key : {"f1", "f2", "f3", "gamma1", "gamma3", "c3"}) {
    const auto it = doc.polys.find(key);
    if (it != doc.polys.end()) os << key << " = " << format_poly(it->second) << "\n";
  }
  for (const auto& [ij, v] : doc.a) os << "a" << ij.first << ij.second << " = " << to_string(v) << "\n";
  for (const auto& [ij, v] : doc.b) os << "b" << ij.first << ij.second << " = " << to_string(v) << "\n";
  if (doc.theta_exact) {
    os << "theta_cos = " << to_string(doc.theta_exact->first) << "\n";
    os << "theta_sin = " << to_string(doc.theta_exact->second) << "\n";
  }
  if (doc.theta_float) {
    os << "theta_cos = " << format_double(doc.theta_float->first) << "\n";
    os << "theta_sin = " << format_double(doc.theta_float->second) << "\n";
  }
  return os.str();
}

MapJet<Rational> doc_map(const MapSpecDoc& doc) {
  switch (doc.kind) {
    case DocKind::Map:
      return MapJet<Rational>(doc.polys.at("f1"), doc.polys.at("f2"), doc.polys.at("f3"));
    case DocKind::Ruled:
      return ruled_map(doc_ruled(doc), doc.order);
    case DocKind::Center:
      return center_map(doc_monge(doc), doc.order);
    case DocKind::Folded:
      if (!doc.theta_exact) throw PreconditionError("folded document in float mode has no exact germ");
      return folded_map(doc_monge(doc), FoldAngle<Rational>{doc.theta_exact->first, doc.theta_exact->second}, doc.order);
    case DocKind::SBNormal:
      return to_map_jet(doc_sb_normal(doc), doc.order);
    case DocKind::HNormal:
      return to_map_jet(doc_h_normal(doc), doc.order);
  }
  throw PreconditionError("unknown document kind");
}

RuledData<Rational> doc_ruled(const MapSpecDoc& doc) {
  if (doc.kind != DocKind::Ruled) throw PreconditionError("not a ruled document");
  return {Series1<Rational>::from_jet(doc.polys.at("gamma1")), Series1<Rational>::from_jet(doc.polys.at("gamma3")),
          Series1<Rational>::from_jet(doc.polys.at("c3"))};
}

MongeCoeffs<Rational> doc_monge(const MapSpecDoc& doc) {
  MongeCoeffs<Rational> m;
  m.a = doc.a;
  return m;
}

MongeCoeffs<Approx> doc_monge_float(const MapSpecDoc& doc) {
  MongeCoeffs<Approx> m;
  for (const auto& [ij, v] : doc.a) m.a[ij] = Approx(v.get_d());
  return m;
}

SBNormalCoeffs doc_sb_normal(const MapSpecDoc& doc) {
  SBNormalCoeffs c;
  c.a = doc.a;
  c.b03 = coeff_or_zero(doc.b, 0, 3);
  c.b04 = coeff_or_zero(doc.b, 0, 4);
  c.b05 = coeff_or_zero(doc.b, 0, 5);
  return c;
}

HNormalCoeffs doc_h_normal(const MapSpecDoc& doc) {
  HNormalCoeffs c;
  c.a = doc.a;
  c.b = doc.b;
  return c;
}

}  // namespace crosscap
