#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crosscap/applications.hpp"
#include "crosscap/jet.hpp"
#include "crosscap/normal_form_oracle.hpp"

namespace crosscap {

struct ParsedPoly {
  Jet2<Rational> jet;
  bool truncated = false;  // the polynomial had terms of degree above the order
  std::vector<std::string> variables;  // variables that occur, sorted
};

/// expr := ['+'|'-'] term (('+'|'-') term)* ; term := factor ('*' factor)* ;
/// factor := base ('^' natural)? ; base := rational | 'u' | 'v' | '(' expr ')'.
ParsedPoly parse_poly(const std::string& src, int order = kDefaultOrder);

/// Rational literal with optional sign, e.g. "-3/4".
Rational parse_rational(const std::string& src);

enum class DocKind { Map, Ruled, Center, Folded, SBNormal, HNormal };

const char* to_string(DocKind k);
std::optional<DocKind> doc_kind_from_string(const std::string& s);

/// A parsed and validated input document.
struct MapSpecDoc {
  DocKind kind = DocKind::Map;
  int order = kDefaultOrder;
  Mode mode = Mode::Exact;
  std::map<std::string, Jet2<Rational>> polys;  // f1 f2 f3 | gamma1 gamma3 c3
  CoeffTable a, b;                               // a_ij / b_ij in the divided convention
  std::optional<std::pair<Rational, Rational>> theta_exact;  // (cos, sin)
  std::optional<std::pair<double, double>> theta_float;      // (cos, sin)
  std::vector<std::string> warnings;

  friend bool operator==(const MapSpecDoc& x, const MapSpecDoc& y);
};

MapSpecDoc parse_doc(const std::string& text);
std::string print_doc(const MapSpecDoc& doc);

/// Typed views of a document.
MapJet<Rational> doc_map(const MapSpecDoc& doc);
RuledData<Rational> doc_ruled(const MapSpecDoc& doc);
MongeCoeffs<Rational> doc_monge(const MapSpecDoc& doc);
MongeCoeffs<Approx> doc_monge_float(const MapSpecDoc& doc);
SBNormalCoeffs doc_sb_normal(const MapSpecDoc& doc);
HNormalCoeffs doc_h_normal(const MapSpecDoc& doc);

}  // namespace crosscap
