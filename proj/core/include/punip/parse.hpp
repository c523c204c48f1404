#ifndef PUNIP_PARSE_HPP
#define PUNIP_PARSE_HPP

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "punip/extensions.hpp"

namespace punip {

/// `GF(p)(t1,...,tr)`.
Field parse_field(const std::string& header, int max_degree = 64);

/// Field element: an expression in the indeterminates only.
RatFunc parse_ratfunc(const Field& f, const std::string& text);
/// General polynomial in `vars` with coefficients in the field.
GPoly parse_gpoly(const Field& f, const std::vector<std::string>& vars, const std::string& text);
/// Additive polynomial; non-additive input is a ParseError.
PPoly parse_ppoly(const Field& f, const std::vector<std::string>& vars, const std::string& text);
/// `lhs = rhs` as lhs - rhs (a bare expression means `= 0`).
PPoly parse_relation(const Field& f, const std::vector<std::string>& vars, const std::string& text);

/// `twisted` extension: cocycle on the doubled base variables (primed copies).
struct TwistedDecl {
  std::string name;
  std::string base;
  std::string fiber;
  PolyMap cocycle;
};

/// `delta` extension: F on fresh fiber variables and a character chi on the base.
struct DeltaDecl {
  std::string name;
  std::string base;
  std::vector<std::string> fiber_vars;
  PPoly relation;
  PPoly chi;
};

using ExtensionDecl = std::variant<TwistedDecl, DeltaDecl>;

/// A parsed input file: one field header, then groups and extensions in order.
struct Document {
  Field field;
  std::vector<Presentation> groups;
  std::vector<ExtensionDecl> extensions;

  const Presentation& group(const std::string& name) const;
  /// Canonical text; parse(to_string()) reproduces the document.
  std::string to_string() const;
};

/// `imports` maps `import "name";` targets to their text (a CLI reads files for it).
Document parse_document(const std::string& text, const std::map<std::string, std::string>& imports = {});

TwistedExtension build_twisted(const Document& d, const TwistedDecl& decl);
ConnectingExtension build_delta(const Document& d, const DeltaDecl& decl);

std::string extension_to_string(const Document& d, const ExtensionDecl& e);

}  // namespace punip

#endif  // PUNIP_PARSE_HPP
