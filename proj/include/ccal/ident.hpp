#ifndef CCAL_IDENT_HPP
#define CCAL_IDENT_HPP

#include <functional>
#include <string>
#include <tuple>

namespace ccal {

/// Names denote concrete objects (session identifiers, channels, cells).
/// Variables are fusable placeholders; a fusion maps them onto one name.
/// The kind never changes after construction; substitution replaces whole
/// identifiers instead.
struct Identifier {
  enum class Kind { Name, Variable };

  Kind kind = Kind::Name;
  std::string label;

  Identifier() = default;
  Identifier(Kind k, std::string l) : kind(k), label(std::move(l)) {}

  static Identifier name(std::string l) { return {Kind::Name, std::move(l)}; }
  static Identifier variable(std::string l) { return {Kind::Variable, std::move(l)}; }

  bool is_name() const { return kind == Kind::Name; }
  bool is_variable() const { return kind == Kind::Variable; }

  friend bool operator==(const Identifier& a, const Identifier& b) {
    return a.kind == b.kind && a.label == b.label;
  }
  friend bool operator!=(const Identifier& a, const Identifier& b) { return !(a == b); }
  friend bool operator<(const Identifier& a, const Identifier& b) {
    return std::tie(a.kind, a.label) < std::tie(b.kind, b.label);
  }
};

struct IdentifierHash {
  size_t operator()(const Identifier& id) const {
    return std::hash<std::string>()(id.label) * 2u + static_cast<size_t>(id.kind);
  }
};

}  // namespace ccal

#endif
