#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "erc/formula.hpp"
#include "erc/source.hpp"

namespace erc {

/// Interval endpoint. Function tokens such as "SysDate()" are kept verbatim
/// and never evaluated.
struct Bound {
  enum class Kind { Integer, Date, Function };

  Kind kind = Kind::Integer;
  std::string text;        // as written: "10^4", "01/10/2010", "SysDate()"
  std::int64_t value = 0;  // integer value, or yyyymmdd for dates

  /// Accepts "123", "-5" and "10^4". Throws std::invalid_argument.
  static Bound integer(std::string text);
  /// Accepts day/month/year. Throws std::invalid_argument.
  static Bound date(std::string text);
  static Bound function(std::string text);

  friend bool operator==(const Bound&, const Bound&) = default;
};

struct Range {
  enum class Form { Interval, Ascii, Nat };

  Form form = Form::Ascii;
  Bound lo;
  Bound hi;
  int length = 0;  // characters for ASCII(n), digits for NAT(n)

  static Range interval(Bound lo, Bound hi);
  static Range ascii(int length);
  static Range nat(int digits);

  friend bool operator==(const Range&, const Range&) = default;
};

/// "[1, 10^4]", "ASCII(255)", "NAT(5)"
std::string to_string(const Range& range);

struct Attribute {
  std::string name;
  std::optional<Range> range;
  bool computed = false;
  std::string definition;  // opaque; empty for a computed attribute means "missing"
  SourceLoc loc;

  friend bool operator==(const Attribute&, const Attribute&) = default;
};

struct Role {
  std::string name;
  std::string target;
  bool declared_unique = false;
  SourceLoc loc;

  friend bool operator==(const Role&, const Role&) = default;
};

/// Arrow between object sets that is not an inclusion. Self-references are
/// allowed.
struct StructuralFunction {
  std::string name;
  std::string source;
  std::string target;
  bool computed = false;
  std::string definition;
  SourceLoc loc;

  friend bool operator==(const StructuralFunction&, const StructuralFunction&) = default;
};

enum class SetKind { Entity, Relationship, Computed };

std::string_view to_string(SetKind kind);

struct ObjectSet {
  std::string name;
  SetKind kind = SetKind::Entity;
  std::vector<Attribute> attributes;
  std::vector<Role> roles;  // relationships only
  std::vector<StructuralFunction> functions;
  std::vector<std::string> included_in;
  std::optional<std::uint64_t> max_cardinality;
  std::string definition;  // computed sets only; empty means "missing"
  SourceLoc loc;

  const Attribute* find_attribute(std::string_view name) const;
  const Role* find_role(std::string_view name) const;
  const StructuralFunction* find_function(std::string_view name) const;
  /// True if `name` is an attribute, role or structural function of this set.
  bool has_mapping(std::string_view name) const;

  friend bool operator==(const ObjectSet&, const ObjectSet&) = default;
};

struct Diagram {
  std::string name;
  std::vector<ObjectSet> sets;

  friend bool operator==(const Diagram&, const Diagram&) = default;
};

// Restriction bodies. The constrained set is always Restriction::target.

struct InclusionBody {
  std::string superset;
  friend bool operator==(const InclusionBody&, const InclusionBody&) = default;
};

struct RangeBody {
  std::string attribute;
  Range range;
  friend bool operator==(const RangeBody&, const RangeBody&) = default;
};

struct CardinalityBody {
  std::uint64_t max = 0;
  friend bool operator==(const CardinalityBody&, const CardinalityBody&) = default;
};

struct CompulsoryBody {
  std::vector<std::string> mappings;
  friend bool operator==(const CompulsoryBody&, const CompulsoryBody&) = default;
};

/// One mapping: single uniqueness. Several: concatenated uniqueness.
struct UniquenessBody {
  std::vector<std::string> mappings;
  friend bool operator==(const UniquenessBody&, const UniquenessBody&) = default;
};

struct OtherBody {
  std::string informal;
  std::optional<Formula> formal;
  friend bool operator==(const OtherBody&, const OtherBody&) = default;
};

using RestrictionBody = std::variant<InclusionBody, RangeBody, CardinalityBody,
                                     CompulsoryBody, UniquenessBody, OtherBody>;

struct Restriction {
  std::string label;
  std::string target;  // may be empty only for `other` restrictions
  RestrictionBody body;
  SourceLoc loc;

  friend bool operator==(const Restriction&, const Restriction&) = default;
};

enum class RestrictionClass { Inclusion, Range, Compulsory, Uniqueness, Other };

std::string_view to_string(RestrictionClass c);

/// Cardinality restrictions fall under Range: they bound the extension of a
/// set the way a range bounds an attribute.
RestrictionClass classify_restriction(const Restriction& restriction);

/// The other-restriction's formula routes to the owning set's tuple
/// constraints (one quantified variable) rather than the trailing
/// nonrelational block.
bool is_tuple_restriction(const Restriction& restriction);
bool is_nonrelational_restriction(const Restriction& restriction);

struct ERModel {
  std::vector<Diagram> diagrams;
  std::vector<Restriction> restrictions;
  std::optional<std::string> description;  // informal sub-universe description

  const ObjectSet* find_set(std::string_view name) const;
  const Restriction* find_restriction(std::string_view label) const;
  /// All object sets, diagram by diagram, in declaration order.
  std::vector<const ObjectSet*> sets() const;

  friend bool operator==(const ERModel&, const ERModel&) = default;
};

struct ModelError {
  std::string code;
  std::string element;
  std::string message;
  SourceLoc loc;

  friend bool operator==(const ModelError&, const ModelError&) = default;
};

std::string to_string(const ModelError& error);

/// Structural validation. Returns an empty list iff every invariant holds.
std::vector<ModelError> validate_model(const ERModel& model);

}  // namespace erc
