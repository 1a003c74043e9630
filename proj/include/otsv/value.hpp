#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace otsv {

class Value;

// Runtime sort descriptor. Sorts are small immutable trees: the leaf kinds
// (bool, nat, identifier, enumeration) plus set/seq/tuple constructors.
class Sort {
 public:
  enum class Kind : std::uint8_t { Bool, Nat, Id, Enum, Set, Seq, Tuple };

  static const Sort& boolean();
  static const Sort& natural();
  static Sort id(std::string name);
  static Sort enumeration(std::string name, std::vector<std::string> tags);
  static Sort set_of(Sort elem);
  static Sort seq_of(Sort elem);
  static Sort tuple_of(std::string name, std::vector<Sort> elems);

  Kind kind() const { return kind_; }
  // Leaf name ("bool", "nat", "accountid", ...) or the declared tuple name.
  // Set/seq sorts get a derived display name like "set(accountid)".
  const std::string& name() const { return name_; }
  const std::vector<std::string>& tags() const;  // Enum only
  const Sort& elem() const;                      // Set / Seq only
  const std::vector<Sort>& elems() const;        // Tuple only

  // Structural well-sortedness of a value against this sort, including enum
  // tag membership and element sorts of containers.
  bool matches(const Value& v) const;

  bool operator==(const Sort& other) const;

 private:
  Sort() = default;
  Kind kind_ = Kind::Bool;
  std::string name_;
  std::vector<std::string> tags_;
  std::vector<Sort> elems_;  // elem sort for Set/Seq (size 1), fields for Tuple
};

// Immutable structured value: booleans, naturals, identifier tokens, enum
// tags, and sets / sequences / tuples thereof. Sets are kept sorted and
// deduplicated so structural equality is canonical equality.
class Value {
 public:
  enum class Kind : std::uint8_t { Bool, Nat, Id, Enum, Set, Seq, Tuple };

  Value() : kind_(Kind::Bool) {}

  static Value boolean(bool b);
  static Value nat(std::uint64_t n);
  static Value id(std::string token);
  static Value enum_tag(std::string tag);
  static Value set(std::vector<Value> elems);    // sorts, dedupes, kind-checks
  static Value seq(std::vector<Value> elems);    // kind-checks
  static Value tuple(std::vector<Value> elems);

  Kind kind() const { return kind_; }
  bool as_bool() const;
  std::uint64_t as_nat() const;
  const std::string& token() const;  // Id and Enum
  const std::vector<Value>& elems() const;

  // Total structural order: kind rank first, then content. Set/Seq/Tuple
  // compare lexicographically on elements.
  std::strong_ordering operator<=>(const Value& other) const;
  bool operator==(const Value& other) const;

  // Human-readable canonical form: true / 42 / alice / {a, b} / [x, y] /
  // (alice, 1, p0). Identifier tokens that are not plain words are quoted.
  std::string display() const;

  // Unambiguous serialization used by observation digests. Length-prefixed so
  // distinct values never collide textually.
  void digest_append(std::string& out) const;

 private:
  Kind kind_;
  bool b_ = false;
  std::uint64_t nat_ = 0;
  std::string tok_;
  std::vector<Value> elems_;
};

// True if the token can appear unquoted in scenario sources and displays:
// [A-Za-z_][A-Za-z0-9_-]* .
bool is_bare_token(std::string_view tok);

// FNV-1a 64-bit of a canonical digest string, as 16 lowercase hex chars.
// Short display form only; equality decisions always use the full string.
std::string digest_hex(std::string_view canonical);

}  // namespace otsv
