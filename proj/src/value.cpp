#include "otsv/value.hpp"

#include <algorithm>
#include <cctype>

#include "otsv/errors.hpp"

namespace otsv {

// ---------------------------------------------------------------------------
// Sort

const Sort& Sort::boolean() {
  static const Sort s = [] {
    Sort x;
    x.kind_ = Kind::Bool;
    x.name_ = "bool";
    return x;
  }();
  return s;
}

const Sort& Sort::natural() {
  static const Sort s = [] {
    Sort x;
    x.kind_ = Kind::Nat;
    x.name_ = "nat";
    return x;
  }();
  return s;
}

Sort Sort::id(std::string name) {
  if (name.empty()) throw ValueError("identifier sort needs a name");
  Sort x;
  x.kind_ = Kind::Id;
  x.name_ = std::move(name);
  return x;
}

Sort Sort::enumeration(std::string name, std::vector<std::string> tags) {
  if (tags.empty()) throw ValueError("enumeration sort '" + name + "' has no tags");
  for (size_t i = 0; i < tags.size(); ++i)
    for (size_t j = i + 1; j < tags.size(); ++j)
      if (tags[i] == tags[j])
        throw ValueError("enumeration sort '" + name + "' repeats tag '" + tags[i] + "'");
  Sort x;
  x.kind_ = Kind::Enum;
  x.name_ = std::move(name);
  x.tags_ = std::move(tags);
  return x;
}

Sort Sort::set_of(Sort elem) {
  Sort x;
  x.kind_ = Kind::Set;
  x.name_ = "set(" + elem.name_ + ")";
  x.elems_.push_back(std::move(elem));
  return x;
}

Sort Sort::seq_of(Sort elem) {
  Sort x;
  x.kind_ = Kind::Seq;
  x.name_ = "seq(" + elem.name_ + ")";
  x.elems_.push_back(std::move(elem));
  return x;
}

Sort Sort::tuple_of(std::string name, std::vector<Sort> elems) {
  if (elems.empty()) throw ValueError("tuple sort '" + name + "' has no fields");
  Sort x;
  x.kind_ = Kind::Tuple;
  x.name_ = std::move(name);
  x.elems_ = std::move(elems);
  return x;
}

const std::vector<std::string>& Sort::tags() const {
  if (kind_ != Kind::Enum) throw ValueError("tags() on non-enumeration sort " + name_);
  return tags_;
}

const Sort& Sort::elem() const {
  if (kind_ != Kind::Set && kind_ != Kind::Seq)
    throw ValueError("elem() on non-container sort " + name_);
  return elems_.front();
}

const std::vector<Sort>& Sort::elems() const {
  if (kind_ != Kind::Tuple) throw ValueError("elems() on non-tuple sort " + name_);
  return elems_;
}

bool Sort::matches(const Value& v) const {
  switch (kind_) {
    case Kind::Bool:
      return v.kind() == Value::Kind::Bool;
    case Kind::Nat:
      return v.kind() == Value::Kind::Nat;
    case Kind::Id:
      return v.kind() == Value::Kind::Id;
    case Kind::Enum:
      if (v.kind() != Value::Kind::Enum) return false;
      return std::find(tags_.begin(), tags_.end(), v.token()) != tags_.end();
    case Kind::Set:
      if (v.kind() != Value::Kind::Set) return false;
      for (const Value& e : v.elems())
        if (!elems_.front().matches(e)) return false;
      return true;
    case Kind::Seq:
      if (v.kind() != Value::Kind::Seq) return false;
      for (const Value& e : v.elems())
        if (!elems_.front().matches(e)) return false;
      return true;
    case Kind::Tuple:
      if (v.kind() != Value::Kind::Tuple) return false;
      if (v.elems().size() != elems_.size()) return false;
      for (size_t i = 0; i < elems_.size(); ++i)
        if (!elems_[i].matches(v.elems()[i])) return false;
      return true;
  }
  return false;
}

bool Sort::operator==(const Sort& other) const {
  if (kind_ != other.kind_ || name_ != other.name_) return false;
  if (tags_ != other.tags_) return false;
  if (elems_.size() != other.elems_.size()) return false;
  for (size_t i = 0; i < elems_.size(); ++i)
    if (!(elems_[i] == other.elems_[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Value

Value Value::boolean(bool b) {
  Value v;
  v.kind_ = Kind::Bool;
  v.b_ = b;
  return v;
}

Value Value::nat(std::uint64_t n) {
  Value v;
  v.kind_ = Kind::Nat;
  v.nat_ = n;
  return v;
}

Value Value::id(std::string token) {
  if (token.empty()) throw ValueError("identifier value needs a non-empty token");
  Value v;
  v.kind_ = Kind::Id;
  v.tok_ = std::move(token);
  return v;
}

Value Value::enum_tag(std::string tag) {
  if (tag.empty()) throw ValueError("enum value needs a non-empty tag");
  Value v;
  v.kind_ = Kind::Enum;
  v.tok_ = std::move(tag);
  return v;
}

static void check_uniform(const std::vector<Value>& elems, const char* what) {
  for (size_t i = 1; i < elems.size(); ++i)
    if (elems[i].kind() != elems[0].kind())
      throw ValueError(std::string(what) + " mixes element kinds");
}

Value Value::set(std::vector<Value> elems) {
  check_uniform(elems, "set");
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  Value v;
  v.kind_ = Kind::Set;
  v.elems_ = std::move(elems);
  return v;
}

Value Value::seq(std::vector<Value> elems) {
  check_uniform(elems, "seq");
  Value v;
  v.kind_ = Kind::Seq;
  v.elems_ = std::move(elems);
  return v;
}

Value Value::tuple(std::vector<Value> elems) {
  Value v;
  v.kind_ = Kind::Tuple;
  v.elems_ = std::move(elems);
  return v;
}

bool Value::as_bool() const {
  if (kind_ != Kind::Bool) throw ValueError("as_bool() on " + display());
  return b_;
}

std::uint64_t Value::as_nat() const {
  if (kind_ != Kind::Nat) throw ValueError("as_nat() on " + display());
  return nat_;
}

const std::string& Value::token() const {
  if (kind_ != Kind::Id && kind_ != Kind::Enum)
    throw ValueError("token() on " + display());
  return tok_;
}

const std::vector<Value>& Value::elems() const {
  if (kind_ != Kind::Set && kind_ != Kind::Seq && kind_ != Kind::Tuple)
    throw ValueError("elems() on " + display());
  return elems_;
}

std::strong_ordering Value::operator<=>(const Value& other) const {
  if (kind_ != other.kind_)
    return static_cast<int>(kind_) <=> static_cast<int>(other.kind_);
  switch (kind_) {
    case Kind::Bool:
      return b_ <=> other.b_;
    case Kind::Nat:
      return nat_ <=> other.nat_;
    case Kind::Id:
    case Kind::Enum:
      return tok_.compare(other.tok_) <=> 0;
    case Kind::Set:
    case Kind::Seq:
    case Kind::Tuple: {
      size_t n = std::min(elems_.size(), other.elems_.size());
      for (size_t i = 0; i < n; ++i) {
        auto c = elems_[i] <=> other.elems_[i];
        if (c != std::strong_ordering::equal) return c;
      }
      return elems_.size() <=> other.elems_.size();
    }
  }
  return std::strong_ordering::equal;
}

bool Value::operator==(const Value& other) const {
  return (*this <=> other) == std::strong_ordering::equal;
}

bool is_bare_token(std::string_view tok) {
  if (tok.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(tok[0])) && tok[0] != '_') return false;
  for (char c : tok.substr(1))
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
  return true;
}

static void display_quoted(std::string& out, const std::string& tok) {
  out += '"';
  for (char c : tok) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
}

static void display_rec(std::string& out, const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Bool:
      out += v.as_bool() ? "true" : "false";
      return;
    case Value::Kind::Nat:
      out += std::to_string(v.as_nat());
      return;
    case Value::Kind::Id:
      if (is_bare_token(v.token()))
        out += v.token();
      else
        display_quoted(out, v.token());
      return;
    case Value::Kind::Enum:
      out += v.token();
      return;
    case Value::Kind::Set:
    case Value::Kind::Seq:
    case Value::Kind::Tuple: {
      char open = v.kind() == Value::Kind::Set ? '{' : v.kind() == Value::Kind::Seq ? '[' : '(';
      char close = v.kind() == Value::Kind::Set ? '}' : v.kind() == Value::Kind::Seq ? ']' : ')';
      out += open;
      bool first = true;
      for (const Value& e : v.elems()) {
        if (!first) out += ", ";
        first = false;
        display_rec(out, e);
      }
      out += close;
      return;
    }
  }
}

std::string Value::display() const {
  std::string out;
  display_rec(out, *this);
  return out;
}

void Value::digest_append(std::string& out) const {
  switch (kind_) {
    case Kind::Bool:
      out += b_ ? "b1" : "b0";
      return;
    case Kind::Nat:
      out += 'n';
      out += std::to_string(nat_);
      out += ';';
      return;
    case Kind::Id:
    case Kind::Enum:
      out += kind_ == Kind::Id ? 'i' : 'e';
      out += std::to_string(tok_.size());
      out += ':';
      out += tok_;
      return;
    case Kind::Set:
    case Kind::Seq:
    case Kind::Tuple: {
      out += kind_ == Kind::Set ? 's' : kind_ == Kind::Seq ? 'q' : 't';
      out += std::to_string(elems_.size());
      out += '{';
      for (const Value& e : elems_) e.digest_append(out);
      out += '}';
      return;
    }
  }
}

std::string digest_hex(std::string_view canonical) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* hexd = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = hexd[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace otsv
