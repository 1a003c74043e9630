#include "otsv/bounds.hpp"

#include <algorithm>

#include "otsv/errors.hpp"

namespace otsv {

Bounds& Bounds::domain(std::string sort_name, std::vector<Value> values) {
  if (sort_name.empty()) throw BoundsError("domain needs a sort name");
  if (values.empty()) throw BoundsError("domain for '" + sort_name + "' is empty");
  for (size_t i = 1; i < values.size(); ++i)
    if (values[i].kind() != values[0].kind())
      throw BoundsError("domain for '" + sort_name + "' mixes value kinds");
  for (size_t i = 0; i < values.size(); ++i)
    for (size_t j = i + 1; j < values.size(); ++j)
      if (values[i] == values[j])
        throw BoundsError("domain for '" + sort_name + "' repeats " + values[i].display());
  for (auto& [name, vals] : domains_) {
    if (name == sort_name) {
      vals = std::move(values);
      return *this;
    }
  }
  domains_.emplace_back(std::move(sort_name), std::move(values));
  return *this;
}

const std::vector<Value>* Bounds::find_domain(std::string_view sort_name) const {
  for (const auto& [name, vals] : domains_)
    if (name == sort_name) return &vals;
  return nullptr;
}

std::vector<Value> Bounds::domain_for(const Sort& sort) const {
  switch (sort.kind()) {
    case Sort::Kind::Bool:
      return {Value::boolean(false), Value::boolean(true)};
    case Sort::Kind::Enum: {
      std::vector<Value> out;
      for (const std::string& tag : sort.tags()) out.push_back(Value::enum_tag(tag));
      return out;
    }
    case Sort::Kind::Id:
    case Sort::Kind::Nat: {
      const std::vector<Value>* dom = find_domain(sort.name());
      if (!dom) throw BoundsError("no domain declared for sort '" + sort.name() + "'");
      return *dom;
    }
    case Sort::Kind::Set: {
      std::vector<Value> elems = domain_for(sort.elem());
      if (elems.size() > 20)
        throw BoundsError("set domain over " + std::to_string(elems.size()) +
                          " elements is too large to enumerate");
      std::vector<Value> out;
      const std::uint32_t limit = 1u << elems.size();
      for (std::uint32_t mask = 0; mask < limit; ++mask) {
        if (static_cast<unsigned>(__builtin_popcount(mask)) > caps.max_set) continue;
        std::vector<Value> members;
        for (size_t i = 0; i < elems.size(); ++i)
          if (mask & (1u << i)) members.push_back(elems[i]);
        out.push_back(Value::set(std::move(members)));
      }
      return out;
    }
    case Sort::Kind::Seq: {
      std::vector<Value> elems = domain_for(sort.elem());
      std::vector<Value> out;
      out.push_back(Value::seq({}));
      std::vector<size_t> idx;
      for (unsigned len = 1; len <= caps.max_seq; ++len) {
        idx.assign(len, 0);
        while (true) {
          std::vector<Value> items;
          for (size_t i : idx) items.push_back(elems[i]);
          out.push_back(Value::seq(std::move(items)));
          size_t pos = len;
          while (pos > 0) {
            if (++idx[pos - 1] < elems.size()) break;
            idx[pos - 1] = 0;
            --pos;
          }
          if (pos == 0) break;
        }
      }
      return out;
    }
    case Sort::Kind::Tuple: {
      std::vector<std::vector<Value>> fields;
      for (const Sort& f : sort.elems()) fields.push_back(domain_for(f));
      std::vector<Value> out;
      std::vector<size_t> idx(fields.size(), 0);
      while (true) {
        std::vector<Value> items;
        for (size_t i = 0; i < fields.size(); ++i) items.push_back(fields[i][idx[i]]);
        out.push_back(Value::tuple(std::move(items)));
        size_t pos = fields.size();
        while (pos > 0) {
          if (++idx[pos - 1] < fields[pos - 1].size()) break;
          idx[pos - 1] = 0;
          --pos;
        }
        if (pos == 0) break;
      }
      return out;
    }
  }
  throw BoundsError("unhandled sort kind");
}

std::vector<std::vector<Value>> enumerate_instances(std::span<const Sort> params,
                                                    const Bounds& bounds) {
  std::vector<std::vector<Value>> out;
  if (params.empty()) {
    out.emplace_back();
    return out;
  }
  std::vector<std::vector<Value>> doms;
  for (const Sort& p : params) doms.push_back(bounds.domain_for(p));
  std::vector<size_t> idx(params.size(), 0);
  while (true) {
    std::vector<Value> args;
    args.reserve(params.size());
    for (size_t i = 0; i < params.size(); ++i) args.push_back(doms[i][idx[i]]);
    out.push_back(std::move(args));
    size_t pos = params.size();
    while (pos > 0) {
      if (++idx[pos - 1] < doms[pos - 1].size()) break;
      idx[pos - 1] = 0;
      --pos;
    }
    if (pos == 0) break;
  }
  return out;
}

}  // namespace otsv
