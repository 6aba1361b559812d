/*
 * Copyright 2026 The LDAF Authors. All rights reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef LDAF_CONVERTER_RESOURCE_OBJECT_HPP
#define LDAF_CONVERTER_RESOURCE_OBJECT_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace ldaf::converter {

using Json = nlohmann::json;
/// Insertion-ordered JSON; the canonical wire form is built with it.
using OrderedJson = nlohmann::ordered_json;

/// A link to a resource without its properties.
struct Reference {
  std::string uri;
  std::string path;
  std::string localname;

  friend bool operator==(const Reference&, const Reference&) = default;
  friend auto operator<=>(const Reference&, const Reference&) = default;
};

/// A literal the plain JSON scalars cannot carry. Exactly one of lang / datatype is set.
struct TaggedLiteral {
  std::string value;
  std::optional<std::string> lang;
  std::optional<std::string> datatype;

  friend bool operator==(const TaggedLiteral&, const TaggedLiteral&) = default;
};

struct ResourceObject;
struct Value;
using ValueList = std::vector<Value>;

/// Heap slot with value semantics, for the recursive Value / ResourceObject pair.
template <typename T>
class Box {
 public:
  Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}  // NOLINT(google-explicit-constructor)
  Box(const Box& other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& other) {
    if (this != &other) ptr_ = std::make_unique<T>(*other.ptr_);
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;

  T& operator*() { return *ptr_; }
  const T& operator*() const { return *ptr_; }
  T* operator->() { return ptr_.get(); }
  const T* operator->() const { return ptr_.get(); }

  friend bool operator==(const Box& a, const Box& b) { return *a.ptr_ == *b.ptr_; }

 private:
  std::unique_ptr<T> ptr_;
};

/// JSON string, number or boolean.
using Scalar = Json;

struct Value {
  std::variant<Scalar, TaggedLiteral, Reference, Box<ResourceObject>, ValueList> data;

  friend bool operator==(const Value&, const Value&) = default;
};

/// Nested JSON view of one resource. `incoming` is only filled on the root of a conversion.
struct ResourceObject {
  std::string uri;
  std::string path;
  std::string localname;
  std::map<std::string, Value> properties;
  std::optional<std::map<std::string, std::vector<Reference>>> incoming;

  friend bool operator==(const ResourceObject&, const ResourceObject&) = default;
};

OrderedJson to_json(const ResourceObject& object);

inline OrderedJson to_json(const Reference& ref) {
  OrderedJson j = OrderedJson::object();
  j["localname"] = ref.localname;
  j["path"] = ref.path;
  j["uri"] = ref.uri;
  return j;
}

inline OrderedJson to_json(const TaggedLiteral& lit) {
  OrderedJson j = OrderedJson::object();
  if (lit.datatype) j["datatype"] = *lit.datatype;
  if (lit.lang) j["lang"] = *lit.lang;
  j["value"] = lit.value;
  return j;
}

inline OrderedJson to_json(const Value& value) {
  return std::visit(
      [](const auto& v) -> OrderedJson {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Scalar>) {
          return OrderedJson(v);
        } else if constexpr (std::is_same_v<T, Box<ResourceObject>>) {
          return to_json(*v);
        } else if constexpr (std::is_same_v<T, ValueList>) {
          OrderedJson arr = OrderedJson::array();
          for (const Value& item : v) arr.push_back(to_json(item));
          return arr;
        } else {
          return to_json(v);
        }
      },
      value.data);
}

/// Canonical form: keys in byte order, `_incoming` last.
inline OrderedJson to_json(const ResourceObject& object) {
  std::map<std::string, OrderedJson> fields;
  fields["uri"] = object.uri;
  fields["path"] = object.path;
  fields["localname"] = object.localname;
  for (const auto& [key, value] : object.properties) fields[key] = to_json(value);
  OrderedJson j = OrderedJson::object();
  for (auto& [key, value] : fields) j[key] = std::move(value);
  if (object.incoming) {
    OrderedJson inc = OrderedJson::object();
    for (const auto& [key, refs] : *object.incoming) {
      OrderedJson arr = OrderedJson::array();
      for (const Reference& r : refs) arr.push_back(to_json(r));
      inc[key] = std::move(arr);
    }
    j["_incoming"] = std::move(inc);
  }
  return j;
}

/// Compact UTF-8 text of a canonical JSON value. Invalid UTF-8 is replaced, never thrown.
template <typename J>
inline std::string dump_canonical(const J& j) {
  return j.dump(-1, ' ', false, nlohmann::detail::error_handler_t::replace);
}

}  // namespace ldaf::converter

#endif  // LDAF_CONVERTER_RESOURCE_OBJECT_HPP
