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

#ifndef LDAF_SERVER_RESOURCES_HPP
#define LDAF_SERVER_RESOURCES_HPP

#include <fstream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ldaf/server/app.hpp"

namespace ldaf::server {

// ---- request helpers -------------------------------------------------------

/// Instance data needs a session: html clients are sent to the login page, others get 401.
inline std::optional<Response> require_login(const Context& ctx) {
  if (ctx.user) return std::nullopt;
  if (ctx.format == Format::kHtml && ctx.request.method == "GET") return redirect("/login");
  throw HttpError(401, "authentication required");
}

inline const User& require_user(const Context& ctx) {
  if (!ctx.user) throw HttpError(401, "authentication required");
  return *ctx.user;
}

inline int int_param(const Context& ctx, const char* name, int fallback) {
  auto text = ctx.request.param(name);
  if (!text) return fallback;
  auto v = parse_integer(*text);
  if (!v || *v < 1 || *v > 1'000'000) throw HttpError(400, std::string("'") + name + "' must be a positive integer");
  return static_cast<int>(*v);
}

/// `?depth=`: default 1, clamped to the configured maximum.
inline int depth_param(const Context& ctx) {
  auto text = ctx.request.param("depth");
  if (!text) return std::min(1, ctx.app.config().max_depth);
  auto v = parse_integer(*text);
  if (!v || *v < 0) throw HttpError(400, "'depth' must be a non-negative integer");
  return static_cast<int>(std::min<long long>(*v, ctx.app.config().max_depth));
}

inline bool is_form(const Request& r) { return r.content_type() == "application/x-www-form-urlencoded"; }

/// JSON object from a JSON or form-encoded body. Empty form fields are dropped.
inline Json read_body(const Context& ctx) {
  if (static_cast<std::int64_t>(ctx.request.body.size()) > ctx.app.config().max_body_bytes)
    throw HttpError(413, "request body too large");
  if (is_form(ctx.request)) {
    Json out = Json::object();
    for (const auto& [k, v] : parse_form(ctx.request.body))
      if (!v.empty()) out[k] = v;
    return out;
  }
  Json body;
  try {
    body = Json::parse(ctx.request.body);
  } catch (const Json::exception& e) {
    throw HttpError(400, std::string("malformed JSON: ") + e.what());
  }
  if (!body.is_object()) throw HttpError(400, "request body must be a JSON object");
  return body;
}

/// Fields posted as JSON or as a form.
inline Params read_fields(const Context& ctx) {
  if (is_form(ctx.request)) return parse_form(ctx.request.body);
  Params out;
  Json body = read_body(ctx);
  for (auto& [k, v] : body.items())
    if (v.is_string()) out[k] = v.get<std::string>();
  return out;
}

inline bool wants_shared(const Context& ctx) {
  auto g = ctx.request.param("graph");
  if (!g || *g == "private") return false;
  if (*g == "shared") return true;
  throw HttpError(400, "'graph' must be 'private' or 'shared'");
}

// ---- html models -----------------------------------------------------------

inline std::string scalar_text(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

/// rdfs:label when present, else the localname.
inline std::string title_of(const converter::ResourceObject& obj) {
  if (auto it = obj.properties.find("label"); it != obj.properties.end()) {
    const converter::Value* v = &it->second;
    if (auto* list = std::get_if<converter::ValueList>(&v->data); list && !list->empty()) v = &list->front();
    if (auto* s = std::get_if<converter::Scalar>(&v->data)) return scalar_text(*s);
    if (auto* t = std::get_if<converter::TaggedLiteral>(&v->data)) return t->value;
  }
  return obj.localname.empty() ? obj.uri : obj.localname;
}

inline Json value_model(const converter::Value& v) {
  using namespace converter;
  if (auto* s = std::get_if<Scalar>(&v.data)) return Json{{"text", scalar_text(*s)}};
  if (auto* t = std::get_if<TaggedLiteral>(&v.data))
    return Json{{"text", t->value}, {"note", t->lang ? "@" + *t->lang : localname(*t->datatype)}};
  if (auto* r = std::get_if<Reference>(&v.data)) return Json{{"text", r->localname}, {"href", r->path}};
  const ResourceObject& o = *std::get<Box<ResourceObject>>(v.data);
  return Json{{"text", title_of(o)}, {"href", o.path}};
}

/// Template model of a resource page.
inline Json resource_model(const App& app, const converter::ResourceObject& obj) {
  using namespace converter;
  Json model;
  model["title"] = title_of(obj);
  model["resource"] = Json::parse(dump_canonical(to_json(obj)));
  Json properties = Json::array();
  Json depictions = Json::array();
  std::string depiction_key = app.keymap_snapshot().key_for(rdf::Iri(rdf::vocab::kFoafDepiction));
  for (const auto& [key, value] : obj.properties) {
    Json values = Json::array();
    auto add = [&](const Value& v) {
      Json m = value_model(v);
      values.push_back(m);
      if (key == depiction_key && m.contains("href")) depictions.push_back({{"path", m["href"]}, {"localname", m["text"]}});
    };
    if (auto* list = std::get_if<ValueList>(&value.data))
      for (const Value& v : *list) add(v);
    else
      add(value);
    properties.push_back({{"key", key}, {"values", std::move(values)}});
  }
  model["properties"] = std::move(properties);
  model["depictions"] = std::move(depictions);
  Json incoming = Json::array();
  if (obj.incoming)
    for (const auto& [key, refs] : *obj.incoming) {
      Json list = Json::array();
      for (const Reference& r : refs) list.push_back({{"path", r.path}, {"localname", r.localname}});
      incoming.push_back({{"key", key}, {"refs", std::move(list)}});
    }
  model["incoming"] = std::move(incoming);
  return model;
}

/// Representation of `iri` in the negotiated format; 404 when nothing mentions it.
inline Response represent(const Context& ctx, const Iri& iri, int status = 200, std::optional<int> depth = {}) {
  int d = depth ? *depth : depth_param(ctx);
  App& app = ctx.app;
  switch (ctx.format.value_or(Format::kJson)) {
    case Format::kJson: {
      auto obj = app.describe(iri, d, ctx.user);
      if (!obj) throw HttpError(404, "no resource at " + app.path_of(iri));
      return json_response(status, converter::to_json(*obj));
    }
    case Format::kTurtle: {
      auto triples = app.describe_triples(iri, d, ctx.user);
      if (!triples) throw HttpError(404, "no resource at " + app.path_of(iri));
      return turtle_response(status, app.serialize(*triples));
    }
    case Format::kHtml: {
      auto obj = app.describe(iri, d, ctx.user);
      if (!obj) throw HttpError(404, "no resource at " + app.path_of(iri));
      return html_response(app, status, app.template_for(iri), resource_model(app, *obj), ctx.user);
    }
  }
  throw HttpError(500, "unreachable");
}

inline OrderedJson page_json(const App& app, const Page& page, const std::vector<converter::ResourceObject>& items) {
  (void)app;
  OrderedJson j = OrderedJson::object();
  OrderedJson list = OrderedJson::array();
  for (const auto& item : items) list.push_back(converter::to_json(item));
  j["items"] = std::move(list);
  j["page"] = page.page;
  j["size"] = page.size;
  j["total"] = page.total;
  if (page.next) j["next"] = *page.next;
  if (page.prev) j["prev"] = *page.prev;
  return j;
}

/// A page of members in the negotiated format.
inline Response represent_page(const Context& ctx, const Page& page, const std::string& title, const std::string& path,
                               const std::string& template_name = "collection.tpl") {
  App& app = ctx.app;
  std::vector<converter::ResourceObject> items;
  if (ctx.format != Format::kTurtle)
    for (const Iri& iri : page.items)
      if (auto obj = app.describe(iri, ctx.format == Format::kJson ? 1 : 0, ctx.user)) items.push_back(std::move(*obj));
  switch (ctx.format.value_or(Format::kJson)) {
    case Format::kJson:
      return json_response(200, page_json(app, page, items));
    case Format::kTurtle: {
      std::set<Triple> all;
      for (const Iri& iri : page.items)
        if (auto t = app.describe_triples(iri, 0, ctx.user)) all.merge(*t);
      return turtle_response(200, app.serialize(all));
    }
    case Format::kHtml: {
      Json model;
      model["title"] = title;
      model["collection"] = {{"path", path}, {"name", title}};
      model["items"] = Json::array();
      for (const auto& obj : items) model["items"].push_back({{"path", obj.path}, {"title", title_of(obj)}});
      model["page"] = page.page;
      model["size"] = page.size;
      model["total"] = page.total;
      model["next"] = page.next ? Json(*page.next) : Json(nullptr);
      model["prev"] = page.prev ? Json(*page.prev) : Json(nullptr);
      return html_response(app, 200, template_name, std::move(model), ctx.user);
    }
  }
  throw HttpError(500, "unreachable");
}

/// GET/PUT/PATCH/DELETE on one instance resource.
inline Response item_request(Context& ctx, const Iri& iri) {
  const std::string& m = ctx.request.method;
  if (m == "GET" || m == "HEAD") {
    if (auto r = require_login(ctx)) return *r;
    return represent(ctx, iri);
  }
  if (m == "PUT" || m == "PATCH") {
    const User& user = require_user(ctx);
    Json body = read_body(ctx);
    if (m == "PUT") ctx.app.replace(iri, body, user);
    else ctx.app.patch(iri, body, user);
    if (ctx.format == Format::kHtml) return redirect(ctx.app.path_of(iri));
    return represent(ctx, iri);
  }
  if (m == "DELETE") {
    ctx.app.remove(iri, require_user(ctx));
    if (ctx.format == Format::kHtml) return redirect("/");
    Response r;
    r.status = 204;
    return r;
  }
  Response r = error_response(ctx.app, ctx.format, 405, "method not allowed", ctx.user);
  r.headers["Allow"] = "GET, PUT, PATCH, DELETE";
  return r;
}

inline Response method_not_allowed(const Context& ctx, const std::string& allow) {
  Response r = error_response(ctx.app, ctx.format, 405, "method not allowed", ctx.user);
  r.headers["Allow"] = allow;
  return r;
}

// ---- default resources -----------------------------------------------------

/// `/`: index page, and any app IRI not claimed by a more specific handler.
class RootResource : public LinkedDataResource {
 public:
  Response handle(Context& ctx) override {
    if (ctx.subpath.empty() || ctx.subpath == "/") {
      if (ctx.request.method != "GET" && ctx.request.method != "HEAD") return method_not_allowed(ctx, "GET");
      const AppConfig& c = ctx.app.config();
      switch (*ctx.format) {
        case Format::kJson: {
          OrderedJson j;
          j["base_url"] = c.base_url;
          j["collections"] = OrderedJson::array();
          for (const auto& spec : c.collections) {
            OrderedJson s;
            s["path"] = "/" + spec.path;
            if (spec.class_iri) s["class"] = *spec.class_iri;
            j["collections"].push_back(std::move(s));
          }
          return json_response(200, j);
        }
        case Format::kTurtle:
          return turtle_response(200, ctx.app.serialize({}));
        case Format::kHtml: {
          Json model;
          model["title"] = c.base_url;
          model["collections"] = Json::array();
          for (const auto& spec : c.collections)
            model["collections"].push_back({{"path", "/" + spec.path}, {"name", spec.path}});
          return html_response(ctx.app, 200, "index.tpl", std::move(model), ctx.user);
        }
      }
    }
    if (ctx.request.method == "POST" && ctx.subpath.find('/', 1) == std::string::npos)
      throw HttpError(404, "unknown collection " + ctx.subpath);
    return item_request(ctx, ctx.app.iri_for_path(ctx.subpath));
  }
};

/// `/<c>` list and create, `/<c>/<id>` read and update.
class CollectionResource : public LinkedDataResource {
 public:
  explicit CollectionResource(CollectionSpec spec) : spec_(std::move(spec)) {}

  Response handle(Context& ctx) override {
    App& app = ctx.app;
    std::string path = "/" + spec_.path;
    if (!ctx.subpath.empty() && ctx.subpath != "/") return item_request(ctx, app.iri_for_path(ctx.request.path));
    if (ctx.request.method == "GET" || ctx.request.method == "HEAD") {
      if (auto r = require_login(ctx)) return *r;
      int page = int_param(ctx, "page", 1);
      int size = int_param(ctx, "size", app.config().default_page_size);
      Page p = App::paginate(app.collection_members(spec_, ctx.user), page, size, path);
      return represent_page(ctx, p, spec_.path, path);
    }
    if (ctx.request.method == "POST") {
      const User& user = require_user(ctx);
      Json body = read_body(ctx);
      Iri iri = app.create(spec_.path, body, user, wants_shared(ctx));
      std::string location = app.path_of(iri);
      if (ctx.format == Format::kHtml) return redirect(location);
      Response r = represent(ctx, iri, 201, 1);
      r.headers["Location"] = location;
      return r;
    }
    return method_not_allowed(ctx, "GET, POST");
  }

  const CollectionSpec& spec() const noexcept { return spec_; }

 private:
  CollectionSpec spec_;
};

/// `/ontology` term list and `/ontology/<term>`; read-only and public.
class OntologyResource : public LinkedDataResource {
 public:
  Response handle(Context& ctx) override {
    App& app = ctx.app;
    if (ctx.request.method != "GET" && ctx.request.method != "HEAD")
      return method_not_allowed(ctx, "GET");
    if (ctx.subpath.empty() || ctx.subpath == "/") {
      int page = int_param(ctx, "page", 1);
      int size = int_param(ctx, "size", app.config().default_page_size);
      Page p = App::paginate(app.ontology_terms(), page, size, "/ontology");
      return represent_page(ctx, p, "ontology", "/ontology");
    }
    std::string rest = ctx.subpath.substr(1);
    std::string base = app.config().base_url + "/ontology";
    for (const std::string& candidate : {base + "/" + rest, base + "#" + rest}) {
      if (!rdf::is_absolute_iri(candidate)) continue;
      Iri iri(candidate);
      if (app.is_ontology_term(iri)) return represent(ctx, iri);
    }
    throw HttpError(404, "unknown term " + rest);
  }
};

/// `/sparql`: SELECT queries over the caller's visible graphs.
class SparqlResource : public LinkedDataResource {
 public:
  Response handle(Context& ctx) override {
    App& app = ctx.app;
    const std::string& m = ctx.request.method;
    if (m != "GET" && m != "POST" && m != "HEAD") return method_not_allowed(ctx, "GET, POST");
    if (ctx.format == Format::kTurtle)
      return error_response(app, std::nullopt, 406, "query results are not available as text/turtle", ctx.user);
    if (auto r = require_login(ctx)) return *r;
    std::optional<std::string> text = ctx.request.param("query");
    if (m == "POST") {
      std::string ct = ctx.request.content_type();
      if (ct == "application/sparql-query") {
        text = ctx.request.body;
      } else {
        auto fields = read_fields(ctx);
        if (auto it = fields.find("query"); it != fields.end()) text = it->second;
      }
    }
    if (!text) {
      if (ctx.format == Format::kHtml)
        return html_response(app, 200, "sparql.tpl", Json{{"query", ""}, {"vars", Json::array()}, {"rows", Json::array()}},
                             ctx.user);
      throw HttpError(400, "missing 'query'");
    }
    auto result = app.sparql(*text, ctx.user);
    if (ctx.format == Format::kJson) return json_response(200, query::results_to_json(result.vars, result.rows));
    Json rows = Json::array();
    for (const auto& s : result.rows) {
      Json cells = Json::array();
      for (const auto& v : result.vars) {
        auto it = s.bindings.find(v);
        if (it == s.bindings.end()) {
          cells.push_back({{"text", ""}});
        } else if (it->second.is_iri()) {
          cells.push_back({{"text", it->second.text()}, {"href", app.path_of(it->second.as_iri())}});
        } else {
          cells.push_back({{"text", it->second.text()}});
        }
      }
      rows.push_back({{"cells", std::move(cells)}});
    }
    return html_response(app, 200, "sparql.tpl", Json{{"query", *text}, {"vars", result.vars}, {"rows", rows}},
                         ctx.user);
  }
};

/// `/search?q=`: case-insensitive regex over labels.
class SearchResource : public LinkedDataResource {
 public:
  Response handle(Context& ctx) override {
    App& app = ctx.app;
    if (ctx.request.method != "GET" && ctx.request.method != "HEAD") return method_not_allowed(ctx, "GET");
    if (ctx.format == Format::kTurtle)
      return error_response(app, std::nullopt, 406, "search results are not available as text/turtle", ctx.user);
    if (auto r = require_login(ctx)) return *r;
    auto q = ctx.request.param("q");
    if (!q) {
      if (ctx.format == Format::kHtml)
        return html_response(app, 200, "search.tpl", Json{{"q", ""}, {"hits", Json::array()}}, ctx.user);
      throw HttpError(400, "missing 'q'");
    }
    std::optional<std::size_t> limit;
    if (ctx.request.param("limit")) limit = static_cast<std::size_t>(int_param(ctx, "limit", 1));
    auto hits = app.search(*q, ctx.user, limit);
    if (ctx.format == Format::kJson) {
      OrderedJson list = OrderedJson::array();
      for (const auto& h : hits) {
        OrderedJson item = converter::to_json(converter::make_reference(h.resource, app.config().base_url));
        item["label"] = h.label;
        list.push_back(std::move(item));
      }
      return json_response(200, list);
    }
    Json model{{"q", *q}, {"hits", Json::array()}};
    for (const auto& h : hits)
      model["hits"].push_back({{"path", app.path_of(h.resource)}, {"label", h.label}, {"uri", h.resource.str()}});
    return html_response(app, 200, "search.tpl", std::move(model), ctx.user);
  }
};

/// `/upload`: image upload and `/upload/<n>` bytes or description.
class UploadResource : public LinkedDataResource {
 public:
  bool requires_format() const override { return false; }

  Response handle(Context& ctx) override {
    App& app = ctx.app;
    const std::string& m = ctx.request.method;
    if (ctx.subpath.empty() || ctx.subpath == "/") {
      if (m != "POST") return method_not_allowed(ctx, "POST");
      if (!ctx.format) return error_response(app, std::nullopt, 406, "no acceptable response format");
      const User& user = require_user(ctx);
      std::optional<Iri> target;
      if (auto t = ctx.request.param("target"); t && !t->empty()) {
        std::string resolved = converter::resolve_path(*t, app.config().base_url);
        if (!rdf::is_absolute_iri(resolved)) throw HttpError(404, "upload target not found");
        target = Iri(resolved);
      }
      Iri iri = app.upload(ctx.request.body, ctx.request.content_type(), target, user, wants_shared(ctx));
      std::string location = app.path_of(iri);
      if (ctx.format == Format::kHtml) return redirect(target ? app.path_of(*target) : location);
      Response r = represent(ctx, iri, 201, 1);
      r.headers["Location"] = location;
      return r;
    }
    Iri iri = app.iri_for_path(ctx.request.path);
    if (m != "GET" && m != "HEAD") {
      if (!ctx.format) return error_response(app, std::nullopt, 406, "no acceptable response format");
      return item_request(ctx, iri);
    }
    auto info = app.find_upload(iri, ctx.user);
    bool raw = wants_bytes(ctx, info ? info->content_type : std::string(kPng));
    if (!raw && !ctx.format) return error_response(app, std::nullopt, 406, "no acceptable response format");
    if (!ctx.user) {
      if (!raw) {
        if (auto r = require_login(ctx)) return *r;
      }
      throw HttpError(401, "authentication required");
    }
    if (!info) {
      if (raw) throw HttpError(404, "no upload at " + ctx.request.path);
      return represent(ctx, iri);
    }
    if (!raw) return represent(ctx, iri);
    std::ifstream in(info->file, std::ios::binary);
    if (!in) throw HttpError(404, "upload file is missing");
    std::ostringstream ss;
    ss << in.rdbuf();
    Response r;
    r.headers["Content-Type"] = info->content_type;
    r.body = ss.str();
    return r;
  }

 private:
  /// Bytes unless the Accept header names one of the description formats more specifically.
  static bool wants_bytes(const Context& ctx, const std::string& image_type) {
    auto header = ctx.request.header("Accept");
    if (!header) return true;
    auto ranges = parse_accept(*header);
    if (!ranges) return true;
    auto image = best_range_for(*ranges, image_type);
    if (image && image->q > 0 && image->specificity() == 2) return true;
    if (ctx.format) {
      auto described = best_range_for(*ranges, media_type(*ctx.format));
      if (described && described->specificity() == 2) return false;
    }
    return image && image->q > 0;
  }
};

/// `/user/<n>`: account resources, readable by their owner.
class UserResource : public LinkedDataResource {
 public:
  Response handle(Context& ctx) override {
    if (ctx.request.method != "GET" && ctx.request.method != "HEAD") return method_not_allowed(ctx, "GET");
    if (auto r = require_login(ctx)) return *r;
    return represent(ctx, ctx.app.iri_for_path(ctx.request.path));
  }
};

inline std::string session_cookie(const std::string& token, int max_age) {
  return std::string(kSessionCookie) + "=" + token + "; Path=/; HttpOnly; SameSite=Lax; Max-Age=" +
         std::to_string(max_age);
}

inline OrderedJson account_json(const App& app, const User& user) {
  OrderedJson j;
  j["username"] = user.username;
  j["uri"] = user.uri.str();
  j["path"] = app.path_of(user.uri);
  return j;
}

/// `/login`: form and session creation.
class LoginResource : public LinkedDataResource {
 public:
  Response handle(Context& ctx) override {
    App& app = ctx.app;
    if (ctx.format == Format::kTurtle) return error_response(app, std::nullopt, 406, "login is not available as text/turtle");
    if (ctx.request.method == "GET") {
      if (ctx.format != Format::kHtml) return method_not_allowed(ctx, "POST");
      return html_response(app, 200, "login.tpl", Json{{"message", ""}, {"username", ""}}, ctx.user);
    }
    if (ctx.request.method != "POST") return method_not_allowed(ctx, "GET, POST");
    Params fields = read_fields(ctx);
    std::string username = fields["username"];
    std::string token;
    try {
      token = app.login(username, fields["password"]);
    } catch (const HttpError& e) {
      if (ctx.format != Format::kHtml) throw;
      return html_response(app, e.status(), "login.tpl", Json{{"message", e.what()}, {"username", username}}, ctx.user);
    }
    User user = *app.find_user(username);
    Response r = ctx.format == Format::kHtml ? redirect("/") : json_response(200, account_json(app, user));
    r.headers["Set-Cookie"] = session_cookie(token, app.config().session_ttl_minutes * 60);
    return r;
  }
};

/// `/register`: form and account creation.
class RegisterResource : public LinkedDataResource {
 public:
  Response handle(Context& ctx) override {
    App& app = ctx.app;
    if (ctx.format == Format::kTurtle)
      return error_response(app, std::nullopt, 406, "registration is not available as text/turtle");
    if (ctx.request.method == "GET") {
      if (ctx.format != Format::kHtml) return method_not_allowed(ctx, "POST");
      return html_response(app, 200, "register.tpl", Json{{"message", ""}, {"username", ""}}, ctx.user);
    }
    if (ctx.request.method != "POST") return method_not_allowed(ctx, "GET, POST");
    Params fields = read_fields(ctx);
    std::string username = fields["username"];
    std::optional<User> user;
    try {
      user = app.register_user(username, fields["password"]);
    } catch (const HttpError& e) {
      if (ctx.format != Format::kHtml) throw;
      return html_response(app, e.status(), "register.tpl", Json{{"message", e.what()}, {"username", username}},
                           ctx.user);
    }
    if (ctx.format == Format::kHtml) return redirect("/login");
    Response r = json_response(201, account_json(app, *user));
    r.headers["Location"] = app.path_of(user->uri);
    return r;
  }
};

/// `/logout`: invalidates the session cookie.
class LogoutResource : public LinkedDataResource {
 public:
  Response handle(Context& ctx) override {
    if (ctx.request.method != "POST") return method_not_allowed(ctx, "POST");
    if (auto cookie = ctx.request.header("Cookie"))
      if (auto token = cookie_value(*cookie, kSessionCookie)) ctx.app.logout(*token);
    Response r;
    if (ctx.format == Format::kHtml) r = redirect("/login");
    else r.status = 204;
    r.headers["Set-Cookie"] = session_cookie("", 0);
    return r;
  }
};

inline std::string static_content_type(const fs::path& p) {
  static const std::map<std::string, std::string> types = {
      {".html", "text/html; charset=utf-8"}, {".js", "text/javascript; charset=utf-8"},
      {".mjs", "text/javascript; charset=utf-8"}, {".css", "text/css; charset=utf-8"},
      {".json", "application/json"}, {".svg", "image/svg+xml"}, {".png", "image/png"},
      {".jpg", "image/jpeg"}, {".ico", "image/x-icon"}, {".txt", "text/plain; charset=utf-8"}};
  auto it = types.find(p.extension().string());
  return it == types.end() ? "application/octet-stream" : it->second;
}

/// `/app/**`: static files from `<app_dir>/webui/`.
class StaticResource : public LinkedDataResource {
 public:
  bool requires_format() const override { return false; }

  Response handle(Context& ctx) override {
    if (ctx.request.method != "GET" && ctx.request.method != "HEAD") return method_not_allowed(ctx, "GET");
    std::string rel = ctx.subpath.empty() ? "/" : ctx.subpath;
    if (rel.ends_with('/')) rel += "index.html";
    fs::path p = fs::path(rel.substr(1)).lexically_normal();
    if (p.empty() || p.is_absolute() || *p.begin() == "..") throw HttpError(404, "not found");
    fs::path file = ctx.app.config().app_dir / "webui" / p;
    if (!fs::is_regular_file(file)) throw HttpError(404, "not found");
    Response r;
    r.headers["Content-Type"] = static_content_type(file);
    r.body = rdf::read_file(file);
    return r;
  }
};

/// Registers the built-in resources and one collection resource per configured collection.
inline void install_default_resources(App& app) {
  app.register_handler("/", std::make_shared<RootResource>());
  app.register_handler("/ontology", std::make_shared<OntologyResource>());
  app.register_handler("/sparql", std::make_shared<SparqlResource>());
  app.register_handler("/search", std::make_shared<SearchResource>());
  app.register_handler("/upload", std::make_shared<UploadResource>());
  app.register_handler("/user", std::make_shared<UserResource>());
  app.register_handler("/login", std::make_shared<LoginResource>());
  app.register_handler("/register", std::make_shared<RegisterResource>());
  app.register_handler("/logout", std::make_shared<LogoutResource>());
  app.register_handler("/app", std::make_shared<StaticResource>());
  for (const auto& spec : app.config().collections)
    app.register_handler("/" + spec.path, std::make_shared<CollectionResource>(spec));
}

/// An App with the built-in resources installed.
inline std::unique_ptr<App> make_app(AppConfig config) {
  auto app = std::make_unique<App>(std::move(config));
  install_default_resources(*app);
  return app;
}

/// Adapts a plain function to the handler interface.
class FunctionResource : public LinkedDataResource {
 public:
  explicit FunctionResource(std::function<Response(Context&)> fn) : fn_(std::move(fn)) {}
  Response handle(Context& ctx) override { return fn_(ctx); }

 private:
  std::function<Response(Context&)> fn_;
};

}  // namespace ldaf::server

#endif  // LDAF_SERVER_RESOURCES_HPP
