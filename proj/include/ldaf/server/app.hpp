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

#ifndef LDAF_SERVER_APP_HPP
#define LDAF_SERVER_APP_HPP

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "ldaf/converter/converter.hpp"
#include "ldaf/converter/keymap.hpp"
#include "ldaf/query/evaluate.hpp"
#include "ldaf/query/query.hpp"
#include "ldaf/rdf/graph.hpp"
#include "ldaf/rdf/store.hpp"
#include "ldaf/rdf/turtle.hpp"
#include "ldaf/server/auth.hpp"
#include "ldaf/server/config.hpp"
#include "ldaf/server/default_templates.hpp"
#include "ldaf/server/message.hpp"
#include "ldaf/server/negotiate.hpp"
#include "ldaf/template/template.hpp"

namespace ldaf::server {

using converter::Json;
using converter::OrderedJson;
using rdf::Iri;
using rdf::Term;
using rdf::Triple;
using rdf::TriplePattern;

/// An error with an HTTP status; handlers throw it and the dispatcher renders it.
class HttpError : public std::runtime_error {
 public:
  HttpError(int status, const std::string& message) : std::runtime_error(message), status_(status) {}
  int status() const noexcept { return status_; }

 private:
  int status_;
};

struct User {
  Iri uri;
  std::string username;
  Iri graph;

  friend bool operator==(const User&, const User&) = default;
};

using Principal = std::optional<User>;

/// One page of a member list.
struct Page {
  std::vector<Iri> items;
  int page = 1;
  int size = 1;
  std::size_t total = 0;
  std::optional<std::string> next;
  std::optional<std::string> prev;
};

struct UploadInfo {
  Iri iri;
  std::string content_type;
  fs::path file;
};

class App;

/// What a handler sees of a request after negotiation and session lookup.
struct Context {
  App& app;
  const Request& request;
  /// Negotiated format; nullopt when the Accept header admits none.
  std::optional<Format> format;
  Principal user;
  /// Mount point of the handler, e.g. `/person`; empty for the root handler.
  std::string prefix;
  /// Request path below the prefix: empty or starting with '/'.
  std::string subpath;
};

/// Extension point: a handler mounted under a path prefix.
class LinkedDataResource {
 public:
  virtual ~LinkedDataResource() = default;
  virtual Response handle(Context& ctx) = 0;
  /// When true, requests whose Accept header admits no format get 406 before dispatch.
  virtual bool requires_format() const { return true; }
};

inline std::optional<long long> parse_integer(std::string_view text) {
  long long v = 0;
  if (text.empty()) return std::nullopt;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return v;
}

namespace vocab {
inline std::string system_term(const AppConfig& c, std::string_view local) {
  return c.ontology_namespace() + std::string(local);
}
}  // namespace vocab

inline constexpr std::string_view kPng = "image/png";
inline constexpr std::string_view kJpeg = "image/jpeg";

/// Image media type whose magic bytes start `bytes`, if any.
inline std::optional<std::string> sniff_image(std::string_view bytes) {
  if (bytes.starts_with(std::string_view("\x89PNG\r\n\x1a\n", 8))) return std::string(kPng);
  if (bytes.starts_with(std::string_view("\xff\xd8\xff", 3))) return std::string(kJpeg);
  return std::nullopt;
}

/// The application: dataset, users, sessions, templates and the handler registry.
///
/// Public operations lock internally: reads share, mutations hold the writer lock
/// through persistence.
class App {
 public:
  explicit App(AppConfig config)
      : config_(std::move(config)),
        sessions_(std::chrono::minutes(config_.session_ttl_minutes)),
        keymap_(config_.ontology_namespace()) {
    validate(config_);
    startup();
  }

  App(const App&) = delete;
  App& operator=(const App&) = delete;

  const AppConfig& config() const noexcept { return config_; }
  SessionStore& sessions() noexcept { return sessions_; }

  // ---- graph names -------------------------------------------------------

  Iri ontology_graph() const { return Iri(config_.base_url + "/graph/ontology"); }
  Iri shared_graph() const { return Iri(config_.base_url + "/graph/shared"); }
  std::string user_graph_prefix() const { return config_.base_url + "/graph/user/"; }
  std::string term(std::string_view local) const { return vocab::system_term(config_, local); }

  bool is_instance_graph(const Iri& g) const {
    return g == shared_graph() || g.str().starts_with(user_graph_prefix());
  }

  std::vector<Iri> visible_graph_names(const Principal& user) const {
    if (!user) return {ontology_graph()};
    return {user->graph, shared_graph(), ontology_graph()};
  }

  std::vector<Iri> writable_graph_names(const Principal& user) const {
    if (!user) return {};
    return {user->graph, shared_graph()};
  }

  /// True for IRIs under the application's base URL.
  bool is_app_iri(std::string_view iri) const {
    if (!iri.starts_with(config_.base_url)) return false;
    std::string_view rest = iri.substr(config_.base_url.size());
    return rest.empty() || rest[0] == '/' || rest[0] == '#';
  }

  std::string path_of(const Iri& iri) const { return converter::path_of(iri.str(), config_.base_url); }
  Iri iri_for_path(std::string_view path) const { return Iri(config_.base_url + std::string(path)); }

  // ---- snapshots ---------------------------------------------------------

  rdf::Dataset dataset_snapshot() const {
    std::shared_lock lock(mutex_);
    return dataset_;
  }

  converter::KeyMap keymap_snapshot() const {
    std::shared_lock lock(mutex_);
    return keymap_;
  }

  /// Runs `f(dataset, keymap)` under the reader lock.
  template <typename F>
  auto with_read(F&& f) const {
    std::shared_lock lock(mutex_);
    return f(dataset_, keymap_);
  }

  std::map<std::string, std::uint64_t> counters() const {
    std::shared_lock lock(mutex_);
    return counters_;
  }

  // ---- templates ---------------------------------------------------------

  bool has_template(const std::string& name) const { return templates_.contains(name); }

  std::string render(const std::string& name, const Json& model) const {
    auto it = templates_.find(name);
    if (it == templates_.end()) throw HttpError(500, "missing template " + name);
    return tpl::render(it->second, model);
  }

  /// Template for a resource page: the owning collection's, else `resource.tpl`.
  std::string template_for(const Iri& iri) const {
    std::string path = path_of(iri);
    if (path.starts_with("/")) {
      auto slash = path.find('/', 1);
      if (slash != std::string::npos)
        if (const CollectionSpec* c = config_.find_collection(std::string_view(path).substr(1, slash - 1));
            c && c->template_name)
          return normalize_template_name(*c->template_name);
    }
    return "resource.tpl";
  }

  static std::string normalize_template_name(std::string name) {
    if (!name.ends_with(".tpl")) name += ".tpl";
    return name;
  }

  // ---- handler registry --------------------------------------------------

  /// Mounts `resource` at `prefix` ("/x" or "/" for the root). Throws on duplicates.
  void register_handler(std::string prefix, std::shared_ptr<LinkedDataResource> resource) {
    if (prefix == "/") prefix.clear();
    if (!prefix.empty() && (!prefix.starts_with('/') || prefix.ends_with('/')))
      throw std::invalid_argument("handler prefix must start with '/' and not end with '/': " + prefix);
    if (!resource) throw std::invalid_argument("null handler for prefix " + prefix);
    if (handlers_.contains(prefix)) throw std::invalid_argument("duplicate handler prefix: " + (prefix.empty() ? "/" : prefix));
    handlers_.emplace(std::move(prefix), std::move(resource));
  }

  /// Longest registered prefix covering `path`.
  std::optional<std::string> match_handler(std::string_view path) const {
    std::optional<std::string> best;
    for (const auto& [prefix, _] : handlers_) {
      bool covers = prefix.empty() || path == prefix ||
                    (path.starts_with(prefix) && path.size() > prefix.size() && path[prefix.size()] == '/');
      if (covers && (!best || prefix.size() > best->size())) best = prefix;
    }
    return best;
  }

  std::vector<std::string> handler_prefixes() const {
    std::vector<std::string> out;
    for (const auto& [p, _] : handlers_) out.push_back(p.empty() ? "/" : p);
    return out;
  }

  Response handle(const Request& request);

  // ---- users and sessions ------------------------------------------------

  std::optional<User> find_user(const std::string& username) const {
    std::shared_lock lock(mutex_);
    auto it = accounts_.find(username);
    if (it == accounts_.end()) return std::nullopt;
    return it->second.user;
  }

  std::size_t user_count() const {
    std::shared_lock lock(mutex_);
    return accounts_.size();
  }

  /// User bound to a session token, if the session is live.
  Principal user_for_token(std::string_view token) const {
    auto uri = sessions_.lookup(token);
    if (!uri) return std::nullopt;
    std::shared_lock lock(mutex_);
    for (const auto& [name, account] : accounts_)
      if (account.user.uri == *uri) return account.user;
    return std::nullopt;
  }

  User register_user(const std::string& username, const std::string& password) {
    if (username.empty() || username.size() > 64) throw HttpError(400, "username must have 1 to 64 characters");
    for (char c : username)
      if (!((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '-' ||
            c == '.'))
        throw HttpError(400, "username may only contain letters, digits, '_', '-' and '.'");
    if (password.size() < 8) throw HttpError(400, "password must have at least 8 characters");
    {
      std::shared_lock lock(mutex_);
      if (accounts_.contains(username)) throw HttpError(409, "username already taken");
    }
    PasswordRecord record = hash_password(password);
    std::unique_lock lock(mutex_);
    if (accounts_.contains(username)) throw HttpError(409, "username already taken");
    std::uint64_t n = ++counters_["user"];
    User user{Iri(config_.base_url + "/user/" + std::to_string(n)), username,
              Iri(user_graph_prefix() + std::to_string(n))};
    rdf::Graph& g = dataset_.ensure_graph(user.graph);
    g.insert(Triple{user.uri, Iri(rdf::vocab::kRdfType), Term(Iri(term("User")))});
    g.insert(Triple{user.uri, Iri(term("username")), Term(rdf::Literal(username))});
    g.insert(Triple{user.uri, Iri(rdf::vocab::kRdfsLabel), Term(rdf::Literal(username))});
    g.insert(Triple{user.uri, Iri(term("passwordHash")), Term(rdf::Literal(record.hash))});
    g.insert(Triple{user.uri, Iri(term("salt")), Term(rdf::Literal(record.salt))});
    accounts_.emplace(username, Account{user, record});
    persist_locked({user.graph}, false);
    return user;
  }

  /// Issues a session token; the same 401 covers unknown users and wrong passwords.
  std::string login(const std::string& username, const std::string& password) {
    std::optional<Account> account;
    {
      std::shared_lock lock(mutex_);
      if (auto it = accounts_.find(username); it != accounts_.end()) account = it->second;
    }
    bool ok = account ? verify_password(password, account->password)
                      : (verify_password(password, dummy_record()), false);
    if (!ok) throw HttpError(401, "invalid username or password");
    return sessions_.create(account->user.uri);
  }

  void logout(std::string_view token) { sessions_.remove(token); }

  // ---- reads -------------------------------------------------------------

  /// Resource object over the user's visible graphs; nullopt when nothing mentions `iri`.
  std::optional<converter::ResourceObject> describe(const Iri& iri, int depth, const Principal& user) const {
    std::shared_lock lock(mutex_);
    auto graphs = graph_ptrs_locked(visible_graph_names(user));
    if (!mentioned_locked(graphs, iri)) return std::nullopt;
    return converter::rdf_to_json(graphs, iri, depth, keymap_, config_.base_url);
  }

  /// Triples of the depth-limited outgoing subgraph rooted at `iri`.
  std::optional<std::set<Triple>> describe_triples(const Iri& iri, int depth, const Principal& user) const {
    std::shared_lock lock(mutex_);
    auto graphs = graph_ptrs_locked(visible_graph_names(user));
    if (!mentioned_locked(graphs, iri)) return std::nullopt;
    return reachable_locked(graphs, {iri}, depth);
  }

  std::string serialize(const std::set<Triple>& triples) const {
    std::shared_lock lock(mutex_);
    return rdf::serialize_turtle(triples, dataset_.prefixes());
  }

  /// Members of a collection over the user's visible graphs, in id order.
  std::vector<Iri> collection_members(const CollectionSpec& spec, const Principal& user) const {
    std::shared_lock lock(mutex_);
    auto graphs = graph_ptrs_locked(visible_graph_names(user));
    std::set<Iri> members;
    if (spec.class_iri) {
      for (const Triple& t : rdf::match_union(graphs, TriplePattern{std::nullopt, Iri(rdf::vocab::kRdfType),
                                                                    Term(Iri(*spec.class_iri))}))
        members.insert(t.subject);
    } else {
      std::string prefix = config_.base_url + "/" + spec.path + "/";
      for (const rdf::Graph* g : graphs)
        for (const Triple& t : *g)
          if (t.subject.str().starts_with(prefix)) members.insert(t.subject);
    }
    std::vector<Iri> out(members.begin(), members.end());
    std::string prefix = config_.base_url + "/" + spec.path + "/";
    auto key = [&](const Iri& iri) {
      std::optional<long long> id;
      if (iri.str().starts_with(prefix)) id = parse_integer(std::string_view(iri.str()).substr(prefix.size()));
      return std::make_tuple(id ? 0 : 1, id.value_or(0), iri);
    };
    std::sort(out.begin(), out.end(), [&](const Iri& a, const Iri& b) { return key(a) < key(b); });
    return out;
  }

  /// Slices `members` into page `page` of `size`; links point at `path`.
  static Page paginate(const std::vector<Iri>& members, int page, int size, const std::string& path) {
    if (page < 1 || size < 1) throw HttpError(400, "page and size must be at least 1");
    Page p;
    p.page = page;
    p.size = size;
    p.total = members.size();
    std::size_t start = static_cast<std::size_t>(page - 1) * static_cast<std::size_t>(size);
    for (std::size_t i = start; i < members.size() && i < start + static_cast<std::size_t>(size); ++i)
      p.items.push_back(members[i]);
    auto link = [&](int n) { return path + "?page=" + std::to_string(n) + "&size=" + std::to_string(size); };
    if (static_cast<std::size_t>(page) * static_cast<std::size_t>(size) < p.total) p.next = link(page + 1);
    if (page > 1) p.prev = link(page - 1);
    return p;
  }

  /// Subjects of the ontology graph, in IRI order.
  std::vector<Iri> ontology_terms() const {
    std::shared_lock lock(mutex_);
    std::set<Iri> terms;
    for (const Triple& t : dataset_.graph(ontology_graph())) terms.insert(t.subject);
    return {terms.begin(), terms.end()};
  }

  bool is_ontology_term(const Iri& iri) const {
    std::shared_lock lock(mutex_);
    return !dataset_.graph(ontology_graph()).match(TriplePattern{iri, std::nullopt, std::nullopt}).empty();
  }

  struct QueryResult {
    std::vector<std::string> vars;
    std::vector<query::Solution> rows;
  };

  QueryResult sparql(const std::string& text, const Principal& user) const {
    query::Query q;
    try {
      q = query::parse_query(text);
    } catch (const rdf::ParseError& e) {
      throw HttpError(400, e.what());
    } catch (const query::RegexError& e) {
      throw HttpError(400, e.what());
    }
    std::shared_lock lock(mutex_);
    auto graphs = graph_ptrs_locked(visible_graph_names(user));
    return QueryResult{q.result_variables(), query::evaluate(q, graphs)};
  }

  std::vector<query::LabelHit> search(const std::string& pattern, const Principal& user,
                                      std::optional<std::size_t> limit = std::nullopt) const {
    std::shared_lock lock(mutex_);
    auto graphs = graph_ptrs_locked(visible_graph_names(user));
    try {
      return query::search_labels(pattern, graphs, limit);
    } catch (const query::RegexError& e) {
      throw HttpError(400, e.what());
    }
  }

  /// Stored file of an upload visible to `user`.
  std::optional<UploadInfo> find_upload(const Iri& iri, const Principal& user) const {
    std::shared_lock lock(mutex_);
    auto graphs = graph_ptrs_locked(visible_graph_names(user));
    auto ct = rdf::match_union(graphs, TriplePattern{iri, Iri(term("contentType")), std::nullopt});
    if (ct.empty() || !ct.front().object.is_literal()) return std::nullopt;
    std::string content_type = ct.front().object.as_literal().lexical();
    std::string path = path_of(iri);
    if (!path.starts_with("/upload/")) return std::nullopt;
    std::string n = path.substr(8);
    if (!parse_integer(n)) return std::nullopt;
    return UploadInfo{iri, content_type, upload_dir() / (n + (content_type == kPng ? ".png" : ".jpg"))};
  }

  fs::path upload_dir() const { return config_.app_dir / "uploads"; }

  // ---- writes ------------------------------------------------------------

  /// Mints a member of `collection` from `body`; returns its IRI.
  Iri create(const std::string& collection, const Json& body, const User& user, bool shared = false) {
    const CollectionSpec* spec = config_.find_collection(collection);
    if (!spec) throw HttpError(404, "unknown collection /" + collection);
    if (!body.is_object()) throw HttpError(400, "request body must be a JSON object");
    std::unique_lock lock(mutex_);
    Iri graph = shared ? shared_graph() : user.graph;
    Draft draft(*this);
    Iri subject = draft.mint(collection);
    draft.convert(body, subject, collection);
    check_links_locked(draft, graph);
    rdf::Graph& g = dataset_.ensure_graph(graph);
    g.insert_all(draft.triples);
    commit_locked(draft, {graph});
    return subject;
  }

  /// Replaces the outgoing triples of `iri` with those described by `body`.
  void replace(const Iri& iri, const Json& body, const User& user) {
    if (!body.is_object()) throw HttpError(400, "request body must be a JSON object");
    std::unique_lock lock(mutex_);
    Iri home = locate_locked(iri, user);
    Draft draft(*this);
    draft.fresh.insert(iri);
    draft.convert(body, iri, collection_of(iri));
    check_links_locked(draft, home);
    std::set<Iri> changed;
    for (const Iri& g : writable_graph_names(user))
      if (dataset_.has_graph(g) && dataset_.graph(g).remove(TriplePattern{iri, std::nullopt, std::nullopt}) > 0)
        changed.insert(g);
    dataset_.ensure_graph(home).insert_all(draft.triples);
    changed.insert(home);
    commit_locked(draft, changed);
  }

  /// Per-key update: each non-reserved key replaces that predicate's values; null deletes.
  void patch(const Iri& iri, const Json& body, const User& user) {
    if (!body.is_object()) throw HttpError(400, "request body must be a JSON object");
    std::unique_lock lock(mutex_);
    Iri home = locate_locked(iri, user);
    Draft draft(*this);
    draft.fresh.insert(iri);
    Json values = Json::object();
    std::set<Iri> predicates;
    for (auto& [key, value] : body.items()) {
      if (converter::is_reserved_key(key)) continue;
      if (value.is_null()) {
        if (auto p = draft.keymap.find(key)) predicates.insert(*p);
      } else {
        values[key] = value;
      }
    }
    draft.convert(values, iri, collection_of(iri));
    for (auto& [key, value] : values.items())
      if (auto p = draft.keymap.find(key)) predicates.insert(*p);
    check_links_locked(draft, home);
    std::set<Iri> changed;
    for (const Iri& g : writable_graph_names(user)) {
      if (!dataset_.has_graph(g)) continue;
      for (const Iri& p : predicates)
        if (dataset_.graph(g).remove(TriplePattern{iri, p, std::nullopt}) > 0) changed.insert(g);
    }
    if (dataset_.ensure_graph(home).insert_all(draft.triples) > 0) changed.insert(home);
    commit_locked(draft, changed);
  }

  /// Removes the resource and every link to it from all instance graphs.
  void remove(const Iri& iri, const User& user) {
    std::unique_lock lock(mutex_);
    locate_locked(iri, user);
    std::set<Iri> changed;
    for (const Iri& g : writable_graph_names(user))
      if (dataset_.has_graph(g) && dataset_.graph(g).remove(TriplePattern{iri, std::nullopt, std::nullopt}) > 0)
        changed.insert(g);
    for (const auto& name : instance_graph_names_locked())
      if (dataset_.graph(name).remove(TriplePattern{std::nullopt, std::nullopt, Term(iri)}) > 0) changed.insert(name);
    std::string path = path_of(iri);
    if (path.starts_with("/upload/") && parse_integer(std::string_view(path).substr(8))) {
      std::error_code ec;
      for (const char* ext : {".png", ".jpg"}) fs::remove(upload_dir() / (path.substr(8) + ext), ec);
    }
    persist_locked(changed, false);
  }

  /// Stores an image and mints `/upload/<n>`; links it from `target` via foaf:depiction.
  Iri upload(const std::string& bytes, const std::string& content_type, const std::optional<Iri>& target,
             const User& user, bool shared = false) {
    if (content_type != kPng && content_type != kJpeg) throw HttpError(415, "only image/png and image/jpeg are accepted");
    if (static_cast<std::int64_t>(bytes.size()) > config_.upload_max_bytes) throw HttpError(413, "upload too large");
    if (sniff_image(bytes) != content_type) throw HttpError(415, "content does not match " + content_type);
    std::unique_lock lock(mutex_);
    Iri graph = shared ? shared_graph() : user.graph;
    if (target) {
      try {
        graph = locate_locked(*target, user);
      } catch (const HttpError& e) {
        if (e.status() == 404) throw HttpError(404, "upload target not found");
        throw;
      }
    }
    Draft draft(*this);
    Iri iri = draft.mint("upload");
    std::string n = path_of(iri).substr(8);
    std::string ext = content_type == kPng ? ".png" : ".jpg";
    fs::create_directories(upload_dir());
    rdf::write_atomically(upload_dir() / (n + ext), bytes);
    draft.triples.insert(Triple{iri, Iri(rdf::vocab::kRdfType), Term(Iri(term("Upload")))});
    draft.triples.insert(Triple{iri, Iri(term("contentType")), Term(rdf::Literal(content_type))});
    draft.triples.insert(Triple{iri, Iri(rdf::vocab::kRdfsLabel), Term(rdf::Literal(n + ext))});
    if (target) draft.triples.insert(Triple{*target, Iri(rdf::vocab::kFoafDepiction), Term(iri)});
    dataset_.ensure_graph(graph).insert_all(draft.triples);
    commit_locked(draft, {graph});
    return iri;
  }

  /// Replaces the content of a named graph (used by import) and persists it.
  void import_graph(const Iri& name, const std::set<Triple>& triples) {
    std::unique_lock lock(mutex_);
    rdf::Graph& g = dataset_.ensure_graph(name);
    g.insert_all(triples);
    rescan_counters_locked();
    persist_locked({name}, name == ontology_graph());
  }

 private:
  struct Account {
    User user;
    PasswordRecord password;
  };

  /// Pending mutation: new triples, fresh IRIs and key-map additions.
  struct Draft {
    explicit Draft(App& app) : app(app), keymap(app.keymap_), counters(app.counters_) {}

    Iri mint(const std::string& collection) {
      Iri iri(app.config_.base_url + "/" + collection + "/" + std::to_string(++counters[collection]));
      fresh.insert(iri);
      if (const CollectionSpec* spec = app.config_.find_collection(collection); spec && spec->class_iri)
        triples.insert(Triple{iri, Iri(rdf::vocab::kRdfType), Term(Iri(*spec->class_iri))});
      return iri;
    }

    void convert(const Json& body, const Iri& subject, const std::optional<std::string>& collection) {
      converter::ConvertOptions options;
      options.subject = subject;
      options.expand_identified_nested = false;
      options.registered = &registered;
      if (collection) options.mint = [this, c = *collection] { return mint(c); };
      try {
        triples.merge(converter::json_to_rdf(body, keymap, app.config_.base_url, options));
      } catch (const converter::ConversionError& e) {
        throw HttpError(400, std::string(e.what()) + (e.pointer().empty() ? "" : " at " + e.pointer()));
      }
    }

    App& app;
    converter::KeyMap keymap;
    std::map<std::string, std::uint64_t> counters;
    std::set<Triple> triples;
    std::set<Iri> fresh;
    std::vector<Iri> registered;
  };

  void startup() {
    fs::create_directories(config_.data_dir);
    dataset_ = rdf::load_dataset(config_.data_dir);
    dataset_.ensure_graph(ontology_graph());
    dataset_.ensure_graph(shared_graph());
    dataset_.set_prefix("ont", config_.ontology_namespace());
    dataset_.set_prefix("foaf", std::string(rdf::vocab::kFoaf));
    rdf::Graph& ontology = dataset_.graph(ontology_graph());
    if (!config_.ontology_file.empty()) {
      rdf::PrefixMap declared;
      try {
        ontology.insert_all(rdf::parse_turtle(rdf::read_file(config_.ontology_file), config_.ontology_namespace(), &declared));
      } catch (const rdf::ParseError& e) {
        throw ConfigError(config_.ontology_file.string() + ": " + e.what());
      } catch (const rdf::StoreError& e) {
        throw ConfigError(e.what());
      }
      for (const auto& [p, ns] : declared)
        if (!p.empty() && !dataset_.prefixes().contains(p)) dataset_.set_prefix(p, ns);
    }
    add_system_terms(ontology);
    keymap_ = converter::build_keymap(ontology, dataset_.prefixes(), config_.ontology_namespace());
    load_templates();
    load_accounts();
    load_counters();
    rdf::save_prefixes(dataset_, config_.data_dir);
    rdf::save_graph(dataset_, ontology_graph(), config_.data_dir);
    rdf::save_graph(dataset_, shared_graph(), config_.data_dir);
    save_counters_locked();
  }

  void add_system_terms(rdf::Graph& ontology) {
    const Iri type(rdf::vocab::kRdfType), label(rdf::vocab::kRdfsLabel);
    auto declare = [&](const std::string& iri, const std::string& kind, const std::string& name) {
      Iri s(iri);
      if (!ontology.match(TriplePattern{s, type, std::nullopt}).empty()) return;
      ontology.insert(Triple{s, type, Term(Iri(kind))});
      if (ontology.match(TriplePattern{s, label, std::nullopt}).empty())
        ontology.insert(Triple{s, label, Term(rdf::Literal(name))});
    };
    declare(term("User"), rdf::vocab::kRdfsClass, "User");
    declare(term("Upload"), rdf::vocab::kRdfsClass, "Upload");
    declare(term("username"), rdf::vocab::kRdfProperty, "username");
    declare(term("passwordHash"), rdf::vocab::kRdfProperty, "passwordHash");
    declare(term("salt"), rdf::vocab::kRdfProperty, "salt");
    declare(term("contentType"), rdf::vocab::kRdfProperty, "contentType");
    declare(rdf::vocab::kFoafDepiction, rdf::vocab::kRdfProperty, "depiction");
    for (const auto& c : config_.collections)
      if (c.class_iri) declare(*c.class_iri, rdf::vocab::kRdfsClass, converter::localname(*c.class_iri));
  }

  void load_templates() {
    std::map<std::string, std::string> sources = default_templates();
    fs::path dir = config_.app_dir / "templates";
    if (fs::is_directory(dir))
      for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".tpl")
          sources[entry.path().filename().string()] = rdf::read_file(entry.path());
    for (const auto& [name, source] : sources) {
      try {
        templates_.insert_or_assign(name, tpl::parse_template(source, name));
      } catch (const tpl::TemplateError& e) {
        throw ConfigError("template " + name + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) +
                          ": " + e.message());
      }
    }
    for (const auto& c : config_.collections)
      if (c.template_name && !templates_.contains(normalize_template_name(*c.template_name)))
        throw ConfigError("collection '" + c.path + "' names missing template " + *c.template_name);
  }

  void load_accounts() {
    const Iri type(rdf::vocab::kRdfType), user_class(term("User"));
    for (const auto& [name, graph] : dataset_.graphs()) {
      if (!name.str().starts_with(user_graph_prefix())) continue;
      for (const Triple& t : graph.match(TriplePattern{std::nullopt, type, Term(user_class)})) {
        auto literal = [&](const char* local) -> std::optional<std::string> {
          auto m = graph.match(TriplePattern{t.subject, Iri(term(local)), std::nullopt});
          if (m.empty() || !m.front().object.is_literal()) return std::nullopt;
          return m.front().object.as_literal().lexical();
        };
        auto username = literal("username"), hash = literal("passwordHash"), salt = literal("salt");
        if (!username || !hash || !salt) continue;
        accounts_.emplace(*username, Account{User{t.subject, *username, name}, PasswordRecord{*hash, *salt}});
      }
    }
  }

  fs::path counters_file() const { return config_.data_dir / "counters.json"; }

  void load_counters() {
    if (fs::exists(counters_file())) {
      try {
        auto j = Json::parse(rdf::read_file(counters_file()));
        for (auto& [k, v] : j.items())
          if (v.is_number_unsigned() || v.is_number_integer()) counters_[k] = v.get<std::uint64_t>();
      } catch (const Json::exception& e) {
        throw ConfigError("counters.json: " + std::string(e.what()));
      }
    }
    rescan_counters_locked();
  }

  /// Raises each counter to at least the largest id found in stored IRIs.
  void rescan_counters_locked() {
    auto bump = [&](const std::string& iri) {
      if (!iri.starts_with(config_.base_url + "/")) return;
      std::string_view rest = std::string_view(iri).substr(config_.base_url.size() + 1);
      if (auto hash = rest.find('#'); hash != std::string_view::npos) rest = rest.substr(0, hash);
      auto slash = rest.find('/');
      if (slash == std::string_view::npos) return;
      std::string seg(rest.substr(0, slash));
      if (seg == "graph") {
        std::string_view tail = rest.substr(slash + 1);
        if (!tail.starts_with("user/")) return;
        seg = "user";
        rest = tail;
        slash = 4;
      }
      auto id = parse_integer(rest.substr(slash + 1));
      if (id && *id > 0 && rest.substr(slash + 1).find_first_not_of("0123456789") == std::string_view::npos) {
        auto& c = counters_[seg];
        c = std::max<std::uint64_t>(c, static_cast<std::uint64_t>(*id));
      }
    };
    for (const auto& [name, graph] : dataset_.graphs()) {
      bump(name.str());
      for (const Triple& t : graph) {
        bump(t.subject.str());
        bump(t.predicate.str());
        if (t.object.is_iri()) bump(t.object.as_iri().str());
      }
    }
  }

  void save_counters_locked() const {
    Json j = Json::object();
    for (const auto& [k, v] : counters_) j[k] = v;
    rdf::write_atomically(counters_file(), j.dump(2) + "\n");
  }

  void persist_locked(const std::set<Iri>& graphs, bool prefixes) {
    for (const Iri& g : graphs)
      if (dataset_.has_graph(g)) rdf::save_graph(dataset_, g, config_.data_dir);
    if (prefixes) rdf::save_prefixes(dataset_, config_.data_dir);
    save_counters_locked();
  }

  /// Applies key-map registrations and counters of `draft`, then persists.
  void commit_locked(Draft& draft, std::set<Iri> changed) {
    if (!draft.registered.empty()) {
      rdf::Graph& ontology = dataset_.graph(ontology_graph());
      for (const Iri& p : draft.registered) {
        ontology.insert(Triple{p, Iri(rdf::vocab::kRdfType), Term(Iri(rdf::vocab::kRdfProperty))});
        ontology.insert(Triple{p, Iri(rdf::vocab::kRdfsLabel), Term(rdf::Literal(draft.keymap.key_for(p)))});
      }
      changed.insert(ontology_graph());
    }
    keymap_ = std::move(draft.keymap);
    counters_ = std::move(draft.counters);
    persist_locked(changed, false);
  }

  std::vector<Iri> instance_graph_names_locked() const {
    std::vector<Iri> out;
    for (const auto& [name, _] : dataset_.graphs())
      if (is_instance_graph(name)) out.push_back(name);
    return out;
  }

  std::vector<const rdf::Graph*> graph_ptrs_locked(const std::vector<Iri>& names) const {
    std::vector<const rdf::Graph*> out;
    for (const Iri& n : names)
      if (dataset_.has_graph(n)) out.push_back(&dataset_.graph(n));
    return out;
  }

  static bool has_subject(const rdf::Graph& g, const Iri& iri) {
    return !g.match(TriplePattern{iri, std::nullopt, std::nullopt}).empty();
  }
  static bool has_object(const rdf::Graph& g, const Iri& iri) {
    return !g.match(TriplePattern{std::nullopt, std::nullopt, Term(iri)}).empty();
  }

  static bool mentioned_locked(const std::vector<const rdf::Graph*>& graphs, const Iri& iri) {
    for (const rdf::Graph* g : graphs)
      if (has_subject(*g, iri) || has_object(*g, iri)) return true;
    return false;
  }

  static std::set<Triple> reachable_locked(const std::vector<const rdf::Graph*>& graphs, const std::vector<Iri>& roots,
                                           int depth) {
    std::set<Triple> out;
    std::set<Iri> seen(roots.begin(), roots.end());
    std::vector<Iri> frontier = roots;
    for (int level = 0; level <= depth && !frontier.empty(); ++level) {
      std::vector<Iri> next;
      for (const Iri& node : frontier) {
        for (const Triple& t : rdf::match_union(graphs, TriplePattern{node, std::nullopt, std::nullopt})) {
          out.insert(t);
          if (t.object.is_iri() && seen.insert(t.object.as_iri()).second) next.push_back(t.object.as_iri());
        }
      }
      frontier = std::move(next);
    }
    return out;
  }

  /// Graph receiving writes for `iri`: a writable graph holding its description,
  /// else one holding links to it. 403 when it lives only in graphs `user` cannot write.
  Iri locate_locked(const Iri& iri, const User& user) const {
    auto writable = writable_graph_names(user);
    auto instances = instance_graph_names_locked();
    for (const Iri& g : writable)
      if (dataset_.has_graph(g) && has_subject(dataset_.graph(g), iri)) return g;
    for (const Iri& g : instances)
      if (has_subject(dataset_.graph(g), iri)) throw HttpError(403, "resource is not writable for this user");
    for (const Iri& g : writable)
      if (dataset_.has_graph(g) && has_object(dataset_.graph(g), iri)) return g;
    for (const Iri& g : instances)
      if (has_object(dataset_.graph(g), iri)) throw HttpError(403, "resource is not writable for this user");
    throw HttpError(404, "no resource at " + path_of(iri));
  }

  /// Collection segment of `/<c>/<n>` IRIs, used to mint nested objects.
  std::optional<std::string> collection_of(const Iri& iri) const {
    std::string path = path_of(iri);
    if (!path.starts_with("/")) return std::nullopt;
    auto slash = path.find('/', 1);
    if (slash == std::string::npos) return std::nullopt;
    std::string seg = path.substr(1, slash - 1);
    if (!config_.find_collection(seg)) return std::nullopt;
    return seg;
  }

  /// Rejects app IRIs that readers of `graph` could not resolve after the write.
  void check_links_locked(const Draft& draft, const Iri& graph) const {
    std::vector<Iri> readers = graph == shared_graph() ? std::vector<Iri>{shared_graph(), ontology_graph()}
                                                       : std::vector<Iri>{graph, shared_graph(), ontology_graph()};
    auto reader_graphs = graph_ptrs_locked(readers);
    const rdf::Graph& ontology = dataset_.graph(ontology_graph());
    std::set<Iri> registered(draft.registered.begin(), draft.registered.end());
    for (const Triple& t : draft.triples) {
      if (is_app_iri(t.predicate.str()) && !registered.contains(t.predicate) && !has_subject(ontology, t.predicate))
        throw HttpError(400, "predicate " + path_of(t.predicate) + " is not an ontology term");
      if (!t.object.is_iri()) continue;
      const Iri& o = t.object.as_iri();
      if (!is_app_iri(o.str()) || draft.fresh.contains(o)) continue;
      std::string p = path_of(o);
      if (p.empty() || p == "/") continue;
      if (!mentioned_locked(reader_graphs, o)) throw HttpError(400, "link target " + p + " does not exist");
    }
  }

  static const PasswordRecord& dummy_record() {
    static const PasswordRecord record = hash_password("dummy-password");
    return record;
  }

  AppConfig config_;
  SessionStore sessions_;
  mutable std::shared_mutex mutex_;
  rdf::Dataset dataset_;
  converter::KeyMap keymap_;
  std::map<std::string, std::uint64_t> counters_;
  std::map<std::string, Account> accounts_;
  std::map<std::string, tpl::Template> templates_;
  std::map<std::string, std::shared_ptr<LinkedDataResource>> handlers_;
};

// ---- responses -------------------------------------------------------------

inline Json user_model(const App& app, const Principal& user) {
  if (!user) return nullptr;
  return Json{{"username", user->username}, {"path", app.path_of(user->uri)}};
}

inline Response json_response(int status, const OrderedJson& body) {
  Response r;
  r.status = status;
  r.headers["Content-Type"] = std::string(content_type(Format::kJson));
  r.body = converter::dump_canonical(body);
  return r;
}

inline Response turtle_response(int status, std::string body) {
  Response r;
  r.status = status;
  r.headers["Content-Type"] = std::string(content_type(Format::kTurtle));
  r.body = std::move(body);
  return r;
}

inline Response html_response(const App& app, int status, const std::string& template_name, Json model,
                              const Principal& user) {
  if (!model.contains("user")) model["user"] = user_model(app, user);
  Response r;
  r.status = status;
  r.headers["Content-Type"] = std::string(content_type(Format::kHtml));
  r.body = app.render(template_name, model);
  return r;
}

inline Response redirect(std::string location, int status = 303) {
  Response r;
  r.status = status;
  r.headers["Location"] = std::move(location);
  return r;
}

inline std::string_view status_text(int status) {
  switch (status) {
    case 400: return "Bad Request";
    case 401: return "Unauthorized";
    case 403: return "Forbidden";
    case 404: return "Not Found";
    case 405: return "Method Not Allowed";
    case 406: return "Not Acceptable";
    case 409: return "Conflict";
    case 413: return "Payload Too Large";
    case 415: return "Unsupported Media Type";
    case 500: return "Internal Server Error";
    default: return "Error";
  }
}

/// Error in the negotiated format; json when none was negotiated.
inline Response error_response(const App& app, std::optional<Format> format, int status, const std::string& message,
                               const Principal& user = std::nullopt) {
  OrderedJson body;
  body["status"] = status;
  body["message"] = message;
  if (!format || *format == Format::kJson) return json_response(status, body);
  if (*format == Format::kTurtle) {
    std::string text = "# " + std::to_string(status) + " " + message;
    for (char& c : text)
      if (c == '\n' || c == '\r') c = ' ';
    return turtle_response(status, text + "\n");
  }
  try {
    return html_response(app, status, "error.tpl", Json{{"status", status}, {"message", message}}, user);
  } catch (const std::exception&) {
    return json_response(status, body);
  }
}

inline Response App::handle(const Request& request) {
  std::optional<Format> format = negotiate(request.header("Accept"));
  auto prefix = match_handler(request.path);
  if (!prefix) return error_response(*this, format ? format : std::optional<Format>(Format::kJson), 404, "not found");
  const auto& resource = handlers_.at(*prefix);
  if (!format && resource->requires_format())
    return error_response(*this, std::nullopt, 406, "none of text/html, text/turtle, application/json is acceptable");
  Principal user;
  if (auto cookie = request.header("Cookie"))
    if (auto token = cookie_value(*cookie, kSessionCookie)) user = user_for_token(*token);
  Context ctx{*this, request, format, user, *prefix, request.path.substr(prefix->size())};
  try {
    return resource->handle(ctx);
  } catch (const HttpError& e) {
    Response r = error_response(*this, format, e.status(), e.what(), user);
    if (e.status() == 405 && !r.headers.contains("Allow")) r.headers["Allow"] = "GET";
    return r;
  } catch (const std::exception& e) {
    return error_response(*this, format, 500, e.what(), user);
  }
}

}  // namespace ldaf::server

#endif  // LDAF_SERVER_APP_HPP
