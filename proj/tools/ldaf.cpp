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

#include <termios.h>
#include <unistd.h>

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ldaf/server.hpp"

namespace {

namespace fs = std::filesystem;
using namespace ldaf;

const char* const kStarterOntology = R"ttl(@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .
@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
@prefix : <> .

:Person a rdfs:Class ;
  rdfs:label "Person" .

:knows a rdf:Property ;
  rdfs:label "knows" ;
  rdfs:domain :Person ;
  rdfs:range :Person .
)ttl";

server::HttpServer* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

/// Reads one line from stdin with terminal echo disabled when stdin is a tty.
std::string read_secret(const std::string& prompt) {
  bool tty = isatty(STDIN_FILENO);
  termios saved{};
  if (tty) {
    std::cerr << prompt << std::flush;
    tcgetattr(STDIN_FILENO, &saved);
    termios quiet = saved;
    quiet.c_lflag &= ~static_cast<tcflag_t>(ECHO);
    tcsetattr(STDIN_FILENO, TCSANOW, &quiet);
  }
  std::string line;
  std::getline(std::cin, line);
  if (tty) {
    tcsetattr(STDIN_FILENO, TCSANOW, &saved);
    std::cerr << "\n";
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

/// Accepts a full graph IRI or a path such as `/graph/shared` below the base URL.
rdf::Iri graph_name(const server::App& app, const std::string& text) {
  if (rdf::is_absolute_iri(text)) return rdf::Iri(text);
  return app.iri_for_path(text.starts_with('/') ? text : "/" + text);
}

int serve(const fs::path& config_file, const std::string& host) {
  auto app = server::make_app(server::load_config(config_file));
  server::HttpServer http(*app);
  int port = http.bind(host, app->config().port);
  g_server = &http;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cerr << "serving " << app->config().base_url << " on " << host << ":" << port << "\n";
  http.listen();
  g_server = nullptr;
  return 0;
}

int init(const fs::path& dir, const std::string& base_url, int port) {
  if (fs::exists(dir / "config.json")) {
    std::cerr << "error: " << (dir / "config.json").string() << " already exists\n";
    return 1;
  }
  for (const char* sub : {"data", "templates", "uploads", "webui"}) fs::create_directories(dir / sub);
  server::AppConfig config;
  config.base_url = base_url;
  config.port = port;
  config.collections.push_back({"person", base_url + "/ontology/Person", std::nullopt});
  server::validate(config);
  nlohmann::json j = server::config_to_json(config);
  j["data_dir"] = "data";
  j["ontology_file"] = "ontology.ttl";
  j["app_dir"] = ".";
  std::ofstream(dir / "config.json") << j.dump(2) << "\n";
  if (!fs::exists(dir / "ontology.ttl")) std::ofstream(dir / "ontology.ttl") << kStarterOntology;
  for (const auto& [name, source] : server::default_templates())
    if (!fs::exists(dir / "templates" / name)) std::ofstream(dir / "templates" / name) << source;
  std::cout << "initialized " << dir.string() << "\n";
  return 0;
}

int import(const fs::path& config_file, const std::string& graph, const fs::path& file) {
  auto app = server::make_app(server::load_config(config_file));
  rdf::Iri name = graph_name(*app, graph);
  auto triples = rdf::parse_turtle(rdf::read_file(file), name.str());
  app->import_graph(name, triples);
  std::cout << "imported " << triples.size() << " triples into " << name.str() << "\n";
  return 0;
}

int export_graph(const fs::path& config_file, const std::string& graph, const fs::path& file) {
  auto app = server::make_app(server::load_config(config_file));
  rdf::Iri name = graph_name(*app, graph);
  auto d = app->dataset_snapshot();
  if (!d.has_graph(name)) {
    std::cerr << "error: no graph " << name.str() << "\n";
    return 1;
  }
  std::string text = rdf::serialize_turtle(d.graph(name), d.prefixes());
  if (file.empty() || file == "-") std::cout << text;
  else rdf::write_atomically(file, text);
  return 0;
}

int adduser(const fs::path& config_file, const std::string& username) {
  auto app = server::make_app(server::load_config(config_file));
  std::string password = read_secret("password for " + username + ": ");
  if (isatty(STDIN_FILENO) && read_secret("repeat password: ") != password) {
    std::cerr << "error: passwords differ\n";
    return 1;
  }
  server::User user = app->register_user(username, password);
  std::cout << "created " << user.uri.str() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Linked data application server"};
  cli.require_subcommand(1);
  fs::path config_file = "config.json";
  std::string host = "0.0.0.0", graph, username, base_url = "http://localhost:8080";
  fs::path file, dir;
  int port = 8080;

  auto* serve_cmd = cli.add_subcommand("serve", "Run the HTTP server");
  serve_cmd->add_option("--config", config_file, "Configuration file")->check(CLI::ExistingFile);
  serve_cmd->add_option("--host", host, "Interface to bind");

  auto* init_cmd = cli.add_subcommand("init", "Scaffold a new application directory");
  init_cmd->add_option("dir", dir, "Target directory")->required();
  init_cmd->add_option("--base-url", base_url, "Base URL of minted resources");
  init_cmd->add_option("--port", port, "Listening port")->check(CLI::Range(1, 65535));

  auto* import_cmd = cli.add_subcommand("import", "Load a Turtle file into a named graph");
  auto* export_cmd = cli.add_subcommand("export", "Write a named graph as Turtle");
  for (auto* cmd : {import_cmd, export_cmd}) {
    cmd->add_option("--config", config_file, "Configuration file")->check(CLI::ExistingFile);
    cmd->add_option("--graph", graph, "Graph IRI, or a path such as /graph/shared")->required();
  }
  import_cmd->add_option("--file", file, "Turtle input")->required()->check(CLI::ExistingFile);
  export_cmd->add_option("--file", file, "Turtle output, '-' for stdout");

  auto* adduser_cmd = cli.add_subcommand("adduser", "Create an account; the password is read from stdin");
  adduser_cmd->add_option("--config", config_file, "Configuration file")->check(CLI::ExistingFile);
  adduser_cmd->add_option("--username", username, "Account name")->required();

  CLI11_PARSE(cli, argc, argv);
  try {
    if (*serve_cmd) return serve(config_file, host);
    if (*init_cmd) return init(dir, base_url, port);
    if (*import_cmd) return import(config_file, graph, file);
    if (*export_cmd) return export_graph(config_file, graph, file);
    if (*adduser_cmd) return adduser(config_file, username);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 1;
}
