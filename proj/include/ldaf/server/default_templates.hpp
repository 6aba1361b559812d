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

#ifndef LDAF_SERVER_DEFAULT_TEMPLATES_HPP
#define LDAF_SERVER_DEFAULT_TEMPLATES_HPP

#include <map>
#include <string>

namespace ldaf::server {

// Page chrome shared by the built-in templates.
#define LDAF_TPL_HEAD(TITLE)                                                                              \
  "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n<title>" TITLE "</title>\n"                \
  "<style>body{font-family:sans-serif;max-width:60em;margin:1em auto}td,th{padding:2px 8px;text-align:left;" \
  "vertical-align:top}.error{color:#a00}</style>\n</head>\n<body>\n<nav><a href=\"/\">home</a> | "         \
  "<a href=\"/ontology\">ontology</a> | <a href=\"/search\">search</a> | <a href=\"/sparql\">sparql</a> | " \
  "{% if user %}{{ user.username }} <form style=\"display:inline\" method=\"post\" action=\"/logout\">"     \
  "<button>logout</button></form>{% else %}<a href=\"/login\">login</a> | "                              \
  "<a href=\"/register\">register</a>{% endif %}</nav>\n"
#define LDAF_TPL_FOOT "</body>\n</html>\n"

/// Built-in templates keyed by file name; `<app_dir>/templates/<name>` overrides each.
inline const std::map<std::string, std::string>& default_templates() {
  static const std::map<std::string, std::string> templates = {
      {"index.tpl", LDAF_TPL_HEAD("{{ title }}") R"tpl(<h1>{{ title }}</h1>
<ul>
{% for c in collections %}<li><a href="{{ c.path }}">{{ c.name }}</a></li>
{% endfor %}</ul>
)tpl" LDAF_TPL_FOOT},
      {"resource.tpl", LDAF_TPL_HEAD("{{ title }}") R"tpl(<h1>{{ title }}</h1>
<p><a href="{{ resource.path }}">{{ resource.uri }}</a></p>
<table>
{% for p in properties %}<tr><th>{{ p.key }}</th><td>{% for v in p.values %}{% if v.href %}<a href="{{ v.href }}">{{ v.text }}</a>{% else %}{{ v.text }}{% endif %}{% if v.note %} <small>{{ v.note }}</small>{% endif %}<br>
{% endfor %}</td></tr>
{% endfor %}</table>
{% if incoming %}<h2>Referenced by</h2>
<table>
{% for p in incoming %}<tr><th>{{ p.key }}</th><td>{% for r in p.refs %}<a href="{{ r.path }}">{{ r.localname }}</a><br>
{% endfor %}</td></tr>
{% endfor %}</table>
{% endif %}{% if depictions %}<h2>Depictions</h2>
{% for d in depictions %}<img src="{{ d.path }}" alt="{{ d.localname }}" style="max-width:20em">
{% endfor %}{% endif %}{% if user %}<form method="post" action="/upload?target={{ resource.path }}" enctype="multipart/form-data">
<input type="file" name="file" accept="image/png,image/jpeg"> <button>upload depiction</button>
</form>
{% endif %})tpl" LDAF_TPL_FOOT},
      {"collection.tpl", LDAF_TPL_HEAD("{{ title }}") R"tpl(<h1>{{ title }}</h1>
<p>{{ total }} total, page {{ page }}</p>
<ul>
{% for item in items %}<li><a href="{{ item.path }}">{{ item.title }}</a></li>
{% endfor %}</ul>
<p>{% if prev %}<a href="{{ prev }}">previous</a> {% endif %}{% if next %}<a href="{{ next }}">next</a>{% endif %}</p>
{% if user %}<form method="post" action="{{ collection.path }}">
<input name="label" placeholder="label"> <button>create</button>
</form>
{% endif %})tpl" LDAF_TPL_FOOT},
      {"login.tpl", LDAF_TPL_HEAD("Login") R"tpl(<h1>Login</h1>
{% if message %}<p class="error">{{ message }}</p>
{% endif %}<form method="post" action="/login">
<input name="username" placeholder="username" value="{{ username }}">
<input name="password" type="password" placeholder="password">
<button>login</button>
</form>
)tpl" LDAF_TPL_FOOT},
      {"register.tpl", LDAF_TPL_HEAD("Register") R"tpl(<h1>Register</h1>
{% if message %}<p class="error">{{ message }}</p>
{% endif %}<form method="post" action="/register">
<input name="username" placeholder="username" value="{{ username }}">
<input name="password" type="password" placeholder="password (8 or more characters)">
<button>register</button>
</form>
)tpl" LDAF_TPL_FOOT},
      {"search.tpl", LDAF_TPL_HEAD("Search") R"tpl(<h1>Search</h1>
<form method="get" action="/search"><input name="q" value="{{ q }}"> <button>search</button></form>
{% if q %}<ul>
{% for h in hits %}<li><a href="{{ h.path }}">{{ h.label }}</a></li>
{% endfor %}</ul>
{% endif %})tpl" LDAF_TPL_FOOT},
      {"sparql.tpl", LDAF_TPL_HEAD("SPARQL") R"tpl(<h1>SPARQL</h1>
<form method="post" action="/sparql">
<textarea name="query" rows="8" cols="80">{{ query }}</textarea><br>
<button>run</button>
</form>
{% if query %}<table>
<tr>{% for v in vars %}<th>{{ v }}</th>{% endfor %}</tr>
{% for row in rows %}<tr>{% for c in row.cells %}<td>{% if c.href %}<a href="{{ c.href }}">{{ c.text }}</a>{% else %}{{ c.text }}{% endif %}</td>{% endfor %}</tr>
{% endfor %}</table>
{% endif %})tpl" LDAF_TPL_FOOT},
      {"error.tpl", LDAF_TPL_HEAD("{{ status }}") R"tpl(<h1>{{ status }}</h1>
<p class="error">{{ message }}</p>
)tpl" LDAF_TPL_FOOT},
  };
  return templates;
}

#undef LDAF_TPL_HEAD
#undef LDAF_TPL_FOOT

}  // namespace ldaf::server

#endif  // LDAF_SERVER_DEFAULT_TEMPLATES_HPP
