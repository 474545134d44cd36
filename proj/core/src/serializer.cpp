#include "skoskit/serializer.hpp"

#include <algorithm>
#include <map>
#include <vector>

#include "skoskit/model.hpp"
#include "skoskit/text.hpp"

namespace skoskit::serial {

using rdf::Iri;
using rdf::Literal;

// ---------------------------------------------------------------------------
// Writing

namespace {

void append_escaped_literal(std::string& out, std::string_view s) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      default:
        if (c < 0x20 || c == 0x7F) {
          out += "\\u00";
          out.push_back(kHex[c >> 4]);
          out.push_back(kHex[c & 0xF]);
        } else {
          out.push_back(static_cast<char>(c));
        }
    }
  }
}

void append_iri(std::string& out, const Iri& iri) {
  out.push_back('<');
  out += iri.str();
  out.push_back('>');
}

void append_literal(std::string& out, const Literal& lit) {
  out.push_back('"');
  append_escaped_literal(out, lit.lexical());
  out.push_back('"');
  if (!lit.language().empty()) {
    out.push_back('@');
    out += lit.language();
  } else if (lit.datatype()) {
    out += "^^";
    append_iri(out, *lit.datatype());
  }
}

void append_term(std::string& out, const rdf::Object& o) {
  if (const auto* iri = std::get_if<Iri>(&o)) {
    append_iri(out, *iri);
  } else {
    append_literal(out, std::get<Literal>(o));
  }
}

}  // namespace

std::string ntriples_term(const rdf::Object& term) {
  std::string out;
  append_term(out, term);
  return out;
}

std::string ntriples_line(const rdf::Triple& t) {
  std::string out;
  append_iri(out, t.subject);
  out.push_back(' ');
  append_iri(out, t.predicate);
  out.push_back(' ');
  append_term(out, t.object);
  out += " .";
  return out;
}

std::string to_ntriples(const rdf::Graph& graph) {
  std::vector<std::string> lines;
  lines.reserve(graph.size());
  std::size_t total = 0;
  for (const auto& t : graph.triples()) {
    lines.push_back(ntriples_line(t));
    total += lines.back().size() + 1;
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  out.reserve(total);
  for (const auto& l : lines) {
    out += l;
    out.push_back('\n');
  }
  return out;
}

namespace {

bool is_plain_local(std::string_view s) {
  if (s.empty()) return false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
                    (c == '-' && i > 0);
    if (!ok) return false;
  }
  return true;
}

class TurtleWriter {
 public:
  explicit TurtleWriter(const rdf::NamespaceTable& prefixes) : prefixes_(prefixes) {}

  std::string run(const rdf::Graph& graph) {
    const Iri rdf_type = rdf::term(rdf::ns::rdf, "type");
    // subject NT form -> predicate sort key -> object NT form
    std::map<std::string, std::pair<const Iri*, std::map<std::string, std::pair<const Iri*, std::vector<const rdf::Object*>>>>>
        by_subject;
    for (const auto& t : graph.triples()) {
      auto& subject = by_subject[ntriples_term(t.subject)];
      subject.first = &t.subject;
      // rdf:type sorts first.
      const std::string key = (t.predicate == rdf_type ? std::string(1, '\0') : std::string()) + ntriples_term(t.predicate);
      auto& pred = subject.second[key];
      pred.first = &t.predicate;
      pred.second.push_back(&t.object);
    }

    std::string body;
    for (const auto& [_, subject] : by_subject) {
      body += name(*subject.first);
      bool first_pred = true;
      for (const auto& [key, pred] : subject.second) {
        body += first_pred ? "\n    " : " ;\n    ";
        first_pred = false;
        body += (key[0] == '\0') ? std::string("a") : name(*pred.first);
        std::vector<std::pair<std::string, std::string>> objects;
        for (const auto* o : pred.second) objects.emplace_back(ntriples_term(*o), object(*o));
        std::sort(objects.begin(), objects.end());
        for (std::size_t i = 0; i < objects.size(); ++i) {
          body += i ? ",\n        " : " ";
          body += objects[i].second;
        }
      }
      body += " .\n\n";
    }

    std::string out;
    for (const auto& prefix : used_) {
      out += "@prefix " + prefix + ": <" + prefixes_.at(prefix).str() + "> .\n";
    }
    if (!used_.empty() && !body.empty()) out += '\n';
    out += body;
    return out;
  }

 private:
  std::string name(const Iri& iri) {
    const std::string& s = iri.str();
    const std::string* best = nullptr;
    std::size_t best_len = 0;
    for (const auto& [prefix, ns] : prefixes_) {
      const auto& n = ns.str();
      if (n.size() > best_len && s.size() > n.size() && s.compare(0, n.size(), n) == 0 &&
          is_plain_local(std::string_view(s).substr(n.size()))) {
        best = &prefix;
        best_len = n.size();
      }
    }
    if (!best) return "<" + s + ">";
    used_.insert(*best);
    return *best + ":" + s.substr(best_len);
  }

  std::string object(const rdf::Object& o) {
    if (const auto* iri = std::get_if<Iri>(&o)) return name(*iri);
    const auto& lit = std::get<Literal>(o);
    std::string out = "\"";
    append_escaped_literal(out, lit.lexical());
    out += '"';
    if (!lit.language().empty()) {
      out += "@" + lit.language();
    } else if (lit.datatype()) {
      out += "^^" + name(*lit.datatype());
    }
    return out;
  }

  const rdf::NamespaceTable& prefixes_;
  std::set<std::string> used_;
};

}  // namespace

std::string to_turtle(const rdf::Graph& graph, const rdf::NamespaceTable& prefixes) {
  return TurtleWriter(prefixes).run(graph);
}

std::string emit(const rdf::Graph& graph, const SerializationConfig& config) {
  if (config.format == Format::NTriplesCanonical) return to_ntriples(graph);
  return to_turtle(graph, config.prefixes ? *config.prefixes : graph.namespaces());
}

// ---------------------------------------------------------------------------
// Reading

namespace {

class Cursor {
 public:
  Cursor(std::string_view input, std::size_t first_line) : s_(input), line_(first_line) {}

  bool done() const { return pos_ >= s_.size(); }
  char peek(std::size_t ahead = 0) const { return pos_ + ahead < s_.size() ? s_[pos_ + ahead] : '\0'; }
  char get() {
    const char c = s_[pos_++];
    if (c == '\n') ++line_;
    return c;
  }
  bool consume(std::string_view token) {
    if (s_.substr(pos_, token.size()) != token) return false;
    for (std::size_t i = 0; i < token.size(); ++i) get();
    return true;
  }
  std::size_t line() const { return line_; }

  [[noreturn]] void fail(const std::string& reason) const { throw ParseError(line_, reason); }

  void expect(char c) {
    if (done() || peek() != c) fail(std::string("expected '") + c + "'");
    get();
  }

  /// Skips spaces and tabs (and newlines plus comments when `multiline`).
  void skip_ws(bool multiline) {
    while (!done()) {
      const char c = peek();
      if (c == ' ' || c == '\t' || (multiline && (c == '\n' || c == '\r'))) {
        get();
      } else if (c == '#' && multiline) {
        while (!done() && peek() != '\n') get();
      } else {
        return;
      }
    }
  }

  char32_t hex(int digits) {
    char32_t v = 0;
    for (int i = 0; i < digits; ++i) {
      if (done()) fail("truncated \\u escape");
      const char c = get();
      v <<= 4;
      if (c >= '0' && c <= '9') v |= static_cast<char32_t>(c - '0');
      else if (c >= 'a' && c <= 'f') v |= static_cast<char32_t>(c - 'a' + 10);
      else if (c >= 'A' && c <= 'F') v |= static_cast<char32_t>(c - 'A' + 10);
      else fail("bad hex digit in escape");
    }
    return v;
  }

  std::string uchar(char kind) {
    const char32_t cp = hex(kind == 'u' ? 4 : 8);
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) fail("escape is not a Unicode scalar value");
    return text::to_utf8(std::u32string(1, cp));
  }

  Iri iriref() {
    expect('<');
    std::string value;
    while (true) {
      if (done() || peek() == '\n') fail("unterminated IRI");
      const char c = get();
      if (c == '>') break;
      if (c == '\\') {
        const char k = done() ? '\0' : get();
        if (k != 'u' && k != 'U') fail("only \\u and \\U escapes are allowed in IRIs");
        value += uchar(k);
      } else {
        value.push_back(c);
      }
    }
    if (!Iri::is_valid(value)) fail("not an absolute IRI: <" + value + ">");
    return Iri(std::move(value));
  }

  std::string quoted() {
    expect('"');
    std::string value;
    while (true) {
      if (done() || peek() == '\n' || peek() == '\r') fail("unterminated string literal");
      const char c = get();
      if (c == '"') break;
      if (c != '\\') {
        value.push_back(c);
        continue;
      }
      if (done()) fail("dangling backslash");
      switch (const char k = get()) {
        case 't': value.push_back('\t'); break;
        case 'b': value.push_back('\b'); break;
        case 'n': value.push_back('\n'); break;
        case 'r': value.push_back('\r'); break;
        case 'f': value.push_back('\f'); break;
        case '"': value.push_back('"'); break;
        case '\'': value.push_back('\''); break;
        case '\\': value.push_back('\\'); break;
        case 'u':
        case 'U': value += uchar(k); break;
        default: fail(std::string("unknown escape \\") + k);
      }
    }
    if (!text::is_valid_utf8(value)) fail("literal is not valid UTF-8");
    return value;
  }

  std::string langtag() {
    expect('@');
    std::string tag;
    while (!done()) {
      const char c = peek();
      if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-') {
        tag.push_back(get());
      } else {
        break;
      }
    }
    if (!LanguageTag::is_valid(tag)) fail("bad language tag '@" + tag + "'");
    return tag;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_;
};

rdf::Object nt_object(Cursor& c) {
  if (c.peek() == '<') return c.iriref();
  if (c.peek() == '_') c.fail("blank nodes are not supported");
  if (c.peek() != '"') c.fail("expected IRI or literal");
  std::string lexical = c.quoted();
  if (c.peek() == '@') return Literal(std::move(lexical), c.langtag());
  if (c.consume("^^")) return Literal(std::move(lexical), c.iriref());
  return Literal(std::move(lexical));
}

}  // namespace

rdf::Graph parse_ntriples(std::string_view input) {
  rdf::Graph g;
  std::size_t line_no = 0;
  while (!input.empty()) {
    const auto nl = input.find('\n');
    std::string_view line = input.substr(0, nl);
    input.remove_prefix(nl == std::string_view::npos ? input.size() : nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    Cursor c(line, line_no);
    c.skip_ws(false);
    if (c.done() || c.peek() == '#') continue;
    if (c.peek() == '_') c.fail("blank nodes are not supported");
    Iri subject = c.iriref();
    c.skip_ws(false);
    Iri predicate = c.iriref();
    c.skip_ws(false);
    rdf::Object object = nt_object(c);
    c.skip_ws(false);
    if (c.done() || c.peek() != '.') c.fail("missing terminating '.'");
    c.get();
    c.skip_ws(false);
    if (!c.done() && c.peek() != '#') c.fail("unexpected content after '.'");
    g.insert({std::move(subject), std::move(predicate), std::move(object)});
  }
  return g;
}

namespace {

class TurtleReader {
 public:
  explicit TurtleReader(std::string_view input) : c_(input, 1) {}

  rdf::Graph run() {
    while (true) {
      c_.skip_ws(true);
      if (c_.done()) break;
      if (c_.consume("@prefix")) {
        prefix_directive(true);
      } else if (c_.consume("PREFIX")) {
        prefix_directive(false);
      } else {
        statement();
      }
    }
    return std::move(g_);
  }

 private:
  void prefix_directive(bool at_form) {
    c_.skip_ws(true);
    std::string prefix;
    while (!c_.done() && c_.peek() != ':') prefix.push_back(c_.get());
    c_.expect(':');
    c_.skip_ws(true);
    Iri ns = c_.iriref();
    if (at_form) {
      c_.skip_ws(true);
      c_.expect('.');
    }
    g_.bind(prefix, ns);
  }

  Iri iri() {
    if (c_.peek() == '<') return c_.iriref();
    std::string prefix;
    while (!c_.done() && c_.peek() != ':') {
      const char ch = c_.peek();
      if (ch == ' ' || ch == '\n' || ch == '\t' || ch == ';' || ch == ',' || ch == '"') c_.fail("expected IRI");
      prefix.push_back(c_.get());
    }
    c_.expect(':');
    std::string local;
    while (!c_.done()) {
      const char ch = c_.peek();
      const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') || ch == '_' ||
                      ch == '-';
      if (!ok) break;
      local.push_back(c_.get());
    }
    auto it = g_.namespaces().find(prefix);
    if (it == g_.namespaces().end()) c_.fail("undeclared prefix '" + prefix + ":'");
    return Iri(it->second.str() + local);
  }

  rdf::Object object() {
    if (c_.peek() == '"') {
      std::string lexical = c_.quoted();
      if (c_.peek() == '@') return Literal(std::move(lexical), c_.langtag());
      if (c_.consume("^^")) return Literal(std::move(lexical), iri());
      return Literal(std::move(lexical));
    }
    if (c_.peek() == '_' && c_.peek(1) == ':') c_.fail("blank nodes are not supported");
    return iri();
  }

  void statement() {
    Iri subject = iri();
    while (true) {
      c_.skip_ws(true);
      Iri predicate = (c_.peek() == 'a' && (c_.peek(1) == ' ' || c_.peek(1) == '\t' || c_.peek(1) == '\n'))
                          ? (c_.get(), rdf::term(rdf::ns::rdf, "type"))
                          : iri();
      while (true) {
        c_.skip_ws(true);
        g_.insert({subject, predicate, object()});
        c_.skip_ws(true);
        if (!c_.consume(",")) break;
      }
      if (c_.consume(";")) {
        c_.skip_ws(true);
        if (c_.peek() == '.') break;
        continue;
      }
      break;
    }
    c_.skip_ws(true);
    c_.expect('.');
  }

  Cursor c_;
  rdf::Graph g_;
};

}  // namespace

rdf::Graph parse_turtle(std::string_view input) { return TurtleReader(input).run(); }

}  // namespace skoskit::serial
