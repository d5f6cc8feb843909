#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dagic/error.hpp"
#include "dagic/ontology.hpp"
#include "dagic/text.hpp"

namespace dagic::obo {

struct Relationship {
  std::string type;
  std::string target;

  friend bool operator==(const Relationship&, const Relationship&) = default;
};

/// One [Term] stanza. Only the tags that shape the graph are kept.
struct OboTerm {
  std::string id;
  std::string name;
  std::string ns;
  std::vector<std::string> is_a;
  std::vector<Relationship> relationships;
  bool obsolete = false;

  friend bool operator==(const OboTerm&, const OboTerm&) = default;
};

namespace detail {

// Drops a trailing "! comment"; "\!" is an escaped bang.
inline std::string_view strip_comment(std::string_view value) {
  for (std::size_t i = 0; i < value.size(); ++i) {
    if (value[i] == '\\') {
      ++i;
    } else if (value[i] == '!') {
      return text::trim(value.substr(0, i));
    }
  }
  return text::trim(value);
}

}  // namespace detail

/// Parses OBO 1.2 stanza text. [Typedef] and other non-Term stanzas are
/// skipped, unknown tags ignored.
inline std::vector<OboTerm> parse_obo(std::istream& in) {
  std::vector<OboTerm> terms;
  std::unordered_map<std::string, std::size_t> seen;

  enum class Section { Header, Term, Other } section = Section::Header;
  std::optional<OboTerm> current;
  std::size_t stanza_line = 0;
  bool have_id = false;

  const auto finish = [&] {
    if (!current) return;
    if (!have_id)
      throw Error(ErrorCode::MalformedStanza, "[Term] stanza without an id tag", stanza_line);
    terms.push_back(std::move(*current));
    current.reset();
  };

  std::string line;
  std::size_t lineno = 0;
  while (text::read_line(in, line)) {
    ++lineno;
    if (!text::valid_utf8(line))
      throw Error(ErrorCode::InvalidEncoding, "invalid UTF-8 byte sequence", lineno);
    const std::string_view l = text::trim(line);
    if (l.empty() || l.front() == '!') continue;

    if (l.front() == '[') {
      if (l.back() != ']') throw Error(ErrorCode::MalformedStanza, "unterminated stanza header", lineno);
      finish();
      const std::string_view kind = text::trim(l.substr(1, l.size() - 2));
      if (kind == "Term") {
        section = Section::Term;
        current.emplace();
        stanza_line = lineno;
        have_id = false;
      } else {
        section = Section::Other;
      }
      continue;
    }
    if (section == Section::Other) continue;

    const auto colon = l.find(':');
    if (colon == std::string_view::npos || colon == 0)
      throw Error(ErrorCode::MalformedStanza, "expected 'tag: value', got '" + std::string(l) + "'", lineno);
    if (section == Section::Header) continue;

    const std::string_view tag = text::trim(l.substr(0, colon));
    const std::string_view value = text::trim(l.substr(colon + 1));
    OboTerm& term = *current;

    if (tag == "id") {
      if (have_id) throw Error(ErrorCode::MalformedStanza, "second id tag in one stanza", lineno);
      const std::string_view id = detail::strip_comment(value);
      if (id.empty()) throw Error(ErrorCode::MalformedStanza, "empty id", lineno);
      term.id = std::string(id);
      have_id = true;
      if (!seen.emplace(term.id, lineno).second)
        throw Error(ErrorCode::DuplicateTermId, "term '" + term.id + "' defined again", lineno);
    } else if (tag == "name") {
      term.name = std::string(value);
    } else if (tag == "namespace") {
      term.ns = std::string(detail::strip_comment(value));
    } else if (tag == "is_a") {
      const auto toks = text::tokens(detail::strip_comment(value));
      if (toks.empty()) throw Error(ErrorCode::MalformedStanza, "is_a without a target", lineno);
      term.is_a.emplace_back(toks.front());
    } else if (tag == "relationship") {
      const auto toks = text::tokens(detail::strip_comment(value));
      if (toks.size() < 2)
        throw Error(ErrorCode::MalformedStanza, "relationship needs a type and a target", lineno);
      term.relationships.push_back({std::string(toks[0]), std::string(toks[1])});
    } else if (tag == "is_obsolete") {
      const std::string_view flag = detail::strip_comment(value);
      if (flag == "true") {
        term.obsolete = true;
      } else if (flag == "false") {
        term.obsolete = false;
      } else {
        throw Error(ErrorCode::MalformedStanza, "is_obsolete must be true or false", lineno);
      }
    }
  }
  finish();
  return terms;
}

inline std::vector<OboTerm> parse_obo_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open OBO file " + path.string());
  return parse_obo(in);
}

/// Debug serializer; emits only the tags parse_obo keeps.
inline void emit_obo(std::ostream& out, std::span<const OboTerm> terms) {
  out << "format-version: 1.2\n";
  for (const OboTerm& t : terms) {
    out << "\n[Term]\nid: " << t.id << '\n';
    if (!t.name.empty()) out << "name: " << t.name << '\n';
    if (!t.ns.empty()) out << "namespace: " << t.ns << '\n';
    for (const auto& p : t.is_a) out << "is_a: " << p << '\n';
    for (const auto& r : t.relationships) out << "relationship: " << r.type << ' ' << r.target << '\n';
    if (t.obsolete) out << "is_obsolete: true\n";
  }
}

/// Input for build_ontology, plus the number of edges dropped because their
/// parent did not survive filtering.
struct GraphInput {
  std::vector<std::string> terms;
  std::vector<Edge> edges;
  std::size_t dropped_edges = 0;
};

/// Drops obsolete and out-of-namespace terms. is_a edges are always kept;
/// relationship edges only when their type is listed in `relations`.
inline GraphInput to_graph(std::span<const OboTerm> terms, const std::optional<std::string>& ns,
                           const std::set<std::string>& relations) {
  GraphInput g;
  std::unordered_set<std::string_view> kept;
  for (const OboTerm& t : terms) {
    if (t.obsolete) continue;
    if (ns && t.ns != *ns) continue;
    kept.insert(t.id);
    g.terms.push_back(t.id);
  }
  if (g.terms.empty())
    throw Error(ErrorCode::EmptyAfterFilter,
                ns ? "no terms left in namespace '" + *ns + "'" : std::string("no non-obsolete terms"));

  const auto add = [&](const std::string& child, const std::string& parent) {
    if (kept.contains(parent)) {
      g.edges.push_back({child, parent});
    } else {
      ++g.dropped_edges;
    }
  };
  for (const OboTerm& t : terms) {
    if (!kept.contains(t.id)) continue;
    for (const auto& p : t.is_a) add(t.id, p);
    for (const auto& r : t.relationships)
      if (r.type != "is_a" && relations.contains(r.type)) add(t.id, r.target);
  }
  return g;
}

}  // namespace dagic::obo
