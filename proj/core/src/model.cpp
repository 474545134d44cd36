#include "skoskit/model.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "skoskit/text.hpp"

namespace skoskit {

// ---------------------------------------------------------------------------
// Value types

bool TermId::is_valid(std::string_view value) {
  if (value.empty() || !text::is_valid_utf8(value)) return false;
  return std::none_of(value.begin(), value.end(), [](char c) {
    const auto u = static_cast<unsigned char>(c);
    return u < 0x20 || u == 0x7F;
  });
}

TermId::TermId(std::string value) : value_(std::move(value)) {
  if (!is_valid(value_)) throw std::invalid_argument("invalid term id: '" + value_ + "'");
}

bool LanguageTag::is_valid(std::string_view code) {
  // language *( "-" subtag ), each 1..8 alphanumerics, primary subtag alphabetic.
  if (code.empty()) return false;
  std::size_t start = 0;
  bool primary = true;
  while (true) {
    const auto dash = code.find('-', start);
    const auto part = code.substr(start, dash == std::string_view::npos ? std::string_view::npos : dash - start);
    if (part.empty() || part.size() > 8) return false;
    for (char c : part) {
      const bool alpha = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
      const bool digit = c >= '0' && c <= '9';
      if (!(alpha || (!primary && digit))) return false;
    }
    if (dash == std::string_view::npos) return true;
    primary = false;
    start = dash + 1;
  }
}

LanguageTag::LanguageTag(std::string_view code) {
  if (!is_valid(code)) throw std::invalid_argument("invalid language tag: '" + std::string(code) + "'");
  code_.reserve(code.size());
  for (char c : code) code_.push_back((c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c);
}

const char* to_code(TermKind kind) {
  switch (kind) {
    case TermKind::Descriptor: return "D";
    case TermKind::NonDescriptor: return "ND";
    case TermKind::AlternativeNonDescriptor: return "AD";
  }
  return "?";
}

std::optional<TermKind> parse_term_kind(std::string_view code) {
  if (code == "D") return TermKind::Descriptor;
  if (code == "ND") return TermKind::NonDescriptor;
  if (code == "AD") return TermKind::AlternativeNonDescriptor;
  return std::nullopt;
}

const char* to_code(SemanticKind kind) {
  switch (kind) {
    case SemanticKind::Broader: return "BT";
    case SemanticKind::Narrower: return "NT";
    case SemanticKind::Related: return "RT";
  }
  return "?";
}

const std::string* Term::label(const LanguageTag& lang) const {
  auto it = labels.find(lang);
  return it == labels.end() ? nullptr : &it->second;
}

std::set<LanguageTag> default_languages() { return {LanguageTag("de"), LanguageTag("en"), LanguageTag("fr")}; }

LanguageTag default_pivot() { return LanguageTag("de"); }

// ---------------------------------------------------------------------------
// Validation

namespace {

class Validator {
 public:
  Validator(const ThesaurusParts& parts, const AssemblyOptions& options) : parts_(parts), options_(options) {}

  std::vector<Violation> run() {
    check_languages();
    index_terms();
    check_terms();
    check_classification();
    check_assignments();
    check_semantic();
    check_equivalences();
    check_compounds();
    check_non_preferred_multiplicity();
    check_broader_cycles();
    std::stable_sort(out_.begin(), out_.end(), [](const Violation& a, const Violation& b) {
      return std::tie(a.where.kind, a.where.index, a.code) < std::tie(b.where.kind, b.where.index, b.code);
    });
    return std::move(out_);
  }

 private:
  void error(std::string code, std::string message, PartRef where) {
    out_.push_back({Severity::Error, std::move(code), std::move(message), where});
  }
  void warning(std::string code, std::string message, PartRef where) {
    out_.push_back({Severity::Warning, std::move(code), std::move(message), where});
  }

  const Term* term(const TermId& id) const {
    auto it = term_index_.find(id.str());
    return it == term_index_.end() ? nullptr : &parts_.terms[it->second];
  }

  void check_languages() {
    if (!parts_.languages.contains(parts_.pivot)) {
      error("PIVOT_UNDECLARED", "pivot language '" + parts_.pivot.str() + "' is not a declared language", {});
    }
  }

  void index_terms() {
    for (std::size_t i = 0; i < parts_.terms.size(); ++i) {
      const auto& t = parts_.terms[i];
      if (!term_index_.emplace(t.id.str(), i).second) {
        error("DUPLICATE_ID", "term '" + t.id.str() + "' declared more than once", {PartKind::Term, i});
      }
    }
  }

  void check_terms() {
    for (std::size_t i = 0; i < parts_.terms.size(); ++i) {
      const auto& t = parts_.terms[i];
      const PartRef at{PartKind::Term, i};
      if (!t.labels.contains(parts_.pivot)) {
        error("MISSING_PIVOT_LABEL", "term '" + t.id.str() + "' has no '" + parts_.pivot.str() + "' label", at);
      }
      for (const auto& [lang, label] : t.labels) {
        if (!parts_.languages.contains(lang)) {
          error("UNKNOWN_LANG", "term '" + t.id.str() + "' has a label in undeclared language '" + lang.str() + "'",
                at);
        }
        if (label.empty()) error("EMPTY_LABEL", "term '" + t.id.str() + "' has an empty label", at);
      }
      for (const auto& code : t.classification_codes) {
        codes_[t.id.str()].insert(code);
      }
    }
  }

  void check_classification() {
    for (std::size_t i = 0; i < parts_.classification.size(); ++i) {
      const auto& n = parts_.classification[i];
      if (!notation_index_.emplace(n.notation, i).second) {
        error("DUPLICATE_ID", "notation '" + n.notation + "' declared more than once", {PartKind::Classification, i});
      }
    }
    for (std::size_t i = 0; i < parts_.classification.size(); ++i) {
      const auto& n = parts_.classification[i];
      const PartRef at{PartKind::Classification, i};
      if (n.notation.empty()) error("BAD_VALUE", "empty notation", at);
      if (!n.labels.contains(parts_.pivot)) {
        error("MISSING_PIVOT_LABEL", "notation '" + n.notation + "' has no '" + parts_.pivot.str() + "' label", at);
      }
      for (const auto& [lang, label] : n.labels) {
        if (!parts_.languages.contains(lang)) {
          error("UNKNOWN_LANG", "notation '" + n.notation + "' has a label in undeclared language '" + lang.str() + "'",
                at);
        }
      }
      if (n.parent && !notation_index_.contains(*n.parent)) {
        error("UNKNOWN_NOTATION", "notation '" + n.notation + "' has unknown parent '" + *n.parent + "'", at);
      }
    }
    // Each node has at most one parent, so every cycle is a simple loop of parent links.
    enum class Mark { Unvisited, Active, Done };
    std::vector<Mark> mark(parts_.classification.size(), Mark::Unvisited);
    for (std::size_t start = 0; start < parts_.classification.size(); ++start) {
      std::vector<std::size_t> chain;
      std::size_t cur = start;
      while (mark[cur] == Mark::Unvisited) {
        mark[cur] = Mark::Active;
        chain.push_back(cur);
        const auto& parent = parts_.classification[cur].parent;
        if (!parent) break;
        auto it = notation_index_.find(*parent);
        if (it == notation_index_.end()) break;
        cur = it->second;
        if (mark[cur] == Mark::Active) {
          auto pos = std::find(chain.begin(), chain.end(), cur);
          std::string path;
          std::size_t first = *pos;
          for (auto p = pos; p != chain.end(); ++p) {
            path += parts_.classification[*p].notation + " -> ";
            first = std::min(first, *p);
          }
          path += parts_.classification[cur].notation;
          error("CLASSIFICATION_CYCLE", "classification parent cycle: " + path, {PartKind::Classification, first});
          break;
        }
      }
      for (auto c : chain) mark[c] = Mark::Done;
    }
  }

  void check_assignments() {
    for (std::size_t i = 0; i < parts_.assignments.size(); ++i) {
      const auto& a = parts_.assignments[i];
      const PartRef at{PartKind::Assignment, i};
      const Term* t = term(a.term);
      if (!t) {
        error("DANGLING_TERM", "classification assignment references unknown term '" + a.term.str() + "'", at);
        continue;
      }
      codes_[t->id.str()].insert(a.notation);
      if (!notation_index_.contains(a.notation)) {
        error("UNKNOWN_NOTATION", "term '" + a.term.str() + "' assigned to unknown notation '" + a.notation + "'", at);
      }
      if (is_non_preferred(t->kind)) {
        error("CLASSIFICATION_ON_NONPREF", "non-preferred term '" + a.term.str() + "' carries a classification", at);
      }
    }
    for (std::size_t i = 0; i < parts_.terms.size(); ++i) {
      const auto& t = parts_.terms[i];
      const PartRef at{PartKind::Term, i};
      const auto it = codes_.find(t.id.str());
      const bool has_codes = it != codes_.end() && !it->second.empty();
      for (const auto& code : t.classification_codes) {
        if (!notation_index_.contains(code)) {
          error("UNKNOWN_NOTATION", "term '" + t.id.str() + "' assigned to unknown notation '" + code + "'", at);
        }
      }
      if (!t.classification_codes.empty() && is_non_preferred(t.kind)) {
        error("CLASSIFICATION_ON_NONPREF", "non-preferred term '" + t.id.str() + "' carries a classification", at);
      }
      if (options_.require_classification && t.kind == TermKind::Descriptor && !has_codes) {
        error("CLASSIFICATION_MISSING", "descriptor '" + t.id.str() + "' has no classification notation", at);
      }
    }
  }

  void check_semantic() {
    for (std::size_t i = 0; i < parts_.semantic.size(); ++i) {
      const auto& r = parts_.semantic[i];
      const PartRef at{PartKind::Semantic, i};
      const std::string what = std::string(to_code(r.kind)) + " '" + r.source.str() + "' -> '" + r.target.str() + "'";
      const Term* s = term(r.source);
      const Term* t = term(r.target);
      if (!s || !t) {
        error("DANGLING_TERM", what + " references an unknown term", at);
        continue;
      }
      if (r.source == r.target) {
        error("SELF_RELATION", what + " relates a term to itself", at);
        continue;
      }
      if (s->kind != TermKind::Descriptor || t->kind != TermKind::Descriptor) {
        error("RELATION_KIND", what + " must connect two descriptors", at);
        continue;
      }
      valid_semantic_.push_back(i);
    }
  }

  void check_equivalences() {
    std::set<EquivalenceRelation> seen;
    for (std::size_t i = 0; i < parts_.equivalences.size(); ++i) {
      const auto& r = parts_.equivalences[i];
      const PartRef at{PartKind::Equivalence, i};
      const std::string what = "USE '" + r.non_preferred.str() + "' -> '" + r.preferred.str() + "'";
      if (seen.insert(r).second) relation_count_[r.non_preferred.str()]++;
      const Term* np = term(r.non_preferred);
      const Term* p = term(r.preferred);
      if (!np || !p) {
        error("DANGLING_TERM", what + " references an unknown term", at);
        continue;
      }
      if (!is_non_preferred(np->kind) || p->kind != TermKind::Descriptor) {
        error("EQUIVALENCE_KIND", what + " must lead from a non-preferred term to a descriptor", at);
      }
    }
  }

  void check_compounds() {
    std::set<std::string> groups;
    for (std::size_t i = 0; i < parts_.compounds.size(); ++i) {
      const auto& c = parts_.compounds[i];
      const PartRef at{PartKind::Compound, i};
      const std::string what = "USE_COMB group '" + c.group_key + "' of '" + c.non_preferred.str() + "'";
      if (c.group_key.empty()) error("BAD_VALUE", what + " has an empty group key", at);
      if (!groups.insert(c.group_key).second) {
        error("DUPLICATE_ID", what + " reuses a group key", at);
        continue;
      }
      relation_count_[c.non_preferred.str()]++;
      if (c.components.size() < 2) {
        error("COMPOUND_ARITY", what + " needs at least two components", at);
        continue;
      }
      bool dangling = !term(c.non_preferred);
      for (const auto& comp : c.components) dangling = dangling || !term(comp);
      if (dangling) {
        error("DANGLING_TERM", what + " references an unknown term", at);
        continue;
      }
      std::set<TermId> distinct(c.components.begin(), c.components.end());
      if (distinct.size() != c.components.size()) {
        error("COMPOUND_DUPLICATE_COMPONENT", what + " lists a component twice", at);
        continue;
      }
      const bool kinds_ok = is_non_preferred(term(c.non_preferred)->kind) &&
                            std::all_of(c.components.begin(), c.components.end(), [&](const TermId& id) {
                              return term(id)->kind == TermKind::Descriptor;
                            });
      if (!kinds_ok) {
        error("COMPOUND_KIND", what + " must lead from a non-preferred term to descriptors", at);
      }
    }
  }

  void check_non_preferred_multiplicity() {
    for (std::size_t i = 0; i < parts_.terms.size(); ++i) {
      const auto& t = parts_.terms[i];
      if (!is_non_preferred(t.kind)) continue;
      const PartRef at{PartKind::Term, i};
      const auto it = relation_count_.find(t.id.str());
      const std::size_t n = it == relation_count_.end() ? 0 : it->second;
      if (n == 0) {
        error("NONPREF_WITHOUT_EQUIVALENCE", "non-preferred term '" + t.id.str() + "' has no USE or USE_COMB relation",
              at);
      } else if (t.kind == TermKind::NonDescriptor && n >= 2) {
        error("NONPREF_MULTIPLE_RELATIONS",
              "non-descriptor '" + t.id.str() + "' has " + std::to_string(n) + " USE/USE_COMB relations", at);
        warning("AD_FLAG_MISMATCH", "non-descriptor '" + t.id.str() + "' has multiple redirections; is it an AD term?",
                at);
      } else if (t.kind == TermKind::AlternativeNonDescriptor && n == 1) {
        error("AD_TOO_FEW_RELATIONS", "AD term '" + t.id.str() + "' has a single redirection", at);
        warning("AD_FLAG_MISMATCH", "AD term '" + t.id.str() + "' has a single redirection; is it a plain ND term?",
                at);
      }
    }
  }

  void check_broader_cycles() {
    // Edges child -> parent over the validated relations (BT a b: a -> b; NT a b: b -> a).
    std::map<std::string, std::vector<std::pair<std::string, std::size_t>>> edges;
    std::set<std::string> nodes;
    for (auto i : valid_semantic_) {
      const auto& r = parts_.semantic[i];
      if (r.kind == SemanticKind::Related) continue;
      const auto& child = r.kind == SemanticKind::Broader ? r.source.str() : r.target.str();
      const auto& parent = r.kind == SemanticKind::Broader ? r.target.str() : r.source.str();
      edges[child].emplace_back(parent, i);
      nodes.insert(child);
      nodes.insert(parent);
    }
    for (auto& [_, out] : edges) std::sort(out.begin(), out.end());

    // Tarjan's strongly connected components; every component with more than
    // one node contains at least one cycle and is reported once.
    std::map<std::string, int> index, low;
    std::set<std::string> on_stack;
    std::vector<std::string> stack;
    int counter = 0;
    std::vector<std::vector<std::string>> components;

    std::function<void(const std::string&)> strongconnect = [&](const std::string& v) {
      index[v] = low[v] = counter++;
      stack.push_back(v);
      on_stack.insert(v);
      if (auto it = edges.find(v); it != edges.end()) {
        for (const auto& [w, _] : it->second) {
          if (!index.contains(w)) {
            strongconnect(w);
            low[v] = std::min(low[v], low[w]);
          } else if (on_stack.contains(w)) {
            low[v] = std::min(low[v], index[w]);
          }
        }
      }
      if (low[v] == index[v]) {
        std::vector<std::string> comp;
        std::string w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack.erase(w);
          comp.push_back(w);
        } while (w != v);
        if (comp.size() > 1) components.push_back(std::move(comp));
      }
    };
    for (const auto& v : nodes) {
      if (!index.contains(v)) strongconnect(v);
    }

    for (auto& comp : components) {
      std::set<std::string> members(comp.begin(), comp.end());
      // Walk inside the component from its smallest node until a node repeats.
      std::vector<std::string> path{*members.begin()};
      std::size_t first_relation = parts_.semantic.size();
      std::map<std::string, std::size_t> pos{{path.front(), 0}};
      while (true) {
        const auto& out = edges[path.back()];
        auto next = std::find_if(out.begin(), out.end(), [&](const auto& e) { return members.contains(e.first); });
        first_relation = std::min(first_relation, next->second);
        if (auto seen = pos.find(next->first); seen != pos.end()) {
          path.erase(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(seen->second));
          path.push_back(next->first);
          break;
        }
        pos[next->first] = path.size();
        path.push_back(next->first);
      }
      for (const auto& [child, out] : edges) {
        if (!members.contains(child)) continue;
        for (const auto& [parent, rel] : out) {
          if (members.contains(parent)) first_relation = std::min(first_relation, rel);
        }
      }
      std::string listing;
      for (std::size_t i = 0; i < path.size(); ++i) listing += (i ? " -> " : "") + path[i];
      error("BROADER_CYCLE", "broader cycle: " + listing, {PartKind::Semantic, first_relation});
    }
  }

  const ThesaurusParts& parts_;
  const AssemblyOptions& options_;
  std::vector<Violation> out_;
  std::unordered_map<std::string, std::size_t> term_index_;
  std::unordered_map<std::string, std::size_t> notation_index_;
  std::unordered_map<std::string, std::set<std::string>> codes_;
  std::unordered_map<std::string, std::size_t> relation_count_;
  std::vector<std::size_t> valid_semantic_;
};

}  // namespace

std::vector<Violation> validate(const ThesaurusParts& parts, const AssemblyOptions& options) {
  return Validator(parts, options).run();
}

std::size_t AssemblyResult::error_count() const {
  return static_cast<std::size_t>(std::count_if(violations.begin(), violations.end(),
                                                [](const Violation& v) { return v.severity == Severity::Error; }));
}

std::set<SemanticRelation> close_semantic_relations(const std::set<SemanticRelation>& relations) {
  std::set<SemanticRelation> closed = relations;
  for (const auto& r : relations) {
    switch (r.kind) {
      case SemanticKind::Broader: closed.insert({r.target, SemanticKind::Narrower, r.source}); break;
      case SemanticKind::Narrower: closed.insert({r.target, SemanticKind::Broader, r.source}); break;
      case SemanticKind::Related: closed.insert({r.target, SemanticKind::Related, r.source}); break;
    }
  }
  return closed;
}

// ---------------------------------------------------------------------------
// Thesaurus

Thesaurus::Thesaurus() : languages_(default_languages()), pivot_(default_pivot()) {}

const Term* Thesaurus::find(const TermId& id) const {
  auto it = terms_.find(id);
  return it == terms_.end() ? nullptr : &it->second;
}

std::vector<const EquivalenceRelation*> Thesaurus::equivalences_of(const TermId& non_preferred) const {
  std::vector<const EquivalenceRelation*> out;
  if (auto it = equivalences_by_term_.find(non_preferred); it != equivalences_by_term_.end()) {
    for (const auto& preferred : it->second) out.push_back(&*equivalences_.find({non_preferred, preferred}));
  }
  return out;
}

std::vector<const CompoundEquivalenceRelation*> Thesaurus::compounds_of(const TermId& non_preferred) const {
  std::vector<const CompoundEquivalenceRelation*> out;
  if (auto it = compounds_by_term_.find(non_preferred); it != compounds_by_term_.end()) {
    for (const auto& key : it->second) out.push_back(&compounds_.at(key));
  }
  return out;
}

bool operator==(const Thesaurus& a, const Thesaurus& b) {
  return a.languages_ == b.languages_ && a.pivot_ == b.pivot_ && a.terms_ == b.terms_ && a.semantic_ == b.semantic_ &&
         a.equivalences_ == b.equivalences_ && a.compounds_ == b.compounds_ && a.classification_ == b.classification_;
}

AssemblyResult assemble(ThesaurusParts parts, const AssemblyOptions& options) {
  AssemblyResult result;
  result.violations = validate(parts, options);
  if (result.error_count() > 0) return result;

  Thesaurus t;
  t.languages_ = std::move(parts.languages);
  t.pivot_ = std::move(parts.pivot);
  for (auto& term : parts.terms) {
    auto id = term.id;
    t.terms_.emplace(std::move(id), std::move(term));
  }
  for (auto& a : parts.assignments) t.terms_.at(a.term).classification_codes.insert(std::move(a.notation));
  t.semantic_ = close_semantic_relations(std::set<SemanticRelation>(parts.semantic.begin(), parts.semantic.end()));
  t.equivalences_.insert(parts.equivalences.begin(), parts.equivalences.end());
  for (const auto& e : t.equivalences_) t.equivalences_by_term_[e.non_preferred].push_back(e.preferred);
  for (auto& c : parts.compounds) {
    t.compounds_by_term_[c.non_preferred].push_back(c.group_key);
    auto key = c.group_key;
    t.compounds_.emplace(std::move(key), std::move(c));
  }
  for (auto& list : t.compounds_by_term_) std::sort(list.second.begin(), list.second.end());
  for (auto& n : parts.classification) {
    auto key = n.notation;
    t.classification_.emplace(std::move(key), std::move(n));
  }
  result.thesaurus = std::move(t);
  return result;
}

ThesaurusParts to_parts(const Thesaurus& t) {
  ThesaurusParts parts;
  parts.languages = t.languages();
  parts.pivot = t.pivot();
  for (const auto& [id, term] : t.terms()) {
    Term copy = term;
    for (const auto& code : copy.classification_codes) parts.assignments.push_back({id, code});
    copy.classification_codes.clear();
    parts.terms.push_back(std::move(copy));
  }
  parts.semantic.assign(t.semantic_relations().begin(), t.semantic_relations().end());
  parts.equivalences.assign(t.equivalences().begin(), t.equivalences().end());
  for (const auto& [_, c] : t.compounds()) parts.compounds.push_back(c);
  for (const auto& [_, n] : t.classification()) parts.classification.push_back(n);
  return parts;
}

std::vector<std::string> invariant_breaches(const Thesaurus& t) {
  std::vector<std::string> out;
  for (const auto& v : validate(to_parts(t), AssemblyOptions{.require_classification = false})) {
    if (v.severity == Severity::Error) out.push_back(v.code + ": " + v.message);
  }
  if (close_semantic_relations(t.semantic_relations()) != t.semantic_relations()) {
    out.emplace_back("CLOSURE: semantic relations are not inverse-closed");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Stats

StatsReport stats(const Thesaurus& t) {
  StatsReport r;
  for (const auto& [_, term] : t.terms()) {
    switch (term.kind) {
      case TermKind::Descriptor: ++r.descriptors; break;
      case TermKind::NonDescriptor: ++r.non_descriptors; break;
      case TermKind::AlternativeNonDescriptor: ++r.ad_terms; break;
    }
    r.labels += term.labels.size();
    r.classification_assignments += term.classification_codes.size();
  }
  for (const auto& rel : t.semantic_relations()) {
    switch (rel.kind) {
      case SemanticKind::Broader: ++r.broader; break;
      case SemanticKind::Narrower: ++r.narrower; break;
      case SemanticKind::Related: ++r.related; break;
    }
  }
  r.equivalences = t.equivalences().size();
  r.compounds = t.compounds().size();
  for (const auto& [_, c] : t.compounds()) r.compound_components += c.components.size();
  r.classification_nodes = t.classification().size();
  r.languages = t.languages().size();
  return r;
}

namespace {

std::vector<std::pair<const char*, std::size_t>> stats_fields(const StatsReport& r) {
  return {{"descriptors", r.descriptors},
          {"non_descriptors", r.non_descriptors},
          {"ad_terms", r.ad_terms},
          {"labels", r.labels},
          {"broader", r.broader},
          {"narrower", r.narrower},
          {"related", r.related},
          {"equivalences", r.equivalences},
          {"compounds", r.compounds},
          {"compound_components", r.compound_components},
          {"classification_nodes", r.classification_nodes},
          {"classification_assignments", r.classification_assignments},
          {"languages", r.languages}};
}

}  // namespace

std::string StatsReport::to_text() const {
  std::ostringstream os;
  for (const auto& [name, value] : stats_fields(*this)) os << name << '\t' << value << '\n';
  return os.str();
}

std::string StatsReport::to_json() const {
  nlohmann::ordered_json doc;
  for (const auto& [name, value] : stats_fields(*this)) doc[name] = value;
  return doc.dump() + "\n";
}

}  // namespace skoskit
