#include "lrp/conllu.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace lrp {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t pos = line.find('\t', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

bool parse_int_strict(const std::string& s, int& out) {
  if (s.empty() || s.size() > 9) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  out = 0;
  for (char c : s) out = out * 10 + (c - '0');
  return true;
}

std::string feat_key(const std::string& pair) {
  size_t eq = pair.find('=');
  return eq == std::string::npos ? pair : pair.substr(0, eq);
}

}  // namespace

std::vector<std::string> parse_feats(const std::string& field) {
  std::vector<std::string> feats;
  if (field.empty() || field == "_") return feats;
  size_t start = 0;
  while (true) {
    size_t pos = field.find('|', start);
    std::string pair =
        pos == std::string::npos ? field.substr(start) : field.substr(start, pos - start);
    if (!pair.empty()) feats.push_back(pair);
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  std::sort(feats.begin(), feats.end(), [](const std::string& a, const std::string& b) {
    std::string ka = feat_key(a), kb = feat_key(b);
    if (ka != kb) return ka < kb;
    return a < b;
  });
  return feats;
}

std::string feats_to_string(const std::vector<std::string>& feats) {
  if (feats.empty()) return "_";
  std::string out;
  for (size_t i = 0; i < feats.size(); ++i) {
    if (i) out += '|';
    out += feats[i];
  }
  return out;
}

std::string base_deprel(const std::string& deprel) {
  size_t pos = deprel.find(':');
  return pos == std::string::npos ? deprel : deprel.substr(0, pos);
}

bool ValidationResult::has(Violation v) const {
  return std::find(violations.begin(), violations.end(), v) != violations.end();
}

std::string ValidationResult::message() const {
  if (ok()) return "ok";
  std::string out;
  for (Violation v : violations) {
    if (!out.empty()) out += ", ";
    switch (v) {
      case Violation::GappedIds: out += "gapped or duplicate ids"; break;
      case Violation::RootCount: out += "zero or multiple roots"; break;
      case Violation::Cycle: out += "cycle"; break;
      case Violation::HeadOutOfRange: out += "head out of range"; break;
    }
  }
  return out;
}

ValidationResult validate_tree(const Sentence& s) {
  ValidationResult res;
  const auto& toks = s.tokens;
  size_t n = toks.size();

  bool ids_ok = true;
  for (size_t i = 0; i < n; ++i) {
    if (toks[i].id != static_cast<int>(i) + 1) {
      ids_ok = false;
      break;
    }
  }
  if (!ids_ok) res.violations.push_back(Violation::GappedIds);

  std::set<int> ids;
  for (const Token& t : toks) ids.insert(t.id);
  std::map<int, int> head_of;
  for (const Token& t : toks) head_of[t.id] = t.head;

  int roots = 0;
  bool out_of_range = false;
  for (const Token& t : toks) {
    if (t.head == 0) {
      ++roots;
    } else if (t.head < 0 || !ids.count(t.head)) {
      out_of_range = true;
    }
  }
  if (roots != 1) res.violations.push_back(Violation::RootCount);
  if (out_of_range) res.violations.push_back(Violation::HeadOutOfRange);

  // A node is sound if its head chain reaches 0 without revisiting a node.
  std::map<int, int> state;  // 0 unknown, 1 in progress, 2 reaches root, 3 broken
  bool cycle = false;
  for (const Token& t : toks) {
    std::vector<int> chain;
    int cur = t.id;
    while (true) {
      if (cur == 0) break;
      auto it = state.find(cur);
      if (it != state.end() && it->second >= 2) break;
      if (it != state.end() && it->second == 1) {
        cycle = true;
        break;
      }
      state[cur] = 1;
      chain.push_back(cur);
      auto h = head_of.find(cur);
      if (h == head_of.end() || (h->second != 0 && !ids.count(h->second))) {
        // broken link, not a cycle
        cur = -1;
        break;
      }
      cur = h->second;
    }
    int final_state = cycle ? 1 : (cur == -1 ? 3 : 2);
    for (int id : chain) state[id] = final_state == 1 ? 1 : final_state;
    if (cycle) break;
  }
  if (cycle) res.violations.push_back(Violation::Cycle);
  return res;
}

namespace {

struct RawSentence {
  Sentence sent;
  int first_line = 0;
  bool empty() const {
    return sent.comments.empty() && sent.tokens.empty() && sent.sidecars.empty();
  }
};

// Parses one word/range/empty-node line into the sentence. Throws ParseError.
void parse_line_into(const std::string& line, int line_no, Sentence& sent) {
  std::vector<std::string> cols = split_tabs(line);
  if (cols.size() != 10)
    throw ParseError(line_no, "expected 10 tab-separated columns, got " +
                                  std::to_string(cols.size()));
  const std::string& id_field = cols[0];
  size_t dash = id_field.find('-');
  size_t dot = id_field.find('.');
  if (dash != std::string::npos) {
    SidecarLine sc;
    sc.after_token = static_cast<int>(sent.tokens.size());
    sc.is_range = true;
    int a = 0, b = 0;
    if (!parse_int_strict(id_field.substr(0, dash), a) ||
        !parse_int_strict(id_field.substr(dash + 1), b))
      throw ParseError(line_no, "malformed multiword range id '" + id_field + "'");
    sc.range_start = a;
    sc.range_end = b;
    sc.form = cols[1];
    sc.raw = line;
    sent.sidecars.push_back(sc);
    return;
  }
  if (dot != std::string::npos) {
    SidecarLine sc;
    sc.after_token = static_cast<int>(sent.tokens.size());
    sc.raw = line;
    sent.sidecars.push_back(sc);
    return;
  }
  Token t;
  if (!parse_int_strict(id_field, t.id) || t.id < 1)
    throw ParseError(line_no, "non-integer or non-positive id '" + id_field + "'");
  t.form = cols[1];
  t.lemma = cols[2];
  t.upos = cols[3];
  t.xpos = cols[4];
  t.feats = parse_feats(cols[5]);
  if (!parse_int_strict(cols[6], t.head))
    throw ParseError(line_no, "non-integer head '" + cols[6] + "'");
  t.deprel = cols[7];
  t.deps = cols[8];
  t.misc = cols[9];
  sent.tokens.push_back(t);
}

void check_ids(const Sentence& sent, int sentence_index) {
  if (sent.tokens.empty())
    throw StructuralError(sentence_index, "sentence has no word tokens");
  for (size_t i = 0; i < sent.tokens.size(); ++i) {
    int expect = static_cast<int>(i) + 1;
    if (sent.tokens[i].id != expect)
      throw StructuralError(sentence_index,
                            "token ids not sequential: expected " + std::to_string(expect) +
                                ", found " + std::to_string(sent.tokens[i].id));
  }
}

template <class OnSentence, class OnError>
void scan_document(const std::string& text, OnSentence&& emit, OnError&& fail) {
  RawSentence cur;
  int line_no = 0;
  size_t start = 0;
  bool in_error = false;
  auto flush = [&]() {
    if (!cur.empty()) {
      if (!in_error) emit(cur);
      cur = RawSentence();
      in_error = false;
    }
  };
  while (start <= text.size()) {
    size_t pos = text.find('\n', start);
    std::string line =
        pos == std::string::npos ? text.substr(start) : text.substr(start, pos - start);
    ++line_no;
    if (line.empty()) {
      flush();
    } else if (line[0] == '#') {
      if (cur.empty()) cur.first_line = line_no;
      cur.sent.comments.push_back(line);
    } else {
      if (cur.empty()) cur.first_line = line_no;
      if (!in_error) {
        try {
          parse_line_into(line, line_no, cur.sent);
        } catch (const ParseError& e) {
          in_error = true;  // lenient mode: poison the sentence, keep scanning
          fail(e);
        }
      }
    }
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  flush();
}

}  // namespace

Treebank parse_document(const std::string& text, const std::string& name) {
  Treebank tb;
  tb.name = name;
  const ParseError* first = nullptr;
  ParseError stored(0, "");
  bool have_error = false;
  scan_document(
      text,
      [&](RawSentence& raw) { tb.sentences.push_back(std::move(raw.sent)); },
      [&](const ParseError& e) {
        if (!have_error) {
          stored = e;
          have_error = true;
        }
      });
  (void)first;
  if (have_error) throw stored;
  for (size_t i = 0; i < tb.sentences.size(); ++i) check_ids(tb.sentences[i], static_cast<int>(i));
  return tb;
}

LenientParseResult parse_document_lenient(const std::string& text, const std::string& name) {
  LenientParseResult res;
  res.treebank.name = name;
  int index = 0;
  scan_document(
      text,
      [&](RawSentence& raw) {
        try {
          check_ids(raw.sent, index);
          res.treebank.sentences.push_back(std::move(raw.sent));
          ++index;
        } catch (const StructuralError& e) {
          ++res.dropped;
          res.messages.push_back(e.what());
        }
      },
      [&](const ParseError& e) {
        ++res.dropped;
        res.messages.push_back(e.what());
      });
  return res;
}

std::string serialize_token(const Token& t) {
  auto field = [](const std::string& s) { return s.empty() ? std::string("_") : s; };
  std::ostringstream os;
  os << t.id << '\t' << field(t.form) << '\t' << field(t.lemma) << '\t' << field(t.upos) << '\t'
     << field(t.xpos) << '\t' << feats_to_string(t.feats) << '\t' << t.head << '\t'
     << field(t.deprel) << '\t' << field(t.deps) << '\t' << field(t.misc);
  return os.str();
}

std::string serialize_sentence(const Sentence& s) {
  std::string out;
  for (const std::string& c : s.comments) {
    out += c;
    out += '\n';
  }
  size_t sc = 0;
  for (size_t i = 0; i <= s.tokens.size(); ++i) {
    while (sc < s.sidecars.size() && s.sidecars[sc].after_token == static_cast<int>(i)) {
      out += s.sidecars[sc].raw;
      out += '\n';
      ++sc;
    }
    if (i < s.tokens.size()) {
      out += serialize_token(s.tokens[i]);
      out += '\n';
    }
  }
  out += '\n';
  return out;
}

std::string serialize_document(const Treebank& tb) {
  std::string out;
  for (const Sentence& s : tb.sentences) out += serialize_sentence(s);
  return out;
}

Treebank read_treebank(const std::string& path, const std::string& name, bool lenient) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string tbname = name.empty() ? path : name;
  if (lenient) return parse_document_lenient(ss.str(), tbname).treebank;
  return parse_document(ss.str(), tbname);
}

void write_treebank(const Treebank& tb, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << serialize_document(tb);
}

}  // namespace lrp
