#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace lrp {

// One CoNLL-U word line. FEATS is kept as a canonically sorted list of
// "Key=Value" strings; everything else is verbatim column text.
struct Token {
  int id = 0;
  std::string form = "_";
  std::string lemma = "_";
  std::string upos = "_";
  std::string xpos = "_";
  std::vector<std::string> feats;
  int head = 0;
  std::string deprel = "_";
  std::string deps = "_";
  std::string misc = "_";
};

// Multiword-token range lines ("3-4") and empty-node lines ("3.1") are
// preserved verbatim so files round-trip byte-for-byte, but stay invisible
// to every algorithm operating on the tree.
struct SidecarLine {
  int after_token = 0;  // number of word tokens preceding this line
  bool is_range = false;
  int range_start = 0;
  int range_end = 0;
  std::string form;  // FORM column of a range line
  std::string raw;
};

struct Sentence {
  std::vector<std::string> comments;  // verbatim lines starting with '#'
  std::vector<Token> tokens;          // ordered by id
  std::vector<SidecarLine> sidecars;
};

struct Treebank {
  std::string name;
  std::vector<Sentence> sentences;
};

struct ParseError : std::runtime_error {
  int line_no;
  ParseError(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_no(line) {}
};

struct StructuralError : std::runtime_error {
  int sentence_index;
  StructuralError(int sent, const std::string& msg)
      : std::runtime_error("sentence " + std::to_string(sent + 1) + ": " + msg),
        sentence_index(sent) {}
};

enum class Violation { GappedIds, RootCount, Cycle, HeadOutOfRange };

struct ValidationResult {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  bool has(Violation v) const;
  std::string message() const;
};

// FEATS helpers. parse_feats sorts pairs by key (byte order, tie-broken on
// the full pair); serialization yields "_" for an empty set.
std::vector<std::string> parse_feats(const std::string& field);
std::string feats_to_string(const std::vector<std::string>& feats);

// "nsubj:pass" -> "nsubj"
std::string base_deprel(const std::string& deprel);

ValidationResult validate_tree(const Sentence& s);

Treebank parse_document(const std::string& text, const std::string& name = "");

struct LenientParseResult {
  Treebank treebank;
  int dropped = 0;
  std::vector<std::string> messages;
};
LenientParseResult parse_document_lenient(const std::string& text, const std::string& name = "");

std::string serialize_token(const Token& t);
std::string serialize_sentence(const Sentence& s);
std::string serialize_document(const Treebank& tb);

Treebank read_treebank(const std::string& path, const std::string& name = "", bool lenient = false);
void write_treebank(const Treebank& tb, const std::string& path);

}  // namespace lrp
