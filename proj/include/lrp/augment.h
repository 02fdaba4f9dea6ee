#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "lrp/conllu.h"

namespace lrp {

// A swappable subtree: a token together with all of its descendants whose
// yield is one contiguous id interval.
struct SubtreeRef {
  int sentence_id = -1;  // index into a treebank, -1 when standalone
  int root = 0;          // token id of the subtree root
  int lo = 0, hi = 0;    // inclusive id span (equals the yield)
  std::string root_upos;
  std::string root_deprel;
  std::string root_feats;  // canonical FEATS string
  std::string surface;     // space-joined FORM values over the span
};

struct SwapRecord {
  int host_sentence = -1;
  SubtreeRef replaced;
  SubtreeRef inserted;
  int round = 1;
};

struct AugmentOptions {
  std::set<std::string> allowed_relations;  // base labels
  bool any_donor = false;        // round 2 may also reuse the round-1 donor tree
  bool base_label_match = false; // compare deprel on base label instead of full label
  size_t triplet_budget = 4060;  // C(30,3); beyond this, triplets are sampled
  AugmentOptions();
};

// Core arguments + nominal dependents + non-core dependents minus
// discourse/expl/dislocated; "root" is deliberately absent.
const std::set<std::string>& default_allowed_relations();

std::vector<SubtreeRef> extract_subtrees(const Sentence& s, const AugmentOptions& opt = {});

// Roots match in UPOS, deprel and FEATS while the surfaces differ.
bool compatible(const SubtreeRef& a, const SubtreeRef& b, bool base_label_match = false);

// Replaces host's target span with a copy of the donor subtree, reindexing
// ids and heads. Throws if target/donor do not belong to their sentences or
// are incompatible.
Sentence swap_subtree(const Sentence& host, const SubtreeRef& target, const Sentence& donor_sent,
                      const SubtreeRef& donor, const AugmentOptions& opt = {});

// All distinct trees reachable from a triplet by one swap, optionally
// followed by a second swap drawing on the remaining tree; products equal to
// an original are dropped.
std::vector<Sentence> generate_from_triplet(const Sentence& t1, const Sentence& t2,
                                            const Sentence& t3, const AugmentOptions& opt = {});

struct AugmentResult {
  Treebank treebank;
  size_t pool_size = 0;
  bool truncated = false;  // pool smaller than the requested n
};

AugmentResult augment_treebank(const Treebank& tb, size_t n, uint64_t seed,
                               const AugmentOptions& opt = {});

// Canonical identity of a tree: forms, UPOS, FEATS, heads and deprels;
// comments do not participate.
std::string sentence_key(const Sentence& s);

}  // namespace lrp
