#include "lrp/augment.h"

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>

#include "lrp/rng.h"

namespace lrp {

const std::set<std::string>& default_allowed_relations() {
  static const std::set<std::string> rels = {
      // core arguments
      "nsubj", "obj", "iobj", "csubj", "ccomp", "xcomp",
      // nominal dependents
      "nmod", "appos", "nummod", "acl", "amod", "det", "clf", "case",
      // non-core dependents minus discourse, expl, dislocated
      "obl", "vocative", "advcl", "advmod", "aux", "cop", "mark"};
  return rels;
}

AugmentOptions::AugmentOptions() : allowed_relations(default_allowed_relations()) {}

namespace {

const std::set<std::string>& swap_root_upos() {
  static const std::set<std::string> tags = {"NOUN", "VERB", "ADJ", "PROPN"};
  return tags;
}

std::string span_surface(const Sentence& s, int lo, int hi) {
  std::string out;
  for (int id = lo; id <= hi; ++id) {
    if (id > lo) out += ' ';
    out += s.tokens[id - 1].form;
  }
  return out;
}

}  // namespace

std::vector<SubtreeRef> extract_subtrees(const Sentence& s, const AugmentOptions& opt) {
  ValidationResult vr = validate_tree(s);
  if (!vr.ok()) throw std::runtime_error("invalid sentence: " + vr.message());

  int n = static_cast<int>(s.tokens.size());
  std::vector<std::vector<int>> children(n + 1);
  for (const Token& t : s.tokens) children[t.head].push_back(t.id);

  // yield bounds and sizes via DFS from each candidate root
  std::vector<SubtreeRef> out;
  for (const Token& t : s.tokens) {
    if (!swap_root_upos().count(t.upos)) continue;
    if (!opt.allowed_relations.count(base_deprel(t.deprel))) continue;
    int lo = t.id, hi = t.id, count = 0;
    std::vector<int> stack = {t.id};
    while (!stack.empty()) {
      int id = stack.back();
      stack.pop_back();
      ++count;
      lo = std::min(lo, id);
      hi = std::max(hi, id);
      for (int c : children[id]) stack.push_back(c);
    }
    if (hi - lo + 1 != count) continue;  // gap in the yield
    SubtreeRef ref;
    ref.root = t.id;
    ref.lo = lo;
    ref.hi = hi;
    ref.root_upos = t.upos;
    ref.root_deprel = t.deprel;
    ref.root_feats = feats_to_string(t.feats);
    ref.surface = span_surface(s, lo, hi);
    out.push_back(ref);
  }
  return out;
}

bool compatible(const SubtreeRef& a, const SubtreeRef& b, bool base_label_match) {
  if (a.root_upos != b.root_upos) return false;
  std::string da = base_label_match ? base_deprel(a.root_deprel) : a.root_deprel;
  std::string db = base_label_match ? base_deprel(b.root_deprel) : b.root_deprel;
  if (da != db) return false;
  if (a.root_feats != b.root_feats) return false;
  return a.surface != b.surface;  // must be lexically different
}

namespace {

// target must be a subtree of s with matching span/root metadata
void verify_ref(const Sentence& s, const SubtreeRef& ref, const AugmentOptions& opt,
                const char* what) {
  for (const SubtreeRef& cand : extract_subtrees(s, opt)) {
    if (cand.root == ref.root && cand.lo == ref.lo && cand.hi == ref.hi &&
        cand.root_upos == ref.root_upos && cand.root_deprel == ref.root_deprel &&
        cand.root_feats == ref.root_feats)
      return;
  }
  throw std::runtime_error(std::string(what) + " is not a swappable subtree of its sentence");
}

}  // namespace

Sentence swap_subtree(const Sentence& host, const SubtreeRef& target, const Sentence& donor_sent,
                      const SubtreeRef& donor, const AugmentOptions& opt) {
  verify_ref(host, target, opt, "target");
  verify_ref(donor_sent, donor, opt, "donor");
  if (!compatible(target, donor, opt.base_label_match))
    throw std::runtime_error("target and donor subtrees are not compatible");

  int tlen = target.hi - target.lo + 1;
  int dlen = donor.hi - donor.lo + 1;
  int delta = dlen - tlen;
  int new_root = target.lo + (donor.root - donor.lo);

  // Heads of host tokens can only point outside the span or at its root.
  auto remap = [&](int h) {
    if (h == 0) return 0;
    if (h < target.lo) return h;
    if (h == target.root) return new_root;
    if (h > target.hi) return h + delta;
    throw std::runtime_error("host head points inside the replaced span");
  };

  int target_root_head = host.tokens[target.root - 1].head;

  Sentence out;
  out.comments = host.comments;
  for (int id = 1; id < target.lo; ++id) {
    Token t = host.tokens[id - 1];
    t.head = remap(t.head);
    out.tokens.push_back(t);
  }
  for (int p = donor.lo; p <= donor.hi; ++p) {
    Token t = donor_sent.tokens[p - 1];
    t.id = target.lo + (p - donor.lo);
    if (p == donor.root) {
      t.head = remap(target_root_head);
    } else {
      t.head = target.lo + (t.head - donor.lo);
    }
    out.tokens.push_back(t);
  }
  for (int id = target.hi + 1; id <= static_cast<int>(host.tokens.size()); ++id) {
    Token t = host.tokens[id - 1];
    t.id = id + delta;
    t.head = remap(t.head);
    out.tokens.push_back(t);
  }

  ValidationResult vr = validate_tree(out);
  if (!vr.ok()) throw std::runtime_error("swap produced an invalid tree: " + vr.message());
  return out;
}

std::string sentence_key(const Sentence& s) {
  std::string key;
  for (const Token& t : s.tokens) {
    key += t.form;
    key += '\x01';
    key += t.upos;
    key += '\x01';
    key += feats_to_string(t.feats);
    key += '\x01';
    key += std::to_string(t.head);
    key += '\x01';
    key += t.deprel;
    key += '\x02';
  }
  return key;
}

namespace {

struct TripletProducts {
  // key -> sentence, canonical order
  std::map<std::string, Sentence>* pool;
  const AugmentOptions* opt;
};

void produce_from_triplet(const Sentence& t1, const Sentence& t2, const Sentence& t3,
                          const AugmentOptions& opt,
                          std::map<std::string, Sentence>& pool,
                          const std::set<std::string>& original_keys) {
  const Sentence* trees[3] = {&t1, &t2, &t3};
  std::vector<SubtreeRef> subs[3];
  for (int i = 0; i < 3; ++i) subs[i] = extract_subtrees(*trees[i], opt);

  auto add = [&](Sentence&& s, int swaps) {
    std::string key = sentence_key(s);
    if (original_keys.count(key)) return;
    if (pool.count(key)) return;
    s.comments.clear();
    s.comments.push_back("# augmented_swaps = " + std::to_string(swaps));
    pool.emplace(std::move(key), std::move(s));
  };

  for (int hi_ = 0; hi_ < 3; ++hi_) {
    for (int d1 = 0; d1 < 3; ++d1) {
      if (d1 == hi_) continue;
      int d2 = 3 - hi_ - d1;  // the remaining tree
      for (const SubtreeRef& tgt : subs[hi_]) {
        for (const SubtreeRef& don : subs[d1]) {
          if (!compatible(tgt, don, opt.base_label_match)) continue;
          Sentence r1 = swap_subtree(*trees[hi_], tgt, *trees[d1], don, opt);
          // span occupied by the inserted subtree, in r1 coordinates
          int ins_lo = tgt.lo;
          int ins_hi = tgt.lo + (don.hi - don.lo);

          // Second swap from the third tree; the inserted span may not be
          // touched again.
          std::vector<int> donors2;
          donors2.push_back(d2);
          if (opt.any_donor && d1 != d2) donors2.push_back(d1);
          std::vector<SubtreeRef> r1_subs = extract_subtrees(r1, opt);
          for (int dsel : donors2) {
            for (const SubtreeRef& tgt2 : r1_subs) {
              if (tgt2.lo <= ins_hi && tgt2.hi >= ins_lo) continue;  // overlap
              for (const SubtreeRef& don2 : subs[dsel]) {
                if (!compatible(tgt2, don2, opt.base_label_match)) continue;
                Sentence r2 = swap_subtree(r1, tgt2, *trees[dsel], don2, opt);
                add(std::move(r2), 2);
              }
            }
          }
          add(std::move(r1), 1);
        }
      }
    }
  }
}

uint64_t triplet_count(uint64_t n) { return n < 3 ? 0 : n * (n - 1) * (n - 2) / 6; }

// Unranks combination index r (0-based, lexicographic) into (i, j, k).
std::array<size_t, 3> unrank_triplet(uint64_t r, size_t n) {
  size_t i = 0;
  while (true) {
    uint64_t block = triplet_count(n - i) - triplet_count(n - i - 1);
    if (r < block) break;
    r -= block;
    ++i;
  }
  size_t j = i + 1;
  while (true) {
    uint64_t block = n - j - 1;
    if (r < block) break;
    r -= block;
    ++j;
  }
  size_t k = j + 1 + static_cast<size_t>(r);
  return {i, j, k};
}

}  // namespace

std::vector<Sentence> generate_from_triplet(const Sentence& t1, const Sentence& t2,
                                            const Sentence& t3, const AugmentOptions& opt) {
  std::map<std::string, Sentence> pool;
  std::set<std::string> originals = {sentence_key(t1), sentence_key(t2), sentence_key(t3)};
  produce_from_triplet(t1, t2, t3, opt, pool, originals);
  std::vector<Sentence> out;
  out.reserve(pool.size());
  for (auto& kv : pool) out.push_back(std::move(kv.second));
  return out;
}

AugmentResult augment_treebank(const Treebank& tb, size_t n, uint64_t seed,
                               const AugmentOptions& opt) {
  size_t size = tb.sentences.size();
  std::set<std::string> originals;
  for (const Sentence& s : tb.sentences) originals.insert(sentence_key(s));

  std::map<std::string, Sentence> pool;
  uint64_t total = triplet_count(size);
  Rng rng(seed);
  auto run_triplet = [&](size_t i, size_t j, size_t k) {
    produce_from_triplet(tb.sentences[i], tb.sentences[j], tb.sentences[k], opt, pool, originals);
  };
  if (total <= opt.triplet_budget) {
    for (size_t i = 0; i + 2 < size; ++i)
      for (size_t j = i + 1; j + 1 < size; ++j)
        for (size_t k = j + 1; k < size; ++k) run_triplet(i, j, k);
  } else {
    // Sample distinct triplets by combinatorial rank.
    std::vector<size_t> ranks = rng.sample_indices(static_cast<size_t>(total), opt.triplet_budget);
    for (size_t r : ranks) {
      auto [i, j, k] = unrank_triplet(r, size);
      run_triplet(i, j, k);
    }
  }

  AugmentResult res;
  res.pool_size = pool.size();
  res.truncated = pool.size() < n;
  size_t take = std::min(n, pool.size());

  std::vector<const Sentence*> ordered;
  ordered.reserve(pool.size());
  for (const auto& kv : pool) ordered.push_back(&kv.second);
  std::vector<size_t> picks = rng.sample_indices(ordered.size(), take);
  res.treebank.name = tb.name + "-augmented";
  for (size_t p : picks) res.treebank.sentences.push_back(*ordered[p]);
  return res;
}

}  // namespace lrp
