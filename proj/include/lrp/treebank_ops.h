#pragma once

#include <cstdint>
#include <utility>

#include "lrp/conllu.h"

namespace lrp {

// Train fraction is kept as an exact rational so floor(frac * N) never
// suffers from binary rounding (floor(0.8 * N) must reproduce published
// split sizes for every N).
struct SplitSpec {
  long long frac_num = 4;
  long long frac_den = 5;
  uint64_t seed = 0;
  bool shuffle = true;
};

// Parses "0.8" or "4/5" into an exact rational. Throws on values outside (0, 1).
SplitSpec make_split_spec(const std::string& fraction, uint64_t seed, bool shuffle);

struct TreebankStats {
  size_t sentence_count = 0;
  size_t token_count = 0;  // syntactic words only
};

// Pools train and dev (dev may be null) and splits the result; train' gets
// floor(frac * N) sentences. Throws if the pool has fewer than 2 sentences.
std::pair<Treebank, Treebank> combine_and_split(const Treebank& train, const Treebank* dev,
                                                const SplitSpec& spec);

// Uniform sample of n sentences without replacement, original order kept.
Treebank sample_subset(const Treebank& tb, size_t n, uint64_t seed);

TreebankStats compute_stats(const Treebank& tb);

}  // namespace lrp
