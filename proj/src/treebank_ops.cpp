#include "lrp/treebank_ops.h"

#include <numeric>
#include <stdexcept>

#include "lrp/rng.h"

namespace lrp {

SplitSpec make_split_spec(const std::string& fraction, uint64_t seed, bool shuffle) {
  SplitSpec spec;
  spec.seed = seed;
  spec.shuffle = shuffle;
  size_t slash = fraction.find('/');
  size_t dot = fraction.find('.');
  try {
    if (slash != std::string::npos) {
      spec.frac_num = std::stoll(fraction.substr(0, slash));
      spec.frac_den = std::stoll(fraction.substr(slash + 1));
    } else if (dot != std::string::npos) {
      std::string digits = fraction.substr(0, dot) + fraction.substr(dot + 1);
      size_t places = fraction.size() - dot - 1;
      if (places == 0 || places > 9) throw std::invalid_argument(fraction);
      spec.frac_num = std::stoll(digits);
      spec.frac_den = 1;
      for (size_t i = 0; i < places; ++i) spec.frac_den *= 10;
    } else {
      spec.frac_num = std::stoll(fraction);
      spec.frac_den = 1;
    }
  } catch (const std::exception&) {
    throw std::runtime_error("cannot parse fraction '" + fraction + "'");
  }
  if (spec.frac_den <= 0 || spec.frac_num <= 0 || spec.frac_num >= spec.frac_den)
    throw std::runtime_error("train fraction must be in (0, 1), got '" + fraction + "'");
  long long g = std::gcd(spec.frac_num, spec.frac_den);
  spec.frac_num /= g;
  spec.frac_den /= g;
  return spec;
}

std::pair<Treebank, Treebank> combine_and_split(const Treebank& train, const Treebank* dev,
                                                const SplitSpec& spec) {
  if (spec.frac_num <= 0 || spec.frac_num >= spec.frac_den)
    throw std::runtime_error("train fraction must be in (0, 1)");
  std::vector<const Sentence*> pool;
  for (const Sentence& s : train.sentences) pool.push_back(&s);
  if (dev)
    for (const Sentence& s : dev->sentences) pool.push_back(&s);
  size_t n = pool.size();
  if (n < 2) throw std::runtime_error("need at least 2 sentences to split, have " +
                                      std::to_string(n));
  if (spec.shuffle) {
    Rng rng(spec.seed);
    rng.shuffle(pool);
  }
  size_t k = static_cast<size_t>((spec.frac_num * static_cast<long long>(n)) / spec.frac_den);
  Treebank out_train, out_dev;
  out_train.name = train.name + "-train";
  out_dev.name = train.name + "-dev";
  for (size_t i = 0; i < n; ++i)
    (i < k ? out_train : out_dev).sentences.push_back(*pool[i]);
  return {std::move(out_train), std::move(out_dev)};
}

Treebank sample_subset(const Treebank& tb, size_t n, uint64_t seed) {
  if (n > tb.sentences.size())
    throw std::runtime_error("sample size " + std::to_string(n) + " exceeds treebank size " +
                             std::to_string(tb.sentences.size()));
  Rng rng(seed);
  std::vector<size_t> idx = rng.sample_indices(tb.sentences.size(), n);
  Treebank out;
  out.name = tb.name;
  out.sentences.reserve(n);
  for (size_t i : idx) out.sentences.push_back(tb.sentences[i]);
  return out;
}

TreebankStats compute_stats(const Treebank& tb) {
  TreebankStats st;
  st.sentence_count = tb.sentences.size();
  for (const Sentence& s : tb.sentences) st.token_count += s.tokens.size();
  return st;
}

}  // namespace lrp
