#pragma once

#include <cstdint>
#include <vector>

#include "uzopinion/emoji_lexicon.hpp"
#include "uzopinion/features.hpp"
#include "uzopinion/post.hpp"

namespace uzopinion::testsupport {

/// Lexicon backing the synthetic corpora: two strongly positive and two
/// strongly negative emoji.
EmojiLexicon synthetic_lexicon();

/// Random posts with label-independent words and POS tags. When `planted`
/// is true, positive posts carry only positive-score emoji and negative
/// posts only negative-score ones; otherwise emoji are drawn uniformly,
/// independent of the label. Balanced classes, n/2 each.
std::vector<RawPost> synthetic_posts(std::size_t n, std::uint64_t seed, bool planted);

/// Two well-separated Gaussian blobs in 2-d, n points, balanced.
Dataset two_gaussians(std::size_t n, std::uint64_t seed);

/// Labeled dataset from a plain matrix; features named f0, f1, ...
Dataset dataset_from_matrix(const std::vector<std::vector<double>>& x,
                            const std::vector<Label>& y);

}  // namespace uzopinion::testsupport
