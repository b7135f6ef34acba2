#include "hqa/synth.hpp"

#include "hqa/dataset.hpp"
#include "hqa/errors.hpp"
#include "hqa/labels.hpp"
#include "hqa/rng.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <set>

namespace hqa {
namespace {

constexpr int kMaxAttempts = 100;
constexpr std::size_t kMinPassageWords = 6;
constexpr std::size_t kMaxPassageWords = 10;

// Disjoint slices of the vocabulary.
struct Vocabulary {
  std::vector<std::string> headers;
  std::vector<std::string> relations;
  std::vector<std::string> answers;
  std::vector<std::string> filler;
  std::vector<std::string> values;
};

struct PoolSizes {
  std::size_t headers, relations, answers, filler, values;
};

PoolSizes pool_sizes(std::size_t vocab) {
  PoolSizes p{vocab / 20, vocab / 20, vocab / 10, vocab / 5, 0};
  p.values = vocab - p.headers - p.relations - p.answers - p.filler;
  return p;
}

std::string pseudo_word(Rng& rng) {
  static constexpr std::string_view kConsonants = "bdfgklmnprstvz";
  static constexpr std::string_view kVowels = "aeiou";
  const std::size_t syllables = rng.between(2, 3);
  std::string w;
  for (std::size_t s = 0; s < syllables; ++s) {
    w += kConsonants[rng.below(kConsonants.size())];
    w += kVowels[rng.below(kVowels.size())];
  }
  return w;
}

Vocabulary build_vocabulary(const SynthSpec& spec, Rng& rng) {
  std::set<std::string> seen;
  std::vector<std::string> words;
  while (words.size() < spec.vocab_size) {
    auto w = pseudo_word(rng);
    if (seen.insert(w).second) words.push_back(std::move(w));
  }
  const auto sizes = pool_sizes(spec.vocab_size);
  Vocabulary v;
  auto it = words.begin();
  auto take = [&](std::vector<std::string>& pool, std::size_t n) {
    pool.assign(it, it + static_cast<std::ptrdiff_t>(n));
    it += static_cast<std::ptrdiff_t>(n);
  };
  take(v.headers, sizes.headers);
  take(v.relations, sizes.relations);
  take(v.answers, sizes.answers);
  take(v.filler, sizes.filler);
  take(v.values, sizes.values);
  return v;
}

std::vector<std::string> sample_distinct(const std::vector<std::string>& pool, std::size_t k,
                                         Rng& rng) {
  std::vector<std::size_t> idx(pool.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  // Partial Fisher-Yates: only the first k slots are needed.
  std::vector<std::string> out;
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(idx[i], idx[i + rng.below(idx.size() - i)]);
    out.push_back(pool[idx[i]]);
  }
  return out;
}

std::string join(const std::vector<std::string>& words) {
  std::string out;
  for (std::size_t k = 0; k < words.size(); ++k) {
    if (k) out += ' ';
    out += words[k];
  }
  return out;
}

void insert_at_random(std::vector<std::string>& words, const std::vector<std::string>& run,
                      Rng& rng) {
  const auto pos = static_cast<std::ptrdiff_t>(rng.below(words.size() + 1));
  words.insert(words.begin() + pos, run.begin(), run.end());
}

struct Draft {
  HybridTable table;
  std::vector<Passage> passages;
  Question question;
};

Draft draft_question(const SynthSpec& spec, const Vocabulary& v, Rng& rng, std::size_t index,
                     bool in_table) {
  const std::string qid = fmt::format("synth-{:04}", index);
  Draft d;
  d.table.id = fmt::format("table-{:04}", index);
  const std::size_t m = rng.between(spec.min_rows, spec.max_rows);
  const std::size_t n = rng.between(spec.min_cols, spec.max_cols);
  d.table.headers = sample_distinct(v.headers, n, rng);

  const auto value_words = sample_distinct(v.values, 2 * m * n, rng);
  std::size_t next_value = 0;
  // Per-cell passage words, kept as tokens so planting can splice into them.
  std::vector<std::vector<std::vector<std::vector<std::string>>>> texts(
      m, std::vector<std::vector<std::vector<std::string>>>(n));
  d.table.rows.assign(m, std::vector<Cell>(n));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::string> toks{value_words[next_value++]};
      if (rng.bernoulli(0.5)) toks.push_back(value_words[next_value++]);
      d.table.rows[i][j].value = join(toks);
      const std::size_t links = rng.between(spec.min_links, spec.max_links);
      for (std::size_t x = 0; x < links; ++x) {
        std::vector<std::string> words;
        const std::size_t len = rng.between(kMinPassageWords, kMaxPassageWords);
        for (std::size_t w = 0; w < len; ++w) words.push_back(v.filler[rng.below(v.filler.size())]);
        texts[i][j].push_back(std::move(words));
      }
    }
  }

  const std::size_t ti = rng.below(m);
  const std::size_t tj = n > 1 ? rng.between(1, n - 1) : 0;
  const std::string& header = d.table.headers[tj];
  const std::string anchor = d.table.rows[ti][0].value;

  // Both question types read the same way; only the evidence tells them apart.
  const auto rel = sample_distinct(v.relations, 2, rng);
  d.question.text = fmt::format("what {} {} the {} of {}", rel[0], rel[1], header, anchor);
  std::size_t target_link = 0;
  if (in_table) {
    d.question.gold_answers = {d.table.rows[ti][tj].value};
    // The relation words sit in a passage of another cell of the same row,
    // around a filler word that is not the answer.
    std::vector<std::size_t> linked;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != tj && !texts[ti][j].empty()) linked.push_back(j);
    }
    if (!linked.empty()) {
      auto& cell_texts = texts[ti][linked[rng.below(linked.size())]];
      insert_at_random(cell_texts[rng.below(cell_texts.size())],
                       {rel[0], v.filler[rng.below(v.filler.size())], rel[1]}, rng);
    }
  } else {
    if (texts[ti][tj].empty()) {
      // The planted cell needs a passage; give it the minimum link count of one.
      std::vector<std::string> words;
      const std::size_t len = rng.between(kMinPassageWords, kMaxPassageWords);
      for (std::size_t w = 0; w < len; ++w) words.push_back(v.filler[rng.below(v.filler.size())]);
      texts[ti][tj].push_back(std::move(words));
    }
    target_link = rng.below(texts[ti][tj].size());
    const std::string& answer = v.answers[rng.below(v.answers.size())];
    insert_at_random(texts[ti][tj][target_link], {rel[0], answer, rel[1]}, rng);
    d.question.gold_answers = {answer};
  }

  // Distractors: the question's own words, placed where they mislead.
  const std::string& lure = in_table ? header : rel[0];
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t x = 0; x < texts[i][j].size(); ++x) {
        const bool target = !in_table && i == ti && j == tj && x == target_link;
        if (!target && rng.bernoulli(spec.distractor_rate)) {
          insert_at_random(texts[i][j][x], {lure}, rng);
        }
      }
    }
    if (i != ti && rng.bernoulli(spec.distractor_rate)) {
      d.table.rows[i][0].value += " " + anchor.substr(0, anchor.find(' '));
    }
  }

  std::size_t pid = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (auto& words : texts[i][j]) {
        Passage p{fmt::format("{}-p{}", qid, pid++), join(words)};
        d.table.rows[i][j].link_ids.push_back(p.id);
        d.passages.push_back(std::move(p));
      }
    }
  }

  d.question.id = qid;
  d.question.table_id = d.table.id;
  return d;
}

bool unambiguous(const Draft& d, bool in_table) {
  PassageMap passages;
  for (const auto& p : d.passages) passages.emplace(p.id, p);
  const auto labels = label_candidates(d.question, d.table, passages);
  std::size_t fine = 0;
  for (const auto& [id, y] : labels.labels) {
    if (y && (id.granularity == Granularity::Cell || id.granularity == Granularity::Link)) ++fine;
  }
  const GoldType want = in_table ? GoldType::InTable : GoldType::InPassage;
  return fine == 1 && derive_gold_type(labels) == want;
}

}  // namespace

void SynthSpec::validate() const {
  if (min_rows < 1 || min_rows > max_rows) throw UsageError("synth: bad row range");
  if (min_cols < 1 || min_cols > max_cols) throw UsageError("synth: bad column range");
  if (min_links > max_links) throw UsageError("synth: bad link range");
  if (!(in_table_fraction >= 0.0 && in_table_fraction <= 1.0)) {
    throw UsageError("synth: in_table_fraction must lie in [0, 1]");
  }
  if (!(distractor_rate >= 0.0 && distractor_rate <= 1.0)) {
    throw UsageError("synth: distractor_rate must lie in [0, 1]");
  }
  if (in_table_fraction < 1.0 && max_links == 0) {
    throw UsageError("synth: in-passage questions need max_links >= 1");
  }
  const auto p = pool_sizes(vocab_size);
  if (p.headers < max_cols || p.relations < 2 || p.answers < 1 || p.filler < 1 ||
      p.values < 2 * max_rows * max_cols) {
    throw UsageError(fmt::format("synth: vocab_size {} too small for {}x{} tables", vocab_size,
                                 max_rows, max_cols));
  }
}

Dataset generate_synthetic(const SynthSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  const Vocabulary vocab = build_vocabulary(spec, rng);

  const auto n_table = static_cast<std::size_t>(
      std::llround(spec.in_table_fraction * static_cast<double>(spec.n_questions)));
  std::vector<char> in_table(spec.n_questions, 0);
  std::fill_n(in_table.begin(), n_table, 1);
  rng.shuffle(std::span<char>(in_table));

  Dataset ds;
  for (std::size_t k = 0; k < spec.n_questions; ++k) {
    bool done = false;
    for (int attempt = 0; attempt < kMaxAttempts && !done; ++attempt) {
      Draft d = draft_question(spec, vocab, rng, k, in_table[k] != 0);
      if (!unambiguous(d, in_table[k] != 0)) continue;
      for (auto& p : d.passages) ds.passages.emplace(p.id, std::move(p));
      ds.tables.emplace(d.table.id, std::move(d.table));
      ds.questions.push_back(std::move(d.question));
      done = true;
    }
    if (!done) {
      throw GenerationFailed(
          fmt::format("question {} still ambiguous after {} attempts", k, kMaxAttempts));
    }
  }
  validate(ds);
  return ds;
}

}  // namespace hqa
