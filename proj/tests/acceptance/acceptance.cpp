// Acceptance checks. Prints one PASS/FAIL (or SKIP) line per criterion and
// exits non-zero if any criterion fails.

#include "oracles.hpp"

#include "hqa/ablation.hpp"
#include "hqa/cli.hpp"
#include "hqa/dataset.hpp"
#include "hqa/esel.hpp"
#include "hqa/io.hpp"
#include "hqa/labels.hpp"
#include "hqa/loss.hpp"
#include "hqa/metrics.hpp"
#include "hqa/reader.hpp"
#include "hqa/synth.hpp"
#include "hqa/train.hpp"

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

using namespace hqa;
namespace fs = std::filesystem;

namespace {

// Frozen from the reference run (generator seed 42, default TrainConfig,
// training seed 1): total EM multi 0.995, col 0.000, row 0.015, cell 0.435,
// link 0.500. Each mono margin may shrink by kMarginSlack before failing.
constexpr std::uint64_t kTrainSeed = 1;
constexpr double kRefMarginCol = 0.995;
constexpr double kRefMarginRow = 0.980;
constexpr double kRefMarginCell = 0.560;
constexpr double kRefMarginLink = 0.495;
constexpr double kMarginSlack = 0.02;

// Oracle scores on the same corpus gave In-Passage EM 1.0 in the reference run.
constexpr double kOracleInPassageEmFloor = 1.0;

constexpr double kLossTol = 1e-12;
constexpr double kFdStep = 1e-6;
constexpr double kFdTol = 1e-5;
constexpr double kShift = 0.0625;

struct Outcome {
  bool pass = true;
  std::string detail;
  bool skipped = false;
};

int failures = 0;

void report(const char* id, const char* title, double limit_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, fmt::format("exception: {}", e.what())};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_s > 0 && secs >= limit_s) {
    o.pass = false;
    o.detail += fmt::format(" over time limit {:.0f} s", limit_s);
  }
  const char* verdict = o.skipped ? "SKIP" : o.pass ? "PASS" : "FAIL";
  if (!o.pass && !o.skipped) ++failures;
  fmt::print("{} {} {} ({:.2f} s) {}\n", verdict, id, title, secs, o.detail);
  std::fflush(stdout);
}

ScoreSet label_scores(const LabelSet& l) {
  ScoreSet s{l.question_id, {}};
  for (const auto& [id, y] : l.labels) s.scores[id] = y ? 0.75 : 0.25;
  return s;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "hqa");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

Outcome c1() {
  Rng rng(1001);
  std::size_t mismatches = 0;
  for (int k = 0; k < 1000; ++k) {
    const auto in = oracle::random_instance(rng, 20, 4, oracle::open_unit);
    const auto fused = fuse_scores(in.scores, in.table);
    for (std::size_t i = 0; i < fused.rows; ++i) {
      for (std::size_t j = 0; j < fused.cols; ++j) {
        const auto bl = oracle::best_link_at(in, i, j);
        if (fused.tab(i, j) != oracle::s_tab_at(in, i, j) || fused.pass(i, j) != oracle::s_pass_at(in, i, j) ||
            fused.link(i, j) != (bl ? std::optional<std::size_t>(bl->second) : std::nullopt)) {
          ++mismatches;
        }
      }
    }
    const auto want = oracle::navigate(in);
    const auto g = global_best(fused);
    const auto nav = navigate(in.scores, in.table);
    const bool same = g.s_tab == want.s_tab && g.s_pass == want.s_pass &&
                      nav.answer_type == want.type && nav.cell == CellCoord{want.i, want.j} &&
                      nav.link_index == want.link && nav.s_tab == want.s_tab && nav.s_pass == want.s_pass;
    if (!same) ++mismatches;
  }
  return {mismatches == 0, fmt::format("1000 instances, {} mismatches", mismatches)};
}

Outcome c2() {
  SynthSpec spec;
  spec.n_questions = 500;
  spec.seed = 2002;
  const auto ds = generate_synthetic(spec);
  std::size_t label_err = 0, type_err = 0;
  for (const auto& q : ds.questions) {
    const auto& t = ds.table_for(q);
    const auto labels = label_candidates(q, t, ds.passages);
    for (const auto& id : oracle::walk(t)) {
      if (labels.at(id) != oracle::label_of(q, t, ds.passages, id)) ++label_err;
    }
    // The generator plants In-Table answers as a verbatim cell value.
    bool planted_in_table = false;
    for (const auto& row : t.rows)
      for (const auto& c : row) planted_in_table |= c.value == q.gold_answers.at(0);
    const auto want = planted_in_table ? GoldType::InTable : GoldType::InPassage;
    if (derive_gold_type(labels) != want) ++type_err;
  }
  return {label_err == 0 && type_err == 0 && ds.questions.size() == 500,
          fmt::format("500 questions, {} label mismatches, {} type mismatches", label_err, type_err)};
}

Outcome c3() {
  const TrainConfig cfg;
  const std::size_t dim = FeaturizerConfig{}.dimension();
  Rng rng(3003);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const auto b = oracle::random_batch(rng, dim, cfg.group_size);
    std::vector<double> w(dim);
    for (auto& x : w) x = 0.2 * (rng.uniform() - 0.5);
    worst = std::max(worst, oracle::gradient_error(b, w, cfg, kFdStep));
  }
  return {worst < kFdTol, fmt::format("100 batches, worst relative error {:.3e}", worst)};
}

Outcome c4() {
  const TrainConfig cfg;
  const std::size_t dim = FeaturizerConfig{}.dimension();
  LinearScorer zero = LinearScorer::zeros(FeaturizerConfig{});
  const FeatureVector h(dim, 0.5);
  double worst = 0.0;
  for (int y : {0, 1}) worst = std::max(worst, std::abs(bce_loss(score_candidate(zero, h), y) - std::numbers::ln2));
  for (std::size_t d = 1; d <= 8; ++d) {
    const std::vector<FeatureVector> group(d + 1, h);
    worst = std::max(worst, std::abs(cl_loss(group, zero, cfg.tau) - std::log(static_cast<double>(d))));
  }
  // Whole-batch form: 4 groups of 6 equal instances.
  Batch flat;
  for (auto g : kAllGranularities) {
    TrainingGroup grp;
    grp.granularity = g;
    grp.anchor = {{h}, 1};
    grp.positive = grp.anchor;
    for (int k = 1; k < cfg.group_size; ++k) grp.negatives.push_back({{h}, 0});
    flat.groups.push_back(grp);
  }
  const auto lg = total_loss_and_gradient(flat, std::vector<double>(dim, 0.0), cfg);
  worst = std::max(worst, std::abs(lg.bce / 24 - std::numbers::ln2));
  worst = std::max(worst, std::abs(lg.cl / 4 - std::log(6.0)));

  Rng rng(4004);
  double min_cl = 1.0;
  for (int k = 0; k < 1000; ++k) {
    LinearScorer s = zero;
    for (auto& w : s.weights) w = 4.0 * (rng.uniform() - 0.5);
    std::vector<FeatureVector> g(rng.between(2, 8), FeatureVector(dim));
    for (auto& v : g)
      for (auto& x : v) x = rng.uniform();
    min_cl = std::min(min_cl, cl_loss(g, s, cfg.tau));
  }
  return {worst <= kLossTol && min_cl >= 0.0,
          fmt::format("worst identity error {:.3e}, min CL {:.3e}", worst, min_cl)};
}

Outcome c5() {
  const auto ds = generate_synthetic(SynthSpec{});
  const auto labels = label_dataset(ds);
  std::vector<ScoreSet> scores;
  for (const auto& l : labels) scores.push_back(label_scores(l));
  std::vector<Prediction> preds;
  const ProximityReader reader;
  for (std::size_t k = 0; k < ds.questions.size(); ++k) {
    const auto& q = ds.questions[k];
    preds.push_back(answer_question(q, ds.table_for(q), ds.passages, scores[k], reader));
  }
  const auto r = evaluate(preds, ds, labels, scores);
  const bool ok = r.r_at_1.at("multi") == 1.0 && r.in_table.em == 1.0 &&
                  r.in_passage.em >= kOracleInPassageEmFloor;
  return {ok, fmt::format("multi R@1 {:.3f}, In-Table EM {:.3f}, In-Passage EM {:.3f}",
                          r.r_at_1.at("multi"), r.in_table.em, r.in_passage.em)};
}

Outcome c6() {
  const auto ds = generate_synthetic(SynthSpec{});
  const auto labels = label_dataset(ds);
  TrainConfig cfg;
  cfg.seed = kTrainSeed;
  const auto scorer = train(ds, labels, cfg);
  const auto a = ablate(ds, labels, scorer, ProximityReader(), {kAllModes.begin(), kAllModes.end()});
  const double multi = a.at(Mode::Multi).total.em;
  const std::pair<Mode, double> refs[] = {{Mode::Col, kRefMarginCol},
                                          {Mode::Row, kRefMarginRow},
                                          {Mode::Cell, kRefMarginCell},
                                          {Mode::Link, kRefMarginLink}};
  bool ok = a.at(Mode::Cell).in_passage.em == 0.0 && a.at(Mode::Cell).in_passage.n > 0;
  std::string detail = fmt::format("multi {:.3f}", multi);
  for (const auto& [m, ref] : refs) {
    const double margin = multi - a.at(m).total.em;
    ok = ok && margin > 0.0 && margin >= ref - kMarginSlack;
    detail += fmt::format(", {} {:.3f}", to_string(m), a.at(m).total.em);
  }
  detail += fmt::format(", cell In-Passage EM {:.3f}", a.at(Mode::Cell).in_passage.em);
  return {ok, detail};
}

Outcome c7() {
  const auto root = oracle::temp_dir("acceptance-determinism");
  const auto ds = (root / "d.json").string();
  if (cli({"gensynth", "--dataset", ds, "--seed", "7", "--n-questions", "60"}) != 0) {
    return {false, "gensynth failed"};
  }
  const std::vector<std::string> names = {"labels.jsonl", "model.json", "predictions.jsonl", "metrics.json"};
  std::vector<std::string> first;
  for (int run = 0; run < 2; ++run) {
    const auto dir = root / fmt::format("run{}", run);
    fs::create_directories(dir);
    const std::vector<std::string> files = {"--dataset", ds, "--labels", (dir / names[0]).string(),
                                            "--model", (dir / names[1]).string(), "--predictions",
                                            (dir / names[2]).string(), "--metrics", (dir / names[3]).string()};
    for (std::string cmd : {"label", "train", "predict", "eval"}) {
      std::vector<std::string> args{cmd};
      args.insert(args.end(), files.begin(), files.end());
      if (cmd == "train") args.insert(args.end(), {"--seed", "11"});
      if (cli(args) != 0) return {false, fmt::format("{} failed", cmd)};
    }
    for (std::size_t k = 0; k < names.size(); ++k) {
      const auto bytes = slurp(dir / names[k]);
      if (run == 0) {
        first.push_back(bytes);
      } else if (bytes != first[k] || bytes.empty()) {
        return {false, fmt::format("{} differs", names[k])};
      }
    }
  }
  return {true, "labels, model, predictions and metrics byte-identical"};
}

Outcome c8() {
  using V = std::vector<std::string>;
  bool ok = std::abs(token_f1("Mississippi River", V{"the Mississippi"}) - 2.0 / 3.0) <= 1e-9;
  ok = ok && exact_match("The Beatles!", V{"beatles"}) == 1 && token_f1("The Beatles!", V{"beatles"}) == 1.0;
  ok = ok && exact_match("Beatle", V{"beatles"}) == 0 && token_f1("", V{"x"}) == 0.0;

  Rng rng(8008);
  const V words = {"red", "Red.", "the", "sea", "blue", "a", "(x)"};
  auto phrase = [&] {
    std::string s;
    for (std::size_t n = rng.below(4); n > 0; --n) s += words[rng.below(words.size())] + " ";
    return s;
  };
  for (int k = 0; k < 2000 && ok; ++k) {
    const std::string p = phrase(), g = phrase();
    if (exact_match(p, V{g}) == 1) ok = token_f1(p, V{g}) == 1.0;
  }

  // Weighted mean of the two splits, on a mixed corpus with arbitrary scores.
  SynthSpec spec;
  spec.n_questions = 50;
  spec.in_table_fraction = 0.3;
  spec.seed = 8;
  const auto ds = generate_synthetic(spec);
  const auto labels = label_dataset(ds);
  std::vector<ScoreSet> scores;
  std::vector<Prediction> preds;
  for (std::size_t k = 0; k < ds.questions.size(); ++k) {
    auto s = label_scores(labels[k]);
    for (auto& [id, v] : s.scores) v = oracle::open_unit(rng);
    const auto& q = ds.questions[k];
    preds.push_back(answer_question(q, ds.table_for(q), ds.passages, s, ProximityReader()));
    scores.push_back(std::move(s));
  }
  const auto r = evaluate(preds, ds, labels, scores);
  const double nt = static_cast<double>(r.in_table.n), np = static_cast<double>(r.in_passage.n);
  ok = ok && r.total.em == (nt * r.in_table.em + np * r.in_passage.em) / (nt + np);
  ok = ok && r.total.f1 == (nt * r.in_table.f1 + np * r.in_passage.f1) / (nt + np);
  return {ok, fmt::format("F1 2/3 case, EM implies F1 = 1, weighted total over {} + {}", r.in_table.n,
                          r.in_passage.n)};
}

Outcome c9() {
  Rng rng(9009);
  std::size_t changed = 0;
  for (int k = 0; k < 1000; ++k) {
    const auto in = oracle::random_instance(rng, 20, 4, [](Rng& r) { return r.below(1025) / 1024.0; });
    const auto base = navigate(in.scores, in.table);
    auto shifted = in.scores;
    for (auto& [id, s] : shifted.scores)
      if (id.granularity == Granularity::Col) s += kShift;
    const auto nav = navigate(shifted, in.table);
    if (nav.answer_type != base.answer_type || nav.cell != base.cell || nav.link_index != base.link_index) {
      ++changed;
    }
  }
  return {changed == 0, fmt::format("1000 instances, shift {}, {} changed", kShift, changed)};
}

Outcome c10() {
  fs::path path = "data/hybridqa_dev.json";
  if (const char* env = std::getenv("HQA_HYBRIDQA_DEV")) path = env;
  if (!fs::exists(path)) {
    Outcome o;
    o.skipped = true;
    o.detail = fmt::format("{} not present", path.string());
    return o;
  }
  RunConfig cfg;
  cfg.dataset = path;
  std::ostringstream out;
  if (cmd_ingest(cfg, out) != 0) return {false, "ingest failed"};
  const std::string expected = "questions 3466\nin_table 1349\nin_passage 2025\nuntyped 92\n";
  const auto got = out.str();
  const auto at = got.find("questions ");
  const bool ok = at != std::string::npos && got.substr(at) == expected;
  std::string flat = got.substr(at == std::string::npos ? 0 : at);
  std::replace(flat.begin(), flat.end(), '\n', ' ');
  return {ok, flat};
}

}  // namespace

int main() {
  spdlog::set_level(spdlog::level::warn);
  report("C1", "fusion equals exhaustive recomputation", 5, c1);
  report("C2", "labels equal brute-force containment scan", 5, c2);
  report("C3", "analytic gradient matches central differences", 10, c3);
  report("C4", "loss identities at zero weights", 0, c4);
  report("C5", "oracle-score end to end", 0, c5);
  report("C6", "multi-granularity beats every single granularity", 60, c6);
  report("C7", "byte-identical reruns", 0, c7);
  report("C8", "metric hand cases", 0, c8);
  report("C9", "column-shift invariance of navigation", 0, c9);
  report("C10", "HybridQA dev split counts", 0, c10);
  return failures == 0 ? 0 : 1;
}
