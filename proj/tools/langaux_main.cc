// Copyright 2026 The langaux Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: corpus parsing, statistics, vocabulary selection,
// label export, gradient checks and toy-world experiments.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "langaux/corpus.h"
#include "langaux/gradcheck_suite.h"
#include "langaux/json_io.h"
#include "langaux/labels.h"
#include "langaux/lexicon.h"
#include "langaux/ontology.h"
#include "langaux/parser.h"
#include "langaux/text.h"
#include "langaux/toy_train.h"

namespace langaux {
namespace {

// Error raised by a named pipeline stage.
class StageError : public std::runtime_error {
 public:
  StageError(const std::string &stage, const std::string &what)
      : std::runtime_error(stage + ": " + what) {}
};

template <typename F>
auto Stage(const std::string &name, F f) {
  try {
    return f();
  } catch (const StageError &) {
    throw;
  } catch (const std::exception &e) {
    throw StageError(name, e.what());
  }
}

struct Options {
  std::string input;
  std::string output;
  std::string lexicons;
  std::string vocab;
  std::string dep_matrix;
  std::string classes;
  long rel_threshold = 500;
  long attr_threshold = 100;
  double alpha = 0.1;
  double beta = 0.05;
  double gamma = 0.05;
  std::string fusion = "concat";
  uint64_t seed = 0;
  int seeds = 0;
  bool mask_undetermined = true;
  int threads = 1;
  int steps = 2000;
  int descriptions = ToyTrainConfig{}.descriptions_per_scene;
  double learning_rate = 0.05;
  int relations = 8;
  std::string mode = "assisted";
  std::vector<int> vocab_sizes = {5, 8, 16};
  bool attribute_objectness = true;
};

// Output sink: a file when a path is given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string &path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw StageError("output", "cannot open " + path);
  }
  std::ostream &stream() { return file_ ? *file_ : std::cout; }
  void Finish() {
    stream().flush();
    if (!stream()) throw StageError("output", "write failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void RequireFile(const std::string &path, const char *flag) {
  if (path.empty()) return;
  std::ifstream f(path);
  if (!f) throw StageError("config", std::string(flag) + " path not readable: " + path);
}

ParserLexicons LoadLexicons(const Options &o) {
  return Stage("lexicons", [&] {
    return o.lexicons.empty() ? ParserLexicons::Default()
                              : ParserLexicons::FromFile(o.lexicons);
  });
}

CorpusLoadResult LoadInput(const Options &o) {
  if (o.input.empty()) throw StageError("config", "--input is required");
  CorpusLoadResult corpus = Stage("corpus", [&] { return LoadCorpus(o.input); });
  if (corpus.skipped > 0) {
    std::cerr << "skipped " << corpus.skipped << " malformed record(s)\n";
  }
  return corpus;
}

// Applies fn to every record on a worker pool and writes results in input
// order, a chunk at a time.
void ProcessOrdered(const std::vector<CorpusRecord> &records, int threads,
                    const std::function<std::string(const CorpusRecord &)> &fn,
                    std::ostream &out) {
  constexpr size_t kChunk = 512;
  std::vector<std::string> buffer;
  for (size_t start = 0; start < records.size(); start += kChunk) {
    const size_t end = std::min(records.size(), start + kChunk);
    buffer.assign(end - start, std::string());
    std::atomic<size_t> next{start};
    std::exception_ptr error;
    std::mutex error_mu;
    auto worker = [&] {
      for (size_t i = next++; i < end; i = next++) {
        try {
          buffer[i - start] = fn(records[i]);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    const int n = std::max(1, std::min<int>(threads, static_cast<int>(end - start)));
    for (int t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (std::thread &t : pool) t.join();
    if (error) std::rethrow_exception(error);
    for (const std::string &line : buffer) out << line << '\n';
  }
}

Json RecordHeader(const CorpusRecord &r) {
  return Json{{"scene_id", r.scene_id},
              {"object_id", r.object_id},
              {"object_name", r.object_name},
              {"description", r.description}};
}

int RunParse(const Options &o) {
  const Parser parser(LoadLexicons(o));
  const CorpusLoadResult corpus = LoadInput(o);
  Output out(o.output);
  Stage("parse", [&] {
    ProcessOrdered(
        corpus.records, o.threads,
        [&](const CorpusRecord &r) {
          Description d = NormalizeAndTokenize(r.description, r.object_name);
          Json j = RecordHeader(r);
          j["graph"] = ToJson(parser.Parse(parser.ResolveCoreference(d)));
          return j.dump();
        },
        out.stream());
    return 0;
  });
  out.Finish();
  return 0;
}

CorpusStats CollectStats(const Options &o, const Parser &parser,
                         const CorpusLoadResult &corpus) {
  return Stage("stats", [&] {
    CorpusStats stats;
    for (const CorpusRecord &r : corpus.records) {
      stats.Add(parser.Parse(
          parser.ResolveCoreference(NormalizeAndTokenize(r.description, r.object_name))));
    }
    return stats;
  });
}

int RunStats(const Options &o) {
  const Parser parser(LoadLexicons(o));
  const CorpusLoadResult corpus = LoadInput(o);
  const CorpusStats stats = CollectStats(o, parser, corpus);
  Json j = ToJson(stats);
  j["skipped_records"] = corpus.skipped;
  Output out(o.output);
  out.stream() << j.dump(2) << '\n';
  out.Finish();
  return 0;
}

std::string VocabularyText(const Vocabulary &v) {
  std::ostringstream s;
  s << "[relations]\n";
  for (const std::string &r : v.relations()) s << r << '\n';
  for (AttributeGroup g : {AttributeGroup::kColor, AttributeGroup::kShape,
                           AttributeGroup::kSize}) {
    s << "\n[attributes." << AttributeGroupName(g) << "]\n";
    for (const std::string &a : v.attributes()) {
      if (v.GroupOf(a) == g) s << a << '\n';
    }
  }
  return s.str();
}

int RunVocab(const Options &o) {
  const ParserLexicons lexicons = LoadLexicons(o);
  const Parser parser(lexicons);
  const CorpusLoadResult corpus = LoadInput(o);
  const CorpusStats stats = CollectStats(o, parser, corpus);
  const Vocabulary vocab = Stage("vocab", [&] {
    return SelectVocabulary(stats.Frequencies(), o.rel_threshold,
                            o.attr_threshold, lexicons);
  });
  Output out(o.output);
  out.stream() << VocabularyText(vocab);
  out.Finish();
  return 0;
}

int RunLabels(const Options &o) {
  const Parser parser(LoadLexicons(o));
  const Vocabulary vocab = Stage("vocab", [&] {
    return o.vocab.empty() ? Vocabulary::Default() : Vocabulary::FromFile(o.vocab);
  });
  const DependencyMatrix dep = Stage("dep-matrix", [&] {
    DependencyMatrix m = o.dep_matrix.empty() ? DependencyMatrix::Default()
                                              : DependencyMatrix::FromFile(o.dep_matrix);
    return m.Reordered(vocab.relations());
  });
  const ClassList classes = Stage("classes", [&] {
    return o.classes.empty() ? ClassList::Default() : ClassList::FromFile(o.classes);
  });
  const LabelContext ctx{&vocab, &dep, &classes};
  const CorpusLoadResult corpus = LoadInput(o);
  Output out(o.output);
  Stage("labels", [&] {
    ProcessOrdered(
        corpus.records, o.threads,
        [&](const CorpusRecord &r) {
          Description d = NormalizeAndTokenize(r.description, r.object_name);
          const SceneGraph g = parser.Parse(parser.ResolveCoreference(d));
          const std::optional<std::string> referent =
              r.object_name.empty() ? std::nullopt
                                    : std::optional<std::string>(r.object_name);
          Json j = RecordHeader(r);
          j["targets"] = ToJson(GenerateTargets(g, referent, ctx));
          return j.dump();
        },
        out.stream());
    return 0;
  });
  out.Finish();
  return 0;
}

int RunGradCheck(const Options &o) {
  const int seeds = o.seeds > 0 ? o.seeds : 20;
  const std::vector<GradCheckCase> cases =
      Stage("gradcheck", [&] { return RunGradCheckSuite(seeds); });
  Output out(o.output);
  bool ok = true;
  for (const GradCheckCase &c : cases) {
    out.stream() << std::left << std::setw(28) << c.name << " worst rel err "
                 << std::scientific << std::setprecision(3) << c.worst
                 << " (tol " << c.tolerance << ", " << c.seeds << " seeds) "
                 << (c.passed() ? "ok" : "FAIL") << '\n';
    ok = ok && c.passed();
  }
  out.Finish();
  if (!ok) {
    std::cerr << "gradcheck: tolerance exceeded\n";
    return 1;
  }
  return 0;
}

ToyTrainConfig ToyConfig(const Options &o) {
  ToyTrainConfig c;
  c.weights = {o.alpha, o.beta, o.gamma};
  c.steps = o.steps;
  c.descriptions_per_scene = o.descriptions;
  c.learning_rate = o.learning_rate;
  c.seed = o.seed;
  c.num_relations = o.relations;
  c.fusion = Stage("config", [&] { return ParseFusionMode(o.fusion); });
  c.loss_options.mode =
      o.mask_undetermined ? UndeterminedMode::kMask : UndeterminedMode::kLiteral;
  c.loss_options.attribute_objectness = o.attribute_objectness;
  if (o.mode == "baseline") {
    c.mode = ToyMode::kBaseline;
    c.weights = {0.0, 0.0, 0.0};
  } else if (o.mode != "assisted") {
    throw StageError("config", "--mode must be baseline or assisted");
  }
  return c;
}

int RunToyTrain(const Options &o) {
  const ToyTrainConfig base = ToyConfig(o);
  const int seeds = std::max(1, o.seeds);
  Json reports = Json::array();
  for (int k = 0; k < seeds; ++k) {
    ToyTrainConfig c = base;
    c.seed = base.seed + k;
    const TrainingReport r = Stage("toy-train", [&] { return TrainToy(c); });
    std::cerr << "seed " << c.seed << ": relation probe " << r.probe.relation
              << ", attribute probe " << r.probe.attribute << '\n';
    reports.push_back(ToJson(r));
  }
  Output out(o.output);
  out.stream() << (seeds == 1 ? reports[0] : reports).dump(1) << '\n';
  out.Finish();
  return 0;
}

void PrintTable(const std::vector<AblationRow> &rows, std::ostream &os) {
  os << std::left << std::setw(30) << "variant" << std::setw(6) << "K_r"
     << std::setw(22) << "relation probe" << std::setw(22) << "attribute probe"
     << "class probe\n";
  for (const AblationRow &r : rows) {
    auto cell = [](double mean, double sd) {
      std::ostringstream s;
      s << std::fixed << std::setprecision(2) << 100 * mean << " +- " << 100 * sd;
      return s.str();
    };
    os << std::left << std::setw(30) << r.variant.name << std::setw(6)
       << r.variant.num_relations << std::setw(22)
       << cell(r.mean.relation, r.stddev.relation) << std::setw(22)
       << cell(r.mean.attribute, r.stddev.attribute)
       << cell(r.mean.class_accuracy, r.stddev.class_accuracy) << '\n';
  }
}

int RunToyAblate(const Options &o) {
  const ToyTrainConfig base = ToyConfig(o);
  const int seeds = o.seeds > 0 ? o.seeds : 5;
  std::vector<AblationVariant> variants = TaskAblationVariants(base);
  for (const AblationVariant &v : VocabularyAblationVariants(base, o.vocab_sizes)) {
    if (v.num_relations != base.num_relations) variants.push_back(v);
  }
  const std::vector<AblationRow> rows = Stage(
      "toy-ablate", [&] { return RunAblation(base, variants, seeds, o.threads); });
  PrintTable(rows, std::cerr);
  Json j = Json::array();
  for (const AblationRow &r : rows) j.push_back(ToJson(r));
  Output out(o.output);
  out.stream() << j.dump(1) << '\n';
  out.Finish();
  return 0;
}

int Main(int argc, char **argv) {
  CLI::App app{"Scene-graph parsing, auxiliary labels and toy experiments"};
  app.require_subcommand(1);
  Options o;

  auto add_io = [&](CLI::App *cmd) {
    cmd->add_option("--input", o.input, "Corpus JSON (ScanRefer layout)");
    cmd->add_option("--output", o.output, "Output path (default stdout)");
  };
  auto add_lexicons = [&](CLI::App *cmd) {
    cmd->add_option("--lexicons", o.lexicons, "Parser lexicon file");
  };
  auto add_threads = [&](CLI::App *cmd) {
    cmd->add_option("--threads", o.threads, "Worker threads")
        ->check(CLI::PositiveNumber);
  };
  auto add_weights = [&](CLI::App *cmd) {
    cmd->add_option("--alpha", o.alpha, "Text loss weight")->check(CLI::NonNegativeNumber);
    cmd->add_option("--beta", o.beta, "Relation loss weight")->check(CLI::NonNegativeNumber);
    cmd->add_option("--gamma", o.gamma, "Attribute loss weight")->check(CLI::NonNegativeNumber);
  };
  auto add_toy = [&](CLI::App *cmd) {
    add_weights(cmd);
    cmd->add_option("--fusion", o.fusion, "Fusion mode")
        ->check(CLI::IsMember({"concat", "attn"}));
    cmd->add_option("--seed", o.seed, "Base seed");
    cmd->add_option("--seeds", o.seeds, "Number of consecutive seeds")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--mask-undetermined", o.mask_undetermined,
                    "Mask 0.5 relation targets (false: literal 0.5 targets)");
    cmd->add_option("--steps", o.steps, "Gradient steps")->check(CLI::NonNegativeNumber);
    cmd->add_option("--lr", o.learning_rate, "Learning rate")->check(CLI::PositiveNumber);
    cmd->add_option("--descriptions", o.descriptions, "Descriptions per training scene")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--relations", o.relations, "Relation vocabulary size K_r")
        ->check(CLI::Range(1, 16));
    cmd->add_option("--attribute-objectness", o.attribute_objectness,
                    "Apply the objectness mask to attribute candidates");
    cmd->add_option("--output", o.output, "Output path (default stdout)");
  };

  CLI::App *parse = app.add_subcommand("parse", "Corpus JSON to scene-graph JSONL");
  add_io(parse);
  add_lexicons(parse);
  add_threads(parse);

  CLI::App *stats = app.add_subcommand("stats", "Corpus statistics as JSON");
  add_io(stats);
  add_lexicons(stats);

  CLI::App *vocab = app.add_subcommand("vocab", "Select the classifier vocabulary");
  add_io(vocab);
  add_lexicons(vocab);
  vocab->add_option("--rel-threshold", o.rel_threshold, "Minimum relation count (exclusive)");
  vocab->add_option("--attr-threshold", o.attr_threshold, "Minimum attribute count (exclusive)");

  CLI::App *labels = app.add_subcommand("labels", "Corpus JSON to auxiliary-target JSONL");
  add_io(labels);
  add_lexicons(labels);
  add_threads(labels);
  labels->add_option("--vocab", o.vocab, "Vocabulary file");
  labels->add_option("--dep-matrix", o.dep_matrix, "Relation dependency matrix");
  labels->add_option("--classes", o.classes, "Object class list");

  CLI::App *gradcheck = app.add_subcommand("gradcheck", "Finite-difference gradient checks");
  gradcheck->add_option("--seeds", o.seeds, "Random instances per check")
      ->check(CLI::PositiveNumber);
  gradcheck->add_option("--output", o.output, "Output path (default stdout)");

  CLI::App *toy_train = app.add_subcommand("toy-train", "Train on the toy world");
  add_toy(toy_train);
  toy_train->add_option("--mode", o.mode, "baseline or assisted")
      ->check(CLI::IsMember({"baseline", "assisted"}));

  CLI::App *toy_ablate = app.add_subcommand("toy-ablate", "Auxiliary-task and vocabulary ablation");
  add_toy(toy_ablate);
  add_threads(toy_ablate);
  toy_ablate->add_option("--vocab-sizes", o.vocab_sizes, "K_r values to sweep")
      ->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    RequireFile(o.input, "--input");
    RequireFile(o.lexicons, "--lexicons");
    RequireFile(o.vocab, "--vocab");
    RequireFile(o.dep_matrix, "--dep-matrix");
    RequireFile(o.classes, "--classes");
    if (parse->parsed()) return RunParse(o);
    if (stats->parsed()) return RunStats(o);
    if (vocab->parsed()) return RunVocab(o);
    if (labels->parsed()) return RunLabels(o);
    if (gradcheck->parsed()) return RunGradCheck(o);
    if (toy_train->parsed()) return RunToyTrain(o);
    if (toy_ablate->parsed()) return RunToyAblate(o);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace
}  // namespace langaux

int main(int argc, char **argv) { return langaux::Main(argc, argv); }
