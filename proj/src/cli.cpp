// Copyright 2026 The picoir Authors.
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

#include "picoir/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "picoir/corpus.hpp"
#include "picoir/errors.hpp"
#include "picoir/experiments.hpp"
#include "picoir/fixture.hpp"
#include "picoir/pico.hpp"
#include "picoir/querygen.hpp"
#include "picoir/retrieval.hpp"
#include "picoir/service.hpp"

namespace picoir::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  f << content;
  f.close();
  if (!f) throw Error("cannot write " + path.string());
}

void write_json(const fs::path& path, const json& j) { write_file(path, j.dump(2) + "\n"); }

std::vector<std::string> read_id_list(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read " + path.string());
  std::vector<std::string> ids;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (!line.empty()) ids.push_back(line);
  }
  return ids;
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::vector<double> parse_thresholds(const std::string& list) {
  std::vector<double> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || !(v >= 0.0 && v <= 1.0)) {
      throw InvalidArgument("threshold '" + item + "' is not a fraction in [0, 1]");
    }
    out.push_back(v);
  }
  if (out.empty()) throw InvalidArgument("empty threshold list");
  return out;
}

// Splits a corpus by an id list: (listed, rest).
std::pair<Corpus, Corpus> partition(const Corpus& corpus, const std::vector<std::string>& ids) {
  const std::set<std::string> wanted(ids.begin(), ids.end());
  std::pair<Corpus, Corpus> out;
  for (const auto& d : corpus) (wanted.count(d.id) ? out.first : out.second).push_back(d);
  return out;
}

struct HyperFlags {
  std::size_t epochs;
  double learning_rate;
  double l2;
  std::size_t batch_size;

  void add_to(CLI::App* app) {
    app->add_option("--epochs", epochs, "training epochs")->capture_default_str();
    app->add_option("--lr", learning_rate, "SGD learning rate")->capture_default_str();
    app->add_option("--l2", l2, "L2 penalty")->capture_default_str();
    app->add_option("--batch-size", batch_size, "mini-batch size")->capture_default_str();
  }
  TrainHyper hyper(std::uint64_t seed) const {
    return TrainHyper{epochs, learning_rate, l2, seed, batch_size};
  }
};

std::optional<encoder::EmbeddingTable> maybe_embeddings(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return encoder::load_embeddings(fs::path(path));
}

void print_retrieval_table(std::ostream& out, const experiments::RetrievalReport& r) {
  out << "run  accuracy  f1(-)   f1(+)   baseline(best@t)\n";
  for (const auto& run : r.runs) {
    const auto& m = run.report.metrics;
    const auto& b = run.baseline.best_row();
    out << run.run << "    " << fixed4(m.accuracy) << "    " << fixed4(m.per_class[0].f1)
        << "  " << fixed4(m.per_class[1].f1) << "  " << fixed4(b.accuracy) << "@"
        << fixed4(b.threshold) << "\n";
  }
  const auto& ms = r.aggregate.mean_std;
  out << "mean accuracy " << fixed4(ms.at("accuracy").mean) << " +- "
      << fixed4(ms.at("accuracy").std) << ", f1(+) " << fixed4(ms.at("f1_positive").mean)
      << " +- " << fixed4(ms.at("f1_positive").std) << ", best baseline "
      << fixed4(ms.at("baseline_best_accuracy").mean) << "\n";
  const auto& c = r.runs.back().report.confusion;
  out << "last run confusion (rows true -/+, cols predicted -/+): " << c.at(0, 0) << " "
      << c.at(0, 1) << " / " << c.at(1, 0) << " " << c.at(1, 1) << "\n";
}

void print_pico_table(std::ostream& out, const pico::PicoReport& r) {
  out << "documents " << r.documents << ", token accuracy "
      << fixed4(r.tokens.metrics.accuracy) << "\n";
  out << "            precision recall  f1\n";
  out << "micro       " << fixed4(r.micro.precision) << "    " << fixed4(r.micro.recall) << "  "
      << fixed4(r.micro.f1) << "\n";
  out << "macro       " << fixed4(r.macro.precision) << "    " << fixed4(r.macro.recall) << "  "
      << fixed4(r.macro.f1) << "\n";
  out << "span exact  " << fixed4(r.spans.precision) << "    " << fixed4(r.spans.recall) << "  "
      << fixed4(r.spans.f1) << "\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app("Clinical-trial abstract retrieval and PICO extraction", "picoir");
  app.require_subcommand(1);
  app.fallthrough();
  std::uint64_t seed = 1;
  app.add_option("--seed", seed, "random seed")->capture_default_str();
  app.set_config("--config", "", "INI or TOML file with option values");

  // ingest
  auto* ingest = app.add_subcommand("ingest", "import an EBM-NLP release to JSONL");
  std::string in_root, out_path, tier = "expert", layout = "starting_spans";
  std::string report_path, withheld_out;
  ingest->add_option("--root", in_root, "release root directory")->required();
  ingest->add_option("--out", out_path, "output corpus JSONL")->required();
  ingest->add_option("--tier", tier, "annotation tier preference")
      ->check(CLI::IsMember({"expert", "crowd"}))
      ->capture_default_str();
  ingest->add_option("--layout", layout, "annotation layout")
      ->check(CLI::IsMember({"starting_spans", "hierarchical_labels"}))
      ->capture_default_str();
  ingest->add_option("--report", report_path, "JSONL report of skipped or partial documents");
  ingest->add_option("--withheld-out", withheld_out, "write ids of expert-annotated documents");

  // synth-corpus
  auto* synth = app.add_subcommand("synth-corpus", "generate a synthetic annotated corpus");
  std::string ebm_dir, labels = "gold";
  fixture::SyntheticOptions synth_opts;
  bool with_prostate = false;
  synth->add_option("--out", out_path, "output corpus JSONL");
  synth->add_option("--ebm-dir", ebm_dir, "also write an EBM-NLP style directory tree");
  synth->add_option("--documents", synth_opts.documents, "number of documents")
      ->capture_default_str();
  synth->add_option("--withheld", synth_opts.withheld, "expert-annotated test documents")
      ->capture_default_str();
  synth->add_option("--noise", synth_opts.crowd_noise, "crowd label noise scale")
      ->capture_default_str();
  synth->add_option("--labels", labels, "labels written to JSONL")
      ->check(CLI::IsMember({"gold", "crowd"}))
      ->capture_default_str();
  synth->add_flag("--prostate", with_prostate, "append the prostate cancer trial document");

  // gen-queries
  auto* genq = app.add_subcommand("gen-queries", "generate query instances from a corpus");
  std::string in_path, excluded_out;
  genq->add_option("--in", in_path, "corpus JSONL")->required();
  genq->add_option("--out", out_path, "instance JSONL")->required();
  genq->add_option("--excluded-out", excluded_out, "write ids of ineligible documents");

  // train-retrieval
  auto* trainr = app.add_subcommand("train-retrieval", "train the relevance model");
  std::string corpus_path, instances_path, backend = "tfidf", embeddings_path, loss_out;
  std::size_t min_df = 1;
  HyperFlags rhyper{30, 0.5, 1e-4, 32};
  trainr->add_option("--corpus", corpus_path, "corpus JSONL")->required();
  trainr->add_option("--instances", instances_path,
                     "instance JSONL; generated from the corpus when omitted");
  trainr->add_option("--out", out_path, "model JSON")->required();
  trainr->add_option("--backend", backend, "pair feature backend")
      ->check(CLI::IsMember({"tfidf", "dense"}))
      ->capture_default_str();
  trainr->add_option("--embeddings", embeddings_path, "dense embedding JSONL");
  trainr->add_option("--min-df", min_df, "vocabulary document-frequency cut-off")
      ->capture_default_str();
  trainr->add_option("--loss-out", loss_out, "write the per-epoch loss trace");
  rhyper.add_to(trainr);

  // eval-retrieval
  auto* evalr = app.add_subcommand("eval-retrieval", "repeated-split retrieval evaluation");
  experiments::RetrievalConfig rconfig;
  std::string sweep = "0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1";
  HyperFlags ehyper{30, 0.5, 1e-4, 32};
  std::size_t train_count = 0;
  evalr->add_option("--corpus", corpus_path, "corpus JSONL")->required();
  evalr->add_option("--out", out_path, "report JSON")->required();
  evalr->add_option("--runs", rconfig.runs, "number of random splits")->capture_default_str();
  evalr->add_option("--train-count", train_count,
                    "training documents per split; default 80% of the corpus");
  evalr->add_option("--threshold", rconfig.threshold, "positive decision threshold")
      ->capture_default_str();
  evalr->add_option("--rank-k", rconfig.rank_k,
                    "also report top-k source recall of positive test queries (0: off)")
      ->capture_default_str();
  evalr->add_option("--backend", backend, "pair feature backend")
      ->check(CLI::IsMember({"tfidf", "dense"}))
      ->capture_default_str();
  evalr->add_option("--embeddings", embeddings_path, "dense embedding JSONL");
  evalr->add_option("--min-df", min_df, "vocabulary document-frequency cut-off")
      ->capture_default_str();
  evalr->add_option("--sweep", sweep, "comma-separated baseline thresholds")
      ->capture_default_str();
  ehyper.add_to(evalr);

  // train-pico
  auto* trainp = app.add_subcommand("train-pico", "train the PICO token tagger");
  std::string withheld_path, token_backend = "onehot";
  pico::TokenFeatureConfig tconfig;
  bool no_casing = false, no_position = false;
  HyperFlags phyper{5, 0.1, 1e-4, 32};
  trainp->add_option("--corpus", corpus_path, "corpus JSONL")->required();
  trainp->add_option("--out", out_path, "tagger JSON")->required();
  trainp->add_option("--withheld", withheld_path, "ids to exclude from training");
  trainp->add_option("--window", tconfig.window, "neighbours on each side (<= 5)")
      ->capture_default_str();
  trainp->add_flag("--no-casing", no_casing, "drop the casing feature");
  trainp->add_flag("--no-position", no_position, "drop the position features");
  trainp->add_option("--backend", token_backend, "token feature backend")
      ->check(CLI::IsMember({"onehot", "dense"}))
      ->capture_default_str();
  trainp->add_option("--embeddings", embeddings_path, "token embedding JSONL (dense)");
  trainp->add_option("--min-df", tconfig.min_df, "vocabulary document-frequency cut-off")
      ->capture_default_str();
  trainp->add_option("--loss-out", loss_out, "write the per-epoch loss trace");
  phyper.add_to(trainp);

  // eval-pico
  auto* evalp = app.add_subcommand("eval-pico", "token-level PICO evaluation");
  std::string model_path;
  evalp->add_option("--corpus", corpus_path, "corpus JSONL")->required();
  evalp->add_option("--model", model_path, "tagger JSON")->required();
  evalp->add_option("--withheld", withheld_path, "evaluate only these ids");
  evalp->add_option("--embeddings", embeddings_path, "token embedding JSONL (dense)");
  evalp->add_option("--out", out_path, "report JSON");

  // sweep-baseline
  auto* sweepb = app.add_subcommand("sweep-baseline", "keyword-fraction baseline sweep");
  sweepb->add_option("--corpus", corpus_path, "corpus JSONL")->required();
  sweepb->add_option("--instances", instances_path, "instance JSONL")->required();
  sweepb->add_option("--thresholds", sweep, "comma-separated fractions")->capture_default_str();
  sweepb->add_option("--out", out_path, "report JSON");

  // search
  auto* search = app.add_subcommand("search", "rank documents for a query");
  std::string query, population, intervention, comparator, outcome, scorer, pico_model_path;
  std::size_t k = service::kDefaultK;
  double keyword_threshold = service::kDefaultKeywordThreshold;
  bool as_json = false;
  search->add_option("--corpus", corpus_path, "corpus JSONL")->required();
  search->add_option("--model", model_path, "relevance model JSON");
  search->add_option("--pico-model", pico_model_path, "tagger JSON for extraction");
  search->add_option("--embeddings", embeddings_path, "dense embedding JSONL");
  search->add_option("--query", query, "free-text query");
  search->add_option("--population", population, "structured population");
  search->add_option("--intervention", intervention, "structured intervention");
  search->add_option("--comparator", comparator, "structured comparator");
  search->add_option("--outcome", outcome, "structured outcome");
  search->add_option("-k,--k", k, "number of results")->capture_default_str();
  search->add_option("--scorer", scorer, "learned, keyword or cosine")
      ->check(CLI::IsMember({"learned", "keyword", "cosine"}));
  search->add_option("--keyword-threshold", keyword_threshold, "keyword scorer fraction")
      ->capture_default_str();
  search->add_flag("--json", as_json, "print the full JSON response");

  // extract
  auto* extract = app.add_subcommand("extract", "extract PICO spans");
  std::string text, doc_id;
  extract->add_option("--text", text, "abstract text");
  extract->add_option("--doc-id", doc_id, "document id within --corpus");
  extract->add_option("--corpus", corpus_path, "corpus JSONL");
  extract->add_option("--model", model_path, "tagger JSON");
  extract->add_option("--embeddings", embeddings_path, "token embedding JSONL (dense)");

  // serve
  auto* serve = app.add_subcommand("serve", "run the HTTP service");
  service::ServiceConfig sconfig;
  std::string serve_model, serve_pico, serve_embeddings;
  serve->add_option("--corpus", corpus_path, "corpus JSONL")->required();
  serve->add_option("--model", serve_model, "relevance model JSON");
  serve->add_option("--pico-model", serve_pico, "tagger JSON");
  serve->add_option("--embeddings", serve_embeddings, "dense embedding JSONL");
  serve->add_option("--bind", sconfig.bind_address, "bind address")
      ->envname("PICOIR_BIND_ADDRESS")
      ->capture_default_str();
  serve->add_option("--port", sconfig.port, "TCP port")
      ->envname("PICOIR_PORT")
      ->check(CLI::Range(0, 65535))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return kExitUsage;
  }

  try {
    if (ingest->parsed()) {
      corpus::ImportOptions opts;
      opts.tier = tier == "crowd" ? corpus::SourceTier::kCrowd : corpus::SourceTier::kExpert;
      opts.layout = layout == "hierarchical_labels"
                        ? corpus::AnnotationLayout::kHierarchicalLabels
                        : corpus::AnnotationLayout::kStartingSpans;
      const auto result = corpus::import_ebm_nlp(in_root, opts);
      corpus::write_jsonl(fs::path(out_path), result.documents);
      if (!report_path.empty()) corpus::write_report(report_path, result.report);
      if (!withheld_out.empty()) {
        std::string ids;
        for (const auto& id : result.withheld_ids) ids += id + "\n";
        write_file(withheld_out, ids);
      }
      out << "imported " << result.documents.size() << " documents, "
          << result.report.issues.size() << " issues, " << result.withheld_ids.size()
          << " withheld\n";
    } else if (synth->parsed()) {
      if (out_path.empty() && ebm_dir.empty()) {
        throw CLI::RequiredError("--out or --ebm-dir");
      }
      synth_opts.seed = seed;
      const auto docs = fixture::synthesize(synth_opts);
      if (!ebm_dir.empty()) fixture::write_ebm_nlp(ebm_dir, docs);
      if (!out_path.empty()) {
        Corpus c = labels == "crowd" ? fixture::crowd_corpus(docs) : fixture::gold_corpus(docs);
        if (with_prostate) c.push_back(fixture::prostate_trial());
        corpus::write_jsonl(fs::path(out_path), c);
      }
      out << "generated " << docs.size() << " documents\n";
    } else if (genq->parsed()) {
      const Corpus c = corpus::read_jsonl(fs::path(in_path));
      const auto gen = querygen::generate_instances(c, seed);
      querygen::write_instances(fs::path(out_path), gen.instances);
      if (!excluded_out.empty()) {
        std::string ids;
        for (const auto& id : gen.excluded_ids) ids += id + "\n";
        write_file(excluded_out, ids);
      }
      out << "wrote " << gen.instances.size() << " instances from "
          << c.size() - gen.excluded_ids.size() << " eligible documents ("
          << gen.excluded_ids.size() << " excluded)\n";
    } else if (trainr->parsed()) {
      const Corpus c = corpus::read_jsonl(fs::path(corpus_path));
      const auto instances = instances_path.empty()
                                 ? querygen::generate_instances(c, seed).instances
                                 : querygen::read_instances(fs::path(instances_path));
      const auto emb = maybe_embeddings(embeddings_path);
      retrieval::RelevanceModel m;
      if (backend == "dense") {
        if (!emb) throw InvalidArgument("--backend dense needs --embeddings");
        m.encoder = encoder::PairEncoder::dense(*emb);
      } else {
        m.encoder = encoder::PairEncoder::tfidf(encoder::build_vocab(c, min_df));
      }
      const Dataset data = retrieval::featurize(instances, c, m.encoder);
      auto trained = retrieval::train_relevance(data, rhyper.hyper(seed));
      m.model = std::move(trained.model);
      m.save(out_path);
      if (!loss_out.empty()) write_json(loss_out, json(trained.loss_trace));
      out << "trained on " << data.size() << " instances, final loss "
          << fixed6(trained.loss_trace.empty() ? 0.0 : trained.loss_trace.back()) << "\n";
    } else if (evalr->parsed()) {
      const Corpus c = corpus::read_jsonl(fs::path(corpus_path));
      const auto emb = maybe_embeddings(embeddings_path);
      rconfig.seed = seed;
      rconfig.train_count = train_count > 0 ? train_count : c.size() * 4 / 5;
      rconfig.backend = backend == "dense" ? encoder::Backend::kDense : encoder::Backend::kTfidf;
      rconfig.embeddings = emb ? &*emb : nullptr;
      rconfig.hyper = ehyper.hyper(seed);
      rconfig.min_df = min_df;
      rconfig.sweep_thresholds = parse_thresholds(sweep);
      const auto report = experiments::run_retrieval_experiment(c, rconfig);
      write_json(out_path, report.to_json());
      print_retrieval_table(out, report);
    } else if (trainp->parsed()) {
      const Corpus c = corpus::read_jsonl(fs::path(corpus_path));
      const Corpus train =
          withheld_path.empty() ? c : partition(c, read_id_list(withheld_path)).second;
      const auto emb = maybe_embeddings(embeddings_path);
      tconfig.use_casing = !no_casing;
      tconfig.use_position = !no_position;
      tconfig.backend = token_backend == "dense" ? pico::TokenBackend::kDense
                                                 : pico::TokenBackend::kOneHot;
      const auto trained =
          pico::train_pico(train, tconfig, phyper.hyper(seed), emb ? &*emb : nullptr);
      trained.tagger.save(out_path);
      if (!loss_out.empty()) write_json(loss_out, json(trained.loss_trace));
      out << "trained on " << train.size() << " documents, final loss "
          << fixed6(trained.loss_trace.empty() ? 0.0 : trained.loss_trace.back()) << "\n";
    } else if (evalp->parsed()) {
      const Corpus c = corpus::read_jsonl(fs::path(corpus_path));
      const Corpus test =
          withheld_path.empty() ? c : partition(c, read_id_list(withheld_path)).first;
      const auto emb = maybe_embeddings(embeddings_path);
      const auto tagger = pico::PicoTagger::load(model_path, emb ? &*emb : nullptr);
      const auto report = pico::evaluate_pico(tagger, test);
      if (!out_path.empty()) write_json(out_path, report.to_json());
      print_pico_table(out, report);
    } else if (sweepb->parsed()) {
      const Corpus c = corpus::read_jsonl(fs::path(corpus_path));
      const auto instances = querygen::read_instances(fs::path(instances_path));
      const auto thresholds = parse_thresholds(sweep);
      const auto result = experiments::run_baseline_sweep(c, instances, thresholds);
      if (!out_path.empty()) write_json(out_path, result.to_json());
      out << "threshold  accuracy  f1(-)   f1(+)\n";
      for (const auto& row : result.rows) {
        out << fixed4(row.threshold) << "     " << fixed4(row.accuracy) << "    "
            << fixed4(row.f1_negative) << "  " << fixed4(row.f1_positive)
            << (row.best ? "  *" : "") << "\n";
      }
    } else if (search->parsed()) {
      service::ServiceConfig cfg;
      cfg.corpus_path = corpus_path;
      if (!model_path.empty()) cfg.relevance_model_path = model_path;
      if (!pico_model_path.empty()) cfg.pico_model_path = pico_model_path;
      if (!embeddings_path.empty()) cfg.embeddings_path = embeddings_path;
      const auto svc = service::SearchService::load(cfg);
      json body;
      if (!query.empty()) {
        body["free_text"] = query;
      } else {
        body["structured"] = {{"population", population},
                              {"intervention", intervention},
                              {"comparator", comparator},
                              {"outcome", outcome}};
      }
      body["k"] = k;
      body["keyword_threshold"] = keyword_threshold;
      if (!scorer.empty()) body["scorer"] = scorer;
      const auto res = svc->search(body.dump());
      if (res.status == 400) throw CLI::ValidationError(res.body["error"].get<std::string>());
      if (res.status != 200) throw Error(res.body["error"].get<std::string>());
      if (as_json) {
        out << res.body.dump(2) << "\n";
      } else {
        for (const auto& hit : res.body["results"]) {
          out << hit["rank"].get<std::size_t>() << "\t" << fixed6(hit["score"].get<double>())
              << "\t" << hit["doc_id"].get<std::string>() << "\t"
              << hit["title"].get<std::string>() << "\n";
        }
      }
    } else if (extract->parsed()) {
      if (text.empty() == doc_id.empty()) {
        throw CLI::ValidationError("exactly one of --text and --doc-id is required");
      }
      const auto emb = maybe_embeddings(embeddings_path);
      std::optional<pico::PicoTagger> tagger;
      if (!model_path.empty()) tagger = pico::PicoTagger::load(model_path, emb ? &*emb : nullptr);
      if (!text.empty()) {
        if (!tagger) throw DataError("no PICO model loaded; pass --model");
        AnnotatedDocument doc;
        doc.abstract = text;
        doc.tokens = corpus::segment(text);
        doc.labels.assign(doc.tokens.size(), PicoLabel::kNone);
        out << pico::to_json(pico::extract(*tagger, doc)).dump(2) << "\n";
      } else {
        if (corpus_path.empty()) throw CLI::ValidationError("--doc-id needs --corpus");
        const Corpus c = corpus::read_jsonl(fs::path(corpus_path));
        const auto it = std::find_if(c.begin(), c.end(),
                                     [&](const AnnotatedDocument& d) { return d.id == doc_id; });
        if (it == c.end()) throw DataError("unknown document id '" + doc_id + "'");
        const auto result =
            tagger ? pico::extract(*tagger, *it) : pico::extract_spans(it->tokens, it->labels);
        out << pico::to_json(result, it->id).dump(2) << "\n";
      }
    } else if (serve->parsed()) {
      sconfig.corpus_path = corpus_path;
      if (!serve_model.empty()) sconfig.relevance_model_path = serve_model;
      if (!serve_pico.empty()) sconfig.pico_model_path = serve_pico;
      if (!serve_embeddings.empty()) sconfig.embeddings_path = serve_embeddings;
      const auto svc = service::SearchService::load(sconfig);
      service::HttpServer server(*svc);
      const int port = server.bind(sconfig.bind_address, sconfig.port);
      out << "serving " << svc->corpus_size() << " documents on " << sconfig.bind_address << ":"
          << port << std::endl;
      server.listen();
    }
  } catch (const CLI::Error& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitOk;
}

}  // namespace picoir::cli
