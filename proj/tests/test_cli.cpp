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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "picoir/cli.hpp"

namespace fs = std::filesystem;
using picoir::cli::kExitData;
using picoir::cli::kExitOk;
using picoir::cli::kExitUsage;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "picoir");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = picoir::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Fresh scratch directory holding a 60-document synthetic corpus.
struct Workspace {
  fs::path dir;
  std::string corpus;
  Workspace() {
    dir = fs::temp_directory_path() / "picoir-cli-test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    corpus = path("corpus.jsonl");
    REQUIRE(run({"synth-corpus", "--out", corpus, "--documents", "60", "--withheld", "10"})
                .code == kExitOk);
  }
  ~Workspace() { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

}  // namespace

TEST_CASE("usage errors exit 1") {
  CHECK(run({}).code == kExitUsage);
  const auto unknown = run({"frobnicate"});
  CHECK(unknown.code == kExitUsage);
  CHECK(unknown.err.find("Usage") != std::string::npos);
  CHECK(run({"gen-queries"}).code == kExitUsage);
  CHECK(run({"gen-queries", "--in", "x", "--out", "y", "--bogus"}).code == kExitUsage);
  CHECK(run({"search", "--corpus", "x", "--scorer", "bm25"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("data errors exit 2") {
  Workspace ws;
  CHECK(run({"gen-queries", "--in", ws.path("missing.jsonl"), "--out", ws.path("q")}).code ==
        kExitData);
  const auto r = run({"extract", "--text", "Adults with asthma received inhaled steroids."});
  CHECK(r.code == kExitData);
  CHECK(r.err.find("no PICO model") != std::string::npos);
  std::ofstream(ws.path("bad.jsonl")) << "{not json}\n";
  CHECK(run({"train-retrieval", "--corpus", ws.path("bad.jsonl"), "--out", ws.path("m")})
            .code == kExitData);
  CHECK(run({"sweep-baseline", "--corpus", ws.corpus, "--instances", ws.path("none")}).code ==
        kExitData);
}

TEST_CASE("gen-queries is byte-identical per seed") {
  Workspace ws;
  for (const char* name : {"a.jsonl", "b.jsonl"}) {
    REQUIRE(run({"gen-queries", "--in", ws.corpus, "--seed", "7", "--out", ws.path(name)})
                .code == kExitOk);
  }
  CHECK(slurp(ws.path("a.jsonl")) == slurp(ws.path("b.jsonl")));
  REQUIRE(run({"gen-queries", "--in", ws.corpus, "--seed", "8", "--out", ws.path("c.jsonl")})
              .code == kExitOk);
  CHECK(slurp(ws.path("a.jsonl")) != slurp(ws.path("c.jsonl")));
}

TEST_CASE("config files supply option values") {
  Workspace ws;
  std::ofstream(ws.path("run.ini")) << "seed=7\n[gen-queries]\nin=" << ws.corpus
                                    << "\nout=" << ws.path("cfg.jsonl") << "\n";
  REQUIRE(run({"--config", ws.path("run.ini"), "gen-queries"}).code == kExitOk);
  REQUIRE(run({"gen-queries", "--in", ws.corpus, "--seed", "7", "--out", ws.path("flag.jsonl")})
              .code == kExitOk);
  CHECK(slurp(ws.path("cfg.jsonl")) == slurp(ws.path("flag.jsonl")));
}

TEST_CASE("training and evaluation are byte-identical on re-run") {
  Workspace ws;
  REQUIRE(run({"gen-queries", "--in", ws.corpus, "--out", ws.path("q.jsonl")}).code == kExitOk);
  for (const char* tag : {"1", "2"}) {
    const std::string t(tag);
    REQUIRE(run({"train-retrieval", "--corpus", ws.corpus, "--instances", ws.path("q.jsonl"),
                 "--out", ws.path("rel" + t + ".json"), "--loss-out",
                 ws.path("loss" + t + ".json"), "--epochs", "5"})
                .code == kExitOk);
    REQUIRE(run({"eval-retrieval", "--corpus", ws.corpus, "--runs", "2", "--epochs", "5",
                 "--rank-k", "10", "--out", ws.path("eval" + t + ".json")})
                .code == kExitOk);
    REQUIRE(run({"sweep-baseline", "--corpus", ws.corpus, "--instances", ws.path("q.jsonl"),
                 "--out", ws.path("sweep" + t + ".json")})
                .code == kExitOk);
    REQUIRE(run({"train-pico", "--corpus", ws.corpus, "--epochs", "2", "--out",
                 ws.path("pico" + t + ".json")})
                .code == kExitOk);
    REQUIRE(run({"eval-pico", "--corpus", ws.corpus, "--model", ws.path("pico" + t + ".json"),
                 "--out", ws.path("picoeval" + t + ".json")})
                .code == kExitOk);
  }
  for (const char* stem : {"rel", "loss", "eval", "sweep", "pico", "picoeval"}) {
    CAPTURE(stem);
    const std::string s(stem);
    CHECK(slurp(ws.path(s + "1.json")) == slurp(ws.path(s + "2.json")));
    CHECK_FALSE(slurp(ws.path(s + "1.json")).empty());
  }
  const auto report = nlohmann::json::parse(slurp(ws.path("eval1.json")));
  CHECK(report["runs"].size() == 2);
  CHECK(report["aggregate"]["mean_std"].contains("accuracy"));
}

TEST_CASE("eval-pico on a withheld list and extract with a model") {
  Workspace ws;
  const std::string ebm = ws.path("ebm");
  REQUIRE(run({"synth-corpus", "--ebm-dir", ebm, "--documents", "60", "--withheld", "10"})
              .code == kExitOk);
  const std::string imported = ws.path("imported.jsonl");
  const std::string withheld = ws.path("withheld.txt");
  REQUIRE(run({"ingest", "--root", ebm, "--out", imported, "--withheld-out", withheld}).code ==
          kExitOk);
  std::ifstream in(withheld);
  std::size_t lines = 0;
  for (std::string l; std::getline(in, l);) ++lines;
  CHECK(lines == 10);
  REQUIRE(run({"train-pico", "--corpus", imported, "--withheld", withheld, "--epochs", "3",
               "--out", ws.path("pico.json")})
              .code == kExitOk);
  const auto e = run({"eval-pico", "--corpus", imported, "--withheld", withheld, "--model",
                      ws.path("pico.json")});
  REQUIRE(e.code == kExitOk);
  CHECK(e.out.find("documents 10") != std::string::npos);
  const auto x = run({"extract", "--model", ws.path("pico.json"), "--text",
                      "Adults with heart failure received aspirin."});
  REQUIRE(x.code == kExitOk);
  const auto j = nlohmann::json::parse(x.out);
  CHECK(j.contains("population"));
  CHECK(j["doc_id"].is_null());
}

TEST_CASE("ingest reports partial documents") {
  Workspace ws;
  const auto r = run({"ingest", "--root", std::string(PICOIR_TEST_DATA) + "/ebm_mini", "--out",
                      ws.path("mini.jsonl"), "--report", ws.path("report.jsonl")});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out == "imported 3 documents, 1 issues, 1 withheld\n");
  CHECK(slurp(ws.path("report.jsonl")).find("1003") != std::string::npos);
}

TEST_CASE("search prints ranked results") {
  Workspace ws;
  const std::string corpus = ws.path("with-prostate.jsonl");
  REQUIRE(run({"synth-corpus", "--out", corpus, "--documents", "60", "--prostate"}).code ==
          kExitOk);
  const auto r = run({"search", "--corpus", corpus, "--query",
                      "locally advanced prostate cancer radiotherapy", "--k", "3"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.rfind("1\t", 0) == 0);
  CHECK(r.out.find("prostate-adt-rt") != std::string::npos);
  const auto j = run({"search", "--corpus", corpus, "--population", "prostate cancer", "--json"});
  REQUIRE(j.code == kExitOk);
  CHECK(nlohmann::json::parse(j.out)["scorer"] == "cosine");
  CHECK(run({"search", "--corpus", corpus}).code == kExitUsage);
  CHECK(run({"search", "--corpus", corpus, "--query", "x", "--scorer", "learned"}).code ==
        kExitData);
}
