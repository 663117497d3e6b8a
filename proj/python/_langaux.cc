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

// Python bindings: a session handle over loaded lexicons with parse, label
// and loss entry points. Records cross the boundary as JSON text.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <memory>
#include <optional>
#include <string>

#include "langaux/aux_losses.h"
#include "langaux/json_io.h"
#include "langaux/labels.h"
#include "langaux/lexicon.h"
#include "langaux/ontology.h"
#include "langaux/parser.h"
#include "langaux/tensor.h"

namespace py = pybind11;

namespace langaux {
namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

struct Session {
  Session(ParserLexicons lexicons, Vocabulary v, DependencyMatrix d, ClassList c)
      : parser(std::move(lexicons)),
        vocab(std::move(v)),
        dep(std::move(d)),
        classes(std::move(c)) {}

  Parser parser;
  Vocabulary vocab;
  DependencyMatrix dep;
  ClassList classes;
};

class Handle {
 public:
  explicit Handle(std::unique_ptr<Session> session) : session_(std::move(session)) {}

  const Session &session() const {
    if (!session_) throw std::runtime_error("handle is closed");
    return *session_;
  }
  bool closed() const { return session_ == nullptr; }
  void Close() { session_.reset(); }

 private:
  std::unique_ptr<Session> session_;
};

std::unique_ptr<Handle> Open(const std::map<std::string, std::string> &paths) {
  for (const auto &[key, path] : paths) {
    if (key != "lexicons" && key != "vocab" && key != "dep_matrix" &&
        key != "classes") {
      throw std::invalid_argument("unknown lexicon key: " + key);
    }
  }
  auto path = [&](const char *key) -> const std::string * {
    auto it = paths.find(key);
    return it == paths.end() ? nullptr : &it->second;
  };
  const auto *lex = path("lexicons");
  const auto *vocab = path("vocab");
  const auto *dep = path("dep_matrix");
  const auto *classes = path("classes");
  return std::make_unique<Handle>(std::make_unique<Session>(
      lex ? ParserLexicons::FromFile(*lex) : ParserLexicons::Default(),
      vocab ? Vocabulary::FromFile(*vocab) : Vocabulary::Default(),
      dep ? DependencyMatrix::FromFile(*dep) : DependencyMatrix::Default(),
      classes ? ClassList::FromFile(*classes) : ClassList::Default()));
}

std::string ParseJson(const Handle &h, const std::string &text,
                      const std::optional<std::string> &referent) {
  return ToJson(h.session().parser.ParseText(text, referent)).dump();
}

std::string TargetsJson(const Handle &h, const std::string &text,
                        const std::optional<std::string> &referent) {
  const Session &s = h.session();
  const SceneGraph graph = s.parser.ParseText(text, referent);
  const LabelContext ctx{&s.vocab, &s.dep, &s.classes};
  return ToJson(GenerateTargets(graph, referent, ctx)).dump();
}

Tensor ToTensor(const Array &a, const char *name, int rank) {
  if (a.ndim() != rank) {
    throw std::invalid_argument(std::string(name) + " must have rank " +
                                std::to_string(rank));
  }
  std::vector<int> shape;
  for (py::ssize_t d = 0; d < a.ndim(); ++d) shape.push_back(static_cast<int>(a.shape(d)));
  return Tensor(shape, std::vector<double>(a.data(), a.data() + a.size()));
}

std::string LossesJson(const Handle &h, const std::string &targets_json,
                       const Array &fused, const Array &semantic_scores,
                       const std::vector<bool> &objectness, const Array &f_lang,
                       const std::map<std::string, Array> &params,
                       bool mask_undetermined, bool relation_objectness,
                       bool attribute_objectness, bool debug) {
  h.session();
  const AuxTargets targets = AuxTargetsFromJson(Json::parse(targets_json));
  const Tensor fused_t = ToTensor(fused, "fused", 2);
  const Tensor scores_t = ToTensor(semantic_scores, "semantic_scores", 2);
  if (fused_t.rows() != scores_t.rows() ||
      fused_t.rows() != static_cast<int>(objectness.size())) {
    throw std::invalid_argument(
        "fused, semantic_scores and objectness must have one row per cluster");
  }
  const std::vector<uint8_t> obj(objectness.begin(), objectness.end());
  const Tensor lang_t = ToTensor(f_lang, "f_lang", 1);
  std::map<std::string, Tensor> p;
  for (const char *key : {"text_w", "relation_w", "attribute_w"}) {
    auto it = params.find(key);
    if (it == params.end()) throw std::invalid_argument(std::string("missing ") + key);
    p[key] = ToTensor(it->second, key, 2);
  }
  for (const char *key : {"text_b", "relation_b", "attribute_b"}) {
    auto it = params.find(key);
    if (it == params.end()) throw std::invalid_argument(std::string("missing ") + key);
    p[key] = ToTensor(it->second, key, 1);
  }
  if (params.size() != p.size()) {
    throw std::invalid_argument("unexpected parameter name");
  }
  const AuxLossInputs in{&fused_t,          &scores_t,          &obj,
                         &lang_t,           &p["text_w"],       &p["text_b"],
                         &p["relation_w"],  &p["relation_b"],   &p["attribute_w"],
                         &p["attribute_b"]};
  AuxLossOptions opts;
  opts.mode = mask_undetermined ? UndeterminedMode::kMask : UndeterminedMode::kLiteral;
  opts.relation_objectness = relation_objectness;
  opts.attribute_objectness = attribute_objectness;
  opts.debug = debug;
  return ToJson(ComputeAuxLosses(in, targets, opts)).dump();
}

}  // namespace
}  // namespace langaux

PYBIND11_MODULE(_langaux, m) {
  using namespace langaux;
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<Handle>(m, "Handle").def_property_readonly("closed", &Handle::closed);

  m.def("open", &Open, py::arg("lexicon_paths"));
  m.def("parse", &ParseJson, py::arg("handle"), py::arg("text"),
        py::arg("referent") = std::nullopt);
  m.def("targets", &TargetsJson, py::arg("handle"), py::arg("text"),
        py::arg("referent") = std::nullopt);
  m.def("losses", &LossesJson, py::arg("handle"), py::arg("targets"),
        py::arg("fused"), py::arg("semantic_scores"), py::arg("objectness"),
        py::arg("f_lang"), py::arg("params"), py::arg("mask_undetermined") = true,
        py::arg("relation_objectness") = true, py::arg("attribute_objectness") = true,
        py::arg("debug") = false);
  m.def("close", [](Handle &h) { h.Close(); }, py::arg("handle"));
}
