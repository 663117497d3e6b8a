# Copyright 2026 The langaux Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import itertools
import math

import numpy as np
import pytest

import langaux

SENTENCE = "This is a small chair. It is facing the door."


@pytest.fixture
def handle():
    h = langaux.open()
    yield h
    langaux.close(h)


def test_parse_extracts_one_triple(handle):
    graph = langaux.parse(handle, SENTENCE)
    assert graph["parse_ok"]
    (triple,) = graph["triples"]
    heads = [e["head"] for e in graph["entities"]]
    assert heads[triple["subject"]] == "chair"
    assert heads[triple["object"]] == "door"
    assert triple["relation_phrase"] == "facing"


def test_targets_follow_referent(handle):
    t = langaux.targets(handle, SENTENCE, referent="chair")
    assert not t["referent_conflict"]
    (item,) = t["relation_items"]
    assert item["subject_class"] == t["text_class"]
    assert set(item["targets"]) <= {0.0, 0.5, 1.0}
    assert any(a["attribute"] >= 0 for a in t["attribute_items"])


def _sigmoid_bce(logits, y):
    return np.maximum(logits, 0) - logits * y + np.log1p(np.exp(-np.abs(logits)))


def _softmax_ce(logits, k):
    m = logits.max()
    return m + math.log(np.exp(logits - m).sum()) - logits[k]


def _oracle(t, fused, scores, objectness, f_lang, p):
    predicted = scores.argmax(axis=1)

    def candidates(c):
        return [i for i in range(len(scores)) if predicted[i] == c and objectness[i]]

    text = _softmax_ce(p["text_w"] @ f_lang + p["text_b"], t["text_class"])
    relation = 0.0
    for item in t["relation_items"]:
        y = np.array(item["targets"])
        active = y != 0.5
        pairs = [
            (i, j)
            for i, j in itertools.product(
                candidates(item["subject_class"]), candidates(item["object_class"]))
            if i != j
        ]
        if not pairs or not active.any():
            continue
        relation += min(
            _sigmoid_bce(p["relation_w"] @ np.concatenate([fused[i], fused[j]])
                         + p["relation_b"], y)[active].mean()
            for i, j in pairs)
    attribute = 0.0
    for item in t["attribute_items"]:
        cs = candidates(item["entity_class"])
        if cs:
            attribute += min(
                _softmax_ce(p["attribute_w"] @ fused[i] + p["attribute_b"],
                            item["attribute"])
                for i in cs)
    return text, relation, attribute


@pytest.mark.parametrize("seed", range(10))
def test_losses_match_numpy_oracle(handle, seed):
    rng = np.random.default_rng(seed)
    t = langaux.targets(handle, SENTENCE, referent="chair")
    num_classes = 1 + max([t["text_class"]] + [
        max(r["subject_class"], r["object_class"]) for r in t["relation_items"]])
    num_relations = len(t["relation_items"][0]["targets"])
    num_attributes = 1 + max(a["attribute"] for a in t["attribute_items"])
    m, c_f, c_l = 6, 5, 4
    fused = rng.normal(size=(m, c_f))
    scores = rng.normal(size=(m, num_classes))
    scores[: m // 2, t["text_class"]] += 10.0
    scores[m // 2:, t["relation_items"][0]["object_class"]] += 10.0
    objectness = rng.random(m) < 0.8
    objectness[0] = objectness[m // 2] = True
    f_lang = rng.normal(size=c_l)
    p = {
        "text_w": rng.normal(size=(num_classes, c_l)),
        "text_b": rng.normal(size=num_classes),
        "relation_w": rng.normal(size=(num_relations, 2 * c_f)),
        "relation_b": rng.normal(size=num_relations),
        "attribute_w": rng.normal(size=(num_attributes, c_f)),
        "attribute_b": rng.normal(size=num_attributes),
    }
    r = langaux.losses(handle, t, fused, scores, objectness, f_lang, p, debug=True)
    assert r["relation_skipped"] == 0 and r["attribute_skipped"] == 0
    text, relation, attribute = _oracle(t, fused, scores, objectness, f_lang, p)
    assert r["text"] == pytest.approx(text, abs=1e-10)
    assert r["relation"] == pytest.approx(relation, abs=1e-10)
    assert r["attribute"] == pytest.approx(attribute, abs=1e-10)
    for trace in r["relation_trace"] + r["attribute_trace"]:
        if not trace["skipped"]:
            assert trace["loss"] == min(trace["losses"])


def test_losses_reject_mismatched_rows(handle):
    t = langaux.targets(handle, SENTENCE)
    p = {k: np.zeros((1, 1)) for k in ("text_w", "relation_w", "attribute_w")}
    p.update({k: np.zeros(1) for k in ("text_b", "relation_b", "attribute_b")})
    with pytest.raises(ValueError):
        langaux.losses(handle, t, np.zeros((3, 2)), np.zeros((2, 4)),
                       [True] * 3, np.zeros(2), p)


def test_open_rejects_unknown_key_and_missing_file(tmp_path):
    with pytest.raises(ValueError):
        langaux.open({"grammar": "x"})
    with pytest.raises(ValueError):
        langaux.open({"lexicons": tmp_path / "missing.cfg"})


def test_closed_handle_raises():
    h = langaux.open()
    langaux.close(h)
    assert h.closed
    with pytest.raises(RuntimeError):
        langaux.parse(h, SENTENCE)
