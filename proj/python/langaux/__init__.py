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

"""Scene-graph parsing, auxiliary targets and auxiliary losses."""

import json
import os

from . import _langaux
from ._langaux import ConfigError, Handle

__all__ = ["ConfigError", "Handle", "open", "parse", "targets", "losses", "close"]


def open(lexicon_paths=None):
    """Loads lexicons and returns a handle.

    `lexicon_paths` maps any of "lexicons", "vocab", "dep_matrix" and
    "classes" to a file path; missing entries use the built-in defaults.
    """
    paths = {k: os.fspath(v) for k, v in (lexicon_paths or {}).items()}
    return _langaux.open(paths)


def parse(handle, text, referent=None):
    """Returns the scene graph of a description as a dict."""
    return json.loads(_langaux.parse(handle, text, referent))


def targets(handle, text, referent=None):
    """Returns the auxiliary targets of a description as a dict."""
    return json.loads(_langaux.targets(handle, text, referent))


def losses(handle, targets, fused, semantic_scores, objectness, f_lang, params,
           mask_undetermined=True, relation_objectness=True,
           attribute_objectness=True, debug=False):
    """Evaluates the text, relation and attribute losses.

    `targets` is a dict from `targets()`. `params` maps text_w, text_b,
    relation_w, relation_b, attribute_w and attribute_b to arrays.
    """
    if not isinstance(targets, str):
        targets = json.dumps(targets)
    report = _langaux.losses(
        handle, targets, fused, semantic_scores, [bool(o) for o in objectness],
        f_lang, dict(params), mask_undetermined, relation_objectness,
        attribute_objectness, debug)
    return json.loads(report)


def close(handle):
    """Releases the handle; later calls with it raise RuntimeError."""
    _langaux.close(handle)
