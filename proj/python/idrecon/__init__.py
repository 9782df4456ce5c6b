# SPDX-License-Identifier: Apache-2.0
# Copyright 2026 idrecon contributors
"""Python access to the idrecon core: graph workspaces, modules, generators and parsers."""

import json

from . import _core
from ._core import (
    Error,
    clean_tokens,
    email_candidates,
    exif_gps,
    exif_taken,
    extract_entities,
    fold_name,
    generate_wordlist,
    interpret_list_output,
    probe,
    rank_tokens,
    serialize_list,
    split_full_name,
    token_pipeline,
    username_candidates,
    validate_email_syntax,
)

__all__ = [
    "Error",
    "Workspace",
    "clean_tokens",
    "cli",
    "email_candidates",
    "exif_gps",
    "exif_taken",
    "extract_entities",
    "fold_name",
    "generate_wordlist",
    "interpret_list_output",
    "probe",
    "rank_tokens",
    "serialize_list",
    "split_full_name",
    "token_pipeline",
    "username_candidates",
    "validate_email_syntax",
]


def cli(*args):
    """Runs one idrecon command line; returns (exit_code, stdout, stderr)."""
    return _core.cli([str(a) for a in args])


class Workspace:
    """An open project directory. JSON results come back as dicts."""

    def __init__(self, core):
        self._core = core

    @classmethod
    def init(cls, root, name):
        return cls(_core.Workspace.init(str(root), name))

    @classmethod
    def open(cls, root):
        return cls(_core.Workspace.open(str(root)))

    def project_info(self):
        return json.loads(self._core.project_info())

    def add_node(self, kind, value):
        return json.loads(self._core.add_node(kind, value))

    def add_file(self, kind, path):
        return json.loads(self._core.add_file(kind, str(path)))

    def add_edge(self, from_node, to_node, label):
        return json.loads(self._core.add_edge(from_node, to_node, label))

    def modules(self, input_kind=None):
        return self._core.modules(input_kind)

    def run(self, module, node, params=None, transport="replay", fixture=None, wait=True):
        fixture = None if fixture is None else str(fixture)
        return json.loads(self._core.run(module, node, params or {}, transport, fixture, wait))

    def job(self, job_id):
        return json.loads(self._core.job(job_id))

    def graph(self):
        return json.loads(self._core.export_graph())

    def export_graph(self):
        return self._core.export_graph()

    def make_wordlist(self, tokens=(), from_node=None, options=None):
        count, name, fingerprint, used = self._core.make_wordlist(list(tokens), from_node, options or {})
        return {"count": count, "file_name": name, "fingerprint": fingerprint, "tokens": used}

    def flush(self):
        self._core.flush()
