"""Hierarchical sampling and focus+context layout for 2D embeddings."""

import json as _json

from ._core import (
    Dataset,
    Explorer,
    FocusTreeError,
    Service,
    Tree,
    build_tree,
    coverage,
    load_dataset,
    load_tree,
    redundancy,
    remove_overlaps,
    sample,
    summarize,
    synthesize,
    validate_tree,
)

__all__ = [
    "Dataset", "Explorer", "FocusTreeError", "Service", "Tree", "build_tree", "coverage",
    "frame", "load_dataset", "load_tree", "redundancy", "remove_overlaps", "request",
    "sample", "summarize", "summary", "synthesize", "validate_tree",
]


def frame(explorer):
    """Current frame of an Explorer as a dict."""
    return _json.loads(explorer.frame())


def summary(tree, dataset, node):
    return _json.loads(summarize(tree, dataset, node))


def request(service, method, path, body=None, **query):
    """Calls Service.handle with a JSON body; returns (status, payload dict)."""
    status, text = service.handle(method, path, {k: str(v) for k, v in query.items()},
                                  "" if body is None else _json.dumps(body))
    return status, _json.loads(text)
