from __future__ import annotations

import sys
from pathlib import Path

import pytest

TESTS_DIR = Path(__file__).parent
sys.path.insert(0, str(TESTS_DIR))

CORPUS_DIR = TESTS_DIR / "corpus"

# name -> the one error code the document must produce (and nothing else)
DEFECT_CORPUS = {
    "bad_version_numeric.json": "VERSION_NOT_STRING",
    "bad_version_wrong.json": "UNSUPPORTED_VERSION",
    "bad_ops_flat.json": "OPS_NOT_2D",
    "bad_infinity.json": "INFINITY_TOKEN",
    "bad_dangling_edge.json": "DANGLING_EDGE",
    "bad_highlight_string.json": "BAD_HIGHLIGHT_TYPE",
    "bad_highlight_float.json": "BAD_HIGHLIGHT_TYPE",
    "bad_unknown_op.json": "UNKNOWN_OP",
    "bad_params.json": "BAD_PARAMS",
    "bad_unknown_extension.json": "UNKNOWN_EXTENSION",
    "bad_dynamic_ref.json": "STEP_APPLY_FAILED",
    "bad_duplicate_node.json": "DUPLICATE_ID",
    "bad_highlight_range.json": "HIGHLIGHT_OUT_OF_RANGE",
}

CLEAN_CORPUS = (
    "f1_dijkstra.json",
    "array_minimal.json",
    "array_two_step.json",
    "tree_rotations.json",
    "hashtable_session.json",
    "table_dp.json",
    "aux_comments.json",
    "graph_mutation.json",
)


@pytest.fixture(scope="session")
def corpus_dir() -> Path:
    return CORPUS_DIR


@pytest.fixture(scope="session")
def f1_bytes() -> bytes:
    return (CORPUS_DIR / "f1_dijkstra.json").read_bytes()


@pytest.fixture(scope="session")
def player_assets(tmp_path_factory) -> Path:
    """Stub player assets so the primary suite runs with the frontend unbuilt."""
    root = tmp_path_factory.mktemp("player_assets")
    (root / "index.html").write_text("<!DOCTYPE html><html><body>stub player</body></html>\n")
    (root / "player.js").write_text("// stub\n")
    return root


@pytest.fixture(scope="session")
def bundled_tasks_dir() -> Path:
    from vta.data import tasks_dir
    return Path(str(tasks_dir()))
