"""Style DSL: validation bounds, total interpretation, feature extraction."""

from __future__ import annotations

import json
import random

import pytest

from vta import rsl, tracejson

G1_CONFIG = {
    "meta": {"rsl_version": "0.1"},
    "theme": {"background": "#1A1A1A", "text": "#FFFFFF", "primary": "#3498DB"},
    "timeline": {"transition": 0.5, "pause": 0.3},
    "layout": {"main": {"type": "force_directed", "params": {"node_spacing": 2.0}}},
    "rules": [{"when": {"op": "updateNodeStyle"},
               "do": {"animation": {"variant": "pulse"}}}],
}


def graph_features() -> rsl.TraceFeatures:
    return rsl.TraceFeatures(family="Graph", data_type="graph", scale=4, frame_count=5,
                             ops_used=frozenset({"updateNodeStyle"}))


def array_features() -> rsl.TraceFeatures:
    return rsl.TraceFeatures(family="Array", data_type="array", scale=6, frame_count=3,
                             ops_used=frozenset({"updateStyle"}))


class TestValidate:
    def test_reference_config_is_valid(self):
        assert rsl.validate_rsl(G1_CONFIG).valid

    def test_semantic_label_rejected(self):
        doc = json.loads(json.dumps(G1_CONFIG))
        doc["rules"][0]["when"]["op"] = "visit_node"
        report = rsl.validate_rsl(doc)
        assert not report.valid
        assert report.errors[0].code == "UNKNOWN_OP"
        assert report.errors[0].path == "/rules/0/when/op"

    def test_transition_bound(self):
        doc = json.loads(json.dumps(G1_CONFIG))
        doc["timeline"]["transition"] = 5.0
        report = rsl.validate_rsl(doc)
        assert not report.valid
        assert report.errors[0].code == "OUT_OF_BOUNDS"
        assert report.errors[0].path == "/timeline/transition"

    @pytest.mark.parametrize("field,value,path", [
        ("pause", -0.5, "/timeline/pause"),
        ("pause", 1.5, "/timeline/pause"),
        ("transition", 0.05, "/timeline/transition"),
    ])
    def test_timeline_bounds(self, field, value, path):
        doc = json.loads(json.dumps(G1_CONFIG))
        doc["timeline"][field] = value
        report = rsl.validate_rsl(doc)
        assert not report.valid
        assert report.errors[0].path == path

    @pytest.mark.parametrize("param,value", [
        ("node_spacing", 0.5), ("node_spacing", 11.0),
        ("edge_curve", -2.0), ("edge_curve", 1.5),
        ("cell_size", 0.1), ("cell_size", 2.5),
    ])
    def test_layout_param_bounds(self, param, value):
        doc = json.loads(json.dumps(G1_CONFIG))
        doc["layout"]["main"]["params"] = {param: value}
        assert not rsl.validate_rsl(doc).valid

    def test_unknown_layout_type(self):
        doc = json.loads(json.dumps(G1_CONFIG))
        doc["layout"]["main"]["type"] = "treemap"
        report = rsl.validate_rsl(doc)
        assert not report.valid
        assert report.errors[0].code == "UNKNOWN_ENUM"

    def test_unknown_animation_variant(self):
        doc = json.loads(json.dumps(G1_CONFIG))
        doc["rules"][0]["do"]["animation"]["variant"] = "explode"
        assert not rsl.validate_rsl(doc).valid

    def test_bad_color(self):
        doc = json.loads(json.dumps(G1_CONFIG))
        doc["theme"]["background"] = "dark gray"
        report = rsl.validate_rsl(doc)
        assert not report.valid
        assert report.errors[0].code == "BAD_COLOR"

    def test_non_object_document(self):
        assert not rsl.validate_rsl([1, 2, 3]).valid


class TestInterpret:
    def test_invalid_config_falls_back_to_array_default(self):
        doc = {"layout": {"main": {"type": "nonsense"}}}
        config = rsl.interpret_rsl(doc, array_features())
        assert config.from_fallback
        assert config.layout_type == "horizontal_array"

    def test_reference_config_resolves(self):
        config = rsl.interpret_rsl(G1_CONFIG, graph_features())
        assert not config.from_fallback
        assert config.layout_type == "force_directed"
        assert config.transition == 0.5
        assert config.animations["updateNodeStyle"].variant == "pulse"
        assert config.layout_params["node_spacing"] == 2.0

    def test_empty_config_gets_table_defaults(self):
        features = rsl.TraceFeatures(family="DP", data_type="table", scale=9,
                                     frame_count=4, ops_used=frozenset())
        config = rsl.interpret_rsl({}, features)
        assert config.layout_type == "matrix"
        assert config.transition == 0.5
        assert config.pause == 0.3

    def test_total_on_garbage_bytes(self):
        for junk in (b"\xff\xfe\x00garbage", b"{not json", b"[1,2,", b"null", b'"str"'):
            config = rsl.interpret_rsl(junk, graph_features())
            assert config.from_fallback
            assert config.layout_type == "force_directed"

    def test_out_of_bound_rejected_strict_clamped_lenient(self):
        doc = json.loads(json.dumps(G1_CONFIG))
        doc["timeline"]["transition"] = 5.0
        strict = rsl.interpret_rsl(doc, graph_features())
        assert strict.from_fallback and strict.transition == 0.5
        lenient = rsl.interpret_rsl(doc, graph_features(), lenient=True)
        assert not lenient.from_fallback
        assert lenient.transition == 2.0  # clamped to the upper bound

    def test_lenient_does_not_rescue_unknown_enums(self):
        doc = json.loads(json.dumps(G1_CONFIG))
        doc["layout"]["main"]["type"] = "nonsense"
        assert rsl.interpret_rsl(doc, graph_features(), lenient=True).from_fallback

    def test_last_rule_wins(self):
        doc = json.loads(json.dumps(G1_CONFIG))
        doc["rules"].append({"when": {"op": "updateNodeStyle"},
                             "do": {"animation": {"variant": "glow"}}})
        config = rsl.interpret_rsl(doc, graph_features())
        assert config.animations["updateNodeStyle"].variant == "glow"

    def test_bounds_hold_after_interpretation(self):
        rng = random.Random(7)
        for _ in range(50):
            doc = {
                "timeline": {"transition": rng.uniform(0.1, 2.0),
                             "pause": rng.uniform(0.0, 1.0)},
                "layout": {"main": {"type": "grid",
                                    "params": {"cell_size": rng.uniform(0.3, 2.0)}}},
            }
            config = rsl.interpret_rsl(doc, rsl.TraceFeatures(
                family="Hashtable", data_type="hashtable", scale=3, frame_count=2,
                ops_used=frozenset()))
            assert 0.1 <= config.transition <= 2.0
            assert 0.0 <= config.pause <= 1.0
            for name, value in config.layout_params.items():
                lo, hi = rsl.BOUNDS[name]
                assert lo <= value <= hi


class TestDefaults:
    @pytest.mark.parametrize("data_type,layout", sorted(
        (k, v[0]) for k, v in rsl.DEFAULT_LAYOUTS.items()))
    def test_default_layout_per_type(self, data_type, layout):
        features = rsl.TraceFeatures(family="", data_type=data_type, scale=2,
                                     frame_count=1, ops_used=frozenset())
        doc = rsl.default_rsl(features)
        assert doc["layout"]["main"]["type"] == layout
        assert rsl.validate_rsl(doc).valid

    def test_graph_default_spacing_and_theme(self):
        doc = rsl.default_rsl(graph_features())
        assert doc["layout"]["main"]["params"]["node_spacing"] == 2.0
        assert doc["theme"]["background"] == "#1A1A1A"

    def test_array_default(self):
        doc = rsl.default_rsl(array_features())
        assert doc["layout"]["main"]["type"] == "horizontal_array"


class TestFeatures:
    def test_f1_features(self, f1_bytes):
        trace = tracejson.parse_trace(f1_bytes).trace
        features = rsl.extract_features(trace)
        assert features.family == "Graph"
        assert features.data_type == "graph"
        assert features.frame_count == 2
        assert features.ops_used == frozenset({"updateNodeStyle"})
        assert features.scale == 2

    def test_zero_delta_features(self, corpus_dir):
        trace = tracejson.parse_trace((corpus_dir / "array_minimal.json").read_bytes()).trace
        features = rsl.extract_features(trace)
        assert features.frame_count == 1
        assert features.ops_used == frozenset()
