"""Backends: emission contracts, byte determinism, the validation gate."""

from __future__ import annotations

import json

import pytest

from vta import backends, rsl, tracejson
from vta.backends.frames import build_frames
from vta.errors import MissingPlayerAssets, TraceValidationError


def default_config(trace):
    return rsl.interpret_rsl(None, rsl.extract_features(trace))


class TestFrames:
    def test_frame_count_and_captions(self, f1_bytes):
        trace = tracejson.parse_trace(f1_bytes).trace
        frames = build_frames(trace, default_config(trace))
        assert len(frames) == len(trace.deltas) + 1
        assert frames.frames[0].highlight == ()
        assert frames.frames[0].caption == ""
        assert frames.frames[1].caption == "Select node A"
        assert frames.frames[1].highlight == (2,)

    def test_frames_render_exact_replay_states(self, f1_bytes):
        trace = tracejson.parse_trace(f1_bytes).trace
        frames = build_frames(trace, default_config(trace))
        states = tracejson.replay_trace(trace)
        for frame, state in zip(frames.frames, states):
            assert frame.state == state


class TestTikz:
    def test_zero_delta_trace_single_frame(self, corpus_dir, tmp_path):
        trace = tracejson.parse_trace((corpus_dir / "array_minimal.json").read_bytes()).trace
        bundle = backends.emit_tikz(build_frames(trace, default_config(trace)),
                                    default_config(trace), tmp_path / "out")
        assert [e.path for e in bundle.files] == ["frame_000.tex", "index.tex"]

    def test_f1_frames_and_theme_color(self, f1_bytes, tmp_path):
        trace = tracejson.parse_trace(f1_bytes).trace
        config = default_config(trace)
        bundle = backends.emit_tikz(build_frames(trace, config), config, tmp_path / "out")
        names = [e.path for e in bundle.files]
        assert names == ["frame_000.tex", "frame_001.tex", "index.tex"]
        frame1 = (tmp_path / "out" / "frame_001.tex").read_text()
        # node A turns "current"; its fill comes from the trace style table
        assert "3498DB" in frame1
        assert frame1.startswith("\\documentclass[tikz")
        assert frame1.count("\\begin{tikzpicture}") == 1
        index = (tmp_path / "out" / "index.tex").read_text()
        assert "\\input{frame_000}" in index and "\\input{frame_001}" in index

    def test_emission_is_byte_deterministic(self, f1_bytes, tmp_path):
        trace = tracejson.parse_trace(f1_bytes).trace
        config = default_config(trace)
        one = backends.emit_tikz(build_frames(trace, config), config, tmp_path / "a")
        two = backends.emit_tikz(build_frames(trace, config), config, tmp_path / "b")
        assert one.digest_map() == two.digest_map()

    def test_manifest_covers_all_files(self, f1_bytes, tmp_path):
        trace = tracejson.parse_trace(f1_bytes).trace
        config = default_config(trace)
        bundle = backends.emit_tikz(build_frames(trace, config), config, tmp_path / "out")
        on_disk = {p.name for p in (tmp_path / "out").iterdir()}
        assert on_disk == {e.path for e in bundle.files} | {"manifest.json"}
        manifest = json.loads((tmp_path / "out" / "manifest.json").read_text())
        assert manifest == bundle.to_doc()


class TestSvg:
    def test_flipbook_timing_metadata(self, f1_bytes, tmp_path):
        trace = tracejson.parse_trace(f1_bytes).trace
        config = rsl.interpret_rsl({"timeline": {"transition": 0.5, "pause": 0.3}},
                                   rsl.extract_features(trace))
        # 2 frames at 0.8 s nominal each
        bundle = backends.emit_svg(build_frames(trace, config), config, tmp_path / "out")
        html = (tmp_path / "out" / "index.html").read_text()
        meta = json.loads(html.split('type="application/json">')[1].split("</script>")[0])
        assert meta["seconds_per_frame"] == pytest.approx(0.8)
        assert meta["nominal_duration"] == pytest.approx(1.6)
        assert meta["frames"] == ["frame_000.svg", "frame_001.svg"]

    def test_null_table_cell_renders_infinity_glyph(self, corpus_dir, tmp_path):
        doc = json.loads((corpus_dir / "table_dp.json").read_bytes())
        trace = tracejson.parse_trace(json.dumps(doc)).trace
        config = default_config(trace)
        backends.emit_svg(build_frames(trace, config), config, tmp_path / "out")
        svg0 = (tmp_path / "out" / "frame_000.svg").read_text()
        assert "∞" in svg0

    def test_null_array_value_renders_dot_glyph(self, tmp_path):
        doc = {
            "vta_version": "5.0",
            "algorithm": {"name": "n", "family": "Array"},
            "initial_frame": {
                "data_state": {"type": "array",
                               "structure": [{"index": 0, "value": None, "styleKey": "idle"}]},
                "auxiliary_views": [], "styles": {"elementStyles": {}}, "pseudocode": []},
            "deltas": [], "required_extensions": ["vta-ext-primitive-array"]}
        trace = tracejson.parse_trace(json.dumps(doc)).trace
        config = default_config(trace)
        backends.emit_svg(build_frames(trace, config), config, tmp_path / "out")
        assert "·" in (tmp_path / "out" / "frame_000.svg").read_text()

    def test_byte_determinism(self, f1_bytes, tmp_path):
        trace = tracejson.parse_trace(f1_bytes).trace
        config = default_config(trace)
        one = backends.emit_svg(build_frames(trace, config), config, tmp_path / "a")
        two = backends.emit_svg(build_frames(trace, config), config, tmp_path / "b")
        assert one.digest_map() == two.digest_map()

    def test_animation_directives_never_touch_geometry(self, f1_bytes, tmp_path):
        trace = tracejson.parse_trace(f1_bytes).trace
        features = rsl.extract_features(trace)
        plain = rsl.interpret_rsl(None, features)
        animated = rsl.interpret_rsl({
            "rules": [{"when": {"op": "updateNodeStyle"},
                       "do": {"animation": {"variant": "shake"}}}]}, features)
        a = backends.emit_svg(build_frames(trace, plain), plain, tmp_path / "a")
        b = backends.emit_svg(build_frames(trace, animated), animated, tmp_path / "b")
        for name in ("frame_000.svg", "frame_001.svg"):
            assert a.digest_map()[name] == b.digest_map()[name]  # same geometry
        assert a.digest_map()["index.html"] != b.digest_map()["index.html"]


class TestPlayerBundle:
    def test_bundle_contains_canonical_trace(self, f1_bytes, tmp_path, player_assets):
        trace = tracejson.parse_trace(f1_bytes).trace
        bundle = backends.emit_player_bundle(trace, None, tmp_path / "out",
                                             assets_dir=player_assets)
        written = (tmp_path / "out" / "trace.json").read_bytes()
        assert written == tracejson.serialize_trace(trace)
        names = {e.path for e in bundle.files}
        assert {"trace.json", "rsl.json", "index.html", "player.js"} == names

    def test_missing_assets(self, f1_bytes, tmp_path):
        trace = tracejson.parse_trace(f1_bytes).trace
        with pytest.raises(MissingPlayerAssets):
            backends.emit_player_bundle(trace, None, tmp_path / "out",
                                        assets_dir=tmp_path / "nowhere")

    def test_stable_manifest_modulo_assets(self, f1_bytes, tmp_path, player_assets):
        trace = tracejson.parse_trace(f1_bytes).trace
        one = backends.emit_player_bundle(trace, None, tmp_path / "a", assets_dir=player_assets)
        two = backends.emit_player_bundle(trace, None, tmp_path / "b", assets_dir=player_assets)
        assert one.digest_map() == two.digest_map()


class TestValidationGate:
    def test_invalid_trace_is_refused_nothing_written(self, corpus_dir, tmp_path):
        bad = (corpus_dir / "bad_dangling_edge.json").read_bytes()
        out = tmp_path / "out"
        for backend in backends.BACKENDS:
            with pytest.raises(TraceValidationError):
                backends.render_trace(bad, None, backend, out)
        assert not out.exists()

    def test_render_trace_accepts_all_backends(self, f1_bytes, tmp_path, player_assets):
        for backend in backends.BACKENDS:
            bundle = backends.render_trace(f1_bytes, None, backend, tmp_path / backend,
                                           player_assets=player_assets)
            assert bundle.files


class TestAnnotations:
    def test_annotations_surface_in_both_backends(self, f1_bytes, tmp_path):
        trace = tracejson.parse_trace(f1_bytes).trace
        config = rsl.interpret_rsl(
            {"annotations": ["weights are travel minutes", {"note": "demo"}]},
            rsl.extract_features(trace))
        backends.emit_tikz(build_frames(trace, config), config, tmp_path / "t")
        assert "weights are travel minutes" in (tmp_path / "t" / "index.tex").read_text()
        backends.emit_svg(build_frames(trace, config), config, tmp_path / "s")
        html = (tmp_path / "s" / "index.html").read_text()
        meta = json.loads(html.split('type="application/json">')[1].split("</script>")[0])
        assert meta["annotations"] == ["weights are travel minutes", {"note": "demo"}]
