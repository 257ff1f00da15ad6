"""SVG frame-sequence emission with an HTML flipbook.

One ``frame_%03d.svg`` per replay state on a 1280x720 viewport (80 units
per abstract canvas unit), plus ``index.html`` that steps through the
frames at the RSL pacing (transition + pause seconds per frame). Animation
directives from RSL rules surface as flipbook metadata only; geometry
always comes from the placement.
"""

from __future__ import annotations

import json
from xml.sax.saxutils import escape

from ..rsl import RenderConfig
from .bundle import Bundle, write_bundle
from .frames import FrameSet
from .scene import Scene, build_scene

SCALE = 80.0  # abstract canvas units -> pixels (16x9 -> 1280x720)


def _fmt(x: float) -> str:
    out = f"{x:.2f}"
    return "0.00" if out == "-0.00" else out


def _text_el(x: float, y: float, text: str, color: str, size: float,
             bold: bool, anchor: str = "middle") -> list[str]:
    weight = ' font-weight="bold"' if bold else ""
    lines = text.split("\n")
    out = []
    offset = -(len(lines) - 1) / 2 * size * 1.1
    for i, line in enumerate(lines):
        out.append(
            f'<text x="{_fmt(x)}" y="{_fmt(y + offset + i * size * 1.1)}" '
            f'fill="{color}" font-size="{_fmt(size)}" font-family="monospace" '
            f'text-anchor="{anchor}" dominant-baseline="middle"{weight}>'
            f'{escape(line)}</text>')
    return out


def _frame_svg(scene: Scene) -> str:
    body: list[str] = [
        f'<rect x="0" y="0" width="1280" height="720" fill="{scene.background}"/>']

    for wire in scene.wires:
        pts = [(p[0] * SCALE, p[1] * SCALE) for p in wire.points]
        dash = ' stroke-dasharray="6 4"' if wire.dashed else ""
        marker = ' marker-end="url(#arrow)"' if wire.arrow else ""
        if len(pts) == 3:
            d = (f"M {_fmt(pts[0][0])} {_fmt(pts[0][1])} "
                 f"Q {_fmt(pts[1][0])} {_fmt(pts[1][1])} "
                 f"{_fmt(pts[2][0])} {_fmt(pts[2][1])}")
        else:
            d = "M " + " L ".join(f"{_fmt(px)} {_fmt(py)}" for px, py in pts)
        body.append(f'<path d="{d}" fill="none" stroke="{wire.color}" '
                    f'stroke-width="{_fmt(wire.width * 2)}"{dash}{marker}/>')
        if wire.label:
            mx = sum(p[0] for p in pts) / len(pts)
            my = sum(p[1] for p in pts) / len(pts)
            body.extend(_text_el(mx, my - 8, wire.label, wire.color, 14, False))

    for shape in scene.shapes:
        box = shape.box
        x, y = box.x * SCALE, box.y * SCALE
        w, h = box.w * SCALE, box.h * SCALE
        cx, cy = box.cx * SCALE, box.cy * SCALE
        size = min(h * 0.5, 22.0) if shape.small else min(h * 0.45, 26.0)
        fit = w * 0.92 / max(len(max(shape.text.split("\n"), key=len, default="")), 1) * 1.8
        size = max(min(size, fit), 6.0)
        if shape.form == "plain":
            body.extend(_text_el(x + 2, cy, shape.text, shape.text_color, size,
                                 shape.bold, anchor="start"))
            continue
        if shape.form == "ellipse":
            body.append(f'<ellipse cx="{_fmt(cx)}" cy="{_fmt(cy)}" rx="{_fmt(w / 2)}" '
                        f'ry="{_fmt(h / 2)}" fill="{shape.fill}" stroke="{shape.stroke}" '
                        f'stroke-width="1.5"/>')
        else:
            body.append(f'<rect x="{_fmt(x)}" y="{_fmt(y)}" width="{_fmt(w)}" '
                        f'height="{_fmt(h)}" rx="3" fill="{shape.fill}" '
                        f'stroke="{shape.stroke}" stroke-width="1.5"/>')
        body.extend(_text_el(cx, cy, shape.text, shape.text_color, size, shape.bold))

    head = (
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 1280 720" '
        'width="1280" height="720">\n'
        '<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" '
        'markerWidth="7" markerHeight="7" orient="auto-start-reverse">'
        '<path d="M 0 0 L 10 5 L 0 10 z" fill="context-stroke"/></marker></defs>')
    return head + "\n" + "\n".join(body) + "\n</svg>\n"


_FLIPBOOK = """<!DOCTYPE html>
<html lang="en">
<head>
<meta charset="utf-8">
<title>__TITLE__</title>
<style>
  body { background: __BG__; color: __FG__; font-family: monospace; margin: 0; }
  #bar { padding: 8px 12px; display: flex; gap: 8px; align-items: center; }
  button { font-family: monospace; }
  img { width: 100%; max-width: 1280px; display: block; margin: 0 auto; }
</style>
</head>
<body>
<div id="bar">
  <button id="prev">&#9664;</button>
  <button id="play">play</button>
  <button id="next">&#9654;</button>
  <span id="status"></span>
</div>
<img id="frame" alt="frame">
<script id="flipbook-meta" type="application/json">
__META__
</script>
<script>
const meta = JSON.parse(document.getElementById("flipbook-meta").textContent);
let index = 0;
let timer = null;
const img = document.getElementById("frame");
const status = document.getElementById("status");
function show(i) {
  index = Math.min(Math.max(i, 0), meta.frames.length - 1);
  img.src = meta.frames[index];
  status.textContent = (index + 1) + "/" + meta.frames.length;
}
function stop() { if (timer) { clearInterval(timer); timer = null; } document.getElementById("play").textContent = "play"; }
document.getElementById("prev").addEventListener("click", () => { stop(); show(index - 1); });
document.getElementById("next").addEventListener("click", () => { stop(); show(index + 1); });
document.getElementById("play").addEventListener("click", () => {
  if (timer) { stop(); return; }
  document.getElementById("play").textContent = "pause";
  timer = setInterval(() => {
    if (index >= meta.frames.length - 1) { stop(); return; }
    show(index + 1);
  }, meta.seconds_per_frame * 1000);
});
show(0);
</script>
</body>
</html>
"""


def emit_svg(frames: FrameSet, config: RenderConfig, out_dir) -> Bundle:
    """Write frame_%03d.svg files plus the index.html flipbook."""
    if not frames.frames:
        raise ValueError("frame set is empty")
    files: dict[str, bytes] = {}
    names = []
    for frame in frames.frames:
        scene = build_scene(frame, config.theme, frames.algorithm_name)
        name = f"frame_{frame.index:03d}.svg"
        names.append(name)
        files[name] = _frame_svg(scene).encode("utf-8")

    seconds = config.transition + config.pause
    meta = {
        "frames": names,
        "transition": config.transition,
        "pause": config.pause,
        "seconds_per_frame": seconds,
        "nominal_duration": round(seconds * len(names), 6),
        "animations": {op: {"variant": d.variant,
                            **({"duration": d.duration} if d.duration is not None else {}),
                            **({"emphasis": d.emphasis} if d.emphasis is not None else {})}
                       for op, d in sorted(config.animations.items())},
        "annotations": list(config.annotations),
    }
    html = (_FLIPBOOK
            .replace("__TITLE__", escape(frames.algorithm_name or "trace"))
            .replace("__BG__", config.theme.get("background", "#1A1A1A"))
            .replace("__FG__", config.theme.get("text", "#FFFFFF"))
            .replace("__META__", json.dumps(meta, indent=2, sort_keys=True)))
    files["index.html"] = html.encode("utf-8")
    return write_bundle(out_dir, files)
