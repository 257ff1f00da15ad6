"""TikZ frame-set emission.

One standalone-compilable ``frame_%03d.tex`` per replay state, each holding
a single picture environment, plus an ``index.tex`` that inputs them all
(via the ``standalone`` package). Emission is pure text: no typesetting
engine runs here, and repeated emission is byte-identical.
"""

from __future__ import annotations

import json

from ..rsl import RenderConfig
from .bundle import Bundle, write_bundle
from .frames import Frame, FrameSet
from .scene import Scene, build_scene

_LATEX_ESCAPES = {
    "\\": r"\textbackslash{}",
    "&": r"\&", "%": r"\%", "$": r"\$", "#": r"\#", "_": r"\_",
    "{": r"\{", "}": r"\}",
    "~": r"\textasciitilde{}", "^": r"\textasciicircum{}",
    "·": r"$\cdot$", "∞": r"$\infty$", "…": r"\dots{}", "–": r"--",
}


def _tex_escape(text: str) -> str:
    return "".join(_LATEX_ESCAPES.get(ch, ch) for ch in text)


def _fmt(x: float) -> str:
    out = f"{x:.3f}"
    return "0.000" if out == "-0.000" else out


class _ColorTable:
    """Hex colors mapped to stable names, in first-use order."""

    def __init__(self):
        self.names: dict[str, str] = {}

    def name(self, hex_color: str | None) -> str:
        hex_color = (hex_color or "#FFFFFF").upper()
        if hex_color not in self.names:
            self.names[hex_color] = f"vtac{len(self.names)}"
        return self.names[hex_color]

    def preamble(self) -> list[str]:
        return [f"\\definecolor{{{name}}}{{HTML}}{{{color.lstrip('#')}}}"
                for color, name in self.names.items()]


def _frame_tex(frame: Frame, scene: Scene, canvas_h: float) -> str:
    colors = _ColorTable()
    body: list[str] = []

    def pt(x: float, y: float) -> str:
        return f"({_fmt(x)},{_fmt(canvas_h - y)})"  # canvas y grows downward

    bg = colors.name(scene.background)
    body.append(f"\\fill[{bg}] (0,0) rectangle (16.000,9.000);")

    for wire in scene.wires:
        color = colors.name(wire.color)
        opts = [color, f"line width={_fmt(wire.width * 0.8)}pt"]
        if wire.arrow:
            opts.append("-{Stealth[length=5pt]}")
        if wire.dashed:
            opts.append("dashed")
        pts = wire.points
        if len(pts) == 3:
            path = (f"{pt(*pts[0])} .. controls {pt(*pts[1])} .. {pt(*pts[2])}")
        else:
            path = " -- ".join(pt(*p) for p in pts)
        body.append(f"\\draw[{', '.join(opts)}] {path};")
        if wire.label:
            mx = sum(p[0] for p in pts) / len(pts)
            my = sum(p[1] for p in pts) / len(pts)
            body.append(f"\\node[{color}, font=\\tiny] at {pt(mx, my)} "
                        f"{{{_tex_escape(wire.label)}}};")

    for shape in scene.shapes:
        box = shape.box
        text = _tex_escape(shape.text).replace("\n", "\\\\")
        tcolor = colors.name(shape.text_color)
        font = "\\tiny" if shape.small else "\\scriptsize"
        if shape.bold:
            text = f"\\textbf{{{text}}}"
        if shape.form == "plain":
            body.append(
                f"\\node[{tcolor}, font={font}, align=left, anchor=west, "
                f"text width={_fmt(max(box.w - 0.1, 0.2))}cm] at {pt(box.x, box.cy)} {{{text}}};")
            continue
        fill = colors.name(shape.fill)
        stroke = colors.name(shape.stroke)
        form = "ellipse" if shape.form == "ellipse" else "rectangle, rounded corners=1pt"
        body.append(
            f"\\node[draw={stroke}, fill={fill}, text={tcolor}, {form}, align=center, "
            f"font={font}, inner sep=1pt, minimum width={_fmt(box.w)}cm, "
            f"minimum height={_fmt(box.h)}cm] at {pt(box.cx, box.cy)} {{{text}}};")

    lines = [
        "\\documentclass[tikz,border=0pt]{standalone}",
        "\\usetikzlibrary{arrows.meta}",
        *colors.preamble(),
        "\\begin{document}",
        "\\begin{tikzpicture}[x=1cm,y=1cm]",
        "\\useasboundingbox (0,0) rectangle (16.000,9.000);",
        *body,
        "\\end{tikzpicture}",
        "\\end{document}",
        "",
    ]
    return "\n".join(lines)


def emit_tikz(frames: FrameSet, config: RenderConfig, out_dir) -> Bundle:
    """Write frame_%03d.tex files plus index.tex; returns the manifest."""
    if not frames.frames:
        raise ValueError("frame set is empty")
    canvas_h = config.canvas.height
    files: dict[str, bytes] = {}
    names = []
    for frame in frames.frames:
        scene = build_scene(frame, config.theme, frames.algorithm_name)
        name = f"frame_{frame.index:03d}"
        names.append(name)
        files[name + ".tex"] = _frame_tex(frame, scene, canvas_h).encode("utf-8")
    index = [
        "\\documentclass{article}",
        "\\usepackage[margin=1cm]{geometry}",
        "\\usepackage{standalone}",
        "\\usepackage{tikz}",
        "\\usetikzlibrary{arrows.meta}",
        "\\begin{document}",
    ]
    for note in config.annotations:
        text = note if isinstance(note, str) else json.dumps(note, sort_keys=True)
        index.append(f"\\noindent\\textit{{{_tex_escape(text)}}}\\par\\smallskip")
    for name in names:
        index.append(f"\\input{{{name}}}")
        index.append("\\par\\medskip")
    index.extend(["\\end{document}", ""])
    files["index.tex"] = "\n".join(index).encode("utf-8")
    return write_bundle(out_dir, files)
