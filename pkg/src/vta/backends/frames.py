"""Frame construction: one frame per replay state.

Frame i carries replay state i, its placement, delta i-1's highlight and
action description (frame 0 has neither). Force-directed layouts warm-start
from the previous frame's placement so node positions stay steady.
"""

from __future__ import annotations

from dataclasses import dataclass

from .. import core, layout, tracejson
from ..rsl import RenderConfig


@dataclass(frozen=True)
class Frame:
    index: int
    state: core.VisualState
    placement: layout.Placement
    highlight: tuple[int, ...]
    caption: str


@dataclass(frozen=True)
class FrameSet:
    algorithm_name: str
    algorithm_family: str
    frames: tuple[Frame, ...]

    def __len__(self) -> int:
        return len(self.frames)


def build_frames(trace: tracejson.Trace, config: RenderConfig) -> FrameSet:
    """Replay the trace and lay out every state (frame count = deltas + 1)."""
    states = tracejson.replay_trace(trace)
    frames = []
    prev = None
    for i, state in enumerate(states):
        placement = layout.compute_layout(state, config, prev=prev)
        if i == 0:
            highlight, caption = (), ""
        else:
            delta = trace.deltas[i - 1]
            highlight, caption = delta.highlight, delta.description
        frames.append(Frame(index=i, state=state, placement=placement,
                            highlight=highlight, caption=caption))
        prev = placement
    return FrameSet(algorithm_name=trace.algorithm_name,
                    algorithm_family=trace.algorithm_family,
                    frames=tuple(frames))
